#include "allcast/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace allcast {

Gf2Vector Gf2Vector::unit(std::size_t len, std::size_t i) {
    Gf2Vector v(len);
    if (i >= len) throw std::invalid_argument("unit index out of range");
    v.set(i, true);
    return v;
}

Gf2Vector Gf2Vector::from_bits(std::initializer_list<int> bits) {
    Gf2Vector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
    if (other.len_ != len_) throw std::invalid_argument("gf2 length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool gf2_dot(const Gf2Vector& a, const Gf2Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("gf2 length mismatch");
    std::uint64_t acc = 0;
    const auto aw = a.words();
    const auto bw = b.words();
    for (std::size_t w = 0; w < aw.size(); ++w) acc ^= aw[w] & bw[w];
    return std::popcount(acc) & 1;
}

std::size_t and_popcount(const Gf2Vector& a, const Gf2Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("gf2 length mismatch");
    std::size_t c = 0;
    const auto aw = a.words();
    const auto bw = b.words();
    for (std::size_t w = 0; w < aw.size(); ++w)
        c += static_cast<std::size_t>(std::popcount(aw[w] & bw[w]));
    return c;
}

Gf2Matrix Gf2Matrix::from_rows(std::size_t cols,
                               std::initializer_list<std::initializer_list<int>> rows) {
    Gf2Matrix m(0, cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("row length != cols");
        m.append_row(Gf2Vector::from_bits(r));
    }
    return m;
}

void Gf2Matrix::append_row(Gf2Vector r) {
    if (r.size() != cols_) throw std::invalid_argument("row length != cols");
    data_.push_back(std::move(r));
    ++rows_;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        data_[i].for_each_set([&](std::size_t j) { t.row(j).set(i, true); });
    return t;
}

std::size_t rank(const Gf2Matrix& m) {
    // Forward elimination on a scratch copy of the rows.
    std::vector<Gf2Vector> reduced;
    std::vector<int> pivots;
    reduced.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Gf2Vector r = m.row(i);
        for (std::size_t j = 0; j < reduced.size(); ++j)
            if (r.get(static_cast<std::size_t>(pivots[j]))) r ^= reduced[j];
        const int pv = r.lowest_set_bit();
        if (pv < 0) continue;
        reduced.push_back(std::move(r));
        pivots.push_back(pv);
    }
    return reduced.size();
}

Gf2Vector mat_vec_mul(const Gf2Matrix& m, const Gf2Vector& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    Gf2Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (gf2_dot(m.row(i), x)) out.set(i, true);
    return out;
}

std::vector<std::uint64_t> solve(const Gf2Matrix& m, const std::vector<std::uint64_t>& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs size != rows");
    // Gauss-Jordan on the augmented system; payloads follow the row ops.
    std::vector<Gf2Vector> basis;
    std::vector<std::uint64_t> pay;
    std::vector<int> row_of_pivot(m.cols(), -1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Gf2Vector r = m.row(i);
        std::uint64_t y = rhs[i];
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const int pv = basis[j].lowest_set_bit();
            if (r.get(static_cast<std::size_t>(pv))) {
                r ^= basis[j];
                y ^= pay[j];
            }
        }
        const int pv = r.lowest_set_bit();
        if (pv < 0) {
            if (y != 0) throw std::runtime_error("not decodable");  // inconsistent system
            continue;
        }
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis[j].get(static_cast<std::size_t>(pv))) {
                basis[j] ^= r;
                pay[j] ^= y;
            }
        basis.push_back(std::move(r));
        pay.push_back(y);
        row_of_pivot[static_cast<std::size_t>(pv)] = static_cast<int>(basis.size()) - 1;
    }
    if (basis.size() != m.cols()) throw std::runtime_error("not decodable");
    std::vector<std::uint64_t> out(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] = pay[static_cast<std::size_t>(row_of_pivot[c])];
    return out;
}

bool DecoderState::insert(const Gf2Vector& row, std::uint64_t payload) {
    if (row.size() != dim_) throw std::invalid_argument("decoder insert: dimension mismatch");
    Gf2Vector r = row;
    std::uint64_t y = payload;
    // One pass suffices: basis rows are mutually reduced, so an XOR with row j
    // never reintroduces another row's pivot column.
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (r.get(static_cast<std::size_t>(pivot_of_row_[j]))) {
            r ^= basis_[j];
            y ^= payload_[j];
        }
    const int pv = r.lowest_set_bit();
    if (pv < 0) return false;
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (basis_[j].get(static_cast<std::size_t>(pv))) {
            basis_[j] ^= r;
            payload_[j] ^= y;
        }
    basis_.push_back(std::move(r));
    payload_.push_back(y);
    pivot_of_row_.push_back(pv);
    row_of_pivot_[static_cast<std::size_t>(pv)] = static_cast<int>(basis_.size()) - 1;
    return true;
}

std::vector<std::uint64_t> DecoderState::decode() const {
    if (!complete()) throw std::runtime_error("not decodable");
    // At full rank the reduced basis is the identity permuted by pivot.
    std::vector<std::uint64_t> out(dim_);
    for (std::size_t c = 0; c < dim_; ++c)
        out[c] = payload_[static_cast<std::size_t>(row_of_pivot_[c])];
    return out;
}

Gf2Matrix DecoderState::basis_matrix() const {
    Gf2Matrix m(0, dim_);
    for (const auto& r : basis_) m.append_row(r);
    return m;
}

}  // namespace allcast
