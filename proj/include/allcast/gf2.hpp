#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace allcast {

/// Bit-packed vector over GF(2). Addition is coordinate-wise XOR.
/// Invariant: bits at positions >= size() are always zero.
class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static Gf2Vector unit(std::size_t len, std::size_t i);
    // Fixture helper: build from 0/1 digits, index 0 first ({1,1,0} = e0+e1).
    static Gf2Vector from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    // XOR-accumulate; lengths must match.
    Gf2Vector& operator^=(const Gf2Vector& other);

    bool is_zero() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // Index of the lowest set bit, or -1 if the vector is zero.
    int lowest_set_bit() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
        return -1;
    }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Parity of the GF(2) inner product <a, b>; lengths must match.
bool gf2_dot(const Gf2Vector& a, const Gf2Vector& b);

// popcount(a AND b) without materializing the intersection.
std::size_t and_popcount(const Gf2Vector& a, const Gf2Vector& b);

/// Row-major GF(2) matrix; every row has length cols.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, Gf2Vector(cols)) {}
    // Fixture helper: rows given as 0/1 digit lists.
    static Gf2Matrix from_rows(std::size_t cols, std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Gf2Vector& row(std::size_t i) const { return data_[i]; }
    Gf2Vector& row(std::size_t i) { return data_[i]; }
    void append_row(Gf2Vector r);

    Gf2Matrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Gf2Vector> data_;
};

// Dimension of the row space over GF(2) (plain in-place elimination).
std::size_t rank(const Gf2Matrix& m);

// Product m*x over GF(2); x.size() must equal m.cols().
Gf2Vector mat_vec_mul(const Gf2Matrix& m, const Gf2Vector& x);

// Solve m * payload = rhs for one 64-bit payload word per column.
// Requires full column rank; throws std::runtime_error("not decodable")
// otherwise. rhs.size() must equal m.rows().
std::vector<std::uint64_t> solve(const Gf2Matrix& m, const std::vector<std::uint64_t>& rhs);

/// Incremental GF(2) row basis in fully reduced row-echelon form, with an
/// optional 64-bit payload word carried through every row operation. Rank
/// never decreases; once rank == dim the stored payloads are the unique
/// solution of the accumulated system and can be read out directly.
class DecoderState {
public:
    explicit DecoderState(std::size_t dim)
        : dim_(dim), row_of_pivot_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    bool complete() const { return basis_.size() == dim_; }

    // Returns true iff the row was outside the current span (rank grew by 1).
    // row.size() must equal dim().
    bool insert(const Gf2Vector& row, std::uint64_t payload = 0);

    // Payload word per coordinate; requires complete().
    std::vector<std::uint64_t> decode() const;

    // Snapshot of the reduced basis rows (for tests and cross-checks).
    Gf2Matrix basis_matrix() const;
    const std::vector<std::uint64_t>& payloads() const { return payload_; }

private:
    std::size_t dim_;
    std::vector<Gf2Vector> basis_;
    std::vector<std::uint64_t> payload_;
    std::vector<int> pivot_of_row_;
    std::vector<int> row_of_pivot_;
};

}  // namespace allcast
