#pragma once

// Vectors, matrices and free-and-cofree summands of R^n.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "titsring/ring.hpp"

namespace titsring {

using Vec = std::vector<Elem>;

/// R^n together with the lexicographic encoding of its vectors as integers
/// (first coordinate most significant).
class FreeModule {
public:
    FreeModule(RingPtr ring, int n);

    const RingPtr& ring() const { return ring_; }
    int rank() const { return n_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t encode(const Vec& v) const;
    Vec decode(std::uint64_t code) const;
    Vec zero() const { return Vec(static_cast<std::size_t>(n_), 0); }
    Vec unit_vector(int i) const;

    Vec add(const Vec& a, const Vec& b) const;
    Vec scale(Elem c, const Vec& v) const;
    std::string format(const Vec& v) const;

private:
    RingPtr ring_;
    int n_;
    std::uint64_t size_;
};

class Matrix {
public:
    Matrix(RingPtr ring, int rows, int cols);
    static Matrix identity(RingPtr ring, int n);
    static Matrix from_columns(RingPtr ring, const std::vector<Vec>& columns);

    const RingPtr& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem at(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    Elem& at(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    Vec column(int c) const;
    std::vector<Vec> columns() const;

    Vec apply(const Vec& v) const;
    Matrix operator*(const Matrix& other) const;
    bool operator==(const Matrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_; }

    std::string to_string() const;

private:
    RingPtr ring_;
    int rows_, cols_;
    std::vector<Elem> entries_;
};

/// Leibniz expansion; square matrices up to 8x8.
Elem determinant(const Matrix& m);
bool is_invertible(const Matrix& m);

/// True iff the entries generate the unit ideal.  Z/m uses a gcd; other
/// rings close the ideal by brute force.
bool is_unimodular(const Ring& ring, const Vec& v);

/// True iff the vectors are part of a basis of R^n.  Decided by checking
/// that their images are independent over every residue field; a finite
/// ring is a product of local rings, where Nakayama makes this exact.
bool extends_to_basis(const Ring& ring, std::span<const Vec> vectors);

/// All R-linear combinations, as sorted distinct codes.
std::vector<std::uint64_t> span_members(const FreeModule& module, std::span<const Vec> vectors);

/// A free and cofree direct summand of R^n, identified by its member set.
class Summand {
public:
    static Summand zero(const FreeModule& module);
    static Summand ambient(const FreeModule& module);
    /// `frame` must extend to a basis of R^n (see extends_to_basis).
    static Summand from_frame(const FreeModule& module, std::span<const Vec> frame);
    /// Variant for callers that already hold the member set of the frame's span.
    static Summand from_frame(const FreeModule& module, std::span<const Vec> frame,
                              std::vector<std::uint64_t> members);

    int ambient_rank() const { return ambient_rank_; }
    int rank() const { return rank_; }
    /// Lexicographically least basis, chosen greedily from the sorted members.
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::uint64_t>& fingerprint() const { return members_; }
    std::size_t hash() const { return hash_; }

    bool contains(std::uint64_t code) const;
    bool contains(const FreeModule& module, const Summand& other) const;

    bool operator==(const Summand& other) const { return rank_ == other.rank_ && members_ == other.members_; }
    bool operator<(const Summand& other) const {
        return rank_ != other.rank_ ? rank_ < other.rank_ : members_ < other.members_;
    }

private:
    Summand() = default;
    void finish();

    int ambient_rank_ = 0;
    int rank_ = 0;
    std::vector<Vec> basis_;
    std::vector<std::uint64_t> members_;
    std::size_t hash_ = 0;
};

struct SummandHash {
    std::size_t operator()(const Summand& s) const { return s.hash(); }
};

std::size_t hash_codes(const std::vector<std::uint64_t>& codes);

/// Span of `vectors` as a Summand when it is free with these vectors as a
/// basis and cofree in R^n (cofreeness via quotient_free_rank).
std::optional<Summand> span_summand(const FreeModule& module, const std::vector<Vec>& vectors,
                                    const Budget& budget = {});

/// Rank r of W/V when W/V is free, by coset enumeration and a search over
/// r-tuples of coset representatives.  Throws if V is not inside W.
std::optional<int> quotient_free_rank(const FreeModule& module, const Summand& outer, const Summand& inner,
                                      const Budget& budget = {});

/// Sorted member list; equal keys iff equal submodules.
const std::vector<std::uint64_t>& canonical_fingerprint(const Summand& s);

/// Invertible matrix whose first columns are `partial`, completed greedily
/// with the first vector (in code order) that keeps a partial basis.
std::optional<Matrix> complete_to_basis(const FreeModule& module, const std::vector<Vec>& partial);

}  // namespace titsring
