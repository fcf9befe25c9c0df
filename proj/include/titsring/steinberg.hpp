#pragma once

// Steinberg ranks, apartment classes and chamber maps, the non-spanning
// witness for non-fields, apartment spans, and GL_2 orbit data on P^1 x P^1.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "titsring/homology.hpp"

namespace titsring {

/// d_0, ..., d_{n_max} from d_n = sum_{i=1}^{n} (-1)^{i-1} |Gr_{n-i}^n(R)| d_{n-i}.
std::vector<BigInt> steinberg_ranks(const RingSpec& spec, int n_max);
BigInt steinberg_rank(const RingSpec& spec, int n);
/// q^{n(n-1)/2}.
BigInt steinberg_rank_field(const BigInt& q, int n);

/// Integer chain on the top simplices (chambers) of a Tits complex.
struct SteinbergChain {
    std::map<std::size_t, std::int64_t> coefficients;  ///< chamber index -> nonzero coefficient

    bool is_zero() const { return coefficients.empty(); }
    SteinbergChain operator+(const SteinbergChain& other) const;
    SteinbergChain operator-() const;
    bool operator==(const SteinbergChain& other) const = default;
    IntVector dense(std::size_t chambers) const;
};

/// Chamber (complete flag) <v_s(1)> < <v_s(1), v_s(2)> < ... of a basis.
Simplex basis_flag(const TitsComplex& complex, const Matrix& basis, const std::vector<int>& order);
/// <v_n> < <v_{n-1}, v_n> < ... , the flag that pairs to +1 with the
/// apartment class of the same basis.
Simplex reverse_upper_triangular_flag(const TitsComplex& complex, const Matrix& basis);

/// sum over permutations s of sgn(w0 s) [basis_flag(s)], w0 the reversal.
SteinbergChain apartment_class(const TitsComplex& complex, const Matrix& basis);

/// Coefficient of the chain on a chamber; throws if the chamber is absent.
std::int64_t chamber_map(const TitsComplex& complex, const SteinbergChain& chain, const Simplex& chamber);

/// Boundary of a top chain, as a sparse vector over (n-3)-simplices
/// (the augmentation when n = 2).
std::map<std::size_t, std::int64_t> chain_boundary(const ChainComplex& cc, const SteinbergChain& chain);

/// Unipotent upper triangular matrices in lexicographic order of their
/// strictly upper entries.
std::vector<Matrix> upper_unitriangular_matrices(const RingPtr& ring, int n, const Budget& budget = {});

/// Entry (A, B) is the chamber map of A's reverse upper triangular flag on
/// the apartment class of B, over all unipotent upper triangular A, B.
std::vector<std::vector<std::int64_t>> ut_apartment_pairing(const TitsComplex& complex, const Budget& budget = {});

/// Apartment class of (e_2, e_1 + m e_2, e_3, ..., e_n) plus that of the
/// identity.  m must be a nonzero non-unit.
SteinbergChain eta_class(const TitsComplex& complex, Elem m);

struct ApartmentSpan {
    std::size_t rank = 0;
    std::size_t apartments = 0;           ///< apartment classes used
    bool exhaustive = false;              ///< every frame was enumerated
    bool saturated = false;               ///< sampling stopped on a stable sweep
    std::vector<BigInt> divisors;         ///< invariant factors > 1 of the span
    bool generates_integrally() const { return divisors.empty(); }
};

/// Rank of the lattice spanned by apartment classes.  Enumerates every frame
/// when |GL_n(R)| <= 10^5; otherwise grows the GL_n orbit of the standard
/// frame breadth first and stops once a full sweep leaves the rank unchanged
/// or the budget is spent, in which case the rank is only a lower bound.
ApartmentSpan apartment_span_rank(const TitsComplex& complex, const Budget& budget = {});

struct OrbitCommutant {
    std::size_t points = 0;  ///< |P^1(R)|
    std::size_t orbits = 0;
    std::size_t commutant_dim = 0;
};

/// GL_2(R) on P^1(R) x P^1(R): orbit count by union-find, and the dimension
/// of the matrices commuting with every generator's permutation action.
OrbitCommutant p1_orbit_and_commutant(const RingSpec& spec, const Budget& budget = {});

/// k for Z/p^k and F_p[x]/(x^k), 1 for prime fields; nullopt otherwise.
std::optional<int> uniserial_length(const RingSpec& spec);

struct RankTable {
    std::string label;
    std::vector<BigInt> ranks;  ///< ranks[i] = d_{i+1}
};

std::vector<RankTable> table_generate(const std::vector<RingSpec>& specs, int n_max);

}  // namespace titsring
