#pragma once

// Exact integer homology: sparse boundary matrices, Smith normal form,
// kernel lattices, induced maps and fixed subspaces under group actions.

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "titsring/complex.hpp"

namespace titsring {

/// Column-major sparse integer matrix; each column sorted by row.
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    static SparseIntMatrix from_triplets(std::size_t r, std::size_t c,
                                         const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& entries);
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> triplets() const;
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    /// this * other, exact (throws on int64 overflow).
    SparseIntMatrix multiply(const SparseIntMatrix& other) const;

    /// "rows cols nnz" header, then one "row col value" line per entry.
    std::string to_triplet_text() const;
    static SparseIntMatrix from_triplet_text(const std::string& text);
};

struct SmithResult {
    std::size_t rank = 0;
    std::vector<BigInt> divisors;  ///< nonzero invariant factors, each dividing the next
};

SmithResult smith_rank_and_divisors(const SparseIntMatrix& m);

using IntVector = std::vector<BigInt>;

/// Basis of {x in Z^cols : Mx = 0}, from unimodular column operations.
std::vector<IntVector> integer_kernel_basis(const SparseIntMatrix& m);

/// A lattice basis kept in echelon form for solving coordinates.
class LatticeBasis {
public:
    explicit LatticeBasis(std::vector<IntVector> basis);

    std::size_t size() const { return basis_.size(); }
    const std::vector<IntVector>& basis() const { return basis_; }
    /// Integer x with sum x_i basis_i = y, or nullopt when y is not in the lattice.
    std::optional<IntVector> coordinates(const IntVector& y) const;

private:
    std::vector<IntVector> basis_;
    std::vector<std::size_t> pivot_positions_;
    std::vector<IntVector> echelon_;    // echelon vectors
    std::vector<IntVector> transform_;  // echelon_[k] = sum transform_[k][i] basis_[i]
};

/// Augmented simplicial chain complex: boundaries[d] maps C_d to C_{d-1}
/// for d = 0..top, where C_{-1} = Z and boundaries[0] is the augmentation.
struct ChainComplex {
    std::vector<std::size_t> f_vector;
    std::vector<SparseIntMatrix> boundaries;

    int top_degree() const { return static_cast<int>(f_vector.size()) - 1; }
};

ChainComplex chain_complex(const SimplicialComplex& complex);

/// True iff every composite boundaries[d-1] * boundaries[d] vanishes.
bool boundary_squares_to_zero(const ChainComplex& cc);

struct HomologyResult {
    std::vector<std::size_t> betti;            ///< reduced Betti numbers, degree 0..top
    std::vector<std::vector<BigInt>> torsion;  ///< invariant factors > 1 per degree
    std::size_t betti_minus_one = 0;           ///< 1 exactly for the empty complex
    std::vector<std::size_t> f_vector;
    std::vector<std::size_t> boundary_ranks;   ///< rank of boundaries[d]
};

/// Runs up to `jobs` Smith normal form computations concurrently.
HomologyResult reduced_homology(const ChainComplex& cc, unsigned jobs = 1);

/// Chain map in degree d: column j is the image of the j-th d-simplex.
SparseIntMatrix chain_map(const SimplicialMap& map, const SimplicialComplex& source,
                          const SimplicialComplex& target, int degree);

struct InducedMap {
    std::vector<IntVector> columns;  ///< image of each source cycle in target cycle coordinates
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    std::size_t rank = 0;
    std::size_t kernel_dim() const { return source_dim - rank; }
};

/// Induced map on top-degree cycles, in the kernel bases of both sides.
InducedMap induced_top_map(const SimplicialMap& map, const SimplicialComplex& source,
                           const SimplicialComplex& target);

/// Dimension over Q of the subspace of reduced homology in `degree` fixed by
/// every generator, computed on the complex of signed orbit sums.
std::size_t fixed_subspace_dim(const ChainComplex& cc, int degree, const std::vector<SignedPermutation>& generators);

/// Rank of a dense integer matrix given by its columns.
SmithResult smith_of_columns(const std::vector<IntVector>& columns, std::size_t rows);

}  // namespace titsring
