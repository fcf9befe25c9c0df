#pragma once

/**
 * The Tits complex T_n(R): vertices are the proper nonzero free and cofree
 * summands of R^n, simplices are chains in the cofree order.  Also the rank
 * filtration, links and stars, reduction maps R -> R/I and the GL_n(R)
 * action on vertices.
 *
 * Vertices are sorted by (rank, fingerprint) and a simplex is stored as the
 * increasing tuple of its vertex indices, so index order is rank order and
 * every simplex carries a canonical orientation.
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "titsring/grassmann.hpp"

namespace titsring {

using Simplex = std::vector<std::uint32_t>;

/// Abstract simplicial complex as sorted vertex tuples, grouped by dimension
/// and sorted lexicographically within each dimension.
struct SimplicialComplex {
    std::vector<std::vector<Simplex>> simplices_by_dim;

    int dimension() const { return static_cast<int>(simplices_by_dim.size()) - 1; }
    std::size_t count(int d) const {
        return d >= 0 && d <= dimension() ? simplices_by_dim[static_cast<std::size_t>(d)].size() : 0;
    }
    std::vector<std::size_t> f_vector() const;
    bool operator==(const SimplicialComplex& other) const = default;
};

/// Index of every simplex within its dimension.
class SimplexIndex {
public:
    explicit SimplexIndex(const SimplicialComplex& complex);
    std::optional<std::size_t> find(const Simplex& s) const;

private:
    std::vector<std::map<Simplex, std::size_t>> by_dim_;
};

struct FingerprintHash {
    std::size_t operator()(const std::vector<std::uint64_t>& codes) const { return hash_codes(codes); }
};

class TitsComplex {
public:
    const RingPtr& ring() const { return ring_; }
    const FreeModule& module() const { return poset_->module(); }
    int n() const { return n_; }
    /// Largest vertex rank (n-1 for the full complex, m for the filtration).
    int max_rank() const { return max_rank_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    const Summand& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<Summand>& vertices() const { return vertices_; }
    const SimplicialComplex& topology() const { return topology_; }
    const SimplexIndex& simplex_index() const { return *index_; }

    std::optional<std::size_t> find_vertex(const std::vector<std::uint64_t>& fingerprint) const;
    /// V_i < V_j in the cofree order.
    bool less(std::size_t i, std::size_t j) const { return poset_->less(i + 1, j + 1); }

    /// Vertex pairs V < W by inclusion that are not related in the cofree
    /// order; empty when the count was skipped for size.
    std::optional<std::size_t> inclusion_without_cofree() const { return inclusion_without_cofree_; }

    friend struct ComplexBuilder;

private:
    RingPtr ring_;
    int n_ = 0;
    int max_rank_ = 0;
    std::shared_ptr<const SummandPoset> poset_;
    std::vector<Summand> vertices_;
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, FingerprintHash> by_fingerprint_;
    SimplicialComplex topology_;
    std::shared_ptr<const SimplexIndex> index_;
    std::optional<std::size_t> inclusion_without_cofree_;
};

TitsComplex build_tits_complex(const RingSpec& spec, int n, const Budget& budget = {});
/// Full subcomplex on the vertices of rank at most m, 1 <= m <= n-1.
TitsComplex build_filtration(const RingSpec& spec, int n, int m, const Budget& budget = {});

/// Chains of the relation "V is inside W and W/V is free" decided by the
/// reference quotient test; must reproduce topology().
SimplicialComplex nerve_by_quotient_test(const TitsComplex& complex, const Budget& budget = {});

struct LinkAndStar {
    SimplicialComplex star;
    SimplicialComplex link;
};

LinkAndStar link_and_star(const SimplicialComplex& complex, const Simplex& simplex);

/// A ring surjection R -> R/I given by its table on element indices.
struct QuotientMap {
    RingPtr source;
    RingPtr target;
    std::vector<Elem> image;

    Vec apply(const Vec& v) const;
};

/// Surjection between two supported specs: Z/m -> Z/m' for m' | m,
/// F_p[x]/(x^k) -> F_p[x]/(x^k'), either of those onto F_p, and products
/// factor by factor.
QuotientMap quotient_onto(const RingSpec& source, const RingSpec& target);
/// R -> R/I for the ideal generated by `generators`.
QuotientMap quotient_by_ideal(const RingSpec& source, const std::vector<Elem>& generators);

struct SimplicialMap {
    std::vector<std::uint32_t> vertex_map;

    /// Image of a simplex as a sorted tuple with the sign of the sorting
    /// permutation; nullopt when two vertices collide.
    std::optional<std::pair<Simplex, int>> apply(const Simplex& s) const;
};

/// V -> image of V, entrywise.  The target must be T_n over the quotient ring.
SimplicialMap reduction_map(const TitsComplex& source, const TitsComplex& target, const QuotientMap& quotient);

/// Permutation of the vertex indices induced by V -> gV.
std::vector<std::uint32_t> group_action(const TitsComplex& complex, const Matrix& g);

/// Elementary matrices E_ij(a) for additive generators a, and diag(u,1,...,1)
/// for units u != 1.
std::vector<Matrix> gl_generators(const RingPtr& ring, int n);

/// Generators of the kernel of GL_n(R) -> GL_n(R/I): every invertible
/// id + X with X over I when there are at most 4096 such X, otherwise
/// id + a E_ij for all a in I and their conjugates by gl_generators.
std::vector<Matrix> congruence_generators(const RingPtr& ring, int n, const std::vector<Elem>& ideal_generators);

/// All elements of the ideal generated by `generators`, sorted.
std::vector<Elem> ideal_elements(const Ring& ring, const std::vector<Elem>& generators);

/// Generator list plus memoized vertex permutations.  Holds a reference to
/// the complex, which must outlive it.  Safe to query from several threads.
class GroupAction {
public:
    GroupAction(const TitsComplex& complex, std::vector<Matrix> generators);

    const TitsComplex& complex() const { return complex_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<std::uint32_t>& vertex_permutation(std::size_t generator) const;

private:
    const TitsComplex& complex_;
    std::vector<Matrix> generators_;
    mutable std::mutex mutex_;
    mutable std::vector<std::optional<std::vector<std::uint32_t>>> memo_;
};

/// Action of a vertex permutation on the d-simplices: target index and the
/// orientation sign, for every d.
struct SignedPermutation {
    std::vector<std::vector<std::pair<std::uint32_t, int>>> by_dim;
};

SignedPermutation simplex_permutation(const SimplicialComplex& complex, const SimplexIndex& index,
                                      const std::vector<std::uint32_t>& vertex_map);

}  // namespace titsring
