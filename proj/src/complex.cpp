#include "titsring/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace titsring {

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> out;
    for (const auto& level : simplices_by_dim) out.push_back(level.size());
    return out;
}

SimplexIndex::SimplexIndex(const SimplicialComplex& complex) {
    for (const auto& level : complex.simplices_by_dim) {
        auto& map = by_dim_.emplace_back();
        for (std::size_t i = 0; i < level.size(); ++i) map.emplace(level[i], i);
    }
}

std::optional<std::size_t> SimplexIndex::find(const Simplex& s) const {
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& map = by_dim_[s.size() - 1];
    const auto it = map.find(s);
    if (it == map.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> TitsComplex::find_vertex(const std::vector<std::uint64_t>& fingerprint) const {
    const auto it = by_fingerprint_.find(fingerprint);
    if (it == by_fingerprint_.end()) return std::nullopt;
    return it->second;
}

// ------------------------------------------------------------ construction

namespace {

/// All chains of `relation` (given as sorted successor lists), by dimension.
template <class Successors>
SimplicialComplex chains(std::size_t vertex_count, Successors&& successors) {
    SimplicialComplex out;
    Simplex chain;
    const auto extend = [&](auto&& self) -> void {
        const std::size_t d = chain.size() - 1;
        if (out.simplices_by_dim.size() <= d) out.simplices_by_dim.resize(d + 1);
        out.simplices_by_dim[d].push_back(chain);
        successors(chain.back(), [&](std::size_t w) {
            chain.push_back(static_cast<std::uint32_t>(w));
            self(self);
            chain.pop_back();
        });
    };
    for (std::size_t v = 0; v < vertex_count; ++v) {
        chain.assign(1, static_cast<std::uint32_t>(v));
        extend(extend);
    }
    for (auto& level : out.simplices_by_dim) std::sort(level.begin(), level.end());
    return out;
}

}  // namespace

struct ComplexBuilder {
    static TitsComplex build(const RingSpec& spec, int n, int m, const Budget& budget);
};

TitsComplex build_filtration(const RingSpec& spec, int n, int m, const Budget& budget) {
    if (n < 2 || m < 1 || m > n - 1) throw std::invalid_argument("filtration requires 1 <= m <= n-1");
    return ComplexBuilder::build(spec, n, m, budget);
}

TitsComplex build_tits_complex(const RingSpec& spec, int n, const Budget& budget) {
    if (n < 1) throw std::invalid_argument("T_n(R) requires n >= 1");
    return ComplexBuilder::build(spec, n, n - 1, budget);
}

TitsComplex ComplexBuilder::build(const RingSpec& spec, int n, int m, const Budget& budget) {
    // Simplex count: one flag type per nonempty set of ranks in [1, m].
    BigInt simplices = 0;
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        FlagType type;
        int last = 0;
        for (int r = 1; r <= m; ++r)
            if (mask & (1U << (r - 1))) {
                type.parts.push_back(r - last);
                last = r;
            }
        type.parts.push_back(n - last);
        simplices += flag_count_formula(spec, type);
    }
    check_budget(budget, simplices, "simplices of T_" + std::to_string(n) + "(" + spec.to_string() + ")");

    TitsComplex complex;
    complex.ring_ = make_ring(spec);
    complex.n_ = n;
    complex.max_rank_ = m;
    auto poset = std::make_shared<SummandPoset>(SummandPoset::build(complex.ring_, n, m, budget));
    for (int k = 1; k <= m; ++k)
        for (const auto& s : poset->level(k)) {
            complex.by_fingerprint_.emplace(s.fingerprint(), complex.vertices_.size());
            complex.vertices_.push_back(s);
        }
    complex.poset_ = poset;
    const std::size_t count = complex.vertices_.size();

    complex.topology_ = chains(count, [&](std::size_t v, auto&& visit) {
        poset->for_each_above(v + 1, [&](std::size_t w) { visit(w - 1); });
    });
    complex.index_ = std::make_shared<SimplexIndex>(complex.topology_);

    if (count * count <= 4'000'000) {
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) {
                const auto& v = complex.vertices_[i];
                const auto& w = complex.vertices_[j];
                if (v.rank() >= w.rank() || complex.less(i, j)) continue;
                if (w.contains(complex.module(), v)) ++mismatches;
            }
        complex.inclusion_without_cofree_ = mismatches;
    }
    return complex;
}

SimplicialComplex nerve_by_quotient_test(const TitsComplex& complex, const Budget& budget) {
    const std::size_t count = complex.vertex_count();
    check_budget(budget, BigInt(count) * count, "vertex pairs for the quotient test");
    std::vector<std::vector<std::uint32_t>> above(count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            const auto& v = complex.vertex(i);
            const auto& w = complex.vertex(j);
            if (v.rank() >= w.rank()) continue;
            if (!std::all_of(v.fingerprint().begin(), v.fingerprint().end(), [&](auto c) { return w.contains(c); }))
                continue;
            const auto r = quotient_free_rank(complex.module(), w, v, budget);
            if (r && *r == w.rank() - v.rank()) above[i].push_back(static_cast<std::uint32_t>(j));
        }
    return chains(count, [&](std::size_t v, auto&& visit) {
        for (const auto w : above[v]) visit(w);
    });
}

LinkAndStar link_and_star(const SimplicialComplex& complex, const Simplex& simplex) {
    Simplex sigma = simplex;
    std::sort(sigma.begin(), sigma.end());
    const int d = static_cast<int>(sigma.size()) - 1;
    if (d < 0 || d > complex.dimension() ||
        !std::binary_search(complex.simplices_by_dim[static_cast<std::size_t>(d)].begin(),
                            complex.simplices_by_dim[static_cast<std::size_t>(d)].end(), sigma))
        throw std::invalid_argument("simplex is not in the complex");

    std::vector<std::set<Simplex>> star(complex.simplices_by_dim.size());
    for (const auto& level : complex.simplices_by_dim)
        for (const auto& tau : level) {
            if (!std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) continue;
            const std::size_t size = tau.size();
            for (std::uint32_t mask = 1; mask < (1U << size); ++mask) {
                Simplex face;
                for (std::size_t i = 0; i < size; ++i)
                    if (mask & (1U << i)) face.push_back(tau[i]);
                star[face.size() - 1].insert(std::move(face));
            }
        }
    LinkAndStar out;
    for (const auto& level : star) {
        if (level.empty()) break;
        out.star.simplices_by_dim.emplace_back(level.begin(), level.end());
        std::vector<Simplex> disjoint;
        for (const auto& face : level) {
            const bool meets = std::any_of(face.begin(), face.end(),
                                           [&](auto v) { return std::binary_search(sigma.begin(), sigma.end(), v); });
            if (!meets) disjoint.push_back(face);
        }
        if (!disjoint.empty()) out.link.simplices_by_dim.push_back(std::move(disjoint));
    }
    return out;
}

// --------------------------------------------------------------- quotients

Vec QuotientMap::apply(const Vec& v) const {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = image[v[i]];
    return out;
}

namespace {

bool is_simple_quotient(const RingSpec& source, const RingSpec& target) {
    const auto s = source.kind();
    const auto t = target.kind();
    if (s == RingKind::Product || t == RingKind::Product) return false;
    if (s == RingKind::Modular || s == RingKind::PrimeField)
        return (t == RingKind::Modular || t == RingKind::PrimeField) && source.modulus() % target.modulus() == 0;
    // truncated polynomial source
    if (t == RingKind::PrimeField || t == RingKind::Modular) return target.modulus() == source.modulus();
    return t == RingKind::TruncatedPoly && target.modulus() == source.modulus() && target.degree() <= source.degree();
}

std::vector<const RingSpec*> factor_list(const RingSpec& spec) {
    std::vector<const RingSpec*> out;
    if (spec.kind() == RingKind::Product)
        for (const auto& f : spec.factors()) out.push_back(&f);
    else
        out.push_back(&spec);
    return out;
}

/// Component-wise reduction; factors with a null target are dropped.
QuotientMap componentwise(const RingSpec& source, const std::vector<std::optional<RingSpec>>& targets) {
    const auto factors = factor_list(source);
    std::vector<RingSpec> kept;
    for (const auto& t : targets)
        if (t) kept.push_back(*t);
    if (kept.empty()) throw std::invalid_argument("quotient is the zero ring, which is not supported");
    QuotientMap q;
    q.source = make_ring(source);
    q.target = make_ring(RingSpec::product(kept));
    q.image.resize(q.source->size());
    for (Elem a = 0; a < q.source->size(); ++a) {
        std::vector<std::uint64_t> parts =
            factors.size() == 1 ? std::vector<std::uint64_t>{a} : q.source->payload(a);
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (!targets[i]) continue;
            index = index * targets[i]->cardinality() + parts[i] % targets[i]->cardinality();
        }
        q.image[a] = static_cast<Elem>(index);
    }
    return q;
}

/// Quotient spec of a non-product ring by the ideal generated by `gens`,
/// or nullopt when the ideal is the whole ring.
std::optional<RingSpec> simple_quotient(const RingSpec& spec, const std::vector<std::uint64_t>& gens) {
    if (spec.kind() == RingKind::Modular || spec.kind() == RingKind::PrimeField) {
        std::uint64_t g = spec.modulus();
        for (const auto a : gens) g = std::gcd(g, a);
        if (g == 1) return std::nullopt;
        if (g == spec.modulus()) return spec;
        return RingSpec::modular(g);
    }
    const std::uint64_t p = spec.modulus();
    unsigned valuation = spec.degree();
    for (auto a : gens) {
        if (a == 0) continue;
        unsigned v = 0;
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        valuation = std::min(valuation, v);
    }
    if (valuation == 0) return std::nullopt;
    if (valuation == spec.degree()) return spec;
    if (valuation == 1) return RingSpec::prime_field(p);
    return RingSpec::truncated_poly(p, valuation);
}

}  // namespace

QuotientMap quotient_onto(const RingSpec& source, const RingSpec& target) {
    const auto s = factor_list(source);
    const auto t = factor_list(target);
    const auto unsupported = [&] {
        return std::invalid_argument("unsupported quotient " + source.to_string() + " -> " + target.to_string());
    };
    if (s.size() != t.size()) throw unsupported();
    std::vector<std::optional<RingSpec>> targets;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(*s[i] == *t[i]) && !is_simple_quotient(*s[i], *t[i])) throw unsupported();
        targets.emplace_back(*t[i]);
    }
    QuotientMap q = componentwise(source, targets);
    q.target = make_ring(target);
    return q;
}

QuotientMap quotient_by_ideal(const RingSpec& source, const std::vector<Elem>& generators) {
    const auto factors = factor_list(source);
    const RingPtr ring = make_ring(source);
    std::vector<std::vector<std::uint64_t>> parts(factors.size());
    for (const Elem g : generators) {
        if (g >= ring->size()) throw std::invalid_argument("ideal generator out of range");
        const auto payload = factors.size() == 1 ? std::vector<std::uint64_t>{g} : ring->payload(g);
        for (std::size_t i = 0; i < factors.size(); ++i) parts[i].push_back(payload[i]);
    }
    std::vector<std::optional<RingSpec>> targets;
    for (std::size_t i = 0; i < factors.size(); ++i) targets.push_back(simple_quotient(*factors[i], parts[i]));
    return componentwise(source, targets);
}

std::optional<std::pair<Simplex, int>> SimplicialMap::apply(const Simplex& s) const {
    Simplex image;
    image.reserve(s.size());
    for (const auto v : s) image.push_back(vertex_map.at(v));
    int sign = 1;
    for (std::size_t i = 0; i < image.size(); ++i)
        for (std::size_t j = i + 1; j < image.size(); ++j) {
            if (image[i] == image[j]) return std::nullopt;
            if (image[i] > image[j]) sign = -sign;
        }
    std::sort(image.begin(), image.end());
    return std::make_pair(std::move(image), sign);
}

SimplicialMap reduction_map(const TitsComplex& source, const TitsComplex& target, const QuotientMap& quotient) {
    if (!(source.ring()->spec() == quotient.source->spec()) || !(target.ring()->spec() == quotient.target->spec()))
        throw SpecMismatch("reduction map rings do not match the complexes");
    if (source.n() != target.n()) throw std::invalid_argument("reduction map needs equal ambient rank");
    SimplicialMap map;
    for (const auto& v : source.vertices()) {
        std::vector<Vec> reduced;
        for (const auto& b : v.basis()) reduced.push_back(quotient.apply(b));
        const auto found = target.find_vertex(span_members(target.module(), reduced));
        if (!found) throw std::logic_error("reduced summand is not a vertex of the target complex");
        map.vertex_map.push_back(static_cast<std::uint32_t>(*found));
    }
    return map;
}

// ------------------------------------------------------------ group action

std::vector<std::uint32_t> group_action(const TitsComplex& complex, const Matrix& g) {
    const FreeModule& module = complex.module();
    if (g.rows() != module.rank() || g.cols() != module.rank())
        throw std::invalid_argument("matrix size does not match the complex");
    if (!is_invertible(g)) throw std::invalid_argument("group element is not invertible");
    std::vector<std::uint32_t> perm(complex.vertex_count());
    for (std::size_t i = 0; i < complex.vertex_count(); ++i) {
        std::vector<std::uint64_t> image;
        for (const auto code : complex.vertex(i).fingerprint()) image.push_back(module.encode(g.apply(module.decode(code))));
        std::sort(image.begin(), image.end());
        const auto found = complex.find_vertex(image);
        if (!found) throw std::logic_error("image of a vertex is not a vertex");
        perm[i] = static_cast<std::uint32_t>(*found);
    }
    return perm;
}

std::vector<Matrix> gl_generators(const RingPtr& ring, int n) {
    std::vector<Matrix> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (const Elem a : ring->additive_generators()) {
                Matrix e = Matrix::identity(ring, n);
                e.at(i, j) = a;
                out.push_back(std::move(e));
            }
        }
    if (n >= 1)
        for (const Elem u : ring->units()) {
            if (u == ring->one()) continue;
            Matrix d = Matrix::identity(ring, n);
            d.at(0, 0) = u;
            out.push_back(std::move(d));
        }
    return out;
}

std::vector<Elem> ideal_elements(const Ring& ring, const std::vector<Elem>& generators) {
    std::vector<char> in(ring.size(), 0);
    in[0] = 1;
    for (const Elem a : generators) {
        std::vector<Elem> current;
        for (Elem x = 0; x < ring.size(); ++x)
            if (in[x]) current.push_back(x);
        for (const Elem x : current)
            for (Elem r = 0; r < ring.size(); ++r) in[ring.add(x, ring.mul(r, a))] = 1;
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < ring.size(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

namespace {

Matrix inverse_by_powers(const Matrix& h) {
    const Matrix id = Matrix::identity(h.ring(), h.rows());
    Matrix previous = id;
    Matrix power = h;
    while (!(power == id)) {
        previous = power;
        power = power * h;
    }
    return previous;
}

}  // namespace

std::vector<Matrix> congruence_generators(const RingPtr& ring, int n, const std::vector<Elem>& ideal_generators) {
    const auto ideal = ideal_elements(*ring, ideal_generators);
    const Matrix id = Matrix::identity(ring, n);
    std::vector<Matrix> out;
    if (ideal.size() == 1) return out;
    const BigInt total = ipow(BigInt(ideal.size()), static_cast<unsigned>(n * n));
    if (total <= 4096) {
        const auto cells = static_cast<std::size_t>(n * n);
        std::vector<std::size_t> digits(cells, 0);
        while (true) {
            std::size_t i = cells;
            while (i > 0 && digits[i - 1] + 1 == ideal.size()) digits[--i] = 0;
            if (i == 0) break;
            ++digits[i - 1];
            Matrix m = id;
            for (std::size_t c = 0; c < cells; ++c) {
                const int r = static_cast<int>(c) / n;
                const int col = static_cast<int>(c) % n;
                m.at(r, col) = ring->add(m.at(r, col), ideal[digits[c]]);
            }
            if (is_invertible(m)) out.push_back(std::move(m));
        }
        return out;
    }
    std::vector<Matrix> elementary;
    for (const Elem a : ideal) {
        if (a == 0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Matrix m = id;
                m.at(i, j) = ring->add(m.at(i, j), a);
                if (is_invertible(m)) elementary.push_back(std::move(m));
            }
    }
    out = elementary;
    for (const auto& h : gl_generators(ring, n)) {
        const Matrix h_inv = inverse_by_powers(h);
        for (const auto& e : elementary) {
            Matrix c = h * e * h_inv;
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
        }
    }
    return out;
}

GroupAction::GroupAction(const TitsComplex& complex, std::vector<Matrix> generators)
    : complex_(complex), generators_(std::move(generators)), memo_(generators_.size()) {
    for (const auto& g : generators_)
        if (!is_invertible(g)) throw std::invalid_argument("group generator is not invertible");
}

const std::vector<std::uint32_t>& GroupAction::vertex_permutation(std::size_t generator) const {
    std::lock_guard lock(mutex_);
    auto& slot = memo_.at(generator);
    if (!slot) slot = group_action(complex_, generators_[generator]);
    return *slot;
}

SignedPermutation simplex_permutation(const SimplicialComplex& complex, const SimplexIndex& index,
                                      const std::vector<std::uint32_t>& vertex_map) {
    SignedPermutation out;
    const SimplicialMap map{vertex_map};
    for (const auto& level : complex.simplices_by_dim) {
        auto& targets = out.by_dim.emplace_back();
        targets.reserve(level.size());
        for (const auto& s : level) {
            const auto image = map.apply(s);
            if (!image) throw std::invalid_argument("vertex map is not injective on a simplex");
            const auto found = index.find(image->first);
            if (!found) throw std::invalid_argument("vertex map does not preserve the simplex set");
            targets.emplace_back(static_cast<std::uint32_t>(*found), image->second);
        }
    }
    return out;
}

}  // namespace titsring
