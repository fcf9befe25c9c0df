#include "titsring/steinberg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace titsring {

// ------------------------------------------------------------------- ranks

std::vector<BigInt> steinberg_ranks(const RingSpec& spec, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    std::vector<BigInt> d{1};
    for (int n = 1; n <= n_max; ++n) {
        BigInt value = 0;
        for (int i = 1; i <= n; ++i) {
            const BigInt term = grassmannian_size_formula(spec, n, n - i) * d[static_cast<std::size_t>(n - i)];
            value += (i % 2 == 1) ? term : BigInt(-term);
        }
        d.push_back(value);
    }
    return d;
}

BigInt steinberg_rank(const RingSpec& spec, int n) { return steinberg_ranks(spec, n).back(); }

BigInt steinberg_rank_field(const BigInt& q, int n) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    return ipow(q, static_cast<unsigned>(n * (n - 1) / 2));
}

std::vector<RankTable> table_generate(const std::vector<RingSpec>& specs, int n_max) {
    std::vector<RankTable> out;
    for (const auto& spec : specs) {
        auto ranks = steinberg_ranks(spec, n_max);
        out.push_back(RankTable{spec.to_string(), std::vector<BigInt>(ranks.begin() + 1, ranks.end())});
    }
    return out;
}

// ------------------------------------------------------------------ chains

SteinbergChain SteinbergChain::operator+(const SteinbergChain& other) const {
    SteinbergChain out = *this;
    for (const auto& [k, v] : other.coefficients) {
        const auto sum = (out.coefficients[k] += v);
        if (sum == 0) out.coefficients.erase(k);
    }
    return out;
}

SteinbergChain SteinbergChain::operator-() const {
    SteinbergChain out = *this;
    for (auto& [k, v] : out.coefficients) v = -v;
    return out;
}

IntVector SteinbergChain::dense(std::size_t chambers) const {
    IntVector out(chambers);
    for (const auto& [k, v] : coefficients) out.at(k) = v;
    return out;
}

namespace {

void require_full_complex(const TitsComplex& complex) {
    if (complex.n() < 2 || complex.max_rank() != complex.n() - 1)
        throw std::invalid_argument("apartments need the full complex T_n(R) with n >= 2");
}

std::size_t vertex_of_span(const TitsComplex& complex, const std::vector<Vec>& vectors) {
    const auto found = complex.find_vertex(span_members(complex.module(), vectors));
    if (!found) throw std::logic_error("span of basis vectors is not a vertex of the complex");
    return *found;
}

std::size_t chamber_index(const TitsComplex& complex, const Simplex& chamber) {
    if (static_cast<int>(chamber.size()) != complex.n() - 1) throw std::invalid_argument("not a chamber");
    const auto found = complex.simplex_index().find(chamber);
    if (!found) throw std::invalid_argument("chamber is not in the complex");
    return *found;
}

int permutation_sign(const std::vector<int>& p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

}  // namespace

Simplex basis_flag(const TitsComplex& complex, const Matrix& basis, const std::vector<int>& order) {
    require_full_complex(complex);
    const auto columns = basis.columns();
    Simplex flag;
    std::vector<Vec> prefix;
    for (int k = 0; k + 1 < complex.n(); ++k) {
        prefix.push_back(columns.at(static_cast<std::size_t>(order.at(static_cast<std::size_t>(k)))));
        flag.push_back(static_cast<std::uint32_t>(vertex_of_span(complex, prefix)));
    }
    return flag;
}

Simplex reverse_upper_triangular_flag(const TitsComplex& complex, const Matrix& basis) {
    std::vector<int> order(static_cast<std::size_t>(complex.n()));
    std::iota(order.rbegin(), order.rend(), 0);
    return basis_flag(complex, basis, order);
}

SteinbergChain apartment_class(const TitsComplex& complex, const Matrix& basis) {
    require_full_complex(complex);
    const int n = complex.n();
    if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis matrix has the wrong size");
    if (!is_invertible(basis)) throw std::invalid_argument("apartment basis is not invertible");
    const auto columns = basis.columns();

    std::vector<std::optional<std::uint32_t>> by_subset(std::size_t{1} << n);
    const auto vertex_for = [&](unsigned mask) {
        auto& slot = by_subset[mask];
        if (!slot) {
            std::vector<Vec> vectors;
            for (int i = 0; i < n; ++i)
                if (mask & (1U << i)) vectors.push_back(columns[static_cast<std::size_t>(i)]);
            slot = static_cast<std::uint32_t>(vertex_of_span(complex, vectors));
        }
        return *slot;
    };

    const int w0_sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    SteinbergChain chain;
    do {
        Simplex flag;
        unsigned mask = 0;
        for (int k = 0; k + 1 < n; ++k) {
            mask |= 1U << order[static_cast<std::size_t>(k)];
            flag.push_back(vertex_for(mask));
        }
        const auto idx = chamber_index(complex, flag);
        chain.coefficients[idx] += permutation_sign(order) * w0_sign;
    } while (std::next_permutation(order.begin(), order.end()));
    std::erase_if(chain.coefficients, [](const auto& e) { return e.second == 0; });
    return chain;
}

std::int64_t chamber_map(const TitsComplex& complex, const SteinbergChain& chain, const Simplex& chamber) {
    const auto idx = chamber_index(complex, chamber);
    const auto it = chain.coefficients.find(idx);
    return it == chain.coefficients.end() ? 0 : it->second;
}

std::map<std::size_t, std::int64_t> chain_boundary(const ChainComplex& cc, const SteinbergChain& chain) {
    const auto& b = cc.boundaries.at(static_cast<std::size_t>(cc.top_degree()));
    std::map<std::size_t, std::int64_t> out;
    for (const auto& [j, c] : chain.coefficients)
        for (const auto& [i, v] : b.columns.at(j)) out[i] += c * v;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

std::vector<Matrix> upper_unitriangular_matrices(const RingPtr& ring, int n, const Budget& budget) {
    const auto cells = static_cast<unsigned>(n * (n - 1) / 2);
    check_budget(budget, ipow(BigInt(ring->size()), cells), "unipotent upper triangular matrices");
    std::vector<std::pair<int, int>> positions;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) positions.emplace_back(i, j);
    std::vector<Matrix> out;
    std::vector<Elem> digits(cells, 0);
    while (true) {
        Matrix m = Matrix::identity(ring, n);
        for (std::size_t k = 0; k < cells; ++k) m.at(positions[k].first, positions[k].second) = digits[k];
        out.push_back(std::move(m));
        std::size_t k = cells;
        while (k > 0 && digits[k - 1] + 1 == ring->size()) digits[--k] = 0;
        if (k == 0) break;
        ++digits[k - 1];
    }
    return out;
}

std::vector<std::vector<std::int64_t>> ut_apartment_pairing(const TitsComplex& complex, const Budget& budget) {
    require_full_complex(complex);
    const auto mats = upper_unitriangular_matrices(complex.ring(), complex.n(), budget);
    std::vector<SteinbergChain> classes;
    std::vector<Simplex> flags;
    for (const auto& m : mats) {
        classes.push_back(apartment_class(complex, m));
        flags.push_back(reverse_upper_triangular_flag(complex, m));
    }
    std::vector<std::vector<std::int64_t>> pairing(mats.size(), std::vector<std::int64_t>(mats.size()));
    for (std::size_t a = 0; a < mats.size(); ++a)
        for (std::size_t b = 0; b < mats.size(); ++b) pairing[a][b] = chamber_map(complex, classes[b], flags[a]);
    return pairing;
}

SteinbergChain eta_class(const TitsComplex& complex, Elem m) {
    require_full_complex(complex);
    const Ring& ring = *complex.ring();
    if (m >= ring.size()) throw std::invalid_argument("element out of range");
    if (m == 0 || ring.is_unit(m))
        throw std::invalid_argument("eta needs a nonzero non-unit, which " + ring.spec().to_string() +
                                    (ring.is_unit(m) ? " does not offer at " + ring.format(m) : " does not offer at 0"));
    const int n = complex.n();
    Matrix a = Matrix::identity(complex.ring(), n);
    a.at(0, 0) = 0;
    a.at(1, 0) = ring.one();
    a.at(0, 1) = ring.one();
    a.at(1, 1) = m;
    return apartment_class(complex, a) + apartment_class(complex, Matrix::identity(complex.ring(), n));
}

// --------------------------------------------------------- apartment spans

namespace {

Matrix frame_matrix(const TitsComplex& complex, const std::vector<std::uint32_t>& lines) {
    std::vector<Vec> columns;
    for (const auto v : lines) columns.push_back(complex.vertex(v).basis().front());
    return Matrix::from_columns(complex.ring(), columns);
}

/// Incremental rank over Q with fraction-free reduction.
class RationalSpan {
public:
    /// Adds v unless it already lies in the span; returns whether it was new.
    bool insert(std::map<std::size_t, BigInt> v) {
        for (const auto& [pos, w] : rows_) {
            const auto it = v.find(pos);
            if (it == v.end()) continue;
            const BigInt a = it->second;
            const BigInt b = w.at(pos);
            for (auto& [k, x] : v) x *= b;
            for (const auto& [k, y] : w) v[k] -= a * y;
            std::erase_if(v, [](const auto& e) { return e.second == 0; });
            BigInt g = 0;
            for (const auto& [k, x] : v) g = boost::multiprecision::gcd(g, x);
            if (g > 1)
                for (auto& [k, x] : v) x /= g;
        }
        if (v.empty()) return false;
        const std::size_t pos = v.begin()->first;
        rows_.emplace_back(pos, std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::pair<std::size_t, std::map<std::size_t, BigInt>>> rows_;
};

std::map<std::size_t, BigInt> as_rational(const SteinbergChain& chain) {
    std::map<std::size_t, BigInt> out;
    for (const auto& [k, v] : chain.coefficients) out.emplace(k, BigInt(v));
    return out;
}

}  // namespace

ApartmentSpan apartment_span_rank(const TitsComplex& complex, const Budget& budget) {
    require_full_complex(complex);
    const int n = complex.n();
    const RingSpec& spec = complex.ring()->spec();
    const std::size_t chambers = complex.topology().count(n - 2);
    std::vector<std::uint32_t> lines;
    for (std::uint32_t v = 0; v < complex.vertex_count(); ++v)
        if (complex.vertex(v).rank() == 1) lines.push_back(v);

    ApartmentSpan out;
    if (gl_order(spec, n) <= 100'000) {
        BigInt units = complex.ring()->units().size();
        BigInt factorial = 1;
        for (int i = 2; i <= n; ++i) factorial *= i;
        check_budget(budget, gl_order(spec, n) / (ipow(units, static_cast<unsigned>(n)) * factorial), "frames");
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;
        std::vector<std::uint32_t> frame;
        std::vector<Vec> vectors;
        const auto extend = [&](auto&& self, std::size_t start) -> void {
            if (static_cast<int>(frame.size()) == n) {
                const auto chain = apartment_class(complex, frame_matrix(complex, frame));
                for (const auto& [k, v] : chain.coefficients) entries.emplace_back(k, out.apartments, v);
                ++out.apartments;
                return;
            }
            for (std::size_t i = start; i < lines.size(); ++i) {
                vectors.push_back(complex.vertex(lines[i]).basis().front());
                if (extends_to_basis(*complex.ring(), vectors)) {
                    frame.push_back(lines[i]);
                    self(self, i + 1);
                    frame.pop_back();
                }
                vectors.pop_back();
            }
        };
        extend(extend, 0);
        const auto smith = smith_rank_and_divisors(SparseIntMatrix::from_triplets(chambers, out.apartments, entries));
        out.rank = smith.rank;
        for (const auto& d : smith.divisors)
            if (d > 1) out.divisors.push_back(d);
        out.exhaustive = true;
        out.saturated = true;
        return out;
    }

    // Orbit growth: keep classes that enlarge the rational span and apply
    // every generator to each kept frame.  When the queue drains the span is
    // GL_n-stable, so it contains every apartment class.
    check_budget(budget, steinberg_rank(spec, n), "apartment classes in a rational basis");
    const GroupAction action(complex, gl_generators(complex.ring(), n));
    RationalSpan span;
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<std::uint32_t>> queue;
    std::vector<std::uint32_t> start;
    for (int i = 0; i < n; ++i) {
        const auto v = vertex_of_span(complex, {complex.module().unit_vector(i)});
        start.push_back(static_cast<std::uint32_t>(v));
    }
    std::sort(start.begin(), start.end());
    seen.insert(start);
    span.insert(as_rational(apartment_class(complex, frame_matrix(complex, start))));
    queue.push_back(start);
    ++out.apartments;
    std::size_t visits = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t g = 0; g < action.size(); ++g) {
            if (++visits > budget.max_objects) {
                out.rank = span.rank();
                out.saturated = false;
                return out;
            }
            const auto& perm = action.vertex_permutation(g);
            std::vector<std::uint32_t> image;
            for (const auto v : queue[head]) image.push_back(perm[v]);
            std::sort(image.begin(), image.end());
            if (!seen.insert(image).second) continue;
            ++out.apartments;
            if (span.insert(as_rational(apartment_class(complex, frame_matrix(complex, image))))) queue.push_back(image);
        }
    }
    out.rank = span.rank();
    out.saturated = true;
    return out;
}

// ------------------------------------------------------ GL_2 on P^1 x P^1

std::optional<int> uniserial_length(const RingSpec& spec) {
    switch (spec.kind()) {
        case RingKind::PrimeField: return 1;
        case RingKind::TruncatedPoly: return static_cast<int>(spec.degree());
        case RingKind::Modular: {
            const auto primes = prime_divisors(spec.modulus());
            if (primes.size() != 1) return std::nullopt;
            int k = 0;
            for (std::uint64_t m = spec.modulus(); m > 1; m /= primes[0]) ++k;
            return k;
        }
        case RingKind::Product: return std::nullopt;
    }
    return std::nullopt;
}

OrbitCommutant p1_orbit_and_commutant(const RingSpec& spec, const Budget& budget) {
    const auto complex = build_tits_complex(spec, 2, budget);
    const std::size_t points = complex.vertex_count();
    check_budget(budget, BigInt(points) * points, "pairs of points of P^1");
    const GroupAction action(complex, gl_generators(complex.ring(), 2));

    std::vector<std::size_t> parent(points * points);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> equations;
    std::size_t row = 0;
    for (std::size_t g = 0; g < action.size(); ++g) {
        const auto& perm = action.vertex_permutation(g);
        for (std::size_t a = 0; a < points; ++a)
            for (std::size_t b = 0; b < points; ++b) {
                const std::size_t from = a * points + b;
                const std::size_t to = perm[a] * points + perm[b];
                parent[find(from)] = find(to);
                if (from != to) {
                    equations.emplace_back(row, to, 1);
                    equations.emplace_back(row, from, -1);
                }
                ++row;
            }
    }
    OrbitCommutant out;
    out.points = points;
    for (std::size_t x = 0; x < parent.size(); ++x) out.orbits += find(x) == x;
    const auto rank = smith_rank_and_divisors(SparseIntMatrix::from_triplets(row, points * points, equations)).rank;
    out.commutant_dim = points * points - rank;
    return out;
}

}  // namespace titsring
