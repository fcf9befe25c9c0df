#include "titsring/homology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <sstream>

namespace titsring {

// --------------------------------------------------------- SparseIntMatrix

SparseIntMatrix SparseIntMatrix::from_triplets(
    std::size_t r, std::size_t c, const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& entries) {
    SparseIntMatrix m(r, c);
    std::vector<std::map<std::uint32_t, std::int64_t>> acc(c);
    for (const auto& [i, j, v] : entries) {
        if (i >= r || j >= c) throw std::out_of_range("triplet outside the matrix");
        acc[j][static_cast<std::uint32_t>(i)] += v;
    }
    for (std::size_t j = 0; j < c; ++j)
        for (const auto& [i, v] : acc[j])
            if (v != 0) m.columns[j].emplace_back(i, v);
    return m;
}

std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> SparseIntMatrix::triplets() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> out;
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [i, v] : columns[j]) out.emplace_back(i, j, v);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SparseIntMatrix::nonzeros() const {
    std::size_t total = 0;
    for (const auto& col : columns) total += col.size();
    return total;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("dimension mismatch in sparse product");
    SparseIntMatrix out(rows, other.cols);
    for (std::size_t j = 0; j < other.cols; ++j) {
        std::map<std::uint32_t, std::int64_t> acc;
        for (const auto& [k, b] : other.columns[j])
            for (const auto& [i, a] : columns[k]) {
                std::int64_t product = 0;
                if (__builtin_mul_overflow(a, b, &product) || __builtin_add_overflow(acc[i], product, &acc[i]))
                    throw std::overflow_error("sparse product overflows int64");
            }
        for (const auto& [i, v] : acc)
            if (v != 0) out.columns[j].emplace_back(i, v);
    }
    return out;
}

std::string SparseIntMatrix::to_triplet_text() const {
    std::ostringstream os;
    os << rows << ' ' << cols << ' ' << nonzeros() << '\n';
    for (const auto& [i, j, v] : triplets()) os << i << ' ' << j << ' ' << v << '\n';
    return os.str();
}

SparseIntMatrix SparseIntMatrix::from_triplet_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t r = 0, c = 0, nnz = 0;
    if (!(is >> r >> c >> nnz)) throw ParseError("malformed triplet header");
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = 0, j = 0;
        std::int64_t v = 0;
        if (!(is >> i >> j >> v)) throw ParseError("malformed triplet line " + std::to_string(k + 1));
        entries.emplace_back(i, j, v);
    }
    return from_triplets(r, c, entries);
}

// ------------------------------------------------------ sparse big vectors

namespace {

using SparseVec = std::vector<std::pair<std::uint32_t, BigInt>>;

const BigInt* lookup(const SparseVec& v, std::uint32_t key) {
    const auto it = std::lower_bound(v.begin(), v.end(), key, [](const auto& e, std::uint32_t k) { return e.first < k; });
    return it != v.end() && it->first == key ? &it->second : nullptr;
}

/// target -= factor * source.  Calls on_new(key) for keys that appear.
template <class OnNew>
void subtract_multiple(SparseVec& target, const BigInt& factor, const SparseVec& source, OnNew&& on_new) {
    SparseVec out;
    out.reserve(target.size() + source.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < source.size()) {
        if (b == source.size() || (a < target.size() && target[a].first < source[b].first)) {
            out.push_back(std::move(target[a++]));
        } else if (a == target.size() || source[b].first < target[a].first) {
            on_new(source[b].first);
            out.emplace_back(source[b].first, -factor * source[b].second);
            ++b;
        } else {
            BigInt v = target[a].second - factor * source[b].second;
            if (v != 0) out.emplace_back(target[a].first, std::move(v));
            ++a;
            ++b;
        }
    }
    target = std::move(out);
}

void subtract_multiple(SparseVec& target, const BigInt& factor, const SparseVec& source) {
    subtract_multiple(target, factor, source, [](std::uint32_t) {});
}

BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

std::vector<BigInt> normalize_diagonal(std::vector<BigInt> diag) {
    for (auto& d : diag) d = abs_value(d);
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] == 0) continue;
            const BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
            const BigInt l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

/// Smith normal form of a dense matrix; returns the raw diagonal.
std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs_value(a[i][j]) < abs_value(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        while (true) {
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            pr = t;
            pc = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0 && abs_value(a[i][t]) < abs_value(a[pr][pc])) {
                    pr = i;
                    pc = t;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0 && abs_value(a[t][j]) < abs_value(a[pr][pc])) {
                    pr = t;
                    pc = j;
                }
        }
        diag.push_back(a[t][t]);
    }
    return diag;
}

/// Sparse elimination with unit pivots first, then a dense Smith form on
/// whatever remains.
SmithResult smith_of_rows(std::vector<SparseVec> rows, std::size_t cols) {
    std::vector<std::vector<std::uint32_t>> col_rows(cols);
    for (std::uint32_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);
    std::vector<char> alive(rows.size(), 1);
    std::size_t unit_pivots = 0;

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::uint32_t> order;
        for (std::uint32_t r = 0; r < rows.size(); ++r)
            if (alive[r] && !rows[r].empty()) order.push_back(r);
        std::stable_sort(order.begin(), order.end(),
                         [&](auto x, auto y) { return rows[x].size() < rows[y].size(); });
        for (const auto r : order) {
            if (!alive[r] || rows[r].empty()) continue;
            std::size_t best = rows[r].size();
            std::size_t best_cost = 0;
            for (std::size_t k = 0; k < rows[r].size(); ++k) {
                const auto& [c, v] = rows[r][k];
                if (v != 1 && v != -1) continue;
                const std::size_t cost = col_rows[c].size();
                if (best == rows[r].size() || cost < best_cost) {
                    best = k;
                    best_cost = cost;
                }
            }
            if (best == rows[r].size()) continue;
            const std::uint32_t c = rows[r][best].first;
            const BigInt pivot = rows[r][best].second;
            const auto touched = std::move(col_rows[c]);
            col_rows[c].clear();
            for (const auto r2 : touched) {
                if (r2 == r || !alive[r2]) continue;
                const BigInt* entry = lookup(rows[r2], c);
                if (!entry) continue;
                const BigInt factor = *entry * pivot;  // pivot is +-1
                subtract_multiple(rows[r2], factor, rows[r], [&](std::uint32_t key) { col_rows[key].push_back(r2); });
            }
            alive[r] = 0;
            ++unit_pivots;
            progress = true;
        }
    }

    std::vector<std::uint32_t> remaining_rows;
    std::map<std::uint32_t, std::size_t> remaining_cols;
    for (std::uint32_t r = 0; r < rows.size(); ++r)
        if (alive[r] && !rows[r].empty()) {
            remaining_rows.push_back(r);
            for (const auto& [c, v] : rows[r]) remaining_cols.emplace(c, 0);
        }
    std::size_t next = 0;
    for (auto& [c, idx] : remaining_cols) idx = next++;
    std::vector<std::vector<BigInt>> dense(remaining_rows.size(), std::vector<BigInt>(remaining_cols.size()));
    for (std::size_t i = 0; i < remaining_rows.size(); ++i)
        for (const auto& [c, v] : rows[remaining_rows[i]]) dense[i][remaining_cols[c]] = v;

    std::vector<BigInt> diag(unit_pivots, BigInt(1));
    for (auto& d : dense_smith(std::move(dense))) diag.push_back(std::move(d));
    SmithResult out;
    out.rank = diag.size();
    out.divisors = normalize_diagonal(std::move(diag));
    return out;
}

std::vector<SparseVec> rows_of(const SparseIntMatrix& m) {
    std::vector<SparseVec> rows(m.rows);
    for (std::uint32_t j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.columns[j]) rows[i].emplace_back(j, BigInt(v));
    return rows;
}

}  // namespace

SmithResult smith_rank_and_divisors(const SparseIntMatrix& m) { return smith_of_rows(rows_of(m), m.cols); }

SmithResult smith_of_columns(const std::vector<IntVector>& columns, std::size_t rows) {
    std::vector<SparseVec> r(rows);
    for (std::uint32_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::uint32_t i = 0; i < rows; ++i)
            if (columns[j][i] != 0) r[i].emplace_back(j, columns[j][i]);
    }
    return smith_of_rows(std::move(r), columns.size());
}

// --------------------------------------------------------- kernel lattices

namespace {

struct Record {
    SparseVec a;  // current image
    SparseVec t;  // combination of original columns
};

/// Reduces the records that are nonzero at `key` to a single one by
/// Euclidean steps; returns its position in `live`, or npos if none.
std::size_t reduce_at(std::vector<Record>& records, std::vector<std::size_t>& live, std::uint32_t key) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    while (true) {
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < live.size(); ++k)
            if (lookup(records[live[k]].a, key)) hits.push_back(k);
        if (hits.empty()) return npos;
        if (hits.size() == 1) return hits[0];
        std::size_t best = hits[0];
        for (const auto k : hits) {
            const auto& rk = records[live[k]];
            const auto& rb = records[live[best]];
            const BigInt vk = abs_value(*lookup(rk.a, key));
            const BigInt vb = abs_value(*lookup(rb.a, key));
            if (vk < vb || (vk == vb && rk.a.size() + rk.t.size() < rb.a.size() + rb.t.size())) best = k;
        }
        const Record& p = records[live[best]];
        const BigInt pv = *lookup(p.a, key);
        for (const auto k : hits) {
            if (k == best) continue;
            Record& q = records[live[k]];
            const BigInt factor = *lookup(q.a, key) / pv;
            if (factor == 0) continue;
            subtract_multiple(q.a, factor, p.a);
            subtract_multiple(q.t, factor, p.t);
        }
    }
}

IntVector densify(const SparseVec& v, std::size_t length) {
    IntVector out(length);
    for (const auto& [k, x] : v) out[k] = x;
    return out;
}

}  // namespace

std::vector<IntVector> integer_kernel_basis(const SparseIntMatrix& m) {
    std::vector<Record> records(m.cols);
    for (std::uint32_t j = 0; j < m.cols; ++j) {
        for (const auto& [i, v] : m.columns[j]) records[j].a.emplace_back(i, BigInt(v));
        records[j].t.emplace_back(j, BigInt(1));
    }
    // Rows in order of increasing support, which keeps fill-in low.
    std::vector<std::size_t> support(m.rows, 0);
    for (const auto& col : m.columns)
        for (const auto& [i, v] : col) ++support[i];
    std::vector<std::uint32_t> order(m.rows);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return support[x] < support[y]; });

    std::vector<std::size_t> live(m.cols);
    std::iota(live.begin(), live.end(), std::size_t{0});
    for (const auto key : order) {
        const std::size_t k = reduce_at(records, live, key);
        if (k != static_cast<std::size_t>(-1)) live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
    }
    std::vector<IntVector> out;
    for (const auto idx : live) {
        if (!records[idx].a.empty()) throw std::logic_error("kernel elimination left a nonzero image");
        out.push_back(densify(records[idx].t, m.cols));
    }
    return out;
}

LatticeBasis::LatticeBasis(std::vector<IntVector> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) return;
    const std::size_t length = basis_.front().size();
    std::vector<Record> records(basis_.size());
    for (std::uint32_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].size() != length) throw std::invalid_argument("lattice vectors of unequal length");
        for (std::uint32_t k = 0; k < length; ++k)
            if (basis_[i][k] != 0) records[i].a.emplace_back(k, basis_[i][k]);
        records[i].t.emplace_back(i, BigInt(1));
    }
    std::vector<std::size_t> live(records.size());
    std::iota(live.begin(), live.end(), std::size_t{0});
    for (std::uint32_t pos = 0; pos < length && !live.empty(); ++pos) {
        const std::size_t k = reduce_at(records, live, pos);
        if (k == static_cast<std::size_t>(-1)) continue;
        const Record& r = records[live[k]];
        pivot_positions_.push_back(pos);
        echelon_.push_back(densify(r.a, length));
        transform_.push_back(densify(r.t, basis_.size()));
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (!live.empty()) throw std::invalid_argument("lattice vectors are linearly dependent");
}

std::optional<IntVector> LatticeBasis::coordinates(const IntVector& y) const {
    IntVector x(basis_.size());
    if (basis_.empty()) {
        if (std::any_of(y.begin(), y.end(), [](const BigInt& v) { return v != 0; })) return std::nullopt;
        return x;
    }
    if (y.size() != basis_.front().size()) throw std::invalid_argument("vector length mismatch");
    IntVector rest = y;
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
        const auto pos = pivot_positions_[k];
        if (rest[pos] == 0) continue;
        if (rest[pos] % echelon_[k][pos] != 0) return std::nullopt;
        const BigInt c = rest[pos] / echelon_[k][pos];
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (echelon_[k][i] != 0) rest[i] -= c * echelon_[k][i];
        for (std::size_t i = 0; i < x.size(); ++i)
            if (transform_[k][i] != 0) x[i] += c * transform_[k][i];
    }
    if (std::any_of(rest.begin(), rest.end(), [](const BigInt& v) { return v != 0; })) return std::nullopt;
    return x;
}

// ----------------------------------------------------------- chain complex

ChainComplex chain_complex(const SimplicialComplex& complex) {
    ChainComplex cc;
    cc.f_vector = complex.f_vector();
    if (cc.f_vector.empty()) return cc;
    const SimplexIndex index(complex);
    SparseIntMatrix augmentation(1, cc.f_vector[0]);
    for (auto& col : augmentation.columns) col.emplace_back(0, 1);
    cc.boundaries.push_back(std::move(augmentation));
    for (std::size_t d = 1; d < complex.simplices_by_dim.size(); ++d) {
        const auto& level = complex.simplices_by_dim[d];
        SparseIntMatrix b(cc.f_vector[d - 1], level.size());
        for (std::size_t j = 0; j < level.size(); ++j) {
            auto& col = b.columns[j];
            for (std::size_t omit = 0; omit < level[j].size(); ++omit) {
                Simplex face;
                for (std::size_t k = 0; k < level[j].size(); ++k)
                    if (k != omit) face.push_back(level[j][k]);
                const auto row = index.find(face);
                if (!row) throw std::invalid_argument("complex is not closed under faces");
                col.emplace_back(static_cast<std::uint32_t>(*row), omit % 2 == 0 ? 1 : -1);
            }
            std::sort(col.begin(), col.end());
        }
        cc.boundaries.push_back(std::move(b));
    }
    return cc;
}

bool boundary_squares_to_zero(const ChainComplex& cc) {
    for (std::size_t d = 1; d < cc.boundaries.size(); ++d)
        if (!cc.boundaries[d - 1].multiply(cc.boundaries[d]).is_zero()) return false;
    return true;
}

HomologyResult reduced_homology(const ChainComplex& cc, unsigned jobs) {
    const std::size_t count = cc.boundaries.size();
    std::vector<SmithResult> smith(count);
    jobs = std::max(1U, jobs);
    for (std::size_t start = 0; start < count; start += jobs) {
        std::vector<std::future<SmithResult>> batch;
        for (std::size_t d = start; d < std::min(count, start + jobs); ++d)
            batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                       [&cc, d] { return smith_rank_and_divisors(cc.boundaries[d]); }));
        for (std::size_t k = 0; k < batch.size(); ++k) smith[start + k] = batch[k].get();
    }
    HomologyResult result;
    result.f_vector = cc.f_vector;
    result.betti_minus_one = count == 0 ? 1 : 1 - smith[0].rank;
    for (std::size_t d = 0; d < count; ++d) {
        result.boundary_ranks.push_back(smith[d].rank);
        const std::size_t above = d + 1 < count ? smith[d + 1].rank : 0;
        result.betti.push_back(cc.f_vector[d] - smith[d].rank - above);
        std::vector<BigInt> torsion;
        if (d + 1 < count)
            for (const auto& div : smith[d + 1].divisors)
                if (div > 1) torsion.push_back(div);
        result.torsion.push_back(std::move(torsion));
    }
    return result;
}

// ------------------------------------------------------------ induced maps

SparseIntMatrix chain_map(const SimplicialMap& map, const SimplicialComplex& source,
                          const SimplicialComplex& target, int degree) {
    const SimplexIndex index(target);
    SparseIntMatrix out(target.count(degree), source.count(degree));
    if (degree < 0 || degree > source.dimension()) return out;
    const auto& level = source.simplices_by_dim[static_cast<std::size_t>(degree)];
    for (std::size_t j = 0; j < level.size(); ++j) {
        const auto image = map.apply(level[j]);
        if (!image) continue;  // degenerate simplices map to zero
        const auto row = index.find(image->first);
        if (!row) throw std::invalid_argument("map is not simplicial: image simplex missing from target");
        out.columns[j].emplace_back(static_cast<std::uint32_t>(*row), image->second);
    }
    return out;
}

InducedMap induced_top_map(const SimplicialMap& map, const SimplicialComplex& source,
                           const SimplicialComplex& target) {
    const int degree = source.dimension();
    if (degree != target.dimension()) throw std::invalid_argument("complexes of different dimension");
    const auto source_cc = chain_complex(source);
    const auto target_cc = chain_complex(target);
    const auto source_cycles = integer_kernel_basis(source_cc.boundaries[static_cast<std::size_t>(degree)]);
    const LatticeBasis target_cycles(integer_kernel_basis(target_cc.boundaries[static_cast<std::size_t>(degree)]));
    const auto f = chain_map(map, source, target, degree);

    InducedMap out;
    out.source_dim = source_cycles.size();
    out.target_dim = target_cycles.size();
    for (const auto& z : source_cycles) {
        IntVector image(f.rows);
        for (std::size_t j = 0; j < f.cols; ++j)
            if (z[j] != 0)
                for (const auto& [i, v] : f.columns[j]) image[i] += z[j] * v;
        auto coords = target_cycles.coordinates(image);
        if (!coords) throw std::logic_error("image of a cycle is not a cycle");
        out.columns.push_back(std::move(*coords));
    }
    out.rank = smith_of_columns(out.columns, out.target_dim).rank;
    return out;
}

// ---------------------------------------------------------- fixed subspace

namespace {

struct Orbits {
    std::vector<std::int64_t> orbit;  // -1 for members of vanishing orbits
    std::vector<int> sign;            // sign relative to the orbit representative
    std::vector<std::size_t> representatives;
};

Orbits signed_orbits(std::size_t count, std::size_t degree, const std::vector<SignedPermutation>& generators) {
    Orbits o;
    o.orbit.assign(count, -2);
    o.sign.assign(count, 0);
    std::vector<std::size_t> stack, members;
    for (std::size_t start = 0; start < count; ++start) {
        if (o.orbit[start] != -2) continue;
        bool vanishes = false;
        members.clear();
        stack.assign(1, start);
        o.orbit[start] = -3;
        o.sign[start] = 1;
        while (!stack.empty()) {
            const auto s = stack.back();
            stack.pop_back();
            members.push_back(s);
            for (const auto& g : generators) {
                const auto [t, sg] = g.by_dim.at(degree)[s];
                const int sign = o.sign[s] * sg;
                if (o.orbit[t] == -2) {
                    o.orbit[t] = -3;
                    o.sign[t] = sign;
                    stack.push_back(t);
                } else if (o.sign[t] != sign) {
                    vanishes = true;
                }
            }
        }
        const auto id = vanishes ? std::int64_t{-1} : static_cast<std::int64_t>(o.representatives.size());
        if (!vanishes) o.representatives.push_back(start);
        for (const auto s : members) o.orbit[s] = id;
    }
    return o;
}

/// Rank of boundaries[d] restricted to orbit sums of degree d.
std::size_t orbit_boundary_rank(const ChainComplex& cc, std::size_t d, const std::vector<Orbits>& orbits) {
    const auto& b = cc.boundaries[d];
    const auto& upper = orbits[d];
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;
    for (std::size_t j = 0; j < b.cols; ++j) {
        if (upper.orbit[j] < 0) continue;
        for (const auto& [i, v] : b.columns[j]) {
            std::size_t row = 0;
            std::int64_t coefficient = 0;
            if (d == 0) {
                coefficient = v;  // augmentation target is fixed
            } else {
                const auto& lower = orbits[d - 1];
                // coefficient of the lower representative in the image
                if (lower.orbit[i] < 0 || lower.representatives[static_cast<std::size_t>(lower.orbit[i])] != i) continue;
                row = static_cast<std::size_t>(lower.orbit[i]);
                coefficient = v;
            }
            entries.emplace_back(row, static_cast<std::size_t>(upper.orbit[j]), coefficient * upper.sign[j]);
        }
    }
    const std::size_t rows = d == 0 ? 1 : orbits[d - 1].representatives.size();
    return smith_rank_and_divisors(SparseIntMatrix::from_triplets(rows, upper.representatives.size(), entries)).rank;
}

}  // namespace

std::size_t fixed_subspace_dim(const ChainComplex& cc, int degree, const std::vector<SignedPermutation>& generators) {
    if (degree < 0 || degree > cc.top_degree()) throw std::invalid_argument("degree out of range");
    const auto d = static_cast<std::size_t>(degree);
    for (const auto& g : generators)
        if (g.by_dim.size() != cc.f_vector.size()) throw std::invalid_argument("action does not match the complex");
    const std::size_t levels = std::min(cc.f_vector.size(), d + 2);
    std::vector<Orbits> orbits;
    for (std::size_t k = 0; k < levels; ++k) orbits.push_back(signed_orbits(cc.f_vector[k], k, generators));
    const std::size_t cycles = orbits[d].representatives.size() - orbit_boundary_rank(cc, d, orbits);
    const std::size_t boundaries = d + 1 < cc.f_vector.size() ? orbit_boundary_rank(cc, d + 1, orbits) : 0;
    return cycles - boundaries;
}

}  // namespace titsring
