#include "titsring/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace titsring {

// -------------------------------------------------------------- FreeModule

FreeModule::FreeModule(RingPtr ring, int n) : ring_(std::move(ring)), n_(n), size_(1) {
    if (n_ < 0) throw std::invalid_argument("negative module rank");
    for (int i = 0; i < n_; ++i) {
        if (size_ > (std::uint64_t{1} << 62) / ring_->size()) throw std::invalid_argument("R^n too large to encode");
        size_ *= ring_->size();
    }
}

std::uint64_t FreeModule::encode(const Vec& v) const {
    std::uint64_t code = 0;
    for (const Elem e : v) code = code * ring_->size() + e;
    return code;
}

Vec FreeModule::decode(std::uint64_t code) const {
    Vec v(static_cast<std::size_t>(n_));
    for (int i = n_; i-- > 0;) {
        v[static_cast<std::size_t>(i)] = static_cast<Elem>(code % ring_->size());
        code /= ring_->size();
    }
    return v;
}

Vec FreeModule::unit_vector(int i) const {
    Vec v = zero();
    v[static_cast<std::size_t>(i)] = ring_->one();
    return v;
}

Vec FreeModule::add(const Vec& a, const Vec& b) const {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring_->add(a[i], b[i]);
    return out;
}

Vec FreeModule::scale(Elem c, const Vec& v) const {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring_->mul(c, v[i]);
    return out;
}

std::string FreeModule::format(const Vec& v) const {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + ring_->format(v[i]);
    return out + ")";
}

// ------------------------------------------------------------------ Matrix

Matrix::Matrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols), 0) {}

Matrix Matrix::identity(RingPtr ring, int n) {
    Matrix m(std::move(ring), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.ring_->one();
    return m;
}

Matrix Matrix::from_columns(RingPtr ring, const std::vector<Vec>& columns) {
    const int rows = columns.empty() ? 0 : static_cast<int>(columns.front().size());
    Matrix m(std::move(ring), rows, static_cast<int>(columns.size()));
    for (int c = 0; c < m.cols_; ++c) {
        if (static_cast<int>(columns[static_cast<std::size_t>(c)].size()) != rows)
            throw std::invalid_argument("columns of unequal length");
        for (int r = 0; r < rows; ++r) m.at(r, c) = columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    }
    return m;
}

Vec Matrix::column(int c) const {
    Vec v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = at(r, c);
    return v;
}

std::vector<Vec> Matrix::columns() const {
    std::vector<Vec> out;
    for (int c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
    Vec out(static_cast<std::size_t>(rows_), 0);
    for (int r = 0; r < rows_; ++r) {
        Elem acc = 0;
        for (int c = 0; c < cols_; ++c) acc = ring_->add(acc, ring_->mul(at(r, c), v[static_cast<std::size_t>(c)]));
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    Matrix out(ring_, rows_, other.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < other.cols_; ++c) {
            Elem acc = 0;
            for (int k = 0; k < cols_; ++k) acc = ring_->add(acc, ring_->mul(at(r, k), other.at(k, c)));
            out.at(r, c) = acc;
        }
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << ring_->format(at(r, c));
        os << "]";
    }
    os << "]";
    return os.str();
}

Elem determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = m.rows();
    if (n > 8) throw std::invalid_argument("determinant supports n <= 8");
    const Ring& ring = *m.ring();
    if (n == 0) return ring.one();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Elem det = 0;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
        Elem term = ring.one();
        for (int i = 0; i < n && term != 0; ++i) term = ring.mul(term, m.at(i, perm[static_cast<std::size_t>(i)]));
        det = (inversions % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

bool is_invertible(const Matrix& m) { return m.ring()->is_unit(determinant(m)); }

bool is_unimodular(const Ring& ring, const Vec& v) {
    const auto kind = ring.spec().kind();
    if (kind == RingKind::Modular || kind == RingKind::PrimeField) {
        std::uint64_t g = ring.spec().modulus();
        for (const Elem e : v) g = std::gcd(g, std::uint64_t{e});
        return g == 1;
    }
    // Ideal generated by the entries, closed one generator at a time.
    std::vector<char> in_ideal(ring.size(), 0);
    in_ideal[0] = 1;
    for (const Elem a : v) {
        std::vector<Elem> current;
        for (Elem x = 0; x < ring.size(); ++x)
            if (in_ideal[x]) current.push_back(x);
        for (const Elem x : current)
            for (Elem r = 0; r < ring.size(); ++r) in_ideal[ring.add(x, ring.mul(r, a))] = 1;
    }
    return in_ideal[ring.one()] != 0;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1U;
    }
    return result;
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        const std::uint64_t inv = pow_mod(rows[rank][c], p - 2, p);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const std::uint64_t factor = rows[r][c] * inv % p;
            for (std::size_t k = c; k < cols; ++k) rows[r][k] = (rows[r][k] + (p - factor) * rows[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

bool extends_to_basis(const Ring& ring, std::span<const Vec> vectors) {
    if (vectors.empty()) return true;
    const std::size_t n = vectors.front().size();
    if (vectors.size() > n) return false;
    for (std::size_t ideal = 0; ideal < ring.residue_primes().size(); ++ideal) {
        const std::uint64_t p = ring.residue_primes()[ideal];
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(vectors.size());
        for (const auto& v : vectors) {
            std::vector<std::uint64_t> row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = ring.residue(ideal, v[i]);
            rows.push_back(std::move(row));
        }
        if (rank_mod_p(std::move(rows), p) != vectors.size()) return false;
    }
    return true;
}

std::vector<std::uint64_t> span_members(const FreeModule& module, std::span<const Vec> vectors) {
    const Ring& ring = *module.ring();
    const auto n = static_cast<std::size_t>(module.rank());
    std::vector<Elem> flat(n, 0);
    std::size_t count = 1;
    for (const auto& v : vectors) {
        std::vector<Elem> multiples(std::size_t{ring.size()} * n);
        for (Elem c = 0; c < ring.size(); ++c)
            for (std::size_t i = 0; i < n; ++i) multiples[c * n + i] = ring.mul(c, v[i]);
        std::vector<Elem> next(count * ring.size() * n);
        std::size_t out = 0;
        for (std::size_t s = 0; s < count; ++s)
            for (Elem c = 0; c < ring.size(); ++c, ++out)
                for (std::size_t i = 0; i < n; ++i) next[out * n + i] = ring.add(flat[s * n + i], multiples[c * n + i]);
        flat = std::move(next);
        count *= ring.size();
    }
    std::vector<std::uint64_t> codes(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < n; ++i) code = code * ring.size() + flat[s * n + i];
        codes[s] = code;
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

std::size_t hash_codes(const std::vector<std::uint64_t>& codes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto c : codes) {
        h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

// ----------------------------------------------------------------- Summand

void Summand::finish() { hash_ = hash_codes(members_); }

Summand Summand::zero(const FreeModule& module) {
    Summand s;
    s.ambient_rank_ = module.rank();
    s.members_ = {0};
    s.finish();
    return s;
}

Summand Summand::ambient(const FreeModule& module) {
    std::vector<Vec> frame;
    for (int i = 0; i < module.rank(); ++i) frame.push_back(module.unit_vector(i));
    return from_frame(module, frame);
}

Summand Summand::from_frame(const FreeModule& module, std::span<const Vec> frame) {
    return from_frame(module, frame, span_members(module, frame));
}

Summand Summand::from_frame(const FreeModule& module, std::span<const Vec> frame, std::vector<std::uint64_t> members) {
    Summand s;
    s.ambient_rank_ = module.rank();
    s.rank_ = static_cast<int>(frame.size());
    s.members_ = std::move(members);
    const Ring& ring = *module.ring();
    for (std::size_t i = 1; i < s.members_.size() && static_cast<int>(s.basis_.size()) < s.rank_; ++i) {
        s.basis_.push_back(module.decode(s.members_[i]));
        if (!extends_to_basis(ring, s.basis_)) s.basis_.pop_back();
    }
    if (static_cast<int>(s.basis_.size()) != s.rank_) throw std::logic_error("frame does not span a free-cofree summand");
    s.finish();
    return s;
}

bool Summand::contains(std::uint64_t code) const { return std::binary_search(members_.begin(), members_.end(), code); }

bool Summand::contains(const FreeModule& module, const Summand& other) const {
    if (other.rank_ > rank_) return false;
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(module.encode(v)); });
}

const std::vector<std::uint64_t>& canonical_fingerprint(const Summand& s) { return s.fingerprint(); }

// ------------------------------------------------- reference freeness tests

namespace {

/// Closure of `base` under adding R-multiples of each vector in `extra`.
std::vector<std::uint64_t> sum_with(const FreeModule& module, const std::vector<std::uint64_t>& base,
                                    std::span<const Vec> extra) {
    std::vector<std::uint64_t> current = base;
    const Ring& ring = *module.ring();
    for (const auto& v : extra) {
        std::vector<Vec> multiples;
        for (Elem c = 0; c < ring.size(); ++c) multiples.push_back(module.scale(c, v));
        std::vector<std::uint64_t> next;
        next.reserve(current.size() * ring.size());
        for (const auto code : current) {
            const Vec x = module.decode(code);
            for (const auto& m : multiples) next.push_back(module.encode(module.add(x, m)));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = std::move(next);
    }
    return current;
}

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

}  // namespace

namespace {

std::optional<int> quotient_rank_of_members(const FreeModule& module, const std::vector<std::uint64_t>& big,
                                            const std::vector<std::uint64_t>& small, const Budget& budget) {
    if (big.size() % small.size() != 0) return std::nullopt;
    const std::uint64_t cosets = big.size() / small.size();
    int r = 0;
    std::uint64_t power = 1;
    while (power < cosets) {
        power *= module.ring()->size();
        ++r;
    }
    if (power != cosets) return std::nullopt;
    if (r == 0) return 0;

    // Coset representatives: the least member of each coset.
    std::vector<Vec> inner_vectors;
    for (const auto code : small) inner_vectors.push_back(module.decode(code));
    std::vector<char> assigned(big.size(), 0);
    std::vector<Vec> reps;
    for (std::size_t i = 0; i < big.size(); ++i) {
        if (assigned[i]) continue;
        const Vec w = module.decode(big[i]);
        for (const auto& v : inner_vectors) {
            const auto pos = std::lower_bound(big.begin(), big.end(), module.encode(module.add(w, v))) - big.begin();
            assigned[static_cast<std::size_t>(pos)] = 1;
        }
        if (i != 0) reps.push_back(w);
    }
    check_budget(budget, binomial(reps.size(), static_cast<std::size_t>(r)), "generator search in quotient_free_rank");

    std::vector<std::size_t> pick(static_cast<std::size_t>(r));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<Vec> chosen;
        for (const auto idx : pick) chosen.push_back(reps[idx]);
        if (sum_with(module, small, chosen).size() == big.size()) return r;
        int i = r - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == reps.size() - static_cast<std::size_t>(r - i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> quotient_free_rank(const FreeModule& module, const Summand& outer, const Summand& inner,
                                      const Budget& budget) {
    for (const auto code : inner.fingerprint())
        if (!outer.contains(code)) throw std::invalid_argument("quotient_free_rank: inner summand not contained in outer");
    return quotient_rank_of_members(module, outer.fingerprint(), inner.fingerprint(), budget);
}

std::optional<Summand> span_summand(const FreeModule& module, const std::vector<Vec>& vectors, const Budget& budget) {
    if (vectors.empty()) return Summand::zero(module);
    const BigInt expected = ipow(BigInt(module.ring()->size()), static_cast<unsigned>(vectors.size()));
    check_budget(budget, expected, "span enumeration");
    check_budget(budget, module.size(), "ambient module enumeration");
    auto members = span_members(module, vectors);
    if (BigInt(members.size()) != expected) return std::nullopt;
    std::vector<std::uint64_t> all(module.size());
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    const auto r = quotient_rank_of_members(module, all, members, budget);
    if (!r || *r != module.rank() - static_cast<int>(vectors.size())) return std::nullopt;
    return Summand::from_frame(module, vectors, std::move(members));
}

std::optional<Matrix> complete_to_basis(const FreeModule& module, const std::vector<Vec>& partial) {
    const Ring& ring = *module.ring();
    if (!extends_to_basis(ring, partial)) return std::nullopt;
    std::vector<Vec> columns = partial;
    for (std::uint64_t code = 1; code < module.size() && static_cast<int>(columns.size()) < module.rank(); ++code) {
        columns.push_back(module.decode(code));
        if (!extends_to_basis(ring, columns)) columns.pop_back();
    }
    return Matrix::from_columns(module.ring(), columns);
}

}  // namespace titsring
