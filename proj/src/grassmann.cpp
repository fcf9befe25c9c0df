#include "titsring/grassmann.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_map>

namespace titsring {

// ---------------------------------------------------------------- FlagType

FlagType FlagType::parse(std::string_view text) {
    FlagType type;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || value < 1)
            throw ParseError("invalid flag type '" + std::string(text) + "': parts must be positive integers");
        type.parts.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return type;
}

int FlagType::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<int> FlagType::ranks() const {
    std::vector<int> out;
    int sum = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) out.push_back(sum += parts[i]);
    return out;
}

std::string FlagType::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + std::to_string(parts[i]);
    return out;
}

// ------------------------------------------------------------ SummandPoset

namespace {

struct CodesHash {
    std::size_t operator()(const std::vector<std::uint64_t>& codes) const { return hash_codes(codes); }
};

/// Members of V + Rw, given the sorted members of V.
std::vector<std::uint64_t> extend_members(const FreeModule& module, const std::vector<std::uint64_t>& base,
                                          const Vec& w) {
    const Ring& ring = *module.ring();
    std::vector<Vec> multiples;
    for (Elem c = 0; c < ring.size(); ++c) multiples.push_back(module.scale(c, w));
    std::vector<std::uint64_t> out;
    out.reserve(base.size() * ring.size());
    for (const auto code : base) {
        const Vec x = module.decode(code);
        for (const auto& m : multiples) out.push_back(module.encode(module.add(x, m)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Every w in the span of `complement` (nonzero coefficient tuples).
std::vector<Vec> complement_vectors(const FreeModule& module, const std::vector<Vec>& complement) {
    const Ring& ring = *module.ring();
    std::vector<Vec> out;
    std::vector<Elem> coeff(complement.size(), 0);
    while (true) {
        std::size_t i = coeff.size();
        while (i > 0 && coeff[i - 1] + 1 == ring.size()) coeff[--i] = 0;
        if (i == 0) break;
        ++coeff[i - 1];
        Vec w = module.zero();
        for (std::size_t j = 0; j < complement.size(); ++j)
            if (coeff[j] != 0) w = module.add(w, module.scale(coeff[j], complement[j]));
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

SummandPoset SummandPoset::build(RingPtr ring, int n, int max_rank, const Budget& budget) {
    if (n < 1) throw std::invalid_argument("ambient rank must be positive");
    if (max_rank < 0 || max_rank > n) throw std::invalid_argument("max_rank out of range [0, n]");
    SummandPoset poset;
    poset.module_ = FreeModule(ring, n);
    poset.max_rank_ = max_rank;
    const FreeModule& module = poset.module_;
    const RingSpec& spec = ring->spec();

    BigInt total = 0;
    for (int k = 0; k <= max_rank; ++k) total += grassmannian_size_formula(spec, n, k);
    check_budget(budget, total, "summands of rank <= " + std::to_string(max_rank) + " in R^" + std::to_string(n));

    poset.levels_.push_back({Summand::zero(module)});
    poset.covers_.emplace_back();
    for (int k = 1; k <= max_rank; ++k) {
        const auto& below = poset.levels_.back();
        check_budget(budget,
                     BigInt(below.size()) * ipow(BigInt(ring->size()), static_cast<unsigned>(n - k + 1)),
                     "candidate vectors for rank " + std::to_string(k) + " summands");
        std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, CodesHash> index;
        std::vector<Summand> found;
        std::vector<std::vector<std::uint32_t>> covers(below.size());
        for (std::size_t i = 0; i < below.size(); ++i) {
            const Summand& v = below[i];
            const auto basis_matrix = complete_to_basis(module, v.basis());
            const auto all_columns = basis_matrix->columns();
            const std::vector<Vec> complement(all_columns.begin() + (k - 1), all_columns.end());
            std::vector<std::uint32_t> local;
            for (const Vec& w : complement_vectors(module, complement)) {
                const auto code = module.encode(w);
                if (std::any_of(local.begin(), local.end(), [&](std::uint32_t j) { return found[j].contains(code); }))
                    continue;
                std::vector<Vec> frame = v.basis();
                frame.push_back(w);
                if (!extends_to_basis(*ring, frame)) continue;
                auto members = extend_members(module, v.fingerprint(), w);
                const auto it = index.find(members);
                std::uint32_t id;
                if (it != index.end()) {
                    id = it->second;
                } else {
                    id = static_cast<std::uint32_t>(found.size());
                    index.emplace(members, id);
                    found.push_back(Summand::from_frame(module, frame, std::move(members)));
                }
                local.push_back(id);
            }
            std::sort(local.begin(), local.end());
            covers[i] = std::move(local);
        }
        // Sort the new level by fingerprint and renumber the covers.
        std::vector<std::uint32_t> order(found.size());
        std::iota(order.begin(), order.end(), 0U);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return found[a] < found[b]; });
        std::vector<std::uint32_t> rank_of(found.size());
        for (std::uint32_t pos = 0; pos < order.size(); ++pos) rank_of[order[pos]] = pos;
        std::vector<Summand> sorted;
        sorted.reserve(found.size());
        for (const auto id : order) sorted.push_back(std::move(found[id]));
        for (auto& list : covers) {
            for (auto& id : list) id = rank_of[id];
            std::sort(list.begin(), list.end());
        }
        poset.covers_.back() = std::move(covers);
        poset.covers_.emplace_back();
        poset.levels_.push_back(std::move(sorted));
    }
    poset.covers_.back().assign(poset.levels_.back().size(), {});

    poset.offsets_.push_back(0);
    for (const auto& level : poset.levels_) poset.offsets_.push_back(poset.offsets_.back() + level.size());
    const std::size_t total_count = poset.offsets_.back();
    poset.words_ = (total_count + 63) / 64;
    poset.up_.assign(total_count * poset.words_, 0);
    for (int k = max_rank - 1; k >= 0; --k) {
        for (std::size_t i = 0; i < poset.levels_[static_cast<std::size_t>(k)].size(); ++i) {
            const std::size_t v = poset.global_index(k, i);
            std::uint64_t* row = &poset.up_[v * poset.words_];
            for (const auto j : poset.covers(k, i)) {
                const std::size_t w = poset.global_index(k + 1, j);
                row[w / 64] |= std::uint64_t{1} << (w % 64);
                const std::uint64_t* above = &poset.up_[w * poset.words_];
                for (std::size_t word = 0; word < poset.words_; ++word) row[word] |= above[word];
            }
        }
    }
    return poset;
}

const Summand& SummandPoset::at(std::size_t global) const {
    const int k = rank_of(global);
    return levels_[static_cast<std::size_t>(k)][global - offsets_[static_cast<std::size_t>(k)]];
}

int SummandPoset::rank_of(std::size_t global) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

std::vector<Summand> enumerate_grassmannian(const RingSpec& spec, int n, int k, const Budget& budget) {
    if (k < 0 || k > n) throw std::invalid_argument("Grassmannian rank k must satisfy 0 <= k <= n");
    auto poset = SummandPoset::build(make_ring(spec), n, k, budget);
    return poset.level(k);
}

// ---------------------------------------------------------------- counting

BigInt gaussian_binomial(int n, int k, const BigInt& q) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("gaussian_binomial requires 0 <= k <= n");
    if (q < 2) throw std::invalid_argument("gaussian_binomial requires q >= 2");
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= ipow(q, static_cast<unsigned>(n - i)) - 1;
        den *= ipow(q, static_cast<unsigned>(i + 1)) - 1;
    }
    return num / den;
}

BigInt grassmannian_size_formula(const RingSpec& spec, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("Grassmannian rank k must satisfy 0 <= k <= n");
    const auto shape = radical_shape(spec);
    BigInt out = ipow(shape.radical_size, static_cast<unsigned>(k * (n - k)));
    for (const auto q : shape.residue_field_orders) out *= gaussian_binomial(n, k, q);
    return out;
}

BigInt gl_order(const RingSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("gl_order requires n >= 0");
    const auto shape = radical_shape(spec);
    BigInt out = ipow(shape.radical_size, static_cast<unsigned>(n * n));
    for (const auto q : shape.residue_field_orders) {
        const BigInt qn = ipow(BigInt(q), static_cast<unsigned>(n));
        for (int i = 0; i < n; ++i) out *= qn - ipow(BigInt(q), static_cast<unsigned>(i));
    }
    return out;
}

BigInt flag_count_formula(const RingSpec& spec, const FlagType& type) {
    if (type.parts.empty()) throw std::invalid_argument("flag type must have at least one part");
    BigInt stabilizer = 1;
    int off_diagonal = 0;
    int seen = 0;
    for (const int part : type.parts) {
        if (part < 1) throw std::invalid_argument("flag type parts must be positive");
        stabilizer *= gl_order(spec, part);
        off_diagonal += seen * part;
        seen += part;
    }
    stabilizer *= ipow(BigInt(spec.cardinality()), static_cast<unsigned>(off_diagonal));
    return gl_order(spec, type.n()) / stabilizer;
}

std::vector<Flag> enumerate_good_flags(const RingSpec& spec, const FlagType& type, const Budget& budget) {
    const int n = type.n();
    if (type.parts.empty() || n < 1) throw std::invalid_argument("flag type must be a composition of n >= 1");
    const auto ranks = type.ranks();
    if (ranks.empty()) return {Flag{{}, type}};
    check_budget(budget, flag_count_formula(spec, type), "flags of type (" + type.to_string() + ")");
    const auto poset = SummandPoset::build(make_ring(spec), n, ranks.back(), budget);

    std::vector<Flag> out;
    std::vector<std::size_t> chain;
    const auto extend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == ranks.size()) {
            Flag flag{{}, type};
            for (const auto v : chain) flag.summands.push_back(poset.at(v));
            out.push_back(std::move(flag));
            return;
        }
        const int k = ranks[depth];
        for (std::size_t i = 0; i < poset.level(k).size(); ++i) {
            const std::size_t w = poset.global_index(k, i);
            if (!chain.empty() && !poset.less(chain.back(), w)) continue;
            chain.push_back(w);
            self(self, depth + 1);
            chain.pop_back();
        }
    };
    extend(extend, 0);
    return out;
}

}  // namespace titsring
