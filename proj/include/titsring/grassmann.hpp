#pragma once

// Grassmannians of free and cofree summands, good flags, and the closed
// counting formulas that go with them.

#include <string>
#include <string_view>
#include <vector>

#include "titsring/linalg.hpp"

namespace titsring {

/// Composition (l_1, ..., l_{k+1}) of n with positive parts.
struct FlagType {
    std::vector<int> parts;

    /// Comma separated parts, e.g. "1,1,2".
    static FlagType parse(std::string_view text);
    static FlagType complete(int n) { return FlagType{std::vector<int>(static_cast<std::size_t>(n), 1)}; }

    int n() const;
    /// Partial sums l_1, l_1+l_2, ... excluding the final n.
    std::vector<int> ranks() const;
    std::string to_string() const;
};

struct Flag {
    std::vector<Summand> summands;  ///< strictly increasing in the cofree order
    FlagType type;
};

/// Summands of R^n of rank 0..max_rank, with the covering relation of the
/// cofree order and its transitive closure.
class SummandPoset {
public:
    static SummandPoset build(RingPtr ring, int n, int max_rank, const Budget& budget = {});

    const FreeModule& module() const { return module_; }
    int max_rank() const { return max_rank_; }

    /// Rank-k summands sorted by fingerprint.
    const std::vector<Summand>& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
    /// Indices into level(k+1) of the summands W with V = level(k)[i] < W.
    const std::vector<std::uint32_t>& covers(int k, std::size_t i) const {
        return covers_[static_cast<std::size_t>(k)][i];
    }

    /// Position of level(k)[i] in the rank-then-fingerprint order of all levels.
    std::size_t global_index(int k, std::size_t i) const { return offsets_[static_cast<std::size_t>(k)] + i; }
    std::size_t size() const { return offsets_.back(); }
    const Summand& at(std::size_t global) const;
    int rank_of(std::size_t global) const;

    /// V < W in the cofree order (V a cofree summand of W, V != W).
    bool less(std::size_t v, std::size_t w) const {
        return (up_[v * words_ + w / 64] >> (w % 64)) & 1U;
    }
    /// Calls f(w) for every w with v < w, in increasing order.
    template <class F>
    void for_each_above(std::size_t v, F&& f) const {
        const std::uint64_t* row = &up_[v * words_];
        for (std::size_t word = 0; word < words_; ++word)
            for (std::uint64_t bits = row[word]; bits != 0; bits &= bits - 1)
                f(word * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
    }

private:
    FreeModule module_{nullptr, 0};
    int max_rank_ = 0;
    std::vector<std::vector<Summand>> levels_;
    std::vector<std::vector<std::vector<std::uint32_t>>> covers_;
    std::vector<std::size_t> offsets_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> up_;
};

std::vector<Summand> enumerate_grassmannian(const RingSpec& spec, int n, int k, const Budget& budget = {});

BigInt gaussian_binomial(int n, int k, const BigInt& q);
BigInt grassmannian_size_formula(const RingSpec& spec, int n, int k);
BigInt gl_order(const RingSpec& spec, int n);
/// Number of good flags of the given type: |GL_n| divided by the order of
/// the block upper triangular stabilizer of the standard flag.
BigInt flag_count_formula(const RingSpec& spec, const FlagType& type);

/// All good flags of the given type in R^n, ordered by their summand
/// fingerprints.  Type (n) yields the single empty flag.
std::vector<Flag> enumerate_good_flags(const RingSpec& spec, const FlagType& type, const Budget& budget = {});

}  // namespace titsring
