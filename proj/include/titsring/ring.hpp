#pragma once

/**
 * Finite commutative rings with canonically encoded elements.
 *
 * Four structural kinds are supported: Z/m, F_p, F_p[x]/(x^k) and finite
 * products of those.  Every element is identified with an index in
 * [0, |R|) that is also its position in the canonical enumeration order:
 *
 *   - Z/m, F_p:        the least non-negative residue;
 *   - F_p[x]/(x^k):    sum_i c_i p^i for the coefficient tuple (c_0..c_{k-1});
 *   - R_1 x ... x R_l: mixed radix with the first factor most significant.
 *
 * Rings are immutable after construction and safe to share across threads.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "titsring/bigint.hpp"

namespace titsring {

using Elem = std::uint32_t;

enum class RingKind { Modular, PrimeField, TruncatedPoly, Product };

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SpecMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structural description of a supported finite commutative ring.
class RingSpec {
public:
    static RingSpec modular(std::uint64_t m);
    static RingSpec prime_field(std::uint64_t p);
    static RingSpec truncated_poly(std::uint64_t p, unsigned k);
    /// Nested products are flattened; a single factor collapses to itself.
    static RingSpec product(const std::vector<RingSpec>& factors);

    /// Grammar: term ('x' term)*, term := 'Z/' m | 'F' p | 'F' p '[e]' ('^' k)?
    static RingSpec parse(std::string_view text);
    std::string to_string() const;

    RingKind kind() const { return kind_; }
    std::uint64_t modulus() const { return modulus_; }  ///< m for Z/m, p otherwise
    unsigned degree() const { return degree_; }         ///< k for F_p[x]/(x^k)
    const std::vector<RingSpec>& factors() const { return factors_; }
    std::uint64_t cardinality() const { return cardinality_; }

    bool operator==(const RingSpec& other) const;

private:
    RingKind kind_ = RingKind::Modular;
    std::uint64_t modulus_ = 2;
    unsigned degree_ = 1;
    std::vector<RingSpec> factors_;
    std::uint64_t cardinality_ = 2;
};

bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Arithmetic engine for a RingSpec.  Small rings use lookup tables.
class Ring {
public:
    explicit Ring(RingSpec spec);

    const RingSpec& spec() const { return spec_; }
    std::uint32_t size() const { return size_; }

    Elem zero() const { return 0; }
    Elem one() const { return one_; }
    Elem from_integer(std::int64_t value) const;

    Elem add(Elem a, Elem b) const { return table_ ? add_[a * size_ + b] : compute_add(a, b); }
    Elem mul(Elem a, Elem b) const { return table_ ? mul_[a * size_ + b] : compute_mul(a, b); }
    Elem neg(Elem a) const { return table_ ? neg_[a] : compute_neg(a); }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    std::optional<Elem> inverse(Elem a) const;
    bool is_unit(Elem a) const { return inverse(a).has_value(); }
    std::vector<Elem> units() const;

    /// Elements whose integer multiples exhaust the additive group.
    std::vector<Elem> additive_generators() const;

    /// One entry per maximal ideal: the prime p with R/m = F_p.
    const std::vector<std::uint64_t>& residue_primes() const { return residue_primes_; }
    /// Image of a in the i-th residue field, as a residue in [0, p).
    std::uint64_t residue(std::size_t ideal, Elem a) const;

    /// Canonical payload: residue, coefficient tuple, or component tuple.
    std::vector<std::uint64_t> payload(Elem a) const;
    std::string format(Elem a) const;

private:
    Elem compute_add(Elem a, Elem b) const;
    Elem compute_mul(Elem a, Elem b) const;
    Elem compute_neg(Elem a) const;
    std::optional<Elem> compute_inverse(Elem a) const;

    std::vector<Elem> split(Elem a) const;  // product components
    Elem join(const std::vector<Elem>& parts) const;

    RingSpec spec_;
    std::uint32_t size_;
    Elem one_ = 1;
    std::vector<std::shared_ptr<const Ring>> factors_;
    std::vector<std::uint32_t> strides_;
    std::vector<std::uint64_t> residue_primes_;
    std::vector<std::pair<std::size_t, std::size_t>> residue_origin_;  // (factor, factor ideal)

    bool table_ = false;
    std::vector<Elem> add_, mul_, neg_;
    std::vector<std::int64_t> inv_;  // -1 for non-units
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(const RingSpec& spec);

/// Value-semantic element that remembers its ring.
class RingElement {
public:
    RingElement(RingPtr ring, Elem value);

    const RingPtr& ring() const { return ring_; }
    Elem index() const { return value_; }
    std::vector<std::uint64_t> payload() const { return ring_->payload(value_); }
    std::string to_string() const { return ring_->format(value_); }

    RingElement operator+(const RingElement& other) const;
    RingElement operator-(const RingElement& other) const;
    RingElement operator*(const RingElement& other) const;
    RingElement operator-() const { return {ring_, ring_->neg(value_)}; }

    bool operator==(const RingElement& other) const;

private:
    const Ring& checked(const RingElement& other) const;

    RingPtr ring_;
    Elem value_;
};

enum class ArithOp { Add, Sub, Mul, Neg };

RingElement arithmetic(const RingElement& a, const RingElement& b, ArithOp op);
std::optional<RingElement> unit_inverse(const RingElement& a);

/// All elements in canonical order; refuses rings above the budget.
std::vector<RingElement> enumerate_elements(const RingSpec& spec, const Budget& budget = {});

struct RadicalData {
    std::vector<RingElement> generators;
    std::vector<RingElement> elements;  ///< sorted by index
    std::vector<std::uint64_t> residue_field_orders;
};

RadicalData radical_data(const RingSpec& spec);

/// |J| and the residue field orders without enumerating anything.
struct RadicalShape {
    BigInt radical_size;
    std::vector<std::uint64_t> residue_field_orders;
};

RadicalShape radical_shape(const RingSpec& spec);

}  // namespace titsring
