#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "support.hpp"
#include "titsring/ring.hpp"

using namespace titsring;
namespace ts = titsring::testing_support;

namespace {

// Independent arithmetic on payloads: integers mod m, truncated polynomial
// convolution, and componentwise products.
std::vector<std::uint64_t> model(const RingSpec& spec, const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b, bool multiply) {
    switch (spec.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: {
            const auto m = spec.modulus();
            return {multiply ? a[0] * b[0] % m : (a[0] + b[0]) % m};
        }
        case RingKind::TruncatedPoly: {
            const auto p = spec.modulus();
            std::vector<std::uint64_t> out(spec.degree(), 0);
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (!multiply) {
                    out[i] = (a[i] + b[i]) % p;
                    continue;
                }
                for (std::size_t j = 0; j <= i; ++j) out[i] = (out[i] + a[j] * b[i - j]) % p;
            }
            return out;
        }
        case RingKind::Product: {
            std::vector<std::uint64_t> out;
            for (std::size_t f = 0; f < spec.factors().size(); ++f) {
                const Ring factor(spec.factors()[f]);
                const auto pa = factor.payload(static_cast<Elem>(a[f]));
                const auto pb = factor.payload(static_cast<Elem>(b[f]));
                const auto want = model(spec.factors()[f], pa, pb, multiply);
                for (Elem x = 0; x < factor.size(); ++x)
                    if (factor.payload(x) == want) out.push_back(x);
            }
            return out;
        }
    }
    return {};
}

}  // namespace

TEST(RingSpecParse, RoundTripsCanonicalSpellings) {
    for (const auto* text : {"Z/4", "Z/10", "F2", "F7", "F2[e]^3", "Z/2xZ/3", "Z/4xF3xF2[e]^2"}) {
        const auto spec = RingSpec::parse(text);
        EXPECT_EQ(RingSpec::parse(spec.to_string()), spec) << text;
    }
}

TEST(RingSpecParse, BareDualNumbersHaveDegreeTwo) {
    const auto spec = RingSpec::parse("F2[e]");
    EXPECT_EQ(spec.kind(), RingKind::TruncatedPoly);
    EXPECT_EQ(spec.degree(), 2U);
    EXPECT_EQ(spec.cardinality(), 4U);
}

TEST(RingSpecParse, NestedProductsFlatten) {
    const auto a = RingSpec::product({RingSpec::parse("Z/2xZ/3"), RingSpec::parse("F5")});
    EXPECT_EQ(a.factors().size(), 3U);
    EXPECT_EQ(a.cardinality(), 30U);
    EXPECT_EQ(RingSpec::product({RingSpec::parse("Z/9")}), RingSpec::parse("Z/9"));
}

TEST(RingSpecParse, RejectsMalformedSpecsNamingThem) {
    for (const auto* text : {"", "Z/", "Z/q", "Z/1", "F4", "F2[x]", "Q", "Z/4x", "F2[e]^0"}) {
        try {
            RingSpec::parse(text);
            ADD_FAILURE() << "accepted '" << text << "'";
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find(std::string("'") + text + "'"), std::string::npos) << e.what();
        }
    }
}

TEST(RingArithmetic, AgreesWithPayloadModelOnAllPairs) {
    for (const auto* text : ts::sample_rings()) {
        const auto spec = RingSpec::parse(text);
        const auto ring = make_ring(spec);
        for (Elem a = 0; a < ring->size(); ++a)
            for (Elem b = 0; b < ring->size(); ++b) {
                ASSERT_EQ(ring->payload(ring->mul(a, b)), model(spec, ring->payload(a), ring->payload(b), true))
                    << text << " " << a << "*" << b;
                ASSERT_EQ(ring->payload(ring->add(a, b)), model(spec, ring->payload(a), ring->payload(b), false))
                    << text << " " << a << "+" << b;
            }
    }
}

TEST(RingArithmetic, RingAxiomsHoldOnRandomTriples) {
    for (const auto* text : ts::sample_rings()) {
        const auto ring = make_ring(RingSpec::parse(text));
        EXPECT_EQ(ring->payload(ring->zero()), model(ring->spec(), ring->payload(0), ring->payload(0), false));
        for (int trial = 0; trial < 300; ++trial) {
            const auto a = static_cast<Elem>(ts::uniform(ring->size()));
            const auto b = static_cast<Elem>(ts::uniform(ring->size()));
            const auto c = static_cast<Elem>(ts::uniform(ring->size()));
            ASSERT_EQ(ring->mul(a, ring->add(b, c)), ring->add(ring->mul(a, b), ring->mul(a, c))) << text;
            ASSERT_EQ(ring->mul(ring->mul(a, b), c), ring->mul(a, ring->mul(b, c))) << text;
            ASSERT_EQ(ring->mul(a, b), ring->mul(b, a)) << text;
            ASSERT_EQ(ring->add(a, ring->neg(a)), ring->zero()) << text;
            ASSERT_EQ(ring->mul(a, ring->one()), a) << text;
            ASSERT_EQ(ring->sub(ring->add(a, b), b), a) << text;
        }
    }
}

TEST(RingArithmetic, InversesMatchExhaustiveSearch) {
    for (const auto* text : ts::sample_rings()) {
        const auto ring = make_ring(RingSpec::parse(text));
        std::size_t units = 0;
        for (Elem a = 0; a < ring->size(); ++a) {
            std::optional<Elem> found;
            for (Elem b = 0; b < ring->size() && !found; ++b)
                if (ring->mul(a, b) == ring->one()) found = b;
            ASSERT_EQ(ring->inverse(a), found) << text << " " << a;
            units += found.has_value();
        }
        EXPECT_EQ(ring->units().size(), units) << text;
    }
}

TEST(RingArithmetic, ModularUnitsCountIsEulerPhi) {
    for (std::uint64_t m = 2; m <= 60; ++m) {
        const auto ring = make_ring(RingSpec::modular(m));
        std::size_t phi = 0;
        for (std::uint64_t a = 1; a <= m; ++a) phi += std::gcd(a, m) == 1;
        EXPECT_EQ(ring->units().size(), phi) << m;
    }
}

TEST(RingArithmetic, FromIntegerReducesSignedValues) {
    const auto ring = make_ring(RingSpec::parse("Z/6"));
    EXPECT_EQ(ring->from_integer(-1), 5U);
    EXPECT_EQ(ring->from_integer(13), 1U);
    const auto dual = make_ring(RingSpec::parse("F3[e]"));
    EXPECT_EQ(dual->from_integer(4), dual->one());
}

TEST(RingElementApi, MixingRingsThrows) {
    const RingElement a(make_ring(RingSpec::parse("Z/4")), 1);
    const RingElement b(make_ring(RingSpec::parse("Z/6")), 1);
    EXPECT_THROW(a + b, SpecMismatch);
    EXPECT_EQ(arithmetic(a, a, ArithOp::Mul).index(), 1U);
    EXPECT_EQ(arithmetic(a, a, ArithOp::Add).index(), 2U);
    EXPECT_FALSE(unit_inverse(RingElement(a.ring(), 2)).has_value());
}

TEST(RingEnumeration, CanonicalOrderAndBudget) {
    const auto elements = enumerate_elements(RingSpec::parse("Z/2xZ/3"));
    ASSERT_EQ(elements.size(), 6U);
    for (std::size_t i = 0; i < elements.size(); ++i) EXPECT_EQ(elements[i].index(), i);
    EXPECT_THROW(enumerate_elements(RingSpec::parse("Z/1000"), Budget{100}), BudgetExceeded);
}

TEST(Radical, IsTheSetOfElementsKilledInEveryResidueField) {
    for (const auto* text : ts::sample_rings()) {
        const auto spec = RingSpec::parse(text);
        const auto ring = make_ring(spec);
        std::set<Elem> oracle;
        for (Elem a = 0; a < ring->size(); ++a) {
            bool killed = true;
            for (std::size_t i = 0; i < ring->residue_primes().size(); ++i) killed = killed && ring->residue(i, a) == 0;
            if (killed) oracle.insert(a);
        }
        const auto data = radical_data(spec);
        std::set<Elem> got;
        for (const auto& e : data.elements) got.insert(e.index());
        EXPECT_EQ(got, oracle) << text;
        EXPECT_EQ(radical_shape(spec).radical_size, BigInt(oracle.size())) << text;
        EXPECT_EQ(radical_shape(spec).residue_field_orders, data.residue_field_orders) << text;
    }
}

TEST(Radical, LocalRingsHaveRadicalEqualToNonUnits) {
    for (const auto* text : {"Z/4", "Z/8", "Z/9", "F2[e]^3", "F3[e]"}) {
        const auto ring = make_ring(RingSpec::parse(text));
        const auto data = radical_data(ring->spec());
        EXPECT_EQ(data.elements.size() + ring->units().size(), ring->size()) << text;
    }
}

TEST(PrimeHelpers, DivisorsAndPrimality) {
    EXPECT_EQ(prime_divisors(360), (std::vector<std::uint64_t>{2, 3, 5}));
    EXPECT_EQ(prime_divisors(97), (std::vector<std::uint64_t>{97}));
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
}
