#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "support.hpp"
#include "titsring/steinberg.hpp"

using namespace titsring;
namespace ts = titsring::testing_support;

namespace {

Matrix random_invertible(const RingPtr& ring, int n) {
    while (true) {
        auto g = ts::random_matrix(ring, n, n);
        if (is_invertible(g)) return g;
    }
}

std::size_t vertex_of(const TitsComplex& c, const std::vector<Vec>& basis) {
    return c.find_vertex(span_members(c.module(), basis)).value();
}

// Every invertible 2 x 2 matrix over R.
std::vector<Matrix> all_gl2(const RingPtr& ring) {
    std::vector<Matrix> out;
    const auto q = ring->size();
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c)
                for (Elem d = 0; d < q; ++d) {
                    Matrix m(ring, 2, 2);
                    m.at(0, 0) = a, m.at(0, 1) = b, m.at(1, 0) = c, m.at(1, 1) = d;
                    if (is_invertible(m)) out.push_back(m);
                }
    return out;
}

}  // namespace

TEST(SteinbergRanks, SmallValues) {
    const auto d = steinberg_ranks(RingSpec::parse("Z/4"), 4);
    EXPECT_EQ(d, (std::vector<BigInt>{1, 1, 5, 113, 10879}));
    EXPECT_EQ(steinberg_rank(RingSpec::parse("F2"), 4), 64);
    EXPECT_EQ(steinberg_rank_field(3, 3), 27);
}

TEST(SteinbergRanks, FieldsFollowThePowerLaw) {
    for (const std::uint64_t p : {2, 3, 5, 7, 11, 13})
        for (int n = 0; n <= 8; ++n)
            EXPECT_EQ(steinberg_rank(RingSpec::prime_field(p), n), ipow(p, static_cast<unsigned>(n * (n - 1) / 2)))
                << p << " " << n;
}

TEST(SteinbergRanks, DependOnlyOnSizeAndResidueField) {
    const std::vector<std::pair<const char*, const char*>> twins = {
        {"Z/4", "F2[e]"}, {"Z/9", "F3[e]"}, {"Z/8", "F2[e]^3"}, {"Z/25", "F5[e]"}, {"Z/4xF3", "F2[e]xZ/3"}};
    for (const auto& [a, b] : twins)
        EXPECT_EQ(steinberg_ranks(RingSpec::parse(a), 7), steinberg_ranks(RingSpec::parse(b), 7)) << a << " " << b;
}

TEST(SteinbergRanks, MatchTopHomologyOnSmallComplexes) {
    for (const auto* text : ts::sample_rings()) {
        const auto spec = RingSpec::parse(text);
        const auto top2 = reduced_homology(chain_complex(build_tits_complex(spec, 2).topology())).betti.back();
        EXPECT_EQ(BigInt(top2), steinberg_rank(spec, 2)) << text;
    }
    for (const auto* text : {"F3", "Z/4", "Z/2xZ/2", "F2[e]"}) {
        const auto spec = RingSpec::parse(text);
        const auto h = reduced_homology(chain_complex(build_tits_complex(spec, 3).topology()));
        EXPECT_EQ(h.betti.at(0), 0U) << text;
        EXPECT_EQ(BigInt(h.betti.at(1)), steinberg_rank(spec, 3)) << text;
    }
}

TEST(RankTables, LabelsAndShape) {
    const auto tables = table_generate({RingSpec::parse("Z/4"), RingSpec::parse("F2[e]^2")}, 3);
    ASSERT_EQ(tables.size(), 2U);
    EXPECT_EQ(tables[0].label, "Z/4");
    EXPECT_EQ(tables[1].label, RingSpec::parse("F2[e]^2").to_string());
    EXPECT_EQ(tables[0].ranks, (std::vector<BigInt>{1, 5, 113}));
    EXPECT_EQ(tables[0].ranks, tables[1].ranks);
}

TEST(Apartments, RankTwoIdentityClassIsADifferenceOfLines) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 2);
    const auto a = apartment_class(c, Matrix::identity(c.ring(), 2));
    SteinbergChain expected;
    expected.coefficients[vertex_of(c, {{0, 1}})] = 1;
    expected.coefficients[vertex_of(c, {{1, 0}})] = -1;
    EXPECT_EQ(a, expected);
}

TEST(Apartments, ClassesAreCyclesWithTwoToTheNFactorialTerms) {
    for (const auto* text : {"Z/4", "Z/6", "F2[e]"}) {
        const auto c = build_tits_complex(RingSpec::parse(text), 3);
        const auto cc = chain_complex(c.topology());
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = apartment_class(c, random_invertible(c.ring(), 3));
            EXPECT_EQ(a.coefficients.size(), 6U);
            EXPECT_TRUE(chain_boundary(cc, a).empty()) << text;
        }
    }
}

TEST(Apartments, AreGlEquivariant) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 3);
    const int top = c.n() - 2;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_invertible(c.ring(), 3);
        const auto b = random_invertible(c.ring(), 3);
        const auto sp = simplex_permutation(c.topology(), c.simplex_index(), group_action(c, g));
        SteinbergChain moved;
        for (const auto& [chamber, coeff] : apartment_class(c, b).coefficients) {
            const auto [target, sign] = sp.by_dim[static_cast<std::size_t>(top)][chamber];
            moved.coefficients[target] += sign * coeff;
        }
        EXPECT_EQ(apartment_class(c, g * b), moved);
    }
}

TEST(Apartments, ChainArithmetic) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 2);
    const auto a = apartment_class(c, Matrix::identity(c.ring(), 2));
    EXPECT_TRUE((a + -a).is_zero());
    const auto dense = a.dense(c.topology().count(0));
    EXPECT_EQ(std::accumulate(dense.begin(), dense.end(), BigInt(0)), 0);
}

TEST(Apartments, ReverseUpperTriangularFlagPairsToOne) {
    for (const auto& [text, n] : std::vector<std::pair<const char*, int>>{{"Z/4", 2}, {"Z/6", 3}, {"F3", 3}}) {
        const auto c = build_tits_complex(RingSpec::parse(text), n);
        for (int trial = 0; trial < 5; ++trial) {
            const auto b = random_invertible(c.ring(), n);
            EXPECT_EQ(chamber_map(c, apartment_class(c, b), reverse_upper_triangular_flag(c, b)), 1) << text;
        }
    }
}

TEST(Apartments, ChamberMapRejectsNonChambers) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 3);
    const auto a = apartment_class(c, Matrix::identity(c.ring(), 3));
    EXPECT_THROW(chamber_map(c, a, Simplex{0}), std::invalid_argument);
}

TEST(UnitriangularPairing, SizeAndDiagonal) {
    for (const auto& [text, n] : std::vector<std::pair<const char*, int>>{{"Z/4", 2}, {"F3", 2}, {"F2", 3}, {"Z/2xZ/2", 3}}) {
        const auto c = build_tits_complex(RingSpec::parse(text), n);
        const auto p = ut_apartment_pairing(c);
        EXPECT_EQ(BigInt(p.size()), ipow(c.ring()->size(), static_cast<unsigned>(n * (n - 1) / 2)));
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) EXPECT_EQ(p[a][b] != 0, a == b) << text;
    }
    EXPECT_EQ(upper_unitriangular_matrices(make_ring(RingSpec::parse("Z/4")), 3).size(), 64U);
}

TEST(Eta, WitnessForAllNonUnitsOfZ8) {
    const auto c = build_tits_complex(RingSpec::parse("Z/8"), 2);
    const auto cc = chain_complex(c.topology());
    for (const Elem m : {2U, 4U, 6U}) {
        const auto eta = eta_class(c, m);
        EXPECT_FALSE(eta.is_zero());
        EXPECT_TRUE(chain_boundary(cc, eta).empty());
        for (const auto& a : upper_unitriangular_matrices(c.ring(), 2))
            EXPECT_EQ(chamber_map(c, eta, reverse_upper_triangular_flag(c, a)), 0);
    }
}

TEST(Eta, RejectsZeroAndUnits) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 2);
    EXPECT_THROW(eta_class(c, 0), std::invalid_argument);
    EXPECT_THROW(eta_class(c, 1), std::invalid_argument);
    EXPECT_THROW(eta_class(c, 3), std::invalid_argument);
}

TEST(ApartmentSpan, ExhaustiveOnSmallGroups) {
    for (const auto& [text, n] : std::vector<std::pair<const char*, int>>{{"F3", 2}, {"Z/8", 2}, {"F2[e]", 2}, {"F2", 3}}) {
        const auto spec = RingSpec::parse(text);
        const auto c = build_tits_complex(spec, n);
        const auto span = apartment_span_rank(c);
        EXPECT_TRUE(span.exhaustive) << text;
        EXPECT_EQ(BigInt(span.rank), steinberg_rank(spec, n)) << text;
        EXPECT_TRUE(span.generates_integrally()) << text;
    }
}

TEST(ApartmentSpan, SamplingModeSaturatesOnLargeGroups) {
    const auto spec = RingSpec::parse("Z/6");
    const auto c = build_tits_complex(spec, 3);
    const auto span = apartment_span_rank(c);
    EXPECT_FALSE(span.exhaustive);
    EXPECT_TRUE(span.saturated);
    EXPECT_EQ(BigInt(span.rank), steinberg_rank(spec, 3));
}

TEST(Orbits, MatchUnionFindOverTheWholeGroup) {
    for (const auto* text : {"F2", "F3", "F5", "Z/4", "Z/6", "Z/9", "F2[e]"}) {
        const auto spec = RingSpec::parse(text);
        const auto c = build_tits_complex(spec, 2);
        const auto points = c.vertex_count();
        std::vector<std::size_t> parent(points * points);
        std::iota(parent.begin(), parent.end(), 0U);
        const auto root = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& g : all_gl2(c.ring())) {
            const auto p = group_action(c, g);
            for (std::size_t a = 0; a < points; ++a)
                for (std::size_t b = 0; b < points; ++b) parent[root(a * points + b)] = root(p[a] * points + p[b]);
        }
        std::size_t orbits = 0;
        for (std::size_t x = 0; x < parent.size(); ++x) orbits += root(x) == x;
        const auto r = p1_orbit_and_commutant(spec);
        EXPECT_EQ(r.points, points) << text;
        EXPECT_EQ(r.orbits, orbits) << text;
        EXPECT_EQ(r.commutant_dim, orbits) << text;
    }
}

TEST(Orbits, UniserialLength) {
    EXPECT_EQ(uniserial_length(RingSpec::parse("Z/8")), 3);
    EXPECT_EQ(uniserial_length(RingSpec::parse("F5")), 1);
    EXPECT_EQ(uniserial_length(RingSpec::parse("F2[e]^3")), 3);
    EXPECT_EQ(uniserial_length(RingSpec::parse("Z/27")), 3);
    EXPECT_FALSE(uniserial_length(RingSpec::parse("Z/6")).has_value());
    EXPECT_FALSE(uniserial_length(RingSpec::parse("Z/2xZ/2")).has_value());
}
