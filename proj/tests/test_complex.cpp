#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"
#include "titsring/complex.hpp"

using namespace titsring;
namespace ts = titsring::testing_support;

namespace {

Matrix random_invertible(const RingPtr& ring, int n) {
    while (true) {
        auto g = ts::random_matrix(ring, n, n);
        if (is_invertible(g)) return g;
    }
}

std::size_t find_vertex_of_basis(const TitsComplex& c, const std::vector<Vec>& basis) {
    const auto members = span_members(c.module(), basis);
    const auto found = c.find_vertex(members);
    EXPECT_TRUE(found.has_value());
    return found.value_or(0);
}

}  // namespace

TEST(TitsComplexShape, RankTwoOverF2IsThreePoints) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 2);
    EXPECT_EQ(c.topology().f_vector(), (std::vector<std::size_t>{3}));
}

TEST(TitsComplexShape, RankThreeOverF2IsTheIncidenceGraphOfTheFanoPlane) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 3);
    EXPECT_EQ(c.topology().f_vector(), (std::vector<std::size_t>{14, 21}));
    for (const auto& edge : c.topology().simplices_by_dim[1]) {
        EXPECT_EQ(c.vertex(edge[0]).rank(), 1);
        EXPECT_EQ(c.vertex(edge[1]).rank(), 2);
    }
}

TEST(TitsComplexShape, RankOneIsEmpty) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 1);
    EXPECT_EQ(c.vertex_count(), 0U);
    EXPECT_EQ(c.topology().dimension(), -1);
}

TEST(TitsComplexShape, TopSimplicesAreCompleteFlags) {
    for (const auto* text : {"Z/4", "Z/6", "F2[e]", "Z/2xZ/2"}) {
        const auto spec = RingSpec::parse(text);
        const auto c = build_tits_complex(spec, 3);
        EXPECT_EQ(BigInt(c.topology().count(1)), flag_count_formula(spec, FlagType::complete(3))) << text;
        EXPECT_EQ(BigInt(c.vertex_count()), grassmannian_size_formula(spec, 3, 1) + grassmannian_size_formula(spec, 3, 2));
    }
}

TEST(TitsComplexShape, VerticesAreSortedByRankThenFingerprint) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 3);
    for (std::size_t i = 1; i < c.vertex_count(); ++i) EXPECT_LT(c.vertex(i - 1), c.vertex(i));
    for (std::size_t i = 0; i < c.vertex_count(); ++i) EXPECT_EQ(c.find_vertex(c.vertex(i).fingerprint()), i);
}

TEST(TitsComplexShape, InclusionAgreesWithCofreeOrder) {
    for (const auto* text : {"Z/4", "Z/6", "F2[e]", "Z/9"}) {
        const auto c = build_tits_complex(RingSpec::parse(text), 3);
        ASSERT_TRUE(c.inclusion_without_cofree().has_value()) << text;
        EXPECT_EQ(*c.inclusion_without_cofree(), 0U) << text;
    }
}

TEST(TitsComplexShape, NerveMatchesReferenceQuotientTest) {
    for (const auto* text : {"Z/4", "F2[e]", "Z/2xZ/2"}) {
        const auto c = build_tits_complex(RingSpec::parse(text), 3);
        EXPECT_EQ(nerve_by_quotient_test(c), c.topology()) << text;
    }
    const auto f = build_filtration(RingSpec::parse("F2"), 4, 2);
    EXPECT_EQ(nerve_by_quotient_test(f), f.topology());
}

TEST(Filtration, KeepsOnlyLowRankVertices) {
    const auto spec = RingSpec::parse("Z/4");
    const auto lines = build_filtration(spec, 3, 1);
    EXPECT_EQ(lines.topology().f_vector(), (std::vector<std::size_t>{28}));
    const auto f = build_filtration(spec, 4, 2);
    for (const auto& v : f.vertices()) EXPECT_LE(v.rank(), 2);
    EXPECT_EQ(f.max_rank(), 2);
    EXPECT_THROW(build_filtration(spec, 3, 3), std::invalid_argument);
    EXPECT_THROW(build_filtration(spec, 3, 0), std::invalid_argument);
}

TEST(Budget, ComplexConstructionRefusesLargeInputs) {
    EXPECT_THROW(build_tits_complex(RingSpec::parse("Z/4"), 5, Budget{1000}), BudgetExceeded);
}

TEST(LinkAndStar, LinksOfVerticesAreProjectiveLines) {
    for (const auto* text : {"F2", "Z/4", "Z/6"}) {
        const auto spec = RingSpec::parse(text);
        const auto c = build_tits_complex(spec, 3);
        const auto p1 = grassmannian_size_formula(spec, 2, 1);
        for (const std::size_t v : {std::size_t{0}, c.vertex_count() - 1}) {
            const auto ls = link_and_star(c.topology(), {static_cast<std::uint32_t>(v)});
            EXPECT_EQ(BigInt(ls.link.count(0)), p1) << text << " vertex rank " << c.vertex(v).rank();
            EXPECT_EQ(ls.link.count(1), 0U);
            EXPECT_EQ(ls.star.count(1), ls.link.count(0));
            EXPECT_EQ(ls.star.count(0), ls.link.count(0) + 1);
        }
    }
}

TEST(LinkAndStar, LinkOfAnEdgeInRankFourIsDiscrete) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 4);
    const auto& edge = c.topology().simplices_by_dim[1].front();
    const auto ls = link_and_star(c.topology(), edge);
    EXPECT_EQ(ls.link.count(0), 3U);
    EXPECT_EQ(ls.link.count(1), 0U);
}

TEST(GroupActionTest, ElementaryMatrixSwapsTwoLinesOverF2) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 2);
    Matrix e12 = Matrix::identity(c.ring(), 2);
    e12.at(0, 1) = 1;
    const auto perm = group_action(c, e12);
    std::size_t fixed = 0;
    for (std::size_t v = 0; v < perm.size(); ++v) {
        fixed += perm[v] == v;
        EXPECT_EQ(perm[perm[v]], v);
    }
    EXPECT_EQ(fixed, 1U);
    EXPECT_EQ(perm[find_vertex_of_basis(c, {{1, 0}})], find_vertex_of_basis(c, {{1, 0}}));
}

TEST(GroupActionTest, ActionMatchesImageSpansAndPreservesOrder) {
    for (const auto* text : {"Z/4", "Z/6", "F2[e]"}) {
        const auto c = build_tits_complex(RingSpec::parse(text), 3);
        for (int trial = 0; trial < 5; ++trial) {
            const auto g = random_invertible(c.ring(), 3);
            const auto perm = group_action(c, g);
            std::set<std::uint32_t> image(perm.begin(), perm.end());
            ASSERT_EQ(image.size(), c.vertex_count());
            for (std::size_t v = 0; v < c.vertex_count(); ++v) {
                std::vector<Vec> moved;
                for (const auto& b : c.vertex(v).basis()) moved.push_back(g.apply(b));
                ASSERT_EQ(perm[v], find_vertex_of_basis(c, moved));
            }
            for (std::size_t v = 0; v < c.vertex_count(); ++v)
                for (std::size_t w = 0; w < c.vertex_count(); ++w) ASSERT_EQ(c.less(v, w), c.less(perm[v], perm[w]));
        }
    }
}

TEST(GroupActionTest, SimplexPermutationIsASignedBijection) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 3);
    const auto g = random_invertible(c.ring(), 3);
    const auto sp = simplex_permutation(c.topology(), c.simplex_index(), group_action(c, g));
    ASSERT_EQ(sp.by_dim.size(), 2U);
    for (std::size_t d = 0; d < sp.by_dim.size(); ++d) {
        std::set<std::uint32_t> targets;
        for (const auto& [t, sign] : sp.by_dim[d]) {
            targets.insert(t);
            EXPECT_TRUE(sign == 1 || sign == -1);
        }
        EXPECT_EQ(targets.size(), c.topology().count(static_cast<int>(d)));
    }
}

TEST(GroupActionTest, GeneratorsIncludeElementaryAndDiagonalMatrices) {
    const auto ring = make_ring(RingSpec::parse("Z/6"));
    const auto gens = gl_generators(ring, 2);
    for (const auto& g : gens) EXPECT_TRUE(is_invertible(g));
    EXPECT_GE(gens.size(), 3U);
}

TEST(GroupActionTest, MemoizedActionMatchesDirectAction) {
    const auto c = build_tits_complex(RingSpec::parse("Z/4"), 3);
    const GroupAction action(c, gl_generators(c.ring(), 3));
    for (std::size_t g = 0; g < action.size(); ++g)
        EXPECT_EQ(action.vertex_permutation(g), group_action(c, action.generators()[g]));
}

TEST(Congruence, GeneratorsReduceToTheIdentity) {
    for (const auto& [text, gen] : std::vector<std::pair<const char*, Elem>>{{"Z/4", 2}, {"Z/8", 2}, {"Z/8", 4}, {"Z/9", 3}}) {
        const auto ring = make_ring(RingSpec::parse(text));
        const auto ideal = ideal_elements(*ring, {gen});
        const std::set<Elem> in_ideal(ideal.begin(), ideal.end());
        const auto gens = congruence_generators(ring, 2, {gen});
        ASSERT_FALSE(gens.empty());
        for (const auto& g : gens) {
            EXPECT_TRUE(is_invertible(g));
            for (int r = 0; r < 2; ++r)
                for (int col = 0; col < 2; ++col)
                    EXPECT_TRUE(in_ideal.count(ring->sub(g.at(r, col), r == col ? ring->one() : ring->zero())));
        }
    }
}

TEST(Congruence, IdealElements) {
    const auto ring = make_ring(RingSpec::parse("Z/12"));
    EXPECT_EQ(ideal_elements(*ring, {8}), (std::vector<Elem>{0, 4, 8}));
    EXPECT_EQ(ideal_elements(*ring, {4, 6}).size(), 6U);
}

TEST(Quotients, AreRingHomomorphisms) {
    const std::vector<std::pair<const char*, const char*>> cases = {
        {"Z/12", "Z/4"}, {"Z/9", "F3"}, {"F2[e]^3", "F2[e]"}, {"F3[e]", "F3"}, {"Z/2xZ/9", "Z/2xZ/3"}};
    for (const auto& [src, dst] : cases) {
        const auto q = quotient_onto(RingSpec::parse(src), RingSpec::parse(dst));
        std::set<Elem> image(q.image.begin(), q.image.end());
        EXPECT_EQ(image.size(), q.target->size()) << src;
        EXPECT_EQ(q.image[q.source->one()], q.target->one());
        for (Elem a = 0; a < q.source->size(); ++a)
            for (Elem b = 0; b < q.source->size(); ++b) {
                ASSERT_EQ(q.image[q.source->add(a, b)], q.target->add(q.image[a], q.image[b])) << src;
                ASSERT_EQ(q.image[q.source->mul(a, b)], q.target->mul(q.image[a], q.image[b])) << src;
            }
    }
    EXPECT_THROW(quotient_onto(RingSpec::parse("Z/9"), RingSpec::parse("Z/4")), std::invalid_argument);
}

TEST(Quotients, ByIdealHasTheExpectedSize) {
    const auto ring = make_ring(RingSpec::parse("Z/12"));
    const auto q = quotient_by_ideal(ring->spec(), {8});
    EXPECT_EQ(q.target->size(), 4U);
    for (Elem a = 0; a < 12; ++a) EXPECT_EQ(q.image[a], q.target->from_integer(a));
}

TEST(Reduction, FibersOverF2HaveEqualSize) {
    const auto source = build_tits_complex(RingSpec::parse("Z/4"), 2);
    const auto target = build_tits_complex(RingSpec::parse("F2"), 2);
    const auto map = reduction_map(source, target, quotient_onto(source.ring()->spec(), target.ring()->spec()));
    std::map<std::uint32_t, int> fiber;
    for (const auto v : map.vertex_map) ++fiber[v];
    ASSERT_EQ(fiber.size(), 3U);
    for (const auto& [v, size] : fiber) EXPECT_EQ(size, 2);
}

TEST(Reduction, PreservesTheCofreeOrder) {
    const auto source = build_tits_complex(RingSpec::parse("Z/4"), 3);
    const auto target = build_tits_complex(RingSpec::parse("F2"), 3);
    const auto map = reduction_map(source, target, quotient_onto(source.ring()->spec(), target.ring()->spec()));
    for (const auto& edge : source.topology().simplices_by_dim[1]) {
        const auto image = map.apply(edge);
        ASSERT_TRUE(image.has_value());
        EXPECT_TRUE(target.simplex_index().find(image->first).has_value());
    }
}

TEST(SimplicialMapApply, SignOfSortingPermutation) {
    const SimplicialMap m{{2, 0, 1}};
    const auto a = m.apply({0, 1});
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->first, (Simplex{0, 2}));
    EXPECT_EQ(a->second, -1);
    const SimplicialMap collapse{{0, 0, 1}};
    EXPECT_FALSE(collapse.apply({0, 1}).has_value());
}
