#include <gtest/gtest.h>

#include <json.hpp>

#include "titsring/serialize.hpp"
#include "titsring/verify.hpp"

using namespace titsring;

TEST(RankTableCsv, HeaderAndRows) {
    const auto tables = table_generate({RingSpec::parse("Z/4"), RingSpec::parse("Z/6")}, 3);
    EXPECT_EQ(rank_table_csv(tables), "n,Z/4,Z/6\n1,1,1\n2,5,11\n3,113,911\n");
}

TEST(RankTableJson, ValuesAreDecimalStrings) {
    const auto tables = table_generate({RingSpec::parse("Z/10")}, 6);
    const auto doc = nlohmann::json::parse(rank_table_json(tables));
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["tables"][0]["ring"], "Z/10");
    EXPECT_EQ(doc["tables"][0]["ranks"]["6"], "40378418645294393");
}

TEST(RankTableText, AlignsColumns) {
    const auto text = rank_table_text(table_generate({RingSpec::parse("F2")}, 4));
    EXPECT_NE(text.find(" 4  64"), std::string::npos) << text;
}

TEST(Renderings, AreByteStable) {
    const auto spec = RingSpec::parse("Z/4");
    const auto a = build_tits_complex(spec, 3);
    const auto b = build_tits_complex(spec, 3);
    EXPECT_EQ(complex_json(a), complex_json(b));
    EXPECT_EQ(complex_text(a), complex_text(b));
    const HomologyReport ra{"Z/4", 3, 0, reduced_homology(chain_complex(a.topology()), 1)};
    const HomologyReport rb{"Z/4", 3, 0, reduced_homology(chain_complex(b.topology()), 4)};
    EXPECT_EQ(homology_json(ra), homology_json(rb));
    EXPECT_EQ(homology_text(ra), homology_text(rb));
}

TEST(Renderings, HomologyJsonSchema) {
    const auto c = build_filtration(RingSpec::parse("Z/4"), 4, 2);
    const HomologyReport report{"Z/4", 4, 2, reduced_homology(chain_complex(c.topology()))};
    const auto doc = nlohmann::json::parse(homology_json(report));
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["filtration"], 2);
    EXPECT_EQ(doc["degrees"][1]["betti"], 2681);
    EXPECT_TRUE(doc["degrees"][1]["torsion"].empty());
}

TEST(Renderings, ComplexJsonListsVerticesAndSimplices) {
    const auto c = build_tits_complex(RingSpec::parse("F2"), 3);
    const auto doc = nlohmann::json::parse(complex_json(c));
    EXPECT_EQ(doc["vertices"].size(), 14U);
    EXPECT_EQ(doc["simplices"][1].size(), 21U);
    EXPECT_EQ(doc["vertices"][0]["basis"][0], c.module().format(c.vertex(0).basis()[0]));
}

TEST(Renderings, SummandsJsonCountsMatch) {
    const auto spec = RingSpec::parse("Z/6");
    const FreeModule module(make_ring(spec), 2);
    const auto doc = nlohmann::json::parse(summands_json(module, enumerate_grassmannian(spec, 2, 1)));
    EXPECT_EQ(doc["count"], 12);
    EXPECT_EQ(doc["summands"].size(), 12U);
}

TEST(Verification, FastTierPassesAndIsStable) {
    const auto a = run_verification({});
    EXPECT_TRUE(a.passed()) << a.to_json();
    EXPECT_EQ(a.to_json(), run_verification({}).to_json());
    const auto doc = nlohmann::json::parse(a.to_json());
    EXPECT_EQ(doc["tier"], "fast");
    EXPECT_EQ(doc["passed"], true);
}

TEST(Verification, FullTierPasses) {
    VerifyOptions options;
    options.tier = "full";
    options.jobs = 2;
    const auto report = run_verification(options);
    EXPECT_TRUE(report.passed()) << report.to_json();
    EXPECT_GT(report.checks.size(), 15U);
}

TEST(Verification, CorruptedBoundaryFailsWithDiagnostic) {
    VerifyOptions options;
    options.corrupt_boundary = true;
    const auto report = run_verification(options);
    EXPECT_FALSE(report.passed());
    bool found = false;
    for (const auto& c : report.checks)
        if (c.id == "boundary") {
            found = true;
            EXPECT_EQ(c.status, CheckStatus::Fail);
            EXPECT_NE(c.detail.find("d*d != 0"), std::string::npos);
        }
    EXPECT_TRUE(found);
}

TEST(Verification, TinyBudgetSkipsInsteadOfFailing) {
    VerifyOptions options;
    options.budget = Budget{10};
    const auto report = run_verification(options);
    std::size_t skipped = 0;
    for (const auto& c : report.checks) skipped += c.status == CheckStatus::Skipped;
    EXPECT_GT(skipped, 0U);
    const auto doc = nlohmann::json::parse(report.to_json());
    EXPECT_NE(doc.dump().find("SKIPPED"), std::string::npos);
}

TEST(Verification, UnknownTierIsRejected) {
    VerifyOptions options;
    options.tier = "medium";
    EXPECT_THROW(run_verification(options), std::invalid_argument);
}

TEST(StructureChecks, DetectImpurity) {
    SimplicialComplex c;
    c.simplices_by_dim = {{{0}, {1}, {2}}, {{0, 1}}};
    EXPECT_FALSE(is_pure(c));
    c.simplices_by_dim[1].push_back({1, 2});
    EXPECT_TRUE(is_pure(c));
}
