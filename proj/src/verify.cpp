#include "titsring/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace titsring {

// -------------------------------------------------------- structural checks

bool euler_identity_holds(const HomologyResult& h) {
    std::int64_t lhs = -1;
    for (std::size_t d = 0; d < h.f_vector.size(); ++d)
        lhs += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(h.f_vector[d]);
    std::int64_t rhs = -static_cast<std::int64_t>(h.betti_minus_one);
    for (std::size_t d = 0; d < h.betti.size(); ++d) rhs += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(h.betti[d]);
    return lhs == rhs;
}

bool is_pure(const SimplicialComplex& complex) {
    const auto& levels = complex.simplices_by_dim;
    for (std::size_t d = 0; d + 1 < levels.size(); ++d) {
        std::vector<char> covered(levels[d].size(), 0);
        for (const auto& s : levels[d + 1])
            for (std::size_t omit = 0; omit < s.size(); ++omit) {
                Simplex face;
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (k != omit) face.push_back(s[k]);
                const auto it = std::lower_bound(levels[d].begin(), levels[d].end(), face);
                if (it != levels[d].end() && *it == face) covered[static_cast<std::size_t>(it - levels[d].begin())] = 1;
            }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return false;
    }
    return true;
}

bool action_axioms_hold(const TitsComplex& complex, std::size_t max_pairs) {
    const int n = complex.n();
    const auto generators = gl_generators(complex.ring(), n);
    const auto identity = group_action(complex, Matrix::identity(complex.ring(), n));
    for (std::size_t v = 0; v < identity.size(); ++v)
        if (identity[v] != v) return false;
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& g : generators) {
        perms.push_back(group_action(complex, g));
        simplex_permutation(complex.topology(), complex.simplex_index(), perms.back());
    }
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < generators.size() && pairs < max_pairs; ++a)
        for (std::size_t b = 0; b < generators.size() && pairs < max_pairs; ++b, ++pairs) {
            const auto product = group_action(complex, generators[a] * generators[b]);
            for (std::size_t v = 0; v < product.size(); ++v)
                if (product[v] != perms[a][perms[b][v]]) return false;
        }
    return true;
}

StructureReport check_structure(const TitsComplex& complex, const ChainComplex& cc, const HomologyResult& h,
                                const Budget& budget) {
    StructureReport r;
    r.boundary_squares_to_zero = boundary_squares_to_zero(cc);
    r.euler_identity = euler_identity_holds(h);
    r.pure = is_pure(complex.topology());
    r.nerve_consistent = nerve_by_quotient_test(complex, budget) == complex.topology();
    r.action_axioms = action_axioms_hold(complex);
    std::ostringstream os;
    os << "d*d=0 " << r.boundary_squares_to_zero << ", euler " << r.euler_identity << ", pure " << r.pure
       << ", nerve " << r.nerve_consistent << ", action " << r.action_axioms;
    r.detail = os.str();
    return r;
}

// ------------------------------------------------------------------ report

bool VerifyReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

std::string VerifyReport::to_json(bool include_timings) const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["tier"] = tier;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        const char* status = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIPPED";
        nlohmann::ordered_json entry = {{"id", c.id}, {"name", c.name}, {"status", status}, {"detail", c.detail}};
        if (include_timings) entry["seconds"] = c.seconds;
        doc["checks"].push_back(std::move(entry));
    }
    doc["passed"] = passed();
    return doc.dump(2) + "\n";
}

// ------------------------------------------------------------------ checks

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

using Check = std::function<Outcome()>;

const char* const kTableRings[] = {"Z/4", "Z/6", "Z/8", "Z/9", "Z/10"};
const char* const kTableValues[5][6] = {
    {"1", "5", "113", "10879", "4324129", "6984271295"},
    {"1", "11", "911", "497149", "1696007149", "35372169269639"},
    {"1", "11", "1121", "978559", "7061119489", "414187232163839"},
    {"1", "11", "1171", "1149929", "10247219929", "824092678295459"},
    {"1", "17", "3473", "7649589", "174326656989", "40378418645294393"},
};

template <class T>
std::string join(const std::vector<T>& values) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
    os << ']';
    return os.str();
}

ChainComplex maybe_corrupt(ChainComplex cc, bool corrupt) {
    if (corrupt && cc.boundaries.size() > 1 && !cc.boundaries[1].columns.empty() &&
        !cc.boundaries[1].columns[0].empty())
        cc.boundaries[1].columns[0][0].second *= -1;
    return cc;
}

Outcome check_table() {
    std::vector<RingSpec> specs;
    for (const auto* r : kTableRings) specs.push_back(RingSpec::parse(r));
    const auto tables = table_generate(specs, 6);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t n = 0; n < 6; ++n) matches += tables[i].ranks[n].str() == kTableValues[i][n];
    return {matches == 30, std::to_string(matches) + "/30 entries match"};
}

Outcome check_field() {
    std::size_t ok = 0, total = 0;
    for (const std::uint64_t p : {2, 3, 5, 7})
        for (int n = 0; n <= 6; ++n, ++total) ok += steinberg_rank(RingSpec::prime_field(p), n) == steinberg_rank_field(p, n);
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " cases"};
}

Outcome check_grassmannians(const Budget& budget) {
    const std::vector<std::pair<const char*, int>> cases = {{"Z/4", 3}, {"Z/6", 3}, {"F2", 4},
                                                            {"F3", 4},  {"F2[e]", 3}, {"Z/2xZ/3", 3}};
    std::size_t ok = 0, total = 0;
    std::string bad;
    for (const auto& [ring, n_max] : cases) {
        const auto spec = RingSpec::parse(ring);
        for (int n = 1; n <= n_max; ++n) {
            const auto poset = SummandPoset::build(make_ring(spec), n, n, budget);
            for (int k = 0; k <= n; ++k, ++total) {
                if (BigInt(poset.level(k).size()) == grassmannian_size_formula(spec, n, k))
                    ++ok;
                else
                    bad += std::string(" ") + ring + ":" + std::to_string(n) + "," + std::to_string(k);
            }
        }
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " (spec,n,k) agree" + bad};
}

Outcome check_flags(const Budget& budget) {
    std::string detail;
    bool ok = true;
    for (const auto& [ring, type] : std::vector<std::pair<const char*, const char*>>{
             {"Z/4", "1,1,1"}, {"F2", "1,1,1"}, {"F2", "1,2,1"}, {"Z/4", "1,1"}}) {
        const auto spec = RingSpec::parse(ring);
        const auto t = FlagType::parse(type);
        const auto got = enumerate_good_flags(spec, t, budget).size();
        const auto want = flag_count_formula(spec, t);
        ok = ok && BigInt(got) == want;
        detail += std::string(ring) + "(" + type + ")=" + std::to_string(got) + " ";
    }
    return {ok, detail};
}

bool pairing_is_signed_identity(const std::vector<std::vector<std::int64_t>>& p) {
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            if (a == b ? (p[a][b] != 1 && p[a][b] != -1) : p[a][b] != 0) return false;
    return true;
}

Outcome check_pairing(const std::vector<std::pair<const char*, int>>& cases, const Budget& budget) {
    bool ok = true;
    std::string detail;
    for (const auto& [ring, n] : cases) {
        const auto complex = build_tits_complex(RingSpec::parse(ring), n, budget);
        const auto p = ut_apartment_pairing(complex, budget);
        const bool diag = pairing_is_signed_identity(p);
        ok = ok && diag;
        detail += std::string(ring) + " n=" + std::to_string(n) + ": " + std::to_string(p.size()) + "x" +
                  std::to_string(p.size()) + (diag ? " diagonal " : " NOT diagonal ");
    }
    return {ok, detail};
}

Outcome check_eta(const std::vector<std::tuple<const char*, int, Elem>>& cases, const Budget& budget) {
    bool ok = true;
    std::string detail;
    for (const auto& [ring, n, m] : cases) {
        const auto complex = build_tits_complex(RingSpec::parse(ring), n, budget);
        const auto eta = eta_class(complex, m);
        std::size_t nonzero = 0;
        for (const auto& a : upper_unitriangular_matrices(complex.ring(), n, budget))
            nonzero += chamber_map(complex, eta, reverse_upper_triangular_flag(complex, a)) != 0;
        const bool cycle = chain_boundary(chain_complex(complex.topology()), eta).empty();
        ok = ok && !eta.is_zero() && nonzero == 0 && cycle;
        detail += std::string(ring) + " n=" + std::to_string(n) + ": " + std::to_string(eta.coefficients.size()) +
                  " terms, " + std::to_string(nonzero) + " UT chambers nonzero; ";
    }
    return {ok, detail};
}

Outcome check_boundary(bool corrupt, const Budget& budget) {
    const auto complex = build_tits_complex(RingSpec::parse("F2"), 3, budget);
    const auto cc = maybe_corrupt(chain_complex(complex.topology()), corrupt);
    for (std::size_t d = 1; d < cc.boundaries.size(); ++d)
        if (!cc.boundaries[d - 1].multiply(cc.boundaries[d]).is_zero())
            return {false, "d*d != 0 in degree " + std::to_string(d) + " of T_3(F2)"};
    return {true, "d*d = 0 on T_3(F2)"};
}

Outcome check_homology(const char* ring, int n, const std::vector<std::size_t>& expected, unsigned jobs,
                       const Budget& budget) {
    const auto complex = build_tits_complex(RingSpec::parse(ring), n, budget);
    const auto h = reduced_homology(chain_complex(complex.topology()), jobs);
    const bool torsion_free = h.torsion.empty() || h.torsion.back().empty();
    return {h.betti == expected && torsion_free,
            std::string(ring) + " n=" + std::to_string(n) + " betti " + join(h.betti) +
                (torsion_free ? ", top torsion-free" : ", top torsion present")};
}

Outcome check_equal_betti(unsigned jobs, const Budget& budget) {
    const auto a = reduced_homology(chain_complex(build_tits_complex(RingSpec::parse("Z/4"), 3, budget).topology()), jobs);
    const auto b =
        reduced_homology(chain_complex(build_tits_complex(RingSpec::parse("F2[e]"), 3, budget).topology()), jobs);
    return {a.betti == b.betti && a.torsion == b.torsion, "Z/4 " + join(a.betti) + " vs F2[e]^2 " + join(b.betti)};
}

Outcome check_filtration(const Budget& budget) {
    const auto spec = RingSpec::parse("Z/4");
    const auto complex = build_filtration(spec, 4, 2, budget);
    const auto h = reduced_homology(chain_complex(complex.topology()));
    const auto& t = complex.topology();
    const bool connected = h.betti.at(0) == 0;
    const BigInt graph = BigInt(t.count(1)) - BigInt(t.count(0)) + 1;
    const auto d = steinberg_ranks(spec, 2);
    const BigInt recursion =
        grassmannian_size_formula(spec, 4, 2) * d[2] - (grassmannian_size_formula(spec, 4, 1) * d[1] - 1);
    const bool ok = connected && BigInt(h.betti.at(1)) == graph && graph == recursion && recursion == 2681;
    return {ok, "homology " + std::to_string(h.betti.at(1)) + ", E-V+1 " + graph.str() + ", Grassmannian side " +
                    recursion.str()};
}

Outcome check_apartments(const Budget& budget) {
    bool ok = true;
    std::string detail;
    for (const auto& [ring, n] : std::vector<std::pair<const char*, int>>{{"Z/4", 2}, {"Z/6", 2}, {"F2", 3}, {"Z/4", 3}}) {
        const auto spec = RingSpec::parse(ring);
        const auto complex = build_tits_complex(spec, n, budget);
        const auto span = apartment_span_rank(complex, budget);
        const auto betti = reduced_homology(chain_complex(complex.topology())).betti.back();
        ok = ok && span.rank == betti && span.saturated;
        detail += std::string(ring) + " n=" + std::to_string(n) + ": span " + std::to_string(span.rank) + " / " +
                  std::to_string(betti) + (span.generates_integrally() ? " integral; " : "; ");
    }
    return {ok, detail};
}

Outcome check_fixed(const Budget& budget) {
    bool ok = true;
    std::string detail;
    for (const auto& [ring, gen, expected] :
         std::vector<std::tuple<const char*, Elem, std::size_t>>{{"Z/4", 2, 2}, {"Z/8", 2, 2}, {"Z/8", 4, 5}}) {
        const auto complex = build_tits_complex(RingSpec::parse(ring), 2, budget);
        const GroupAction action(complex, congruence_generators(complex.ring(), 2, {gen}));
        std::vector<SignedPermutation> perms;
        for (std::size_t g = 0; g < action.size(); ++g)
            perms.push_back(simplex_permutation(complex.topology(), complex.simplex_index(), action.vertex_permutation(g)));
        const auto dim = fixed_subspace_dim(chain_complex(complex.topology()), 0, perms);
        ok = ok && dim == expected;
        detail += std::string(ring) + " (" + std::to_string(gen) + "): " + std::to_string(dim) + "; ";
    }
    return {ok, detail};
}

Outcome check_reduction(const Budget& budget) {
    const auto source = build_tits_complex(RingSpec::parse("Z/4"), 2, budget);
    const auto target = build_tits_complex(RingSpec::parse("F2"), 2, budget);
    const auto map = reduction_map(source, target, quotient_onto(source.ring()->spec(), target.ring()->spec()));
    const auto induced = induced_top_map(map, source.topology(), target.topology());
    return {induced.rank == 2 && induced.kernel_dim() > 0,
            "rank " + std::to_string(induced.rank) + ", kernel " + std::to_string(induced.kernel_dim())};
}

Outcome check_orbits(const Budget& budget) {
    bool ok = true;
    std::string detail;
    for (const auto* ring : {"Z/4", "Z/8", "Z/9", "F5"}) {
        const auto spec = RingSpec::parse(ring);
        const auto r = p1_orbit_and_commutant(spec, budget);
        const auto k = static_cast<std::size_t>(*uniserial_length(spec));
        ok = ok && r.orbits == k + 1 && r.commutant_dim == k + 1;
        detail += std::string(ring) + ": (" + std::to_string(r.orbits) + "," + std::to_string(r.commutant_dim) + ") ";
    }
    return {ok, detail};
}

Outcome check_structure_suite(bool corrupt, unsigned jobs, const Budget& budget) {
    bool ok = true;
    std::string detail;
    // m = 0 is the full complex; otherwise vertex ranks are capped at m.
    const std::vector<std::tuple<const char*, int, int>> cases = {
        {"Z/4", 2, 0}, {"Z/6", 2, 0}, {"Z/9", 2, 0}, {"F2", 3, 0},  {"Z/4", 3, 0},
        {"F2[e]", 3, 0}, {"Z/6", 3, 0}, {"F2", 4, 0}, {"Z/4", 4, 2}};
    for (const auto& [ring, n, m] : cases) {
        const auto spec = RingSpec::parse(ring);
        const auto complex = m > 0 ? build_filtration(spec, n, m, budget) : build_tits_complex(spec, n, budget);
        const auto cc = maybe_corrupt(chain_complex(complex.topology()), corrupt);
        const auto h = reduced_homology(cc, jobs);
        const auto r = check_structure(complex, cc, h, budget);
        ok = ok && r.all();
        detail += std::string(ring) + " n=" + std::to_string(n) + (m > 0 ? " m=" + std::to_string(m) : "") + ": " +
                  r.detail + "; ";
    }
    return {ok, detail};
}

Outcome check_relabeling(std::uint64_t seed, const Budget& budget) {
    const auto complex = build_tits_complex(RingSpec::parse("Z/4"), 3, budget);
    const auto base = reduced_homology(chain_complex(complex.topology()));
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> relabel(complex.vertex_count());
    std::iota(relabel.begin(), relabel.end(), 0U);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    SimplicialComplex shuffled;
    for (const auto& level : complex.topology().simplices_by_dim) {
        auto& out = shuffled.simplices_by_dim.emplace_back();
        for (const auto& s : level) {
            Simplex t;
            for (const auto v : s) t.push_back(relabel[v]);
            std::sort(t.begin(), t.end());
            out.push_back(std::move(t));
        }
        std::sort(out.begin(), out.end());
    }
    const auto h = reduced_homology(chain_complex(shuffled));
    return {h.betti == base.betti && h.torsion == base.torsion,
            "seed " + std::to_string(seed) + ": " + join(h.betti) + " vs " + join(base.betti)};
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.tier != "fast" && options.tier != "full")
        throw std::invalid_argument("unknown tier '" + options.tier + "' (expected fast or full)");
    const Budget& b = options.budget;
    const bool corrupt = options.corrupt_boundary;
    const unsigned jobs = options.jobs;
    std::vector<std::tuple<std::string, std::string, Check>> plan = {
        {"rank-table", "Steinberg ranks of Z/d for composite d <= 10, n <= 6", check_table},
        {"field-formula", "field ranks equal p^(n(n-1)/2)", check_field},
        {"grassmannian", "Grassmannian enumeration equals the counting formula", [&] { return check_grassmannians(b); }},
        {"flags", "good flag enumeration equals the orbit-stabilizer count", [&] { return check_flags(b); }},
        {"ut-pairing", "UT apartment pairing is diagonal +-1",
         [&] { return check_pairing({{"Z/4", 2}, {"F2", 3}}, b); }},
        {"eta", "eta is a nonzero cycle invisible to UT chamber maps",
         [&] { return check_eta({{"Z/4", 2, 2}}, b); }},
        {"boundary", "boundary of a boundary vanishes", [&] { return check_boundary(corrupt, b); }},
    };
    if (options.tier == "full") {
        const std::vector<std::tuple<std::string, std::string, Check>> full = {
            {"homology-t2", "reduced homology of T_2(Z/4) and T_2(Z/6)",
             [&] {
                 const auto a = check_homology("Z/4", 2, {5}, jobs, b);
                 const auto c = check_homology("Z/6", 2, {11}, jobs, b);
                 return Outcome{a.ok && c.ok, a.detail + "; " + c.detail};
             }},
            {"homology-t3", "reduced homology of T_3(Z/4) and T_3(Z/6)",
             [&] {
                 const auto a = check_homology("Z/4", 3, {0, 113}, jobs, b);
                 const auto c = check_homology("Z/6", 3, {0, 911}, jobs, b);
                 return Outcome{a.ok && c.ok, a.detail + "; " + c.detail};
             }},
            {"homology-t4-f2", "reduced homology of T_4(F2)", [&] { return check_homology("F2", 4, {0, 0, 64}, jobs, b); }},
            {"equal-betti", "T_3(Z/4) and T_3(F2[e]^2) have equal homology", [&] { return check_equal_betti(jobs, b); }},
            {"filtration", "rank <= 2 filtration of T_4(Z/4) has H~_1 of rank 2681", [&] { return check_filtration(b); }},
            {"ut-pairing-full", "UT apartment pairing for Z/9 n=2 and Z/4 n=3",
             [&] { return check_pairing({{"Z/9", 2}, {"Z/4", 3}}, b); }},
            {"eta-full", "eta witness for Z/4 n=3 and Z/9 n=2",
             [&] { return check_eta({{"Z/4", 3, 2}, {"Z/9", 2, 3}}, b); }},
            {"apartment-span", "apartment classes span the top homology", [&] { return check_apartments(b); }},
            {"fixed-subspace", "congruence subgroup invariants", [&] { return check_fixed(b); }},
            {"reduction", "T_2(Z/4) -> T_2(F2) induced map has rank 2 and a kernel", [&] { return check_reduction(b); }},
            {"orbits", "GL_2 orbits on P^1 x P^1 equal the commutant dimension",
             [&] { return check_orbits(b); }},
            {"structure", "boundary, Euler, purity, nerve and action axioms",
             [&] { return check_structure_suite(corrupt, jobs, b); }},
            {"relabeling", "homology is invariant under vertex relabeling",
             [&] { return check_relabeling(options.seed, b); }},
        };
        plan.insert(plan.end(), full.begin(), full.end());
    }

    VerifyReport report;
    report.tier = options.tier;
    for (const auto& [id, name, run] : plan) {
        CheckResult result{id, name, CheckStatus::Fail, "", 0};
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto outcome = run();
            result.status = outcome.ok ? CheckStatus::Pass : CheckStatus::Fail;
            result.detail = outcome.detail;
        } catch (const BudgetExceeded& e) {
            result.status = CheckStatus::Skipped;
            result.detail = e.what();
        } catch (const std::exception& e) {
            result.status = CheckStatus::Fail;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(result));
    }
    return report;
}

}  // namespace titsring
