// titsring: command-line front end for Steinberg ranks, Tits complexes and
// their homology over finite commutative rings.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "titsring/serialize.hpp"
#include "titsring/verify.hpp"

using namespace titsring;

namespace {

struct Config {
    std::string ring = "Z/4";
    std::vector<std::string> rings;
    int n = 2;
    int n_max = 6;
    int k = 1;
    std::string type;
    int filtration = 0;
    std::uint64_t budget = 1'000'000;
    std::string format;  ///< empty selects the command's default
    std::string output;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string tier = "fast";
    bool corrupt_boundary = false;
    std::vector<unsigned> ideal;
    int eta = -1;
};

int exit_parse = 2;
int exit_budget = 3;

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + cfg.output + "'");
    out << text;
}

std::vector<RingSpec> parse_rings(const std::vector<std::string>& labels) {
    std::vector<RingSpec> out;
    for (const auto& label : labels) out.push_back(RingSpec::parse(label));
    return out;
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
    for (const auto* f : allowed)
        if (cfg.format == f) return;
    throw CLI::ValidationError("--format", "unsupported format '" + cfg.format + "' for this command");
}

// ---------------------------------------------------------------- commands

void cmd_rank(const Config& cfg) {
    require_format(cfg, {"csv", "json", "text"});
    const auto tables = table_generate(parse_rings(cfg.rings.empty() ? std::vector{cfg.ring} : cfg.rings), cfg.n_max);
    if (cfg.format == "csv")
        emit(cfg, rank_table_csv(tables));
    else if (cfg.format == "json")
        emit(cfg, rank_table_json(tables));
    else
        emit(cfg, rank_table_text(tables));
}

void cmd_grass(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    const auto spec = RingSpec::parse(cfg.ring);
    const Budget budget{cfg.budget};
    const auto summands = enumerate_grassmannian(spec, cfg.n, cfg.k, budget);
    const FreeModule module(make_ring(spec), cfg.n);
    if (cfg.format == "json") {
        emit(cfg, summands_json(module, summands));
        return;
    }
    std::ostringstream os;
    os << "Gr_" << cfg.k << "^" << cfg.n << "(" << spec.to_string() << "): " << summands.size()
       << " summands (formula " << grassmannian_size_formula(spec, cfg.n, cfg.k) << ")\n"
       << summands_text(module, summands);
    emit(cfg, os.str());
}

void cmd_flags(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    const auto spec = RingSpec::parse(cfg.ring);
    const auto type = cfg.type.empty() ? FlagType::complete(cfg.n) : FlagType::parse(cfg.type);
    const auto flags = enumerate_good_flags(spec, type, Budget{cfg.budget});
    const FreeModule module(make_ring(spec), type.n());
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["schema_version"] = 1;
        doc["ring"] = spec.to_string();
        doc["type"] = type.parts;
        doc["count"] = flags.size();
        doc["formula"] = flag_count_formula(spec, type).str();
        doc["flags"] = nlohmann::ordered_json::array();
        for (const auto& f : flags) {
            auto entry = nlohmann::ordered_json::array();
            for (const auto& s : f.summands) {
                auto basis = nlohmann::ordered_json::array();
                for (const auto& v : s.basis()) basis.push_back(module.format(v));
                entry.push_back(basis);
            }
            doc["flags"].push_back(entry);
        }
        emit(cfg, doc.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    os << "flags of type (" << type.to_string() << ") over " << spec.to_string() << ": " << flags.size()
       << " (formula " << flag_count_formula(spec, type) << ")\n";
    for (const auto& f : flags) {
        for (std::size_t i = 0; i < f.summands.size(); ++i) {
            os << (i ? " < " : "") << "<";
            const auto& basis = f.summands[i].basis();
            for (std::size_t j = 0; j < basis.size(); ++j) os << (j ? ", " : "") << module.format(basis[j]);
            os << ">";
        }
        os << '\n';
    }
    emit(cfg, os.str());
}

TitsComplex build(const Config& cfg) {
    const auto spec = RingSpec::parse(cfg.ring);
    const Budget budget{cfg.budget};
    return cfg.filtration > 0 ? build_filtration(spec, cfg.n, cfg.filtration, budget)
                              : build_tits_complex(spec, cfg.n, budget);
}

void cmd_complex(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    const auto complex = build(cfg);
    emit(cfg, cfg.format == "json" ? complex_json(complex) : complex_text(complex));
}

void cmd_homology(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    const auto complex = build(cfg);
    HomologyReport report{complex.ring()->spec().to_string(), cfg.n, cfg.filtration,
                          reduced_homology(chain_complex(complex.topology()), cfg.jobs)};
    emit(cfg, cfg.format == "json" ? homology_json(report) : homology_text(report));
}

void cmd_apartments(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    const auto complex = build_tits_complex(RingSpec::parse(cfg.ring), cfg.n, Budget{cfg.budget});
    const Budget budget{cfg.budget};
    const auto pairing = ut_apartment_pairing(complex, budget);
    bool diagonal = true;
    for (std::size_t a = 0; a < pairing.size(); ++a)
        for (std::size_t b = 0; b < pairing.size(); ++b)
            if (a == b ? std::abs(pairing[a][b]) != 1 : pairing[a][b] != 0) diagonal = false;
    const auto span = apartment_span_rank(complex, budget);
    const auto betti = reduced_homology(chain_complex(complex.topology()), cfg.jobs).betti;
    const std::size_t top = betti.empty() ? 0 : betti.back();

    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["ring"] = complex.ring()->spec().to_string();
    doc["n"] = cfg.n;
    doc["ut_apartments"] = pairing.size();
    doc["ut_pairing_diagonal"] = diagonal;
    doc["span_rank"] = span.rank;
    doc["top_betti"] = top;
    doc["apartments_used"] = span.apartments;
    doc["exhaustive"] = span.exhaustive;
    doc["saturated"] = span.saturated;
    if (span.exhaustive) doc["generates_integrally"] = span.generates_integrally();
    if (cfg.eta >= 0) {
        const auto eta = eta_class(complex, static_cast<Elem>(cfg.eta));
        std::size_t nonzero = 0;
        for (const auto& a : upper_unitriangular_matrices(complex.ring(), cfg.n, budget))
            nonzero += chamber_map(complex, eta, reverse_upper_triangular_flag(complex, a)) != 0;
        doc["eta"] = {{"terms", eta.coefficients.size()}, {"ut_chambers_nonzero", nonzero}};
    }
    if (cfg.format == "json") {
        emit(cfg, doc.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    os << "ring " << doc["ring"].get<std::string>() << ", n = " << cfg.n << '\n'
       << "UT apartments: " << pairing.size() << ", pairing " << (diagonal ? "diagonal +-1" : "NOT diagonal") << '\n'
       << "apartment span rank " << span.rank << " of " << top << " (" << span.apartments << " classes, "
       << (span.exhaustive ? "all frames" : span.saturated ? "GL_n-stable span" : "lower bound, budget exhausted")
       << ")\n";
    if (span.exhaustive) os << "generates integrally: " << (span.generates_integrally() ? "yes" : "no") << '\n';
    if (cfg.eta >= 0)
        os << "eta: " << doc["eta"]["terms"].get<std::size_t>() << " terms, "
           << doc["eta"]["ut_chambers_nonzero"].get<std::size_t>() << " UT chambers nonzero\n";
    emit(cfg, os.str());
}

void cmd_orbits(const Config& cfg) {
    require_format(cfg, {"json", "text", "csv"});
    const auto specs = parse_rings(cfg.rings.empty() ? std::vector{cfg.ring} : cfg.rings);
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["results"] = nlohmann::ordered_json::array();
    std::ostringstream text, csv;
    csv << "ring,points,orbits,commutant_dim,uniserial_length\n";
    for (const auto& spec : specs) {
        const auto r = p1_orbit_and_commutant(spec, Budget{cfg.budget});
        const auto k = uniserial_length(spec);
        nlohmann::ordered_json entry = {{"ring", spec.to_string()},
                                        {"points", r.points},
                                        {"orbits", r.orbits},
                                        {"commutant_dim", r.commutant_dim}};
        if (k) entry["uniserial_length"] = *k;
        doc["results"].push_back(entry);
        text << spec.to_string() << ": |P^1| = " << r.points << ", orbits " << r.orbits << ", commutant dim "
             << r.commutant_dim;
        if (k) text << ", length " << *k;
        text << '\n';
        csv << spec.to_string() << ',' << r.points << ',' << r.orbits << ',' << r.commutant_dim << ','
            << (k ? std::to_string(*k) : "") << '\n';
    }
    emit(cfg, cfg.format == "json" ? doc.dump(2) + "\n" : cfg.format == "csv" ? csv.str() : text.str());
}

int cmd_verify(const Config& cfg) {
    VerifyOptions options;
    options.tier = cfg.tier;
    options.budget = Budget{cfg.budget};
    options.jobs = cfg.jobs;
    options.seed = cfg.seed;
    options.corrupt_boundary = cfg.corrupt_boundary;
    const auto report = run_verification(options);
    for (const auto& c : report.checks) {
        const char* status = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIPPED";
        std::cerr << status << "  " << c.id << "  " << c.detail << "  (" << c.seconds << " s)\n";
    }
    emit(cfg, report.to_json());
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steinberg ranks, Tits complexes and their homology over finite commutative rings"};
    app.require_subcommand(1);
    Config cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--budget", cfg.budget, "maximum number of objects to enumerate")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output,-o", cfg.output, "write to this file instead of stdout");
        sub->add_option("--jobs,-j", cfg.jobs, "worker threads for independent Smith normal forms")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    };

    auto* rank = app.add_subcommand("rank", "Steinberg ranks from the Grassmannian recursion");
    rank->add_option("--rings", cfg.rings, "comma separated ring specs, e.g. Z/4,F2[e]^2")->delimiter(',');
    rank->add_option("--ring", cfg.ring, "a single ring spec");
    rank->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::NonNegativeNumber);
    add_common(rank);

    auto* grass = app.add_subcommand("grass", "enumerate a Grassmannian of free and cofree summands");
    grass->add_option("--ring", cfg.ring)->required();
    grass->add_option("--n", cfg.n)->required();
    grass->add_option("--k", cfg.k)->required();
    add_common(grass);

    auto* flags = app.add_subcommand("flags", "enumerate good flags of a given type");
    flags->add_option("--ring", cfg.ring)->required();
    flags->add_option("--n", cfg.n, "ambient rank when --type is omitted (complete flags)");
    flags->add_option("--type", cfg.type, "composition of n, e.g. 1,1,2");
    add_common(flags);

    auto* complex = app.add_subcommand("complex", "build T_n(R) and list vertices and simplices");
    complex->add_option("--ring", cfg.ring)->required();
    complex->add_option("--n", cfg.n)->required();
    complex->add_option("--filtration", cfg.filtration, "keep vertices of rank <= m");
    add_common(complex);

    auto* homology = app.add_subcommand("homology", "exact reduced homology of T_n(R)");
    homology->add_option("--ring", cfg.ring)->required();
    homology->add_option("--n", cfg.n)->required();
    homology->add_option("--filtration", cfg.filtration, "keep vertices of rank <= m");
    add_common(homology);

    auto* apartments = app.add_subcommand("apartments", "apartment classes, UT pairing and span rank");
    apartments->add_option("--ring", cfg.ring)->required();
    apartments->add_option("--n", cfg.n)->required();
    apartments->add_option("--eta", cfg.eta, "also evaluate eta for this non-unit (element index)");
    add_common(apartments);

    auto* orbits = app.add_subcommand("orbits", "GL_2 orbits on P^1 x P^1 and commutant dimension");
    orbits->add_option("--rings", cfg.rings)->delimiter(',');
    orbits->add_option("--ring", cfg.ring);
    add_common(orbits);

    auto* verify = app.add_subcommand("verify", "run the self-check suite and write a JSON report");
    verify->add_option("--tier", cfg.tier)->check(CLI::IsMember({"fast", "full"}));
    verify->add_flag("--corrupt-boundary", cfg.corrupt_boundary, "flip one boundary sign (negative control)");
    add_common(verify);

    for (auto* sub : {rank, grass, flags, complex, homology, apartments, orbits})
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (cfg.format.empty()) cfg.format = *rank ? "csv" : "text";

    try {
        if (*rank) cmd_rank(cfg);
        if (*grass) cmd_grass(cfg);
        if (*flags) cmd_flags(cfg);
        if (*complex) cmd_complex(cfg);
        if (*homology) cmd_homology(cfg);
        if (*apartments) cmd_apartments(cfg);
        if (*orbits) cmd_orbits(cfg);
        if (*verify) return cmd_verify(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget to allow it)\n";
        return exit_budget;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
