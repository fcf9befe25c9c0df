// Python module titsring._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "titsring/serialize.hpp"
#include "titsring/verify.hpp"

namespace py = pybind11;
using namespace titsring;

namespace {

py::int_ to_py(const BigInt& value) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

Budget budget_of(std::uint64_t max_objects) {
    if (max_objects == 0) throw py::value_error("budget must be positive");
    return Budget{max_objects};
}

py::list steinberg_ranks_py(const std::string& spec, int n_max) {
    const auto parsed = RingSpec::parse(spec);
    std::vector<BigInt> ranks;
    {
        py::gil_scoped_release release;
        ranks = steinberg_ranks(parsed, n_max);
    }
    py::list out;
    for (const auto& r : ranks) out.append(to_py(r));
    return out;
}

std::string rank_table_py(const std::vector<std::string>& specs, int n_max, const std::string& format) {
    std::vector<RingSpec> parsed;
    for (const auto& s : specs) parsed.push_back(RingSpec::parse(s));
    const auto tables = table_generate(parsed, n_max);
    if (format == "csv") return rank_table_csv(tables);
    if (format == "json") return rank_table_json(tables);
    if (format == "text") return rank_table_text(tables);
    throw py::value_error("format must be csv, json or text");
}

py::list grassmannian_py(const std::string& spec, int n, int k, std::uint64_t budget) {
    const auto parsed = RingSpec::parse(spec);
    std::vector<Summand> summands;
    {
        py::gil_scoped_release release;
        summands = enumerate_grassmannian(parsed, n, k, budget_of(budget));
    }
    const FreeModule module(make_ring(parsed), n);
    py::list out;
    for (const auto& s : summands) {
        py::list basis;
        for (const auto& v : s.basis()) basis.append(module.format(v));
        out.append(basis);
    }
    return out;
}

py::dict homology_py(const std::string& spec, int n, int filtration, unsigned jobs, std::uint64_t budget) {
    const auto parsed = RingSpec::parse(spec);
    HomologyResult h;
    {
        py::gil_scoped_release release;
        const auto complex = filtration > 0 ? build_filtration(parsed, n, filtration, budget_of(budget))
                                            : build_tits_complex(parsed, n, budget_of(budget));
        h = reduced_homology(chain_complex(complex.topology()), jobs);
    }
    py::list torsion;
    for (const auto& degree : h.torsion) {
        py::list factors;
        for (const auto& t : degree) factors.append(to_py(t));
        torsion.append(factors);
    }
    py::dict out;
    out["betti"] = h.betti;
    out["torsion"] = torsion;
    out["f_vector"] = h.f_vector;
    out["betti_minus_one"] = h.betti_minus_one;
    return out;
}

py::dict apartments_py(const std::string& spec, int n, std::uint64_t budget) {
    const auto parsed = RingSpec::parse(spec);
    ApartmentSpan span;
    std::size_t top = 0;
    bool diagonal = true;
    std::size_t ut = 0;
    {
        py::gil_scoped_release release;
        const auto complex = build_tits_complex(parsed, n, budget_of(budget));
        const auto pairing = ut_apartment_pairing(complex, budget_of(budget));
        ut = pairing.size();
        for (std::size_t a = 0; a < ut; ++a)
            for (std::size_t b = 0; b < ut; ++b)
                diagonal = diagonal && (a == b ? std::abs(pairing[a][b]) == 1 : pairing[a][b] == 0);
        span = apartment_span_rank(complex, budget_of(budget));
        top = reduced_homology(chain_complex(complex.topology())).betti.back();
    }
    py::dict out;
    out["span_rank"] = span.rank;
    out["top_betti"] = top;
    out["exhaustive"] = span.exhaustive;
    out["saturated"] = span.saturated;
    out["generates_integrally"] = span.generates_integrally();
    out["ut_apartments"] = ut;
    out["ut_pairing_diagonal"] = diagonal;
    return out;
}

py::dict orbits_py(const std::string& spec, std::uint64_t budget) {
    const auto r = p1_orbit_and_commutant(RingSpec::parse(spec), budget_of(budget));
    py::dict out;
    out["points"] = r.points;
    out["orbits"] = r.orbits;
    out["commutant_dim"] = r.commutant_dim;
    return out;
}

std::string verify_py(const std::string& tier, unsigned jobs, std::uint64_t seed, std::uint64_t budget) {
    VerifyOptions options;
    options.tier = tier;
    options.jobs = jobs;
    options.seed = seed;
    options.budget = budget_of(budget);
    py::gil_scoped_release release;
    return run_verification(options).to_json();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Steinberg ranks, Tits complexes and their homology over finite commutative rings";

    static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BudgetExceeded& e) {
            PyErr_SetString(budget_error.ptr(), e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    constexpr std::uint64_t default_budget = Budget{}.max_objects;

    m.def("canonical_ring", [](const std::string& spec) { return RingSpec::parse(spec).to_string(); },
          py::arg("spec"), "Canonical spelling of a ring spec; raises ValueError when malformed.");
    m.def("ring_size", [](const std::string& spec) { return RingSpec::parse(spec).cardinality(); }, py::arg("spec"));
    m.def("steinberg_ranks", &steinberg_ranks_py, py::arg("spec"), py::arg("n_max"),
          "Ranks d_0..d_{n_max} from the Grassmannian recursion.");
    m.def("rank_table", &rank_table_py, py::arg("specs"), py::arg("n_max"), py::arg("format") = "csv");
    m.def("grassmannian_size", [](const std::string& spec, int n, int k) {
              return to_py(grassmannian_size_formula(RingSpec::parse(spec), n, k));
          },
          py::arg("spec"), py::arg("n"), py::arg("k"));
    m.def("grassmannian", &grassmannian_py, py::arg("spec"), py::arg("n"), py::arg("k"),
          py::arg("budget") = default_budget, "Preferred bases of every rank-k summand, as formatted vectors.");
    m.def("flag_count", [](const std::string& spec, const std::string& type) {
              return to_py(flag_count_formula(RingSpec::parse(spec), FlagType::parse(type)));
          },
          py::arg("spec"), py::arg("type"));
    m.def("homology", &homology_py, py::arg("spec"), py::arg("n"), py::arg("filtration") = 0, py::arg("jobs") = 1,
          py::arg("budget") = default_budget);
    m.def("apartments", &apartments_py, py::arg("spec"), py::arg("n"), py::arg("budget") = default_budget);
    m.def("p1_orbits", &orbits_py, py::arg("spec"), py::arg("budget") = default_budget);
    m.def("verify_json", &verify_py, py::arg("tier") = "fast", py::arg("jobs") = 1, py::arg("seed") = 1,
          py::arg("budget") = default_budget);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
