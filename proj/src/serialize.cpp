#include "titsring/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace titsring {

using nlohmann::ordered_json;

namespace {

std::size_t table_rows(const std::vector<RankTable>& tables) {
    std::size_t rows = 0;
    for (const auto& t : tables) rows = std::max(rows, t.ranks.size());
    return rows;
}

ordered_json basis_json(const FreeModule& module, const Summand& s) {
    ordered_json basis = ordered_json::array();
    for (const auto& v : s.basis()) basis.push_back(module.format(v));
    return basis;
}

std::string basis_text(const FreeModule& module, const Summand& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.basis().size(); ++i) out += (i ? ", " : "") + module.format(s.basis()[i]);
    return out + ">";
}

}  // namespace

std::string rank_table_csv(const std::vector<RankTable>& tables) {
    std::ostringstream os;
    os << "n";
    for (const auto& t : tables) os << ',' << t.label;
    os << '\n';
    for (std::size_t row = 0; row < table_rows(tables); ++row) {
        os << row + 1;
        for (const auto& t : tables) os << ',' << (row < t.ranks.size() ? t.ranks[row].str() : "");
        os << '\n';
    }
    return os.str();
}

std::string rank_table_json(const std::vector<RankTable>& tables) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["tables"] = ordered_json::array();
    for (const auto& t : tables) {
        ordered_json ranks = ordered_json::object();
        for (std::size_t i = 0; i < t.ranks.size(); ++i) ranks[std::to_string(i + 1)] = t.ranks[i].str();
        doc["tables"].push_back({{"ring", t.label}, {"ranks", ranks}});
    }
    return doc.dump(2) + "\n";
}

std::string rank_table_text(const std::vector<RankTable>& tables) {
    std::vector<std::size_t> width{1};
    for (const auto& t : tables) {
        std::size_t w = t.label.size();
        for (const auto& r : t.ranks) w = std::max(w, r.str().size());
        width.push_back(w);
    }
    std::ostringstream os;
    const auto cell = [&](const std::string& text, std::size_t w) {
        os << std::string(w - std::min(w, text.size()), ' ') << text;
    };
    cell("n", 2);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        os << "  ";
        cell(tables[i].label, width[i + 1]);
    }
    os << '\n';
    for (std::size_t row = 0; row < table_rows(tables); ++row) {
        cell(std::to_string(row + 1), 2);
        for (std::size_t i = 0; i < tables.size(); ++i) {
            os << "  ";
            cell(row < tables[i].ranks.size() ? tables[i].ranks[row].str() : "", width[i + 1]);
        }
        os << '\n';
    }
    return os.str();
}

std::string homology_json(const HomologyReport& report) {
    const auto& r = report.result;
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["ring"] = report.ring;
    doc["n"] = report.n;
    if (report.filtration > 0) doc["filtration"] = report.filtration;
    doc["f_vector"] = r.f_vector;
    doc["reduced_betti_minus_one"] = r.betti_minus_one;
    doc["degrees"] = ordered_json::array();
    for (std::size_t d = 0; d < r.betti.size(); ++d) {
        ordered_json torsion = ordered_json::array();
        for (const auto& t : r.torsion[d]) torsion.push_back(t.str());
        doc["degrees"].push_back({{"degree", d}, {"betti", r.betti[d]}, {"torsion", torsion}});
    }
    return doc.dump(2) + "\n";
}

std::string homology_text(const HomologyReport& report) {
    const auto& r = report.result;
    std::ostringstream os;
    os << "ring " << report.ring << ", n = " << report.n;
    if (report.filtration > 0) os << ", vertex ranks <= " << report.filtration;
    os << "\nf-vector:";
    for (const auto f : r.f_vector) os << ' ' << f;
    if (r.f_vector.empty()) os << " (empty complex, reduced H_-1 = Z)";
    os << '\n';
    for (std::size_t d = 0; d < r.betti.size(); ++d) {
        os << "H~_" << d << ": rank " << r.betti[d];
        if (!r.torsion[d].empty()) {
            os << ", torsion";
            for (const auto& t : r.torsion[d]) os << " Z/" << t.str();
        }
        os << '\n';
    }
    return os.str();
}

std::string complex_json(const TitsComplex& complex) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["ring"] = complex.ring()->spec().to_string();
    doc["n"] = complex.n();
    doc["max_rank"] = complex.max_rank();
    doc["vertices"] = ordered_json::array();
    for (const auto& v : complex.vertices())
        doc["vertices"].push_back({{"rank", v.rank()}, {"basis", basis_json(complex.module(), v)}});
    doc["simplices"] = ordered_json::array();
    for (const auto& level : complex.topology().simplices_by_dim) doc["simplices"].push_back(level);
    return doc.dump(1) + "\n";
}

std::string complex_text(const TitsComplex& complex) {
    std::ostringstream os;
    os << "ring " << complex.ring()->spec().to_string() << ", n = " << complex.n() << ", vertex ranks <= "
       << complex.max_rank() << '\n';
    os << "vertices " << complex.vertex_count() << '\n';
    for (std::size_t i = 0; i < complex.vertex_count(); ++i)
        os << i << " rank " << complex.vertex(i).rank() << ' ' << basis_text(complex.module(), complex.vertex(i))
           << '\n';
    const auto& levels = complex.topology().simplices_by_dim;
    for (std::size_t d = 1; d < levels.size(); ++d) {
        os << "simplices of dimension " << d << ' ' << levels[d].size() << '\n';
        for (const auto& s : levels[d]) {
            for (std::size_t k = 0; k < s.size(); ++k) os << (k ? " " : "") << s[k];
            os << '\n';
        }
    }
    return os.str();
}

std::string summands_json(const FreeModule& module, const std::vector<Summand>& summands) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["ring"] = module.ring()->spec().to_string();
    doc["n"] = module.rank();
    doc["count"] = summands.size();
    doc["summands"] = ordered_json::array();
    for (const auto& s : summands) doc["summands"].push_back({{"rank", s.rank()}, {"basis", basis_json(module, s)}});
    return doc.dump(2) + "\n";
}

std::string summands_text(const FreeModule& module, const std::vector<Summand>& summands) {
    std::ostringstream os;
    for (const auto& s : summands) os << basis_text(module, s) << '\n';
    return os.str();
}

}  // namespace titsring
