#include "pg3q/report.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace pg3q {

namespace {

using nlohmann::json;

json tally_json(const IncidenceTally& t) { return json(t.n); }

json form_json(const BinaryForm& f) {
    json out = json::array();
    for (int i = 0; i <= f.degree; ++i) out.push_back(f.z[i]);
    return out;
}

json lambda_json(const FieldElement& lam) { return json{{"level", lam.level}, {"index", lam.idx}}; }

json point_json(const ProjPoint& P) { return json(P.y); }

json line_json(const ProjLine& L) { return json(L.p); }

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

struct TableData {
    // everything needed to render the reproductions, census free
    int q;
    std::vector<FormRep> form_reps;
    std::vector<TableLineRep> line_reps;
    std::vector<NonGenericRep> nongeneric;
};

TableData collect(const FieldContext& F) {
    return {F.q(), table_form_reps(F), table_line_reps(F), nongeneric_table(F)};
}

json orbit_table_counts(const FieldContext& F) {
    const int q = F.q();
    // rows: j in J4 / J2 / J1 / j = 0 ; columns |G|, |G|/2, |G|/3, |G|/4, |G|/8, |G|/24
    return json{
        {"columns", {"|G|", "|G|/2", "|G|/3", "|G|/4", "|G|/8", "|G|/24"}},
        {"rows",
         {{{"j", "J4"}, {"counts", {0, 0, 0, 4 * 0 + 4, 0, 0}}},
          {{"j", "J2"}, {"counts", {0, 2, 0, 0, 0, 0}}},
          {{"j", "J1"}, {"counts", {1, 0, 0, 0, 0, 0}}},
          {{"j", "0"}, {"counts", {0, 0, 1, 2, 1, 1}}}}},
        {"classes_per_row", {(q - 3) / 6, (q - 1) / 2, q / 3, 1}},
        {"total_orbits", 2 * q + 2},
    };
}

json line_table_counts(const FieldContext& F) {
    const int q = F.q();
    return json{
        {"columns", {"|G|", "|G|/2", "|G|/4"}},
        {"rows",
         {{{"j", "J4"}, {"counts", {0, 0, 4}}},
          {{"j", "J2"}, {"counts", {0, 2, 0}}},
          {{"j", "J1"}, {"counts", {1, 0, 0}}}}},
        {"orbit_totals", {q / 3, q - 1, (2 * q - 6) / 3}},
        {"total_orbits", 2 * q - 3},
    };
}

json elliptic_json(const FieldContext& F) {
    json rows = json::array();
    for (Fq r = 1; r < F.q(); ++r) {
        int64_t n = count_points(F, {r});
        rows.push_back(json{{"r", r},
                            {"points", n},
                            {"mod3", n % 3},
                            {"hasse_margin", 4 * int64_t(F.q()) - (n - F.q() - 1) * (n - F.q() - 1)}});
    }
    return rows;
}

json representatives_json(const FieldContext& F, const TableData& data) {
    json reps = json::array();
    for (auto& rep : data.form_reps) {
        reps.push_back(json{{"family", rep.family},
                            {"representative", form_json(rep.form)},
                            {"polynomial", form_to_string(F, rep.form)},
                            {"j", rep.j},
                            {"type", to_string(rep.type)},
                            {"stabilizer_order", rep.claimed_stab},
                            {"stabilizer", rep.stab_name},
                            {"note", rep.note}});
    }
    return reps;
}

json line_reps_json(const FieldContext& F, const TableData& data) {
    json reps = json::array();
    for (auto& t : data.line_reps) {
        ProjLine L = line_from_points(F, t.row1, t.row2);
        reps.push_back(json{{"family", t.family},
                            {"generator_matrix", {point_json(t.row1), point_json(t.row2)}},
                            {"plucker", line_json(L)},
                            {"j", t.j},
                            {"type", to_string(t.type)},
                            {"note", t.note}});
    }
    return reps;
}

json incidence_json(const FieldContext& F, const TableData& data) {
    json generic = json::array();
    for (auto& t : data.line_reps) {
        int mu = rational_linear_count(t.type);
        int64_t ne = count_points(F, {t.j});
        generic.push_back(json{{"family", t.family},
                               {"j", t.j},
                               {"type", to_string(t.type)},
                               {"curve_points", ne},
                               {"plane_tally", tally_json(expected_plane_tally(F, mu, ne))},
                               {"point_tally", tally_json(expected_point_tally(F, mu, ne))}});
    }
    json nongeneric = json::array();
    for (auto& row : data.nongeneric) {
        nongeneric.push_back(json{{"orbit", row.name},
                                  {"z", row.z},
                                  {"size", row.size},
                                  {"plane_tally", tally_json(row.planes)},
                                  {"point_tally", tally_json(row.points)},
                                  {"note", row.note}});
    }
    return json{{"generic", generic}, {"nongeneric", nongeneric}};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <class Row>
void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<Row>& rows) {
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i]);
    os << "\n";
    for (auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
    }
}

std::string tally_cell(const IncidenceTally& t) {
    std::ostringstream os;
    os << t.n[0] << " " << t.n[1] << " " << t.n[2] << " " << t.n[3] << " " << t.n[4];
    return os.str();
}

std::string form_cell(const BinaryForm& f) {
    std::ostringstream os;
    for (int i = 0; i <= f.degree; ++i) os << (i ? " " : "") << f.z[i];
    return os.str();
}

std::string point_cell(const ProjPoint& P) {
    std::ostringstream os;
    os << P.y[0] << " " << P.y[1] << " " << P.y[2] << " " << P.y[3];
    return os.str();
}

void md_table(std::ostream& os, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    os << "|";
    for (auto& h : header) os << " " << h << " |";
    os << "\n|";
    for (size_t i = 0; i < header.size(); ++i) os << " --- |";
    os << "\n";
    for (auto& row : rows) {
        os << "|";
        for (auto& cell : row) os << " " << cell << " |";
        os << "\n";
    }
    os << "\n";
}

}  // namespace

std::string results_json(const std::vector<VerificationResult>& results) {
    json arr = json::array();
    int failed = 0;
    for (auto& r : results) {
        failed += !r.pass;
        arr.push_back(json{{"id", r.id},
                           {"q", r.q},
                           {"expected", r.expected},
                           {"observed", r.observed},
                           {"pass", r.pass},
                           {"ms", r.ms},
                           {"notes", r.notes}});
    }
    json out{{"checks", arr}, {"total", results.size()}, {"failed", failed}, {"pass", failed == 0}};
    return dump_stable(out);
}

std::string form_census_json(const FieldContext& F) {
    auto universe = forms_with_nonzero_disc(F);
    auto census = decompose_forms(F, universe);
    const int64_t G = group_order(F);
    json orbits = json::array();
    for (auto& orb : census.orbits) {
        auto type = factorization_type(F, orb.representative);
        Fq j = j_invariant(F, orb.representative);
        auto lam = lambda_class(F, orb.representative);
        orbits.push_back(json{{"size", orb.size},
                              {"type", to_string(type)},
                              {"j", j},
                              {"lambda", lambda_json(lam.canonical)},
                              {"stabilizer_order", G / orb.size},
                              {"representative", form_json(orb.representative)}});
    }
    json out{{"q", F.q()},
             {"group_order", G},
             {"universe", "forms with nonzero discriminant"},
             {"universe_size", census.universe_size},
             {"orbit_count", census.orbits.size()},
             {"orbits", orbits}};
    return dump_stable(out);
}

std::vector<std::string> emit_tables(const FieldContext& F, const std::string& format,
                                     const std::string& outdir) {
    if (format != "json" && format != "csv" && format != "markdown")
        throw std::invalid_argument("unknown format '" + format + "' (expected json, csv or markdown)");
    std::filesystem::create_directories(outdir);
    auto data = collect(F);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& body) {
        auto path = std::filesystem::path(outdir) / name;
        std::ofstream of(path, std::ios::binary);
        of << body;
        written.push_back(path.string());
    };

    if (format == "json") {
        json report{{"q", data.q},
                    {"orbit_table_forms", orbit_table_counts(F)},
                    {"orbit_table_lines", line_table_counts(F)},
                    {"representatives", representatives_json(F, data)},
                    {"line_generators", line_reps_json(F, data)},
                    {"incidence", incidence_json(F, data)},
                    {"elliptic", elliptic_json(F)}};
        if (F.q() <= 27) report["form_census"] = json::parse(form_census_json(F));
        emit("report.json", dump_stable(report));
        return written;
    }

    if (format == "csv") {
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            auto add = [&](const char* j, std::initializer_list<int> cnt, int classes) {
                std::vector<std::string> row{j};
                for (int c : cnt) row.push_back(std::to_string(c));
                row.push_back(std::to_string(classes));
                rows.push_back(row);
            };
            const int q = data.q;
            add("J4", {0, 0, 0, 4, 0, 0}, (q - 3) / 6);
            add("J2", {0, 2, 0, 0, 0, 0}, (q - 1) / 2);
            add("J1", {1, 0, 0, 0, 0, 0}, q / 3);
            add("0", {0, 0, 1, 2, 1, 1}, 1);
            write_csv(os, {"j", "G", "G/2", "G/3", "G/4", "G/8", "G/24", "j_values"}, rows);
            emit("table1_form_orbits.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            const int q = data.q;
            rows.push_back({"J4", "0", "0", "4", std::to_string((q - 3) / 6)});
            rows.push_back({"J2", "0", "2", "0", std::to_string((q - 1) / 2)});
            rows.push_back({"J1", "1", "0", "0", std::to_string(q / 3)});
            write_csv(os, {"j", "G", "G/2", "G/4", "j_values"}, rows);
            emit("table2_line_orbits.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            for (auto& rep : data.form_reps)
                rows.push_back({rep.family, form_cell(rep.form), std::to_string(rep.j),
                                to_string(rep.type), std::to_string(rep.claimed_stab), rep.stab_name,
                                rep.note});
            write_csv(os, {"family", "z0 z1 z2 z3 z4", "j", "type", "stab_order", "stabilizer", "note"},
                      rows);
            emit("table3_representatives.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            for (auto& t : data.line_reps)
                rows.push_back({t.family, point_cell(t.row1), point_cell(t.row2), std::to_string(t.j),
                                to_string(t.type), t.note});
            write_csv(os, {"family", "row1", "row2", "j", "type", "note"}, rows);
            emit("table4_line_generators.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            for (auto& t : data.line_reps) {
                int mu = rational_linear_count(t.type);
                int64_t ne = count_points(F, {t.j});
                rows.push_back({t.family, std::to_string(t.j), to_string(t.type), std::to_string(ne),
                                tally_cell(expected_plane_tally(F, mu, ne)),
                                tally_cell(expected_point_tally(F, mu, ne))});
            }
            write_csv(os, {"family", "j", "type", "curve_points", "planes N1..N5", "points C AX T RC IC"},
                      rows);
            emit("incidence_generic.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            for (auto& row : data.nongeneric) {
                std::ostringstream z;
                for (int i = 0; i < 6; ++i) z << (i ? " " : "") << row.z[i];
                rows.push_back({row.name, z.str(), std::to_string(row.size), tally_cell(row.planes),
                                tally_cell(row.points), row.note});
            }
            write_csv(os, {"orbit", "z0..z5", "size", "planes N1..N5", "points C AX T RC IC", "note"}, rows);
            emit("incidence_nongeneric.csv", os.str());
        }
        {
            std::ostringstream os;
            std::vector<std::vector<std::string>> rows;
            for (Fq r = 1; r < F.q(); ++r) {
                int64_t n = count_points(F, {r});
                rows.push_back({std::to_string(r), std::to_string(n), std::to_string(n % 3),
                                std::to_string(4 * int64_t(F.q()) - (n - F.q() - 1) * (n - F.q() - 1))});
            }
            write_csv(os, {"r", "points", "mod3", "hasse_margin"}, rows);
            emit("elliptic.csv", os.str());
        }
        return written;
    }

    // markdown
    std::ostringstream os;
    const int q = data.q;
    os << "# Orbit and incidence tables, q = " << q << "\n\n";
    os << "## Form orbits by j and size (" << 2 * q + 2 << " orbits)\n\n";
    md_table(os, {"j", "G", "G/2", "G/3", "G/4", "G/8", "G/24", "j values"},
             {{"J4", "0", "0", "0", "4", "0", "0", std::to_string((q - 3) / 6)},
              {"J2", "0", "2", "0", "0", "0", "0", std::to_string((q - 1) / 2)},
              {"J1", "1", "0", "0", "0", "0", "0", std::to_string(q / 3)},
              {"0", "0", "0", "1", "2", "1", "1", "1"}});
    os << "## Generic line orbits by j and size (" << 2 * q - 3 << " orbits)\n\n";
    md_table(os, {"j", "G", "G/2", "G/4"},
             {{"J4", "0", "0", "4"},
              {"J2", "0", "2", "0"},
              {"J1", "1", "0", "0"},
              {"orbits", std::to_string(q / 3), std::to_string(q - 1), std::to_string((2 * q - 6) / 3)}});
    os << "## Orbit representatives and stabilizers\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto& rep : data.form_reps)
            rows.push_back({rep.family, form_to_string(F, rep.form), std::to_string(rep.j),
                            to_string(rep.type), rep.stab_name, rep.note});
        md_table(os, {"family", "representative", "j", "type", "stabilizer", "note"}, rows);
    }
    os << "## Generic line generator matrices\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto& t : data.line_reps)
            rows.push_back({t.family, "(" + point_cell(t.row1) + "; " + point_cell(t.row2) + ")",
                            std::to_string(t.j), to_string(t.type), t.note});
        md_table(os, {"family", "generator matrix", "j", "type", "note"}, rows);
    }
    os << "## Incidence for generic line orbits\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto& t : data.line_reps) {
            int mu = rational_linear_count(t.type);
            int64_t ne = count_points(F, {t.j});
            rows.push_back({t.family, std::to_string(t.j), std::to_string(ne),
                            tally_cell(expected_plane_tally(F, mu, ne)),
                            tally_cell(expected_point_tally(F, mu, ne))});
        }
        md_table(os, {"family", "j", "#E_r", "planes N1..N5", "points C AX T RC IC"}, rows);
    }
    os << "## Incidence for non-generic line orbits\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (auto& row : data.nongeneric)
            rows.push_back({row.name, std::to_string(row.size), tally_cell(row.planes),
                            tally_cell(row.points), row.note});
        md_table(os, {"orbit", "size", "planes N1..N5", "points C AX T RC IC", "note"}, rows);
    }
    os << "## Elliptic curve point counts\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (Fq r = 1; r < F.q(); ++r) {
            int64_t n = count_points(F, {r});
            rows.push_back({std::to_string(r), std::to_string(n), std::to_string(n % 3)});
        }
        md_table(os, {"r", "#E_r", "mod 3"}, rows);
    }
    emit("tables.md", os.str());
    return written;
}

}  // namespace pg3q
