#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "pg3q/report.hpp"

using namespace pg3q;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// minimal structural validation against our own schema subset:
// "type", "required", "properties", "items", "enum", bounds are honored
bool validates(const json& schema, const json& value);

bool type_ok(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "integer") return v.is_number_integer();
    if (t == "string") return v.is_string();
    return false;
}

bool validates(const json& schema, const json& value) {
    if (schema.contains("type") && !type_ok(schema["type"], value)) return false;
    if (schema.contains("enum")) {
        bool hit = false;
        for (auto& e : schema["enum"]) hit |= (e == value);
        if (!hit) return false;
    }
    if (schema.contains("minimum") && value.is_number() && value < schema["minimum"]) return false;
    if (schema.contains("maximum") && value.is_number() && value > schema["maximum"]) return false;
    if (value.is_object()) {
        if (schema.contains("required"))
            for (auto& k : schema["required"])
                if (!value.contains(k.get<std::string>())) return false;
        if (schema.contains("properties"))
            for (auto& [k, sub] : schema["properties"].items())
                if (value.contains(k) && !validates(sub, value[k])) return false;
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<size_t>()) return false;
        if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<size_t>()) return false;
        if (schema.contains("items"))
            for (auto& item : value)
                if (!validates(schema["items"], item)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("census report validates against the shipped schema") {
    FieldContext F(9);
    json report = json::parse(form_census_json(F));
    json schema = json::parse(slurp(std::string(PG3Q_SOURCE_DIR) + "/docs/report.schema.json"));
    CHECK(validates(schema, report));
    CHECK(report["orbit_count"] == 20);
    CHECK(report["orbits"].size() == 20);
    int64_t total = 0;
    for (auto& orb : report["orbits"]) {
        total += orb["size"].get<int64_t>();
        CHECK(orb["size"].get<int64_t>() * orb["stabilizer_order"].get<int64_t>() ==
              report["group_order"].get<int64_t>());
    }
    CHECK(total == report["universe_size"].get<int64_t>());
}

TEST_CASE("verification results serialize with pass summary") {
    FieldContext F(9);
    auto results = verify_incidence(F, VerifyMode::Census);
    json parsed = json::parse(results_json(results));
    CHECK(parsed["total"].get<size_t>() == results.size());
    CHECK(parsed["pass"].get<bool>() == all_pass(results));
    for (auto& chk : parsed["checks"]) {
        CHECK(chk.contains("id"));
        CHECK(chk.contains("expected"));
        CHECK(chk.contains("observed"));
        CHECK(chk.contains("pass"));
    }
}

TEST_CASE("emit-tables: formats, determinism, content") {
    FieldContext F(9);
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "pg3q_report_test";
    fs::remove_all(base);

    auto j1 = emit_tables(F, "json", (base / "j1").string());
    auto j2 = emit_tables(F, "json", (base / "j2").string());
    REQUIRE(j1.size() == 1);
    CHECK(slurp(j1[0]) == slurp(j2[0]));
    json report = json::parse(slurp(j1[0]));
    CHECK(report["representatives"].size() == 20);
    CHECK(report["line_generators"].size() == 15);
    CHECK(report["incidence"]["nongeneric"].size() == 10);
    CHECK(report["elliptic"].size() == 8);
    CHECK(report.contains("form_census"));

    auto csv = emit_tables(F, "csv", (base / "c").string());
    CHECK(csv.size() == 7);
    for (auto& path : csv) CHECK(!slurp(path).empty());
    // CSV table rows: header + one per representative
    auto t3 = slurp((base / "c" / "table3_representatives.csv").string());
    CHECK(std::count(t3.begin(), t3.end(), '\n') == 21);

    auto md = emit_tables(F, "markdown", (base / "m").string());
    REQUIRE(md.size() == 1);
    CHECK(slurp(md[0]).find("## Incidence for non-generic line orbits") != std::string::npos);

    CHECK_THROWS_AS(emit_tables(F, "yaml", (base / "x").string()), std::invalid_argument);
    fs::remove_all(base);
}
