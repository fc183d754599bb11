// Acceptance suite: each numbered criterion is checked end to end at its
// stated scale and printed as a single pass/fail line. Every comparison is
// exact integer or exact field-element equality.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "pg3q/report.hpp"
#include "pg3q/verify.hpp"

using namespace pg3q;

namespace {

struct Workspace {
    FieldContext F9{9}, F27{27}, F81{81};

    std::optional<FormCensus> forms9, forms27, formsj9, formsj27;
    std::optional<LineCensus> gen9, gen27, non9, non27;
    std::optional<std::vector<BinaryForm>> uni9, uni27;
    double census9_ms = 0, census27_ms = 0;

    const std::vector<BinaryForm>& universe9() {
        if (!uni9) uni9 = forms_with_nonzero_disc(F9);
        return *uni9;
    }
    const std::vector<BinaryForm>& universe27() {
        if (!uni27) uni27 = forms_with_nonzero_disc(F27);
        return *uni27;
    }
    const FormCensus& census9() {
        if (!forms9) {
            auto t0 = std::chrono::steady_clock::now();
            forms9 = decompose_forms(F9, universe9());
            census9_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        return *forms9;
    }
    const FormCensus& census27() {
        if (!forms27) {
            auto t0 = std::chrono::steady_clock::now();
            forms27 = decompose_forms(F27, universe27());
            census27_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        return *forms27;
    }
    const FormCensus& census_j(const FieldContext& F) {
        auto& slot = (F.q() == 9) ? formsj9 : formsj27;
        if (!slot) slot = decompose_forms(F, forms_with_nonzero_j(F));
        return *slot;
    }
    const LineCensus& generic_lines(const FieldContext& F) {
        auto& slot = (F.q() == 9) ? gen9 : gen27;
        if (!slot) {
            std::vector<ProjLine> generic;
            for (auto& L : enumerate_lines(F))
                if (is_generic(F, L)) generic.push_back(L);
            slot = decompose_lines(F, generic);
        }
        return *slot;
    }
    const LineCensus& nongeneric_lines(const FieldContext& F) {
        auto& slot = (F.q() == 9) ? non9 : non27;
        if (!slot) {
            std::vector<ProjLine> nong;
            for (auto& L : enumerate_lines(F))
                if (!is_generic(F, L)) nong.push_back(L);
            slot = decompose_lines(F, nong);
        }
        return *slot;
    }
};

std::map<int64_t, int> profile(const FormCensus& c) {
    std::map<int64_t, int> p;
    for (auto& orb : c.orbits) ++p[orb.size];
    return p;
}

std::map<int64_t, int> profile(const LineCensus& c) {
    std::map<int64_t, int> p;
    for (auto& orb : c.orbits) ++p[orb.size];
    return p;
}

std::map<int64_t, int> expected_form_profile(int q) {
    const int64_t G = int64_t(q) * q * q - q;
    std::map<int64_t, int> expect;
    expect[G] += q / 3;
    expect[G / 2] += 2 * ((q - 1) / 2);
    expect[G / 4] += 4 * ((q - 3) / 6);
    expect[G / 3] += 1;
    expect[G / 4] += 2;
    expect[G / 8] += 1;
    expect[G / 24] += 1;
    return expect;
}

bool criterion1(Workspace& w, std::string& detail) {
    auto& c = w.census9();
    bool ok = w.universe9().size() == 6480 && c.orbits.size() == 20;
    ok &= profile(c) == expected_form_profile(9);
    ok &= w.census9_ms < 10000;
    std::ostringstream os;
    os << c.orbits.size() << " orbits over " << w.universe9().size() << " forms in " << int(w.census9_ms)
       << " ms";
    detail = os.str();
    return ok;
}

bool criterion2(Workspace& w, std::string& detail) {
    auto& c = w.census27();
    bool ok = w.universe27().size() == 530712 && c.orbits.size() == 56;
    ok &= profile(c) == expected_form_profile(27);
    int j4 = 0, j2 = 0, j1 = 0;
    for (Fq r = 1; r < 27; ++r) {
        auto jc = classify_j(w.F27, r);
        j4 += jc == JClass::J4;
        j2 += jc == JClass::J2;
        j1 += jc == JClass::J1;
    }
    ok &= j4 == 4 && j2 == 13 && j1 == 9;
    ok &= w.census27_ms < 300000;
    std::ostringstream os;
    os << c.orbits.size() << " orbits over " << w.universe27().size() << " forms in " << int(w.census27_ms)
       << " ms; |J4|,|J2|,|J1| = " << j4 << "," << j2 << "," << j1;
    detail = os.str();
    return ok;
}

bool criterion3(Workspace& w, std::string& detail) {
    auto& gc = w.generic_lines(w.F9);
    bool ok = gc.universe_size == 5760 && gc.orbits.size() == 15;
    ok &= profile(gc) == std::map<int64_t, int>{{720, 3}, {360, 8}, {180, 4}};
    // correspondence commutes with the decomposition
    auto& fc = w.census_j(w.F9);
    ok &= fc.orbits.size() == gc.orbits.size();
    std::set<int32_t> used;
    for (auto& orb : gc.orbits) {
        BinaryForm f = line_to_quartic(w.F9, orb.representative);
        int32_t fid = fc.orbit_index(form_key(w.F9, f));
        ok &= fid >= 0 && !used.count(fid) && fc.orbits[fid].size == orb.size;
        used.insert(fid);
        // and back: the representative form maps to a line in the same orbit
        ProjLine back = quartic_to_line(w.F9, fc.orbits[fid].representative);
        auto it = gc.orbit_of.find(line_key(w.F9, back));
        ok &= it != gc.orbit_of.end() && gc.orbits[it->second].representative == orb.representative;
    }
    detail = "15 orbits (3x720, 8x360, 4x180), line<->form decompositions commute";
    return ok;
}

bool criterion4(Workspace& w, std::string& detail) {
    bool ok = true;
    for (auto* F : {&w.F9, &w.F27}) {
        auto& nc = w.nongeneric_lines(*F);
        ok &= nc.orbits.size() == 10;
        std::map<int64_t, int> expect;
        for (auto& row : nongeneric_table(*F)) ++expect[row.size];
        ok &= profile(nc) == expect;
        int64_t total = 0;
        for (auto& orb : nc.orbits) total += orb.size;
        if (F->q() == 9) ok &= total == 1702;
    }
    detail = "10 orbits with the listed sizes at q = 9 (sum 1702) and q = 27";
    return ok;
}

bool criterion5(Workspace& w, std::string& detail) {
    bool ok = true;
    int checked = 0;
    for (auto* F : {&w.F9, &w.F27}) {
        for (auto& orb : w.census_j(*F).orbits) {
            ProjLine L = quartic_to_line(*F, orb.representative);
            Fq r = j_invariant(*F, orb.representative);
            int mu = rational_linear_count(factorization_type(*F, orb.representative));
            int64_t ne = count_points(*F, {r});
            ok &= line_plane_incidence(*F, L) == expected_plane_tally(*F, mu, ne);
            ok &= point_line_incidence(*F, L) == expected_point_tally(*F, mu, ne);
            ++checked;
        }
        for (auto& row : nongeneric_table(*F)) {
            ProjLine L = line_from_z(*F, row.z);
            ok &= line_plane_incidence(*F, L) == row.planes;
            ok &= point_line_incidence(*F, L) == row.points;
            ++checked;
        }
    }
    std::ostringstream os;
    os << "point and plane tallies exact on " << checked << " orbit representatives";
    detail = os.str();
    return ok;
}

bool criterion6(Workspace& w, std::string& detail) {
    bool ok = true;
    int64_t n9 = 0;
    for (auto& f : forms_with_nonzero_j(w.F9)) {
        ok &= verify_zeta_relation(w.F9, f).holds;
        ++n9;
    }
    ok &= n9 == 5760;
    int n27 = 0;
    for (auto& orb : w.census_j(w.F27).orbits) {
        ok &= verify_zeta_relation(w.F27, orb.representative).holds;
        ++n27;
    }
    for (auto& rep : table_form_reps(w.F27)) {
        if (rep.j == 0) continue;
        ok &= verify_zeta_relation(w.F27, rep.form).holds;
    }
    std::ostringstream os;
    os << "exhaustive on " << n9 << " forms at q = 9; " << n27 << " orbit representatives at q = 27";
    detail = os.str();
    return ok;
}

bool criterion7(Workspace& w, std::string& detail) {
    bool ok = true;
    for (auto* F : {&w.F9, &w.F27, &w.F81}) {
        const int q = F->q();
        for (Fq r = 1; r < q; ++r) {
            int64_t n = count_points(*F, {r});
            ok &= n % 3 == 0;
            ok &= (n - q - 1) * (n - q - 1) <= 4 * int64_t(q);
        }
    }
    detail = "#E_r = 0 mod 3 and Hasse bound for all r, q in {9, 27, 81}";
    return ok;
}

bool criterion8(Workspace& w, std::string& detail) {
    bool ok = true;
    for (auto* F : {&w.F9, &w.F27, &w.F81}) {
        const int q = F->q();
        int j4 = 0, j2 = 0, j1 = 0;
        for (Fq r = 1; r < q; ++r) {
            auto jc = classify_j(*F, r);
            j4 += jc == JClass::J4;
            j2 += jc == JClass::J2;
            j1 += jc == JClass::J1;
            auto t = factorization_type(*F, rep_E(*F, r));
            ok &= (jc == JClass::J4 && t == FactorizationType::F4) ||
                  (jc == JClass::J2 && t == FactorizationType::F2) ||
                  (jc == JClass::J1 && t == FactorizationType::F1);
        }
        ok &= j4 == (q - 3) / 6 && j2 == (q - 1) / 2 && j1 == q / 3 && j4 + j2 + j1 == q - 1;
    }
    detail = "partition sizes (q/3, (q-1)/2, (q-3)/6) and E_r type match at q in {9, 27, 81}";
    return ok;
}

bool criterion9(Workspace& w, std::string& detail) {
    bool ok = true;
    std::string notes;
    for (auto* F : {&w.F9, &w.F27}) {
        auto& census = (F->q() == 9) ? w.census9() : w.census27();
        auto reps = table_form_reps(*F);
        ok &= int(reps.size()) == 2 * F->q() + 2;
        std::set<int32_t> ids;
        for (auto& rep : reps) {
            ok &= factorization_type(*F, rep.form) == rep.type;
            int32_t id = census.orbit_index(form_key(*F, rep.form));
            ok &= id >= 0;
            ids.insert(id);
            auto hist = stabilizer_histogram_form(*F, rep.form);
            int64_t stab = 0;
            for (auto& [ord, n] : hist) stab += n;
            ok &= stab == rep.claimed_stab;
            ok &= hist == rep.claimed_hist;
            if (!rep.note.empty()) notes += rep.note + "; ";
        }
        ok &= int(ids.size()) == 2 * F->q() + 2;
        for (auto& t : table_line_reps(*F)) {
            ProjLine L = line_from_points(*F, t.row1, t.row2);
            BinaryForm f = line_to_quartic(*F, L);
            ok &= factorization_type(*F, f) == t.type && j_invariant(*F, f) == t.j;
            if (!t.note.empty()) notes += t.note + "; ";
        }
    }
    detail = "all representatives constructible, in distinct orbits, stabilizer orders and "
             "element-order histograms as claimed" +
             (notes.empty() ? std::string() : "; notes: " + notes);
    return ok;
}

bool criterion10(Workspace& w, std::string& detail) {
    bool ok = true;
    {
        auto& census = w.census9();
        std::map<int32_t, OrbitInvariant> by_orbit;
        std::map<OrbitInvariant, int32_t> by_inv;
        for (auto& f : w.universe9()) {
            int32_t id = census.orbit_index(form_key(w.F9, f));
            auto inv = canonical_invariant(w.F9, f);
            auto [it1, fresh1] = by_orbit.emplace(id, inv);
            if (!fresh1 && !(it1->second == inv)) ok = false;
            auto [it2, fresh2] = by_inv.emplace(inv, id);
            if (!fresh2 && it2->second != id) ok = false;
        }
        ok &= by_orbit.size() == 20 && by_inv.size() == 20;
    }
    {
        auto& census = w.census27();
        std::mt19937_64 rng(20260810);
        std::map<int32_t, OrbitInvariant> by_orbit;
        std::map<OrbitInvariant, int32_t> by_inv;
        for (int it = 0; it < 1000; ++it) {
            auto& f = w.universe27()[rng() % w.universe27().size()];
            int32_t id = census.orbit_index(form_key(w.F27, f));
            auto inv = canonical_invariant(w.F27, f);
            auto [it1, fresh1] = by_orbit.emplace(id, inv);
            if (!fresh1 && !(it1->second == inv)) ok = false;
            auto [it2, fresh2] = by_inv.emplace(inv, id);
            if (!fresh2 && it2->second != id) ok = false;
        }
    }
    detail = "(type, canonical lambda) partition = BFS partition: exhaustive at q = 9, 1000 samples at q = 27";
    return ok;
}

bool criterion11(Workspace& w, std::string& detail) {
    bool ok = true;
    for (auto* F : {&w.F9, &w.F27}) {
        const int64_t q = F->q();
        std::array<int64_t, 5> pt{}, pl{};
        for (auto& P : enumerate_points(*F)) ++pt[size_t(point_orbit(*F, P))];
        for (auto& pi : enumerate_planes(*F)) ++pl[size_t(plane_orbit(*F, pi))];
        ok &= pt == std::array<int64_t, 5>{q + 1, q + 1, q * q - 1, q * (q * q - 1) / 2, q * (q * q - 1) / 2};
        ok &= pl == std::array<int64_t, 5>{q + 1, q * (q + 1), q * (q * q - 1) / 6, q * (q * q - 1) / 2,
                                           q * (q * q - 1) / 3};
    }
    detail = "exhaustive point and plane class sizes at q in {9, 27}";
    return ok;
}

bool criterion12(Workspace& w, std::string& detail) {
    auto& F = w.F9;
    const int q = 9;
    std::mt19937_64 rng(4096);
    auto all = enumerate_lines(F);
    bool ok = true;
    int sampled = 0, pw_lines = 0;
    while (sampled < 120) {
        auto& L = all[rng() % all.size()];
        auto z = line_z(L);
        if (z[2] == 0) continue;
        ++sampled;
        Fq zi = F.inv1(z[2]);
        BinaryForm f = make_form(4, {F.mul1(zi, z[0]), F.mul1(zi, z[1]), 1, F.mul1(zi, z[3]), F.mul1(zi, z[4])});
        bool off_axis = !lines_meet(F, L, axis_line(F));
        pw_lines += off_axis;
        auto cube = [&](Fq x) { return F.mul1(F.mul1(x, x), x); };
        for (Fq u = 0; u <= q; ++u) {
            Fq s = (u == q) ? Fq(0) : Fq(1);
            Fq t = (u == q) ? Fq(1) : u;
            Fq fv = eval_form(F, f, s, t);
            ok &= cubic_discriminant(F, pencil_cubic(F, f, s, t)) == fv;
            if (off_axis) {
                Fq s3 = cube(s), t3 = cube(t);
                std::array<Fq, 4> wv{F.mul1(F.mul1(zi, L.p[2]), s3),
                                     F.add1(F.mul1(F.mul1(zi, L.p[4]), s3), F.mul1(F.mul1(zi, L.p[0]), t3)),
                                     F.add1(F.mul1(F.mul1(zi, L.p[5]), s3), F.mul1(F.mul1(zi, L.p[1]), t3)),
                                     F.mul1(F.mul1(zi, L.p[2]), t3)};
                Fq a = F.sub1(F.mul1(wv[2], wv[2]), F.mul1(wv[1], wv[3]));
                Fq b = F.sub1(F.mul1(wv[1], wv[2]), F.mul1(wv[0], wv[3]));
                Fq cc = F.sub1(F.mul1(wv[1], wv[1]), F.mul1(wv[0], wv[2]));
                ok &= F.sub1(F.mul1(b, b), F.mul1(a, cc)) == cube(fv);
            }
        }
    }
    std::ostringstream os;
    os << "both identities on " << sampled << " random lines (tangential identity on the " << pw_lines
       << " missing the axis), all (s,t)";
    detail = os.str();
    return ok;
}

}  // namespace

int main() {
    Workspace w;
    struct Entry {
        int num;
        const char* name;
        std::function<bool(Workspace&, std::string&)> run;
    };
    const std::vector<Entry> criteria{
        {1, "form census, q = 9", criterion1},
        {2, "form census, q = 27", criterion2},
        {3, "generic-line census and correspondence, q = 9", criterion3},
        {4, "non-generic line census, q in {9, 27}", criterion4},
        {5, "incidence tallies on all orbit representatives, q in {9, 27}", criterion5},
        {6, "zeta relation, exhaustive q = 9 and representatives q = 27", criterion6},
        {7, "elliptic divisibility and Hasse bound, q in {9, 27, 81}", criterion7},
        {8, "J-partition and E_r types, q in {9, 27, 81}", criterion8},
        {9, "representatives, stabilizers and generator matrices, q in {9, 27}", criterion9},
        {10, "invariant completeness vs BFS partition", criterion10},
        {11, "point and plane classifier partitions, q in {9, 27}", criterion11},
        {12, "pencil and tangential discriminant identities, q = 9", criterion12},
    };

    int failed = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(w, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s — %s (%.0f ms)\n", ok ? "PASS" : "FAIL", c.num, c.name,
                    detail.c_str(), ms);
        failed += !ok;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
