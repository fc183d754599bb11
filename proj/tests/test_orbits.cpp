#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "pg3q/orbits.hpp"

using namespace pg3q;

TEST_CASE("group enumeration") {
    FieldContext F(9);
    auto G = enumerate_group(F);
    CHECK(G.size() == 720);
    CHECK(std::set<GroupElement>(G.begin(), G.end()).size() == 720);
    CHECK(std::count(G.begin(), G.end(), group_identity()) == 1);
    FieldContext F27(27);
    CHECK(enumerate_group(F27).size() == 19656);
    // composition is associative on a sample, and generators generate
    std::mt19937 rng(73);
    for (int it = 0; it < 200; ++it) {
        auto& a = G[rng() % G.size()];
        auto& b = G[rng() % G.size()];
        auto& c = G[rng() % G.size()];
        CHECK(group_compose(F, group_compose(F, a, b), c) == group_compose(F, a, group_compose(F, b, c)));
        CHECK(group_compose(F, a, group_inverse(F, a)) == group_identity());
    }
    std::set<GroupElement> closure{group_identity()};
    std::vector<GroupElement> frontier{group_identity()};
    auto gens = group_generators(F);
    while (!frontier.empty()) {
        auto g = frontier.back();
        frontier.pop_back();
        for (auto& h : gens) {
            auto gh = group_compose(F, g, h);
            if (closure.insert(gh).second) frontier.push_back(gh);
        }
    }
    CHECK(closure.size() == 720);
}

TEST_CASE("form census at q = 9 matches the orbit table") {
    FieldContext F(9);
    const int64_t G = group_order(F);
    auto universe = forms_with_nonzero_disc(F);
    CHECK(universe.size() == 6480);
    auto census = decompose_forms(F, universe);
    CHECK(census.orbits.size() == 20);
    std::multiset<int64_t> sizes;
    int64_t total = 0;
    for (auto& orb : census.orbits) {
        sizes.insert(orb.size);
        total += orb.size;
        CHECK(G % orb.size == 0);
    }
    CHECK(total == 6480);
    std::multiset<int64_t> expect{720, 720, 720, 360, 360, 360, 360, 360, 360, 360,
                                  360, 180, 180, 180, 180, 240, 180, 180, 90, 30};
    CHECK(sizes == expect);

    // invariants are constant on sampled orbit members and separate the orbits
    std::mt19937 rng(79);
    std::map<int32_t, OrbitInvariant> inv;
    for (auto& f : universe) {
        if (rng() % 37) continue;
        int32_t id = census.orbit_index(form_key(F, f));
        auto ci = canonical_invariant(F, f);
        auto [it, fresh] = inv.emplace(id, ci);
        if (!fresh) CHECK(it->second == ci);
    }
    std::set<OrbitInvariant> distinct;
    for (auto& [id, ci] : inv) distinct.insert(ci);
    CHECK(distinct.size() == inv.size());
}

TEST_CASE("zero-discriminant census at q = 9") {
    FieldContext F(9);
    auto universe = forms_with_zero_disc(F);
    CHECK(universe.size() == 901);
    auto census = decompose_forms(F, universe);
    std::multiset<int64_t> sizes;
    for (auto& orb : census.orbits) sizes.insert(orb.size);
    CHECK(sizes == std::multiset<int64_t>{10, 36, 45, 90, 360, 360});
}

TEST_CASE("stabilizer orders and histograms of table representatives") {
    FieldContext F(9);
    const int64_t G = group_order(F);
    auto universe = forms_with_nonzero_disc(F);
    auto census = decompose_forms(F, universe);
    for (Fq r = 1; r < 9; ++r) {
        BinaryForm f = rep_E(F, r);
        int64_t stab = stabilizer_order_form(F, f);
        int64_t size = census.orbits[census.orbit_index(form_key(F, normalize_form(F, f)))].size;
        CHECK(stab * size == G);
        switch (classify_j(F, r)) {
            case JClass::J4: {
                CHECK(stab == 4);
                auto h = stabilizer_histogram_form(F, f);
                CHECK(h == std::map<int, int>{{1, 1}, {2, 3}});  // Z/2 x Z/2
                break;
            }
            case JClass::J2: CHECK(stab == 2); break;
            case JClass::J1: CHECK(stab == 1); break;
        }
    }
    // XY(Y^2 - X^2): stabilizer S_4
    BinaryForm s4form = make_form(4, {0, F.neg1(1), 0, 1, 0});
    CHECK(stabilizer_order_form(F, s4form) == 24);
    CHECK(stabilizer_histogram_form(F, s4form) == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
}

TEST_CASE("line censuses at q = 9 and correspondence with forms") {
    FieldContext F(9);
    auto all = enumerate_lines(F);
    std::vector<ProjLine> generic, nongeneric;
    for (auto& L : all) (is_generic(F, L) ? generic : nongeneric).push_back(L);
    CHECK(generic.size() == 5760);
    CHECK(nongeneric.size() == 1702);

    auto gcensus = decompose_lines(F, generic);
    CHECK(gcensus.orbits.size() == 15);
    std::map<int64_t, int> profile;
    for (auto& orb : gcensus.orbits) ++profile[orb.size];
    CHECK(profile == std::map<int64_t, int>{{720, 3}, {360, 8}, {180, 4}});

    auto ncensus = decompose_lines(F, nongeneric);
    CHECK(ncensus.orbits.size() == 10);
    std::multiset<int64_t> nsizes;
    for (auto& orb : ncensus.orbits) nsizes.insert(orb.size);
    CHECK(nsizes == std::multiset<int64_t>{1, 10, 90, 40, 40, 720, 45, 36, 360, 360});

    // the correspondence maps line orbits to form orbits bijectively, sizes intact
    auto funiverse = forms_with_nonzero_j(F);
    auto fcensus = decompose_forms(F, funiverse);
    std::map<int32_t, int32_t> pairing;
    for (auto& orb : gcensus.orbits) {
        auto f = line_to_quartic(F, orb.representative);
        int32_t fid = fcensus.orbit_index(form_key(F, f));
        REQUIRE(fid >= 0);
        CHECK(!pairing.count(fid));
        pairing[fid] = 1;
        CHECK(fcensus.orbits[fid].size == orb.size);
    }
    CHECK(pairing.size() == 15);
}
