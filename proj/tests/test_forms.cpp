#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "pg3q/forms.hpp"

using namespace pg3q;

namespace {

GroupElement random_group(const FieldContext& F, std::mt19937& rng) {
    for (;;) {
        std::array<Fq, 4> g;
        for (auto& x : g) x = Fq(rng() % F.q());
        if (F.sub1(F.mul1(g[0], g[3]), F.mul1(g[1], g[2])) != 0) return group_normalize(F, g);
    }
}

BinaryForm random_nonzero_form(const FieldContext& F, std::mt19937& rng) {
    for (;;) {
        BinaryForm f;
        f.degree = 4;
        for (int i = 0; i <= 4; ++i) f.z[i] = Fq(rng() % F.q());
        if (!form_is_zero(f)) return f;
    }
}

}  // namespace

TEST_CASE("action basics") {
    FieldContext F(9);
    std::mt19937 rng(23);
    BinaryForm x4 = make_form(4, {1, 0, 0, 0, 0});
    CHECK(act_on_form(F, group_identity(), x4) == x4);
    // diagonal matrices fix X^4 projectively
    GroupElement d = group_make(F, 1, 0, 0, 5);
    CHECK(normalize_form(F, act_on_form(F, d, x4)) == x4);
    // (gh) f = g (h f) on random triples
    for (int i = 0; i < 100; ++i) {
        GroupElement g = random_group(F, rng), h = random_group(F, rng);
        BinaryForm f = random_nonzero_form(F, rng);
        auto lhs = normalize_form(F, act_on_form(F, group_compose(F, g, h), f));
        auto rhs = normalize_form(F, act_on_form(F, g, act_on_form(F, h, f)));
        CHECK(lhs == rhs);
    }
    // z2 transforms by det^-2
    for (int i = 0; i < 100; ++i) {
        GroupElement g = random_group(F, rng);
        BinaryForm f = random_nonzero_form(F, rng);
        Fq det = group_det(F, g);
        CHECK(act_on_form(F, g, f).z[2] == F.mul1(F.inv1(F.mul1(det, det)), f.z[2]));
    }
}

TEST_CASE("discriminant and j on pinned examples") {
    FieldContext F(9);
    // X^2 Y^2 has repeated factors
    CHECK(discriminant(F, make_form(4, {0, 0, 1, 0, 0})) == 0);
    // XY(Y^2 - X^2) = XY^3 - X^3 Y
    BinaryForm f = make_form(4, {0, F.neg1(1), 0, 1, 0});
    CHECK(discriminant(F, f) == 1);
    CHECK(j_invariant(F, f) == 0);
    // E_r: disc = 1/r, j = r
    for (Fq r = 1; r < 9; ++r) {
        CHECK(discriminant(F, rep_E(F, r)) == F.inv1(r));
        CHECK(j_invariant(F, rep_E(F, r)) == r);
    }
    CHECK_THROWS_AS(j_invariant(F, make_form(4, {0, 0, 1, 0, 0})), std::domain_error);
    // j is G-invariant
    std::mt19937 rng(29);
    int done = 0;
    while (done < 100) {
        BinaryForm g4 = random_nonzero_form(F, rng);
        if (discriminant(F, g4) == 0) continue;
        GroupElement g = random_group(F, rng);
        CHECK(j_invariant(F, act_on_form(F, g, g4)) == j_invariant(F, g4));
        ++done;
    }
}

TEST_CASE("factorization types of pinned forms") {
    FieldContext F(9);
    const Fq eps = F.epsilon();
    CHECK(factorization_type(F, make_form(4, {0, F.neg1(1), 0, 1, 0})) == FactorizationType::F4);
    CHECK(factorization_type(F, make_form(4, {0, F.neg1(eps), 0, 1, 0})) == FactorizationType::F2);
    CHECK(factorization_type(F, make_form(4, {0, 0, 1, 0, 0})) == FactorizationType::F0);
    for (Fq r = 1; r < 9; ++r) {
        auto jc = classify_j(F, r);
        auto ft = factorization_type(F, rep_E(F, r));
        FactorizationType expect = jc == JClass::J1   ? FactorizationType::F1
                                   : jc == JClass::J2 ? FactorizationType::F2
                                                      : FactorizationType::F4;
        CHECK(ft == expect);
    }
}

TEST_CASE("roots over the closure") {
    FieldContext F(9);
    // X^4 -> infinity with multiplicity 4 ; Y^4 -> 0 with multiplicity 4
    auto rx = roots_over_closure(F, make_form(4, {1, 0, 0, 0, 0}));
    REQUIRE(rx.roots.size() == 1);
    CHECK(rx.roots[0].first == ProjRoot{1, 0, 1});
    CHECK(rx.roots[0].second == 4);
    auto ry = roots_over_closure(F, make_form(4, {0, 0, 0, 0, 1}));
    REQUIRE(ry.roots.size() == 1);
    CHECK(ry.roots[0].first == ProjRoot{1, 1, 0});
    CHECK(ry.roots[0].second == 4);
    // X^3 Y: infinity three times, zero once
    auto rxy = roots_over_closure(F, make_form(4, {0, 1, 0, 0, 0}));
    REQUIRE(rxy.roots.size() == 2);
    CHECK(rxy.roots[0] == std::pair<ProjRoot, int>{ProjRoot{1, 0, 1}, 3});
    CHECK(rxy.roots[1] == std::pair<ProjRoot, int>{ProjRoot{1, 1, 0}, 1});
    // XY(Y^2 - X^2): {inf, 0, 1, -1}
    auto r4 = roots_over_closure(F, make_form(4, {0, F.neg1(1), 0, 1, 0}));
    REQUIRE(r4.roots.size() == 4);
    std::set<std::pair<uint32_t, uint32_t>> got;
    for (auto& [p, m] : r4.roots) {
        CHECK(m == 1);
        got.insert({p.s, p.t});
    }
    CHECK(got == std::set<std::pair<uint32_t, uint32_t>>{{0, 1}, {1, 0}, {1, 1}, {1, F.neg1(1)}});
    // evaluation vanishes at every reported root, all levels, incl. multiplicities
    std::mt19937 rng(31);
    for (int it = 0; it < 300; ++it) {
        BinaryForm f = random_nonzero_form(F, rng);
        auto cr = roots_over_closure(F, f);
        int lv = cr.level;
        int total = 0;
        for (auto& [p, mult] : cr.roots) {
            total += mult;
            uint32_t acc = 0;
            for (int i = 0; i <= 4; ++i) {
                uint32_t term = F.embed(F.from_base(f.z[i]), lv).idx;
                term = F.rmul(lv, term, F.rpow(lv, p.s, 4 - i));
                term = F.rmul(lv, term, F.rpow(lv, p.t, i));
                acc = F.radd(lv, acc, term);
            }
            CHECK(acc == 0);
        }
        CHECK(total == 4);
    }
    CHECK_THROWS_AS(roots_over_closure(F, BinaryForm{}), std::invalid_argument);
}

TEST_CASE("cross-ratio basics") {
    FieldContext F(9);
    // (inf, 0; 1, x) = x
    ProjRoot inf{1, 0, 1}, zero{1, 1, 0}, one{1, 1, 1};
    for (Fq x = 2; x < 9; ++x) {
        ProjRoot px{1, 1, x};
        CHECK(cross_ratio(F, inf, zero, one, px) == F.from_base(x));
        // swapping both pairs preserves lambda
        CHECK(cross_ratio(F, zero, inf, px, one) == F.from_base(x));
        // swapping one pair inverts lambda
        CHECK(cross_ratio(F, zero, inf, one, px) == F.inv(F.from_base(x)));
    }
    CHECK_THROWS_AS(cross_ratio(F, inf, inf, zero, one), std::domain_error);
    // invariance under simultaneous projective maps
    std::mt19937 rng(37);
    for (int it = 0; it < 100; ++it) {
        GroupElement g = random_group(F, rng);
        std::set<Fq> pts;
        while (pts.size() < 4) pts.insert(Fq(rng() % 9));
        std::vector<ProjRoot> P;
        for (Fq t : pts) P.push_back({1, 1, t});
        auto mob = [&](const ProjRoot& p) {
            Fq s2 = F.add1(F.mul1(g.a(), p.s), F.mul1(g.b(), p.t));
            Fq t2 = F.add1(F.mul1(g.c(), p.s), F.mul1(g.d(), p.t));
            return proj_root(F, 1, s2, t2);
        };
        CHECK(cross_ratio(F, P[0], P[1], P[2], P[3]) ==
              cross_ratio(F, mob(P[0]), mob(P[1]), mob(P[2]), mob(P[3])));
    }
}

TEST_CASE("restricted orderings have the advertised sizes") {
    FieldContext F(9);
    std::map<FactorizationType, size_t> expected{{FactorizationType::F4, 24},
                                                 {FactorizationType::F2, 4},
                                                 {FactorizationType::F1, 3},
                                                 {FactorizationType::F4p, 8},
                                                 {FactorizationType::F2p, 4}};
    std::mt19937 rng(41);
    std::map<FactorizationType, int> seen;
    while (seen.size() < 5 || std::any_of(seen.begin(), seen.end(), [](auto& kv) { return kv.second < 5; })) {
        BinaryForm f = random_nonzero_form(F, rng);
        if (discriminant(F, f) == 0) continue;
        auto t = factorization_type(F, f);
        auto ords = restricted_orderings(F, f);
        CHECK(ords.orderings.size() == expected[t]);
        ++seen[t];
    }
    CHECK_THROWS_AS(restricted_orderings(F, make_form(4, {0, 0, 1, 0, 0})), std::domain_error);
}

TEST_CASE("lambda classes: membership, sizes, j compatibility") {
    FieldContext F(9);
    const int q = F.q();
    std::mt19937 rng(43);
    std::map<FactorizationType, size_t> hsize{{FactorizationType::F4, 6},
                                              {FactorizationType::F2, 2},
                                              {FactorizationType::F1, 3},
                                              {FactorizationType::F4p, 2},
                                              {FactorizationType::F2p, 2}};
    int checked = 0;
    while (checked < 400) {
        BinaryForm f = random_nonzero_form(F, rng);
        if (discriminant(F, f) == 0) continue;
        ++checked;
        auto lc = lambda_class(F, f);
        Fq j = j_invariant(F, f);
        if (j == 0) {
            CHECK(lc.orbit.size() == 1);
            CHECK(lc.canonical == F.neg(F.one(lc.canonical.level)));
        } else {
            CHECK(lc.orbit.size() == hsize[lc.type]);
        }
        for (auto& lam : lc.orbit) {
            // j(f) = jmath(lambda)
            auto jm = F.project(jmath(F, lam), 1);
            REQUIRE(jm.has_value());
            CHECK(Fq(jm->idx) == j);
            // membership in the N-set of the type
            switch (lc.type) {
                case FactorizationType::F4:
                case FactorizationType::F4p:
                    CHECK(lam.level == 1);
                    CHECK(lam.idx != 0);
                    CHECK(lam.idx != 1);
                    break;
                case FactorizationType::F2:
                case FactorizationType::F2p:
                    CHECK(lam.level == 2);
                    CHECK(F.rpow(2, lam.idx, q + 1) == 1);
                    CHECK(lam.idx != 1);
                    break;
                case FactorizationType::F1: {
                    CHECK(lam.level == 3);
                    auto v = F.radd(3, F.rsub(3, F.rpow(3, lam.idx, q + 1), F.rpow(3, lam.idx, q)), 1);
                    CHECK(v == 0);
                    break;
                }
                default: FAIL("unexpected type");
            }
        }
    }
}

TEST_CASE("J partition at q in {9, 27}") {
    for (int q : {9, 27}) {
        FieldContext F(q);
        std::map<JClass, int> count;
        for (Fq r = 1; r < q; ++r) ++count[classify_j(F, r)];
        CHECK(count[JClass::J4] == (q - 3) / 6);
        CHECK(count[JClass::J2] == (q - 1) / 2);
        CHECK(count[JClass::J1] == q / 3);
        CHECK(classify_j(F, F.epsilon()) == JClass::J2);
        CHECK_THROWS_AS(classify_j(F, 0), std::domain_error);
        // sign of the square root does not matter: Tr(x) = 0 iff Tr(-x) = 0
        for (Fq x = 0; x < q; ++x)
            CHECK((F.trace_to_prime(x) == 0) == (F.trace_to_prime(F.neg1(x)) == 0));
    }
}

TEST_CASE("representatives: E_r line coordinates and j0 set") {
    FieldContext F(9);
    for (Fq r = 1; r < 9; ++r) {
        BinaryForm e = rep_E(F, r);
        CHECK(e.z[0] == F.inv1(r));
        CHECK(e.z[2] == F.neg1(1));
        CHECK(e.z[3] == 1);
    }
    auto j0 = j0_representatives(F);
    REQUIRE(j0.size() == 5);
    std::set<FactorizationType> types;
    for (auto& [t, f] : j0) {
        CHECK(discriminant(F, f) != 0);
        CHECK(j_invariant(F, f) == 0);
        CHECK(factorization_type(F, f) == t);
        types.insert(t);
    }
    CHECK(types.size() == 5);
}

TEST_CASE("psi and upsilon representatives cover their lambda classes") {
    for (int q : {9, 27}) {
        FieldContext F(q);
        auto n4 = lambda_classes_N4(F);
        CHECK(int(n4.size()) == (q - 3) / 2);
        std::set<OrbitInvariant> invs;
        for (Fq lam : n4) {
            auto rep = rep_psi(F, lam);
            CHECK(factorization_type(F, rep.form) == FactorizationType::F4p);
            CHECK(classify_j(F, j_invariant(F, rep.form)) == JClass::J4);
            CHECK(F.norm(rep.alpha, 1).idx != 0);
            invs.insert(canonical_invariant(F, rep.form));
        }
        CHECK(invs.size() == n4.size());

        auto n2 = lambda_classes_N2(F);
        CHECK(int(n2.size()) == (q - 1) / 2);
        std::set<Fq> jvals;
        for (auto lam : n2) {
            auto rep = rep_upsilon(F, lam);
            CHECK(!rep.used_fallback);
            CHECK(factorization_type(F, rep.form) == FactorizationType::F2p);
            Fq j = j_invariant(F, rep.form);
            CHECK(classify_j(F, j) == JClass::J2);
            jvals.insert(j);
        }
        CHECK(int(jvals.size()) == (q - 1) / 2);
    }
}
