#include "pg3q/forms.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pg3q {

namespace {

// Dehomogenization p(u) = sum z_i u^i; finite roots are u = t/s, the root at
// infinity shows up as a degree drop.
std::vector<uint32_t> form_poly(const BinaryForm& f) {
    std::vector<uint32_t> p(f.z.begin(), f.z.begin() + f.degree + 1);
    return polyl::trim(std::move(p));
}

// p /= (u - r)^k maximally at the given level; returns the multiplicity k.
int strip_root(const FieldContext& F, int lv, std::vector<uint32_t>& p, uint32_t r) {
    int mult = 0;
    while (p.size() > 1) {
        std::vector<uint32_t> quot(p.size() - 1);
        uint32_t carry = 0;
        for (size_t i = p.size(); i-- > 1;) {
            carry = (i + 1 == p.size()) ? p[i] : F.radd(lv, p[i], F.rmul(lv, carry, r));
            quot[i - 1] = carry;
        }
        uint32_t rem = F.radd(lv, p[0], F.rmul(lv, carry, r));
        if (rem != 0) break;
        p = std::move(quot);
        ++mult;
    }
    return mult;
}

std::vector<uint32_t> lift_poly(const FieldContext& F, const std::vector<uint32_t>& p, int to_level) {
    std::vector<uint32_t> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = F.embed(F.make(1, p[i]), to_level).idx;
    return out;
}

std::vector<uint32_t> derivative(const FieldContext& F, int lv, const std::vector<uint32_t>& p) {
    std::vector<uint32_t> d;
    for (size_t i = 1; i < p.size(); ++i) {
        uint32_t acc = 0;
        for (size_t k = 0; k < i % 3; ++k) acc = F.radd(lv, acc, p[i]);
        d.push_back(acc);
    }
    return polyl::trim(std::move(d));
}

// exact quotient a / b (remainder must vanish)
std::vector<uint32_t> exact_div(const FieldContext& F, int lv, std::vector<uint32_t> a,
                                const std::vector<uint32_t>& b) {
    uint32_t li = F.rinv(lv, b.back());
    std::vector<uint32_t> quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        uint32_t c = F.rmul(lv, a.back(), li);
        size_t d = a.size() - b.size();
        quot[d] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + d] = F.rsub(lv, a[i + d], F.rmul(lv, c, b[i]));
        a = polyl::trim(std::move(a));
    }
    if (!a.empty()) throw std::logic_error("exact division left a remainder");
    return polyl::trim(std::move(quot));
}

}  // namespace

BinaryForm make_form(int degree, std::initializer_list<Fq> coeffs) {
    if (degree < 2 || degree > 4 || int(coeffs.size()) != degree + 1)
        throw std::invalid_argument("form degree/coefficient mismatch");
    BinaryForm f;
    f.degree = degree;
    std::copy(coeffs.begin(), coeffs.end(), f.z.begin());
    return f;
}

bool form_is_zero(const BinaryForm& f) {
    for (int i = 0; i <= f.degree; ++i)
        if (f.z[i]) return false;
    return true;
}

BinaryForm normalize_form(const FieldContext& F, const BinaryForm& f) {
    for (int i = 0; i <= f.degree; ++i) {
        if (f.z[i]) {
            Fq s = F.inv1(f.z[i]);
            BinaryForm out = f;
            for (int k = 0; k <= f.degree; ++k) out.z[k] = F.mul1(s, f.z[k]);
            return out;
        }
    }
    throw std::invalid_argument("zero form");
}

Fq eval_form(const FieldContext& F, const BinaryForm& f, Fq s, Fq t) {
    Fq acc = 0;
    Fq spow = 1;
    std::array<Fq, 5> tp{};
    tp[0] = 1;
    for (int i = 1; i <= f.degree; ++i) tp[i] = F.mul1(tp[i - 1], t);
    for (int i = f.degree; i >= 0; --i) {
        acc = F.add1(acc, F.mul1(f.z[i], F.mul1(spow, tp[i])));
        spow = F.mul1(spow, s);
    }
    return acc;
}

std::string form_to_string(const FieldContext& F, const BinaryForm& f) {
    (void)F;
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= f.degree; ++i) {
        if (!f.z[i]) continue;
        if (!first) os << " + ";
        first = false;
        int xs = f.degree - i;
        if (f.z[i] != 1 || (xs == 0 && i == 0)) os << unsigned(f.z[i]) << (xs || i ? "*" : "");
        if (xs > 0) os << "X" << (xs > 1 ? "^" + std::to_string(xs) : "");
        if (i > 0) os << "Y" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "0";
    return os.str();
}

BinaryForm act_on_form(const FieldContext& F, const GroupElement& g, const BinaryForm& f) {
    Fq det = group_det(F, g);
    if (det == 0) throw std::invalid_argument("singular matrix");
    const int n = f.degree;
    // rows k hold the coefficients of (dX - bY)^k and (aY - cX)^k
    std::array<std::array<Fq, 5>, 5> up{}, vp{};
    up[0][0] = 1;
    vp[0][0] = 1;
    const Fq u0 = g.d(), u1 = F.neg1(g.b());
    const Fq v0 = F.neg1(g.c()), v1 = g.a();
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i <= k; ++i) {
            Fq acc = 0;
            if (i <= k - 1) acc = F.add1(acc, F.mul1(up[k - 1][i], u0));
            if (i >= 1) acc = F.add1(acc, F.mul1(up[k - 1][i - 1], u1));
            up[k][i] = acc;
            acc = 0;
            if (i <= k - 1) acc = F.add1(acc, F.mul1(vp[k - 1][i], v0));
            if (i >= 1) acc = F.add1(acc, F.mul1(vp[k - 1][i - 1], v1));
            vp[k][i] = acc;
        }
    }
    BinaryForm out;
    out.degree = n;
    out.z.fill(0);
    for (int i = 0; i <= n; ++i) {
        if (!f.z[i]) continue;
        for (int a = 0; a <= n - i; ++a) {
            if (!up[n - i][a]) continue;
            Fq za = F.mul1(f.z[i], up[n - i][a]);
            for (int b = 0; b <= i; ++b)
                if (vp[i][b]) out.z[a + b] = F.add1(out.z[a + b], F.mul1(za, vp[i][b]));
        }
    }
    Fq dinv = F.inv1(F.pow1(det, n));
    for (int i = 0; i <= n; ++i) out.z[i] = F.mul1(dinv, out.z[i]);
    return out;
}

Fq discriminant(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 4) throw std::invalid_argument("discriminant requires a quartic");
    const Fq z0 = f.z[0], z1 = f.z[1], z2 = f.z[2], z3 = f.z[3], z4 = f.z[4];
    Fq A = F.sub1(F.mul1(z0, z4), F.mul1(z1, z3));
    Fq t1 = F.mul1(F.mul1(A, A), A);
    Fq t2 = F.mul1(F.mul1(A, A), F.mul1(z2, z2));
    Fq inner = F.sub1(F.add1(F.mul1(z0, F.mul1(z3, z3)), F.mul1(z4, F.mul1(z1, z1))), F.mul1(z0, F.mul1(z2, z4)));
    Fq t3 = F.mul1(F.mul1(F.mul1(z2, z2), z2), inner);
    return F.sub1(F.add1(t1, t2), t3);
}

Fq j_invariant(const FieldContext& F, const BinaryForm& f) {
    Fq d = discriminant(F, f);
    if (d == 0) throw std::domain_error("discriminant zero");
    Fq z2 = f.z[2];
    Fq z3 = F.mul1(F.mul1(z2, z2), z2);
    return F.div1(F.mul1(z3, z3), d);
}

const char* to_string(FactorizationType t) {
    switch (t) {
        case FactorizationType::F1: return "F1";
        case FactorizationType::F2: return "F2";
        case FactorizationType::F2p: return "F2'";
        case FactorizationType::F4: return "F4";
        case FactorizationType::F4p: return "F4'";
        case FactorizationType::F0: return "F0";
    }
    return "?";
}

int rational_linear_count(FactorizationType t) {
    switch (t) {
        case FactorizationType::F4: return 4;
        case FactorizationType::F2: return 2;
        case FactorizationType::F1: return 1;
        default: return 0;
    }
}

FactorizationType factorization_type(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 4) throw std::invalid_argument("factorization type requires a quartic");
    if (discriminant(F, f) == 0) return FactorizationType::F0;
    auto p = form_poly(f);
    for (Fq r = 0; r < F.q(); ++r) strip_root(F, 1, p, r);
    switch (p.size() - 1) {
        case 0: return FactorizationType::F4;
        case 2: return FactorizationType::F2;
        case 3: return FactorizationType::F1;
        case 4: {
            // two irreducible quadratics iff there is a root in F_{q^2}
            uint64_t q2 = uint64_t(F.q()) * F.q();
            auto t = polyl::powmod(F, 1, {0, 1}, q2, p);
            t.resize(std::max<size_t>(t.size(), 2), 0);
            t[1] = F.rsub(1, t[1], 1);
            auto g = polyl::gcd(F, 1, p, polyl::trim(std::move(t)));
            return g.size() > 1 ? FactorizationType::F4p : FactorizationType::F2p;
        }
        default: throw std::logic_error("impossible factor profile");
    }
}

ProjRoot proj_root(const FieldContext& F, int level, uint32_t s, uint32_t t) {
    if (s == 0 && t == 0) throw std::invalid_argument("zero point");
    if (s == 0) return {uint8_t(level), 0, 1};
    return {uint8_t(level), 1, F.rmul(level, t, F.rinv(level, s))};
}

ProjRoot root_frobenius(const FieldContext& F, const ProjRoot& p, int k) {
    return {p.level, F.frobenius({p.level, p.s}, k).idx, F.frobenius({p.level, p.t}, k).idx};
}

ProjRoot root_embed(const FieldContext& F, const ProjRoot& p, int level) {
    return {uint8_t(level), F.embed({p.level, p.s}, level).idx, F.embed({p.level, p.t}, level).idx};
}

ClosureRoots roots_over_closure(const FieldContext& F, const BinaryForm& f) {
    if (form_is_zero(f)) throw std::invalid_argument("zero form");
    auto p = form_poly(f);
    const int deg = f.degree;
    const int inf_mult = deg - int(p.size() - 1);

    std::vector<std::pair<ProjRoot, int>> found;
    if (inf_mult > 0) found.push_back({ProjRoot{1, 0, 1}, inf_mult});
    auto leftover = p;
    for (Fq r = 0; r < F.q(); ++r) {
        int mult = strip_root(F, 1, leftover, r);
        if (mult) found.push_back({ProjRoot{1, 1, r}, mult});
    }

    int level = 1;
    if (leftover.size() > 1) {
        // squarefree part; the leftover has no rational roots, so its
        // derivative cannot vanish identically for degrees up to 4
        auto hp = derivative(F, 1, leftover);
        auto g = hp.empty() ? std::vector<uint32_t>{} : polyl::gcd(F, 1, leftover, hp);
        auto hsf = (g.size() > 1) ? exact_div(F, 1, leftover, g) : leftover;

        // split off the part with roots in F_{q^2}
        uint64_t q2 = uint64_t(F.q()) * F.q();
        auto t = polyl::powmod(F, 1, {0, 1}, q2, hsf);
        t.resize(std::max<size_t>(t.size(), 2), 0);
        t[1] = F.rsub(1, t[1], 1);
        auto g2 = polyl::gcd(F, 1, hsf, polyl::trim(std::move(t)));
        std::vector<uint32_t> rest = hsf;
        if (g2.size() > 1) rest = exact_div(F, 1, hsf, g2);

        auto register_roots = [&](const std::vector<uint32_t>& factor, int lv) {
            auto lifted = lift_poly(F, leftover, lv);
            for (uint32_t r : polyl::roots(F, lv, lift_poly(F, factor, lv))) {
                auto tmp = lifted;
                int mult = strip_root(F, lv, tmp, r);
                if (mult == 0) throw std::logic_error("claimed root does not divide");
                found.push_back({ProjRoot{uint8_t(lv), 1, r}, mult});
                level = std::lcm(level, lv);
            }
        };
        if (g2.size() > 1) register_roots(g2, 2);
        if (rest.size() > 1) register_roots(rest, int(rest.size() - 1));
    }

    ClosureRoots out;
    out.level = level;
    int total = 0;
    for (auto& [r, mult] : found) {
        out.roots.push_back({root_embed(F, r, level), mult});
        total += mult;
    }
    if (total != deg) throw std::logic_error("root multiplicities do not sum to the degree");
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.s, a.first.t) < std::tie(b.first.s, b.first.t);
    });
    return out;
}

FieldElement cross_ratio(const FieldContext& F, const ProjRoot& p1, const ProjRoot& p2, const ProjRoot& p3,
                         const ProjRoot& p4) {
    const std::array<ProjRoot, 4> P{p1, p2, p3, p4};
    const int lv = p1.level;
    for (auto& p : P)
        if (p.level != lv) throw std::invalid_argument("cross-ratio points must share a level");
    auto det = [&](const ProjRoot& a, const ProjRoot& b) {
        return F.rsub(lv, F.rmul(lv, a.s, b.t), F.rmul(lv, b.s, a.t));
    };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (det(P[i], P[j]) == 0) throw std::domain_error("cross-ratio of coincident points");
    uint32_t num = F.rmul(lv, det(p1, p3), det(p2, p4));
    uint32_t den = F.rmul(lv, det(p2, p3), det(p1, p4));
    return {uint8_t(lv), F.rmul(lv, num, F.rinv(lv, den))};
}

FieldElement jmath(const FieldContext& F, FieldElement lam) {
    auto one = F.one(lam.level);
    auto num = F.pow(F.add(lam, one), 6);
    auto den = F.mul(F.pow(lam, 2), F.pow(F.sub(lam, one), 2));
    return F.div(num, den);
}

RestrictedOrderings restricted_orderings(const FieldContext& F, const BinaryForm& f) {
    FactorizationType type = factorization_type(F, f);
    if (type == FactorizationType::F0) throw std::domain_error("discriminant zero");
    auto cr = roots_over_closure(F, f);
    std::array<ProjRoot, 4> R;
    for (int i = 0; i < 4; ++i) R[i] = cr.roots[i].first;

    auto fixed = [&](const ProjRoot& p) { return root_frobenius(F, p) == p; };

    RestrictedOrderings out;
    out.level = cr.level;
    switch (type) {
        case FactorizationType::F4: {
            std::array<int, 4> ix{0, 1, 2, 3};
            do {
                out.orderings.push_back({R[ix[0]], R[ix[1]], R[ix[2]], R[ix[3]]});
            } while (std::next_permutation(ix.begin(), ix.end()));
            break;
        }
        case FactorizationType::F2: {
            std::vector<ProjRoot> rat, irr;
            for (auto& r : R) (fixed(r) ? rat : irr).push_back(r);
            if (rat.size() != 2) throw std::logic_error("F2 root pattern mismatch");
            for (auto [a, b] : {std::pair{rat[0], rat[1]}, {rat[1], rat[0]}})
                for (auto& s : irr) out.orderings.push_back({a, b, s, root_frobenius(F, s)});
            break;
        }
        case FactorizationType::F1: {
            std::vector<ProjRoot> rat, irr;
            for (auto& r : R) (fixed(r) ? rat : irr).push_back(r);
            if (rat.size() != 1) throw std::logic_error("F1 root pattern mismatch");
            for (auto& s : irr)
                out.orderings.push_back({rat[0], s, root_frobenius(F, s), root_frobenius(F, s, 2)});
            break;
        }
        case FactorizationType::F4p: {
            std::vector<ProjRoot> rem(R.begin(), R.end());
            std::array<std::array<ProjRoot, 2>, 2> pairs{};
            for (int k = 0; k < 2; ++k) {
                ProjRoot a = rem.front();
                ProjRoot fa = root_frobenius(F, a);
                pairs[k] = {a, fa};
                rem.erase(std::remove(rem.begin(), rem.end(), a), rem.end());
                rem.erase(std::remove(rem.begin(), rem.end(), fa), rem.end());
            }
            for (int po = 0; po < 2; ++po)
                for (auto& x : pairs[po])
                    for (auto& y : pairs[1 - po])
                        out.orderings.push_back({x, root_frobenius(F, x), y, root_frobenius(F, y)});
            break;
        }
        case FactorizationType::F2p: {
            for (auto& x : R)
                out.orderings.push_back({x, root_frobenius(F, x, 2), root_frobenius(F, x), root_frobenius(F, x, 3)});
            break;
        }
        case FactorizationType::F0:;
    }
    return out;
}

namespace {
int natural_level(FactorizationType t) {
    switch (t) {
        case FactorizationType::F4:
        case FactorizationType::F4p: return 1;
        case FactorizationType::F2:
        case FactorizationType::F2p: return 2;
        case FactorizationType::F1: return 3;
        default: throw std::domain_error("discriminant zero");
    }
}
}  // namespace

LambdaClass lambda_class(const FieldContext& F, const BinaryForm& f) {
    LambdaClass out;
    out.type = factorization_type(F, f);
    auto ords = restricted_orderings(F, f);
    const int nat = natural_level(out.type);
    std::vector<FieldElement> lams;
    for (auto& o : ords.orderings) {
        FieldElement lam = cross_ratio(F, o[0], o[1], o[2], o[3]);
        auto down = F.project(lam, nat);
        if (!down) throw std::logic_error("cross-ratio missed its natural subfield");
        lams.push_back(*down);
    }
    std::sort(lams.begin(), lams.end());
    lams.erase(std::unique(lams.begin(), lams.end()), lams.end());
    out.orbit = std::move(lams);
    out.canonical = out.orbit.front();
    return out;
}

OrbitInvariant canonical_invariant(const FieldContext& F, const BinaryForm& f) {
    auto lc = lambda_class(F, f);
    return {lc.type, lc.canonical};
}

JClass classify_j(const FieldContext& F, Fq r) {
    if (r == 0) throw std::domain_error("j class undefined at zero");
    if (!F.is_square1(r)) return JClass::J2;
    Fq s = *F.sqrt1(r);
    return F.trace_to_prime(F.inv1(s)) == 0 ? JClass::J4 : JClass::J1;
}

BinaryForm rep_E(const FieldContext& F, Fq r) {
    if (r == 0) throw std::invalid_argument("r must be nonzero");
    return make_form(4, {F.inv1(r), 0, F.neg1(1), 1, 0});
}

std::vector<J0Rep> j0_representatives(const FieldContext& F) {
    std::vector<J0Rep> out;
    const Fq eps = F.epsilon();
    out.push_back({FactorizationType::F4, make_form(4, {0, F.neg1(1), 0, 1, 0})});
    out.push_back({FactorizationType::F2, make_form(4, {0, F.neg1(eps), 0, 1, 0})});
    Fq r0 = 0;
    for (Fq r = 1; r < F.q(); ++r)
        if (F.trace_to_prime(r) != 0) {
            r0 = r;
            break;
        }
    out.push_back({FactorizationType::F1, make_form(4, {F.neg1(r0), F.neg1(1), 0, 1, 0})});
    FieldElement alpha = F.zero(2);
    for (uint32_t a = 1; a < F.level_size(2); ++a) {
        if (F.norm({2, a}, 1).idx == eps) {
            alpha = {2, a};
            break;
        }
    }
    Fq T = Fq(F.trace(alpha, 1).idx);
    Fq eps2 = F.mul1(eps, eps);
    out.push_back({FactorizationType::F4p, make_form(4, {F.neg1(eps2), F.mul1(eps, T), 0, F.neg1(T), 1})});
    if (F.q() % 4 == 1)
        out.push_back({FactorizationType::F2p, make_form(4, {F.neg1(F.gamma()), 0, 0, 0, 1})});
    else
        out.push_back({FactorizationType::F2p, make_form(4, {F.neg1(1), 1, 0, 0, 1})});
    return out;
}

std::vector<Fq> lambda_classes_N4(const FieldContext& F) {
    std::vector<Fq> out;
    const Fq minus1 = F.neg1(1);
    for (Fq lam = 2; lam < F.q(); ++lam) {
        if (lam == minus1) continue;
        if (std::min(lam, F.inv1(lam)) == lam) out.push_back(lam);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FieldElement> lambda_classes_N2(const FieldContext& F) {
    std::vector<FieldElement> out;
    const uint32_t minus1 = F.embed(F.from_base(F.neg1(1)), 2).idx;
    for (uint32_t lam = 2; lam < F.level_size(2); ++lam) {
        if (lam == minus1) continue;
        if (F.rpow(2, lam, F.q() + 1) != 1) continue;
        if (std::min(lam, F.rinv(2, lam)) == lam) out.push_back({2, lam});
    }
    std::sort(out.begin(), out.end());
    return out;
}

PsiRep rep_psi(const FieldContext& F, Fq lambda_rep) {
    const Fq eps = F.epsilon();
    auto s = F.sqrt(F.embed(F.from_base(eps), 2));
    if (!s) throw std::logic_error("eps has no square root at level 2");
    const FieldElement target = F.from_base(lambda_rep);
    for (uint32_t a = 0; a < F.level_size(2); ++a) {
        FieldElement alpha{2, a};
        FieldElement den = F.add(alpha, *s);
        if (den.idx == 0) continue;
        FieldElement w = F.div(F.sub(alpha, *s), den);
        if (w.idx == 0) continue;
        auto nval = F.project(F.mul(w, F.frobenius(w)), 1);
        if (!nval || !(*nval == target)) continue;
        Fq T = Fq(F.trace(alpha, 1).idx);
        Fq N = Fq(F.norm(alpha, 1).idx);
        BinaryForm f = make_form(4, {F.neg1(F.mul1(eps, N)), F.mul1(eps, T), F.sub1(N, eps), F.neg1(T), 1});
        if (discriminant(F, f) == 0) continue;
        if (factorization_type(F, f) != FactorizationType::F4p) continue;
        if (lambda_class(F, f).canonical.idx != std::min(lambda_rep, F.inv1(lambda_rep))) continue;
        return {normalize_form(F, f), alpha};
    }
    throw std::logic_error("no alpha found for the requested lambda class");
}

namespace {

bool upsilon_validate(const FieldContext& F, const BinaryForm& f, FieldElement lambda_rep) {
    if (discriminant(F, f) == 0) return false;
    if (factorization_type(F, f) != FactorizationType::F2p) return false;
    FieldElement canon = std::min(lambda_rep, F.inv(lambda_rep));
    return lambda_class(F, f).canonical == canon;
}

std::optional<BinaryForm> upsilon_closed_form(const FieldContext& F, Fq r) {
    const Fq gam = F.gamma();
    if (F.q() % 4 == 1) {
        if (r == 0) return std::nullopt;
        Fq r2 = F.mul1(r, r);
        if (F.is_square1(F.mul1(F.epsilon(), r))) {
            auto sgr = F.sqrt1(F.mul1(gam, r));
            if (!sgr) return std::nullopt;
            return make_form(4, {F.sub1(r2, gam), F.neg1(*sgr), r, 0, 1});
        }
        if (F.is_square1(r)) {
            Fq g2 = F.mul1(gam, gam);
            return make_form(4, {F.mul1(g2, F.sub1(r2, gam)), F.neg1(F.mul1(g2, *F.sqrt1(r))), F.mul1(gam, r), 0, 1});
        }
        return std::nullopt;
    }
    if (r == F.neg1(1)) return std::nullopt;
    Fq z0 = F.sub1(F.add1(F.mul1(r, r), r), 1);
    if (r != 0 && F.is_square1(r))
        return make_form(4, {z0, F.neg1(*F.sqrt1(r)), F.neg1(F.add1(r, 1)), 0, 1});
    auto snr = F.sqrt1(F.neg1(r));
    if (!snr) return std::nullopt;
    return make_form(4, {z0, F.neg1(*snr), F.add1(r, 1), 0, 1});
}

}  // namespace

UpsilonRep rep_upsilon(const FieldContext& F, FieldElement lambda_rep) {
    if (lambda_rep.level != 2) throw std::invalid_argument("lambda class representative must live at level 2");
    const FieldElement one2 = F.one(2);

    std::vector<FieldElement> mults;
    if (F.q() % 4 == 1) {
        auto i1 = F.sqrt1(F.neg1(1));
        if (!i1) throw std::logic_error("q = 1 mod 4 but -1 is not a square");
        auto sg = F.sqrt(F.embed(F.from_base(F.gamma()), 2));
        if (!sg) throw std::logic_error("gamma has no square root at level 2");
        FieldElement base = F.mul(F.embed(F.from_base(*i1), 2), *sg);
        mults = {base, F.neg(base)};
    } else {
        auto i2 = F.sqrt(F.embed(F.from_base(F.neg1(1)), 2));
        if (!i2) throw std::logic_error("-1 has no square root at level 2");
        mults = {*i2, F.neg(*i2)};
    }

    for (auto& mu : mults) {
        FieldElement rr;
        if (F.q() % 4 == 1)
            rr = F.mul(mu, F.div(F.add(lambda_rep, one2), F.sub(lambda_rep, one2)));
        else
            rr = F.add(F.neg(one2), F.mul(mu, F.div(F.add(lambda_rep, one2), F.sub(one2, lambda_rep))));
        auto pr = F.project(rr, 1);
        if (!pr) continue;
        Fq r = Fq(pr->idx);
        auto f = upsilon_closed_form(F, r);
        if (!f) continue;
        if (upsilon_validate(F, *f, lambda_rep)) return {normalize_form(F, *f), r, false, ""};
    }

    // deterministic fallback scan; reported, never silent
    UpsilonRep out;
    out.used_fallback = true;
    out.note = "closed-form upsilon family failed validation; representative located by scan";
    const uint64_t q = F.q();
    for (uint64_t key = 0; key < q * q * q * q; ++key) {
        BinaryForm f;
        f.degree = 4;
        uint64_t t = key;
        for (int i = 0; i < 4; ++i) {
            f.z[i] = Fq(t % q);
            t /= q;
        }
        f.z[4] = 1;
        if (f.z[2] == 0) continue;
        if (discriminant(F, f) == 0) continue;
        if (factorization_type(F, f) != FactorizationType::F2p) continue;
        if (upsilon_validate(F, f, lambda_rep)) {
            out.form = normalize_form(F, f);
            return out;
        }
    }
    throw std::logic_error("no F2' form found for the requested lambda class");
}

}  // namespace pg3q
