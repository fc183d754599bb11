#include "pg3q/elliptic.hpp"

#include <stdexcept>

namespace pg3q {

int64_t count_points(const FieldContext& F, const EllipticCurve& E) {
    if (E.r == 0) throw std::invalid_argument("r must be nonzero");
    const Fq rinv = F.inv1(E.r);
    int64_t n = 1;  // point at infinity
    for (Fq t = 0; t < F.q(); ++t) {
        Fq rhs = F.sub1(F.add1(F.mul1(F.mul1(t, t), t), F.mul1(t, t)), rinv);
        if (rhs == 0)
            n += 1;
        else if (F.is_square1(rhs))
            n += 2;
    }
    return n;
}

int64_t zeta(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 4) throw std::invalid_argument("expected a quartic");
    if (f.z[2] == 0) throw std::domain_error("zeta requires z2 != 0");
    Fq s = F.inv1(f.z[2]);
    BinaryForm fn = f;
    for (int i = 0; i <= 4; ++i) fn.z[i] = F.mul1(s, f.z[i]);
    int64_t n = 0;
    auto tally = [&](Fq x, Fq y) {
        Fq v = eval_form(F, fn, x, y);
        if (v != 0 && F.is_square1(v)) ++n;
    };
    for (Fq u = 0; u < F.q(); ++u) tally(1, u);
    tally(0, 1);
    return n;
}

ZetaCheck verify_zeta_relation(const FieldContext& F, const BinaryForm& f) {
    ZetaCheck out;
    Fq j = j_invariant(F, f);
    if (j == 0) throw std::domain_error("zeta relation requires j != 0");
    out.r = j;
    out.mu = rational_linear_count(factorization_type(F, f));
    out.zeta_value = zeta(F, f);
    out.curve_points = count_points(F, {j});
    out.holds = (2 * out.zeta_value == out.curve_points - out.mu);
    return out;
}

}  // namespace pg3q
