#pragma once

#include "pg3q/forms.hpp"

namespace pg3q {

/// S^2 = T^3 + T^2 - 1/r over F_q; nonsingular for every nonzero r.
struct EllipticCurve {
    Fq r = 1;
};

/// Number of F_q-rational points (affine sweep plus the point at infinity).
int64_t count_points(const FieldContext& F, const EllipticCurve& E);

/// Number of (x,y) in PG(1,q) where the z2-normalized quartic evaluates to a
/// nonzero square. Requires j(f) != 0.
int64_t zeta(const FieldContext& F, const BinaryForm& f);

struct ZetaCheck {
    bool holds = false;
    int64_t zeta_value = 0;
    int64_t curve_points = 0;
    int mu = 0;               // distinct rational linear factors (0 for primed types)
    Fq r = 0;                 // j-invariant
};
/// zeta_f = (#E_r - i)/2 for f in F_i, and #E_r/2 for the primed types.
ZetaCheck verify_zeta_relation(const FieldContext& F, const BinaryForm& f);

}  // namespace pg3q
