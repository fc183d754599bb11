#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pg3q/gf.hpp"
#include "pg3q/group.hpp"

namespace pg3q {

/// Homogeneous binary form sum z_i X^(deg-i) Y^i over F_q, degree 2..4.
struct BinaryForm {
    int degree = 4;
    std::array<Fq, 5> z{};

    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
    friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

BinaryForm make_form(int degree, std::initializer_list<Fq> coeffs);
bool form_is_zero(const BinaryForm& f);
/// Scale so the first nonzero coefficient is 1 (projective representative).
BinaryForm normalize_form(const FieldContext& F, const BinaryForm& f);
Fq eval_form(const FieldContext& F, const BinaryForm& f, Fq s, Fq t);
std::string form_to_string(const FieldContext& F, const BinaryForm& f);

/// The twisted action g_m f(X,Y) = det(g)^-m f(dX - bY, aY - cX).
BinaryForm act_on_form(const FieldContext& F, const GroupElement& g, const BinaryForm& f);

Fq discriminant(const FieldContext& F, const BinaryForm& f);     // degree 4
Fq j_invariant(const FieldContext& F, const BinaryForm& f);      // requires disc != 0

enum class FactorizationType : uint8_t { F1, F2, F2p, F4, F4p, F0 };
const char* to_string(FactorizationType t);
/// Number of distinct linear factors over F_q for nonzero discriminant
/// (4, 2, 1 for F4/F2/F1 and 0 for the primed types).
int rational_linear_count(FactorizationType t);

FactorizationType factorization_type(const FieldContext& F, const BinaryForm& f);

/// Point of P^1 over a tower level, normalized (first nonzero coordinate 1).
struct ProjRoot {
    uint8_t level = 1;
    uint32_t s = 1, t = 0;
    friend bool operator==(const ProjRoot&, const ProjRoot&) = default;
};
ProjRoot proj_root(const FieldContext& F, int level, uint32_t s, uint32_t t);
ProjRoot root_frobenius(const FieldContext& F, const ProjRoot& p, int k = 1);
ProjRoot root_embed(const FieldContext& F, const ProjRoot& p, int level);

struct ClosureRoots {
    int level = 1;                                   // common tower level of all roots
    std::vector<std::pair<ProjRoot, int>> roots;     // (root, multiplicity)
};
/// All projective roots over the tower, with multiplicity, at the smallest
/// common level. Errors on the zero form.
ClosureRoots roots_over_closure(const FieldContext& F, const BinaryForm& f);

/// Cross-ratio (P1,P2;P3,P4) of four distinct points at a common level.
FieldElement cross_ratio(const FieldContext& F, const ProjRoot& p1, const ProjRoot& p2, const ProjRoot& p3,
                         const ProjRoot& p4);

/// j as a function of a cross-ratio: (lam+1)^6 / (lam^2 (lam-1)^2).
FieldElement jmath(const FieldContext& F, FieldElement lam);

using RootOrdering = std::array<ProjRoot, 4>;
struct RestrictedOrderings {
    int level = 1;
    std::vector<RootOrdering> orderings;
};
/// Orderings of the roots compatible with the Frobenius pattern of the type.
RestrictedOrderings restricted_orderings(const FieldContext& F, const BinaryForm& f);

/// Cross-ratios of all restricted orderings, projected to the natural level
/// of the type (1 for F4/F4', 2 for F2/F2', 3 for F1), sorted.
struct LambdaClass {
    FactorizationType type = FactorizationType::F0;
    std::vector<FieldElement> orbit;   // the full H-orbit, sorted
    FieldElement canonical;            // orbit.front()
};
LambdaClass lambda_class(const FieldContext& F, const BinaryForm& f);

/// Complete orbit invariant for forms with nonzero discriminant.
struct OrbitInvariant {
    FactorizationType type = FactorizationType::F0;
    FieldElement lambda;
    friend bool operator==(const OrbitInvariant&, const OrbitInvariant&) = default;
    friend auto operator<=>(const OrbitInvariant&, const OrbitInvariant&) = default;
};
OrbitInvariant canonical_invariant(const FieldContext& F, const BinaryForm& f);

enum class JClass : uint8_t { J1 = 1, J2 = 2, J4 = 4 };
/// Square/trace classification of r in F_q^x; E_r lands in F_i for r in J_i.
JClass classify_j(const FieldContext& F, Fq r);

// ---- orbit representatives ----

/// E_r = X(Y^3 - Y^2 X + r^-1 X^3).
BinaryForm rep_E(const FieldContext& F, Fq r);

struct J0Rep {
    FactorizationType type;
    BinaryForm form;
};
/// The five orbit representatives with j = 0, one per factorization type.
std::vector<J0Rep> j0_representatives(const FieldContext& F);

/// Canonical representatives of the H_2-classes {lam, lam^-1}: N_4 classes
/// at level 1 and N_2 classes at level 2.
std::vector<Fq> lambda_classes_N4(const FieldContext& F);
std::vector<FieldElement> lambda_classes_N2(const FieldContext& F);

struct PsiRep {
    BinaryForm form;
    FieldElement alpha;    // level 2
};
/// F4' representative with cross-ratio class {lam, lam^-1}, lam in N_4.
PsiRep rep_psi(const FieldContext& F, Fq lambda_rep);

struct UpsilonRep {
    BinaryForm form;
    Fq r = 0;
    bool used_fallback = false;
    std::string note;      // nonempty when the closed-form family failed validation
};
/// F2' representative with cross-ratio class {lam, lam^-1}, lam in N_2
/// (level 2). Falls back to a deterministic scan if the closed-form family
/// does not validate, recording the discrepancy.
UpsilonRep rep_upsilon(const FieldContext& F, FieldElement lambda_rep);

}  // namespace pg3q
