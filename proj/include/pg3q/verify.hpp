#pragma once

#include <map>
#include <string>
#include <vector>

#include "pg3q/elliptic.hpp"
#include "pg3q/forms.hpp"
#include "pg3q/geometry.hpp"
#include "pg3q/orbits.hpp"

namespace pg3q {

/// One exact-equality check. All quantities are integers or exact field
/// data, so pass means expected == observed with no tolerance.
struct VerificationResult {
    std::string id;
    int q = 0;
    std::string expected;
    std::string observed;
    bool pass = false;
    double ms = 0.0;
    std::string notes;
};

enum class VerifyMode : uint8_t { Census, Invariant };

/// Census mode needs q in {9, 27}; q = 81 runs invariant mode only.
VerifyMode default_mode(int q);

std::vector<VerificationResult> verify_forms(const FieldContext& F, VerifyMode mode);
std::vector<VerificationResult> verify_lines(const FieldContext& F, VerifyMode mode);
std::vector<VerificationResult> verify_incidence(const FieldContext& F, VerifyMode mode);

bool all_pass(const std::vector<VerificationResult>& results);

// ---- shared expected-value tables and representative builders ----

/// Claimed stabilizer isomorphism type, encoded as an element-order histogram.
struct FormRep {
    std::string family;            // "E_r", "psi", "upsilon", "j0"
    BinaryForm form;
    FactorizationType type;
    Fq j = 0;
    int64_t claimed_stab = 1;
    std::map<int, int> claimed_hist;
    std::string stab_name;
    std::string note;              // e.g. upsilon fallback diagnostics
};
/// The full list of 2q+2 orbit representatives.
std::vector<FormRep> table_form_reps(const FieldContext& F);

struct TableLineRep {
    std::string family;
    BinaryForm form;               // associated quartic
    ProjPoint row1, row2;          // generator matrix rows
    FactorizationType type;
    Fq j = 0;
    std::string note;
};
/// Generator matrices of the generic line orbit representatives.
std::vector<TableLineRep> table_line_reps(const FieldContext& F);

struct NonGenericRep {
    std::string name;              // O7, O2, O4, O8.1+, O8.1-, O8.2, O1, O3, O5+, O5-
    std::array<Fq, 6> z;           // quadric-side coordinates of the representative
    int64_t size = 0;              // orbit size
    IncidenceTally planes, points; // expected tallies
    std::string note;
};
std::vector<NonGenericRep> nongeneric_table(const FieldContext& F);

/// Closed-form tallies for a generic line with mu rational linear factors
/// and ne curve points at r = j(f_L).
IncidenceTally expected_plane_tally(const FieldContext& F, int mu, int64_t ne);
IncidenceTally expected_point_tally(const FieldContext& F, int mu, int64_t ne);

}  // namespace pg3q
