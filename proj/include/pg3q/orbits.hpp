#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "pg3q/forms.hpp"
#include "pg3q/geometry.hpp"
#include "pg3q/group.hpp"

namespace pg3q {

inline int64_t group_order(const FieldContext& F) {
    return int64_t(F.q()) * F.q() * F.q() - F.q();
}

// ---- form orbits ----

uint64_t form_key(const FieldContext& F, const BinaryForm& f);
BinaryForm form_from_key(const FieldContext& F, uint64_t key);

std::vector<BinaryForm> forms_with_nonzero_disc(const FieldContext& F);
std::vector<BinaryForm> forms_with_zero_disc(const FieldContext& F);
std::vector<BinaryForm> forms_with_nonzero_j(const FieldContext& F);

struct FormOrbit {
    int64_t size = 0;
    BinaryForm representative;    // lexicographically smallest normalized member
};

/// BFS orbit partition of a set of normalized quartics under the generator
/// set. Requires q <= 27 (the q = 81 census is out of range by design).
struct FormCensus {
    int64_t universe_size = 0;
    std::vector<FormOrbit> orbits;            // ordered by representative
    std::vector<int32_t> orbit_of;            // by form key; -1 outside the universe
    int32_t orbit_index(uint64_t key) const { return orbit_of[key]; }
};
FormCensus decompose_forms(const FieldContext& F, const std::vector<BinaryForm>& universe);

// ---- line orbits ----

uint64_t line_key(const FieldContext& F, const ProjLine& L);

struct LineOrbit {
    int64_t size = 0;
    ProjLine representative;
};

struct LineCensus {
    int64_t universe_size = 0;
    std::vector<LineOrbit> orbits;
    std::unordered_map<uint64_t, int32_t> orbit_of;
};
LineCensus decompose_lines(const FieldContext& F, const std::vector<ProjLine>& universe);

// ---- stabilizers ----

/// |Stab(f)| by direct fixed-point counting over the whole group.
int64_t stabilizer_order_form(const FieldContext& F, const BinaryForm& f);
/// Element-order histogram of Stab(f); distinguishes isomorphism types of
/// equal order (Z/4 vs Z/2 x Z/2, and so on).
std::map<int, int> stabilizer_histogram_form(const FieldContext& F, const BinaryForm& f);

}  // namespace pg3q
