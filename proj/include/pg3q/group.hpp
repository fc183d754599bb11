#pragma once

#include <vector>

#include "pg3q/gf.hpp"

namespace pg3q {

/// Element of PGL_2(q): an invertible 2x2 matrix ((a,b),(c,d)) over F_q,
/// normalized so the first nonzero entry is 1.
struct GroupElement {
    std::array<Fq, 4> g{1, 0, 0, 1};  // a, b, c, d

    Fq a() const { return g[0]; }
    Fq b() const { return g[1]; }
    Fq c() const { return g[2]; }
    Fq d() const { return g[3]; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

GroupElement group_normalize(const FieldContext& F, std::array<Fq, 4> g);
GroupElement group_make(const FieldContext& F, Fq a, Fq b, Fq c, Fq d);
Fq group_det(const FieldContext& F, const GroupElement& g);
GroupElement group_compose(const FieldContext& F, const GroupElement& g, const GroupElement& h);
GroupElement group_inverse(const FieldContext& F, const GroupElement& g);
inline GroupElement group_identity() { return {}; }

/// All q^3 - q elements, each exactly once, in lexicographic order of the
/// normalized entry tuple.
std::vector<GroupElement> enumerate_group(const FieldContext& F);

/// A fixed generating set (translation, scaling by gamma, inversion).
std::vector<GroupElement> group_generators(const FieldContext& F);

/// Order of g in PGL_2(q).
int group_element_order(const FieldContext& F, const GroupElement& g);

}  // namespace pg3q
