#pragma once

#include <utility>
#include <vector>

#include "pg3q/forms.hpp"
#include "pg3q/group.hpp"

namespace pg3q {

/// Point of PG(3,q), normalized so the first nonzero coordinate is 1.
struct ProjPoint {
    std::array<Fq, 4> y{};
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Line of PG(3,q) as normalized Plucker coordinates
/// (p01, p02, p03, p12, p13, p23); the Klein relation is checked on entry.
struct ProjLine {
    std::array<Fq, 6> p{};
    friend bool operator==(const ProjLine&, const ProjLine&) = default;
    friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

using Mat4 = std::array<std::array<Fq, 4>, 4>;
using Mat6 = std::array<std::array<Fq, 6>, 6>;

/// Plane of PG(3,q), identified with a binary cubic form; the plane contains
/// the points y with sum a_i y_i = 0.
using PlaneForm = BinaryForm;

ProjPoint point_normalize(const FieldContext& F, std::array<Fq, 4> y);
std::vector<ProjPoint> enumerate_points(const FieldContext& F);

/// (s,t) -> (s^3, s^2 t, s t^2, t^3).
ProjPoint nu3(const FieldContext& F, Fq s, Fq t);
std::vector<ProjPoint> curve_points(const FieldContext& F);

/// Cubic Veronese action matrix: nu3(g v) = g3_matrix(g) nu3(v).
Mat4 g3_matrix(const FieldContext& F, const GroupElement& g);
ProjPoint g3_action(const FieldContext& F, const GroupElement& g, const ProjPoint& P);

ProjLine line_normalize(const FieldContext& F, std::array<Fq, 6> p);
ProjLine line_from_points(const FieldContext& F, const ProjPoint& P, const ProjPoint& Q);
/// Line from the quadric-side coordinates (z0..z5) = (p23, p13, p03, p02, p01, p12).
ProjLine line_from_z(const FieldContext& F, const std::array<Fq, 6>& z);
std::array<Fq, 6> line_z(const ProjLine& L);
ProjLine axis_line(const FieldContext& F);
std::vector<ProjLine> enumerate_lines(const FieldContext& F);

/// Induced action on Plucker coordinates (second wedge of g3_matrix).
Mat6 line_action_matrix(const FieldContext& F, const GroupElement& g);
ProjLine apply_line_matrix(const FieldContext& F, const Mat6& W, const ProjLine& L);
ProjLine act_on_line(const FieldContext& F, const GroupElement& g, const ProjLine& L);

bool lines_meet(const FieldContext& F, const ProjLine& L, const ProjLine& M);
bool point_on_line(const FieldContext& F, const ProjLine& L, const ProjPoint& P);
/// Two spanning points (kernel of the dual incidence matrix).
std::pair<ProjPoint, ProjPoint> line_span(const FieldContext& F, const ProjLine& L);
/// All q+1 points of L.
std::vector<ProjPoint> line_points(const FieldContext& F, const ProjLine& L);

/// Quartic attached to a line (undefined for the axis).
BinaryForm line_to_quartic(const FieldContext& F, const ProjLine& L);
/// Inverse on the z2 != 0 locus.
ProjLine quartic_to_line(const FieldContext& F, const BinaryForm& f);

/// z2 != 0 and nonzero discriminant (equivalently, j(f_L) != 0).
bool is_generic(const FieldContext& F, const ProjLine& L);
/// Direct route: misses the axis and the curve over the closure. Kept
/// independent of the algebraic route so the two can be compared.
bool is_generic_geometric(const FieldContext& F, const ProjLine& L);

enum class PointOrbitTag : uint8_t { C, AX, T, RC, IC };
enum class PlaneOrbitTag : uint8_t { N1, N2, N3, N4, N5 };
const char* to_string(PointOrbitTag t);
const char* to_string(PlaneOrbitTag t);

/// Quadratic (y2^2 - y1 y3) X^2 + (y1 y2 - y0 y3) XY + (y1^2 - y0 y2) Y^2;
/// vanishes identically exactly on the curve.
BinaryForm tangential_quadratic(const FieldContext& F, const ProjPoint& w);
Fq quadratic_discriminant(const FieldContext& F, const BinaryForm& f);
/// Discriminant b^2 c^2 - b^3 d - a c^3 of a T^3 + b T^2 + c T + d in
/// characteristic 3, with the cubic form read as coefficients of T = X/Y.
Fq cubic_discriminant(const FieldContext& F, const BinaryForm& f);

PointOrbitTag point_orbit(const FieldContext& F, const ProjPoint& w);
PlaneOrbitTag plane_orbit(const FieldContext& F, const PlaneForm& pi);

std::vector<PlaneForm> enumerate_planes(const FieldContext& F);
/// Osculating plane at nu3(s,t): the cube (tX - sY)^3.
PlaneForm osculating_plane(const FieldContext& F, Fq s, Fq t);
bool plane_contains(const FieldContext& F, const PlaneForm& pi, const ProjPoint& P);

/// Basis of the pencil of planes through L (kernel of the alternating
/// incidence matrix; works for every line including those meeting the axis).
std::pair<PlaneForm, PlaneForm> pencil_through(const FieldContext& F, const ProjLine& L);
std::vector<PlaneForm> pencil_members(const FieldContext& F, const ProjLine& L);

/// Member s*(z0 X^3 - XY^2 + z3 Y^3) + t*(z1 X^3 - X^2 Y + z4 Y^3) of the
/// pencil of a line with z2 = 1; its cubic discriminant equals f_L(s,t).
PlaneForm pencil_cubic(const FieldContext& F, const BinaryForm& f_normalized, Fq s, Fq t);

/// Intersection of L (not meeting the axis) with the osculating plane at (s,t).
ProjPoint osculating_intersection(const FieldContext& F, const ProjLine& L, Fq s, Fq t);

struct IncidenceTally {
    std::array<int, 5> n{};
    friend bool operator==(const IncidenceTally&, const IncidenceTally&) = default;
};
/// Tally of the q+1 points of L over (C, AX, T, RC, IC).
IncidenceTally point_line_incidence(const FieldContext& F, const ProjLine& L);
/// Tally of the q+1 planes through L over (N1..N5).
IncidenceTally line_plane_incidence(const FieldContext& F, const ProjLine& L);

}  // namespace pg3q
