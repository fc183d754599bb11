#include "pg3q/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace pg3q {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Fq klein_value(const FieldContext& F, const std::array<Fq, 6>& p) {
    // p01 p23 - p02 p13 + p03 p12
    return F.add1(F.sub1(F.mul1(p[0], p[5]), F.mul1(p[1], p[4])), F.mul1(p[2], p[3]));
}

// Dual incidence matrix: a point y lies on L iff y * M = 0.
Mat4 dual_matrix(const FieldContext& F, const ProjLine& L) {
    const Fq p01 = L.p[0], p02 = L.p[1], p03 = L.p[2], p12 = L.p[3], p13 = L.p[4], p23 = L.p[5];
    return Mat4{{{0, F.neg1(p23), p13, F.neg1(p12)},
                 {p23, 0, F.neg1(p03), p02},
                 {F.neg1(p13), p03, 0, F.neg1(p01)},
                 {p12, F.neg1(p02), p01, 0}}};
}

// 2-dimensional kernel of a rank-2 4x4 matrix (acting on column vectors).
std::pair<std::array<Fq, 4>, std::array<Fq, 4>> kernel2(const FieldContext& F, Mat4 M) {
    int pivots[4] = {-1, -1, -1, -1};
    int r = 0;
    for (int col = 0; col < 4 && r < 4; ++col) {
        int piv = -1;
        for (int row = r; row < 4; ++row)
            if (M[row][col]) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[r], M[piv]);
        Fq inv = F.inv1(M[r][col]);
        for (auto& x : M[r]) x = F.mul1(inv, x);
        for (int row = 0; row < 4; ++row) {
            if (row == r || !M[row][col]) continue;
            Fq f = M[row][col];
            for (int c2 = 0; c2 < 4; ++c2) M[row][c2] = F.sub1(M[row][c2], F.mul1(f, M[r][c2]));
        }
        pivots[r++] = col;
    }
    if (r != 2) throw std::logic_error("incidence matrix rank is not 2");
    std::array<std::array<Fq, 4>, 2> basis{};
    int bi = 0;
    for (int col = 0; col < 4; ++col) {
        if (col == pivots[0] || col == pivots[1]) continue;
        std::array<Fq, 4> v{};
        v[col] = 1;
        for (int row = 0; row < 2; ++row) v[pivots[row]] = F.neg1(M[row][col]);
        basis[bi++] = v;
    }
    return {basis[0], basis[1]};
}

}  // namespace

ProjPoint point_normalize(const FieldContext& F, std::array<Fq, 4> y) {
    for (Fq v : y) {
        if (v) {
            Fq s = F.inv1(v);
            for (auto& x : y) x = F.mul1(s, x);
            return {y};
        }
    }
    throw std::invalid_argument("zero point");
}

std::vector<ProjPoint> enumerate_points(const FieldContext& F) {
    const int q = F.q();
    std::vector<ProjPoint> out;
    out.reserve(size_t(q) * q * q + size_t(q) * q + q + 1);
    for (int lead = 0; lead < 4; ++lead) {
        std::array<Fq, 4> y{};
        y[lead] = 1;
        int64_t total = 1;
        for (int i = 0; i < 3 - lead; ++i) total *= q;
        for (int64_t v = 0; v < total; ++v) {
            int64_t t = v;
            for (int i = lead + 1; i < 4; ++i) {
                y[i] = Fq(t % q);
                t /= q;
            }
            out.push_back({y});
        }
    }
    return out;
}

ProjPoint nu3(const FieldContext& F, Fq s, Fq t) {
    if (s == 0 && t == 0) throw std::invalid_argument("zero point");
    Fq s2 = F.mul1(s, s), t2 = F.mul1(t, t);
    return point_normalize(F, {F.mul1(s2, s), F.mul1(s2, t), F.mul1(s, t2), F.mul1(t2, t)});
}

std::vector<ProjPoint> curve_points(const FieldContext& F) {
    std::vector<ProjPoint> out;
    for (Fq u = 0; u < F.q(); ++u) out.push_back(nu3(F, 1, u));
    out.push_back(nu3(F, 0, 1));
    return out;
}

Mat4 g3_matrix(const FieldContext& F, const GroupElement& g) {
    const Fq a = g.a(), b = g.b(), c = g.c(), d = g.d();
    const Fq det = group_det(F, g);
    auto cube = [&](Fq x) { return F.mul1(F.mul1(x, x), x); };
    return Mat4{{{cube(a), 0, 0, cube(b)},
                 {F.mul1(F.mul1(a, a), c), F.mul1(a, det), F.neg1(F.mul1(b, det)), F.mul1(F.mul1(b, b), d)},
                 {F.mul1(a, F.mul1(c, c)), F.neg1(F.mul1(c, det)), F.mul1(d, det), F.mul1(b, F.mul1(d, d))},
                 {cube(c), 0, 0, cube(d)}}};
}

ProjPoint g3_action(const FieldContext& F, const GroupElement& g, const ProjPoint& P) {
    Mat4 M = g3_matrix(F, g);
    std::array<Fq, 4> out{};
    for (int i = 0; i < 4; ++i) {
        Fq acc = 0;
        for (int j = 0; j < 4; ++j) acc = F.add1(acc, F.mul1(M[i][j], P.y[j]));
        out[i] = acc;
    }
    return point_normalize(F, out);
}

ProjLine line_normalize(const FieldContext& F, std::array<Fq, 6> p) {
    for (Fq v : p) {
        if (v) {
            Fq s = F.inv1(v);
            for (auto& x : p) x = F.mul1(s, x);
            if (klein_value(F, p) != 0) throw std::invalid_argument("Klein relation violated");
            return {p};
        }
    }
    throw std::invalid_argument("zero Plucker vector");
}

ProjLine line_from_points(const FieldContext& F, const ProjPoint& P, const ProjPoint& Q) {
    std::array<Fq, 6> p{};
    bool nonzero = false;
    for (int k = 0; k < 6; ++k) {
        auto [i, j] = kPairs[k];
        p[k] = F.sub1(F.mul1(P.y[i], Q.y[j]), F.mul1(P.y[j], Q.y[i]));
        nonzero |= (p[k] != 0);
    }
    if (!nonzero) throw std::invalid_argument("coincident points do not span a line");
    return line_normalize(F, p);
}

ProjLine line_from_z(const FieldContext& F, const std::array<Fq, 6>& z) {
    return line_normalize(F, {z[4], z[3], z[2], z[5], z[1], z[0]});
}

std::array<Fq, 6> line_z(const ProjLine& L) {
    return {L.p[5], L.p[4], L.p[2], L.p[1], L.p[0], L.p[3]};
}

ProjLine axis_line(const FieldContext& F) {
    (void)F;
    return {{0, 0, 0, 1, 0, 0}};  // span of B1 and B2: only p12 nonzero
}

std::vector<ProjLine> enumerate_lines(const FieldContext& F) {
    const int q = F.q();
    std::vector<ProjLine> out;
    out.reserve((size_t(q) * q + 1) * (size_t(q) * q + q + 1));
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            // reduced row-echelon generator matrices with pivot columns i < j
            std::vector<int> free1, free2;
            for (int c = i + 1; c < 4; ++c)
                if (c != j) free1.push_back(c);
            for (int c = j + 1; c < 4; ++c) free2.push_back(c);
            int64_t n1 = 1, n2 = 1;
            for (size_t k = 0; k < free1.size(); ++k) n1 *= q;
            for (size_t k = 0; k < free2.size(); ++k) n2 *= q;
            for (int64_t v1 = 0; v1 < n1; ++v1) {
                std::array<Fq, 4> r1{};
                r1[i] = 1;
                int64_t t = v1;
                for (int c : free1) {
                    r1[c] = Fq(t % q);
                    t /= q;
                }
                for (int64_t v2 = 0; v2 < n2; ++v2) {
                    std::array<Fq, 4> r2{};
                    r2[j] = 1;
                    int64_t u = v2;
                    for (int c : free2) {
                        r2[c] = Fq(u % q);
                        u /= q;
                    }
                    out.push_back(line_from_points(F, {r1}, {r2}));
                }
            }
        }
    }
    return out;
}

Mat6 line_action_matrix(const FieldContext& F, const GroupElement& g) {
    Mat4 M = g3_matrix(F, g);
    Mat6 W{};
    for (int r = 0; r < 6; ++r) {
        auto [i, j] = kPairs[r];
        for (int c = 0; c < 6; ++c) {
            auto [k, l] = kPairs[c];
            W[r][c] = F.sub1(F.mul1(M[i][k], M[j][l]), F.mul1(M[i][l], M[j][k]));
        }
    }
    return W;
}

ProjLine apply_line_matrix(const FieldContext& F, const Mat6& W, const ProjLine& L) {
    std::array<Fq, 6> out{};
    for (int r = 0; r < 6; ++r) {
        Fq acc = 0;
        for (int c = 0; c < 6; ++c)
            if (L.p[c]) acc = F.add1(acc, F.mul1(W[r][c], L.p[c]));
        out[r] = acc;
    }
    return line_normalize(F, out);
}

ProjLine act_on_line(const FieldContext& F, const GroupElement& g, const ProjLine& L) {
    return apply_line_matrix(F, line_action_matrix(F, g), L);
}

bool lines_meet(const FieldContext& F, const ProjLine& L, const ProjLine& M) {
    // polarization of the Klein form
    Fq t = F.add1(F.mul1(L.p[0], M.p[5]), F.mul1(L.p[5], M.p[0]));
    t = F.sub1(t, F.add1(F.mul1(L.p[1], M.p[4]), F.mul1(L.p[4], M.p[1])));
    t = F.add1(t, F.add1(F.mul1(L.p[2], M.p[3]), F.mul1(L.p[3], M.p[2])));
    return t == 0;
}

bool point_on_line(const FieldContext& F, const ProjLine& L, const ProjPoint& P) {
    Mat4 M = dual_matrix(F, L);
    for (int col = 0; col < 4; ++col) {
        Fq acc = 0;
        for (int row = 0; row < 4; ++row) acc = F.add1(acc, F.mul1(P.y[row], M[row][col]));
        if (acc) return false;
    }
    return true;
}

std::pair<ProjPoint, ProjPoint> line_span(const FieldContext& F, const ProjLine& L) {
    Mat4 M = dual_matrix(F, L);
    Mat4 Mt{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) Mt[i][j] = M[j][i];
    auto [u, v] = kernel2(F, Mt);
    return {point_normalize(F, u), point_normalize(F, v)};
}

std::vector<ProjPoint> line_points(const FieldContext& F, const ProjLine& L) {
    auto [P, Q] = line_span(F, L);
    std::vector<ProjPoint> out;
    out.reserve(F.q() + 1);
    out.push_back(Q);
    for (Fq lam = 0; lam < F.q(); ++lam) {
        std::array<Fq, 4> y{};
        for (int i = 0; i < 4; ++i) y[i] = F.add1(P.y[i], F.mul1(lam, Q.y[i]));
        out.push_back(point_normalize(F, y));
    }
    return out;
}

BinaryForm line_to_quartic(const FieldContext& F, const ProjLine& L) {
    auto z = line_z(L);
    BinaryForm f = make_form(4, {z[0], z[1], z[2], z[3], z[4]});
    if (form_is_zero(f)) throw std::invalid_argument("the axis has no associated quartic");
    return normalize_form(F, f);
}

ProjLine quartic_to_line(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 4) throw std::invalid_argument("expected a quartic");
    if (f.z[2] == 0) throw std::domain_error("z2 = 0: the form does not come from a line missing the axis");
    Fq z5 = F.div1(F.sub1(F.mul1(f.z[1], f.z[3]), F.mul1(f.z[0], f.z[4])), f.z[2]);
    return line_from_z(F, {f.z[0], f.z[1], f.z[2], f.z[3], f.z[4], z5});
}

bool is_generic(const FieldContext& F, const ProjLine& L) {
    if (L == axis_line(F)) return false;
    auto z = line_z(L);
    if (z[2] == 0) return false;
    return discriminant(F, make_form(4, {z[0], z[1], z[2], z[3], z[4]})) != 0;
}

bool is_generic_geometric(const FieldContext& F, const ProjLine& L) {
    const ProjLine A = axis_line(F);
    if (L == A || lines_meet(F, L, A)) return false;
    // the extension of L meets the closure of the curve iff some nu3(s,t)
    // with (s,t) in P^1(F_{q^2}) annihilates the dual incidence matrix
    Mat4 M = dual_matrix(F, L);
    std::array<std::array<uint32_t, 4>, 4> M2;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M2[i][j] = F.embed(F.from_base(M[i][j]), 2).idx;
    auto on_line2 = [&](const std::array<uint32_t, 4>& y) {
        for (int col = 0; col < 4; ++col) {
            uint32_t acc = 0;
            for (int row = 0; row < 4; ++row) acc = F.radd(2, acc, F.rmul(2, y[row], M2[row][col]));
            if (acc) return false;
        }
        return true;
    };
    const uint32_t n2 = F.level_size(2);
    for (uint32_t u = 0; u <= n2; ++u) {
        uint32_t s = (u == n2) ? 0 : 1;
        uint32_t t = (u == n2) ? 1 : u;
        uint32_t s2 = F.rmul(2, s, s), t2 = F.rmul(2, t, t);
        std::array<uint32_t, 4> y{F.rmul(2, s2, s), F.rmul(2, s2, t), F.rmul(2, s, t2), F.rmul(2, t2, t)};
        if (on_line2(y)) return false;
    }
    return true;
}

const char* to_string(PointOrbitTag t) {
    switch (t) {
        case PointOrbitTag::C: return "C";
        case PointOrbitTag::AX: return "AX";
        case PointOrbitTag::T: return "T";
        case PointOrbitTag::RC: return "RC";
        case PointOrbitTag::IC: return "IC";
    }
    return "?";
}

const char* to_string(PlaneOrbitTag t) {
    switch (t) {
        case PlaneOrbitTag::N1: return "N1";
        case PlaneOrbitTag::N2: return "N2";
        case PlaneOrbitTag::N3: return "N3";
        case PlaneOrbitTag::N4: return "N4";
        case PlaneOrbitTag::N5: return "N5";
    }
    return "?";
}

BinaryForm tangential_quadratic(const FieldContext& F, const ProjPoint& w) {
    const Fq y0 = w.y[0], y1 = w.y[1], y2 = w.y[2], y3 = w.y[3];
    return make_form(2, {F.sub1(F.mul1(y2, y2), F.mul1(y1, y3)), F.sub1(F.mul1(y1, y2), F.mul1(y0, y3)),
                         F.sub1(F.mul1(y1, y1), F.mul1(y0, y2))});
}

Fq quadratic_discriminant(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 2) throw std::invalid_argument("expected a quadratic");
    return F.sub1(F.mul1(f.z[1], f.z[1]), F.mul1(f.z[0], f.z[2]));
}

Fq cubic_discriminant(const FieldContext& F, const BinaryForm& f) {
    if (f.degree != 3) throw std::invalid_argument("expected a cubic");
    const Fq a = f.z[0], b = f.z[1], c = f.z[2], d = f.z[3];
    const Fq b2c2 = F.mul1(F.mul1(b, b), F.mul1(c, c));
    const Fq b3d = F.mul1(F.mul1(F.mul1(b, b), b), d);
    const Fq ac3 = F.mul1(a, F.mul1(F.mul1(c, c), c));
    return F.sub1(F.sub1(b2c2, b3d), ac3);
}

PointOrbitTag point_orbit(const FieldContext& F, const ProjPoint& w) {
    BinaryForm P = tangential_quadratic(F, w);
    if (form_is_zero(P)) return PointOrbitTag::C;
    if (w.y[0] == 0 && w.y[3] == 0) return PointOrbitTag::AX;
    Fq d = quadratic_discriminant(F, P);
    if (d == 0) return PointOrbitTag::T;
    return F.is_square1(d) ? PointOrbitTag::RC : PointOrbitTag::IC;
}

PlaneOrbitTag plane_orbit(const FieldContext& F, const PlaneForm& pi) {
    if (pi.degree != 3) throw std::invalid_argument("expected a cubic");
    if (form_is_zero(pi)) throw std::invalid_argument("zero plane");
    // rational root profile of p(u) = a0 + a1 u + a2 u^2 + a3 u^3 (+ infinity)
    std::vector<uint32_t> p{pi.z[0], pi.z[1], pi.z[2], pi.z[3]};
    p = polyl::trim(std::move(p));
    std::vector<int> mults;
    if (int(p.size()) < 4) mults.push_back(4 - int(p.size()));
    for (Fq r = 0; r < F.q(); ++r) {
        int mult = 0;
        while (p.size() > 1) {
            std::vector<uint32_t> quot(p.size() - 1);
            uint32_t carry = 0;
            for (size_t i = p.size(); i-- > 1;) {
                carry = (i + 1 == p.size()) ? p[i] : F.radd(1, p[i], F.rmul(1, carry, r));
                quot[i - 1] = carry;
            }
            if (F.radd(1, p[0], F.rmul(1, carry, r)) != 0) break;
            p = std::move(quot);
            ++mult;
        }
        if (mult) mults.push_back(mult);
    }
    const int leftover = int(p.size()) - 1;
    if (leftover == 3) return PlaneOrbitTag::N5;
    if (leftover == 2) return PlaneOrbitTag::N4;
    std::sort(mults.begin(), mults.end());
    if (mults == std::vector<int>{3}) return PlaneOrbitTag::N1;
    if (mults == std::vector<int>{1, 2}) return PlaneOrbitTag::N2;
    if (mults == std::vector<int>{1, 1, 1}) return PlaneOrbitTag::N3;
    throw std::logic_error("impossible cubic profile");
}

std::vector<PlaneForm> enumerate_planes(const FieldContext& F) {
    const int q = F.q();
    std::vector<PlaneForm> out;
    out.reserve(size_t(q) * q * q + size_t(q) * q + q + 1);
    for (int lead = 0; lead < 4; ++lead) {
        BinaryForm f;
        f.degree = 3;
        f.z.fill(0);
        f.z[lead] = 1;
        int64_t total = 1;
        for (int i = 0; i < 3 - lead; ++i) total *= q;
        for (int64_t v = 0; v < total; ++v) {
            int64_t t = v;
            for (int i = lead + 1; i < 4; ++i) {
                f.z[i] = Fq(t % q);
                t /= q;
            }
            out.push_back(f);
        }
    }
    return out;
}

PlaneForm osculating_plane(const FieldContext& F, Fq s, Fq t) {
    if (s == 0 && t == 0) throw std::invalid_argument("zero point");
    // (tX - sY)^3 = t^3 X^3 - s^3 Y^3 in characteristic 3
    auto cube = [&](Fq x) { return F.mul1(F.mul1(x, x), x); };
    return make_form(3, {cube(t), 0, 0, F.neg1(cube(s))});
}

bool plane_contains(const FieldContext& F, const PlaneForm& pi, const ProjPoint& P) {
    Fq acc = 0;
    for (int i = 0; i < 4; ++i) acc = F.add1(acc, F.mul1(pi.z[i], P.y[i]));
    return acc == 0;
}

std::pair<PlaneForm, PlaneForm> pencil_through(const FieldContext& F, const ProjLine& L) {
    auto z = line_z(L);
    Mat4 M{{{0, z[4], z[3], z[2]},
            {F.neg1(z[4]), 0, z[5], z[1]},
            {F.neg1(z[3]), F.neg1(z[5]), 0, z[0]},
            {F.neg1(z[2]), F.neg1(z[1]), F.neg1(z[0]), 0}}};
    auto [u, v] = kernel2(F, M);
    auto tocubic = [](const std::array<Fq, 4>& a) {
        BinaryForm f;
        f.degree = 3;
        f.z = {a[0], a[1], a[2], a[3], 0};
        return f;
    };
    return {tocubic(u), tocubic(v)};
}

std::vector<PlaneForm> pencil_members(const FieldContext& F, const ProjLine& L) {
    auto [c1, c2] = pencil_through(F, L);
    std::vector<PlaneForm> out;
    out.reserve(F.q() + 1);
    out.push_back(normalize_form(F, c1));
    for (Fq lam = 0; lam < F.q(); ++lam) {
        BinaryForm f;
        f.degree = 3;
        f.z.fill(0);
        for (int i = 0; i < 4; ++i) f.z[i] = F.add1(c2.z[i], F.mul1(lam, c1.z[i]));
        out.push_back(normalize_form(F, f));
    }
    return out;
}

PlaneForm pencil_cubic(const FieldContext& F, const BinaryForm& f, Fq s, Fq t) {
    if (f.degree != 4 || f.z[2] != 1) throw std::invalid_argument("expected a quartic normalized to z2 = 1");
    if (s == 0 && t == 0) throw std::invalid_argument("zero pencil parameter");
    return make_form(3, {F.add1(F.mul1(s, f.z[0]), F.mul1(t, f.z[1])), F.neg1(t), F.neg1(s),
                         F.add1(F.mul1(s, f.z[3]), F.mul1(t, f.z[4]))});
}

ProjPoint osculating_intersection(const FieldContext& F, const ProjLine& L, Fq s, Fq t) {
    const Fq p01 = L.p[0], p02 = L.p[1], p03 = L.p[2], p13 = L.p[4], p23 = L.p[5];
    if (p03 == 0) throw std::invalid_argument("line meets the axis");
    auto cube = [&](Fq x) { return F.mul1(F.mul1(x, x), x); };
    Fq s3 = cube(s), t3 = cube(t);
    return point_normalize(F, {F.mul1(p03, s3), F.add1(F.mul1(p13, s3), F.mul1(p01, t3)),
                               F.add1(F.mul1(p23, s3), F.mul1(p02, t3)), F.mul1(p03, t3)});
}

IncidenceTally point_line_incidence(const FieldContext& F, const ProjLine& L) {
    IncidenceTally tally;
    for (auto& P : line_points(F, L)) ++tally.n[size_t(point_orbit(F, P))];
    return tally;
}

IncidenceTally line_plane_incidence(const FieldContext& F, const ProjLine& L) {
    IncidenceTally tally;
    for (auto& pi : pencil_members(F, L)) ++tally.n[size_t(plane_orbit(F, pi))];
    return tally;
}

}  // namespace pg3q
