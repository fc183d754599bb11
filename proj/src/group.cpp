#include "pg3q/group.hpp"

#include <stdexcept>

namespace pg3q {

GroupElement group_normalize(const FieldContext& F, std::array<Fq, 4> g) {
    for (Fq v : g) {
        if (v != 0) {
            Fq s = F.inv1(v);
            for (auto& x : g) x = F.mul1(s, x);
            return {g};
        }
    }
    throw std::invalid_argument("zero matrix");
}

GroupElement group_make(const FieldContext& F, Fq a, Fq b, Fq c, Fq d) {
    if (F.sub1(F.mul1(a, d), F.mul1(b, c)) == 0) throw std::invalid_argument("singular matrix");
    return group_normalize(F, {a, b, c, d});
}

Fq group_det(const FieldContext& F, const GroupElement& g) {
    return F.sub1(F.mul1(g.a(), g.d()), F.mul1(g.b(), g.c()));
}

GroupElement group_compose(const FieldContext& F, const GroupElement& g, const GroupElement& h) {
    return group_normalize(F, {F.add1(F.mul1(g.a(), h.a()), F.mul1(g.b(), h.c())),
                               F.add1(F.mul1(g.a(), h.b()), F.mul1(g.b(), h.d())),
                               F.add1(F.mul1(g.c(), h.a()), F.mul1(g.d(), h.c())),
                               F.add1(F.mul1(g.c(), h.b()), F.mul1(g.d(), h.d()))});
}

GroupElement group_inverse(const FieldContext& F, const GroupElement& g) {
    return group_normalize(F, {g.d(), F.neg1(g.b()), F.neg1(g.c()), g.a()});
}

std::vector<GroupElement> enumerate_group(const FieldContext& F) {
    const int q = F.q();
    std::vector<GroupElement> out;
    out.reserve(size_t(q) * q * q - q);
    // first nonzero entry = 1: either a = 1, or a = 0 and b = 1, or a = b = 0 and c = 1
    for (int lead = 0; lead < 3; ++lead) {
        std::array<Fq, 4> g{};
        g[lead] = 1;
        int free_from = lead + 1;
        int nfree = 4 - free_from;
        int64_t total = 1;
        for (int i = 0; i < nfree; ++i) total *= q;
        for (int64_t v = 0; v < total; ++v) {
            int64_t t = v;
            for (int i = free_from; i < 4; ++i) {
                g[i] = Fq(t % q);
                t /= q;
            }
            if (F.sub1(F.mul1(g[0], g[3]), F.mul1(g[1], g[2])) == 0) continue;
            out.push_back({g});
        }
    }
    return out;
}

std::vector<GroupElement> group_generators(const FieldContext& F) {
    return {group_make(F, 1, 1, 0, 1), group_make(F, F.gamma(), 0, 0, 1), group_make(F, 0, 1, 1, 0)};
}

int group_element_order(const FieldContext& F, const GroupElement& g) {
    GroupElement cur = g;
    const GroupElement id = group_identity();
    for (int k = 1; k <= F.q() + 1; ++k) {
        if (cur == id) return k;
        cur = group_compose(F, cur, g);
    }
    throw std::logic_error("element order exceeds q + 1");
}

}  // namespace pg3q
