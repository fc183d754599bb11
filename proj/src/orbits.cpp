#include "pg3q/orbits.hpp"

#include <algorithm>
#include <stdexcept>

namespace pg3q {

namespace {

// 5x5 matrix of the quartic action of g, columns indexed by basis monomials.
using Mat5 = std::array<std::array<Fq, 5>, 5>;

Mat5 form_action_matrix(const FieldContext& F, const GroupElement& g) {
    Mat5 M{};
    for (int i = 0; i < 5; ++i) {
        BinaryForm e;
        e.degree = 4;
        e.z.fill(0);
        e.z[i] = 1;
        BinaryForm img = act_on_form(F, g, e);
        for (int r = 0; r < 5; ++r) M[r][i] = img.z[r];
    }
    return M;
}

}  // namespace

uint64_t form_key(const FieldContext& F, const BinaryForm& f) {
    uint64_t key = 0;
    for (int i = 0; i < 5; ++i) key = key * F.q() + f.z[i];
    return key;
}

BinaryForm form_from_key(const FieldContext& F, uint64_t key) {
    BinaryForm f;
    f.degree = 4;
    for (int i = 4; i >= 0; --i) {
        f.z[i] = Fq(key % F.q());
        key /= F.q();
    }
    return f;
}

namespace {

template <class Pred>
std::vector<BinaryForm> normalized_forms(const FieldContext& F, Pred&& keep) {
    const int q = F.q();
    std::vector<BinaryForm> out;
    for (int lead = 0; lead < 5; ++lead) {
        BinaryForm f;
        f.degree = 4;
        f.z.fill(0);
        f.z[lead] = 1;
        int64_t total = 1;
        for (int i = 0; i < 4 - lead; ++i) total *= q;
        for (int64_t v = 0; v < total; ++v) {
            int64_t t = v;
            for (int i = lead + 1; i < 5; ++i) {
                f.z[i] = Fq(t % q);
                t /= q;
            }
            if (keep(f)) out.push_back(f);
        }
    }
    return out;
}

}  // namespace

std::vector<BinaryForm> forms_with_nonzero_disc(const FieldContext& F) {
    return normalized_forms(F, [&](const BinaryForm& f) { return discriminant(F, f) != 0; });
}

std::vector<BinaryForm> forms_with_zero_disc(const FieldContext& F) {
    return normalized_forms(F, [&](const BinaryForm& f) { return discriminant(F, f) == 0; });
}

std::vector<BinaryForm> forms_with_nonzero_j(const FieldContext& F) {
    return normalized_forms(F,
                            [&](const BinaryForm& f) { return f.z[2] != 0 && discriminant(F, f) != 0; });
}

FormCensus decompose_forms(const FieldContext& F, const std::vector<BinaryForm>& universe) {
    if (F.q() > 27) throw std::invalid_argument("full orbit censuses are supported for q <= 27 only");
    const int q = F.q();
    uint64_t keyspace = 1;
    for (int i = 0; i < 5; ++i) keyspace *= q;

    FormCensus census;
    census.universe_size = int64_t(universe.size());
    census.orbit_of.assign(keyspace, -1);
    std::vector<uint8_t> in_universe(keyspace, 0);
    for (auto& f : universe) in_universe[form_key(F, f)] = 1;

    auto gens = group_generators(F);
    std::vector<Mat5> mats;
    for (auto& g : gens) mats.push_back(form_action_matrix(F, g));

    auto apply = [&](const Mat5& M, const BinaryForm& f) {
        BinaryForm out;
        out.degree = 4;
        for (int r = 0; r < 5; ++r) {
            Fq acc = 0;
            for (int c = 0; c < 5; ++c)
                if (f.z[c]) acc = F.add1(acc, F.mul1(M[r][c], f.z[c]));
            out.z[r] = acc;
        }
        return normalize_form(F, out);
    };

    const int64_t G = group_order(F);
    std::vector<uint64_t> stack;
    for (auto& start : universe) {
        uint64_t k0 = form_key(F, start);
        if (census.orbit_of[k0] >= 0) continue;
        int32_t id = int32_t(census.orbits.size());
        census.orbit_of[k0] = id;
        stack.push_back(k0);
        int64_t size = 0;
        uint64_t min_key = k0;
        while (!stack.empty()) {
            uint64_t k = stack.back();
            stack.pop_back();
            ++size;
            min_key = std::min(min_key, k);
            BinaryForm f = form_from_key(F, k);
            for (auto& M : mats) {
                uint64_t k2 = form_key(F, apply(M, f));
                if (census.orbit_of[k2] == id) continue;
                if (!in_universe[k2]) throw std::logic_error("group action left the universe");
                if (census.orbit_of[k2] >= 0) throw std::logic_error("orbits collided");
                census.orbit_of[k2] = id;
                stack.push_back(k2);
            }
        }
        if (G % size != 0) throw std::logic_error("orbit size does not divide the group order");
        census.orbits.push_back({size, form_from_key(F, min_key)});
    }
    return census;
}

uint64_t line_key(const FieldContext& F, const ProjLine& L) {
    uint64_t key = 0;
    for (int i = 0; i < 6; ++i) key = key * F.q() + L.p[i];
    return key;
}

LineCensus decompose_lines(const FieldContext& F, const std::vector<ProjLine>& universe) {
    if (F.q() > 27) throw std::invalid_argument("full orbit censuses are supported for q <= 27 only");
    LineCensus census;
    census.universe_size = int64_t(universe.size());
    census.orbit_of.reserve(universe.size() * 2);
    for (auto& L : universe) census.orbit_of[line_key(F, L)] = -1;

    auto gens = group_generators(F);
    std::vector<Mat6> mats;
    for (auto& g : gens) mats.push_back(line_action_matrix(F, g));

    const int64_t G = group_order(F);
    std::vector<ProjLine> stack;
    for (auto& start : universe) {
        auto it0 = census.orbit_of.find(line_key(F, start));
        if (it0->second >= 0) continue;
        int32_t id = int32_t(census.orbits.size());
        it0->second = id;
        stack.push_back(start);
        int64_t size = 0;
        ProjLine rep = start;
        uint64_t min_key = line_key(F, start);
        while (!stack.empty()) {
            ProjLine L = stack.back();
            stack.pop_back();
            ++size;
            uint64_t k = line_key(F, L);
            if (k < min_key) {
                min_key = k;
                rep = L;
            }
            for (auto& M : mats) {
                ProjLine L2 = apply_line_matrix(F, M, L);
                auto it = census.orbit_of.find(line_key(F, L2));
                if (it == census.orbit_of.end()) throw std::logic_error("group action left the universe");
                if (it->second == id) continue;
                if (it->second >= 0) throw std::logic_error("orbits collided");
                it->second = id;
                stack.push_back(L2);
            }
        }
        if (G % size != 0) throw std::logic_error("orbit size does not divide the group order");
        census.orbits.push_back({size, rep});
    }
    return census;
}

int64_t stabilizer_order_form(const FieldContext& F, const BinaryForm& f) {
    BinaryForm fn = normalize_form(F, f);
    int64_t count = 0;
    for (auto& g : enumerate_group(F))
        if (normalize_form(F, act_on_form(F, g, fn)) == fn) ++count;
    return count;
}

std::map<int, int> stabilizer_histogram_form(const FieldContext& F, const BinaryForm& f) {
    BinaryForm fn = normalize_form(F, f);
    std::map<int, int> hist;
    for (auto& g : enumerate_group(F))
        if (normalize_form(F, act_on_form(F, g, fn)) == fn) ++hist[group_element_order(F, g)];
    return hist;
}

}  // namespace pg3q
