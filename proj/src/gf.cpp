#include "pg3q/gf.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pg3q {

namespace {

// Lex-smallest monic irreducible over F_3 per degree (coefficients low
// degree first, the monic leading 1 omitted). Verified at construction.
const std::vector<trit> kIrreducible[17] = {
    {},
    {0},
    {1, 0},
    {1, 2, 0},
    {2, 1, 0, 0},
    {1, 2, 0, 0, 0},
    {2, 1, 0, 0, 0, 0},
    {2, 0, 1, 0, 0, 0, 0},
    {2, 0, 1, 0, 0, 0, 0, 0},
    {1, 0, 1, 2, 0, 0, 0, 0, 0},
    {1, 0, 2, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
};

std::vector<trit> default_poly(int deg) {
    std::vector<trit> p = kIrreducible[deg];
    p.push_back(1);
    return p;
}

// ---- F_3[x] helpers for the construction-time irreducibility check ----
using F3Poly = std::vector<trit>;

F3Poly f3_trim(F3Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}
F3Poly f3_mul(const F3Poly& a, const F3Poly& b) {
    if (a.empty() || b.empty()) return {};
    F3Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = trit((r[i + j] + a[i] * b[j]) % 3);
    return f3_trim(std::move(r));
}
F3Poly f3_mod(F3Poly a, const F3Poly& b) {
    a = f3_trim(std::move(a));
    // b monic by construction
    while (a.size() >= b.size() && !a.empty()) {
        trit c = a.back();
        size_t d = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + d] = trit((3 + a[i + d] - c * b[i] % 3) % 3);
        a = f3_trim(std::move(a));
    }
    return a;
}
F3Poly f3_gcd(F3Poly a, F3Poly b) {
    a = f3_trim(std::move(a));
    b = f3_trim(std::move(b));
    while (!b.empty()) {
        // make b monic before reducing
        trit lead = b.back();
        if (lead == 2)
            for (auto& c : b) c = trit((2 * c) % 3);
        F3Poly r = f3_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}
F3Poly f3_powmod(F3Poly a, uint64_t e, const F3Poly& mod) {
    F3Poly r{1};
    a = f3_mod(std::move(a), mod);
    while (e) {
        if (e & 1) r = f3_mod(f3_mul(r, a), mod);
        a = f3_mod(f3_mul(a, a), mod);
        e >>= 1;
    }
    return r;
}

bool f3_irreducible(const F3Poly& f) {
    int k = int(f.size()) - 1;
    if (k < 1 || f.back() != 1) return false;
    F3Poly x{0, 1};
    F3Poly t = x;
    for (int i = 0; i < k; ++i) t = f3_powmod(t, 3, f);
    F3Poly diff = t;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = trit((3 + diff[1] - 1) % 3);
    if (!f3_mod(f3_trim(std::move(diff)), f).empty()) return false;
    for (int p : {2, 3, 5, 7, 11, 13}) {
        if (k % p) continue;
        F3Poly u = x;
        for (int i = 0; i < k / p; ++i) u = f3_powmod(u, 3, f);
        F3Poly diff2 = u;
        diff2.resize(std::max<size_t>(diff2.size(), 2), 0);
        diff2[1] = trit((3 + diff2[1] - 1) % 3);
        if (f3_gcd(f3_trim(std::move(diff2)), f).size() > 1) return false;
    }
    return true;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

constexpr uint32_t kLogCap = 1u << 20;  // exp/log tables up to 3^12 = 531441

}  // namespace

FieldConfig FieldConfig::for_q(int q) {
    FieldConfig cfg;
    switch (q) {
        case 9: cfg.m = 2; break;
        case 27: cfg.m = 3; break;
        case 81: cfg.m = 4; break;
        case 3:
            throw std::invalid_argument("q = 3 is not supported: the orbit machinery requires q >= 9");
        default:
            throw std::invalid_argument("q must be a power of 3 in {9, 27, 81}, got " + std::to_string(q));
    }
    return cfg;
}

FieldConfig FieldConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    FieldConfig cfg;
    bool have_m = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r\n");
            size_t b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        try {
            if (key == "m") {
                cfg.m = std::stoi(val);
                have_m = true;
            } else if (key.rfind("poly.", 0) == 0) {
                int d = std::stoi(key.substr(5));
                if (d < 1 || d > 4) throw std::invalid_argument("tower level out of range");
                std::vector<trit> coeffs;
                std::stringstream ss(val);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    int c = std::stoi(strip(tok));
                    if (c < 0 || c > 2) throw std::invalid_argument("coefficient not in {0,1,2}");
                    coeffs.push_back(trit(c));
                }
                cfg.poly[d] = std::move(coeffs);
            } else if (key == "epsilon") {
                cfg.epsilon = uint32_t(std::stoul(val));
            } else if (key == "gamma") {
                cfg.gamma = uint32_t(std::stoul(val));
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_m) throw std::invalid_argument("config file missing 'm'");
    if (cfg.m == 1) throw std::invalid_argument("q = 3 is not supported: the orbit machinery requires q >= 9");
    if (cfg.m < 2 || cfg.m > 4) throw std::invalid_argument("m must be in {2, 3, 4}");
    return cfg;
}

FieldContext::FieldContext(const FieldConfig& cfg) : m_(cfg.m) {
    if (m_ < 2 || m_ > 4) throw std::invalid_argument("m must be in {2, 3, 4}");
    q_ = 1;
    for (int i = 0; i < m_; ++i) q_ *= 3;

    packtab_.resize(6561);
    for (uint32_t v = 0; v < 6561; ++v) {
        P3 p{};
        uint32_t t = v;
        for (int i = 0; i < 8; ++i) {
            uint32_t tr = t % 3;
            t /= 3;
            if (tr == 1) p.ones |= 1u << i;
            if (tr == 2) p.twos |= 1u << i;
        }
        packtab_[v] = p;
    }
    for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
        uint32_t s = 0, pw = 1;
        for (int i = 0; i < 16; ++i) {
            if (mask & (1u << i)) s += pw;
            pw *= 3;
        }
        wtab_[mask] = s;
    }

    for (int d = 1; d <= 4; ++d) {
        auto& L = lv_[d];
        L.deg = d * m_;
        L.size = 1;
        for (int i = 0; i < L.deg; ++i) L.size *= 3;
        L.poly = cfg.poly[d].empty() ? default_poly(L.deg) : cfg.poly[d];
        if (int(L.poly.size()) != L.deg + 1 || L.poly.back() != 1)
            throw std::invalid_argument("defining polynomial for level " + std::to_string(d) +
                                        " must be monic of degree " + std::to_string(L.deg));
        if (!f3_irreducible(L.poly))
            throw std::invalid_argument("defining polynomial for level " + std::to_string(d) +
                                        " is not irreducible over F_3");
        build_level(d);
    }
    build_base_tables();

    if (cfg.epsilon) {
        epsilon_ = Fq(*cfg.epsilon);
        if (epsilon_ >= q_ || epsilon_ == 0 || is_square1(epsilon_))
            throw std::invalid_argument("configured epsilon is not a quadratic non-residue");
    } else {
        for (Fq x = 1;; ++x)
            if (!is_square1(x)) {
                epsilon_ = x;
                break;
            }
    }
    if (cfg.gamma) {
        gamma_ = Fq(*cfg.gamma);
        bool ok = gamma_ > 0 && gamma_ < q_;
        if (ok)
            for (auto [p, e] : factorize(q_ - 1))
                if (pow1(gamma_, (q_ - 1) / int64_t(p)) == 1) ok = false;
        if (!ok) throw std::invalid_argument("configured gamma does not generate F_q^x");
        (void)0;
    } else {
        gamma_ = Fq(lv_[1].generator);
    }

    build_embeddings();
}

P3 FieldContext::pack(uint32_t idx) const {
    const P3& lo = packtab_[idx % 6561];
    const P3& hi = packtab_[idx / 6561];
    return {lo.ones | hi.ones << 8, lo.twos | hi.twos << 8};
}

uint32_t FieldContext::unpack(P3 p) const {
    return wtab_[p.ones & 0xffff] + 2 * wtab_[p.twos & 0xffff];
}

P3 FieldContext::reduce(const Level& L, P3 w, int top_deg) const {
    for (int k = top_deg; k >= L.deg; --k) {
        uint32_t bit = 1u << k;
        unsigned v = (w.ones & bit) ? 1u : (w.twos & bit) ? 2u : 0u;
        if (!v) continue;
        w.ones &= ~bit;
        w.twos &= ~bit;
        w = p3_add(w, p3_scale(L.red[k - L.deg], v));
    }
    return w;
}

uint32_t FieldContext::mul_packed(const Level& L, uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    P3 pb = pack(b);
    P3 acc{};
    P3 pa = pack(a);
    for (int i = 0; i < L.deg; ++i) {
        uint32_t bit = 1u << i;
        unsigned v = (pa.ones & bit) ? 1u : (pa.twos & bit) ? 2u : 0u;
        if (!v) continue;
        P3 sh{pb.ones << i, pb.twos << i};
        acc = p3_add(acc, p3_scale(sh, v));
    }
    return unpack(reduce(L, acc, 2 * L.deg - 2));
}

uint32_t FieldContext::find_generator(int lvidx) const {
    const Level& L = lv_[lvidx];
    auto fac = factorize(L.size - 1);
    auto raw_pow = [&](uint32_t a, uint64_t e) {
        uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul_packed(L, r, a);
            a = mul_packed(L, a, a);
            e >>= 1;
        }
        return r;
    };
    for (uint32_t g = 2; g < L.size; ++g) {
        bool ok = true;
        for (auto [p, e] : fac)
            if (raw_pow(g, (L.size - 1) / p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("no generator found");
}

void FieldContext::build_level(int d) {
    Level& L = lv_[d];
    // reduction rows x^(deg+k) mod poly
    // x^deg = -(lower part of poly)
    P3 base{};
    {
        uint32_t v = 0, pw = 1;
        for (int i = 0; i < L.deg; ++i) {
            v += uint32_t((3 - L.poly[i]) % 3) * pw;
            pw *= 3;
        }
        base = pack(v);
    }
    L.red.resize(L.deg - 1 > 0 ? L.deg - 1 : 1);
    L.red[0] = base;
    for (int k = 1; k < L.deg - 1; ++k) {
        P3 prev = L.red[k - 1];
        P3 sh{prev.ones << 1, prev.twos << 1};
        L.red[k] = reduce(L, sh, L.deg);
    }

    L.generator = find_generator(d);
    L.has_log = L.size <= kLogCap;
    if (L.has_log) {
        L.exp_.resize(L.size - 1);
        L.log_.assign(L.size, 0);
        uint32_t x = 1;
        for (uint32_t i = 0; i + 1 < L.size; ++i) {
            L.exp_[i] = x;
            L.log_[x] = i;
            x = mul_packed(L, x, L.generator);
        }
        if (x != 1) throw std::logic_error("generator order mismatch");
    }

    // frobenius x -> x^q as images of basis monomials
    uint32_t xq;
    {
        uint32_t a = 3 % L.size;  // the element x  (idx 3) unless deg == 1
        uint64_t e = q_;
        uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul_packed(L, r, a);
            a = mul_packed(L, a, a);
            e >>= 1;
        }
        xq = r;
    }
    uint32_t p = 1;
    for (int i = 0; i < L.deg; ++i) {
        L.frob_basis[i] = pack(p);
        p = mul_packed(L, p, xq);
    }
}

void FieldContext::build_base_tables() {
    const Level& L1 = lv_[1];
    add1_.resize(size_t(q_) * q_);
    mul1_.resize(size_t(q_) * q_);
    neg1_.resize(q_);
    inv1_.assign(q_, 0);
    sqrt1_.assign(q_, Fq(0xffff));
    for (Fq a = 0; a < q_; ++a) {
        P3 pa = pack(a);
        neg1_[a] = Fq(unpack(p3_neg(pa)));
        for (Fq b = 0; b < q_; ++b) {
            add1_[size_t(a) * q_ + b] = Fq(unpack(p3_add(pa, pack(b))));
            mul1_[size_t(a) * q_ + b] = Fq(mul_packed(L1, a, b));
        }
    }
    exp1_.resize(q_ - 1);
    log1_.assign(q_, 0);
    for (uint32_t i = 0; i + 1 < uint32_t(q_); ++i) {
        exp1_[i] = Fq(L1.exp_[i]);
        log1_[L1.exp_[i]] = Fq(i);
    }
    for (Fq a = 1; a < q_; ++a) inv1_[a] = exp1_[(q_ - 1 - log1_[a]) % (q_ - 1)];
    for (Fq x = 0; x < q_; ++x) {
        Fq s = mul1(x, x);
        Fq c = std::min(x, neg1_[x]);
        if (sqrt1_[s] == 0xffff || c < sqrt1_[s]) sqrt1_[s] = c;
    }
}

void FieldContext::build_embeddings() {
    for (auto [from, to] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 4}}) {
        Embedding E;
        const Level& Lf = lv_[from];
        std::vector<uint32_t> h(Lf.poly.begin(), Lf.poly.end());
        auto rts = poly_roots_in_level(h, to);
        if (rts.empty()) throw std::logic_error("embedding root not found");
        uint32_t root = *std::min_element(rts.begin(), rts.end());
        uint32_t p = 1;
        for (int i = 0; i < Lf.deg; ++i) {
            E.basis[i] = pack(p);
            p = rmul(to, p, root);
        }
        E.section.reserve(Lf.size * 2);
        for (uint32_t v = 0; v < Lf.size; ++v) {
            uint32_t img = apply_linear(E.basis, Lf.deg, v);
            E.section.emplace(img, v);
        }
        emb_[from * 8 + to] = std::move(E);
    }
}

const FieldContext::Embedding& FieldContext::emb(int from, int to) const {
    auto it = emb_.find(from * 8 + to);
    if (it == emb_.end()) throw std::invalid_argument("no embedding between these tower levels");
    return it->second;
}

uint32_t FieldContext::apply_linear(const std::array<P3, 16>& images, int n, uint32_t a) const {
    P3 pa = pack(a);
    P3 acc{};
    for (int i = 0; i < n; ++i) {
        uint32_t bit = 1u << i;
        unsigned v = (pa.ones & bit) ? 1u : (pa.twos & bit) ? 2u : 0u;
        if (v) acc = p3_add(acc, p3_scale(images[i], v));
    }
    return unpack(acc);
}

// ---- raw index ops ----
uint32_t FieldContext::radd(int lvl, uint32_t a, uint32_t b) const {
    if (lvl == 1) return add1(Fq(a), Fq(b));
    return unpack(p3_add(pack(a), pack(b)));
}
uint32_t FieldContext::rneg(int lvl, uint32_t a) const {
    if (lvl == 1) return neg1_[a];
    return unpack(p3_neg(pack(a)));
}
uint32_t FieldContext::rsub(int lvl, uint32_t a, uint32_t b) const { return radd(lvl, a, rneg(lvl, b)); }
uint32_t FieldContext::rmul(int lvl, uint32_t a, uint32_t b) const {
    if (lvl == 1) return mul1(Fq(a), Fq(b));
    const Level& L = lv_[lvl];
    if (L.has_log) {
        if (a == 0 || b == 0) return 0;
        uint64_t s = uint64_t(L.log_[a]) + L.log_[b];
        if (s >= L.size - 1) s -= L.size - 1;
        return L.exp_[s];
    }
    return mul_packed(L, a, b);
}
uint32_t FieldContext::rinv(int lvl, uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (lvl == 1) return inv1_[a];
    const Level& L = lv_[lvl];
    if (L.has_log) return L.exp_[(L.size - 1 - L.log_[a]) % (L.size - 1)];
    return rpow(lvl, a, int64_t(L.size) - 2);
}
uint32_t FieldContext::rpow(int lvl, uint32_t a, int64_t e) const {
    const uint64_t n = lv_[lvl].size - 1;
    if (a == 0) {
        if (e < 0) throw std::domain_error("division by zero");
        return e == 0 ? 1u : 0u;
    }
    uint64_t ee = uint64_t(((e % int64_t(n)) + int64_t(n)) % int64_t(n));
    uint32_t r = 1;
    while (ee) {
        if (ee & 1) r = rmul(lvl, r, a);
        a = rmul(lvl, a, a);
        ee >>= 1;
    }
    return r;
}

Fq FieldContext::inv1(Fq a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return inv1_[a];
}
Fq FieldContext::pow1(Fq a, int64_t e) const { return Fq(rpow(1, a, e)); }

std::optional<Fq> FieldContext::sqrt1(Fq a) const {
    Fq s = sqrt1_[a];
    if (s == 0xffff) return std::nullopt;
    return s;
}

Fq FieldContext::trace_to_prime(Fq a) const {
    Fq acc = 0, t = a;
    for (int i = 0; i < m_; ++i) {
        acc = add1(acc, t);
        t = mul1(mul1(t, t), t);
    }
    return acc;
}

Fq FieldContext::cube_root1(Fq a) const {
    Fq r = a;
    for (int i = 0; i < m_ - 1; ++i) r = mul1(mul1(r, r), r);
    return r;
}

// ---- FieldElement ops ----
FieldElement FieldContext::make(int level, uint32_t idx) const {
    if (level < 1 || level > 4) throw std::invalid_argument("tower level must be in 1..4");
    if (idx >= lv_[level].size) throw std::invalid_argument("element index out of range for level");
    return {uint8_t(level), idx};
}

namespace {
inline void check_levels(const FieldElement& a, const FieldElement& b) {
    if (a.level != b.level) throw std::invalid_argument("tower level mismatch");
}
}  // namespace

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
    check_levels(a, b);
    return {a.level, radd(a.level, a.idx, b.idx)};
}
FieldElement FieldContext::sub(FieldElement a, FieldElement b) const {
    check_levels(a, b);
    return {a.level, rsub(a.level, a.idx, b.idx)};
}
FieldElement FieldContext::neg(FieldElement a) const { return {a.level, rneg(a.level, a.idx)}; }
FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
    check_levels(a, b);
    return {a.level, rmul(a.level, a.idx, b.idx)};
}
FieldElement FieldContext::inv(FieldElement a) const { return {a.level, rinv(a.level, a.idx)}; }
FieldElement FieldContext::div(FieldElement a, FieldElement b) const {
    check_levels(a, b);
    return {a.level, rmul(a.level, a.idx, rinv(b.level, b.idx))};
}
FieldElement FieldContext::pow(FieldElement a, int64_t e) const { return {a.level, rpow(a.level, a.idx, e)}; }

FieldElement FieldContext::frobenius(FieldElement a, int k) const {
    const Level& L = lv_[a.level];
    k %= a.level;
    if (k < 0) k += a.level;
    uint32_t v = a.idx;
    for (int i = 0; i < k; ++i) {
        if (L.has_log && v != 0) {
            uint64_t s = (uint64_t(L.log_[v]) * q_) % (L.size - 1);
            v = L.exp_[s];
        } else {
            v = apply_linear(L.frob_basis, L.deg, v);
        }
    }
    return {a.level, v};
}

FieldElement FieldContext::trace(FieldElement a, int target_level) const {
    if (a.level % target_level != 0) throw std::invalid_argument("target level must divide element level");
    uint32_t acc = 0;
    int steps = a.level / target_level;
    FieldElement cur = a;
    for (int j = 0; j < steps; ++j) {
        acc = radd(a.level, acc, cur.idx);
        cur = frobenius(cur, target_level);
    }
    auto down = project({a.level, acc}, target_level);
    if (!down) throw std::logic_error("trace did not land in target subfield");
    return *down;
}

FieldElement FieldContext::norm(FieldElement a, int target_level) const {
    if (a.level % target_level != 0) throw std::invalid_argument("target level must divide element level");
    uint32_t acc = 1;
    int steps = a.level / target_level;
    FieldElement cur = a;
    for (int j = 0; j < steps; ++j) {
        acc = rmul(a.level, acc, cur.idx);
        cur = frobenius(cur, target_level);
    }
    auto down = project({a.level, acc}, target_level);
    if (!down) throw std::logic_error("norm did not land in target subfield");
    return *down;
}

bool FieldContext::is_square(FieldElement a) const {
    if (a.idx == 0) return true;
    const Level& L = lv_[a.level];
    if (L.has_log) return !(L.log_[a.idx] & 1);
    return rpow(a.level, a.idx, (int64_t(L.size) - 1) / 2) == 1;
}

std::optional<FieldElement> FieldContext::sqrt(FieldElement a) const {
    if (a.idx == 0) return FieldElement{a.level, 0};
    const Level& L = lv_[a.level];
    if (L.has_log) {
        uint32_t lg = L.log_[a.idx];
        if (lg & 1) return std::nullopt;
        uint32_t s = L.exp_[lg / 2];
        return FieldElement{a.level, std::min(s, rneg(a.level, s))};
    }
    if (!is_square(a)) return std::nullopt;
    // roots of x^2 - a
    auto rts = polyl::roots(*this, a.level, {rneg(a.level, a.idx), 0, 1});
    if (rts.empty()) return std::nullopt;
    return FieldElement{a.level, *std::min_element(rts.begin(), rts.end())};
}

FieldElement FieldContext::embed(FieldElement a, int target_level) const {
    if (a.level == target_level) return a;
    if (target_level % a.level != 0) throw std::invalid_argument("element level must divide target level");
    const auto& E = emb(a.level, target_level);
    return {uint8_t(target_level), apply_linear(E.basis, lv_[a.level].deg, a.idx)};
}

std::optional<FieldElement> FieldContext::project(FieldElement a, int target_level) const {
    if (a.level == target_level) return a;
    if (a.level % target_level != 0) throw std::invalid_argument("target level must divide element level");
    const auto& E = emb(target_level, a.level);
    auto it = E.section.find(a.idx);
    if (it == E.section.end()) return std::nullopt;
    return FieldElement{uint8_t(target_level), it->second};
}

bool FieldContext::in_subfield(FieldElement a, int target_level) const {
    return project(a, target_level).has_value();
}

std::vector<trit> FieldContext::coeffs(FieldElement a) const {
    std::vector<trit> out(lv_[a.level].deg);
    uint32_t v = a.idx;
    for (auto& c : out) {
        c = trit(v % 3);
        v /= 3;
    }
    return out;
}

std::vector<uint32_t> FieldContext::poly_roots_in_level(const std::vector<uint32_t>& h, int lvl) const {
    return polyl::roots(*this, lvl, h);
}

// ---- polynomial helpers over a tower level ----
namespace polyl {

std::vector<uint32_t> trim(std::vector<uint32_t> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<uint32_t> mul(const FieldContext& F, int lv, const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j]) r[i + j] = F.radd(lv, r[i + j], F.rmul(lv, a[i], b[j]));
    return trim(std::move(r));
}

static std::pair<std::vector<uint32_t>, std::vector<uint32_t>> divmod(const FieldContext& F, int lv,
                                                                      std::vector<uint32_t> a,
                                                                      const std::vector<uint32_t>& b) {
    a = trim(std::move(a));
    uint32_t li = F.rinv(lv, b.back());
    std::vector<uint32_t> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        uint32_t c = F.rmul(lv, a.back(), li);
        size_t d = a.size() - b.size();
        q[d] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + d] = F.rsub(lv, a[i + d], F.rmul(lv, c, b[i]));
        a = trim(std::move(a));
    }
    return {trim(std::move(q)), std::move(a)};
}

std::vector<uint32_t> mod(const FieldContext& F, int lv, std::vector<uint32_t> a, const std::vector<uint32_t>& b) {
    return divmod(F, lv, std::move(a), b).second;
}

std::vector<uint32_t> gcd(const FieldContext& F, int lv, std::vector<uint32_t> a, std::vector<uint32_t> b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = mod(F, lv, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint32_t li = F.rinv(lv, a.back());
        for (auto& c : a) c = F.rmul(lv, c, li);
    }
    return a;
}

std::vector<uint32_t> powmod(const FieldContext& F, int lv, std::vector<uint32_t> a, uint64_t e,
                             const std::vector<uint32_t>& m) {
    std::vector<uint32_t> r{1};
    a = mod(F, lv, std::move(a), m);
    while (e) {
        if (e & 1) r = mod(F, lv, mul(F, lv, r, a), m);
        a = mod(F, lv, mul(F, lv, a, a), m);
        e >>= 1;
    }
    return r;
}

uint32_t eval(const FieldContext& F, int lv, const std::vector<uint32_t>& a, uint32_t x) {
    uint32_t acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = F.radd(lv, F.rmul(lv, acc, x), *it);
    return acc;
}

// Equal-degree splitting; `a` must split into distinct linear factors over the level.
std::vector<uint32_t> roots(const FieldContext& F, int lv, const std::vector<uint32_t>& a_in) {
    std::vector<uint32_t> out;
    std::vector<std::vector<uint32_t>> work{trim(a_in)};
    const uint64_t half = (uint64_t(F.level_size(lv)) - 1) / 2;
    while (!work.empty()) {
        auto f = std::move(work.back());
        work.pop_back();
        if (f.size() <= 1) continue;
        if (f.size() == 2) {
            out.push_back(F.rmul(lv, F.rneg(lv, f[0]), F.rinv(lv, f[1])));
            continue;
        }
        if (f[0] == 0) {
            out.push_back(0);
            std::vector<uint32_t> g(f.begin() + 1, f.end());
            work.push_back(trim(std::move(g)));
            continue;
        }
        bool split = false;
        for (uint32_t c = 0; c < F.level_size(lv) && !split; ++c) {
            auto t = powmod(F, lv, {c, 1}, half, f);
            if (t.empty())
                t = {F.rneg(lv, 1)};
            else
                t[0] = F.rsub(lv, t[0], 1);
            auto g = gcd(F, lv, f, trim(std::move(t)));
            size_t dg = g.empty() ? 0 : g.size() - 1;
            if (dg > 0 && dg < f.size() - 1) {
                auto [quot, rem] = divmod(F, lv, f, g);
                if (!rem.empty()) throw std::logic_error("split remainder nonzero");
                work.push_back(std::move(g));
                work.push_back(std::move(quot));
                split = true;
            }
        }
        if (!split) throw std::logic_error("polynomial did not split over the requested level");
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace polyl

}  // namespace pg3q
