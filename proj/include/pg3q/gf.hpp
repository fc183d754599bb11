#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pg3q {

// Canonical index of a base-field element: the base-3 value of its
// coefficient vector (low degree first). Level-1 indices fit in 16 bits
// since q <= 81; higher tower levels use 32-bit indices.
using Fq = uint16_t;
using trit = uint8_t;

/// Element of F_{q^level} for tower levels 1..4 over q = 3^m.
struct FieldElement {
    uint8_t level = 1;
    uint32_t idx = 0;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Bit-plane packed F_3 coefficient vector: bit i of `ones` set iff trit i
/// equals 1, bit i of `twos` iff it equals 2. Supports carry-free mod-3 math
/// on up to 32 trits.
struct P3 {
    uint32_t ones = 0, twos = 0;
};

inline P3 p3_add(P3 a, P3 b) {
    uint32_t r1 = (a.ones & ~b.ones & ~b.twos) | (~a.ones & ~a.twos & b.ones) | (a.twos & b.twos);
    uint32_t r2 = (a.twos & ~b.ones & ~b.twos) | (~a.ones & ~a.twos & b.twos) | (a.ones & b.ones);
    return {r1, r2};
}
inline P3 p3_neg(P3 a) { return {a.twos, a.ones}; }
inline P3 p3_scale(P3 a, unsigned t) { return t == 0 ? P3{} : (t == 1 ? a : p3_neg(a)); }
inline bool p3_zero(P3 a) { return (a.ones | a.twos) == 0; }

struct FieldConfig {
    int m = 2;                                        // q = 3^m, m in {2,3,4}
    std::array<std::vector<trit>, 5> poly{};          // poly[d]: defining polynomial of level d (may be empty -> default)
    std::optional<uint32_t> epsilon;                  // override: non-residue in F_q (canonical index)
    std::optional<uint32_t> gamma;                    // override: generator of F_q^x

    static FieldConfig for_q(int q);
    static FieldConfig from_file(const std::string& path);
};

/// Arithmetic context for the tower F_q < F_{q^2} < F_{q^3} < F_{q^4},
/// q = 3^m. Immutable after construction; safe to share across threads.
class FieldContext {
public:
    explicit FieldContext(const FieldConfig& cfg);
    explicit FieldContext(int q) : FieldContext(FieldConfig::for_q(q)) {}

    int m() const { return m_; }
    int q() const { return q_; }
    Fq epsilon() const { return epsilon_; }
    Fq gamma() const { return gamma_; }
    uint32_t level_size(int level) const { return lv_[level].size; }
    const std::vector<trit>& defining_poly(int level) const { return lv_[level].poly; }

    // ---- base-field (level 1) fast path ----
    Fq add1(Fq a, Fq b) const { return add1_[size_t(a) * q_ + b]; }
    Fq sub1(Fq a, Fq b) const { return add1_[size_t(a) * q_ + neg1_[b]]; }
    Fq neg1(Fq a) const { return neg1_[a]; }
    Fq mul1(Fq a, Fq b) const { return mul1_[size_t(a) * q_ + b]; }
    Fq inv1(Fq a) const;
    Fq div1(Fq a, Fq b) const { return mul1(a, inv1(b)); }
    Fq pow1(Fq a, int64_t e) const;
    bool is_square1(Fq a) const { return a == 0 || !(log1_[a] & 1); }
    /// Canonical square root (the lex-smaller of the pair), or nullopt.
    std::optional<Fq> sqrt1(Fq a) const;
    Fq trace_to_prime(Fq a) const;      // Tr_{F_q/F_3}, lands in {0,1,2}
    Fq cube_root1(Fq a) const;          // cubing is bijective in char 3

    // ---- generic tower ops ----
    FieldElement zero(int level = 1) const { return {uint8_t(level), 0}; }
    FieldElement one(int level = 1) const { return {uint8_t(level), 1}; }
    FieldElement make(int level, uint32_t idx) const;
    FieldElement from_base(Fq a) const { return {1, a}; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, int64_t e) const;

    /// a^{q^k} at a's level.
    FieldElement frobenius(FieldElement a, int k = 1) const;
    /// Relative trace/norm down to a tower level dividing a's level.
    FieldElement trace(FieldElement a, int target_level) const;
    FieldElement norm(FieldElement a, int target_level) const;

    bool is_square(FieldElement a) const;
    std::optional<FieldElement> sqrt(FieldElement a) const;

    /// Inclusion F_{q^a} -> F_{q^b} for a | b.
    FieldElement embed(FieldElement a, int target_level) const;
    /// Partial inverse of embed: defined exactly on the subfield image.
    std::optional<FieldElement> project(FieldElement a, int target_level) const;
    bool in_subfield(FieldElement a, int target_level) const;

    std::vector<trit> coeffs(FieldElement a) const;   // low degree first, length level*m

    // raw-index helpers used by the polynomial machinery
    uint32_t radd(int lv, uint32_t a, uint32_t b) const;
    uint32_t rsub(int lv, uint32_t a, uint32_t b) const;
    uint32_t rneg(int lv, uint32_t a) const;
    uint32_t rmul(int lv, uint32_t a, uint32_t b) const;
    uint32_t rinv(int lv, uint32_t a) const;
    uint32_t rpow(int lv, uint32_t a, int64_t e) const;

private:
    struct Level {
        int deg = 0;                 // degree over F_3 = level * m
        uint32_t size = 0;           // 3^deg
        std::vector<trit> poly;      // defining polynomial, low first, monic, length deg+1
        std::vector<P3> red;         // x^(deg+k) mod poly, packed
        bool has_log = false;
        std::vector<uint32_t> exp_, log_;
        uint32_t generator = 0;
        std::array<P3, 16> frob_basis{};   // (x^i)^q packed images
    };

    P3 pack(uint32_t idx) const;
    uint32_t unpack(P3 p) const;
    uint32_t mul_packed(const Level& L, uint32_t a, uint32_t b) const;
    P3 reduce(const Level& L, P3 wide, int top_deg) const;
    uint32_t apply_linear(const std::array<P3, 16>& images, int n, uint32_t a) const;

    void build_level(int d);
    void build_base_tables();
    void build_embeddings();
    uint32_t find_generator(int lv) const;
    std::vector<uint32_t> poly_roots_in_level(const std::vector<uint32_t>& h, int lv) const;

    int m_ = 0, q_ = 0;
    Fq epsilon_ = 0, gamma_ = 0;
    std::array<Level, 5> lv_{};      // index by tower level 1..4

    std::vector<Fq> add1_, mul1_, neg1_, inv1_, log1_, exp1_, sqrt1_;
    std::array<uint32_t, 1 << 16> wtab_{};          // mask -> sum of 3^i
    std::vector<P3> packtab_;                        // idx < 3^8 -> packed

    // embeddings keyed by (from, to) among (1,2),(1,3),(1,4),(2,4)
    struct Embedding {
        std::array<P3, 16> basis{};                  // images of x_from^i in target level
        std::unordered_map<uint32_t, uint32_t> section;
    };
    const Embedding& emb(int from, int to) const;
    std::unordered_map<int, Embedding> emb_;

    friend class FieldTowerTestPeer;
};

/// Polynomial helpers over a fixed tower level; coefficients are raw indices,
/// low degree first. Degrees stay tiny (<= 8), so everything is schoolbook.
namespace polyl {
std::vector<uint32_t> trim(std::vector<uint32_t> a);
std::vector<uint32_t> mul(const FieldContext& F, int lv, const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
std::vector<uint32_t> mod(const FieldContext& F, int lv, std::vector<uint32_t> a, const std::vector<uint32_t>& b);
std::vector<uint32_t> gcd(const FieldContext& F, int lv, std::vector<uint32_t> a, std::vector<uint32_t> b);
std::vector<uint32_t> powmod(const FieldContext& F, int lv, std::vector<uint32_t> a, uint64_t e, const std::vector<uint32_t>& mod);
uint32_t eval(const FieldContext& F, int lv, const std::vector<uint32_t>& a, uint32_t x);
/// All roots in F_{q^lv} of a polynomial that splits there (deterministic).
std::vector<uint32_t> roots(const FieldContext& F, int lv, const std::vector<uint32_t>& a);
}  // namespace polyl

}  // namespace pg3q
