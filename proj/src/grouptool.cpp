#include "beauville/grouptool.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace bvl {

// ---------------------------------------------------------------------------
// Genus and hyperbolicity

bool is_hyperbolic_type(std::uint64_t l, std::uint64_t m, std::uint64_t n) {
    if (l == 0 || m == 0 || n == 0) throw std::invalid_argument("orders must be positive");
    using I = __int128;
    return I(m) * n + I(l) * n + I(l) * m < I(l) * m * n;
}

std::int64_t genus(std::uint64_t group_order, std::uint64_t l, std::uint64_t m, std::uint64_t n) {
    if (l == 0 || m == 0 || n == 0) throw std::invalid_argument("orders must be positive");
    using I = __int128;
    I num = I(group_order) * (I(l) * m * n - I(m) * n - I(l) * n - I(l) * m);
    I den = I(l) * m * n;
    if (num % den != 0) throw std::invalid_argument("2g-2 is not an integer for this type");
    I t = num / den;
    if (t % 2 != 0) throw std::invalid_argument("2g-2 is odd for this type");
    return static_cast<std::int64_t>(t / 2 + 1);
}

// ---------------------------------------------------------------------------
// Group-dump cache

namespace {
constexpr char kCacheMagic[4] = {'B', 'F', 'G', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

bool get_u64(std::ifstream& in, std::uint64_t& v) {
    char buf[8];
    if (!in.read(buf, 8)) return false;
    v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(buf[i]);
    return true;
}

bool get_u32(std::ifstream& in, std::uint32_t& v) {
    char buf[4];
    if (!in.read(buf, 4)) return false;
    v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(buf[i]);
    return true;
}
}  // namespace

void write_group_cache(const std::string& path, const std::vector<std::string>& keys) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + path);
    out.write(kCacheMagic, 4);
    put_u64(out, keys.size());
    for (const auto& k : keys) {
        put_u32(out, static_cast<std::uint32_t>(k.size()));
        out.write(k.data(), static_cast<std::streamsize>(k.size()));
    }
}

std::optional<std::vector<std::string>> read_group_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
    std::uint64_t count;
    if (!get_u64(in, count) || count > 100'000'000) return std::nullopt;
    std::vector<std::string> keys;
    keys.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint32_t len;
        if (!get_u32(in, len) || len > 4096) return std::nullopt;
        std::string k(len, '\0');
        if (!in.read(k.data(), len)) return std::nullopt;
        keys.push_back(std::move(k));
    }
    return keys;
}

// ---------------------------------------------------------------------------
// Small concrete groups

MetacyclicElement MetacyclicElement::operator*(const MetacyclicElement& o) const {
    // (a^i b^j)(a^k b^l) = a^{i + k (p+1)^j} b^{j+l}
    std::uint64_t p2 = p_ * p_;
    std::uint64_t shift = powmod(p_ + 1, j_, p2);
    return {p_, (i_ + mulmod(o.i_, shift, p2)) % p2, j_ + o.j_};
}

MetacyclicElement MetacyclicElement::inverse() const {
    std::uint64_t p2 = p_ * p_;
    std::uint64_t jinv = (p_ - j_) % p_;
    std::uint64_t shift = powmod(p_ + 1, jinv, p2);
    return {p_, (p2 - mulmod(i_, shift, p2)) % p2, jinv};
}

std::string MetacyclicElement::key() const {
    std::string k(8, '\0');
    for (int b = 0; b < 4; ++b) k[b] = static_cast<char>((i_ >> (8 * b)) & 0xff);
    for (int b = 0; b < 4; ++b) k[4 + b] = static_cast<char>((j_ >> (8 * b)) & 0xff);
    return k;
}

std::string AbelianPairElement::key() const {
    std::string k(8, '\0');
    for (int b = 0; b < 4; ++b) k[b] = static_cast<char>((i_ >> (8 * b)) & 0xff);
    for (int b = 0; b < 4; ++b) k[4 + b] = static_cast<char>((j_ >> (8 * b)) & 0xff);
    return k;
}

FiniteGroup<MetacyclicElement> metacyclic_group(std::uint64_t p) {
    MetacyclicElement id(p, 0, 0), a(p, 1, 0), b(p, 0, 1);
    return FiniteGroup<MetacyclicElement>::closure(id, {a, b});
}

FiniteGroup<AbelianPairElement> abelian_pp_group(std::uint64_t n) {
    AbelianPairElement id(n, 0, 0), a(n, 1, 0), b(n, 0, 1);
    return FiniteGroup<AbelianPairElement>::closure(id, {a, b});
}

// ---------------------------------------------------------------------------
// Generation certificates for SL2/PSL2

std::string gen_verdict_name(GenVerdict v) {
    switch (v) {
        case GenVerdict::proven: return "proven";
        case GenVerdict::disproven: return "disproven";
        case GenVerdict::unknown: return "unknown";
    }
    return "?";
}

std::uint64_t target_group_order(MatMode mode, std::uint64_t q) {
    std::uint64_t n = q * (q * q - 1);
    if (mode == MatMode::PSL2) return n / (q % 2 == 0 ? 1 : 2);
    if (mode == MatMode::SL2) return n;
    throw std::invalid_argument("target order defined for SL2/PSL2 only");
}

namespace {
bool ext_points_equal(const QuadExtension& E, const ProjPointExt& a, const ProjPointExt& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || E.index(a.x) == E.index(b.x);
}

bool preserves_pair(const QuadExtension& E, const Mat2& m, const ProjPointExt& p,
                    const ProjPointExt& q) {
    ProjPointExt ip = apply_moebius_ext(m, E, p);
    ProjPointExt iq = apply_moebius_ext(m, E, q);
    return (ext_points_equal(E, ip, p) && ext_points_equal(E, iq, q)) ||
           (ext_points_equal(E, ip, q) && ext_points_equal(E, iq, p));
}

/// Orders possible inside a subgroup isomorphic to (P)SL2(r) or PGL2(r).
bool order_fits_subfield_group(std::uint64_t ord, std::uint64_t r, std::uint64_t p, bool pgl) {
    if (ord == 1 || ord == p) return true;
    std::uint64_t kr = (r % 2 == 0) ? 1 : 2;
    std::uint64_t d1 = pgl ? r - 1 : (r - 1) / kr;
    std::uint64_t d2 = pgl ? r + 1 : (r + 1) / kr;
    return (d1 != 0 && d1 % ord == 0) || (d2 % ord == 0);
}
}  // namespace

GenVerdict generates_ladder(const std::vector<GroupElement>& gens) {
    if (gens.empty()) return GenVerdict::disproven;
    MatMode mode = gens[0].mode();
    if (mode == MatMode::SL2) {
        // a set generates the perfect central cover iff its image generates
        // the projective quotient (q >= 4; smaller q is left to closure)
        if (gens[0].field().q() <= 3) return GenVerdict::unknown;
        std::vector<GroupElement> images;
        for (const auto& g : gens) images.emplace_back(g.matrix(), MatMode::PSL2);
        return generates_ladder(images);
    }
    if (mode != MatMode::PSL2) throw std::invalid_argument("ladder expects SL2/PSL2 elements");

    const Field& F = gens[0].field();
    std::uint64_t q = F.q(), p = F.p();
    if (q <= 3) return GenVerdict::unknown;

    std::vector<const GroupElement*> S;
    for (const auto& g : gens)
        if (!g.is_identity()) S.push_back(&g);
    if (S.empty()) return GenVerdict::disproven;

    QuadExtension E(&F);

    // common fixed point on P^1(GF(q^2)) => inside a point stabilizer or
    // torus normalizer's cyclic part: proper subgroup
    for (const ProjPointExt& pt : fixed_points_ext(*S[0], E)) {
        bool common = true;
        for (std::size_t i = 1; i < S.size() && common; ++i) {
            ProjPointExt img = apply_moebius_ext(S[i]->matrix(), E, pt);
            common = ext_points_equal(E, img, pt);
        }
        if (common) return GenVerdict::disproven;
    }

    // dihedral exclusion via the invariant-pair test
    const GroupElement* g0 = nullptr;
    std::vector<std::uint64_t> orders;
    for (const GroupElement* g : S) orders.push_back(element_order(*g));
    for (std::size_t i = 0; i < S.size(); ++i)
        if (orders[i] > 2) { g0 = S[i]; break; }
    if (!g0) return GenVerdict::unknown;
    auto pts0 = fixed_points_ext(*g0, E);
    if (pts0.size() == 2) {
        bool all_preserve = true;
        for (const GroupElement* g : S)
            if (!preserves_pair(E, g->matrix(), pts0[0], pts0[1])) { all_preserve = false; break; }
        if (all_preserve) return GenVerdict::disproven;  // inside the pair stabilizer
    }
    // parabolic g0 of order > 2 fits no dihedral subgroup: excluded either way

    // subfield subgroups: (P)SL2(r) for maximal subfields, PGL2(sqrt q)
    unsigned e = F.e();
    for (std::uint64_t l : prime_divisors(e)) {
        std::uint64_t r = checked_pow(p, e / static_cast<unsigned>(l));
        bool all_fit = true;
        for (std::uint64_t o : orders)
            if (!order_fits_subfield_group(o, r, p, false)) { all_fit = false; break; }
        if (all_fit) return GenVerdict::unknown;
    }
    if (e % 2 == 0) {
        std::uint64_t r = checked_pow(p, e / 2);
        bool all_fit = true;
        for (std::uint64_t o : orders)
            if (!order_fits_subfield_group(o, r, p, true)) { all_fit = false; break; }
        if (all_fit) return GenVerdict::unknown;
    }

    // A4 / S4 / A5 have no elements of order 6 or higher
    std::uint64_t maxo = *std::max_element(orders.begin(), orders.end());
    if (maxo <= 5) return GenVerdict::unknown;

    return GenVerdict::proven;
}

GenVerdict generates(const std::vector<GroupElement>& gens, std::size_t closure_bound) {
    GenVerdict ladder = generates_ladder(gens);
    if (gens.empty()) return ladder;
    MatMode mode = gens[0].mode();
    if (mode != MatMode::SL2 && mode != MatMode::PSL2) return ladder;
    std::uint64_t target = target_group_order(mode, gens[0].field().q());
    if (target > closure_bound) return ladder;

    GroupElement id(Mat2::identity(gens[0].field()), mode);
    auto G = FiniteGroup<GroupElement>::closure(id, gens, target + 1);
    GenVerdict byclosure = G.order() == target ? GenVerdict::proven : GenVerdict::disproven;
    if ((ladder == GenVerdict::proven && byclosure == GenVerdict::disproven) ||
        (ladder == GenVerdict::disproven && byclosure == GenVerdict::proven))
        throw std::logic_error("generation ladder contradicts closure");
    return byclosure;
}

std::vector<GroupElement> sl2_standard_generators(const Field& F, MatMode mode) {
    std::vector<GroupElement> gens;
    FieldElement b = F.one();
    for (unsigned i = 0; i < F.e(); ++i) {
        gens.emplace_back(Mat2{F.one(), b, F.zero(), F.one()}, mode);
        gens.emplace_back(Mat2{F.one(), F.zero(), b, F.one()}, mode);
        b = b * F.t();
    }
    return gens;
}

}  // namespace bvl
