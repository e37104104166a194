#pragma once

#include <array>
#include <memory>
#include <optional>

#include "beauville/structure.hpp"

namespace bvl {

/// Parameters of Sz(q), q = 2^e with odd e >= 3: m = (e-1)/2, r = 2^{m+1}
/// (so r^2 = 2q) and the twist theta: x -> x^{2^{m+1}} with
/// theta(theta(x)) = x^2.
struct SzContext {
    unsigned e = 3;
    unsigned m = 1;
    std::uint64_t q = 8;
    std::uint64_t r = 4;
    std::shared_ptr<const Field> field;
};

SzContext make_sz_context(unsigned e);

/// 4x4 matrix over F_{2^e}; the group elements produced here satisfy the
/// Sz(q)-defining relations by construction from the generators.
class Mat4 {
public:
    Mat4() = default;
    explicit Mat4(const Field* F) : f_(F) { v_.fill(0); }
    static Mat4 identity(const Field& F);

    const Field& field() const { return *f_; }
    std::uint64_t at(unsigned i, unsigned j) const { return v_[4 * i + j]; }
    void set(unsigned i, unsigned j, std::uint64_t idx) { v_[4 * i + j] = idx; }

    Mat4 operator*(const Mat4& o) const;
    Mat4 inverse() const;  ///< Gauss-Jordan over the field
    Mat4 frobenius_map() const;  ///< entrywise x -> x^2
    bool operator==(const Mat4& o) const { return v_ == o.v_; }
    bool is_identity() const;
    std::string key() const;
    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::array<std::uint64_t, 16> v_{};
};

/// Group-engine element wrapper for Sz(q) matrices.
class SzElement {
public:
    SzElement() = default;
    explicit SzElement(const Mat4& m) : m_(m) {}
    const Mat4& matrix() const { return m_; }
    SzElement operator*(const SzElement& o) const { return SzElement(m_ * o.m_); }
    SzElement inverse() const { return SzElement(m_.inverse()); }
    SzElement frobenius() const { return SzElement(m_.frobenius_map()); }
    bool operator==(const SzElement& o) const { return m_ == o.m_; }
    bool is_identity() const { return m_.is_identity(); }
    std::string key() const { return m_.key(); }

private:
    Mat4 m_;
};

/// The unipotent family member U(a, b) in the 4-dimensional representation:
/// rows (1,0,0,0), (a,1,0,0), (b,a^theta,1,0),
/// (a^{theta+2}+ab+b^theta, a^{theta+1}+b, a, 1), with the group law
/// U(a,b) U(c,d) = U(a+c, b+d+a^theta c).
Mat4 sz_unipotent(const SzContext& ctx, const FieldElement& a, const FieldElement& b);
/// The torus element diag(l^{k+1}, l^k, l^{-k}, l^{-k-1}) with k = 2^m.
Mat4 sz_torus(const SzContext& ctx, const FieldElement& lambda);
/// The antidiagonal Weyl involution.
Mat4 sz_weyl(const SzContext& ctx);

/// Standard generating set: U(1,0), the torus element of a generator of
/// F_q^*, and the Weyl involution.  The entries are not pinned by any text;
/// the representation is certified by the closure order q^2(q^2+1)(q-1) and
/// the element-order spectrum at e = 3.
std::vector<SzElement> sz_generators(const SzContext& ctx);

/// Builds (or loads from the cache directory, when set via the
/// BEAUVILLE_CACHE_DIR environment variable) the full Sz(q) closure.
FiniteGroup<SzElement> sz_group(const SzContext& ctx,
                                std::size_t bound = kDefaultClosureBound);

struct SuzukiOrderData {
    unsigned e;
    std::uint64_t q, r;
    std::uint64_t q_minus_1, q_plus_r_plus_1, q_minus_r_plus_1;
    std::uint64_t n;  ///< whichever of q+-r+1 is coprime to 5, by direct gcd
    std::uint64_t group_order;  ///< q^2 (q^2 + 1) (q - 1)
};

/// The self-centralising torus orders of Sz(2^e) and the order-n choice for
/// the second triple.  n is selected by direct gcd against 5 (the mod-4
/// parity rule stated alongside fails at e = 3, where m = 1 would pick
/// q - r + 1 = 5).
SuzukiOrderData suzuki_order_data(unsigned e);

struct SzStructure {
    SzContext ctx;
    TripleT<SzElement> t1, t2;
};

/// Finds the canonically least generating triples of types (2,4,5) and
/// (q-1, n, n) in Sz(8) by exhaustive search over the enumerated group.
SzStructure sz_find_structure(const SzContext& ctx, const FiniteGroup<SzElement>& G);

/// Full verification of an Sz structure against the enumerated group:
/// conditions (1)-(3) with exhaustive sigma sets, generation by subgroup
/// closure, and a strongly-real search over all of Aut(Sz(q)) = inner
/// composed with field automorphisms.
VerificationReport verify_sz(const SzStructure& s, const FiniteGroup<SzElement>& G);

/// True iff some automorphism g -> M phi^j(g) M^{-1} (M in G, j < e) maps
/// g to g^{-1}; used for the negative strongly-real certificate.
bool sz_element_invertible_by_aut(const FiniteGroup<SzElement>& G, unsigned e,
                                  const SzElement& g);

struct ReeOrderData {
    unsigned e;
    std::uint64_t q, r;                    // q = 3^e, r^2 = 3q
    std::uint64_t n_plus, n_minus;         // (q+1) +- r, the factors of q^2-q+1
    std::uint64_t n;                       // canonical choice coprime to 7
    std::uint64_t t2_first;                // (q-1)/2
    std::array<std::uint64_t, 3> t1_type;  // (2, 3, 7)
    std::uint64_t group_order;             // q^3 (q^3 + 1) (q - 1)
};

/// Order arithmetic for the Ree groups R(3^e): the two torus orders
/// (q+1) +- r (with r^2 = 3q) multiply to q^2 - q + 1; n is the smaller
/// candidate coprime to 7.  No group elements are constructed.
ReeOrderData ree_order_data(unsigned e);

}  // namespace bvl
