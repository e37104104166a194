#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beauville/numth.hpp"

namespace bvl {

class Field;

/// Dense polynomial over the prime field F_p, coefficients stored lowest
/// degree first and normalized (no trailing zeros, all in [0, p)).
/// The zero polynomial has an empty coefficient vector and degree() == -1;
/// that sentinel is never fed into exponent formulas.
class Polynomial {
public:
    Polynomial() : p_(2) {}
    Polynomial(std::uint64_t p, std::vector<std::uint64_t> coeffs);

    static Polynomial zero(std::uint64_t p) { return Polynomial(p, {}); }
    static Polynomial constant(std::uint64_t p, std::uint64_t c) { return Polynomial(p, {c}); }
    /// The monomial t^k.
    static Polynomial t_power(std::uint64_t p, unsigned k);

    std::uint64_t p() const { return p_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const;
    std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::uint64_t leading() const;
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
    bool operator==(const Polynomial& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }

    Polynomial monic() const;  ///< scaled by the inverse of the leading coefficient
    static Polynomial gcd(Polynomial a, Polynomial b);  ///< monic gcd
    /// this^n mod m (binary exponentiation in F_p[t]/(m)).
    Polynomial powmod(std::uint64_t n, const Polynomial& m) const;

    /// "t^3+t+1" style ascii form; also accepts e.g. "2t^2-t+1", "-t^2-1", "5".
    static Polynomial parse(std::uint64_t p, const std::string& text);
    std::string str() const;

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> coeffs_;
    void normalize();
};

enum class PolyClass { reducible, irreducible, primitive };

/// Rabin irreducibility test plus an order check of t for primitivity.
/// Primitive means irreducible and t generates (F_p[t]/(f))^*.
PolyClass poly_classify(const Polynomial& f);
bool poly_is_irreducible(const Polynomial& f);

/// Element of a Field, stored as a packed index: sum of coeff_i * p^i over
/// the basis 1, t, ..., t^{e-1}.  Two elements are equal iff their indices
/// are equal; the index also gives the canonical total order (constants
/// first), which fixes "smallest primitive root", sqrt signs and all
/// deterministic tie-breaks.
class FieldElement {
public:
    FieldElement() : f_(nullptr), v_(0) {}
    FieldElement(const Field* f, std::uint64_t idx) : f_(f), v_(idx) {}

    const Field& field() const { return *f_; }
    const Field* field_ptr() const { return f_; }
    std::uint64_t index() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    std::vector<std::uint64_t> coeffs() const;  ///< exactly e residues mod p

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t n) const;
    FieldElement frobenius() const;  ///< x -> x^p

    bool operator==(const FieldElement& o) const { return v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return v_ != o.v_; }
    bool operator<(const FieldElement& o) const { return v_ < o.v_; }

    std::string str() const;

private:
    const Field* f_;
    std::uint64_t v_;
};

/// GF(p^e) presented as F_p[t]/(modulus).  Immutable after construction;
/// all operations are pure, so a Field may be shared freely across threads.
/// Elements hold a raw pointer to their field, which must outlive them.
class Field {
public:
    std::uint64_t p() const { return p_; }
    unsigned e() const { return e_; }
    std::uint64_t q() const { return q_; }
    unsigned k() const { return q_ % 2 == 0 ? 1 : 2; }  ///< gcd(2, q-1)
    const Polynomial& modulus() const { return modulus_; }
    const std::vector<std::pair<std::uint64_t, int>>& q1_factors() const { return q1_factors_; }

    FieldElement zero() const { return {this, 0}; }
    FieldElement one() const { return {this, one_}; }
    FieldElement from_int(std::int64_t c) const;              ///< constant embedding
    FieldElement element(std::uint64_t idx) const;
    FieldElement element(const std::vector<std::uint64_t>& coeffs) const;
    FieldElement from_poly(const Polynomial& g) const;        ///< g(t) reduced mod modulus
    Polynomial to_poly(const FieldElement& a) const;
    FieldElement t() const { return from_poly(Polynomial::t_power(p_, 1)); }

    // packed-index arithmetic
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t n) const;

    /// Bytes needed to encode one element index; used by canonical keys.
    unsigned key_width() const { return key_width_; }
    void append_key(std::string& out, std::uint64_t idx) const;

    friend std::shared_ptr<const Field> make_field(std::uint64_t p, unsigned e,
                                                   const std::optional<Polynomial>& modulus);

private:
    Field() = default;
    std::uint64_t p_ = 0, q_ = 0, one_ = 1;
    unsigned e_ = 0, key_width_ = 1;
    Polynomial modulus_;
    std::vector<std::pair<std::uint64_t, int>> q1_factors_;
    // Zech-style discrete log tables for extension fields (q is desk-scale
    // there); prime fields of any size use direct modular arithmetic.
    bool tables_ = false;
    std::vector<std::uint32_t> exp_, log_;
    void build_tables();
};

/// Constructs GF(p^e).  When the modulus is omitted: for e = 1 it is t - g
/// with g the smallest primitive root mod p, and for e >= 2 the canonically
/// smallest monic primitive polynomial of degree e, so that t is a primitive
/// root.  A supplied modulus is validated (monic, degree e, irreducible).
std::shared_ptr<const Field> make_field(std::uint64_t p, unsigned e,
                                        const std::optional<Polynomial>& modulus = std::nullopt);
std::shared_ptr<const Field> make_field_q(std::uint64_t q);

/// Zero counts as a square; for even q everything is a square.
bool is_square(const FieldElement& a);

/// Canonical square root (the smaller of the two under the index order),
/// or nullopt for a non-square.  Exhaustive below 2^10, Tonelli-Shanks above.
std::optional<FieldElement> sqrt(const FieldElement& a);

/// Least n >= 1 with a^n = 1; requires a != 0.
std::uint64_t multiplicative_order(const FieldElement& a);

/// The phi(q-1) generators of F_q^*, in ascending canonical order.
std::vector<FieldElement> primitive_roots(const Field& F);
FieldElement smallest_primitive_root(const Field& F);

/// Euler-criterion Legendre symbol; p must be an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

/// Dedekind's quadratic symbol (g/f) for polynomials over F_p, p odd:
/// for irreducible f it is the quadratic character of g in F_p[t]/(f),
/// extended multiplicatively over the factors of f.  Evaluated by the
/// reciprocity recursion (g/f)(f/g) = (-1)^{deg f deg g (p-1)/2} with
/// leading-coefficient extraction (c/f) = legendre(c)^{deg f}.
int dedekind_symbol(const Polynomial& g, const Polynomial& f);

/// Euler-criterion oracle for the symbol: g^{(p^d-1)/2} mod f, f irreducible.
/// Kept independent of the recursion so the two can cross-check each other.
int dedekind_symbol_euler(const Polynomial& g, const Polynomial& f);

/// Solves z^2 + z = d over a field of characteristic 2 by F_2-linear algebra.
/// Returns one solution (the other is z + 1), or nullopt if none exists.
std::optional<FieldElement> solve_artin_schreier(const FieldElement& d);

/// GF(q^2) as a quadratic extension of a base field, with elements x + y*u
/// where u^2 = r*u + s for a deterministically chosen irreducible t^2-r*t-s:
/// r = 0 and s the smallest non-square for odd q, r = 1 and s the smallest
/// element of absolute trace 1 for even q.
class QuadExtension {
public:
    explicit QuadExtension(const Field* base);

    struct Elem {
        FieldElement x, y;  // x + y*u
        bool operator==(const Elem& o) const { return x == o.x && y == o.y; }
        bool is_zero() const { return x.is_zero() && y.is_zero(); }
    };

    const Field& base() const { return *base_; }
    Elem embed(const FieldElement& a) const { return {a, base_->zero()}; }
    Elem make(const FieldElement& x, const FieldElement& y) const { return {x, y}; }
    Elem zero() const { return embed(base_->zero()); }
    Elem one() const { return embed(base_->one()); }
    Elem u() const { return {base_->zero(), base_->one()}; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inverse(const Elem& a) const;
    Elem pow(const Elem& a, std::uint64_t n) const;
    Elem frobenius(const Elem& a) const;  ///< v -> v^q; fixes exactly the base field

    std::uint64_t order(const Elem& a) const;  ///< multiplicative order
    /// Square root within GF(q^2) of a *base* element (always exists).
    Elem sqrt_of_base(const FieldElement& a) const;
    /// Roots in GF(q^2) of z^2 + z = d for base-field d (characteristic 2).
    std::vector<Elem> artin_schreier_roots(const FieldElement& d) const;

    /// Canonical index of an element: idx(x) + q * idx(y).
    std::uint64_t index(const Elem& a) const { return a.x.index() + base_->q() * a.y.index(); }

private:
    const Field* base_;
    FieldElement r_, s_;
    std::vector<std::pair<std::uint64_t, int>> q21_factors_;  // q^2 - 1
};

QuadExtension quad_ext(const Field& F);

/// Traces a = u + u^{-1} = u + u^q in F_q for u in GF(q^2) of exact
/// multiplicative order n (n must divide q-1 or q+1, n >= 3), listed by
/// ascending canonical order of a.  Throws if fewer than count exist.
std::vector<FieldElement> traces_of_element_order(const QuadExtension& E, std::uint64_t n,
                                                  unsigned count);

/// Same, but n is the *projective* order: the companion matrix
/// [[0,1],[-1,a]] has order n modulo scalars, i.e. the root order d
/// satisfies d = 2n, or d = n for odd n.
std::vector<FieldElement> traces_of_projective_order(const QuadExtension& E, std::uint64_t n,
                                                     unsigned count);

/// The norm-one-circle trace lookup: first (canonically least) valid trace
/// for projective order n; see traces_of_projective_order.
FieldElement find_norm_one_trace(const QuadExtension& E, std::uint64_t n);

}  // namespace bvl
