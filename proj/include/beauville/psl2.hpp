#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "beauville/ffield.hpp"

namespace bvl {

/// 2x2 matrix over a Field, row-major entries a b / c d.
class Mat2 {
public:
    Mat2() = default;
    Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
        : a_(a), b_(b), c_(c), d_(d) {}
    static Mat2 identity(const Field& F) { return {F.one(), F.zero(), F.zero(), F.one()}; }
    static Mat2 from_ints(const Field& F, std::int64_t a, std::int64_t b, std::int64_t c,
                          std::int64_t d) {
        return {F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)};
    }

    const Field& field() const { return a_.field(); }
    FieldElement a() const { return a_; }
    FieldElement b() const { return b_; }
    FieldElement c() const { return c_; }
    FieldElement d() const { return d_; }

    FieldElement det() const { return a_ * d_ - b_ * c_; }
    FieldElement trace() const { return a_ + d_; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-() const { return {-a_, -b_, -c_, -d_}; }
    Mat2 scaled(const FieldElement& s) const { return {a_ * s, b_ * s, c_ * s, d_ * s}; }
    Mat2 inverse() const;
    Mat2 power(std::uint64_t n) const;
    Mat2 frobenius_map(unsigned j = 1) const;  ///< entrywise x -> x^{p^j}
    bool operator==(const Mat2& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool is_identity() const;
    bool is_scalar() const { return b_.is_zero() && c_.is_zero() && a_ == d_; }

    std::string key() const;  ///< canonical byte encoding of the four entries
    std::string str() const;

private:
    FieldElement a_, b_, c_, d_;
};

enum class MatMode { SL2, GL2, PSL2, PGL2 };
std::string mode_name(MatMode m);
MatMode mode_from_name(const std::string& s);

/// A matrix together with the group it is read in.  Equality, hashing and
/// ordering all go through the canonical representative: for PSL2 the one of
/// {M, -M} whose first nonzero entry (scan order a,b,c,d) is canonically
/// least; for PGL2 the scaling with first nonzero entry 1.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(const Mat2& m, MatMode mode);

    const Mat2& matrix() const { return mat_; }
    const Mat2& canonical() const { return canon_; }
    MatMode mode() const { return mode_; }
    const Field& field() const { return mat_.field(); }

    GroupElement operator*(const GroupElement& o) const { return {mat_ * o.mat_, mode_}; }
    GroupElement inverse() const { return {mat_.inverse(), mode_}; }
    GroupElement power(std::uint64_t n) const { return {mat_.power(n), mode_}; }
    bool operator==(const GroupElement& o) const { return canon_ == o.canon_; }
    bool is_identity() const;

    std::string key() const { return canon_.key(); }
    std::string str() const { return canon_.str(); }

private:
    Mat2 mat_, canon_;
    MatMode mode_ = MatMode::SL2;
};

/// Point of the projective line over the base field: [x : 1] or [1 : 0].
struct ProjPoint {
    FieldElement x;
    bool infinite = false;
    bool operator==(const ProjPoint& o) const {
        return infinite == o.infinite && (infinite || x == o.x);
    }
    std::string str() const { return infinite ? "inf" : x.str(); }
};

/// Point of the projective line over GF(q^2), same normalization.
struct ProjPointExt {
    QuadExtension::Elem x;
    bool infinite = false;
};

enum class TraceClass { split, parabolic, nonsplit };

struct TraceClassification {
    TraceClass cls;
    /// Bound implied for the order of a PSL2 element with this trace:
    /// split -> divides (q-1)/k, parabolic -> p (or 1), nonsplit -> (q+1)/k.
    std::uint64_t projective_bound;
    /// Same for the SL2 element: q-1, p or 2p, q+1.
    std::uint64_t linear_bound;
};

/// Classifies an SL2 trace.  For odd q this is the quadratic character of
/// tau^2 - 4; for even q, tau = 0 is the parabolic case and otherwise the
/// element is split or nonsplit as lambda^2 + tau lambda + 1 has a root in
/// F_q or not.
TraceClassification trace_class(const FieldElement& tau);

/// Least n with g^n trivial in the element's mode, found by descending
/// through the divisors of the trace-class bound (projective modes test
/// against scalars).  GL2/PGL2 fall back to eigenvalue orders in GF(q^2).
std::uint64_t element_order(const GroupElement& g);

/// Oracle: order by plain iterated multiplication, capped (throws past cap).
std::uint64_t element_order_iterative(const GroupElement& g, std::uint64_t cap = 4096);

/// Fixed points of the Moebius action on P^1(F_q).
std::vector<ProjPoint> fixed_points(const GroupElement& g);

/// Fixed points over P^1(GF(q^2)); nonempty for every non-identity element.
std::vector<ProjPointExt> fixed_points_ext(const GroupElement& g, const QuadExtension& E);

ProjPointExt apply_moebius_ext(const Mat2& m, const QuadExtension& E, const ProjPointExt& pt);

/// True iff A M A^{-1} = M^{-1}.  For the swap matrix [[0,1],[1,0]] and M in
/// SL2 this must coincide with the b + c = 0 test; both are evaluated and a
/// disagreement throws, as that would mean an arithmetic bug.
bool is_inverted_by(const Mat2& m, const Mat2& a);

/// Conjugators used by the strongly-real searches: the swap matrix first,
/// then [[0,1],[t+1,0]] for q = 9, then the remaining anti-diagonal
/// [[0,1],[lambda,0]] candidates ascending; q - 1 matrices in total.
std::vector<Mat2> standard_involutors(const Field& F);

/// Canonical SL2 lift of a PSL2 element (its canonical representative).
GroupElement lift_to_sl2(const GroupElement& g);

struct LiftReport {
    std::array<GroupElement, 3> lifted;       // SL2 elements
    std::array<bool, 3> order_preserved;      // <g> meets {+-I} trivially
    bool faithful;                            // all three preserved
};

/// Lifts a PSL2 triple along SL2 -> PSL2 (kernel {+-I}) and reports which
/// elements keep their order, i.e. are faithfully represented downstairs.
LiftReport lift_check(const GroupElement& x, const GroupElement& y, const GroupElement& z);

}  // namespace bvl
