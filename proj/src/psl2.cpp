#include "beauville/psl2.hpp"

#include <stdexcept>

namespace bvl {

namespace {
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }
}

// ---------------------------------------------------------------------------
// Mat2

Mat2 Mat2::operator*(const Mat2& o) const {
    if (&field() != &o.field()) throw std::invalid_argument("matrix field mismatch");
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
            c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

Mat2 Mat2::inverse() const {
    FieldElement dt = det();
    if (dt.is_zero()) throw std::invalid_argument("singular matrix");
    FieldElement i = dt.inverse();
    return {d_ * i, -b_ * i, -c_ * i, a_ * i};
}

Mat2 Mat2::power(std::uint64_t n) const {
    Mat2 r = identity(field());
    Mat2 b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Mat2 Mat2::frobenius_map(unsigned j) const {
    Mat2 r = *this;
    for (unsigned i = 0; i < j; ++i)
        r = {r.a_.frobenius(), r.b_.frobenius(), r.c_.frobenius(), r.d_.frobenius()};
    return r;
}

bool Mat2::is_identity() const {
    const Field& F = field();
    return a_ == F.one() && b_.is_zero() && c_.is_zero() && d_ == F.one();
}

std::string Mat2::key() const {
    const Field& F = field();
    std::string out;
    out.reserve(4 * F.key_width());
    F.append_key(out, a_.index());
    F.append_key(out, b_.index());
    F.append_key(out, c_.index());
    F.append_key(out, d_.index());
    return out;
}

std::string Mat2::str() const {
    return "[[" + a_.str() + "," + b_.str() + "],[" + c_.str() + "," + d_.str() + "]]";
}

// ---------------------------------------------------------------------------
// GroupElement

std::string mode_name(MatMode m) {
    switch (m) {
        case MatMode::SL2: return "SL2";
        case MatMode::GL2: return "GL2";
        case MatMode::PSL2: return "PSL2";
        case MatMode::PGL2: return "PGL2";
    }
    return "?";
}

MatMode mode_from_name(const std::string& s) {
    if (s == "SL2") return MatMode::SL2;
    if (s == "GL2") return MatMode::GL2;
    if (s == "PSL2") return MatMode::PSL2;
    if (s == "PGL2") return MatMode::PGL2;
    throw std::invalid_argument("unknown matrix mode: " + s);
}

namespace {
FieldElement first_nonzero(const Mat2& m) {
    if (!m.a().is_zero()) return m.a();
    if (!m.b().is_zero()) return m.b();
    if (!m.c().is_zero()) return m.c();
    return m.d();
}
}  // namespace

GroupElement::GroupElement(const Mat2& m, MatMode mode) : mat_(m), mode_(mode) {
    FieldElement dt = m.det();
    if (dt.is_zero()) throw std::invalid_argument("group element must be invertible");
    switch (mode) {
        case MatMode::SL2:
        case MatMode::PSL2:
            if (!(dt == m.field().one())) throw std::invalid_argument("determinant must be 1");
            break;
        default:
            break;
    }
    if (mode == MatMode::PSL2) {
        FieldElement e = first_nonzero(m);
        canon_ = (e.index() <= (-e).index()) ? m : -m;
    } else if (mode == MatMode::PGL2) {
        canon_ = m.scaled(first_nonzero(m).inverse());
    } else {
        canon_ = m;
    }
}

bool GroupElement::is_identity() const { return canon_.is_identity(); }

// ---------------------------------------------------------------------------
// Trace classification and orders

TraceClassification trace_class(const FieldElement& tau) {
    const Field& F = tau.field();
    std::uint64_t q = F.q(), p = F.p(), k = F.k();
    if (p == 2) {
        if (tau.is_zero()) return {TraceClass::parabolic, 2, 2};
        // split iff lambda^2 + tau*lambda + 1 has a root, i.e. z^2+z = 1/tau^2 solvable
        FieldElement rhs = (tau * tau).inverse();
        bool split = solve_artin_schreier(rhs).has_value();
        if (split) return {TraceClass::split, q - 1, q - 1};
        return {TraceClass::nonsplit, q + 1, q + 1};
    }
    FieldElement disc = tau * tau - F.from_int(4);
    if (disc.is_zero()) {
        std::uint64_t linear = (tau == F.from_int(2)) ? p : 2 * p;
        return {TraceClass::parabolic, p, linear};
    }
    if (is_square(disc)) return {TraceClass::split, (q - 1) / k, q - 1};
    return {TraceClass::nonsplit, (q + 1) / k, q + 1};
}

namespace {
bool trivial_in_mode(const Mat2& m, MatMode mode) {
    if (mode == MatMode::PSL2 || mode == MatMode::PGL2) return m.is_scalar();
    return m.is_identity();
}

std::uint64_t order_by_descent(const Mat2& m, MatMode mode, std::uint64_t bound) {
    std::uint64_t n = bound;
    for (auto& [l, e] : factorize(bound)) {
        for (int i = 0; i < e; ++i) {
            if (n % l == 0 && trivial_in_mode(m.power(n / l), mode))
                n /= l;
            else
                break;
        }
    }
    return n;
}

std::uint64_t order_via_eigenvalues(const Mat2& m, MatMode mode) {
    const Field& F = m.field();
    QuadExtension E(&F);
    FieldElement tau = m.trace();
    FieldElement dt = m.det();
    bool repeated = (F.p() == 2) ? tau.is_zero() : (tau * tau - F.from_int(4) * dt).is_zero();
    if (repeated) {
        FieldElement lam = (F.p() == 2) ? *sqrt(dt) : tau / F.from_int(2);
        if (m.is_scalar()) return mode == MatMode::PGL2 ? 1 : multiplicative_order(lam);
        return mode == MatMode::PGL2 ? F.p() : lcm_u64(multiplicative_order(lam), F.p());
    }
    QuadExtension::Elem l1, l2;
    if (F.p() == 2) {
        FieldElement rhs = dt / (tau * tau);
        auto roots = E.artin_schreier_roots(rhs);
        l1 = E.mul(E.embed(tau), roots[0]);
        l2 = E.mul(E.embed(tau), roots[1]);
    } else {
        QuadExtension::Elem sd = E.sqrt_of_base(tau * tau - F.from_int(4) * dt);
        QuadExtension::Elem half = E.embed(F.from_int(2).inverse());
        l1 = E.mul(E.add(E.embed(tau), sd), half);
        l2 = E.mul(E.sub(E.embed(tau), sd), half);
    }
    if (mode == MatMode::PGL2) return E.order(E.mul(l1, E.inverse(l2)));
    return lcm_u64(E.order(l1), E.order(l2));
}
}  // namespace

std::uint64_t element_order(const GroupElement& g) {
    const Mat2& m = g.matrix();
    const Field& F = m.field();
    MatMode mode = g.mode();
    if (m.is_scalar()) {
        if (mode == MatMode::SL2 || mode == MatMode::GL2)
            return m.is_identity() ? 1 : multiplicative_order(m.a());
        return 1;
    }
    if (mode == MatMode::GL2 || mode == MatMode::PGL2) return order_via_eigenvalues(m, mode);

    TraceClassification tc = trace_class(m.trace());
    if (tc.cls == TraceClass::parabolic) {
        if (mode == MatMode::PSL2) return F.p();
        if (F.p() == 2) return 2;
        return (m.trace() == F.from_int(2)) ? F.p() : 2 * F.p();
    }
    std::uint64_t bound = (mode == MatMode::PSL2) ? tc.projective_bound : tc.linear_bound;
    return order_by_descent(m, mode, bound);
}

std::uint64_t element_order_iterative(const GroupElement& g, std::uint64_t cap) {
    GroupElement cur = g;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (cur.is_identity()) return n;
        cur = cur * g;
    }
    throw std::runtime_error("iterative order exceeded cap");
}

// ---------------------------------------------------------------------------
// Fixed points

std::vector<ProjPoint> fixed_points(const GroupElement& g) {
    const Mat2& m = g.matrix();
    const Field& F = m.field();
    if (m.is_scalar()) throw std::invalid_argument("scalar matrix fixes the whole line");
    std::vector<ProjPoint> out;
    FieldElement a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (c.is_zero()) {
        out.push_back({F.zero(), true});
        if (!(d - a).is_zero()) out.push_back({b / (d - a), false});
        return out;
    }
    // c x^2 + (d - a) x - b = 0
    if (F.p() == 2) {
        FieldElement beta = (d + a) / c, gamma = b / c;
        if (beta.is_zero()) {
            out.push_back({*sqrt(gamma), false});
        } else if (auto z = solve_artin_schreier(gamma / (beta * beta))) {
            out.push_back({beta * *z, false});
            out.push_back({beta * (*z + F.one()), false});
        }
    } else {
        FieldElement disc = m.trace() * m.trace() - F.from_int(4) * m.det();
        FieldElement two_c = F.from_int(2) * c;
        if (disc.is_zero()) {
            out.push_back({(a - d) / two_c, false});
        } else if (auto r = sqrt(disc)) {
            out.push_back({(a - d + *r) / two_c, false});
            out.push_back({(a - d - *r) / two_c, false});
        }
    }
    return out;
}

std::vector<ProjPointExt> fixed_points_ext(const GroupElement& g, const QuadExtension& E) {
    const Mat2& m = g.matrix();
    const Field& F = m.field();
    if (m.is_scalar()) throw std::invalid_argument("scalar matrix fixes the whole line");
    std::vector<ProjPointExt> out;
    FieldElement a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (c.is_zero()) {
        out.push_back({E.zero(), true});
        if (!(d - a).is_zero()) out.push_back({E.embed(b / (d - a)), false});
        return out;
    }
    if (F.p() == 2) {
        FieldElement beta = (d + a) / c, gamma = b / c;
        if (beta.is_zero()) {
            out.push_back({E.embed(*sqrt(gamma)), false});
        } else {
            auto roots = E.artin_schreier_roots(gamma / (beta * beta));
            for (auto& z : roots) out.push_back({E.mul(E.embed(beta), z), false});
        }
    } else {
        FieldElement disc = m.trace() * m.trace() - F.from_int(4) * m.det();
        QuadExtension::Elem inv2c = E.embed((F.from_int(2) * c).inverse());
        if (disc.is_zero()) {
            out.push_back({E.mul(E.embed(a - d), inv2c), false});
        } else {
            QuadExtension::Elem r = E.sqrt_of_base(disc);
            out.push_back({E.mul(E.add(E.embed(a - d), r), inv2c), false});
            out.push_back({E.mul(E.sub(E.embed(a - d), r), inv2c), false});
        }
    }
    return out;
}

ProjPointExt apply_moebius_ext(const Mat2& m, const QuadExtension& E, const ProjPointExt& pt) {
    QuadExtension::Elem a = E.embed(m.a()), b = E.embed(m.b());
    QuadExtension::Elem c = E.embed(m.c()), d = E.embed(m.d());
    QuadExtension::Elem num, den;
    if (pt.infinite) {
        num = a;
        den = c;
    } else {
        num = E.add(E.mul(a, pt.x), b);
        den = E.add(E.mul(c, pt.x), d);
    }
    if (den.is_zero()) return {E.zero(), true};
    return {E.mul(num, E.inverse(den)), false};
}

// ---------------------------------------------------------------------------
// Inversion-by-conjugation, conjugator candidates, lifting

bool is_inverted_by(const Mat2& m, const Mat2& a) {
    const Field& F = m.field();
    bool conj = (a * m * a.inverse()) == m.inverse();
    Mat2 swap = Mat2::from_ints(F, 0, 1, 1, 0);
    if (a == swap && m.det() == F.one()) {
        bool bc = (m.b() + m.c()).is_zero();
        if (bc != conj) throw std::logic_error("b+c = 0 test disagrees with conjugation");
    }
    return conj;
}

std::vector<Mat2> standard_involutors(const Field& F) {
    std::vector<Mat2> out;
    out.push_back(Mat2::from_ints(F, 0, 1, 1, 0));
    std::optional<std::uint64_t> special;
    if (F.q() == 9) {
        FieldElement l = F.t() + F.one();
        special = l.index();
        out.push_back({F.zero(), F.one(), l, F.zero()});
    }
    for (std::uint64_t i = 2; i < F.q(); ++i) {
        if (special && i == *special) continue;
        out.push_back({F.zero(), F.one(), F.element(i), F.zero()});
    }
    return out;
}

GroupElement lift_to_sl2(const GroupElement& g) {
    if (g.mode() != MatMode::PSL2) throw std::invalid_argument("lift expects a PSL2 element");
    return {g.canonical(), MatMode::SL2};
}

LiftReport lift_check(const GroupElement& x, const GroupElement& y, const GroupElement& z) {
    if (!(x * y * z).is_identity()) throw std::invalid_argument("elements do not form a triple");
    std::uint64_t down[3] = {element_order(x), element_order(y), element_order(z)};
    GroupElement X0 = lift_to_sl2(x), Y0 = lift_to_sl2(y);

    // four sign choices for the x and y lifts; the third lift is forced by
    // the product-1 constraint.  Keep the one preserving the most orders.
    std::optional<LiftReport> best;
    int best_score = -1;
    for (int sx = 0; sx < 2; ++sx) {
        for (int sy = 0; sy < 2; ++sy) {
            GroupElement X = sx ? GroupElement(-X0.matrix(), MatMode::SL2) : X0;
            GroupElement Y = sy ? GroupElement(-Y0.matrix(), MatMode::SL2) : Y0;
            GroupElement Z = (X * Y).inverse();
            LiftReport rep{{X, Y, Z}, {}, true};
            int score = 0;
            GroupElement lifted[3] = {X, Y, Z};
            for (int i = 0; i < 3; ++i) {
                rep.order_preserved[i] = element_order(lifted[i]) == down[i];
                rep.faithful = rep.faithful && rep.order_preserved[i];
                score += rep.order_preserved[i];
            }
            if (score > best_score) {
                best_score = score;
                best = rep;
            }
        }
    }
    return *best;
}

}  // namespace bvl
