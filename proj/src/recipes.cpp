#include "beauville/recipes.hpp"

namespace bvl {

namespace {

Mat2 companion(const Field& F, const FieldElement& a) {
    return {F.zero(), F.one(), -F.one(), a};
}

Mat2 eq1_partner(const Field& F, const FieldElement& b) {
    return {b, -F.one(), F.one(), F.zero()};
}

FieldElement smallest_of_order(const Field& F, std::uint64_t n) {
    for (std::uint64_t i = 1; i < F.q(); ++i) {
        FieldElement a = F.element(i);
        if (multiplicative_order(a) == n) return a;
    }
    throw std::invalid_argument("no element of the requested order");
}

/// Solves x + w = A, c x + c^{-1} w = B.
std::pair<FieldElement, FieldElement> solve_xw(const FieldElement& c, const FieldElement& A,
                                               const FieldElement& B) {
    FieldElement ci = c.inverse();
    FieldElement x = (B - ci * A) / (c - ci);
    return {x, A - x};
}

void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("recipe postcondition failed: ") + what);
}

/// The strongly-real second triple on L2(q), q even or q odd >= 13:
/// X2 = diag(cEff, cEff^{-1}), Y2 = [[x,y],[-y,w]] with y^2 = 1 - xw.
struct SrT2 {
    Mat2 X2, Y2;
};

SrT2 sr_second_triple(const Field& F, RecipeChoice& choice) {
    std::uint64_t q = F.q();
    FieldElement c = smallest_primitive_root(F);
    FieldElement tau = c + c.inverse();
    FieldElement s = -(c * c + c + F.one());
    FieldElement tq = c * c - c + F.one();
    choice.c = c;
    choice.s = s;
    choice.tq = tq;

    FieldElement ceff = c, x = F.zero(), w = F.zero();
    if (q % 2 == 0) {
        choice.branch = "even";
        std::tie(x, w) = solve_xw(c, tau, tau);
    } else if (!is_square(s)) {
        choice.branch = "s-nonsquare";
        std::tie(x, w) = solve_xw(c, tau, tau);
    } else if (!is_square(tq)) {
        choice.branch = "t-nonsquare";
        std::tie(x, w) = solve_xw(c, tau, -tau);
    } else {
        // both square, so -c^2(c^4+c^2+1) = c^2 * s * tq is a square again
        choice.branch = "c-squared";
        ceff = c * c;
        FieldElement tau2 = ceff + ceff.inverse();
        std::tie(x, w) = solve_xw(ceff, tau2, tau2);
    }
    require(!(x * w == F.one()), "xw != 1");
    auto y = sqrt(F.one() - x * w);
    require(y.has_value(), "1 - xw must be a square");
    choice.x = x;
    choice.w = w;
    choice.y = *y;
    choice.z = -*y;

    Mat2 X2{ceff, F.zero(), F.zero(), ceff.inverse()};
    Mat2 Y2{x, *y, -*y, w};
    require(Y2.det() == F.one(), "det Y2 = 1");
    return {X2, Y2};
}

// ---------------------------------------------------------------------------
// pinned small cases

std::shared_ptr<const Field> field_q9() {
    return make_field(3, 2, Polynomial::parse(3, "t^2+1"));
}

Psl2Structure build_structure(const std::shared_ptr<const Field>& F, MatMode mode, Family fam,
                              const Mat2& X1, const Mat2& Y1, const Mat2& X2, const Mat2& Y2) {
    GroupElement x1(X1, mode), y1(Y1, mode), x2(X2, mode), y2(Y2, mode);
    return {GroupDesc{fam, F->q()}, F, make_triple(x1, y1), make_triple(x2, y2)};
}

Family family_of(MatMode mode) { return mode == MatMode::SL2 ? Family::SL2 : Family::PSL2; }

Psl2Structure fixture_q7(const std::shared_ptr<const Field>& F, MatMode mode) {
    return build_structure(F, mode, family_of(mode),
                           Mat2::from_ints(*F, 0, 1, -1, 3), Mat2::from_ints(*F, -2, 2, -2, -2),
                           Mat2::from_ints(*F, 0, 1, -1, 2), Mat2::from_ints(*F, 0, -1, 1, 2));
}

Psl2Structure fixture_q9(const std::shared_ptr<const Field>& F, MatMode mode) {
    FieldElement t = F->t(), one = F->one();
    Mat2 X1{t + one, F->zero(), F->zero(), t - one};
    Mat2 Y1{-t + one, t, -t + one, -one};
    Mat2 X2{one, t + one, t, t};
    Mat2 Y2{t, t + one, t, one};
    return build_structure(F, mode, family_of(mode), X1, Y1, X2, Y2);
}

TripleT<GroupElement> fixture_t1_q11_sl2(const Field& F) {
    GroupElement x(companion(F, F.from_int(5)), MatMode::SL2);
    GroupElement y(companion(F, F.from_int(-5)), MatMode::SL2);
    return make_triple(x, y);
}

TripleT<GroupElement> fixture_t2_q11_sl2(const Field& F) {
    GroupElement x(companion(F, F.from_int(-4)), MatMode::SL2);
    GroupElement y(Mat2::from_ints(F, 3, -1, 1, 0), MatMode::SL2);
    return make_triple(x, y);
}

TripleT<GroupElement> fixture_t2_q11_psl2(const Field& F) {
    GroupElement x(Mat2::from_ints(F, 2, 0, 0, 6), MatMode::PSL2);
    GroupElement y(Mat2::from_ints(F, 0, 1, -1, -3), MatMode::PSL2);
    return make_triple(x, y);
}

}  // namespace

// ---------------------------------------------------------------------------
// triples

TripleT<GroupElement> triple_T1(const std::shared_ptr<const Field>& Fp, MatMode mode,
                                RecipeChoice* choice) {
    const Field& F = *Fp;
    std::uint64_t q = F.q();
    if (q <= 5) throw std::invalid_argument("no construction for q <= 5");
    if (mode != MatMode::PSL2 && mode != MatMode::SL2)
        throw std::invalid_argument("triple_T1 expects SL2 or PSL2 mode");

    if (mode == MatMode::SL2 && q == 11) return fixture_t1_q11_sl2(F);

    QuadExtension E(&F);
    FieldElement a = F.zero(), b = F.zero();
    if (q % 2 == 0) {
        auto tr = traces_of_element_order(E, q + 1, 2);
        a = tr[0];
        b = tr[1];
    } else if (mode == MatMode::SL2 && q % 4 == 1) {
        auto tr = traces_of_element_order(E, (q + 1) / 2, 2);  // odd order, faithful
        a = tr[0];
        b = tr[1];
    } else {
        a = traces_of_element_order(E, q + 1, 1)[0];
        b = -a;
    }
    if (choice) {
        choice->a = a;
        choice->b = b;
    }
    GroupElement x(companion(F, a), mode), y(eq1_partner(F, b), mode);
    auto t = make_triple(x, y);
    std::uint64_t n1 = mode == MatMode::PSL2 && q % 2 == 1 ? (q + 1) / 2
                       : mode == MatMode::SL2 && q % 4 == 1 ? (q + 1) / 2
                                                            : q + 1;
    require(t.type[0] == n1 && t.type[1] == n1, "T1 x,y orders");
    require(t.type[2] == (q % 2 == 0 ? 2 : F.p()), "T1 z order");
    return t;
}

TripleT<GroupElement> triple_T2(const std::shared_ptr<const Field>& Fp, MatMode mode,
                                RecipeChoice* choice) {
    const Field& F = *Fp;
    std::uint64_t q = F.q();
    if (q == 11) {
        return mode == MatMode::SL2 ? fixture_t2_q11_sl2(F) : fixture_t2_q11_psl2(F);
    }
    if (q != 8 && q < 13) throw std::invalid_argument("triple_T2 needs q = 8, 11 or q >= 13");

    FieldElement c = (q % 2 == 1 && ((q - 1) / 2) % 2 == 1)
                         ? smallest_of_order(F, (q - 1) / 2)
                         : smallest_primitive_root(F);
    FieldElement tau = c + c.inverse();
    auto [x, w] = solve_xw(c, tau, tau);  // makes tr Y2 = tr Z2 = tr X2
    require(!(x * w == F.one()), "xw != 1");
    if (choice) {
        choice->c = c;
        choice->x = x;
        choice->w = w;
    }
    Mat2 X2{c, F.zero(), F.zero(), c.inverse()};
    Mat2 Y2{x, F.one(), x * w - F.one(), w};
    GroupElement gx(X2, mode), gy(Y2, mode);
    return make_triple(gx, gy);
}

// ---------------------------------------------------------------------------
// structures

RecipeResult strongly_real_structure_psl2(const std::shared_ptr<const Field>& Fp) {
    const Field& F = *Fp;
    std::uint64_t q = F.q();
    if (q <= 5) throw std::invalid_argument("L2(q) has no such structure for q <= 5");

    RecipeChoice choice;
    if (q == 7) {
        choice.branch = "fixture-q7";
        return {fixture_q7(Fp, MatMode::PSL2), choice};
    }
    if (q == 9) {
        choice.branch = "fixture-q9";
        return {fixture_q9(Fp, MatMode::PSL2), choice};
    }
    if (q == 11) {
        choice.branch = "fixture-q11";
        Psl2Structure s{GroupDesc{Family::PSL2, q}, Fp, triple_T1(Fp, MatMode::PSL2, &choice),
                        fixture_t2_q11_psl2(F)};
        return {s, choice};
    }

    auto t1 = triple_T1(Fp, MatMode::PSL2, &choice);
    SrT2 t2m = sr_second_triple(F, choice);
    GroupElement x2(t2m.X2, MatMode::PSL2), y2(t2m.Y2, MatMode::PSL2);
    Psl2Structure s{GroupDesc{Family::PSL2, q}, Fp, t1, make_triple(x2, y2)};
    require(s.t2.type[0] == s.t2.type[1] && s.t2.type[1] == s.t2.type[2], "T2 equal orders");
    return {s, choice};
}

RecipeResult structure_sl2(const std::shared_ptr<const Field>& Fp) {
    const Field& F = *Fp;
    std::uint64_t q = F.q();
    if (q <= 5) throw std::invalid_argument("SL2(q) has no such structure for q <= 5");

    RecipeChoice choice;
    if (q % 2 == 0) {
        // SL2 = L2 in characteristic 2
        auto r = strongly_real_structure_psl2(Fp);
        GroupElement x1(r.structure.t1.x.matrix(), MatMode::SL2);
        GroupElement y1(r.structure.t1.y.matrix(), MatMode::SL2);
        GroupElement x2(r.structure.t2.x.matrix(), MatMode::SL2);
        GroupElement y2(r.structure.t2.y.matrix(), MatMode::SL2);
        Psl2Structure s{GroupDesc{Family::SL2, q}, Fp, make_triple(x1, y1), make_triple(x2, y2)};
        return {s, r.choice};
    }
    if (q == 7) {
        choice.branch = "fixture-q7";
        return {fixture_q7(Fp, MatMode::SL2), choice};
    }
    if (q == 9) {
        choice.branch = "fixture-q9";
        return {fixture_q9(Fp, MatMode::SL2), choice};
    }
    if (q == 11) {
        choice.branch = "fixture-q11";
        Psl2Structure s{GroupDesc{Family::SL2, q}, Fp, fixture_t1_q11_sl2(F),
                        fixture_t2_q11_sl2(F)};
        return {s, choice};
    }

    auto t1 = triple_T1(Fp, MatMode::SL2, &choice);

    Mat2 X2 = Mat2::identity(F), Y2 = Mat2::identity(F);
    if (q % 4 == 1) {
        // the all-odd triple is T1; T2 is the strongly-real second triple
        RecipeChoice sub;
        SrT2 m = sr_second_triple(F, sub);
        choice.branch = "case1-" + sub.branch;
        choice.c = sub.c;
        choice.s = sub.s;
        choice.tq = sub.tq;
        choice.x = sub.x;
        choice.w = sub.w;
        choice.y = sub.y;
        choice.z = sub.z;
        X2 = m.X2;
        Y2 = m.Y2;
    } else {
        // q = 3 mod 4: c = -d has odd order (q-1)/2, T2 is all-odd
        FieldElement d = smallest_primitive_root(F);
        FieldElement c = -d;
        choice.d = d;
        choice.c = c;
        choice.s = -(c * c + c + F.one());
        choice.tq = c * c - c + F.one();
        FieldElement tau = c + c.inverse();
        FieldElement x = F.zero(), w = F.zero();
        FieldElement d2 = d * d - d + F.one();
        FieldElement d4 = d * d * d * d - d * d * d + d * d - d + F.one();
        if (!is_square(d2)) {
            choice.branch = "case2";
            std::tie(x, w) = solve_xw(c, tau, tau);
        } else if (!is_square(d4)) {
            choice.branch = "case3";
            FieldElement tau2 = c * c + (c * c).inverse();
            std::tie(x, w) = solve_xw(c, tau2, tau2);
        } else {
            choice.branch = "case4";
            FieldElement c3 = c * c * c;
            std::tie(x, w) = solve_xw(c, c3 + c3.inverse(), tau);
        }
        require(!(x * w == F.one()), "xw != 1");
        auto y = sqrt(F.one() - x * w);
        require(y.has_value(), "1 - xw must be a square");
        choice.x = x;
        choice.w = w;
        choice.y = *y;
        choice.z = -*y;
        X2 = Mat2{c, F.zero(), F.zero(), c.inverse()};
        Y2 = Mat2{x, *y, -*y, w};
    }

    GroupElement gx2(X2, MatMode::SL2), gy2(Y2, MatMode::SL2);
    Psl2Structure s{GroupDesc{Family::SL2, q}, Fp, t1, make_triple(gx2, gy2)};

    // one of the two triples must consist of odd orders (faithful descent)
    auto all_odd = [](const std::array<std::uint64_t, 3>& t) {
        return t[0] % 2 == 1 && t[1] % 2 == 1 && t[2] % 2 == 1;
    };
    require(all_odd(s.t1.type) || all_odd(s.t2.type), "one all-odd triple");
    return {s, choice};
}

// ---------------------------------------------------------------------------
// Table 1

Table1Row table1_row(std::uint64_t q) {
    if (!is_prime(q) || q % 4 != 3 || q < 11)
        throw std::invalid_argument("table1_row needs a prime q = 3 mod 4, q >= 11");
    auto F = make_field(q, 1);
    std::uint64_t g = smallest_primitive_root(*F).index();
    for (std::uint64_t i = 1; i < q - 1; ++i) {
        if (gcd_u64(i, q - 1) != 1) continue;  // d must stay primitive
        std::uint64_t d = powmod(g, i, q);
        std::uint64_t dinv = powmod(d, q - 2, q);
        std::uint64_t r = (d - 1 + dinv) % q;
        if (r != 0 && legendre(static_cast<std::int64_t>(r), q) == 1)
            return {q, g, i, d, dinv, r};
    }
    throw std::runtime_error("no primitive root with square d - 1 + d^{-1} found");
}

// ---------------------------------------------------------------------------
// golden fixtures

namespace {
GoldenFixture make_3a() {
    auto F = make_field(2, 3, Polynomial::parse(2, "t^3+t+1"));
    FieldElement t = F->t(), one = F->one();
    Mat2 X2{t, F->zero(), F->zero(), t * t + one};
    Mat2 Y2{t * t, t * t, t * t, t + one};
    GoldenFixture fx;
    fx.name = "3A";
    fx.field = F;
    fx.structure = {GroupDesc{Family::PSL2, 8}, F, triple_T1(F, MatMode::PSL2),
                    make_triple({X2, MatMode::PSL2}, {Y2, MatMode::PSL2})};
    fx.expected.branch = "even";
    fx.expected.c = t;
    fx.expected.x = t * t;
    fx.expected.w = t + one;
    fx.expected.y = t * t;
    fx.expected.z = t * t;
    fx.expected_types = {{{9, 9, 2}, {7, 7, 7}}};
    return fx;
}

GoldenFixture make_3b() {
    auto F = make_field(13, 1);
    GoldenFixture fx;
    fx.name = "3B";
    fx.field = F;
    fx.structure = {GroupDesc{Family::PSL2, 13}, F, triple_T1(F, MatMode::PSL2),
                    make_triple({Mat2::from_ints(*F, 2, 0, 0, 7), MatMode::PSL2},
                                {Mat2::from_ints(*F, 3, 3, -3, 6), MatMode::PSL2})};
    fx.expected.branch = "s-nonsquare";
    fx.expected.c = F->from_int(2);
    fx.expected.s = F->from_int(6);
    fx.expected.x = F->from_int(3);
    fx.expected.w = F->from_int(6);
    fx.expected.y = F->from_int(3);
    fx.expected.z = F->from_int(-3);
    fx.expected_types = {{{7, 7, 13}, {6, 6, 6}}};
    return fx;
}

GoldenFixture make_3c() {
    auto F = make_field(37, 1);
    GoldenFixture fx;
    fx.name = "3C";
    fx.field = F;
    fx.structure = {GroupDesc{Family::PSL2, 37}, F, triple_T1(F, MatMode::PSL2),
                    make_triple({Mat2::from_ints(*F, 4, 0, 0, -9), MatMode::PSL2},
                                {Mat2::from_ints(*F, -1, 16, -16, -4), MatMode::PSL2})};
    fx.expected.branch = "c-squared";
    fx.expected.c = F->from_int(2);
    fx.expected.s = F->from_int(-7);
    fx.expected.tq = F->from_int(3);
    fx.expected.x = F->from_int(-1);
    fx.expected.w = F->from_int(-4);
    fx.expected.y = F->from_int(16);
    fx.expected.z = F->from_int(-16);
    fx.expected_types = {{{19, 19, 37}, {9, 9, 9}}};
    return fx;
}

GoldenFixture make_5a() {
    auto F = make_field(19, 1);
    GoldenFixture fx;
    fx.name = "5A";
    fx.field = F;
    // the printed Y2 has a sign slip in the (2,2) entry; w = -5 is forced by
    // x + w = c + c^{-1} and det = 1, and reproduces the printed Z2 exactly
    fx.structure = {GroupDesc{Family::SL2, 19}, F, triple_T1(F, MatMode::SL2),
                    make_triple({Mat2::from_ints(*F, -2, 0, 0, 9), MatMode::SL2},
                                {Mat2::from_ints(*F, -7, 2, -2, -5), MatMode::SL2})};
    fx.expected.branch = "case2";
    fx.expected.d = F->from_int(2);
    fx.expected.c = F->from_int(-2);
    fx.expected.x = F->from_int(-7);
    fx.expected.w = F->from_int(-5);
    fx.expected.y = F->from_int(2);
    fx.expected.z = F->from_int(-2);
    fx.expected_types = {{{20, 20, 19}, {9, 9, 9}}};
    return fx;
}

GoldenFixture make_5b() {
    auto F = make_field(3, 3, Polynomial::parse(3, "t^3-t+1"));
    FieldElement t = F->t(), one = F->one();
    Mat2 X2{-t, F->zero(), F->zero(), t * t - one};  // diag(-t, -t^{-1})
    Mat2 Y2{F->zero(), one, -one, t * t + one};
    GoldenFixture fx;
    fx.name = "5B";
    fx.field = F;
    fx.structure = {GroupDesc{Family::SL2, 27}, F, triple_T1(F, MatMode::SL2),
                    make_triple({X2, MatMode::SL2}, {Y2, MatMode::SL2})};
    fx.expected.branch = "case4";
    fx.expected.d = t;
    fx.expected.c = -t;
    fx.expected.x = F->zero();
    fx.expected.w = t * t + one;
    fx.expected.y = one;
    fx.expected.z = -one;
    fx.expected_types = {{{28, 28, 3}, {13, 13, 13}}};
    return fx;
}

GoldenFixture make_q7() {
    auto F = make_field(7, 1);
    GoldenFixture fx;
    fx.name = "q7";
    fx.field = F;
    fx.structure = fixture_q7(F, MatMode::PSL2);
    fx.expected.branch = "fixture-q7";
    fx.expected_types = {{{4, 4, 4}, {7, 7, 3}}};
    return fx;
}

GoldenFixture make_q9() {
    auto F = field_q9();
    GoldenFixture fx;
    fx.name = "q9";
    fx.field = F;
    fx.structure = fixture_q9(F, MatMode::PSL2);
    fx.involutor = Mat2{F->zero(), F->one(), F->t() + F->one(), F->zero()};
    fx.expected.branch = "fixture-q9";
    fx.expected_types = {{{4, 4, 4}, {5, 5, 5}}};
    return fx;
}

GoldenFixture make_q11() {
    auto F = make_field(11, 1);
    GoldenFixture fx;
    fx.name = "q11-sl2";
    fx.field = F;
    fx.structure = {GroupDesc{Family::SL2, 11}, F, fixture_t1_q11_sl2(*F),
                    fixture_t2_q11_sl2(*F)};
    fx.expected.branch = "fixture-q11";
    fx.expected_types = {{{12, 12, 12}, {5, 5, 11}}};
    return fx;
}
}  // namespace

const std::vector<GoldenFixture>& golden_fixtures() {
    static const std::vector<GoldenFixture> all = [] {
        std::vector<GoldenFixture> v;
        v.push_back(make_3a());
        v.push_back(make_3b());
        v.push_back(make_3c());
        v.push_back(make_5a());
        v.push_back(make_5b());
        v.push_back(make_q7());
        v.push_back(make_q9());
        v.push_back(make_q11());
        return v;
    }();
    return all;
}

const GoldenFixture& golden_fixture(const std::string& name) {
    for (const auto& fx : golden_fixtures())
        if (fx.name == name) return fx;
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace bvl
