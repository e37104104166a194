#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "beauville/ffield.hpp"
#include "beauville/psl2.hpp"

using namespace bvl;

namespace {
std::mt19937_64 rng(0xbea01u);

Polynomial random_monic(std::uint64_t p, int deg) {
    std::vector<std::uint64_t> c(deg + 1);
    for (int i = 0; i < deg; ++i) c[i] = rng() % p;
    c[deg] = 1;
    return Polynomial(p, std::move(c));
}

Polynomial random_monic_irreducible(std::uint64_t p, int deg) {
    for (;;) {
        Polynomial f = random_monic(p, deg);
        if (poly_is_irreducible(f)) return f;
    }
}
}  // namespace

TEST_CASE("polynomial parse and print round-trip") {
    auto f = Polynomial::parse(2, "t^3+t+1");
    CHECK(f.coeffs() == std::vector<std::uint64_t>{1, 1, 0, 1});
    CHECK(f.str() == "t^3+t+1");
    auto g = Polynomial::parse(3, "t^3-t+1");
    CHECK(g.coeffs() == std::vector<std::uint64_t>{1, 2, 0, 1});
    auto h = Polynomial::parse(3, "-t^2-1");
    CHECK(h.coeffs() == std::vector<std::uint64_t>{2, 0, 2});
    CHECK(Polynomial::parse(13, "5").degree() == 0);
    CHECK(Polynomial::parse(5, "2*t^2 + 4t").coeff(2) == 2);
    CHECK_THROWS_AS(Polynomial::parse(5, "x+1"), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial::parse(5, ""), std::invalid_argument);
}

TEST_CASE("make_field selects and validates moduli") {
    auto F8 = make_field(2, 3, Polynomial::parse(2, "t^3+t+1"));
    CHECK(F8->q() == 8);
    CHECK(multiplicative_order(F8->t()) == 7);  // t generates F8*

    auto F27 = make_field(3, 3, Polynomial::parse(3, "t^3-t+1"));
    CHECK(multiplicative_order(F27->t()) == 26);

    auto F13 = make_field(13, 1);
    CHECK(F13->q() == 13);
    // modulus t - g for the conventional (smallest) generator g = 2
    CHECK(F13->modulus() == Polynomial(13, {11, 1}));
    CHECK(F13->t() == F13->from_int(2));

    // defaults are the canonically smallest primitive polynomials
    CHECK(make_field(2, 3)->modulus() == Polynomial::parse(2, "t^3+t+1"));
    CHECK(make_field(3, 3)->modulus() == Polynomial::parse(3, "t^3-t+1"));

    CHECK_THROWS_AS(make_field(6, 1), std::invalid_argument);                        // composite p
    CHECK_THROWS_AS(make_field(2, 2, Polynomial::parse(2, "t^2+1")), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2, 3, Polynomial::parse(2, "t^2+t+1")), std::invalid_argument);
    CHECK_THROWS_AS(make_field(3, 2, Polynomial::parse(3, "2t^2+1")), std::invalid_argument);
}

TEST_CASE("poly_classify distinguishes reducible/irreducible/primitive") {
    CHECK(poly_classify(Polynomial::parse(2, "t^3+t+1")) == PolyClass::primitive);
    CHECK(poly_classify(Polynomial::parse(2, "t^2+1")) == PolyClass::reducible);  // (t+1)^2

    // t^2+1 over F3 is irreducible but t has order 4 < 8
    auto f = Polynomial::parse(3, "t^2+1");
    CHECK(poly_classify(f) == PolyClass::irreducible);
    auto F9 = make_field(3, 2, f);
    CHECK(multiplicative_order(F9->t()) == 4);

    CHECK_THROWS_AS(poly_classify(Polynomial::parse(3, "2t^2+1")), std::invalid_argument);
}

TEST_CASE("is_square") {
    auto F13 = make_field(13, 1);
    CHECK(!is_square(F13->from_int(6)));
    auto F37 = make_field(37, 1);
    CHECK(is_square(F37->from_int(-7)));
    CHECK(is_square(F37->from_int(3)));
    auto F8 = make_field(2, 3);
    for (std::uint64_t i = 0; i < 8; ++i) CHECK(is_square(F8->element(i)));
    CHECK(is_square(F13->zero()));
}

TEST_CASE("sqrt returns the canonical root") {
    auto F13 = make_field(13, 1);
    CHECK(sqrt(F13->from_int(-4)).value() == F13->from_int(3));
    auto F8 = make_field(2, 3);
    FieldElement t = F8->t();
    CHECK(sqrt(t * t + t).value() == t * t);
    auto F37 = make_field(37, 1);
    CHECK(sqrt(F37->from_int(-3)).value() == F37->from_int(16));
    CHECK(sqrt(F13->zero()).value() == F13->zero());
    CHECK(!sqrt(F13->from_int(6)).has_value());
}

TEST_CASE("sqrt via Tonelli-Shanks agrees with squaring on a large prime field") {
    auto F = make_field(2003, 1);  // above the exhaustive cutoff
    for (std::uint64_t i = 1; i < 200; ++i) {
        FieldElement a = F->element(i);
        auto r = sqrt(a);
        if (r) {
            CHECK(*r * *r == a);
            CHECK(r->index() <= (-*r).index());  // canonical: the smaller root
        } else {
            CHECK(!is_square(a));
        }
    }
}

TEST_CASE("multiplicative_order") {
    auto F8 = make_field(2, 3);
    CHECK(multiplicative_order(F8->t()) == 7);
    auto F13 = make_field(13, 1);
    CHECK(multiplicative_order(F13->from_int(2)) == 12);
    CHECK(multiplicative_order(F13->one()) == 1);
    CHECK_THROWS_AS(multiplicative_order(F13->zero()), std::invalid_argument);
}

TEST_CASE("primitive roots are exactly the elements of full order") {
    auto F19 = make_field(19, 1);
    auto roots19 = primitive_roots(*F19);
    bool has2 = false;
    for (auto& r : roots19) has2 = has2 || r == F19->from_int(2);
    CHECK(has2);
    CHECK(smallest_primitive_root(*F19) == F19->from_int(2));

    auto F13 = make_field(13, 1);
    CHECK(smallest_primitive_root(*F13) == F13->from_int(2));

    for (std::uint64_t q : {7ull, 9ull, 13ull, 16ull, 25ull, 27ull}) {
        auto F = make_field_q(q);
        auto roots = primitive_roots(*F);
        CHECK(roots.size() == euler_phi(q - 1));
        // independent oracle: brute-force powering of every nonzero element
        std::size_t count = 0;
        for (std::uint64_t i = 1; i < q; ++i) {
            FieldElement a = F->element(i), cur = a;
            std::uint64_t n = 1;
            while (!(cur == F->one())) {
                cur = cur * a;
                ++n;
            }
            if (n == q - 1) ++count;
        }
        CHECK(count == roots.size());
        for (std::size_t i = 1; i < roots.size(); ++i)
            CHECK(roots[i - 1].index() < roots[i].index());  // ascending stream
    }
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(3, 11) == 1);
    for (std::uint64_t p : {3ull, 11ull, 37ull})
        for (std::int64_t a = 1; a < 10; ++a)
            if (a % static_cast<std::int64_t>(p) != 0) CHECK(legendre(a * a, p) == 1);
    CHECK(legendre(11, 11) == 0);
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
}

TEST_CASE("dedekind symbol: pinned values and error cases") {
    auto f = Polynomial::parse(3, "t^3-t+1");
    CHECK(dedekind_symbol(Polynomial::parse(3, "-t^2-1"), f) == 1);
    CHECK(dedekind_symbol_euler(Polynomial::parse(3, "-t^2-1"), f) == 1);

    auto f2 = Polynomial::parse(3, "t^2+1");
    CHECK(dedekind_symbol(Polynomial::parse(3, "t+1"), f2) == -1);
    CHECK(dedekind_symbol_euler(Polynomial::parse(3, "t+1"), f2) == -1);

    // g a multiple of f
    auto h = Polynomial::parse(3, "t^2+t+2");
    CHECK(dedekind_symbol(f * h, f) == 0);

    CHECK_THROWS_AS(dedekind_symbol(f, Polynomial::parse(3, "2")), std::invalid_argument);
    CHECK_THROWS_AS(dedekind_symbol(f, Polynomial::parse(3, "2t+1")), std::invalid_argument);
    CHECK_THROWS_AS(dedekind_symbol(Polynomial::parse(2, "t"), Polynomial::parse(2, "t^2+t+1")),
                    std::invalid_argument);
}

TEST_CASE("dedekind symbol agrees with the Euler-criterion oracle") {
    for (std::uint64_t p : {3ull, 7ull, 11ull, 19ull}) {
        for (int n = 0; n < 60; ++n) {
            int df = 1 + static_cast<int>(rng() % 4);
            Polynomial f = random_monic_irreducible(p, df);
            int dg = static_cast<int>(rng() % 5);
            std::vector<std::uint64_t> gc(dg + 1);
            for (auto& c : gc) c = rng() % p;
            Polynomial g(p, std::move(gc));
            CHECK(dedekind_symbol(g, f) == dedekind_symbol_euler(g, f));
        }
    }
}

TEST_CASE("dedekind reciprocity") {
    for (std::uint64_t p : {3ull, 7ull, 11ull, 19ull}) {
        int done = 0;
        while (done < 60) {
            Polynomial f = random_monic(p, 1 + static_cast<int>(rng() % 4));
            Polynomial g = random_monic(p, 1 + static_cast<int>(rng() % 4));
            if (!(Polynomial::gcd(f, g) == Polynomial::constant(p, 1))) continue;
            ++done;
            int lhs = dedekind_symbol(g, f) * dedekind_symbol(f, g);
            std::uint64_t exp =
                static_cast<std::uint64_t>(f.degree()) * g.degree() * ((p - 1) / 2);
            int rhs = exp % 2 ? -1 : 1;
            CHECK(lhs == rhs);
            if (p % 4 == 3) {
                int rhs2 = (f.degree() * g.degree()) % 2 ? -1 : 1;
                CHECK(lhs == rhs2);
            }
        }
    }
}

TEST_CASE("field axioms and encode/decode round-trips") {
    for (std::uint64_t q : {13ull, 27ull, 16ull, 25ull}) {
        auto F = make_field_q(q);
        for (int n = 0; n < 200; ++n) {
            FieldElement a = F->element(rng() % q);
            FieldElement b = F->element(rng() % q);
            FieldElement c = F->element(rng() % q);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            if (!a.is_zero()) CHECK(a * a.inverse() == F->one());
            CHECK(F->element(a.coeffs()) == a);
        }
    }
}

TEST_CASE("euler consistency: square counts") {
    for (std::uint64_t q : {7ull, 9ull, 13ull, 25ull, 27ull, 49ull}) {
        auto F = make_field_q(q);
        std::size_t squares = 0;
        for (std::uint64_t i = 1; i < q; ++i) {
            FieldElement a = F->element(i);
            bool sq = is_square(a);
            CHECK(sq == (a.pow((q - 1) / 2) == F->one()));
            if (sq) ++squares;
        }
        CHECK(squares == (q - 1) / 2);
    }
}

TEST_CASE("artin-schreier solver") {
    for (std::uint64_t q : {8ull, 16ull, 64ull}) {
        auto F = make_field_q(q);
        std::size_t solvable = 0;
        for (std::uint64_t i = 0; i < q; ++i) {
            FieldElement d = F->element(i);
            auto z = solve_artin_schreier(d);
            if (z) {
                CHECK(*z * *z + *z == d);
                ++solvable;
            }
        }
        CHECK(solvable == q / 2);  // image of z^2+z has index 2
    }
    auto F13 = make_field(13, 1);
    CHECK_THROWS_AS(solve_artin_schreier(F13->one()), std::invalid_argument);
}

TEST_CASE("quadratic extension: frobenius fixes exactly the base field") {
    for (std::uint64_t q : {9ull, 11ull, 8ull}) {
        auto F = make_field_q(q);
        QuadExtension E(F.get());
        for (std::uint64_t x = 0; x < q; ++x)
            for (std::uint64_t y = 0; y < q; ++y) {
                auto v = E.make(F->element(x), F->element(y));
                bool fixed = E.frobenius(v) == v;
                CHECK(fixed == (y == 0));
                if (!v.is_zero()) CHECK(E.mul(v, E.inverse(v)) == E.one());
                // v^{q^2} = v
                CHECK(E.frobenius(E.frobenius(v)) == v);
            }
    }
}

TEST_CASE("norm-one traces") {
    auto F11 = make_field(11, 1);
    QuadExtension E11(F11.get());
    CHECK(find_norm_one_trace(E11, 6) == F11->from_int(5));

    auto F8 = make_field(2, 3);
    QuadExtension E8(F8.get());
    auto two = traces_of_element_order(E8, 9, 2);
    CHECK(two.size() == 2);
    CHECK(!(two[0] == two[1]));

    // oracle for q = 13, n = 7: enumerate the traces of order-7 elements of
    // L2(13) directly and check membership
    auto F13 = make_field(13, 1);
    QuadExtension E13(F13.get());
    FieldElement a = find_norm_one_trace(E13, 7);
    std::set<std::uint64_t> order7_traces;
    for (std::uint64_t i = 0; i < 13; ++i) {
        GroupElement g(Mat2{F13->zero(), F13->one(), -F13->one(), F13->element(i)}, MatMode::PSL2);
        if (element_order(g) == 7) {
            order7_traces.insert(i);
            order7_traces.insert((-F13->element(i)).index());
        }
    }
    CHECK(order7_traces.count(a.index()) == 1);

    // exact-order variant: the companion matrix has that exact linear order
    FieldElement a7 = traces_of_element_order(E13, 7, 1)[0];
    GroupElement g7(Mat2{F13->zero(), F13->one(), -F13->one(), a7}, MatMode::SL2);
    CHECK(element_order(g7) == 7);

    CHECK_THROWS_AS(traces_of_element_order(E13, 5, 1), std::invalid_argument);  // 5 | neither
    CHECK_THROWS_AS(traces_of_element_order(E13, 14, 7), std::invalid_argument); // too many
}
