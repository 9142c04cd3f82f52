#include <random>

#include "doctest.h"
#include "dualcover/poly.hpp"
#include "oracles.hpp"

using namespace dualcover;
using oracles::equal_up_to_scalar;
using oracles::random_poly;
using oracles::sylvester_resultant;

static const std::vector<std::string> XYZ = {"x", "y", "z"};
static const std::vector<std::string> XY = {"x", "y"};

TEST_CASE("parse: fermat cubic") {
    auto p = Polynomial::parse("x^3+y^3+z^3", XYZ);
    CHECK(p.terms().size() == 3);
    CHECK(p.total_degree() == 3);
    CHECK(p.is_homogeneous());
}

TEST_CASE("parse: cancellation to zero") {
    auto p = Polynomial::parse("x*y - x*y", XY);
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
}

TEST_CASE("parse: nodal cubic expands") {
    auto p = Polynomial::parse("z*y^2 - x^2*(x+z)", XYZ);
    CHECK(p.terms().size() == 3);
    CHECK(p.total_degree() == 3);
    CHECK(p.is_homogeneous());
}

TEST_CASE("parse/print round trip is idempotent") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto p = random_poly(rng, XYZ, 5, 8);
        auto s1 = p.to_string();
        auto q = Polynomial::parse(s1, XYZ);
        CHECK(q == p);
        CHECK(q.to_string() == s1);
    }
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(Polynomial::parse("x^3 + w", XYZ), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("x^", XYZ), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("x + ", XYZ), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("(x+y", XYZ), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("x/y", XY), parse_error);
}

TEST_CASE("rational literals and division by constants") {
    auto p = Polynomial::parse("1/2*x + x/2", XY);
    auto q = Polynomial::parse("x", XY);
    CHECK(equal_up_to_scalar(p, q));
    CHECK(p.terms().front().second == Rat(1));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(rng, XY, 4, 5);
        auto b = random_poly(rng, XY, 4, 5);
        auto c = random_poly(rng, XY, 4, 5);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("resultant: substitution case") {
    std::vector<std::string> xt = {"x", "t"};
    auto f = Polynomial::parse("x^2 - t", xt);
    auto g = Polynomial::parse("x - 1", xt);
    auto r = resultant(f, g, "x");
    CHECK(equal_up_to_scalar(r, Polynomial::parse("1 - t", xt)));
}

TEST_CASE("resultant: common factor gives zero") {
    auto f = Polynomial::parse("x^2 + 1", XY);
    auto r = resultant(f, f, "x");
    CHECK(r.is_zero());
}

TEST_CASE("resultant matches Sylvester oracle on random pairs") {
    std::mt19937_64 rng(13);
    int done = 0;
    while (done < 60) {
        auto f = random_poly(rng, XY, 3, 4);
        auto g = random_poly(rng, XY, 3, 4);
        if (f.degree_in("x") < 1 || g.degree_in("x") < 1) continue;
        ++done;
        auto prs = resultant(f, g, "x");
        auto syl = sylvester_resultant(f, g, "x");
        CHECK(prs == syl);
    }
}

TEST_CASE("resultant multiplicativity") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 25) {
        auto f = random_poly(rng, XY, 2, 3);
        auto g = random_poly(rng, XY, 2, 3);
        auto h = random_poly(rng, XY, 2, 3);
        if (f.degree_in("x") < 1 || g.degree_in("x") < 1 || h.degree_in("x") < 1) continue;
        ++done;
        auto lhs = resultant(f * g, h, "x");
        auto rhs = resultant(f, h, "x") * resultant(g, h, "x");
        CHECK(lhs == rhs);
    }
}

TEST_CASE("resultant rejects inputs free of the variable") {
    auto f = Polynomial::parse("y + 1", XY);
    auto g = Polynomial::parse("y^2", XY);
    CHECK_THROWS_AS(resultant(f, g, "x"), precondition_error);
}

TEST_CASE("discriminant: quadratic") {
    std::vector<std::string> v = {"x", "b", "c"};
    auto f = Polynomial::parse("x^2 + b*x + c", v);
    auto d = discriminant(f, "x");
    CHECK(equal_up_to_scalar(d, Polynomial::parse("b^2 - 4*c", v)));
}

TEST_CASE("discriminant: depressed cubic matches Sylvester oracle") {
    std::vector<std::string> v = {"x", "p", "q"};
    auto f = Polynomial::parse("x^3 + p*x + q", v);
    auto d = discriminant(f, "x");
    auto expect = Polynomial::parse("-4*p^3 - 27*q^2", v);
    CHECK(equal_up_to_scalar(d, expect));
    auto syl = sylvester_resultant(f, f.derivative("x"), "x");
    CHECK(equal_up_to_scalar(syl, expect));
}

TEST_CASE("discriminant: root collision at t=0") {
    std::vector<std::string> v = {"x", "t"};
    auto f = Polynomial::parse("(x - t)*(x - 2*t)", v);
    auto d = discriminant(f, "x");
    CHECK(equal_up_to_scalar(d, Polynomial::parse("t^2", v)));
}

TEST_CASE("discriminant rejects degree 0") {
    auto f = Polynomial::parse("y + 1", XY);
    CHECK_THROWS_AS(discriminant(f, "x"), precondition_error);
}

TEST_CASE("squarefree part: basic and idempotent") {
    auto f = Polynomial::parse("(x+y)^2", XY);
    CHECK(equal_up_to_scalar(squarefree_part(f), Polynomial::parse("x+y", XY)));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        auto p = random_poly(rng, XY, 3, 4);
        if (p.is_zero()) continue;
        auto s = squarefree_part(p);
        CHECK(equal_up_to_scalar(squarefree_part(s), s));
        CHECK(divide_exact(p, s).has_value());
    }
}

TEST_CASE("squarefree part: constructed h^2*k") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 20) {
        auto h = random_poly(rng, XY, 2, 3);
        auto k = random_poly(rng, XY, 2, 3);
        if (h.is_constant() || k.is_constant()) continue;
        if (!gcd_poly(h, k).is_constant()) continue;
        if (squarefree_part(h).normalized() != h.normalized()) continue;
        if (squarefree_part(k).normalized() != k.normalized()) continue;
        ++done;
        auto f = h * h * k;
        CHECK(equal_up_to_scalar(squarefree_part(f), h * k));
    }
}

TEST_CASE("squarefree decomposition with monomial content") {
    auto f = Polynomial::parse("x^2*(x+y)^3*(x-y)", XY);
    auto dec = squarefree_decomposition(f);
    Polynomial rebuilt = Polynomial::constant(1, XY);
    for (const auto& [p, m] : dec) rebuilt = rebuilt * p.pow(static_cast<unsigned>(m));
    CHECK(equal_up_to_scalar(rebuilt, f));
    CHECK(dec.size() == 3);
}

TEST_CASE("gcd: cofactor consistency on random products") {
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 25) {
        auto a = random_poly(rng, XY, 2, 3);
        auto b = random_poly(rng, XY, 2, 3);
        auto c = random_poly(rng, XY, 2, 3);
        if (a.is_constant() || b.is_constant() || c.is_constant()) continue;
        ++done;
        auto g = gcd_poly(a * c, b * c);
        CHECK(divide_exact(g, c.normalized()).has_value());
        CHECK(divide_exact(a * c, g).has_value());
        CHECK(divide_exact(b * c, g).has_value());
    }
}

TEST_CASE("exact division") {
    auto f = Polynomial::parse("x^2 - y^2", XY);
    auto g = Polynomial::parse("x - y", XY);
    auto q = divide_exact(f, g);
    REQUIRE(q.has_value());
    CHECK(*q == Polynomial::parse("x + y", XY));
    CHECK(!divide_exact(f, Polynomial::parse("x + 1", XY)).has_value());
}

TEST_CASE("homogeneous flag consistency") {
    CHECK(Polynomial::parse("x^2+y*z", XYZ).is_homogeneous());
    CHECK(!Polynomial::parse("x^2+y", XYZ).is_homogeneous());
    CHECK(Polynomial(XYZ).is_homogeneous());
}

TEST_CASE("evaluation at rational and complex points") {
    auto f = Polynomial::parse("x^2*y - 3*y + 1/2", XY);
    CHECK(f.eval({Rat(2), Rat(3)}) == Rat(2) * 2 * 3 - Rat(9) + Rat(1, 2));
    std::complex<double> v = f.eval(std::vector<std::complex<double>>{{1.0, 1.0}, {2.0, 0.0}});
    CHECK(std::abs(v - std::complex<double>(-5.5, 4.0)) < 1e-12);
}
