#include <complex>
#include <random>

#include "doctest.h"
#include "dualcover/numeric.hpp"

using namespace dualcover;

TEST_CASE("double-double keeps sub-ulp residue") {
    DD a(1.0, 0.0);
    DD tiny(1e-25, 0.0);
    DD s = dd_add(a, tiny);
    DD back = dd_sub(s, a);
    CHECK(back.to_double() == doctest::Approx(1e-25).epsilon(1e-10));

    Rat q(1, 3);
    DD t = dd_from_rat(q);
    // residual of the double approximation is captured in lo
    CHECK(std::abs(t.hi - 1.0 / 3.0) == 0.0);
    CHECK(std::abs(t.lo) > 0.0);
    CHECK(std::abs(t.lo) < 1e-16);
}

TEST_CASE("dd multiplication and division round trip") {
    DD a(3.14159, 1e-18);
    DD b(2.71828, -3e-19);
    DD p = dd_mul(a, b);
    DD q = dd_div(p, b);
    CHECK(std::abs(q.to_double() - a.to_double()) < 1e-28);
}

TEST_CASE("aberth: roots of unity") {
    std::vector<std::complex<double>> c(6, 0.0);
    c[0] = -1.0;
    c[5] = 1.0;  // z^5 - 1
    auto roots = aberth_roots(c, 42);
    REQUIRE(roots.size() == 5);
    for (auto z : roots) {
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
        CHECK(std::abs(poly_eval(c, z)) < 1e-12);
    }
}

TEST_CASE("aberth: polynomial with zero roots") {
    // z^2 * (z - 3)
    std::vector<std::complex<double>> c = {0.0, 0.0, -3.0, 1.0};
    auto roots = aberth_roots(c, 7);
    REQUIRE(roots.size() == 3);
    int zeros = 0, threes = 0;
    for (auto z : roots) {
        if (std::abs(z) < 1e-10) ++zeros;
        if (std::abs(z - 3.0) < 1e-10) ++threes;
    }
    CHECK(zeros == 2);
    CHECK(threes == 1);
}

TEST_CASE("certified roots of exact products of linear factors") {
    std::vector<std::string> T = {"t"};
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> d(-20, 20);
        std::vector<Rat> expect;
        Polynomial f = Polynomial::constant(1, T);
        while (expect.size() < 7) {
            Rat r(d(rng), 1 + std::abs(d(rng)) % 7);
            r.canonicalize();
            bool dup = false;
            for (auto& e : expect) dup = dup || e == r;
            if (dup) continue;
            expect.push_back(r);
            f = f * (Polynomial::variable("t", T) - Polynomial::constant(r, T));
        }
        auto roots = certified_roots(f, 99 + static_cast<std::uint64_t>(trial));
        REQUIRE(roots.size() == expect.size());
        for (const auto& e : expect) {
            bool found = false;
            for (const auto& cr : roots)
                if (std::abs(cr.value - std::complex<double>(to_double(e), 0)) <= 1e-9)
                    found = true;
            CHECK(found);
        }
        for (const auto& cr : roots) CHECK(cr.radius < 1e-9);
    }
}

TEST_CASE("certified roots refuse a repeated root") {
    std::vector<std::string> T = {"t"};
    auto f = Polynomial::parse("(t-1)^2*(t+2)", T);
    CHECK_THROWS_AS(certified_roots(f, 5), certification_error);
}

TEST_CASE("dd newton polish improves residual") {
    std::vector<std::string> T = {"t"};
    auto f = Polynomial::parse("t^3 - 2", T);
    auto exact = to_cdd_coeffs(f);
    std::complex<double> rough(1.26, 1e-9);
    auto z = dd_newton_polish(exact, rough, 5);
    CHECK(std::abs(z - std::complex<double>(std::cbrt(2.0), 0)) < 1e-15);
}
