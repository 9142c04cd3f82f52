#include <complex>

#include "doctest.h"
#include "dualcover/curve.hpp"
#include "oracles.hpp"

using namespace dualcover;

namespace {

PlaneCurve source(const std::string& text) {
    return PlaneCurve::make(Polynomial::parse(text, kSourceVars), Plane::source);
}

int count_kind(const std::vector<SingularPoint>& v, SingKind k) {
    int n = 0;
    for (const auto& s : v) n += s.kind == k;
    return n;
}

}  // namespace

TEST_CASE("conic is self-dual") {
    auto C = source("x^2 + y^2 - z^2");
    auto D = dual_curve(C);
    CHECK(D.degree == 2);
    CHECK(D.plane == Plane::dual);
    auto expect = Polynomial::parse("u^2 + v^2 - w^2", kDualVars);
    CHECK(curve_equal_up_to_scalar(D.defining, expect));
}

TEST_CASE("anisotropic conic dual via inverse matrix") {
    // dual of diag(2,3,-5) conic is the diag(1/2,1/3,-1/5) conic
    auto C = source("2*x^2 + 3*y^2 - 5*z^2");
    auto D = dual_curve(C);
    auto expect = Polynomial::parse("15*u^2 + 10*v^2 - 6*w^2", kDualVars);
    CHECK(curve_equal_up_to_scalar(D.defining, expect));
}

TEST_CASE("smooth cubic dual has degree 6") {
    auto C = source("x^3 + y^3 + z^3");
    auto D = dual_curve(C);
    CHECK(D.degree == 6);
}

TEST_CASE("nodal cubic dual has degree 4") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto D = dual_curve(C);
    CHECK(D.degree == 4);
}

TEST_CASE("degree 1 input is rejected") {
    auto L = source("x + y + z");
    CHECK_THROWS_AS(dual_curve(L), precondition_error);
}

TEST_CASE("biduality for conic and cubics") {
    CHECK(bidual_check(source("x^2 + y^2 - z^2")));
    CHECK(bidual_check(source("x^3 + y^3 + z^3")));
    CHECK(bidual_check(source("z*y^2 - x^2*(x+z)")));
}

TEST_CASE("singular points: smooth cubic is smooth") {
    auto C = source("x^3 + y^3 + z^3");
    CHECK(singular_points(C).empty());
}

TEST_CASE("singular points: nodal cubic has one node at (0:0:1)") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto sings = singular_points(C);
    REQUIRE(sings.size() == 1);
    CHECK(sings[0].kind == SingKind::Node);
    REQUIRE(sings[0].location.is_exact());
    auto& e = *sings[0].location.exact;
    CHECK(e[0] == 0);
    CHECK(e[1] == 0);
    CHECK(e[2] != 0);
    CHECK(sings[0].certificate == 0);
}

TEST_CASE("singular points: dual of smooth cubic has 9 cusps") {
    auto C = source("x^3 + y^3 + z^3");
    auto D = dual_curve(C);
    auto sings = singular_points(D);
    CHECK(sings.size() == 9);
    CHECK(count_kind(sings, SingKind::Cusp) == 9);
    CHECK(count_kind(sings, SingKind::Node) == 0);
    auto expect = plucker_expect(3, 0);
    CHECK(expect.dual_degree == D.degree);
    CHECK(expect.dual_cusps == 9);
    CHECK(expect.dual_nodes == 0);
}

TEST_CASE("singular points: dual of nodal cubic has 3 cusps") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto D = dual_curve(C);
    auto sings = singular_points(D);
    CHECK(sings.size() == 3);
    CHECK(count_kind(sings, SingKind::Cusp) == 3);
    auto expect = plucker_expect(3, 1);
    CHECK(expect.dual_degree == 4);
    CHECK(expect.dual_cusps == 3);
    CHECK(expect.dual_nodes == 0);
}

TEST_CASE("classification normal forms") {
    ProjPoint origin{{std::complex<double>(0), std::complex<double>(0), std::complex<double>(1)},
                     std::array<Rat, 3>{Rat(0), Rat(0), Rat(1)}};

    auto n = source("y^2*z - x^2*z - x^3");
    CHECK(classify_singularity(n, origin) == SingKind::Node);

    auto c = source("y^2*z - x^3");
    CHECK(classify_singularity(c, origin) == SingKind::Cusp);

    auto t = source("y^2*z^2 - x^4");  // tacnode: rank-1 jet, cubic restriction vanishes
    CHECK(classify_singularity(t, origin) == SingKind::Other);

    auto sm = source("x^3 + y^3 + z^3");
    ProjPoint pt{{std::complex<double>(1), std::complex<double>(-1), std::complex<double>(0)},
                 std::array<Rat, 3>{Rat(1), Rat(-1), Rat(0)}};
    CHECK_THROWS_AS(classify_singularity(sm, pt), precondition_error);
}

TEST_CASE("classification is invariant under exact projective changes") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-3, 3);
    auto curves = {std::string("y^2*z - x^2*z - x^3"), std::string("y^2*z - x^3")};
    for (const auto& text : curves) {
        auto C = source(text);
        auto sings = singular_points(C);
        REQUIRE(sings.size() == 1);
        SingKind kind0 = sings[0].kind;
        int tried = 0;
        while (tried < 5) {
            std::array<std::array<long, 3>, 3> M;
            for (auto& row : M)
                for (auto& e : row) e = d(rng);
            long det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                       M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                       M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
            if (det == 0) continue;
            ++tried;
            std::vector<Polynomial> subs;
            for (std::size_t i = 0; i < 3; ++i) {
                Polynomial row(kSourceVars);
                for (std::size_t j = 0; j < 3; ++j)
                    row += Polynomial::constant(Rat(M[i][j]), kSourceVars) *
                           Polynomial::variable(kSourceVars[j], kSourceVars);
                subs.push_back(row);
            }
            auto Ct = PlaneCurve::make(C.defining.compose(subs), Plane::source);
            auto st = singular_points(Ct);
            REQUIRE(st.size() == 1);
            CHECK(st[0].kind == kind0);
        }
    }
}

TEST_CASE("genericity: smooth cubics pass") {
    auto rep = genericity_check(source("x^3 + y^3 + z^3"));
    CHECK(rep.verdict);
    CHECK(rep.all_singularities_nodal);
    CHECK(rep.inflexions_simple);
    CHECK(rep.no_tritangent);
    CHECK(rep.no_flex_bitangent);
}

TEST_CASE("genericity: nodal cubic passes") {
    auto rep = genericity_check(source("z*y^2 - x^2*(x+z)"));
    CHECK(rep.verdict);
}

TEST_CASE("genericity: fermat quartic has hyperflexes") {
    auto rep = genericity_check(source("x^4 + y^4 + z^4"));
    CHECK(!rep.verdict);
    CHECK(!rep.inflexions_simple);
    CHECK(!rep.witnesses.empty());
}

TEST_CASE("genericity: conic is rejected") {
    CHECK_THROWS_AS(genericity_check(source("x^2 + y^2 - z^2")), precondition_error);
}

TEST_CASE("plucker_expect reference values") {
    auto a = plucker_expect(3, 0);
    CHECK(a.dual_degree == 6);
    CHECK(a.dual_cusps == 9);
    CHECK(a.dual_nodes == 0);
    auto b = plucker_expect(3, 1);
    CHECK(b.dual_degree == 4);
    CHECK(b.dual_cusps == 3);
    CHECK(b.dual_nodes == 0);
    auto c = plucker_expect(4, 0);
    CHECK(c.dual_degree == 12);
    CHECK(c.dual_cusps == 24);
    CHECK(c.dual_nodes == 28);
    CHECK_THROWS_AS(plucker_expect(3, 2), precondition_error);
    CHECK_THROWS_AS(plucker_expect(1, 0), precondition_error);
}

TEST_CASE("transversality") {
    auto conic = source("x^2 + y^2 - z^2");
    CHECK(is_transversal(conic, {Rat(1), Rat(2), Rat(7)}));
    // tangent line x = z touches at (1:0:1)
    CHECK(!is_transversal(conic, {Rat(1), Rat(0), Rat(-1)}));

    auto cusp = source("y^2*z - x^3");
    // a line through the cusp (0:0:1): x - y = 0
    CHECK(!is_transversal(cusp, {Rat(1), Rat(-1), Rat(0)}));

    auto cubic = source("x^3 + y^3 + z^3");
    // tangent at the flex (1:-1:0) is x + y = 0
    CHECK(!is_transversal(cubic, {Rat(1), Rat(1), Rat(0)}));
    CHECK_THROWS_AS(is_transversal(conic, {Rat(0), Rat(0), Rat(0)}), precondition_error);
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS(PlaneCurve::make(Polynomial::parse("x^2 + y", kSourceVars), Plane::source),
                    precondition_error);
    CHECK_THROWS_AS(PlaneCurve::make(Polynomial::parse("(x+y)^2", kSourceVars), Plane::source),
                    precondition_error);
    CHECK_THROWS_AS(PlaneCurve::make(Polynomial(kSourceVars), Plane::source), precondition_error);
}
