#include <complex>

#include "doctest.h"
#include "dualcover/track.hpp"

using namespace dualcover;

namespace {

PlaneCurve source(const std::string& text) {
    return PlaneCurve::make(Polynomial::parse(text, kSourceVars), Plane::source);
}

std::vector<std::complex<double>> branch_positions(const BranchData& bd) {
    std::vector<std::complex<double>> v;
    for (const auto& bp : bd.points) v.push_back(bp.value.value);
    return v;
}

}  // namespace

TEST_CASE("pencil fiber of the conic") {
    auto C = source("x^2 + y^2 - z^2");
    auto fr = make_frame(C, 3);
    auto fib = pencil_fiber(C, fr, fr.basepoint);
    CHECK(fib.degree_in("s") == 2);
    auto roots = certified_roots(fib, 1);
    CHECK(roots.size() == 2);
}

TEST_CASE("branch values: conic has 2, smooth cubic 6, quartic 12") {
    auto conic = source("x^2 + y^2 - z^2");
    auto bd = branch_values(conic, make_frame(conic, 5));
    CHECK(bd.points.size() == 2);
    for (auto& bp : bd.points) CHECK(bp.multiplicity == 1);

    auto cubic = source("x^3 + y^3 + z^3");
    auto bc = branch_values(cubic, make_frame(cubic, 5));
    CHECK(bc.points.size() == 6);
    for (auto& bp : bc.points) CHECK(bp.multiplicity == 1);

    auto quartic = source("x^3*y + y^3*z + z^3*x");
    auto bq = branch_values(quartic, make_frame(quartic, 5, 20, std::array<int, 3>{12, 0, 0}));
    CHECK(bq.points.size() == 12);
}

TEST_CASE("branch values of the dual sextic: 3 tangencies + 9 cusp lines") {
    auto C = source("x^3 + y^3 + z^3");
    auto D = dual_curve(C);
    auto fr = make_frame(D, 7, 20, std::array<int, 3>{3, 0, 9});
    auto bd = branch_values(D, fr);
    int t1 = 0, t3 = 0, other = 0;
    for (auto& bp : bd.points) {
        if (bp.multiplicity == 1)
            ++t1;
        else if (bp.multiplicity == 3)
            ++t3;
        else
            ++other;
    }
    CHECK(bd.points.size() == 12);
    CHECK(t1 == 3);
    CHECK(t3 == 9);
    CHECK(other == 0);
}

TEST_CASE("loop system invariants") {
    std::vector<std::complex<double>> targets;
    for (int k = 0; k < 6; ++k)
        targets.push_back(std::polar(1.0, 2 * M_PI * k / 6.0) + std::complex<double>(3, 1));
    auto sys = loop_system(targets, {-2.0, -2.0}, 9);
    REQUIRE(sys.targets.size() == 6);
    // petal order: angles ascending as seen from the routing hub
    double prev = -10;
    for (std::size_t k = 0; k < sys.targets.size(); ++k) {
        double a = std::arg(sys.targets[k] - sys.hub);
        CHECK(a >= prev);
        prev = a;
    }
    // determinism
    auto sys2 = loop_system(targets, {-2.0, -2.0}, 9);
    REQUIRE(sys2.targets.size() == sys.targets.size());
    for (std::size_t k = 0; k < sys.targets.size(); ++k) {
        CHECK(sys.targets[k] == sys2.targets[k]);
        CHECK(sys.radii[k] == sys2.radii[k]);
        for (std::size_t i = 0; i < sys.circles[k].vertices.size(); ++i)
            CHECK(sys.circles[k].vertices[i] == sys2.circles[k].vertices[i]);
    }
    CHECK_THROWS_AS(loop_system({{1.0, 0.0}, {1.0, 0.0}}, {0.0, 0.0}, 1), precondition_error);
}

TEST_CASE("constant loop tracks trivially") {
    auto C = source("x^2 + y^2 - z^2");
    auto fr = make_frame(C, 11);
    std::complex<double> base(to_double(fr.basepoint), 0);
    PathSpec loop;
    loop.vertices = {base, base};
    TrackOptions opts;
    auto ts = track_loop(C, fr, loop, opts);
    CHECK(ts.crossings.empty());
    CHECK(ts.end_positions.is_identity());
}

TEST_CASE("conic: loop around one branch value swaps the two strands") {
    auto C = source("x^2 + y^2 - z^2");
    auto fr = make_frame(C, 13);
    auto bd = branch_values(C, fr);
    REQUIRE(bd.points.size() == 2);
    auto sys = loop_system(branch_positions(bd), {to_double(fr.basepoint), 0}, 13);
    TrackOptions opts;
    opts.proj_angle = 0.37;
    auto ts = track_loop(C, fr, sys.petal(0), opts);
    CHECK(ts.crossings.size() == 1);
    CHECK(ts.crossings[0].sign == 1);
    CHECK(ts.end_positions.is_transposition());
}

TEST_CASE("smooth cubic: petals give transpositions, composite gives identity") {
    auto C = source("x^3 + y^3 + z^3");
    auto fr = make_frame(C, 17);
    auto bd = branch_values(C, fr);
    REQUIRE(bd.points.size() == 6);
    auto sys = loop_system(branch_positions(bd), {to_double(fr.basepoint), 0}, 17);
    TrackOptions opts;
    opts.proj_angle = 0.21;
    Perm prod(3);
    std::vector<Perm> gens;
    for (std::size_t k = 0; k < 6; ++k) {
        auto ts = track_loop(C, fr, sys.petal(k), opts);
        CHECK(ts.end_positions.is_transposition());
        gens.push_back(ts.end_positions);
        prod = prod * ts.end_positions;
    }
    CHECK(prod.is_identity());
    CHECK(perms_transitive(gens, 3));

    // composite loop in one tracking run
    auto tsc = track_loop(C, fr, sys.composite(), opts);
    CHECK(tsc.end_positions.is_identity());
}

TEST_CASE("reverse loop yields the inverse crossing word") {
    auto C = source("x^3 + y^3 + z^3");
    auto fr = make_frame(C, 19);
    auto bd = branch_values(C, fr);
    auto sys = loop_system(branch_positions(bd), {to_double(fr.basepoint), 0}, 19);
    TrackOptions opts;
    opts.proj_angle = 0.1;
    auto fwd = track_loop(C, fr, sys.petal(2), opts);
    auto bwd = track_loop(C, fr, reversed(sys.petal(2)), opts);
    REQUIRE(fwd.crossings.size() == bwd.crossings.size());
    for (std::size_t i = 0; i < fwd.crossings.size(); ++i) {
        const auto& f = fwd.crossings[i];
        const auto& b = bwd.crossings[bwd.crossings.size() - 1 - i];
        CHECK(f.pos == b.pos);
        CHECK(f.sign == -b.sign);
    }
    CHECK((fwd.end_positions * bwd.end_positions).is_identity());
}

TEST_CASE("tracking is deterministic for a fixed frame and angle") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto fr = make_frame(C, 23);
    auto bd = branch_values(C, fr);
    auto sys = loop_system(branch_positions(bd), {to_double(fr.basepoint), 0}, 23);
    TrackOptions opts;
    opts.proj_angle = 0.05;
    auto a = track_loop(C, fr, sys.petal(1), opts);
    auto b = track_loop(C, fr, sys.petal(1), opts);
    REQUIRE(a.crossings.size() == b.crossings.size());
    for (std::size_t i = 0; i < a.crossings.size(); ++i) {
        CHECK(a.crossings[i].pos == b.crossings[i].pos);
        CHECK(a.crossings[i].sign == b.crossings[i].sign);
        CHECK(a.crossings[i].time == b.crossings[i].time);
    }
}

TEST_CASE("nodal cubic: simple ramification from two independent frames") {
    auto C = source("z*y^2 - x^2*(x+z)");
    for (std::uint64_t seed : {29ULL, 31ULL}) {
        auto fr = make_frame(C, seed, 20, std::array<int, 3>{4, 1, 0});
        auto bd = branch_values(C, fr);
        // discriminant roots: 4 branch lines (mult 1) + 1 node line (mult 2)
        int m1 = 0, m2 = 0;
        std::vector<std::complex<double>> targets, obstacles;
        for (auto& bp : bd.points) {
            if (bp.multiplicity == 1) {
                ++m1;
                targets.push_back(bp.value.value);
            } else {
                ++m2;
                obstacles.push_back(bp.value.value);
            }
        }
        CHECK(m1 == 4);
        CHECK(m2 == 1);
        auto sys = loop_system(targets, {to_double(fr.basepoint), 0}, seed, obstacles);
        TrackOptions opts;
        opts.proj_angle = 0.11;
        Perm prod(3);
        for (std::size_t k = 0; k < targets.size(); ++k) {
            auto ts = track_loop(C, fr, sys.petal(k), opts);
            CHECK(ts.end_positions.is_transposition());
            prod = prod * ts.end_positions;
        }
        CHECK(prod.is_identity());
    }
}

TEST_CASE("perm basics") {
    Perm p = Perm::parse_cycles("(1 2)(3 4)", 5);
    CHECK(p.cycle_string() == "(1 2)(3 4)");
    CHECK(p.is_identity() == false);
    CHECK((p * p).is_identity());
    Perm q = Perm::parse_cycles("(1 2 3)", 3);
    CHECK(q(0) == 1);
    CHECK(q(2) == 0);
    CHECK((q * q * q).is_identity());
    CHECK(Perm::parse_cycles("()", 4).is_identity());
    CHECK_THROWS_AS(Perm::parse_cycles("(1 9)", 3), parse_error);
}
