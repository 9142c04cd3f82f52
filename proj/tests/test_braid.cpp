#include "doctest.h"
#include "dualcover/braid.hpp"

using namespace dualcover;

namespace {
PlaneCurve source(const std::string& text) {
    return PlaneCurve::make(Polynomial::parse(text, kSourceVars), Plane::source);
}
}  // namespace

TEST_CASE("braid word basics and free reduction") {
    auto w = make_word(3, {1, -1, 2});
    CHECK(w.letters == std::vector<int>{2});
    auto inv = inverse_word(make_word(3, {1, 2}));
    CHECK(inv.letters == std::vector<int>{-2, -1});
    CHECK(concat(make_word(3, {1, 2}), inv).letters.empty());
    CHECK(exponent_sum(make_word(3, {1, 1, -2})) == 1);
    CHECK_THROWS_AS(make_word(3, {3}), precondition_error);
}

TEST_CASE("artin action on meridians") {
    auto s1 = make_word(3, {1});
    CHECK(braid_action_on_meridian(s1, 1) == FreeWord{1, 2, -1});
    CHECK(braid_action_on_meridian(s1, 2) == FreeWord{1});
    CHECK(braid_action_on_meridian(s1, 3) == FreeWord{3});
    // identity braid
    CHECK(braid_action_on_meridian(make_word(3, {}), 2) == FreeWord{2});
    // the braid relation: s1 s2 s1 and s2 s1 s2 act identically
    auto a = make_word(3, {1, 2, 1});
    auto b = make_word(3, {2, 1, 2});
    for (int j = 1; j <= 3; ++j)
        CHECK(braid_action_on_meridian(a, j) == braid_action_on_meridian(b, j));
    CHECK(braid_equivalent(a, b));
    CHECK(!braid_equivalent(a, make_word(3, {1, 2})));
    // action preserves the product x1 x2 x3 up to conjugation by it (full
    // twist check happens at the factorization level); here: inverse undoes
    auto w = make_word(3, {1, 2, -1, 2});
    for (int j = 1; j <= 3; ++j) {
        FreeWord img = braid_action_on_meridian(w, j);
        // apply inverse braid to the image: must recover x_j
        FreeWord back;
        for (int g : img) {
            FreeWord piece = braid_action_on_meridian(inverse_word(w), std::abs(g));
            if (g < 0) piece = free_inverse(piece);
            back = free_concat(back, piece);
        }
        CHECK(back == FreeWord{j});
    }
}

TEST_CASE("local braid kinds from words") {
    BraidFactor f;
    f.word = make_word(3, {1});
    CHECK(local_braid_kind(f) == LocalKind::Tangency);
    f.word = make_word(3, {1, 2, 2, -1});
    CHECK(local_braid_kind(f) == LocalKind::NodeLine);
    f.word = make_word(2, {1, 1, 1});
    CHECK(local_braid_kind(f) == LocalKind::CuspLine);
    f.word = make_word(3, {1, 2});
    CHECK_THROWS_AS(local_braid_kind(f), integrity_error);
}

TEST_CASE("braid monodromy of the dual conic: two tangency factors") {
    auto C = source("x^2 + y^2 - z^2");
    auto D = dual_curve(C);
    auto fact = braid_monodromy(D, 41);
    CHECK(fact.strands == 2);
    REQUIRE(fact.factors.size() == 2);
    for (const auto& f : fact.factors) {
        CHECK(f.kind == LocalKind::Tangency);
        CHECK(f.exp == 1);
    }
    int total = 0;
    for (const auto& f : fact.factors) total += exponent_sum(f.word);
    CHECK(total == 2);
    Perm prod = braid_permutation(fact.factors[0].word) * braid_permutation(fact.factors[1].word);
    CHECK(prod.is_identity());
}

TEST_CASE("braid monodromy of the dual of the smooth cubic") {
    auto C = source("x^3 + y^3 + z^3");
    auto D = dual_curve(C);
    auto fact = braid_monodromy(D, 43);
    CHECK(fact.strands == 6);
    REQUIRE(fact.factors.size() == 12);
    int tang = 0, node = 0, cusp = 0, total = 0;
    Perm prod(6);
    for (const auto& f : fact.factors) {
        tang += f.kind == LocalKind::Tangency;
        node += f.kind == LocalKind::NodeLine;
        cusp += f.kind == LocalKind::CuspLine;
        total += exponent_sum(f.word);
        prod = prod * braid_permutation(f.word);
    }
    CHECK(tang == 3);
    CHECK(node == 0);
    CHECK(cusp == 9);
    CHECK(total == 30);
    CHECK(prod.is_identity());

    // stability across seeds: kind multiset and exponent sum agree
    auto fact2 = braid_monodromy(D, 44);
    int tang2 = 0, cusp2 = 0, total2 = 0;
    for (const auto& f : fact2.factors) {
        tang2 += f.kind == LocalKind::Tangency;
        cusp2 += f.kind == LocalKind::CuspLine;
        total2 += exponent_sum(f.word);
    }
    CHECK(tang2 == tang);
    CHECK(cusp2 == cusp);
    CHECK(total2 == total);
}

TEST_CASE("hurwitz moves preserve the product and are invertible") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto D = dual_curve(C);
    auto fact = braid_monodromy(D, 47);
    check_full_twist(fact);
    for (std::size_t i = 0; i + 1 < fact.factors.size(); ++i) {
        auto moved = hurwitz_move(fact, i);
        check_full_twist(moved);
        // multiset of (kind, exponent) preserved
        auto key = [](const BraidMonodromyFactorization& f) {
            std::vector<std::pair<int, int>> ks;
            for (const auto& x : f.factors)
                ks.push_back({static_cast<int>(x.kind), exponent_sum(x.word)});
            std::sort(ks.begin(), ks.end());
            return ks;
        };
        CHECK(key(moved) == key(fact));
        // inverse move restores the factor words
        auto back = hurwitz_move(moved, i);
        // move, then conjugate-inverse move equals original after the
        // inverse Hurwitz move: apply the inverse directly
        BraidMonodromyFactorization inv = moved;
        // inverse move: (a', b') -> (b', b'^{-1} a' b')
        const auto& ap = moved.factors[i];
        const auto& bp = moved.factors[i + 1];
        inv.factors[i] = bp;
        BraidFactor rec = ap;
        rec.word = concat(concat(inverse_word(bp.word), ap.word), bp.word);
        rec.stem = concat(inverse_word(bp.word), ap.stem);
        inv.factors[i + 1] = rec;
        for (std::size_t k = 0; k < fact.factors.size(); ++k)
            CHECK(braid_equivalent(inv.factors[k].word, fact.factors[k].word));
        (void)back;
    }
}

TEST_CASE("braid monodromy of the dual of the nodal cubic") {
    auto C = source("z*y^2 - x^2*(x+z)");
    auto D = dual_curve(C);
    auto fact = braid_monodromy(D, 53);
    CHECK(fact.strands == 4);
    int tang = 0, node = 0, cusp = 0, total = 0;
    Perm prod(4);
    for (const auto& f : fact.factors) {
        tang += f.kind == LocalKind::Tangency;
        node += f.kind == LocalKind::NodeLine;
        cusp += f.kind == LocalKind::CuspLine;
        total += exponent_sum(f.word);
        prod = prod * braid_permutation(f.word);
    }
    CHECK(tang == 3);
    CHECK(node == 0);
    CHECK(cusp == 3);
    CHECK(total == 12);
    CHECK(prod.is_identity());
}
