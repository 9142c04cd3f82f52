#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dualcover/curve.hpp"
#include "dualcover/perm.hpp"
#include "dualcover/track.hpp"

namespace dualcover {

/* Artin braid word on `strands` strands. Letters are signed 1-based
 * generator indices: +i is the counterclockwise half twist of the strands
 * at positions i, i+1; -i its inverse. Words are stored freely reduced. */
struct BraidWord {
    int strands = 0;
    std::vector<int> letters;
};

BraidWord make_word(int strands, std::vector<int> letters);  // reduces
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord inverse_word(const BraidWord& a);
Perm braid_permutation(const BraidWord& w);  // start position -> end position
int exponent_sum(const BraidWord& w);

/* Words in the free group on m generators x_1..x_m: signed 1-based indices. */
using FreeWord = std::vector<int>;
FreeWord free_reduce(FreeWord w);
FreeWord free_concat(const FreeWord& a, const FreeWord& b);
FreeWord free_inverse(const FreeWord& a);

/* The action of a braid on the meridian generators of the punctured disk:
 * sigma_i sends x_i -> x_i x_{i+1} x_i^{-1} and x_{i+1} -> x_i, fixing the
 * rest; letters act in word order. j is 1-based; result is reduced. */
FreeWord braid_action_on_meridian(const BraidWord& braid, int j);

/* Equality surrogate per the band-generator contract: permutation image,
 * exponent sum, and a hash of the action on all generators. */
std::uint64_t braid_action_hash(const BraidWord& w);
bool braid_equivalent(const BraidWord& a, const BraidWord& b);

enum class LocalKind { Tangency, NodeLine, CuspLine };
std::string local_kind_name(LocalKind k);

struct BraidFactor {
    BraidWord word;   // stem * sigma_pos^exp * stem^{-1}, reduced
    BraidWord stem;   // approach braid from the basepoint fiber
    int pos = 0;      // 0-based band position at the special fiber
    int exp = 0;      // 1 tangency, 2 node line, 3 cusp line
    LocalKind kind = LocalKind::Tangency;
    std::complex<double> branch_value;
    int multiplicity = 0;  // discriminant multiplicity (equals exp)
};

struct BraidMonodromyFactorization {
    int strands = 0;
    std::vector<BraidFactor> factors;  // petal order
    PencilFrame frame;
    double proj_angle = 0;
    std::vector<std::complex<double>> punctures;  // basepoint fiber, position order
    std::uint64_t seed = 0;
};

/* Braid word of a tracked path. */
BraidWord crossings_to_braid(const TrackedStrands& ts, int strands);

/* Local type of a band-power factor, decided by exponent sum and the
 * permutation image of the reduced word. Throws integrity_error when the
 * factor is not conjugate to a band power. */
LocalKind local_braid_kind(const BraidFactor& f);

/* The full braid monodromy of a (dual-plane) curve with respect to a
 * generic pencil: one factor per special line, kinds cross-validated
 * against the curve's node/cusp geometry, full-twist invariants enforced.
 * `sings` may pass precomputed singular points of the curve. */
BraidMonodromyFactorization braid_monodromy(const PlaneCurve& Cstar, std::uint64_t seed,
                                            const std::vector<SingularPoint>* sings = nullptr);

/* Elementary Hurwitz move at index i (0-based): (.., b_i, b_{i+1}, ..) ->
 * (.., b_i b_{i+1} b_i^{-1}, b_i, ..). */
BraidMonodromyFactorization hurwitz_move(const BraidMonodromyFactorization& fact, std::size_t i);

/* Product permutation and exponent-sum checks of the full twist. */
void check_full_twist(const BraidMonodromyFactorization& fact);

}  // namespace dualcover
