#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualcover/braid.hpp"
#include "dualcover/perm.hpp"

namespace dualcover {

/* Permutation representation of the free meridian generators x_1..x_m of
 * the punctured line, one image per puncture in strand-position order. */
struct MonodromyRep {
    int sheets = 0;
    std::vector<Perm> images;

    bool product_is_identity() const;
    bool simply_ramified() const;  // every image a transposition
    bool transitive() const;
    void validate() const;  // throws precondition_error on invariant breaks

    /* lex-least tuple of image vectors over simultaneous conjugation */
    MonodromyRep canonical() const;
    bool operator==(const MonodromyRep& o) const {
        return sheets == o.sheets && images == o.images;
    }
    bool operator<(const MonodromyRep& o) const;
};

/* Zariski-van Kampen extension test: the representation extends to the
 * complement of the curve in the plane iff every braid factor fixes every
 * meridian image. */
bool check_extension(const MonodromyRep& rep, const BraidMonodromyFactorization& fact);

/* The two local meridian words at a node/cusp factor: the accumulated stem
 * braid applied to the adjacent generators at the collision position. */
std::pair<FreeWord, FreeWord> local_meridian_pair(const BraidMonodromyFactorization& fact,
                                                  std::size_t i);

Perm evaluate_word(const FreeWord& w, const MonodromyRep& rep);

enum class PointClass { Good, Bad };

/* Good/bad classification of a node or cusp factor under a rep that passes
 * check_extension: node - disjoint transpositions good, equal bad; cusp -
 * non-commuting good, equal bad. Any other configuration is an integrity
 * error (impossible for a generic covering). */
PointClass classify_branch_point(const MonodromyRep& rep,
                                 const BraidMonodromyFactorization& fact, std::size_t i);

/* Everything needed to compare covers of the line over the branch locus
 * p-perp cap C*: the dual curve's braid factorization plus the matched
 * source projection data. The fiber line of the dual pencil at its
 * basepoint is exactly p-perp for the exact rational point p below. */
struct CoverContext {
    PlaneCurve C;      // source curve
    PlaneCurve Cstar;  // its dual (the branch curve)
    std::vector<SingularPoint> dual_sings;
    BraidMonodromyFactorization fact;
    std::array<Rat, 3> projection_point;       // p, not on C
    PencilFrame source_frame;                  // source pencil through p
    std::vector<std::complex<double>> node_obstacles;  // node-line parameters
    LoopSystem meridians;                      // lassos around the punctures
    int source_degree = 0;
    int source_nodes = 0;
    bool genericity = false;
};

CoverContext make_cover_context(const PlaneCurve& C, std::uint64_t seed);

/* Fiber monodromy of the projection of C from the context's point p,
 * evaluated on the same meridian basis the factorization uses. */
MonodromyRep projection_monodromy(const CoverContext& ctx);

enum class Outcome { NotExtendable, ExtendsSingularTotalSpace, EquivalentToProjection,
                     ExcludedCase };
std::string outcome_name(Outcome o);

struct BranchPointReport {
    std::size_t factor_index;
    std::complex<double> branch_value;
    LocalKind kind;
    PointClass cls;
};

struct ExtendabilityVerdict {
    bool factors_through_plane = false;
    std::vector<BranchPointReport> points;  // every node/cusp factor
    Outcome outcome = Outcome::NotExtendable;
    std::vector<std::string> notes;
};

struct VerdictMeta {
    int deg_c = 0;
    int node_count = 0;
    bool genericity = false;
};

/* Decision procedure: refuse broken hypotheses; NotExtendable when the
 * relations fail; the excluded configuration (smooth cubic, four sheets)
 * reported as such; otherwise equivalent-to-projection exactly when every
 * node and cusp is good, else extends with A1/A2 points upstairs. */
ExtendabilityVerdict verdict(const MonodromyRep& rep, const BraidMonodromyFactorization& fact,
                             const VerdictMeta& meta);

struct RepSearchOptions {
    int max_sheets = 6;
    std::uint64_t budget = 80000000;  // backtracking node budget
};

/* All extension-passing simply-ramified transitive identity-product reps
 * on k sheets over the factorization's branch locus, up to simultaneous
 * conjugation, canonical and deterministically ordered. */
std::vector<MonodromyRep> rep_search(const BraidMonodromyFactorization& fact, int sheets,
                                     const RepSearchOptions& opts = {});

/* JSON-free serialization helpers (cycle notation) */
std::string rep_to_text(const MonodromyRep& rep);

}  // namespace dualcover
