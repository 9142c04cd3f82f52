#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dualcover/poly.hpp"

namespace dualcover {

extern const std::vector<std::string> kSourceVars;  // x, y, z
extern const std::vector<std::string> kDualVars;    // u, v, w

enum class Plane { source, dual };
enum class SingKind { Node, Cusp, Other };

std::string sing_kind_name(SingKind k);  // "node", "cusp", "other"

struct PlaneCurve {
    Polynomial defining;  // homogeneous, squarefree, in the plane's variables
    int degree = 0;
    Plane plane = Plane::source;

    /* Validates homogeneity and degree >= 1, and certifies squarefreeness
     * by restriction to random lines (exact). */
    static PlaneCurve make(Polynomial F, Plane plane);
    const std::vector<std::string>& plane_vars() const;
};

struct ProjPoint {
    /* Homogeneous coordinates scaled so the largest-|.| entry is 1. */
    std::array<std::complex<double>, 3> h;
    std::optional<std::array<Rat, 3>> exact;  // set when confirmed exactly
    bool is_exact() const { return exact.has_value(); }
};

struct SingularPoint {
    ProjPoint location;
    SingKind kind = SingKind::Other;
    double certificate = 0;  // isolation radius; 0 for exact points
    int jet_rank = -1;       // rank of the quadratic 2-jet (0, 1, 2)
    int system_multiplicity = 0;  // multiplicity in the eliminant (diagnostic)
    std::string note;             // genericity witness data for Other kinds
};

struct SolveOptions {
    double residual_tol = 1e-10;  // relative residual acceptance
    double jet_tol = 1e-8;        // 2-jet rank threshold relative to jet norm
    int max_attempts = 20;        // coordinate-rotation retries
    std::uint64_t seed = 1;
};

struct GenericityReport {
    bool is_irreducible_assumed = true;
    bool all_singularities_nodal = false;
    bool inflexions_simple = false;
    bool no_tritangent = false;
    bool no_flex_bitangent = false;
    bool verdict = false;
    std::vector<SingularPoint> witnesses;  // offending points (on C or C*)
};

struct PluckerCounts {
    int dual_degree = 0;
    int dual_cusps = 0;
    int dual_nodes = 0;
};

/* The reduced dual curve: eliminate the contact point along the pencil of
 * lines (restriction discriminant), remove the chart factor and the
 * leading-coefficient factor, and split off components by multiplicity
 * (tangency locus appears once, lines dual to nodes twice, to cusps three
 * times). */
PlaneCurve dual_curve(const PlaneCurve& C);

bool bidual_check(const PlaneCurve& C);

std::vector<SingularPoint> singular_points(const PlaneCurve& C, const SolveOptions& opts = {});

SingKind classify_singularity(const PlaneCurve& C, const ProjPoint& p,
                              const SolveOptions& opts = {});

GenericityReport genericity_check(const PlaneCurve& C, const SolveOptions& opts = {});

PluckerCounts plucker_expect(int d, int delta);

/* line: coefficients (a, b, c) of a*x + b*y + c*z in the curve's plane. */
bool is_transversal(const PlaneCurve& C, const std::array<Rat, 3>& line);

/* Shared helpers */
Polynomial rename_to(const Polynomial& p, const std::vector<std::string>& names);
bool curve_equal_up_to_scalar(const Polynomial& a, const Polynomial& b);

}  // namespace dualcover
