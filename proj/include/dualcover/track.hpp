#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dualcover/curve.hpp"
#include "dualcover/numeric.hpp"
#include "dualcover/perm.hpp"

namespace dualcover {

/* A pencil of lines through `center`, parameterized by t -> the line
 * spanned by center and (axis_a + t * axis_b). Points of that line are
 * written (axis_a + t*axis_b) + s*center, so the fiber polynomial in s has
 * the constant leading coefficient F(center) != 0: roots never escape. */
struct PencilFrame {
    std::array<Rat, 3> center;
    std::array<Rat, 3> axis_a;
    std::array<Rat, 3> axis_b;
    Rat basepoint;
    std::uint64_t seed = 1;
};

/* Exact restriction of the curve to the pencil: bivariate polynomial in
 * (s, t) with vars {"s","t"}. */
Polynomial pencil_restriction(const PlaneCurve& C, const PencilFrame& frame);

/* Fiber over a rational parameter value; exact univariate in "s". */
Polynomial pencil_fiber(const PlaneCurve& C, const PencilFrame& frame, const Rat& t);

struct BranchPoint {
    CertifiedRoot value;
    int multiplicity;  // 1 = simple tangency, 2 = line through a node, 3 = through a cusp
};

struct BranchData {
    std::vector<BranchPoint> points;  // all distinct discriminant roots
    Polynomial delta;                 // the exact parameter discriminant
};

/* Certified distinct roots of the parameter discriminant, with their
 * multiplicities. Throws when the discriminant vanishes identically or the
 * roots cannot be certified. */
BranchData branch_values(const PlaneCurve& C, const PencilFrame& frame);

/* Deterministic frame search: small random integer center/axes, retried
 * until the discriminant has full degree deg*(deg-1), multiplicities stay
 * in {1,2,3}, and a clear basepoint exists. */
PencilFrame make_frame(const PlaneCurve& C, std::uint64_t seed, int max_attempts = 20,
                       std::optional<std::array<int, 3>> expect_mults = std::nullopt);

/* Piecewise-linear path in the parameter plane (closed when front==back). */
struct PathSpec {
    std::vector<std::complex<double>> vertices;
    bool closed() const;
};
PathSpec reversed(const PathSpec& p);

struct LoopSystem {
    std::complex<double> base;
    std::complex<double> hub;  // all stems run base -> hub -> target circle
    std::vector<std::complex<double>> targets;  // in petal order
    std::vector<double> radii;                  // circle radius per petal
    std::vector<std::size_t> source_index;      // petal k encircles input target source_index[k]
    std::vector<PathSpec> stems;    // base -> circle entry (open)
    std::vector<PathSpec> circles;  // closed, counterclockwise, based at circle entry
    PathSpec petal(std::size_t k) const;        // stem + circle + reverse stem
    PathSpec composite() const;                 // all petals in order
};

/* Non-crossing petal system around `targets`, ordered by angle as seen
 * from the routing hub above the basepoint (ties by radius), avoiding
 * `obstacles`. Deterministic given seed. Throws precondition_error on
 * coincident targets and certification_error when no clear construction
 * exists. */
LoopSystem loop_system(const std::vector<std::complex<double>>& targets,
                       std::complex<double> basepoint, std::uint64_t seed,
                       const std::vector<std::complex<double>>& obstacles = {});

/* Meridian basis in textbook position: basepoint below the configuration
 * in the frame rotated by proj_angle, petals in strand-position order
 * (ascending projection). Petal k is the meridian of targets[k] when the
 * targets come sorted by position, matching braid strand indices. */
LoopSystem lasso_system(const std::vector<std::complex<double>>& targets, double proj_angle,
                        std::uint64_t seed,
                        const std::vector<std::complex<double>>& obstacles = {});

/* Roots of the restriction's fiber over an arbitrary complex parameter,
 * certified by double-double residuals and disjoint isolation disks. */
std::vector<std::complex<double>> fiber_roots_at(const Polynomial& restriction,
                                                 std::complex<double> t, std::uint64_t seed);

struct Crossing {
    double time;  // global path parameter (segment index + local fraction)
    int pos;      // 0-based: strands at positions pos, pos+1 swapped
    int sign;     // +1 counterclockwise exchange, -1 clockwise
};

struct TrackedStrands {
    std::vector<std::complex<double>> start;        // roots at path start, position order
    std::vector<std::complex<double>> end;          // roots at path end (strand order)
    std::vector<Crossing> crossings;                // in time order
    Perm end_positions;                             // strand i ends at position end_positions(i)
    std::vector<std::pair<double, std::vector<std::complex<double>>>> timeline;
    int dd_escalations = 0;
    std::size_t accepted_steps = 0;
};

struct TrackOptions {
    double corrector_tol = 1e-12;   // residual target relative to coefficient norm
    double proj_angle = 0.0;        // strand-order projection direction
    double step_init = 0.1;
    double step_min = 1e-10;
    int max_steps = 2000000;
    bool record_timeline = false;
};

/* Continuation of all fiber roots along a piecewise-linear parameter path.
 * Start roots must be the certified fiber over vertices.front(). Adaptive
 * stepping: halve when the predicted move exceeds a quarter of the minimum
 * root separation, double after four straight accepts; double-double
 * escalation when separation certificates fail in hardware doubles. */
TrackedStrands track_path(const Polynomial& restriction, const PathSpec& path,
                          const std::vector<std::complex<double>>& start_roots,
                          const TrackOptions& opts);

/* Convenience: track a closed loop of the pencil. */
TrackedStrands track_loop(const PlaneCurve& C, const PencilFrame& frame, const PathSpec& loop,
                          const TrackOptions& opts);

/* Certified fiber roots at the frame basepoint, sorted by the projection
 * order used for strand positions. */
std::vector<std::complex<double>> basepoint_fiber_roots(const PlaneCurve& C,
                                                        const PencilFrame& frame,
                                                        double proj_angle);

double position_key(std::complex<double> z, double proj_angle);

}  // namespace dualcover
