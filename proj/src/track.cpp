#include "dualcover/track.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>

namespace dualcover {

namespace {
const std::vector<std::string> kST = {"s", "t"};
}

Polynomial pencil_restriction(const PlaneCurve& C, const PencilFrame& frame) {
    Polynomial s = Polynomial::variable("s", kST);
    Polynomial t = Polynomial::variable("t", kST);
    std::vector<Polynomial> subs;
    for (std::size_t i = 0; i < 3; ++i)
        subs.push_back(Polynomial::constant(frame.axis_a[i], kST) +
                       t * Polynomial::constant(frame.axis_b[i], kST) +
                       s * Polynomial::constant(frame.center[i], kST));
    Polynomial f = C.defining.compose(subs);
    if (f.is_zero()) throw precondition_error("pencil_restriction: restriction vanishes");
    auto si = f.var_index("s").value();
    if (f.degree_in(si) != C.degree)
        throw precondition_error("pencil_restriction: center lies on the curve");
    return f.normalized();
}

Polynomial pencil_fiber(const PlaneCurve& C, const PencilFrame& frame, const Rat& t) {
    Polynomial f = pencil_restriction(C, frame);
    Polynomial fib = f.substitute(f.var_index("t").value(), t);
    if (fib.is_zero())
        throw precondition_error("pencil_fiber: identically-zero restriction (line in curve)");
    return fib;
}

BranchData branch_values(const PlaneCurve& C, const PencilFrame& frame) {
    Polynomial f = pencil_restriction(C, frame);
    Polynomial delta = resultant(f, f.derivative(f.var_index("s").value()), "s");
    if (delta.is_zero())
        throw precondition_error("branch_values: discriminant vanishes identically");
    BranchData out;
    out.delta = delta.normalized();
    for (const auto& [p, m] : squarefree_decomposition(out.delta)) {
        if (p.is_constant()) continue;
        for (const auto& cr : certified_roots(p, frame.seed)) out.points.push_back({cr, m});
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const BranchPoint& a, const BranchPoint& b) {
                  if (a.value.value.real() != b.value.value.real())
                      return a.value.value.real() < b.value.value.real();
                  return a.value.value.imag() < b.value.value.imag();
              });
    return out;
}

/* ------------------------------ loop system ----------------------------- */

bool PathSpec::closed() const {
    return vertices.size() >= 2 && std::abs(vertices.front() - vertices.back()) == 0.0;
}

PathSpec reversed(const PathSpec& p) {
    PathSpec r = p;
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

PathSpec LoopSystem::petal(std::size_t k) const {
    PathSpec out = stems[k];
    out.vertices.insert(out.vertices.end(), circles[k].vertices.begin() + 1,
                        circles[k].vertices.end());
    PathSpec back = reversed(stems[k]);
    out.vertices.insert(out.vertices.end(), back.vertices.begin() + 1, back.vertices.end());
    return out;
}

PathSpec LoopSystem::composite() const {
    PathSpec out;
    out.vertices.push_back(base);
    for (std::size_t k = 0; k < stems.size(); ++k) {
        PathSpec p = petal(k);
        out.vertices.insert(out.vertices.end(), p.vertices.begin() + 1, p.vertices.end());
    }
    return out;
}

namespace {

double dist_point_segment(std::complex<double> p, std::complex<double> a,
                          std::complex<double> b) {
    std::complex<double> ab = b - a;
    double L2 = std::norm(ab);
    if (L2 == 0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double winding_number(const PathSpec& path, std::complex<double> z) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        std::complex<double> a = path.vertices[i] - z, b = path.vertices[i + 1] - z;
        total += std::arg(b / a);
    }
    return total / (2 * M_PI);
}

}  // namespace

namespace {

/* Shared fan construction: stems run base -> hub -> (detoured ray) ->
 * circle entry; petal order supplied by the caller. */
LoopSystem build_fan_system(const std::vector<std::complex<double>>& targets,
                            const std::vector<std::complex<double>>& obstacles,
                            std::complex<double> basepoint, std::complex<double> hub,
                            const std::vector<std::size_t>& order) {
    std::vector<std::complex<double>> all = targets;
    all.insert(all.end(), obstacles.begin(), obstacles.end());
    double scale = 1e-300;
    for (auto& z : all) scale = std::max(scale, std::abs(z - basepoint));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (std::abs(all[i] - all[j]) < 1e-12 * scale)
                throw precondition_error("loop_system: coincident branch values");
    for (auto& z : all)
        if (std::abs(z - basepoint) < 1e-9 * scale || std::abs(z - hub) < 1e-9 * scale)
            throw precondition_error("loop_system: basepoint on a branch value");

    auto clearance = [&](std::complex<double> z) {
        double d = std::min(std::abs(z - basepoint), std::abs(z - hub));
        for (auto& q : all)
            if (std::abs(q - z) > 0) d = std::min(d, std::abs(q - z));
        return d;
    };
    bool lifted = std::abs(hub - basepoint) > 0;
    if (lifted)
        for (auto& q : all)
            if (dist_point_segment(q, basepoint, hub) < 0.30 * clearance(q))
                throw certification_error("loop_system: lift to the hub is blocked");

    LoopSystem sys;
    sys.base = basepoint;
    sys.hub = hub;
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::size_t i = order[k];
        std::complex<double> z = targets[i];
        double r = 0.25 * clearance(z);
        if (r <= 0) throw certification_error("loop_system: no clearance around a target");
        std::complex<double> dir = (hub - z) / std::abs(hub - z);
        std::complex<double> entry = z + r * dir;
        /* Stem routing: straight ray from the hub, pushed out of other
         * points' protective disks where needed. Detours never touch the
         * shared lift segment. */
        PathSpec stem;
        if (lifted)
            stem.vertices = {basepoint, hub, entry};
        else
            stem.vertices = {basepoint, entry};
        const std::size_t fan_start = lifted ? 1 : 0;
        for (int rounds = 0; rounds < 64; ++rounds) {
            double worst = 0;
            std::size_t at = fan_start;
            std::complex<double> bad = 0;
            for (auto& q : all) {
                if (std::abs(q - z) == 0.0) continue;
                double guard = 0.30 * clearance(q);
                for (std::size_t sgi = fan_start; sgi + 1 < stem.vertices.size(); ++sgi) {
                    double dqs =
                        dist_point_segment(q, stem.vertices[sgi], stem.vertices[sgi + 1]);
                    if (guard - dqs > worst) {
                        worst = guard - dqs;
                        at = sgi;
                        bad = q;
                    }
                }
            }
            if (worst <= 0) break;
            if (rounds == 63)
                throw certification_error("loop_system: stem blocked by another branch value");
            std::complex<double> a = stem.vertices[at], b = stem.vertices[at + 1];
            std::complex<double> ab = b - a;
            /* Bulge the path around the blocker on the side the straight
             * segment already passes (minimal deformation keeps the arc
             * system ordered). When the blocker sits numerically on the
             * segment the side is meaningless; then a fixed choice keeps
             * parallel stems consistent with each other. */
            double sd = (std::conj(ab) * (bad - a)).imag();  // >0: blocker left of travel
            double cl = clearance(bad);
            int side = std::abs(sd) > 1e-9 * std::abs(ab) * cl ? (sd > 0 ? 1 : -1) : 1;
            std::complex<double> away = std::complex<double>(0, -side) * ab / std::abs(ab);
            std::complex<double> detour = bad + away * (0.42 * cl);
            stem.vertices.insert(stem.vertices.begin() + static_cast<long>(at) + 1, detour);
        }
        PathSpec circle;
        const int nseg = 24;
        double phase0 = std::arg(entry - z);
        for (int a = 0; a <= nseg; ++a)
            circle.vertices.push_back(z + std::polar(r, phase0 + 2 * M_PI * a / nseg));
        circle.vertices.back() = entry;  // close exactly
        sys.targets.push_back(z);
        sys.radii.push_back(r);
        sys.source_index.push_back(i);
        sys.stems.push_back(std::move(stem));
        sys.circles.push_back(std::move(circle));
    }
    for (std::size_t k = 0; k < sys.targets.size(); ++k) {
        PathSpec p = sys.petal(k);
        for (std::size_t j = 0; j < sys.targets.size(); ++j) {
            double w = winding_number(p, sys.targets[j]);
            double expect = (j == k) ? 1.0 : 0.0;
            if (std::abs(w - expect) > 0.25)
                throw integrity_error("loop_system: winding number check failed");
        }
        for (auto& q : obstacles)
            if (std::abs(winding_number(p, q)) > 0.25)
                throw integrity_error("loop_system: petal winds around an obstacle");
    }
    /* The petals must form an ordered geometric basis: stems may only meet
     * at the basepoint/hub, and no stem may cut another petal's circle. */
    auto segs_cross = [](std::complex<double> a, std::complex<double> b, std::complex<double> c,
                         std::complex<double> d) {
        auto cross = [](std::complex<double> u, std::complex<double> v) {
            return u.real() * v.imag() - u.imag() * v.real();
        };
        double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
        double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
    };
    const std::size_t fan_start = lifted ? 1 : 0;
    for (std::size_t k = 0; k < sys.stems.size(); ++k)
        for (std::size_t j = k + 1; j < sys.stems.size(); ++j) {
            const auto& A = sys.stems[k].vertices;
            const auto& B = sys.stems[j].vertices;
            for (std::size_t ia = fan_start; ia + 1 < A.size(); ++ia)
                for (std::size_t ib = fan_start; ib + 1 < B.size(); ++ib)
                    if (segs_cross(A[ia], A[ia + 1], B[ib], B[ib + 1]))
                        throw certification_error("loop_system: stems cross");
        }
    for (std::size_t k = 0; k < sys.stems.size(); ++k)
        for (std::size_t j = 0; j < sys.targets.size(); ++j) {
            if (j == k) continue;
            const auto& A = sys.stems[k].vertices;
            for (std::size_t ia = 0; ia + 1 < A.size(); ++ia)
                if (dist_point_segment(sys.targets[j], A[ia], A[ia + 1]) < sys.radii[j])
                    throw certification_error("loop_system: stem cuts another circle");
        }
    return sys;
}

}  // namespace

LoopSystem loop_system(const std::vector<std::complex<double>>& targets,
                       std::complex<double> basepoint, std::uint64_t seed,
                       const std::vector<std::complex<double>>& obstacles) {
    if (targets.empty()) throw precondition_error("loop_system: no targets");
    std::vector<std::complex<double>> all = targets;
    all.insert(all.end(), obstacles.begin(), obstacles.end());
    /* The hub sits above the configuration. Real curves put many branch
     * values on the real axis, collinear with any rational basepoint;
     * viewed from the hub they separate cleanly. The shared lift segment
     * conjugates all petals alike, leaving products and full-twist
     * invariants unchanged. */
    double scale = 1e-300;
    for (auto& z : all) scale = std::max(scale, std::abs(z - basepoint));
    double im_hi = basepoint.imag(), re_lo = basepoint.real(), re_hi = basepoint.real();
    for (auto& z : all) {
        im_hi = std::max(im_hi, z.imag());
        re_lo = std::min(re_lo, z.real());
        re_hi = std::max(re_hi, z.real());
    }
    double diam = std::max({re_hi - re_lo, im_hi - basepoint.imag(), scale * 0.2, 1e-12});
    Rng hubrng(seed ^ 0x48b1ULL);
    std::uniform_real_distribution<double> hub_jit(-0.15, 0.15);
    std::complex<double> hub(basepoint.real() + hub_jit(hubrng) * diam,
                             im_hi + (0.9 + 0.2 * hub_jit(hubrng)) * diam);
    std::vector<std::size_t> order(targets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double pa = std::arg(targets[a] - hub), pb = std::arg(targets[b] - hub);
        if (pa != pb) return pa < pb;
        return std::abs(targets[a] - hub) < std::abs(targets[b] - hub);
    });
    return build_fan_system(targets, obstacles, basepoint, hub, order);
}

LoopSystem lasso_system(const std::vector<std::complex<double>>& targets, double proj_angle,
                        std::uint64_t seed,
                        const std::vector<std::complex<double>>& obstacles) {
    if (targets.empty()) throw precondition_error("lasso_system: no targets");
    std::complex<double> rot = std::polar(1.0, -proj_angle);
    std::complex<double> unrot = std::polar(1.0, proj_angle);
    std::vector<std::complex<double>> wt, wo;
    for (auto& z : targets) wt.push_back(z * rot);
    for (auto& z : obstacles) wo.push_back(z * rot);
    std::vector<std::complex<double>> all = wt;
    all.insert(all.end(), wo.begin(), wo.end());
    double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
    for (auto& z : all) {
        re_lo = std::min(re_lo, z.real());
        re_hi = std::max(re_hi, z.real());
        im_lo = std::min(im_lo, z.imag());
        im_hi = std::max(im_hi, z.imag());
    }
    double diam = std::max({re_hi - re_lo, im_hi - im_lo, 1e-12});
    Rng rng(seed ^ 0x1a50ULL);
    std::uniform_real_distribution<double> jit(-0.2, 0.2);
    std::complex<double> base_w(0.5 * (re_lo + re_hi) + jit(rng) * diam,
                                im_lo - (0.9 + 0.2 * jit(rng)) * diam);
    // strand-position order: ascending projection, matching braid indices
    std::vector<std::size_t> order(wt.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (wt[a].real() != wt[b].real()) return wt[a].real() < wt[b].real();
        return wt[a].imag() < wt[b].imag();
    });
    LoopSystem sys = build_fan_system(wt, wo, base_w, base_w, order);
    // rotate back to the original frame
    auto unrotate = [&](PathSpec& p) {
        for (auto& v : p.vertices) v *= unrot;
    };
    sys.base *= unrot;
    sys.hub *= unrot;
    for (auto& t : sys.targets) t *= unrot;
    for (auto& st : sys.stems) unrotate(st);
    for (auto& c : sys.circles) unrotate(c);
    return sys;
}

std::vector<std::complex<double>> fiber_roots_at(const Polynomial& restriction,
                                                 std::complex<double> t, std::uint64_t seed) {
    auto si = restriction.var_index("s").value();
    auto ti = restriction.var_index("t").value();
    auto cs = restriction.coeffs_in(si);
    std::vector<std::complex<double>> coeffs;
    std::vector<std::vector<CDD>> tpoly;
    long bits = restriction.max_coeff_log2();
    long shift = bits > 400 ? bits : 0;
    for (auto& c : cs) {
        int td = std::max(c.degree_in(ti), 0);
        std::vector<CDD> cc(static_cast<std::size_t>(td) + 1);
        for (const auto& [mo, q] : c.terms()) {
            Rat scaled = q;
            if (shift > 0) {
                mpq_class r;
                mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(shift));
                scaled = r;
            }
            cc[mo[ti]] = CDD{dd_from_rat(scaled), DD(0.0)};
        }
        tpoly.push_back(std::move(cc));
    }
    std::vector<CDD> exact;
    CDD tc{t};
    for (auto& cc : tpoly) {
        CDD acc;
        for (auto it = cc.rbegin(); it != cc.rend(); ++it)
            acc = cdd_add(cdd_mul(acc, tc), *it);
        exact.push_back(acc);
        coeffs.push_back(acc.to_complex());
    }
    auto roots = aberth_roots(coeffs, seed);
    auto dpoly = poly_derivative(exact);
    const double n = static_cast<double>(roots.size());
    std::vector<double> radii;
    for (auto& z : roots) {
        z = dd_newton_polish(exact, z, 3);
        double adp = cdd_abs(poly_eval(dpoly, CDD(z)));
        if (adp == 0) throw certification_error("fiber_roots_at: derivative vanished");
        double rad = n * cdd_abs(poly_eval(exact, CDD(z))) / adp * (1 + 1e-10) + 1e-306;
        if (!std::isfinite(rad) || !std::isfinite(std::abs(z)))
            throw certification_error("fiber_roots_at: overflow");
        radii.push_back(rad);
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!(std::abs(roots[i] - roots[j]) > radii[i] + radii[j]))
                throw certification_error("fiber_roots_at: isolation disks overlap");
    return roots;
}

/* ----------------------------- frame search ----------------------------- */

PencilFrame make_frame(const PlaneCurve& C, std::uint64_t seed, int max_attempts,
                       std::optional<std::array<int, 3>> expect_mults) {
    Rng rng(seed ^ 0xf4a3e);
    std::uniform_int_distribution<long> d(-9, 9);
    const int m = C.degree;
    std::string last = "no attempt";
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        PencilFrame fr;
        fr.seed = seed;
        auto rnd3 = [&] {
            std::array<Rat, 3> v;
            do {
                for (auto& e : v) e = Rat(d(rng));
            } while (v[0] == 0 && v[1] == 0 && v[2] == 0);
            return v;
        };
        fr.center = rnd3();
        fr.axis_a = rnd3();
        fr.axis_b = rnd3();
        Rat det = fr.center[0] * (fr.axis_a[1] * fr.axis_b[2] - fr.axis_a[2] * fr.axis_b[1]) -
                  fr.center[1] * (fr.axis_a[0] * fr.axis_b[2] - fr.axis_a[2] * fr.axis_b[0]) +
                  fr.center[2] * (fr.axis_a[0] * fr.axis_b[1] - fr.axis_a[1] * fr.axis_b[0]);
        if (det == 0) {
            last = "degenerate axis";
            continue;
        }
        std::vector<Rat> cpt(fr.center.begin(), fr.center.end());
        if (C.defining.eval(cpt) == 0) {
            last = "center on curve";
            continue;
        }
        BranchData bd;
        try {
            bd = branch_values(C, fr);
        } catch (const error&) {
            last = "branch certification failed";
            continue;
        }
        if (bd.delta.degree_in("t") != m * (m - 1)) {
            last = "discriminant degree drop";
            continue;
        }
        std::array<int, 3> census = {0, 0, 0};
        bool mult_ok = true;
        for (const auto& bp : bd.points) {
            if (bp.multiplicity > 3) mult_ok = false;
            if (bp.multiplicity >= 1 && bp.multiplicity <= 3)
                ++census[static_cast<std::size_t>(bp.multiplicity - 1)];
        }
        if (!mult_ok) {
            last = "multiplicity above 3 (special frame)";
            continue;
        }
        if (expect_mults && *expect_mults != census) {
            last = "branch multiplicity census mismatch (special frame)";
            continue;
        }
        double lo = 1e300, vspread = 0, hi = -1e300;
        for (const auto& bp : bd.points) {
            lo = std::min(lo, bp.value.value.real());
            hi = std::max(hi, bp.value.value.real());
            vspread = std::max(vspread, std::abs(bp.value.value.imag()));
        }
        double spread = std::max({hi - lo, vspread, 1.0});
        std::uniform_int_distribution<long> jig(0, 6);
        bool found = false;
        const double offsets[] = {0.43, 0.9, 1.7, 3.1};
        for (int bt = 0; bt < 16 && !found; ++bt) {
            double off = offsets[bt % 4];
            Rat cand(static_cast<long>(std::floor(lo - off * spread)) * 8 - jig(rng), 8);
            cand.canonicalize();
            std::vector<std::complex<double>> tv;
            for (const auto& bp : bd.points) tv.push_back(bp.value.value);
            try {
                loop_system(tv, std::complex<double>(to_double(cand), 0.0), seed);
            } catch (const error&) {
                continue;
            }
            fr.basepoint = cand;
            found = true;
        }
        if (!found) {
            last = "no clear basepoint";
            continue;
        }
        return fr;
    }
    throw certification_error("make_frame: " + last + " after " + std::to_string(max_attempts) +
                              " attempts");
}

/* ------------------------------- tracking ------------------------------- */

namespace {

struct FiberFamily {
    int sdeg = 0;
    long shift = 0;
    std::vector<std::vector<double>> cd;   // per s-power: t-poly coefficients
    std::vector<std::vector<DD>> cdd2;

    explicit FiberFamily(const Polynomial& f0) {
        Polynomial f = f0.normalized();
        auto si = f.var_index("s").value();
        auto ti = f.var_index("t").value();
        sdeg = f.degree_in(si);
        long bits = f.max_coeff_log2();
        shift = bits > 400 ? bits : 0;
        cd.resize(static_cast<std::size_t>(sdeg) + 1);
        cdd2.resize(static_cast<std::size_t>(sdeg) + 1);
        auto cs = f.coeffs_in(si);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            int td = std::max(cs[i].degree_in(ti), 0);
            cd[i].assign(static_cast<std::size_t>(td) + 1, 0.0);
            cdd2[i].assign(static_cast<std::size_t>(td) + 1, DD(0.0));
            for (const auto& [mo, c] : cs[i].terms()) {
                Rat scaled = c;
                if (shift > 0) {
                    mpq_class r;
                    mpq_div_2exp(r.get_mpq_t(), c.get_mpq_t(), static_cast<unsigned long>(shift));
                    scaled = r;
                }
                DD v = dd_from_rat(scaled);
                cd[i][mo[ti]] = v.to_double();
                cdd2[i][mo[ti]] = v;
            }
        }
    }

    std::vector<std::complex<double>> coeffs_at(std::complex<double> t) const {
        std::vector<std::complex<double>> out(cd.size());
        for (std::size_t i = 0; i < cd.size(); ++i) {
            std::complex<double> acc = 0;
            for (auto it = cd[i].rbegin(); it != cd[i].rend(); ++it) acc = acc * t + *it;
            out[i] = acc;
        }
        return out;
    }

    std::vector<CDD> coeffs_at_dd(std::complex<double> t) const {
        CDD tc{t};
        std::vector<CDD> out(cdd2.size());
        for (std::size_t i = 0; i < cdd2.size(); ++i) {
            CDD acc;
            for (auto it = cdd2[i].rbegin(); it != cdd2[i].rend(); ++it)
                acc = cdd_add(cdd_mul(acc, tc), CDD{*it, DD(0.0)});
            out[i] = acc;
        }
        return out;
    }

    double coeff_scale(std::complex<double> t, double root_mag) const {
        double at = std::max(std::abs(t), 1.0), acc = 1e-300;
        double sm = std::max(root_mag, 1.0);
        double spow = 1;
        for (std::size_t i = 0; i < cd.size(); ++i) {
            double ci = 0, tp = 1;
            for (double cij : cd[i]) {
                ci += std::abs(cij) * tp;
                tp *= at;
            }
            acc += ci * spow;
            spow *= sm;
        }
        return acc;
    }
};

struct OrderState {
    std::vector<int> order;  // order[p] = strand at position p
    std::vector<int> pos;    // pos[strand] = position
};

OrderState compute_order(const std::vector<std::complex<double>>& roots, double phi,
                         double ambiguity, bool* ambiguous) {
    std::size_t n = roots.size();
    std::vector<std::pair<std::pair<double, double>, int>> keys(n);
    std::complex<double> rot = std::polar(1.0, -phi);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> w = roots[i] * rot;
        keys[i] = {{w.real(), w.imag()}, static_cast<int>(i)};
    }
    std::sort(keys.begin(), keys.end());
    if (ambiguous) {
        *ambiguous = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            if (std::abs(keys[p + 1].first.first - keys[p].first.first) < ambiguity)
                *ambiguous = true;
    }
    OrderState st;
    st.order.resize(n);
    st.pos.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        st.order[p] = keys[p].second;
        st.pos[static_cast<std::size_t>(keys[p].second)] = static_cast<int>(p);
    }
    return st;
}

double min_separation(const std::vector<std::complex<double>>& roots) {
    double m = 1e300;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            m = std::min(m, std::abs(roots[i] - roots[j]));
    return m;
}

}  // namespace

double position_key(std::complex<double> z, double proj_angle) {
    return (z * std::polar(1.0, -proj_angle)).real();
}

std::vector<std::complex<double>> basepoint_fiber_roots(const PlaneCurve& C,
                                                        const PencilFrame& frame,
                                                        double proj_angle) {
    Polynomial fib = pencil_fiber(C, frame, frame.basepoint);
    auto certified = certified_roots(fib, frame.seed);
    std::vector<std::complex<double>> roots;
    for (const auto& cr : certified) roots.push_back(cr.value);
    std::complex<double> rot = std::polar(1.0, -proj_angle);
    std::sort(roots.begin(), roots.end(), [&](std::complex<double> a, std::complex<double> b) {
        std::complex<double> wa = a * rot, wb = b * rot;
        if (wa.real() != wb.real()) return wa.real() < wb.real();
        return wa.imag() < wb.imag();
    });
    return roots;
}

TrackedStrands track_path(const Polynomial& restriction, const PathSpec& path,
                          const std::vector<std::complex<double>>& start_roots,
                          const TrackOptions& opts) {
    if (path.vertices.size() < 2) throw precondition_error("track_path: empty path");
    FiberFamily fam(restriction);
    const std::size_t n = start_roots.size();
    if (static_cast<int>(n) != fam.sdeg)
        throw precondition_error("track_path: wrong number of start roots");

    TrackedStrands out;
    out.start = start_roots;
    std::vector<std::complex<double>> roots = start_roots;

    auto corrector = [&](std::complex<double> t, std::vector<std::complex<double>>& r,
                         bool dd_pass) -> bool {
        auto coeffs = fam.coeffs_at(t);
        try {
            auto refined = aberth_roots(coeffs, 0, &r, 120);
            if (refined.size() != n) return false;
            r = refined;
        } catch (const certification_error&) {
            return false;
        }
        if (dd_pass) {
            auto cdds = fam.coeffs_at_dd(t);
            for (auto& z : r) z = dd_newton_polish(cdds, z, 2);
        }
        double rootmag = 0;
        for (auto& z : r) rootmag = std::max(rootmag, std::abs(z));
        double scale = fam.coeff_scale(t, rootmag);
        for (auto& z : r)
            if (std::abs(poly_eval(coeffs, z)) > opts.corrector_tol * scale) return false;
        return true;
    };

    auto radii_ok = [&](std::complex<double> t, const std::vector<std::complex<double>>& r,
                        bool* escalated) -> bool {
        auto coeffs = fam.coeffs_at(t);
        auto dcoeffs = poly_derivative(coeffs);
        double minsep = min_separation(r);
        double worst = 0;
        for (auto& z : r) {
            double dp = std::abs(poly_eval(dcoeffs, z));
            if (dp == 0) return false;
            worst = std::max(worst, double(n) * std::abs(poly_eval(coeffs, z)) / dp);
        }
        if (minsep > 2 * worst) return true;
        if (escalated) *escalated = true;
        auto cdds = fam.coeffs_at_dd(t);
        auto ddd = poly_derivative(cdds);
        worst = 0;
        for (auto& z : r) {
            CDD p = poly_eval(cdds, CDD(z));
            CDD dp = poly_eval(ddd, CDD(z));
            double adp = cdd_abs(dp);
            if (adp == 0) return false;
            worst = std::max(worst, double(n) * cdd_abs(p) / adp);
        }
        return minsep > 2 * worst;
    };

    OrderState order = compute_order(roots, opts.proj_angle, 0.0, nullptr);
    const std::vector<int> initial_pos = order.pos;  // strands need not start sorted

    const std::size_t nseg = path.vertices.size() - 1;
    double h = opts.step_init;
    int accept_streak = 0;
    std::size_t steps = 0;

    for (std::size_t seg = 0; seg < nseg; ++seg) {
        std::complex<double> a = path.vertices[seg], b = path.vertices[seg + 1];
        if (std::abs(b - a) == 0.0) continue;
        double tau = 0.0;
        while (tau < 1.0) {
            if (++steps > static_cast<std::size_t>(opts.max_steps))
                throw certification_error("track_path: step budget exceeded");
            double hh = std::min(h, 1.0 - tau);
            std::complex<double> t0 = a + tau * (b - a);
            std::complex<double> t1 = a + (tau + hh) * (b - a);
            auto c0 = fam.coeffs_at(t0);
            auto dc0 = poly_derivative(c0);
            auto c1 = fam.coeffs_at(t1);
            std::vector<std::complex<double>> pred = roots;
            double minsep = min_separation(roots);
            bool bad = false;
            double maxmove = 0;
            for (std::size_t i = 0; i < n && !bad; ++i) {
                std::complex<double> fs = poly_eval(dc0, roots[i]);
                if (std::abs(fs) == 0.0) {
                    bad = true;
                    break;
                }
                // f(s, t1) - f(s, t0) at frozen s is the first-order parameter move
                std::complex<double> df = poly_eval(c1, roots[i]) - poly_eval(c0, roots[i]);
                std::complex<double> move = -df / fs;
                maxmove = std::max(maxmove, std::abs(move));
                pred[i] = roots[i] + move;
            }
            auto reject = [&](const char* why) {
                h = hh / 2;
                if (h < opts.step_min) throw certification_error(std::string("track_path: ") + why);
                accept_streak = 0;
            };
            if (bad || maxmove > 0.25 * minsep) {
                reject("step underflow (clearance too small)");
                continue;
            }
            std::vector<std::complex<double>> next = pred;
            bool esc = false;
            if (!corrector(t1, next, false) || !radii_ok(t1, next, &esc)) {
                next = pred;
                bool ok = corrector(t1, next, true) && radii_ok(t1, next, &esc);
                if (!ok) {
                    reject("separation certificate failed at minimum step");
                    continue;
                }
                out.dd_escalations += 1;
            } else if (esc) {
                out.dd_escalations += 1;
            }
            bool jumped = false;
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(next[i] - roots[i]) > 0.45 * minsep) jumped = true;
            if (jumped) {
                reject("corrector left the root basin");
                continue;
            }
            double rootmag = 0;
            for (auto& z : next) rootmag = std::max(rootmag, std::abs(z));
            bool ambiguous = false;
            OrderState norder =
                compute_order(next, opts.proj_angle, 1e-11 * (1.0 + rootmag), &ambiguous);
            int swap_at = -1;
            bool order_bad = false;
            for (std::size_t p = 0; p < n; ++p) {
                if (norder.order[p] == order.order[p]) continue;
                if (swap_at < 0 && p + 1 < n && norder.order[p] == order.order[p + 1] &&
                    norder.order[p + 1] == order.order[p]) {
                    swap_at = static_cast<int>(p);
                    ++p;
                    continue;
                }
                order_bad = true;
                break;
            }
            if (order_bad || (swap_at >= 0 && ambiguous)) {
                reject("unresolved simultaneous crossing");
                continue;
            }
            if (swap_at >= 0) {
                int u = order.order[static_cast<std::size_t>(swap_at)];
                int v = order.order[static_cast<std::size_t>(swap_at) + 1];
                std::complex<double> before =
                    roots[static_cast<std::size_t>(v)] - roots[static_cast<std::size_t>(u)];
                std::complex<double> after =
                    next[static_cast<std::size_t>(v)] - next[static_cast<std::size_t>(u)];
                double rot = (std::conj(before) * after).imag();
                if (std::abs(rot) < 1e-20 * std::norm(before)) {
                    reject("degenerate crossing orientation");
                    continue;
                }
                out.crossings.push_back(
                    {static_cast<double>(seg) + tau + hh, swap_at, rot > 0 ? 1 : -1});
            }
            roots = next;
            order = norder;
            tau += hh;
            out.accepted_steps += 1;
            if (opts.record_timeline)
                out.timeline.push_back({static_cast<double>(seg) + tau, roots});
            if (++accept_streak >= 4) {
                h = std::min(h * 2, 0.25);
                accept_streak = 0;
            }
        }
    }

    out.end = roots;
    out.end_positions = Perm(order.pos);
    Perm check(n);
    for (const auto& c : out.crossings) {
        std::vector<int> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<int>(i);
        std::swap(img[static_cast<std::size_t>(c.pos)], img[static_cast<std::size_t>(c.pos) + 1]);
        check = check * Perm(img);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (check(initial_pos[i]) != out.end_positions(static_cast<int>(i))) {
            if (std::getenv("DUALCOVER_DEBUG")) {
                std::cerr << "[track] inconsistency: crossings:";
                for (auto& c : out.crossings) std::cerr << " " << (c.sign > 0 ? "+" : "-") << c.pos;
                std::cerr << "\n check:";
                for (std::size_t q = 0; q < n; ++q) std::cerr << " " << check(static_cast<int>(q));
                std::cerr << "\n end_pos:";
                for (std::size_t q = 0; q < n; ++q)
                    std::cerr << " " << out.end_positions(static_cast<int>(q));
                std::cerr << "\n";
            }
            throw integrity_error("track_path: crossing record inconsistent with final order");
        }
    return out;
}

TrackedStrands track_loop(const PlaneCurve& C, const PencilFrame& frame, const PathSpec& loop,
                          const TrackOptions& opts) {
    auto roots = basepoint_fiber_roots(C, frame, opts.proj_angle);
    std::complex<double> base(to_double(frame.basepoint), 0.0);
    if (std::abs(loop.vertices.front() - base) > 1e-9 * (1.0 + std::abs(base)))
        throw precondition_error("track_loop: loop must start at the frame basepoint");
    Polynomial f = pencil_restriction(C, frame);
    TrackedStrands ts = track_path(f, loop, roots, opts);
    if (loop.closed()) {
        double minsep = min_separation(roots);
        for (std::size_t i = 0; i < ts.end.size(); ++i) {
            int p = ts.end_positions(static_cast<int>(i));
            if (std::abs(ts.end[i] - roots[static_cast<std::size_t>(p)]) > 0.3 * minsep)
                throw integrity_error("track_loop: final configuration drifted from start");
        }
    }
    return ts;
}

}  // namespace dualcover
