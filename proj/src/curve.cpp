#include "dualcover/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>

#include "dualcover/numeric.hpp"

namespace {
bool debug_enabled() {
    static bool on = std::getenv("DUALCOVER_DEBUG") != nullptr;
    return on;
}
}  // namespace

namespace dualcover {

const std::vector<std::string> kSourceVars = {"x", "y", "z"};
const std::vector<std::string> kDualVars = {"u", "v", "w"};

std::string sing_kind_name(SingKind k) {
    switch (k) {
        case SingKind::Node: return "node";
        case SingKind::Cusp: return "cusp";
        default: return "other";
    }
}

Polynomial rename_to(const Polynomial& p, const std::vector<std::string>& names) {
    return p.renamed(names);
}

bool curve_equal_up_to_scalar(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.normalized() == b.normalized();
}

const std::vector<std::string>& PlaneCurve::plane_vars() const {
    return plane == Plane::source ? kSourceVars : kDualVars;
}

namespace {

/* Restrict F to the line spanned by P and Q: binary form in (s0, t0). */
Polynomial restrict_to_line(const Polynomial& F, const std::array<Rat, 3>& P,
                            const std::array<Rat, 3>& Q) {
    std::vector<std::string> st = {"s0", "t0"};
    Polynomial s = Polynomial::variable("s0", st);
    Polynomial t = Polynomial::variable("t0", st);
    std::vector<Polynomial> subs;
    for (std::size_t i = 0; i < 3; ++i)
        subs.push_back(s * Polynomial::constant(P[i], st) + t * Polynomial::constant(Q[i], st));
    return F.compose(subs);
}

/* Exact squarefree certificate: a nonzero restriction to a line is a binary
 * form of full degree, so a squarefree restriction forces F squarefree. */
bool certify_squarefree(const Polynomial& F, std::uint64_t seed) {
    Rng rng(seed ^ 0xabcdef12345ULL);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::array<Rat, 3> P = {Rat(d(rng)), Rat(d(rng)), Rat(d(rng))};
        std::array<Rat, 3> Q = {Rat(d(rng)), Rat(d(rng)), Rat(d(rng))};
        Polynomial r = restrict_to_line(F, P, Q);
        if (r.is_zero() || r.total_degree() != F.total_degree()) continue;
        if (curve_equal_up_to_scalar(squarefree_part(r), r)) return true;
    }
    return false;
}

}  // namespace

PlaneCurve PlaneCurve::make(Polynomial F, Plane plane) {
    const auto& vars = plane == Plane::source ? kSourceVars : kDualVars;
    if (F.vars() != vars) F = F.with_vars(vars);
    if (F.is_zero()) throw precondition_error("curve: zero polynomial");
    if (!F.is_homogeneous()) throw precondition_error("curve: polynomial is not homogeneous");
    int d = F.total_degree();
    if (d < 1) throw precondition_error("curve: degree must be >= 1");
    if (!certify_squarefree(F, 0x5eed))
        throw precondition_error("curve: defining polynomial is not squarefree");
    return PlaneCurve{F.normalized(), d, plane};
}

/* ------------------------------ dual curve ------------------------------ */

namespace {

struct Chart {
    /* Point on the line with dual coordinates (a,b,c) is
     * s * dir(a,b,c) + base(a,b,c); dir/base entries are linear forms. */
    std::array<std::array<int, 3>, 3> dir;
    std::array<std::array<int, 3>, 3> base;
};

/* Four parameterizations; the s-direction leading coefficient F(dir)
 * vanishes identically only when F contains a coordinate line, so at least
 * one chart survives for any supported curve. */
const Chart kCharts[] = {
    // lines with c != 0: point (s*c, c, -(a*s + b))
    {{{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}}, {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}}},
    // same chart, s-direction flipped: (c, s*c, -(a + b*s))
    {{{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}}, {{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}}},
    // lines with a != 0: point (-(b*s + c), s*a, a)
    {{{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}}, {{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}}}},
    // lines with b != 0: point (s*b, -(a*s + c), b)
    {{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}}, {{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}}},
};

Polynomial linear_form(const std::array<int, 3>& row, const std::vector<std::string>& vars4) {
    Polynomial p(vars4);
    for (std::size_t j = 0; j < 3; ++j)
        if (row[j] != 0)
            p += Polynomial::constant(Rat(row[j]), vars4) *
                 Polynomial::variable(vars4[j + 1], vars4);
    return p;
}

}  // namespace

PlaneCurve dual_curve(const PlaneCurve& C) {
    if (C.degree < 2)
        throw precondition_error("dual_curve: a line dualizes to a point, not a curve");
    const Polynomial& F = C.defining;
    const std::vector<std::string> vars4 = {"s0", "da", "db", "dc"};
    const std::vector<std::string> abc = {"da", "db", "dc"};
    const std::vector<std::string>& target = C.plane == Plane::source ? kDualVars : kSourceVars;

    for (const Chart& chart : kCharts) {
        std::vector<Polynomial> coords;
        Polynomial s = Polynomial::variable("s0", vars4);
        for (std::size_t i = 0; i < 3; ++i)
            coords.push_back(s * linear_form(chart.dir[i], vars4) +
                             linear_form(chart.base[i], vars4));
        Polynomial G = F.compose(coords);
        if (G.degree_in("s0") != C.degree) continue;  // chart degenerates for this curve
        Polynomial lc = G.leading_coeff_in(G.var_index("s0").value());
        Polynomial D = resultant(G, G.derivative("s0"), "s0");
        if (D.is_zero())
            throw precondition_error("dual_curve: non-reduced restriction (input not squarefree?)");
        auto D1 = divide_exact(D, lc);
        if (!D1) throw integrity_error("dual_curve: leading coefficient does not divide");
        // strip monomial content: chart artifacts and coordinate-point duals
        Polynomial E = *D1;
        for (std::size_t vi = 1; vi <= 3; ++vi) {
            Polynomial v = Polynomial::variable(vars4[vi], vars4);
            for (;;) {
                auto q = divide_exact(E, v);
                if (!q) break;
                E = *q;
            }
        }
        if (E.is_constant())
            throw precondition_error("dual_curve: elimination degenerates (all factors extraneous)");
        // multiplicity-1 part of the eliminant: the tangency locus; lines
        // dual to nodes enter squared, lines dual to cusps cubed
        auto dec = squarefree_decomposition(E);
        Polynomial P1 = Polynomial::constant(1, vars4);
        for (const auto& [p, m] : dec)
            if (m == 1) P1 = P1 * p;
        if (P1.is_constant())
            throw precondition_error("dual_curve: elimination degenerates (all factors extraneous)");
        Polynomial out3 = P1.with_vars(abc);
        if (!out3.is_homogeneous()) throw integrity_error("dual_curve: eliminant not homogeneous");
        Polynomial named = out3.renamed(target);
        return PlaneCurve::make(named.normalized(),
                                C.plane == Plane::source ? Plane::dual : Plane::source);
    }
    throw precondition_error("dual_curve: curve contains all coordinate lines (unsupported)");
}

bool bidual_check(const PlaneCurve& C) {
    if (C.degree < 2) throw precondition_error("bidual_check: degree >= 2 required");
    PlaneCurve Cd = dual_curve(C);
    PlaneCurve Cdd = dual_curve(Cd);
    return curve_equal_up_to_scalar(Cdd.defining, C.defining);
}

/* --------------------------- singular points ---------------------------- */

namespace {

using Mat3 = std::array<std::array<long, 3>, 3>;

long det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Polynomial apply_matrix(const Polynomial& F, const Mat3& m, const std::vector<std::string>& vars) {
    std::vector<Polynomial> subs;
    for (std::size_t i = 0; i < 3; ++i) {
        Polynomial row(vars);
        for (std::size_t j = 0; j < 3; ++j)
            if (m[i][j] != 0)
                row += Polynomial::constant(Rat(m[i][j]), vars) *
                       Polynomial::variable(vars[j], vars);
        subs.push_back(row);
    }
    return F.compose(subs);
}

/* Evaluator at double-double points with the coefficient-magnitude bound
 * needed for relative residuals. Values are uniformly scaled by 2^-shift;
 * pass a common shift when values from several polynomials are compared. */
struct CEval {
    std::vector<std::pair<Mono, CDD>> terms;
    std::vector<std::pair<Mono, double>> absterms;
    explicit CEval(const Polynomial& p, long shift = -1) {
        long bits = shift >= 0 ? shift : p.max_coeff_log2();
        if (bits <= 400) bits = 0;
        for (const auto& [m, c] : p.terms()) {
            Rat scaled = c;
            if (bits > 0) {
                mpq_class r;
                mpq_div_2exp(r.get_mpq_t(), c.get_mpq_t(), static_cast<unsigned long>(bits));
                scaled = r;
            }
            DD dd = dd_from_rat(scaled);
            terms.push_back({m, CDD{dd, DD(0.0)}});
            absterms.push_back({m, std::abs(dd.to_double())});
        }
    }
    CDD eval(const std::array<CDD, 3>& pt) const {
        CDD acc;
        for (const auto& [m, c] : terms) {
            CDD t = c;
            for (std::size_t i = 0; i < 3; ++i)
                for (unsigned k = 0; k < m[i]; ++k) t = cdd_mul(t, pt[i]);
            acc = cdd_add(acc, t);
        }
        return acc;
    }
    /* Coordinates are clamped to >= 1: a residual must be compared against
     * the polynomial's scale, not against a bound that collapses when the
     * point has structurally-zero coordinates. */
    double bound(const std::array<double, 3>& abspt) const {
        double acc = 0;
        for (const auto& [m, a] : absterms) {
            double t = a;
            for (std::size_t i = 0; i < 3; ++i)
                for (unsigned k = 0; k < m[i]; ++k) t *= std::max(abspt[i], 1.0);
            acc += t;
        }
        return std::max(acc, 1e-300);
    }
};

struct RootWithMult {
    CertifiedRoot root;
    int mult;
};

std::vector<RootWithMult> roots_with_mult(const Polynomial& elim, const std::string& var,
                                          std::uint64_t seed) {
    std::vector<RootWithMult> out;
    auto dec = squarefree_decomposition(elim);
    for (const auto& [p, m] : dec) {
        if (p.degree_in(var) <= 0) continue;
        for (const auto& cr : certified_roots(p, seed)) out.push_back({cr, m});
    }
    return out;
}

std::optional<Rat> rationalize(double x, double tol = 1e-9) {
    if (!std::isfinite(x)) return std::nullopt;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int i = 0; i < 32; ++i) {
        double fl = std::floor(v);
        if (fl > 1e15 || fl < -1e15) return std::nullopt;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 1000000L || q2 < 0) return std::nullopt;
        if (std::abs(x - double(p2) / double(q2)) < tol) {
            Rat r(p2, q2);
            r.canonicalize();
            return r;
        }
        double frac = v - fl;
        if (frac < 1e-15) return std::nullopt;
        v = 1.0 / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

std::optional<std::array<Rat, 3>> try_exact_point(const Polynomial& F,
                                                  const std::array<std::complex<double>, 3>& h) {
    std::array<Rat, 3> ex;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& z = h[i];
        if (std::abs(z.imag()) > 1e-9) return std::nullopt;
        auto r = rationalize(z.real());
        if (!r) return std::nullopt;
        ex[i] = *r;
    }
    std::vector<Rat> pt(ex.begin(), ex.end());
    if (F.eval(pt) != 0) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i)
        if (F.derivative(i).eval(pt) != 0) return std::nullopt;
    return ex;
}

struct JetData {
    int rank = -1;
    bool cubic_zero = false;  // cubic jet restricted to the kernel line vanishes
    std::string cone_shape;   // rank 0: "distinct", "double", "triple", "degenerate"
};

/* 2-jet rank and cubic-jet data in the affine chart of the largest
 * coordinate; exact arithmetic when the point is rational. */
JetData jet_analysis(const Polynomial& F, const ProjPoint& p, double jet_tol) {
    JetData out;
    std::size_t i0 = 0;
    double best = -1;
    for (std::size_t i = 0; i < 3; ++i)
        if (std::abs(p.h[i]) > best) {
            best = std::abs(p.h[i]);
            i0 = i;
        }
    std::size_t j = (i0 + 1) % 3, k = (i0 + 2) % 3;
    Polynomial f = F.substitute(i0, Rat(1));

    bool exact_rank_done = false;
    if (p.exact && (*p.exact)[i0] != 0) {
        std::array<Rat, 3> e = *p.exact;
        std::vector<Rat> pt(3, Rat(0));
        pt[i0] = 1;
        pt[j] = e[j] / e[i0];
        pt[k] = e[k] / e[i0];
        Rat fxx = f.derivative(j).derivative(j).eval(pt);
        Rat fxy = f.derivative(j).derivative(k).eval(pt);
        Rat fyy = f.derivative(k).derivative(k).eval(pt);
        Rat det = fxx * fyy - fxy * fxy;
        if (det != 0) {
            out.rank = 2;
            return out;
        }
        if (fxx == 0 && fxy == 0 && fyy == 0) {
            out.rank = 0;  // cone analysis numeric below
            exact_rank_done = true;
        } else {
            out.rank = 1;
            Rat tX, tY;
            if (fxx != 0 || fxy != 0) {
                tX = -fxy;
                tY = fxx;
            } else {
                tX = fyy;
                tY = -fxy;
            }
            Rat c3 = f.derivative(j).derivative(j).derivative(j).eval(pt) * tX * tX * tX +
                     f.derivative(j).derivative(j).derivative(k).eval(pt) * 3 * tX * tX * tY +
                     f.derivative(j).derivative(k).derivative(k).eval(pt) * 3 * tX * tY * tY +
                     f.derivative(k).derivative(k).derivative(k).eval(pt) * tY * tY * tY;
            out.cubic_zero = (c3 == 0);
            return out;
        }
    }

    std::array<CDD, 3> pt;
    for (std::size_t i = 0; i < 3; ++i) pt[i] = CDD(p.h[i] / p.h[i0]);
    // one common scale: jet entries from different derivatives are compared
    long shift = 0;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a; b < 3; ++b) {
            shift = std::max(shift, f.derivative(a).derivative(b).max_coeff_log2());
            for (std::size_t c = b; c < 3; ++c)
                shift = std::max(shift,
                                 f.derivative(a).derivative(b).derivative(c).max_coeff_log2());
        }
    auto D2 = [&](std::size_t a, std::size_t b) {
        return CEval(f.derivative(a).derivative(b), shift).eval(pt).to_complex();
    };
    auto D3 = [&](std::size_t a, std::size_t b, std::size_t c) {
        return CEval(f.derivative(a).derivative(b).derivative(c), shift).eval(pt).to_complex();
    };
    std::complex<double> fxx = D2(j, j), fxy = D2(j, k), fyy = D2(k, k);
    std::complex<double> c30 = D3(j, j, j), c21 = D3(j, j, k), c12 = D3(j, k, k),
                         c03 = D3(k, k, k);
    double jet_norm = std::max({std::abs(fxx), std::abs(fxy), std::abs(fyy), std::abs(c30),
                                std::abs(c21), std::abs(c12), std::abs(c03), 1e-300});
    if (!exact_rank_done) {
        // singular values of the complex symmetric 2x2 via A^H A
        double n11 = std::norm(fxx) + std::norm(fxy);
        double n22 = std::norm(fyy) + std::norm(fxy);
        std::complex<double> n12 = std::conj(fxx) * fxy + std::conj(fxy) * fyy;
        double tr = n11 + n22;
        double de = n11 * n22 - std::norm(n12);
        double disc = std::max(tr * tr - 4 * de, 0.0);
        double s1 = std::sqrt(std::max((tr + std::sqrt(disc)) / 2, 0.0));
        double s2 = std::sqrt(std::max((tr - std::sqrt(disc)) / 2, 0.0));
        out.rank = 0;
        if (s1 > jet_tol * jet_norm) ++out.rank;
        if (s2 > jet_tol * jet_norm) ++out.rank;
    }

    if (out.rank == 1) {
        std::complex<double> tX, tY;
        if (std::abs(fxx) >= std::abs(fyy)) {
            tX = -fxy;
            tY = fxx;
        } else {
            tX = fyy;
            tY = -fxy;
        }
        double tn = std::hypot(std::abs(tX), std::abs(tY));
        if (tn < 1e-300) {
            tX = 1;
            tY = 0;
            tn = 1;
        }
        tX /= tn;
        tY /= tn;
        std::complex<double> c3 = c30 * tX * tX * tX + 3.0 * c21 * tX * tX * tY +
                                  3.0 * c12 * tX * tY * tY + c03 * tY * tY * tY;
        out.cubic_zero = std::abs(c3) <= jet_tol * jet_norm;
    } else if (out.rank == 0) {
        std::vector<std::complex<double>> bc = {c03 / 6.0, c12 / 2.0, c21 / 2.0, c30 / 6.0};
        double cmax = 0;
        for (auto& cc : bc) cmax = std::max(cmax, std::abs(cc));
        if (cmax <= jet_tol * jet_norm) {
            out.cubic_zero = true;
            out.cone_shape = "degenerate";
        } else {
            try {
                auto roots = aberth_roots(bc, 17);
                double scale = 1.0;
                for (auto& r : roots) scale = std::max(scale, std::abs(r));
                double tol = 1e-5 * scale;
                int close_pairs = 0;
                bool triple = false;
                if (roots.size() == 3) {
                    double d01 = std::abs(roots[0] - roots[1]);
                    double d02 = std::abs(roots[0] - roots[2]);
                    double d12 = std::abs(roots[1] - roots[2]);
                    close_pairs = (d01 < tol) + (d02 < tol) + (d12 < tol);
                    triple = close_pairs == 3;
                } else if (roots.size() == 2) {
                    // one cone direction at infinity, distinct from finite ones
                    close_pairs = std::abs(roots[0] - roots[1]) < tol ? 1 : 0;
                }
                out.cone_shape = triple ? "triple" : (close_pairs ? "double" : "distinct");
            } catch (const error&) {
                out.cone_shape = "unresolved";
            }
        }
    }
    return out;
}

}  // namespace

SingKind classify_singularity(const PlaneCurve& C, const ProjPoint& p, const SolveOptions& opts) {
    std::array<CDD, 3> pt;
    std::array<double, 3> apt;
    for (std::size_t i = 0; i < 3; ++i) {
        pt[i] = CDD(p.h[i]);
        apt[i] = std::abs(p.h[i]);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        CEval gi(C.defining.derivative(i));
        double rel = cdd_abs(gi.eval(pt)) / gi.bound(apt);
        if (rel > std::max(1e-7, 10 * opts.residual_tol))
            throw precondition_error("classify_singularity: point not singular within tolerance");
    }
    JetData jd = jet_analysis(C.defining, p, opts.jet_tol);
    if (jd.rank == 2) return SingKind::Node;
    if (jd.rank == 1 && !jd.cubic_zero) return SingKind::Cusp;
    return SingKind::Other;
}

std::vector<SingularPoint> singular_points(const PlaneCurve& C, const SolveOptions& opts) {
    const Polynomial& F = C.defining;
    const auto& vars = F.vars();
    Rng rng(opts.seed ^ 0xc0ffee);
    std::uniform_int_distribution<long> mag(1, 30);
    std::uniform_int_distribution<int> sign(0, 1);
    auto md = [&](Rng& r) { return (sign(r) ? 1 : -1) * mag(r); };

    std::string last_failure = "no attempt";
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        Mat3 M;
        if (attempt == 0) {
            M = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        } else {
            do {
                for (auto& row : M)
                    for (auto& e : row) e = md(rng);
            } while (det3(M) == 0);
        }
        Polynomial Ft = apply_matrix(F, M, vars);
        std::array<Polynomial, 3> g;
        for (std::size_t i = 0; i < 3; ++i) g[i] = Ft.derivative(i);

        // no singular point may hide on the chart's line at infinity
        {
            Polynomial gb = gcd_poly(gcd_poly(g[0].substitute(2, Rat(0)),
                                              g[1].substitute(2, Rat(0))),
                                     g[2].substitute(2, Rat(0)));
            if (!gb.is_constant()) {
                last_failure = "singular point at chart infinity";
                continue;
            }
        }

        /* Per-axis eliminant: gcd of the three pairwise resultants. A root
         * survives only where all three partials have a common zero, which
         * removes the junk intersections of any single pair (those can sit
         * at enormous coordinates and defeat double-range certification). */
        std::array<Polynomial, 3> ga;
        for (std::size_t i = 0; i < 3; ++i) ga[i] = g[i].substitute(2, Rat(1));
        Polynomial Rx, Ry;
        try {
            auto elim = [&](const std::string& kill) {
                Polynomial r01 = resultant(ga[0], ga[1], kill);
                Polynomial r02 = resultant(ga[0], ga[2], kill);
                Polynomial r12 = resultant(ga[1], ga[2], kill);
                if (r01.is_zero() || r02.is_zero() || r12.is_zero())
                    return Polynomial(vars);  // shared component; caller retries
                return gcd_poly(gcd_poly(r01, r02), r12);
            };
            Rx = elim(vars[1]);
            Ry = elim(vars[0]);
        } catch (const precondition_error&) {
            last_failure = "degenerate partials";
            continue;
        }
        if (Rx.is_zero() || Ry.is_zero()) {
            last_failure = "partials share a component";
            continue;
        }
        if (Rx.is_constant() && Ry.is_constant()) return {};  // smooth curve

        std::vector<RootWithMult> xs, ys;
        try {
            xs = roots_with_mult(Rx, vars[0], opts.seed + static_cast<std::uint64_t>(attempt));
            ys = roots_with_mult(Ry, vars[1], opts.seed + 77 + static_cast<std::uint64_t>(attempt));
        } catch (const certification_error&) {
            last_failure = "eliminant root certification failed";
            continue;
        }

        CEval e0(ga[0]), e1(ga[1]), e2(ga[2]);
        struct Hit {
            std::size_t xi, yi;
            std::complex<double> x, y;
        };
        std::vector<Hit> hits;
        bool clash = false;
        std::vector<int> used_x(xs.size(), 0), used_y(ys.size(), 0);
        double best_miss = 1e300;
        for (std::size_t ix = 0; ix < xs.size() && !clash; ++ix)
            for (std::size_t iy = 0; iy < ys.size() && !clash; ++iy) {
                std::array<CDD, 3> pt = {CDD(xs[ix].root.value), CDD(ys[iy].root.value),
                                         CDD(std::complex<double>(1, 0))};
                std::array<double, 3> apt = {std::abs(xs[ix].root.value),
                                             std::abs(ys[iy].root.value), 1.0};
                double r0 = cdd_abs(e0.eval(pt)) / e0.bound(apt);
                double r1 = cdd_abs(e1.eval(pt)) / e1.bound(apt);
                double r2 = cdd_abs(e2.eval(pt)) / e2.bound(apt);
                double worst = std::max({r0, r1, r2});
                if (worst <= opts.residual_tol) {
                    if (used_x[ix]++ || used_y[iy]++) clash = true;
                    if (xs[ix].mult != ys[iy].mult) clash = true;
                    hits.push_back({ix, iy, xs[ix].root.value, ys[iy].root.value});
                } else {
                    best_miss = std::min(best_miss, worst);
                }
            }
        if (debug_enabled())
            std::cerr << "[singular_points] attempt " << attempt << ": xs=" << xs.size()
                      << " ys=" << ys.size() << " hits=" << hits.size() << " clash=" << clash
                      << " best_miss=" << best_miss << "\n";
        if (clash) {
            last_failure = "coordinate collision between singular points";
            continue;
        }

        std::vector<SingularPoint> out;
        double mnorm = 0;
        for (const auto& row : M) {
            double rs = 0;
            for (auto e : row) rs += std::abs(double(e));
            mnorm = std::max(mnorm, rs);
        }
        bool ok = true;
        for (const auto& h : hits) {
            std::array<std::complex<double>, 3> ph = {h.x, h.y, {1.0, 0.0}};
            std::array<std::complex<double>, 3> orig{};
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t jj = 0; jj < 3; ++jj)
                    orig[i] += double(M[i][jj]) * ph[jj];
            double mx = 0;
            for (auto& z : orig) mx = std::max(mx, std::abs(z));
            for (auto& z : orig) z /= mx;
            SingularPoint sp;
            sp.location.h = orig;
            double rx = xs[h.xi].root.radius, ry = ys[h.yi].root.radius;
            sp.certificate = (rx + ry) * mnorm / std::max(mx, 1e-300) + 1e-306;
            sp.system_multiplicity = xs[h.xi].mult;
            if (auto ex = try_exact_point(F, orig)) {
                sp.location.exact = *ex;
                sp.certificate = 0;
            }
            try {
                sp.kind = classify_singularity(C, sp.location, opts);
            } catch (const precondition_error&) {
                ok = false;
                break;
            }
            JetData jd = jet_analysis(F, sp.location, opts.jet_tol);
            sp.jet_rank = jd.rank;
            if (sp.kind == SingKind::Other) {
                if (jd.rank == 1)
                    sp.note = "rank1-degenerate";
                else if (jd.rank == 0)
                    sp.note = "cone-" + (jd.cone_shape.empty() ? "unknown" : jd.cone_shape);
            }
            out.push_back(std::move(sp));
        }
        if (!ok) {
            last_failure = "classification rejected a candidate";
            continue;
        }
        bool sep = true;
        for (std::size_t i = 0; i < out.size() && sep; ++i)
            for (std::size_t jj = i + 1; jj < out.size() && sep; ++jj) {
                double d = 0;
                for (std::size_t kk = 0; kk < 3; ++kk)
                    d = std::max(d, std::abs(out[i].location.h[kk] - out[jj].location.h[kk]));
                if (d <= 2 * std::max(out[i].certificate, out[jj].certificate)) sep = false;
            }
        if (!sep) {
            last_failure = "certificates overlap";
            continue;
        }
        return out;
    }
    throw certification_error("singular_points: " + last_failure + " after " +
                              std::to_string(opts.max_attempts) + " attempts");
}

/* ------------------------------ genericity ------------------------------ */

GenericityReport genericity_check(const PlaneCurve& C, const SolveOptions& opts) {
    if (C.degree <= 2)
        throw precondition_error("genericity_check: degree <= 2 (the criterion needs degree > 2)");
    GenericityReport rep;
    auto source_sings = singular_points(C, opts);
    rep.all_singularities_nodal = true;
    for (const auto& s : source_sings)
        if (s.kind != SingKind::Node) {
            rep.all_singularities_nodal = false;
            rep.witnesses.push_back(s);
        }
    rep.inflexions_simple = true;
    rep.no_tritangent = true;
    rep.no_flex_bitangent = true;
    if (rep.all_singularities_nodal) {
        PlaneCurve Cd = dual_curve(C);
        auto dual_sings = singular_points(Cd, opts);
        for (const auto& s : dual_sings) {
            if (s.kind == SingKind::Node || s.kind == SingKind::Cusp) continue;
            rep.witnesses.push_back(s);
            if (s.jet_rank == 1) {
                rep.inflexions_simple = false;
            } else if (s.note == "cone-distinct") {
                rep.no_tritangent = false;
            } else if (s.note == "cone-double") {
                rep.no_flex_bitangent = false;
            } else if (s.note == "cone-triple") {
                rep.inflexions_simple = false;
            } else {
                rep.inflexions_simple = false;
                rep.no_tritangent = false;
                rep.no_flex_bitangent = false;
            }
        }
    }
    rep.verdict = rep.all_singularities_nodal && rep.inflexions_simple && rep.no_tritangent &&
                  rep.no_flex_bitangent;
    return rep;
}

PluckerCounts plucker_expect(int d, int delta) {
    if (d < 2) throw precondition_error("plucker_expect: d >= 2 required");
    int max_nodes = (d - 1) * (d - 2) / 2;
    if (delta < 0 || delta > max_nodes)
        throw precondition_error("plucker_expect: node count out of range");
    PluckerCounts out;
    out.dual_degree = d * (d - 1) - 2 * delta;
    out.dual_cusps = 3 * d * (d - 2) - 6 * delta;
    int num = out.dual_degree * (out.dual_degree - 1) - d - 3 * out.dual_cusps;
    if (num % 2 != 0) throw integrity_error("plucker_expect: parity violation");
    out.dual_nodes = num / 2;
    if (out.dual_degree < 0 || out.dual_cusps < 0 || out.dual_nodes < 0)
        throw precondition_error("plucker_expect: inputs outside the nodal-curve regime");
    return out;
}

bool is_transversal(const PlaneCurve& C, const std::array<Rat, 3>& line) {
    if (line[0] == 0 && line[1] == 0 && line[2] == 0)
        throw precondition_error("is_transversal: zero linear form");
    std::array<std::array<Rat, 3>, 3> cand = {{{Rat(0), line[2], -line[1]},
                                               {-line[2], Rat(0), line[0]},
                                               {line[1], -line[0], Rat(0)}}};
    std::vector<std::array<Rat, 3>> pts;
    for (const auto& c : cand) {
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
        bool indep = true;
        for (const auto& q : pts) {
            Rat m0 = c[1] * q[2] - c[2] * q[1];
            Rat m1 = c[2] * q[0] - c[0] * q[2];
            Rat m2 = c[0] * q[1] - c[1] * q[0];
            if (m0 == 0 && m1 == 0 && m2 == 0) indep = false;
        }
        if (indep) pts.push_back(c);
        if (pts.size() == 2) break;
    }
    if (pts.size() < 2) throw integrity_error("is_transversal: failed to span line");
    Polynomial r = restrict_to_line(C.defining, pts[0], pts[1]);
    if (r.is_zero()) return false;  // line contained in the curve
    return curve_equal_up_to_scalar(squarefree_part(r), r);
}

}  // namespace dualcover
