#include "dualcover/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace dualcover {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

}  // namespace

DD dd_add(DD a, DD b) {
    double s1, s2, t1, t2;
    two_sum(a.hi, b.hi, s1, s2);
    two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

DD dd_mul(DD a, DD b) {
    double p1, p2;
    two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    double s1, s2;
    quick_two_sum(p1, p2, s1, s2);
    return {s1, s2};
}

DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(DD(q1), b));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(DD(q2), b));
    double q3 = r.hi / b.hi;
    double s1, s2;
    quick_two_sum(q1, q2, s1, s2);
    return dd_add(DD(s1, s2), DD(q3));
}

DD dd_from_rat(const Rat& q) {
    double hi = q.get_d();
    if (!std::isfinite(hi)) throw certification_error("rational too large for double conversion");
    Rat r = q - Rat(hi);
    return {hi, r.get_d()};
}

double dd_abs(DD a) { return std::abs(a.to_double()); }

CDD cdd_add(const CDD& a, const CDD& b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }
CDD cdd_sub(const CDD& a, const CDD& b) { return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)}; }

CDD cdd_mul(const CDD& a, const CDD& b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

CDD cdd_div(const CDD& a, const CDD& b) {
    DD n = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
    CDD conj{b.re, dd_neg(b.im)};
    CDD num = cdd_mul(a, conj);
    return {dd_div(num.re, n), dd_div(num.im, n)};
}

double cdd_abs(const CDD& a) { return std::hypot(a.re.to_double(), a.im.to_double()); }

std::complex<double> poly_eval(const std::vector<std::complex<double>>& c,
                               std::complex<double> z) {
    std::complex<double> acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

CDD poly_eval(const std::vector<CDD>& c, const CDD& z) {
    CDD acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = cdd_add(cdd_mul(acc, z), *it);
    return acc;
}

std::vector<std::complex<double>> poly_derivative(const std::vector<std::complex<double>>& c) {
    std::vector<std::complex<double>> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

std::vector<CDD> poly_derivative(const std::vector<CDD>& c) {
    std::vector<CDD> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(cdd_mul(c[i], CDD(DD(static_cast<double>(i)), DD(0.0))));
    return d;
}

std::vector<std::complex<double>> aberth_roots(std::vector<std::complex<double>> coeffs,
                                               std::uint64_t seed,
                                               const std::vector<std::complex<double>>* warm,
                                               int max_iters) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) {
        if (coeffs.empty()) throw precondition_error("aberth: zero polynomial");
        return {};
    }
    std::vector<std::complex<double>> zero_roots;
    while (std::abs(coeffs.front()) == 0.0) {
        zero_roots.push_back({0.0, 0.0});
        coeffs.erase(coeffs.begin());
    }
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) {
        return zero_roots;
    }

    std::vector<std::complex<double>> z(n);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (warm && warm->size() == n) {
        z = *warm;
    } else {
        double r0 = std::pow(std::max(std::abs(coeffs[0] / coeffs[n]), 1e-280), 1.0 / double(n));
        double cauchy = 0;
        for (std::size_t i = 0; i < n; ++i)
            cauchy = std::max(cauchy, std::abs(coeffs[i] / coeffs[n]));
        cauchy = 1.0 + cauchy;
        r0 = std::min(std::max(r0, 1e-3 * cauchy), cauchy);
        double theta0 = 2 * M_PI * unit(rng);
        for (std::size_t j = 0; j < n; ++j) {
            double th = theta0 + 2 * M_PI * double(j) / double(n) + 0.1 * unit(rng);
            double rr = r0 * (1.0 + 0.05 * unit(rng));
            z[j] = std::polar(rr, th);
        }
    }
    auto dcoeffs = poly_derivative(coeffs);
    std::vector<char> done(n, 0);
    bool converged = false;
    for (int it = 0; it < max_iters && !converged; ++it) {
        bool all = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (done[j]) continue;
            std::complex<double> p = poly_eval(coeffs, z[j]);
            // backward-error bound: cannot resolve residuals below eps*B
            double B = 0, az = std::abs(z[j]);
            double zp = 1;
            for (const auto& ci : coeffs) {
                B += std::abs(ci) * zp;
                zp *= az;
            }
            if (std::abs(p) <= 8 * std::numeric_limits<double>::epsilon() * B) {
                done[j] = 1;
                continue;
            }
            std::complex<double> dp = poly_eval(dcoeffs, z[j]);
            if (std::abs(dp) == 0.0) {
                z[j] += std::polar(1e-6 * (1.0 + az), 2 * M_PI * unit(rng));
                all = false;
                continue;
            }
            std::complex<double> N = p / dp;
            std::complex<double> S = 0;
            bool collision = false;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                std::complex<double> d = z[j] - z[k];
                if (std::abs(d) < 1e-300) {
                    collision = true;
                    break;
                }
                S += 1.0 / d;
            }
            if (collision) {
                z[j] += std::polar(1e-6 * (1.0 + az), 2 * M_PI * unit(rng));
                all = false;
                continue;
            }
            std::complex<double> denom = 1.0 - N * S;
            std::complex<double> corr = std::abs(denom) < 1e-300 ? N : N / denom;
            z[j] -= corr;
            if (!std::isfinite(std::abs(z[j]))) {
                z[j] = std::polar(1.0 + unit(rng), 2 * M_PI * unit(rng));
                all = false;
            } else if (std::abs(corr) < 4e-15 * (1.0 + std::abs(z[j])))
                done[j] = 1;
            else
                all = false;
        }
        converged = all;
    }
    if (!converged) throw certification_error("aberth: iteration did not converge");
    z.insert(z.end(), zero_roots.begin(), zero_roots.end());
    return z;
}

std::complex<double> dd_newton_polish(const std::vector<CDD>& coeffs,
                                      std::complex<double> z0, int iters) {
    auto dcoeffs = poly_derivative(coeffs);
    CDD z(z0);
    for (int i = 0; i < iters; ++i) {
        CDD p = poly_eval(coeffs, z);
        CDD dp = poly_eval(dcoeffs, z);
        double ap = cdd_abs(p), adp = cdd_abs(dp);
        if (!std::isfinite(ap) || !std::isfinite(adp) || adp == 0.0) break;
        CDD step = cdd_div(p, dp);
        if (!std::isfinite(cdd_abs(step))) break;
        z = cdd_sub(z, step);
    }
    return z.to_complex();
}

namespace {

std::size_t single_used_var(const Polynomial& f) {
    std::size_t used = 0;
    int count = 0;
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (f.degree_in(i) > 0) {
            used = i;
            ++count;
        }
    if (count > 1) throw precondition_error("expected univariate polynomial");
    return used;
}

std::vector<Rat> scaled_rat_coeffs(const Polynomial& f) {
    Polynomial g = f.normalized();
    std::size_t vi = single_used_var(g);
    auto cs = g.coeffs_in(vi);
    std::vector<Rat> out;
    for (auto& c : cs) out.push_back(c.is_zero() ? Rat(0) : c.constant_value());
    long bits = 0;
    for (const auto& q : out)
        if (q != 0)
            bits = std::max(bits, static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
                                      static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2)));
    if (bits > 500) {
        for (auto& q : out) {
            mpq_class r;
            mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(bits));
            q = r;
        }
    }
    return out;
}

}  // namespace

std::vector<CDD> to_cdd_coeffs(const Polynomial& f) {
    std::vector<CDD> out;
    for (const auto& q : scaled_rat_coeffs(f)) out.push_back(CDD{dd_from_rat(q), DD(0.0)});
    return out;
}

std::vector<std::complex<double>> to_double_coeffs(const Polynomial& f) {
    std::vector<std::complex<double>> out;
    for (const auto& q : scaled_rat_coeffs(f)) out.push_back({q.get_d(), 0.0});
    return out;
}

std::vector<CertifiedRoot> certified_roots(const Polynomial& f, std::uint64_t seed) {
    if (f.is_zero()) throw precondition_error("certified_roots: zero polynomial");
    if (f.is_constant()) return {};
    auto exact = to_cdd_coeffs(f);
    auto coeffs = to_double_coeffs(f);
    auto roots = aberth_roots(coeffs, seed);
    auto dpoly = poly_derivative(exact);
    const double n = static_cast<double>(roots.size());
    std::vector<CertifiedRoot> out;
    for (auto z : roots) {
        z = dd_newton_polish(exact, z, 4);
        CDD p = poly_eval(exact, CDD(z));
        CDD dp = poly_eval(dpoly, CDD(z));
        double adp = cdd_abs(dp);
        if (adp == 0.0) throw certification_error("certified_roots: derivative vanished at root");
        double radius = n * cdd_abs(p) / adp * (1.0 + 1e-10) + 1e-306;
        if (!std::isfinite(radius) || !std::isfinite(std::abs(z)))
            throw certification_error("certified_roots: evaluation overflow (roots out of range)");
        out.push_back({z, radius});
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            double d = std::abs(out[i].value - out[j].value);
            if (!(d > out[i].radius + out[j].radius))
                throw certification_error("certified_roots: isolation disks overlap");
        }
    return out;
}

}  // namespace dualcover
