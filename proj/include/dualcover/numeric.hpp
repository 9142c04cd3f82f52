#pragma once

#include <complex>
#include <vector>

#include "dualcover/common.hpp"
#include "dualcover/poly.hpp"

namespace dualcover {

/* Double-double arithmetic (Dekker/Knuth error-free transforms). Used as
 * the second rung of the precision ladder: hardware double first, these
 * when separation or residual certificates fail. */
struct DD {
    double hi = 0.0, lo = 0.0;
    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}
    double to_double() const { return hi + lo; }
};

DD dd_add(DD a, DD b);
DD dd_sub(DD a, DD b);
DD dd_mul(DD a, DD b);
DD dd_div(DD a, DD b);
DD dd_neg(DD a);
DD dd_from_rat(const Rat& q);
double dd_abs(DD a);

struct CDD {
    DD re, im;
    CDD() = default;
    CDD(DD r, DD i) : re(r), im(i) {}
    CDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

CDD cdd_add(const CDD& a, const CDD& b);
CDD cdd_sub(const CDD& a, const CDD& b);
CDD cdd_mul(const CDD& a, const CDD& b);
CDD cdd_div(const CDD& a, const CDD& b);
double cdd_abs(const CDD& a);

/* Horner evaluation; coefficients ascending (c[0] + c[1] z + ...). */
std::complex<double> poly_eval(const std::vector<std::complex<double>>& c,
                               std::complex<double> z);
CDD poly_eval(const std::vector<CDD>& c, const CDD& z);
std::vector<std::complex<double>> poly_derivative(const std::vector<std::complex<double>>& c);
std::vector<CDD> poly_derivative(const std::vector<CDD>& c);

/* Aberth-Ehrlich simultaneous iteration for all roots of a polynomial with
 * complex double coefficients (ascending order, trailing nonzero leading
 * coefficient). `warm` optionally seeds the iteration with approximate
 * roots (continuation use). Deterministic given `seed`. */
std::vector<std::complex<double>> aberth_roots(std::vector<std::complex<double>> coeffs,
                                               std::uint64_t seed,
                                               const std::vector<std::complex<double>>* warm = nullptr,
                                               int max_iters = 400);

struct CertifiedRoot {
    std::complex<double> value;
    double radius;  // a disk |z - value| <= radius containing exactly one root
};

/* All roots of a squarefree exact univariate polynomial, each with a
 * certified isolation radius: the radius n*|p/p'| bound guarantees a root
 * in each disk, and pairwise-disjoint disks make each root unique. Throws
 * certification_error when the disks cannot be separated even after
 * double-double polish. */
std::vector<CertifiedRoot> certified_roots(const Polynomial& f, std::uint64_t seed);

/* One double-double Newton polish pass against exact coefficients. */
std::complex<double> dd_newton_polish(const std::vector<CDD>& coeffs,
                                      std::complex<double> z0, int iters = 3);

/* Convert an exact univariate polynomial (in its single used variable) to
 * scaled coefficient vectors. The scale (a power of two) divides all
 * coefficients exactly; it cancels in root computations. */
std::vector<CDD> to_cdd_coeffs(const Polynomial& f);
std::vector<std::complex<double>> to_double_coeffs(const Polynomial& f);

}  // namespace dualcover
