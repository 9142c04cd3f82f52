#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualcover/common.hpp"

namespace dualcover {

/* Sparse multivariate polynomials over Q with exact rational coefficients.
 * Terms are kept in graded-lexicographic descending order (leading term
 * first); no zero coefficients are stored. At most kMaxVars variables. */

inline constexpr std::size_t kMaxVars = 6;

using Mono = std::array<std::uint16_t, kMaxVars>;

int mono_total_degree(const Mono& m);
bool grlex_less(const Mono& a, const Mono& b);

class Polynomial {
  public:
    using Term = std::pair<Mono, Rat>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) { check_vars(); }

    static Polynomial constant(const Rat& c, std::vector<std::string> vars = {});
    static Polynomial variable(const std::string& name, std::vector<std::string> vars);
    static Polynomial from_term(const Mono& m, const Rat& c, std::vector<std::string> vars);

    /* Parses the spec'd text format: `^` powers, `*` products, `/` by a
     * constant subexpression, integer literals, parentheses, unary minus.
     * Result is in canonical expanded form. */
    static Polynomial parse(const std::string& text, const std::vector<std::string>& vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t nvars() const { return vars_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()

    int total_degree() const;  // -1 for zero polynomial
    int degree_in(std::size_t var_index) const;
    int degree_in(const std::string& var_name) const;
    std::optional<std::size_t> var_index(const std::string& name) const;

    /* Homogeneity: zero polynomial counts as homogeneous of any degree. */
    bool is_homogeneous() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const Rat& c);
    friend Polynomial operator*(Polynomial a, const Rat& c) { return a *= c; }
    friend Polynomial operator*(const Rat& c, Polynomial a) { return a *= c; }
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(std::size_t var_index) const;
    Polynomial derivative(const std::string& var_name) const;

    /* Substitute every variable by the corresponding polynomial; all
     * substituted polynomials must share one variable list. */
    Polynomial compose(const std::vector<Polynomial>& subs) const;
    Polynomial substitute(std::size_t var_index, const Rat& value) const;
    Polynomial substitute(std::size_t var_index, const Polynomial& value) const;

    Rat eval(const std::vector<Rat>& point) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    /* Coefficients of x^0..x^deg as polynomials in the remaining variables
     * (same variable list, with `var_index` degree zero in each entry). */
    std::vector<Polynomial> coeffs_in(std::size_t var_index) const;
    static Polynomial from_coeffs_in(std::size_t var_index,
                                     const std::vector<Polynomial>& coeffs,
                                     const std::vector<std::string>& vars);
    Polynomial coefficient_of(std::size_t var_index, int power) const;
    Polynomial leading_coeff_in(std::size_t var_index) const;

    /* Rational content (gcd of coefficients, sign of leading term). The
     * normalized form is integer, primitive, with positive leading
     * coefficient: the canonical representative up to scalar. */
    Rat rational_content() const;
    Polynomial normalized() const;

    /* Renames/migrates to a new variable list; every old variable must
     * appear in new_vars. */
    Polynomial with_vars(const std::vector<std::string>& new_vars) const;

    /* Positional rename: same arity, new names, exponents untouched. */
    Polynomial renamed(const std::vector<std::string>& new_names) const;

    std::string to_string() const;

    /* max |coefficient| as a double-safe logarithm, for scaling decisions */
    long max_coeff_log2() const;

  private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;

    void check_vars() const;
    void insert_term(const Mono& m, const Rat& c);  // accumulate, unsorted OK
    void normalize_terms();                         // sort + combine + drop zeros
    friend Polynomial align_binary(const Polynomial& a, const Polynomial& b, Polynomial& b_out);
    friend std::pair<Polynomial, Polynomial> aligned(const Polynomial& a, const Polynomial& b);
};

std::pair<Polynomial, Polynomial> aligned(const Polynomial& a, const Polynomial& b);

/* Exact division; nullopt when g does not divide f. */
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/* Pseudo-remainder of f by g with respect to one variable:
 * lc_x(g)^(deg_x f - deg_x g + 1) * f = q*g + r with deg_x r < deg_x g. */
Polynomial pseudo_rem(const Polynomial& f, const Polynomial& g, std::size_t var_index);

/* Resultant eliminating `var` via the subresultant PRS. Throws
 * precondition_error when both inputs are free of the variable or either
 * is zero. */
Polynomial resultant(const Polynomial& f, const Polynomial& g, const std::string& var);

/* Res_x(f, df/dx) normalized by the leading coefficient in x. */
Polynomial discriminant(const Polynomial& f, const std::string& var);

Polynomial gcd_poly(const Polynomial& f, const Polynomial& g);

/* Squarefree decomposition f = c * prod p_i^i with the p_i squarefree,
 * pairwise coprime, normalized; includes single-variable monomial factors.
 * Multiplicities are strictly increasing in the returned list. */
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f);

Polynomial squarefree_part(const Polynomial& f);

}  // namespace dualcover
