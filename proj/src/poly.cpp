#include "dualcover/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace dualcover {

int mono_total_degree(const Mono& m) {
    int t = 0;
    for (auto e : m) t += e;
    return t;
}

bool grlex_less(const Mono& a, const Mono& b) {
    int ta = mono_total_degree(a), tb = mono_total_degree(b);
    if (ta != tb) return ta < tb;
    return a < b;  // lexicographic on exponent tuples
}

namespace {

struct GrlexGreater {
    bool operator()(const Mono& a, const Mono& b) const { return grlex_less(b, a); }
};

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r{};
    for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {  // a | b
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_div(const Mono& b, const Mono& a) {  // b / a
    Mono r{};
    for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(b[i] - a[i]);
    return r;
}

}  // namespace

void Polynomial::check_vars() const {
    if (vars_.size() > kMaxVars) throw error("too many variables (max 6)");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty()) throw error("empty variable name");
        if (!seen.insert(v).second) throw error("duplicate variable name: " + v);
    }
}

Polynomial Polynomial::constant(const Rat& c, std::vector<std::string> vars) {
    Polynomial p(std::move(vars));
    if (c != 0) p.terms_.push_back({Mono{}, c});
    return p;
}

Polynomial Polynomial::variable(const std::string& name, std::vector<std::string> vars) {
    Polynomial p(std::move(vars));
    auto idx = p.var_index(name);
    if (!idx) throw error("unknown variable: " + name);
    Mono m{};
    m[*idx] = 1;
    p.terms_.push_back({m, Rat(1)});
    return p;
}

Polynomial Polynomial::from_term(const Mono& m, const Rat& c, std::vector<std::string> vars) {
    Polynomial p(std::move(vars));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_total_degree(terms_[0].first) == 0);
}

Rat Polynomial::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw error("not a constant polynomial");
    return terms_[0].second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return mono_total_degree(terms_.front().first);  // leading term has max degree
}

int Polynomial::degree_in(std::size_t var_index) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var_index]));
    return terms_.empty() ? -1 : std::max(d, 0);
}

int Polynomial::degree_in(const std::string& var_name) const {
    auto idx = var_index(var_name);
    if (!idx) return terms_.empty() ? -1 : 0;
    return degree_in(*idx);
}

std::optional<std::size_t> Polynomial::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mono_total_degree(terms_.front().first);
    for (const auto& [m, c] : terms_)
        if (mono_total_degree(m) != d) return false;
    return true;
}

void Polynomial::insert_term(const Mono& m, const Rat& c) { terms_.push_back({m, c}); }

void Polynomial::normalize_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grlex_less(b.first, a.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

std::pair<Polynomial, Polynomial> aligned(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ == b.vars_) return {a, b};
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    return {a.with_vars(u), b.with_vars(u)};
}

Polynomial Polynomial::with_vars(const std::vector<std::string>& new_vars) const {
    Polynomial out(new_vars);
    std::vector<std::size_t> remap(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
        if (it == new_vars.end()) {
            if (degree_in(i) > 0) throw error("with_vars drops used variable " + vars_[i]);
            remap[i] = kMaxVars;  // sentinel, exponent always 0
        } else {
            remap[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
    }
    for (const auto& [m, c] : terms_) {
        Mono nm{};
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            nm[remap[i]] = m[i];
        }
        out.terms_.push_back({nm, c});
    }
    out.normalize_terms();
    return out;
}

Polynomial Polynomial::renamed(const std::vector<std::string>& new_names) const {
    if (new_names.size() != vars_.size()) throw error("renamed: arity mismatch");
    Polynomial out(new_names);
    out.terms_ = terms_;
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (vars_ != o.vars_) {
        auto [a, b] = aligned(*this, o);
        *this = a;
        return *this += b;
    }
    for (const auto& t : o.terms_) terms_.push_back(t);
    normalize_terms();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a0, const Polynomial& b0) {
    auto [a, b] = aligned(a0, b0);
    Polynomial out(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    std::map<Mono, Rat, GrlexGreater> acc;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Mono m = mono_mul(ma, mb);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, ca * cb);
            else
                it->second += ca * cb;
        }
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.terms_.push_back({m, c});
    return out;
}

Polynomial& Polynomial::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, co] : terms_) co *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(1, vars_);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = (e >>= 1u) ? base * base : base;
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t var_index) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var_index] == 0) continue;
        Mono nm = m;
        nm[var_index] -= 1;
        out.terms_.push_back({nm, c * Rat(static_cast<long>(m[var_index]))});
    }
    out.normalize_terms();
    return out;
}

Polynomial Polynomial::derivative(const std::string& var_name) const {
    auto idx = var_index(var_name);
    if (!idx) return Polynomial(vars_);
    return derivative(*idx);
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const {
    if (subs.size() != vars_.size()) throw error("compose: substitution count mismatch");
    std::vector<std::string> tvars = subs.empty() ? std::vector<std::string>{} : subs[0].vars();
    // power caches per variable
    std::vector<std::vector<Polynomial>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
        powers[i].push_back(Polynomial::constant(1, tvars));
    Polynomial out(tvars);
    for (const auto& [m, c] : terms_) {
        Polynomial term = Polynomial::constant(c, tvars);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = m[i];
            if (e == 0) continue;
            auto& cache = powers[i];
            while (cache.size() <= e) cache.push_back(cache.back() * subs[i]);
            term = term * cache[e];
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::substitute(std::size_t vi, const Rat& value) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        Rat cc = c;
        if (m[vi] > 0) {
            Rat pw = 1;
            for (unsigned k = 0; k < m[vi]; ++k) pw *= value;
            cc *= pw;
        }
        Mono nm = m;
        nm[vi] = 0;
        out.terms_.push_back({nm, cc});
    }
    out.normalize_terms();
    return out;
}

Polynomial Polynomial::substitute(std::size_t vi, const Polynomial& value) const {
    std::vector<Polynomial> subs;
    subs.reserve(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i == vi)
            subs.push_back(value.vars() == vars_ ? value : value.with_vars(vars_));
        else
            subs.push_back(Polynomial::variable(vars_[i], vars_));
    }
    return compose(subs);
}

Rat Polynomial::eval(const std::vector<Rat>& point) const {
    if (point.size() != vars_.size()) throw error("eval: point dimension mismatch");
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

std::complex<double> Polynomial::eval(const std::vector<std::complex<double>>& point) const {
    if (point.size() != vars_.size()) throw error("eval: point dimension mismatch");
    std::complex<double> total = 0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = to_double(c);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

std::vector<Polynomial> Polynomial::coeffs_in(std::size_t vi) const {
    int d = std::max(degree_in(vi), 0);
    std::vector<Polynomial> out(static_cast<std::size_t>(d) + 1, Polynomial(vars_));
    for (const auto& [m, c] : terms_) {
        Mono nm = m;
        unsigned e = nm[vi];
        nm[vi] = 0;
        out[e].terms_.push_back({nm, c});
    }
    for (auto& p : out) p.normalize_terms();
    return out;
}

Polynomial Polynomial::from_coeffs_in(std::size_t vi, const std::vector<Polynomial>& coeffs,
                                      const std::vector<std::string>& vars) {
    Polynomial out(vars);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        const Polynomial c = coeffs[e].vars() == vars ? coeffs[e] : coeffs[e].with_vars(vars);
        for (const auto& [m, co] : c.terms_) {
            Mono nm = m;
            nm[vi] = static_cast<std::uint16_t>(nm[vi] + e);
            out.terms_.push_back({nm, co});
        }
    }
    out.normalize_terms();
    return out;
}

Polynomial Polynomial::coefficient_of(std::size_t vi, int power) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        if (static_cast<int>(m[vi]) != power) continue;
        Mono nm = m;
        nm[vi] = 0;
        out.terms_.push_back({nm, c});
    }
    out.normalize_terms();
    return out;
}

Polynomial Polynomial::leading_coeff_in(std::size_t vi) const {
    return coefficient_of(vi, degree_in(vi));
}

Rat Polynomial::rational_content() const {
    if (terms_.empty()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    if (terms_.front().second < 0) content = -content;
    return content;
}

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return *this;
    Rat c = rational_content();
    Polynomial out = *this;
    for (auto& [m, co] : out.terms_) co /= c;
    return out;
}

long Polynomial::max_coeff_log2() const {
    long best = 0;
    for (const auto& [m, c] : terms_) {
        long sz = static_cast<long>(mpz_sizeinbase(c.get_num().get_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(c.get_den().get_mpz_t(), 2));
        best = std::max(best, sz);
    }
    return best;
}

/* ------------------------------- printing ------------------------------ */

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = mono_total_degree(m) > 0;
        if (!has_vars || a != 1) {
            os << a.get_str();
            if (has_vars) os << "*";
        }
        bool started = false;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            if (started) os << "*";
            started = true;
            os << vars_[i];
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

/* -------------------------------- parsing ------------------------------ */

namespace {

struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Polynomial parse_expr() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (eat('-'))
                neg = !neg;
            else
                eat('+');
        }
        Polynomial acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                eat('+');
                acc += parse_term();
            } else if (c == '-') {
                eat('-');
                acc -= parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_term() {
        Polynomial acc = parse_power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                eat('*');
                acc = acc * parse_power();
            } else if (c == '/') {
                std::size_t at = pos;
                eat('/');
                Polynomial d = parse_power();
                if (!d.is_constant() || d.is_zero())
                    throw parse_error("division only by a nonzero constant", at);
                Rat inv = 1 / d.constant_value();
                acc *= inv;
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        if (peek() == '^') {
            std::size_t at = pos;
            eat('^');
            skip_ws();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw parse_error("expected nonnegative integer exponent", at);
            unsigned long e = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                e = e * 10 + static_cast<unsigned long>(s[pos] - '0');
                if (e > 10000) throw parse_error("exponent too large", at);
                ++pos;
            }
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial parse_atom() {
        skip_ws();
        std::size_t at = pos;
        if (pos >= s.size()) throw parse_error("unexpected end of input", at);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Polynomial inner = parse_expr();
            if (!eat(')')) throw parse_error("expected ')'", pos);
            return inner;
        }
        if (c == '-') {  // unary minus inside a term, e.g. (x * -2)
            ++pos;
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                num += s[pos++];
            return Polynomial::constant(rat_from_string(num), vars);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                name += s[pos++];
            for (const auto& v : vars)
                if (v == name) return Polynomial::variable(name, vars);
            throw parse_error("unknown variable '" + name + "'", at);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", at);
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& vars) {
    Parser p{text, vars};
    Polynomial out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input", p.pos);
    return out.vars() == vars ? out : out.with_vars(vars);
}

/* ---------------------------- exact division --------------------------- */

std::optional<Polynomial> divide_exact(const Polynomial& f0, const Polynomial& g0) {
    auto [f, g] = aligned(f0, g0);
    if (g.is_zero()) return std::nullopt;
    Polynomial q(f.vars());
    Polynomial r = f;
    const auto& ltg = g.terms().front();
    while (!r.is_zero()) {
        const auto& ltr = r.terms().front();
        if (!mono_divides(ltg.first, ltr.first)) return std::nullopt;
        Mono m = mono_div(ltr.first, ltg.first);
        Rat c = ltr.second / ltg.second;
        Polynomial t = Polynomial::from_term(m, c, f.vars());
        q += t;
        r -= t * g;
    }
    return q;
}

/* --------------------------- pseudo remainder --------------------------- */

namespace {

/* Dense view as a univariate polynomial in one variable with Polynomial
 * coefficients; used by the PRS algorithms. */
struct UView {
    std::vector<Polynomial> c;  // c[i] multiplies x^i
    int deg() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (!c[static_cast<std::size_t>(i)].is_zero()) return i;
        return -1;
    }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

UView uview(const Polynomial& f, std::size_t vi) { return UView{f.coeffs_in(vi)}; }

Polynomial from_uview(const UView& u, std::size_t vi, const std::vector<std::string>& vars) {
    return Polynomial::from_coeffs_in(vi, u.c, vars);
}

UView pseudo_rem_u(const UView& A, const UView& B, const std::vector<std::string>& vars) {
    int da = A.deg(), db = B.deg();
    if (db < 0) throw error("pseudo_rem: zero divisor");
    const Polynomial& lb = B.c[static_cast<std::size_t>(db)];
    UView R = A;
    int e = da - db + 1;
    while (true) {
        R.trim();
        int dr = R.deg();
        if (dr < db) break;
        Polynomial lr = R.c[static_cast<std::size_t>(dr)];
        // R = lb*R - lr * x^(dr-db) * B
        for (auto& ci : R.c) ci = ci * lb;
        for (int i = 0; i <= db; ++i) {
            std::size_t j = static_cast<std::size_t>(i + dr - db);
            R.c[j] -= lr * B.c[static_cast<std::size_t>(i)];
        }
        --e;
    }
    if (e > 0) {
        Polynomial scale = Polynomial::constant(1, vars);
        for (int i = 0; i < e; ++i) scale = scale * lb;
        for (auto& ci : R.c) ci = ci * scale;
    }
    R.trim();
    return R;
}

}  // namespace

Polynomial pseudo_rem(const Polynomial& f0, const Polynomial& g0, std::size_t vi) {
    auto [f, g] = aligned(f0, g0);
    UView A = uview(f, vi), B = uview(g, vi);
    if (A.deg() < B.deg()) throw error("pseudo_rem: deg f < deg g");
    return from_uview(pseudo_rem_u(A, B, f.vars()), vi, f.vars());
}

/* ------------------------------ resultant ------------------------------ */

namespace {

/* Subresultant PRS resultant (Brown/Collins; cf. Cohen, alg. 3.3.7). */
Polynomial resultant_prs(Polynomial A, Polynomial B, std::size_t vi) {
    const auto vars = A.vars();
    int s = 1;
    int a = A.degree_in(vi), b = B.degree_in(vi);
    if (a < b) {
        std::swap(A, B);
        std::swap(a, b);
        if ((a & 1) && (b & 1)) s = -s;
    }
    if (b == 0) {
        Polynomial r = B.pow(static_cast<unsigned>(a));
        if (s < 0) r *= Rat(-1);
        return r;
    }
    Polynomial g = Polynomial::constant(1, vars);
    Polynomial h = Polynomial::constant(1, vars);
    UView UA = uview(A, vi), UB = uview(B, vi);
    for (;;) {
        a = UA.deg();
        b = UB.deg();
        int delta = a - b;
        if ((a & 1) && (b & 1)) s = -s;
        UView R = pseudo_rem_u(UA, UB, vars);
        UA = UB;
        if (R.deg() < 0) return Polynomial(vars);  // common factor of positive degree
        // B <- R / (g*h^delta)
        Polynomial denom = g * h.pow(static_cast<unsigned>(delta));
        UView NB;
        NB.c.reserve(R.c.size());
        for (const auto& ci : R.c) {
            auto q = divide_exact(ci, denom);
            if (!q) throw integrity_error("subresultant PRS: inexact division");
            NB.c.push_back(*q);
        }
        NB.trim();
        UB = NB;
        g = UA.c[static_cast<std::size_t>(UA.deg())];
        if (delta > 0) {
            auto q = divide_exact(g.pow(static_cast<unsigned>(delta)),
                                  h.pow(static_cast<unsigned>(delta - 1)));
            if (!q) throw integrity_error("subresultant PRS: inexact h update");
            h = *q;
        }
        if (UB.deg() == 0) {
            int dA = UA.deg();
            Polynomial last = UB.c[0];
            auto q = divide_exact(last.pow(static_cast<unsigned>(dA)),
                                  h.pow(static_cast<unsigned>(dA - 1)));
            if (!q) throw integrity_error("subresultant PRS: inexact final division");
            Polynomial r = *q;
            if (s < 0) r *= Rat(-1);
            return r;
        }
    }
}

}  // namespace

Polynomial resultant(const Polynomial& f0, const Polynomial& g0, const std::string& var) {
    if (f0.is_zero() || g0.is_zero()) throw precondition_error("resultant: zero input");
    auto [f, g] = aligned(f0, g0);
    auto vi = f.var_index(var);
    if (!vi) throw precondition_error("resultant: unknown variable " + var);
    if (f.degree_in(*vi) == 0 && g.degree_in(*vi) == 0)
        throw precondition_error("resultant: both inputs free of " + var);
    return resultant_prs(f, g, *vi);
}

Polynomial discriminant(const Polynomial& f, const std::string& var) {
    auto vi = f.var_index(var);
    if (!vi || f.degree_in(*vi) <= 0)
        throw precondition_error("discriminant: degree 0 in " + var);
    Polynomial df = f.derivative(*vi);
    if (df.is_zero()) throw precondition_error("discriminant: derivative vanishes");
    Polynomial res = resultant(f, df, var);
    Polynomial lc = f.leading_coeff_in(*vi);
    if (lc.is_constant()) {
        Rat c = lc.constant_value();
        Polynomial out = res;
        out *= 1 / c;
        return out;
    }
    auto q = divide_exact(res, lc);
    if (!q) throw integrity_error("discriminant: leading coefficient does not divide");
    return *q;
}

/* --------------------------------- gcd --------------------------------- */

namespace {

Polynomial content_in(const Polynomial& f, std::size_t vi) {
    auto cs = f.coeffs_in(vi);
    Polynomial g(f.vars());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd_poly(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

}  // namespace

Polynomial gcd_poly(const Polynomial& f0, const Polynomial& g0) {
    if (f0.is_zero()) return g0.normalized();
    if (g0.is_zero()) return f0.normalized();
    auto [f, g] = aligned(f0, g0);
    const auto vars = f.vars();
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(1, vars);
    // main variable: both degrees positive, smallest min-degree to keep PRS short
    std::optional<std::size_t> main;
    int best = -1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        int df = f.degree_in(i), dg = g.degree_in(i);
        if (df > 0 && dg > 0) {
            int m = std::min(df, dg);
            if (!main || m < best) {
                main = i;
                best = m;
            }
        }
    }
    if (!main) {
        // no shared variable: any common divisor is constant, except that a
        // variable-free... reduce via contents on a variable of f
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (f.degree_in(i) > 0) return gcd_poly(content_in(f, i), g);
        return Polynomial::constant(1, vars);
    }
    std::size_t x = *main;
    Polynomial cf = content_in(f, x), cg = content_in(g, x);
    Polynomial c = gcd_poly(cf, cg);
    auto F = divide_exact(f, cf), G = divide_exact(g, cg);
    if (!F || !G) throw integrity_error("gcd: content division failed");
    // rational content stripped at every step; pseudo-remainder growth is
    // exponential without it
    Polynomial A = F->normalized(), B = G->normalized();
    if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);
    for (;;) {
        Polynomial R = pseudo_rem(A, B, x);
        if (R.is_zero()) {
            Polynomial ppB = divide_exact(B, content_in(B, x)).value();
            return (c * ppB).normalized();
        }
        if (R.degree_in(x) == 0) return c.normalized();
        A = B;
        B = divide_exact(R, content_in(R, x)).value().normalized();
    }
}

/* ---------------------- squarefree decomposition ----------------------- */

namespace {

/* Yun's algorithm for the x-dependent part of an x-primitive polynomial. */
void yun_in(const Polynomial& f, std::size_t x,
            std::vector<std::pair<Polynomial, int>>& out) {
    Polynomial fp = f.derivative(x);
    Polynomial g = gcd_poly(f, fp);
    Polynomial w = divide_exact(f, g).value();
    Polynomial y = divide_exact(fp, g).value();
    Polynomial z = y - w.derivative(x);
    int i = 1;
    while (!w.is_constant()) {
        Polynomial p = gcd_poly(w, z);
        if (!p.is_constant()) out.push_back({p.normalized(), i});
        w = divide_exact(w, p).value();
        y = divide_exact(z, p).value();
        z = y - w.derivative(x);
        ++i;
        if (i > 1000) throw integrity_error("yun: runaway loop");
    }
}

void squarefree_rec(const Polynomial& f, std::vector<std::pair<Polynomial, int>>& out) {
    if (f.is_constant()) return;
    std::size_t x = 0;
    bool found = false;
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (f.degree_in(i) > 0) {
            x = i;
            found = true;
            break;
        }
    if (!found) return;
    Polynomial c = content_in(f, x);
    Polynomial pp = divide_exact(f, c).value();
    yun_in(pp, x, out);
    squarefree_rec(c, out);
}

}  // namespace

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f0) {
    if (f0.is_zero()) throw precondition_error("squarefree: zero polynomial");
    Polynomial f = f0.normalized();
    std::vector<std::pair<Polynomial, int>> raw;
    // monomial content first: min exponent per variable
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        int mn = INT32_MAX;
        for (const auto& [m, c] : f.terms()) mn = std::min(mn, static_cast<int>(m[i]));
        if (mn > 0) {
            Polynomial v = Polynomial::variable(f.vars()[i], f.vars());
            f = divide_exact(f, v.pow(static_cast<unsigned>(mn))).value();
            raw.push_back({v, mn});
        }
    }
    squarefree_rec(f, raw);
    // merge factors sharing a multiplicity
    std::map<int, Polynomial> merged;
    for (auto& [p, i] : raw) {
        auto it = merged.find(i);
        if (it == merged.end())
            merged.emplace(i, p);
        else
            it->second = (it->second * p).normalized();
    }
    std::vector<std::pair<Polynomial, int>> out;
    for (auto& [i, p] : merged) out.push_back({p.normalized(), i});
    return out;
}

Polynomial squarefree_part(const Polynomial& f) {
    if (f.is_zero()) throw precondition_error("squarefree_part: zero polynomial");
    auto dec = squarefree_decomposition(f);
    Polynomial out = Polynomial::constant(1, f.vars());
    for (const auto& [p, i] : dec) out = out * p;
    return out.normalized();
}

}  // namespace dualcover
