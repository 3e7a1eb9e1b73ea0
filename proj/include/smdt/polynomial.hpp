#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace smdt {

/// Dense univariate polynomial with exact integer coefficients.
///
/// Coefficients are stored low to high (coeffs()[k] multiplies x^k) and the
/// representation is normalized: the zero polynomial has an empty coefficient
/// vector, otherwise the leading coefficient is nonzero. degree() is -1 for
/// the zero polynomial.
template <typename T>
class Polynomial {
  public:
    Polynomial() = default;

    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

    static Polynomial monomial(int deg, T lead = T(1)) {
        std::vector<T> c(static_cast<std::size_t>(deg) + 1, T(0));
        c.back() = std::move(lead);
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^k; zero beyond the degree.
    T coeff(int k) const {
        if (k < 0 || k > degree()) return T(0);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    const std::vector<T>& coeffs() const { return coeffs_; }

    const T& leading() const { return coeffs_.back(); }

    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == T(1); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<T> c = coeffs_;
        for (T& v : c) v = -v;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const T& s, const Polynomial& a) {
        std::vector<T> c = a.coeffs_;
        for (T& v : c) v *= s;
        return Polynomial(std::move(c));
    }

    bool operator==(const Polynomial& other) const = default;

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(T(1));
        for (unsigned i = 0; i < e; ++i) result = result * *this;
        return result;
    }

    Polynomial derivative() const {
        if (degree() <= 0) return Polynomial();
        std::vector<T> c(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            c[k - 1] = T(static_cast<long>(k)) * coeffs_[k];
        return Polynomial(std::move(c));
    }

    /// Horner evaluation at an integer point of the same coefficient type.
    T evaluate(const T& x) const {
        T acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    /// Long division. Every intermediate leading-coefficient division must be
    /// exact over T (always the case for monic divisors); otherwise throws.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                    const Polynomial& d) {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < d.degree()) return {Polynomial(), a};
        std::vector<T> rem = a.coeffs_;
        std::vector<T> quot(static_cast<std::size_t>(a.degree() - d.degree()) + 1, T(0));
        const T& lead = d.leading();
        for (int k = a.degree() - d.degree(); k >= 0; --k) {
            T& top = rem[static_cast<std::size_t>(k + d.degree())];
            if (top == T(0)) continue;
            if (top % lead != T(0))
                throw std::domain_error("inexact polynomial division step");
            T q = top / lead;
            for (int j = 0; j <= d.degree(); ++j)
                rem[static_cast<std::size_t>(k + j)] -= q * d.coeffs_[static_cast<std::size_t>(j)];
            quot[static_cast<std::size_t>(k)] = std::move(q);
        }
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    /// Exact quotient; throws if the division leaves a remainder.
    friend Polynomial exact_div(const Polynomial& a, const Polynomial& d) {
        auto [q, r] = divmod(a, d);
        if (!r.is_zero()) throw std::domain_error("polynomial division not exact");
        return q;
    }

    friend bool divides(const Polynomial& d, const Polynomial& a) {
        if (a.is_zero()) return true;
        if (d.is_zero()) return false;
        try {
            auto [q, r] = divmod(a, d);
            (void)q;
            return r.is_zero();
        } catch (const std::domain_error&) {
            return false;
        }
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const T& c = coeffs_[static_cast<std::size_t>(k)];
            if (c == T(0)) continue;
            bool neg = c < T(0);
            T mag = neg ? T(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            bool unit = (mag == T(1));
            if (!unit || k == 0) out += coeff_str(mag);
            if (k > 0) {
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    static std::string coeff_str(const T& v) {
        if constexpr (std::is_same_v<T, mpz_class>) {
            return v.get_str();
        } else {
            // Positive by construction; digits extracted manually so the same
            // path serves __int128.
            T x = v;
            if (x == T(0)) return "0";
            std::string s;
            while (x > T(0)) {
                s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(x % T(10))));
                x /= T(10);
            }
            return s;
        }
    }

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

/// Characteristic polynomials: tiny coefficients, machine integers suffice.
using IntPolynomial = Polynomial<std::int64_t>;

/// Weight-enumerator polynomials g_p(n, i): binomial-scale coefficients.
using BigPolynomial = Polynomial<mpz_class>;

template <typename To, typename From>
Polynomial<To> convert_poly(const Polynomial<From>& p) {
    std::vector<To> c;
    c.reserve(p.coeffs().size());
    for (const From& v : p.coeffs()) c.push_back(static_cast<To>(v));
    return Polynomial<To>(std::move(c));
}

inline BigPolynomial to_big(const IntPolynomial& p) {
    std::vector<mpz_class> c;
    c.reserve(p.coeffs().size());
    for (std::int64_t v : p.coeffs()) c.emplace_back(static_cast<long>(v));
    return BigPolynomial(std::move(c));
}

// --- exact integer polynomial gcd machinery (used by the square-free
// --- decomposition feeding the root finder) ---

inline mpz_class content(const BigPolynomial& p) {
    mpz_class g = 0;
    for (const mpz_class& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// Content-free part with positive leading coefficient.
inline BigPolynomial primitive_part(const BigPolynomial& p) {
    if (p.is_zero()) return p;
    mpz_class g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<mpz_class> c;
    c.reserve(p.coeffs().size());
    for (const mpz_class& v : p.coeffs()) c.push_back(v / g);
    return BigPolynomial(std::move(c));
}

/// Pseudo-remainder: remainder of lead(d)^(deg a - deg d + 1) * a by d.
inline BigPolynomial pseudo_rem(const BigPolynomial& a, const BigPolynomial& d) {
    BigPolynomial r = a;
    const int dd = d.degree();
    const mpz_class& lead = d.leading();
    while (!r.is_zero() && r.degree() >= dd) {
        BigPolynomial t = BigPolynomial::monomial(r.degree() - dd, r.leading());
        r = lead * r - t * d;
    }
    return r;
}

/// Primitive polynomial gcd over the integers (primitive PRS).
inline BigPolynomial poly_gcd(BigPolynomial a, BigPolynomial b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        BigPolynomial r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Yun square-free decomposition: returns factors (A_i, i) with
/// p ~ prod A_i^i up to a rational constant, each A_i square-free, pairwise
/// coprime, deg A_i >= 1.
inline std::vector<std::pair<BigPolynomial, int>> squarefree_decomposition(
    const BigPolynomial& p) {
    std::vector<std::pair<BigPolynomial, int>> factors;
    if (p.degree() < 1) return factors;
    BigPolynomial f = primitive_part(p);
    BigPolynomial d = poly_gcd(f, f.derivative());
    if (d.degree() == 0) {
        factors.emplace_back(f, 1);
        return factors;
    }
    BigPolynomial w = exact_div(f, d);
    BigPolynomial y = exact_div(f.derivative(), d);
    BigPolynomial z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        BigPolynomial g = poly_gcd(w, z);
        if (g.degree() > 0) factors.emplace_back(g, i);
        w = exact_div(w, g);
        y = exact_div(z, g);
        z = y - w.derivative();
        ++i;
    }
    return factors;
}

} // namespace smdt
