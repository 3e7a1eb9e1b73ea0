#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/kmp.hpp"
#include "smdt/pattern.hpp"
#include "smdt/polynomial.hpp"
#include "smdt/roots.hpp"

namespace smdt {

namespace detail {

inline void require_binary(const Pattern& p, const char* what) {
    if (p.sigma() != 2)
        throw AlphabetUnsupported(std::string(what) + " requires a binary alphabet");
}

inline std::int64_t narrow_int128(__int128 v) {
    if (v > static_cast<__int128>(std::numeric_limits<std::int64_t>::max()) ||
        v < static_cast<__int128>(std::numeric_limits<std::int64_t>::min()))
        throw std::overflow_error("characteristic polynomial coefficient overflow");
    return static_cast<std::int64_t>(v);
}

} // namespace detail

/// det(lambda I - T_p) by fraction-free (Bareiss) elimination over exact
/// integer polynomials. The pivots are the leading principal minors, which
/// are monic, so no pivoting is ever needed and every division is exact.
inline IntPolynomial charpoly_det(const Pattern& p) {
    detail::require_binary(p, "charpoly_det");
    using PP = Polynomial<__int128>;
    const TransferMatrix t = transfer_matrix(p);
    const int m = t.m();
    std::vector<std::vector<PP>> a(static_cast<std::size_t>(m),
                                   std::vector<PP>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<__int128> coeffs{-static_cast<__int128>(t.at(i + 1, j + 1))};
            if (i == j) coeffs.push_back(1);
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = PP(std::move(coeffs));
        }
    PP prev = PP::constant(1);
    for (int k = 0; k < m - 1; ++k) {
        const PP pivot = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j) {
                PP num = pivot * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                         a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                             a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    exact_div(num, prev);
            }
        prev = pivot;
    }
    const PP& det = a[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)];
    std::vector<std::int64_t> out;
    out.reserve(det.coeffs().size());
    for (__int128 v : det.coeffs()) out.push_back(detail::narrow_int128(v));
    return IntPolynomial(std::move(out));
}

/// Characteristic polynomial straight from the period set:
/// c_{m-k} = (-1)^{wt(p[1..k])} when k is a period, 0 otherwise.
inline IntPolynomial charpoly_periods(const Pattern& p) {
    detail::require_binary(p, "charpoly_periods");
    const int m = p.length();
    std::vector<std::int64_t> c(static_cast<std::size_t>(m) + 1, 0);
    c[static_cast<std::size_t>(m)] = 1;
    for (int k : periods(p).periods)
        c[static_cast<std::size_t>(m - k)] = (p.prefix_weight(k) % 2 == 0) ? 1 : -1;
    return IntPolynomial(std::move(c));
}

/// Characteristic polynomial by the prefix recurrence: each state q_i's
/// failure transition (reading the complement of p[i]) lands on q_{i-k+1},
/// where k is the smallest period of p[1..i-1] destroyed by p[i], or k = i
/// when nothing is destroyed. Then
///   P_i = lambda P_{i-1} - (-1)^{wt(p[1..k])} P_{i-k}   (k < i)
///   P_i = lambda P_{i-1} + (-1)^{wt(p[1..i])}           (k = i).
inline IntPolynomial charpoly_recurrence(const Pattern& p) {
    detail::require_binary(p, "charpoly_recurrence");
    const int m = p.length();
    const KmpAutomaton a = build_automaton(p);
    const IntPolynomial lambda = IntPolynomial::monomial(1);
    std::vector<IntPolynomial> pref(static_cast<std::size_t>(m) + 1);
    pref[0] = IntPolynomial::constant(1);
    for (int i = 1; i <= m; ++i) {
        const Symbol wrong = static_cast<Symbol>(1 - p.at(i));
        const int target = a.next(i, wrong);
        const int k = i - target + 1;
        const auto sign = [&](int weight) -> std::int64_t {
            return (weight % 2 == 0) ? 1 : -1;
        };
        if (k == i) {
            pref[static_cast<std::size_t>(i)] =
                lambda * pref[static_cast<std::size_t>(i - 1)] +
                IntPolynomial::constant(sign(p.prefix_weight(i)));
        } else {
            pref[static_cast<std::size_t>(i)] =
                lambda * pref[static_cast<std::size_t>(i - 1)] -
                sign(p.prefix_weight(k)) * pref[static_cast<std::size_t>(i - k)];
        }
    }
    return pref[static_cast<std::size_t>(m)];
}

/// gbar(n, m) for n = 0..n_max by the x = -1 dynamic program over the
/// automaton states 1..m (the accepting state never feeds back).
inline std::vector<mpz_class> gbar_last_state_sequence(const Pattern& p, int n_max) {
    detail::require_binary(p, "gbar sequences");
    const int m = p.length();
    const KmpAutomaton a = build_automaton(p);
    std::vector<mpz_class> v(static_cast<std::size_t>(m), 0), w;
    v[0] = 1;
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(v[static_cast<std::size_t>(m - 1)]);
    for (int n = 1; n <= n_max; ++n) {
        w.assign(static_cast<std::size_t>(m), 0);
        for (int i = 1; i <= m; ++i) {
            if (v[static_cast<std::size_t>(i - 1)] == 0) continue;
            for (Symbol sym = 0; sym < 2; ++sym) {
                const int to = a.next(i, sym);
                if (to > m) continue;
                if (sym == 1)
                    w[static_cast<std::size_t>(to - 1)] -= v[static_cast<std::size_t>(i - 1)];
                else
                    w[static_cast<std::size_t>(to - 1)] += v[static_cast<std::size_t>(i - 1)];
            }
        }
        v.swap(w);
        out.push_back(v[static_cast<std::size_t>(m - 1)]);
    }
    return out;
}

/// Verifies the Cayley-Hamilton recurrence
/// gbar(n+m, m) + c_{m-1} gbar(n+m-1, m) + ... + c_0 gbar(n, m) = 0
/// against the automaton dynamic program, for all n <= n_max - m.
inline bool g_recurrence_check(const Pattern& p, int n_max) {
    const IntPolynomial cp = charpoly_det(p);
    const int m = p.length();
    const auto seq = gbar_last_state_sequence(p, n_max);
    for (int n = 0; n + m <= n_max; ++n) {
        mpz_class acc = 0;
        for (int k = 0; k <= m; ++k)
            acc += static_cast<long>(cp.coeff(k)) * seq[static_cast<std::size_t>(n + k)];
        if (acc != 0) return false;
    }
    return true;
}

/// Distinct roots sorted by descending modulus, with multiplicities, and the
/// matched dominant-root case:
///   1: |l1| > |l2|
///   2: |l1| = |l2| > |l3|, l1 = conj(l2)
///   3: |l1| = |l2| = |l3| > |l4|, one real, the other two conjugate
///   0: none of the above (including separations inside the tolerance band).
struct RootProfile {
    std::vector<RootEstimate> roots;
    int dominant_case = 0;
    double tolerance = 1e-9;
};

inline RootProfile root_profile(const IntPolynomial& poly, double tol = 1e-9) {
    if (!poly.is_monic() || poly.degree() < 1)
        throw PreconditionViolated("root_profile expects a monic polynomial of degree >= 1");
    RootProfile prof;
    prof.tolerance = tol;
    prof.roots = find_roots(to_big(poly));

    const auto& r = prof.roots;
    const auto mod = [&](std::size_t i) { return r[i].modulus; };
    const auto close = [&](double a, double b) {
        return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
    };
    const auto is_real = [&](std::size_t i) {
        return std::abs(r[i].value.imag()) <= tol * std::max(1.0, std::abs(r[i].value.real()));
    };
    const auto conjugates = [&](std::size_t i, std::size_t j) {
        return std::abs(r[i].value - std::conj(r[j].value)) <=
               tol * std::max(1.0, std::abs(r[i].value));
    };
    const std::size_t count = r.size();

    std::size_t top = 1;
    while (top < count && close(mod(top), mod(0))) ++top;
    const bool separated_after_top =
        (top == count) || (mod(top - 1) - mod(top) > tol * std::max(mod(top - 1), 1.0));

    if (!separated_after_top) {
        prof.dominant_case = 0;
    } else if (top == 1) {
        prof.dominant_case = 1;
    } else if (top == 2 && conjugates(0, 1) && !is_real(0)) {
        prof.dominant_case = 2;
    } else if (top == 3) {
        // One real root and a conjugate pair sharing the top modulus.
        for (std::size_t real_idx = 0; real_idx < 3; ++real_idx) {
            const std::size_t a = (real_idx + 1) % 3, b = (real_idx + 2) % 3;
            if (is_real(real_idx) && !is_real(a) && conjugates(a, b)) {
                prof.dominant_case = 3;
                break;
            }
        }
    }
    return prof;
}

/// Horizon-bounded evasiveness evidence from the algebraic route: the
/// dominant-root case guarantees eventual nonvanishing of gbar(n, m), and the
/// sequence is checked exactly up to the horizon.
struct SkolemVerdict {
    std::string pattern;
    IntPolynomial charpoly;
    int root_case = 0;
    int horizon = 0;
    std::optional<int> nonzero_from; // gbar(n, m) != 0 for all checked n >= this
    std::string verdict;             // "evasive-by-algebra" | "inconclusive"
};

inline SkolemVerdict skolem_verdict(const Pattern& p, int horizon = 2000,
                                    double tol = 1e-9) {
    detail::require_binary(p, "skolem_verdict");
    const int m = p.length();
    SkolemVerdict out;
    out.pattern = p.to_string();
    out.horizon = horizon;
    out.charpoly = charpoly_periods(p);
    out.root_case = root_profile(out.charpoly, tol).dominant_case;

    // Seed gbar(0..m-1, m) from the dynamic program, then extend by the
    // Cayley-Hamilton recurrence.
    std::vector<mpz_class> u = gbar_last_state_sequence(p, std::min(m - 1, horizon));
    u.reserve(static_cast<std::size_t>(horizon) + 1);
    for (int n = m; n <= horizon; ++n) {
        mpz_class acc = 0;
        for (int k = 0; k < m; ++k)
            acc -= static_cast<long>(out.charpoly.coeff(k)) *
                   u[static_cast<std::size_t>(n - m + k)];
        u.push_back(std::move(acc));
    }

    int last_zero = -1;
    for (int n = 0; n < static_cast<int>(u.size()); ++n)
        if (u[static_cast<std::size_t>(n)] == 0) last_zero = n;
    if (last_zero + 1 <= horizon) out.nonzero_from = last_zero + 1;

    const bool long_clean_tail =
        out.nonzero_from && *out.nonzero_from <= horizon - 1000;
    out.verdict = (out.root_case != 0 && long_clean_tail) ? "evasive-by-algebra"
                                                          : "inconclusive";
    return out;
}

} // namespace smdt
