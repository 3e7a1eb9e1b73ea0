#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/pattern.hpp"
#include "smdt/polynomial.hpp"

namespace smdt {

/// Matching automaton of a pattern p of length m, states numbered 1..m+1.
///
/// State q_i (i <= m) means the longest matched prefix of p so far has length
/// i-1 and p has not been found yet; q_{m+1} is reached as soon as p occurs
/// and is absorbing.
class KmpAutomaton {
  public:
    KmpAutomaton(int m, int sigma, std::vector<int> delta)
        : m_(m), sigma_(sigma), delta_(std::move(delta)) {}

    int m() const { return m_; }
    int sigma() const { return sigma_; }
    int state_count() const { return m_ + 1; }

    /// delta(state, symbol), both the state and the result being 1-based.
    int next(int state, Symbol a) const {
        return delta_[static_cast<std::size_t>(state - 1) * sigma_ + a];
    }

    int accepting_state() const { return m_ + 1; }

  private:
    int m_;
    int sigma_;
    std::vector<int> delta_; // (m+1) x sigma, row-major
};

/// Builds the KMP automaton of p. For i <= m, reading p[i] in q_i advances to
/// q_{i+1}; any other symbol a falls back to 1 + |longest prefix of p that is
/// a suffix of p[1..i-1]a|. q_{m+1} loops on every symbol.
inline KmpAutomaton build_automaton(const Pattern& p) {
    const int m = p.length();
    const int sigma = p.sigma();
    std::vector<int> delta(static_cast<std::size_t>(m + 1) * sigma, 0);
    auto cell = [&](int state, int a) -> int& {
        return delta[static_cast<std::size_t>(state - 1) * sigma + a];
    };
    // next[j][a] with j = number of matched characters (state q_{j+1}).
    for (int a = 0; a < sigma; ++a)
        cell(1, a) = (p.at(1) == a) ? 2 : 1;
    const auto border = detail::border_array(p.symbols());
    for (int j = 1; j < m; ++j) {
        const int fallback = border[static_cast<std::size_t>(j - 1)]; // border of p[1..j]
        for (int a = 0; a < sigma; ++a)
            cell(j + 1, a) = (p.at(j + 1) == a) ? j + 2 : cell(fallback + 1, a);
    }
    for (int a = 0; a < sigma; ++a)
        cell(m + 1, a) = m + 1;
    return KmpAutomaton(m, sigma, std::move(delta));
}

/// Final state after consuming s from q_1. Equals m+1 iff s contains p.
inline int run(const KmpAutomaton& a, std::span<const Symbol> s) {
    int state = 1;
    for (Symbol c : s) state = a.next(state, c);
    return state;
}

inline int run(const KmpAutomaton& a, const std::vector<Symbol>& s) {
    return run(a, std::span<const Symbol>(s));
}

/// The signed one-step transfer matrix T_p on states 1..m (binary alphabet):
/// entry (j, i) sums (-1)^[a=1] over symbols a with delta(i, a) = j. The
/// transition of q_m into the accepting state is not represented, so
/// gbar(n+1) = T_p gbar(n) holds on the first m coordinates.
class TransferMatrix {
  public:
    TransferMatrix(int m, std::vector<std::int64_t> entries)
        : m_(m), entries_(std::move(entries)) {}

    int m() const { return m_; }

    /// 1-based (row, col).
    std::int64_t at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row - 1) * m_ + (col - 1)];
    }

    const std::vector<std::int64_t>& entries() const { return entries_; }

    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const {
        std::vector<mpz_class> out(static_cast<std::size_t>(m_), mpz_class(0));
        for (int r = 1; r <= m_; ++r)
            for (int c = 1; c <= m_; ++c) {
                const std::int64_t e = at(r, c);
                if (e == 0) continue;
                if (e > 0)
                    out[static_cast<std::size_t>(r - 1)] +=
                        static_cast<long>(e) * v[static_cast<std::size_t>(c - 1)];
                else
                    out[static_cast<std::size_t>(r - 1)] -=
                        static_cast<long>(-e) * v[static_cast<std::size_t>(c - 1)];
            }
        return out;
    }

  private:
    int m_;
    std::vector<std::int64_t> entries_; // m x m, row-major
};

/// T_p for a binary pattern; rejects sigma != 2.
inline TransferMatrix transfer_matrix(const Pattern& p) {
    if (p.sigma() != 2)
        throw AlphabetUnsupported("transfer matrix requires a binary alphabet");
    const int m = p.length();
    const KmpAutomaton a = build_automaton(p);
    std::vector<std::int64_t> entries(static_cast<std::size_t>(m) * m, 0);
    for (int i = 1; i <= m; ++i)
        for (Symbol sym = 0; sym < 2; ++sym) {
            const int j = a.next(i, sym);
            if (j > m) continue; // accepting transition not part of T_p
            entries[static_cast<std::size_t>(j - 1) * m + (i - 1)] += (sym == 1) ? -1 : 1;
        }
    return TransferMatrix(m, std::move(entries));
}

/// Weight-enumerator row at a fixed length: g(n, i) is the polynomial
/// sum of x^{wt(s)} over the length-n binary strings driving the automaton
/// to state q_i, and gbar(n, i) its value at x = -1.
struct GTable {
    int n = 0;
    int m = 0;
    std::vector<BigPolynomial> g;   // index i-1 for states i = 1..m+1
    std::vector<mpz_class> gbar;    // g evaluated at x = -1

    const BigPolynomial& poly(int state) const {
        return g[static_cast<std::size_t>(state - 1)];
    }
    const mpz_class& bar(int state) const {
        return gbar[static_cast<std::size_t>(state - 1)];
    }
};

/// Dynamic program over the automaton: g(0, 1) = 1 and
/// g(n+1, j) = sum over (i, a) with delta(i, a) = j of x^[a=1] g(n, i).
inline GTable g_table(const Pattern& p, int n) {
    if (p.sigma() != 2)
        throw AlphabetUnsupported("g tables are defined for binary patterns");
    const int m = p.length();
    const KmpAutomaton a = build_automaton(p);
    std::vector<BigPolynomial> cur(static_cast<std::size_t>(m + 1));
    cur[0] = BigPolynomial::constant(1);
    const BigPolynomial x = BigPolynomial::monomial(1);
    for (int step = 0; step < n; ++step) {
        std::vector<BigPolynomial> nxt(static_cast<std::size_t>(m + 1));
        for (int i = 1; i <= m + 1; ++i) {
            const BigPolynomial& gi = cur[static_cast<std::size_t>(i - 1)];
            if (gi.is_zero()) continue;
            for (Symbol sym = 0; sym < 2; ++sym) {
                const int j = a.next(i, sym);
                BigPolynomial& target = nxt[static_cast<std::size_t>(j - 1)];
                target = target + (sym == 1 ? x * gi : gi);
            }
        }
        cur = std::move(nxt);
    }
    GTable out;
    out.n = n;
    out.m = m;
    out.g = std::move(cur);
    out.gbar.reserve(static_cast<std::size_t>(m + 1));
    const mpz_class minus_one(-1);
    for (const BigPolynomial& poly : out.g) out.gbar.push_back(poly.evaluate(minus_one));
    return out;
}

} // namespace smdt
