#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/kmp.hpp"
#include "smdt/pattern.hpp"
#include "smdt/tuza.hpp"

namespace smdt {

/// Text state of the query game: every cell is a known symbol or UNKNOWN.
struct PartialString {
    static constexpr int UNKNOWN = -1;

    int n = 0;
    int sigma = 2;
    std::vector<std::int8_t> cells; // UNKNOWN or a symbol in [0, sigma)

    static PartialString all_unknown(int n, int sigma) {
        PartialString ps;
        ps.n = n;
        ps.sigma = sigma;
        ps.cells.assign(static_cast<std::size_t>(n), UNKNOWN);
        return ps;
    }

    /// "1?0?" style: digits are known cells, '?' is unknown.
    static PartialString parse(const std::string& text, int sigma = 2) {
        PartialString ps;
        ps.n = static_cast<int>(text.size());
        ps.sigma = sigma;
        for (char ch : text) {
            if (ch == '?') {
                ps.cells.push_back(UNKNOWN);
            } else if (ch >= '0' && ch <= '9' && (ch - '0') < sigma) {
                ps.cells.push_back(static_cast<std::int8_t>(ch - '0'));
            } else {
                throw InvalidPattern("invalid partial-string character");
            }
        }
        return ps;
    }

    /// Canonical encoding: each cell in ceil(log2(sigma+1)) bits, UNKNOWN = 0,
    /// symbol s = s+1. Equal assignments encode identically.
    std::uint64_t packed_key() const {
        int bits = 1;
        while ((1 << bits) < sigma + 1) ++bits;
        std::uint64_t key = 0;
        for (int i = n - 1; i >= 0; --i) {
            const std::int8_t c = cells[static_cast<std::size_t>(i)];
            key = (key << bits) | static_cast<std::uint64_t>(c == UNKNOWN ? 0 : c + 1);
        }
        return key;
    }
};

/// True iff some completion of ps contains p: scans every window for one
/// compatible with all known cells.
inline bool can_occur(const PartialString& ps, const Pattern& p) {
    const int n = ps.n;
    const int m = p.length();
    for (int start = 1; start + m - 1 <= n; ++start) {
        bool compatible = true;
        for (int k = 1; k <= m && compatible; ++k) {
            const std::int8_t cell = ps.cells[static_cast<std::size_t>(start + k - 2)];
            compatible = (cell == PartialString::UNKNOWN || cell == p.at(k));
        }
        if (compatible) return true;
    }
    return false;
}

/// True iff every completion of ps contains p: a forward reachability DP over
/// (position, KMP state) looks for a completion that never enters the
/// accepting state.
inline bool must_occur(const PartialString& ps, const Pattern& p) {
    const KmpAutomaton a = build_automaton(p);
    const int m = p.length();
    if (m > 62) throw InstanceTooLarge("pattern too long for the state mask");
    std::uint64_t mask = 1; // bit i-1 <-> live in state q_i
    for (int pos = 0; pos < ps.n; ++pos) {
        const std::int8_t cell = ps.cells[static_cast<std::size_t>(pos)];
        std::uint64_t next_mask = 0;
        for (std::uint64_t rest = mask; rest;) {
            const int bit = std::countr_zero(rest);
            rest &= rest - 1;
            const int state = bit + 1;
            if (cell == PartialString::UNKNOWN) {
                for (Symbol sym = 0; sym < ps.sigma; ++sym) {
                    const int to = a.next(state, sym);
                    if (to <= m) next_mask |= std::uint64_t(1) << (to - 1);
                }
            } else {
                const int to = a.next(state, static_cast<Symbol>(cell));
                if (to <= m) next_mask |= std::uint64_t(1) << (to - 1);
            }
        }
        mask = next_mask;
        if (mask == 0) return true; // every completion already hit the pattern
    }
    return false;
}

struct ComplexityReport {
    std::string pattern;
    int n = 0;
    int exact_value = 0;
    int rivest_lower = 0;  // n - m + 1
    int period_upper = 0;  // n - (n mod c)
    bool settled = false;  // no Tuza property-1/2 witness exists for p
};

struct OracleOptions {
    // Memo entries are one byte per reachable assignment, (sigma+1)^n of
    // them. The default admits n <= 14 at sigma = 2.
    std::size_t max_states = 4782969; // 3^14
};

namespace detail {

/// Memoized minimax over partial strings. The game value of a state is 0 when
/// the predicate is constant over completions, else 1 + min over unknown
/// positions of the max over symbols of the child value.
class MinimaxSolver {
  public:
    MinimaxSolver(const Pattern& p, int n, const OracleOptions& opts)
        : p_(p), n_(n), sigma_(p.sigma()), m_(p.length()),
          automaton_(build_automaton(p)) {
        std::uint64_t states = 1;
        for (int i = 0; i < n_; ++i) {
            states *= static_cast<std::uint64_t>(sigma_ + 1);
            if (states > opts.max_states)
                throw InstanceTooLarge(
                    "minimax state space exceeds the configured limit (" +
                    std::to_string(opts.max_states) + " states)");
        }
        pow_.resize(static_cast<std::size_t>(n_) + 1);
        pow_[0] = 1;
        for (int i = 1; i <= n_; ++i)
            pow_[static_cast<std::size_t>(i)] =
                pow_[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(sigma_ + 1);
        memo_.assign(states, UNSET);
        cells_.assign(static_cast<std::size_t>(n_), PartialString::UNKNOWN);
        if (m_ <= 16) build_mask_tables();
    }

    int solve() { return value(0); }

  private:
    static constexpr std::uint8_t UNSET = 0xFF;

    void build_mask_tables() {
        const std::size_t masks = std::size_t(1) << m_;
        for (Symbol sym = 0; sym < sigma_; ++sym) {
            std::vector<std::uint32_t> tbl(masks, 0);
            std::vector<std::uint32_t> single(static_cast<std::size_t>(m_), 0);
            for (int state = 1; state <= m_; ++state) {
                const int to = automaton_.next(state, sym);
                if (to <= m_) single[static_cast<std::size_t>(state - 1)] =
                    std::uint32_t(1) << (to - 1);
            }
            for (std::size_t mask = 1; mask < masks; ++mask) {
                const std::size_t low = mask & (~mask + 1);
                tbl[mask] = tbl[mask ^ low] |
                            single[static_cast<std::size_t>(std::countr_zero(low))];
            }
            mask_step_.push_back(std::move(tbl));
        }
    }

    bool can_occur_now() const {
        for (int start = 0; start + m_ <= n_; ++start) {
            bool compatible = true;
            for (int k = 0; k < m_ && compatible; ++k) {
                const std::int8_t cell = cells_[static_cast<std::size_t>(start + k)];
                compatible = (cell == PartialString::UNKNOWN || cell == p_.at(k + 1));
            }
            if (compatible) return true;
        }
        return false;
    }

    bool must_occur_now() const {
        if (mask_step_.empty()) {
            PartialString ps;
            ps.n = n_;
            ps.sigma = sigma_;
            ps.cells = cells_;
            return must_occur(ps, p_);
        }
        std::uint32_t mask = 1;
        for (int pos = 0; pos < n_; ++pos) {
            const std::int8_t cell = cells_[static_cast<std::size_t>(pos)];
            std::uint32_t next_mask = 0;
            if (cell == PartialString::UNKNOWN) {
                for (Symbol sym = 0; sym < sigma_; ++sym)
                    next_mask |= mask_step_[sym][mask];
            } else {
                next_mask = mask_step_[static_cast<std::size_t>(cell)][mask];
            }
            mask = next_mask;
            if (mask == 0) return true;
        }
        return false;
    }

    std::uint8_t value(std::uint64_t rank) {
        std::uint8_t& slot = memo_[rank];
        if (slot != UNSET) return slot;
        if (!can_occur_now() || must_occur_now()) return slot = 0;
        // Querying position i splits on the sigma possible answers; the
        // adversary picks the worst.
        std::uint8_t best = static_cast<std::uint8_t>(n_); // value <= #unknowns <= n
        for (int i = 0; i < n_; ++i) {
            if (cells_[static_cast<std::size_t>(i)] != PartialString::UNKNOWN) continue;
            std::uint8_t worst = 0;
            for (Symbol sym = 0; sym < sigma_; ++sym) {
                cells_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(sym);
                const std::uint8_t v = value(rank + pow_[static_cast<std::size_t>(i)] *
                                                        (static_cast<std::uint64_t>(sym) + 1));
                cells_[static_cast<std::size_t>(i)] = PartialString::UNKNOWN;
                worst = std::max(worst, v);
                if (worst + 1 >= best) break; // cannot improve the min
            }
            best = std::min(best, static_cast<std::uint8_t>(worst + 1));
            if (best == 1) break; // value >= 1 here, so 1 is optimal
        }
        return slot = best;
    }

    const Pattern& p_;
    int n_;
    int sigma_;
    int m_;
    KmpAutomaton automaton_;
    std::vector<std::uint64_t> pow_;
    std::vector<std::uint8_t> memo_;
    mutable std::vector<std::int8_t> cells_;
    std::vector<std::vector<std::uint32_t>> mask_step_;
};

} // namespace detail

/// Exact D_p(n) by memoized minimax.
inline int exact_complexity_value(const Pattern& p, int n,
                                  const OracleOptions& opts = {}) {
    if (n == 0) return 0;
    if (n > 200) throw InstanceTooLarge("n too large for the game oracle");
    detail::MinimaxSolver solver(p, n, opts);
    return solver.solve();
}

/// D_p(n) together with the Rivest lower bound, the period upper bound, and
/// whether the combinatorial criteria settle this pattern asymptotically.
inline ComplexityReport exact_complexity(const Pattern& p, int n,
                                         const OracleOptions& opts = {}) {
    ComplexityReport report;
    report.pattern = p.to_string();
    report.n = n;
    report.exact_value = exact_complexity_value(p, n, opts);
    report.rivest_lower = n - p.length() + 1;
    report.period_upper = n - n % periods(p).gcd_c;
    report.settled = tuza_verdict(p).lower_bound_applies;
    return report;
}

/// Table of (n, D_p(n)) for n = 1..n_max; the evasive flag marks D_p(n) = n.
struct CertificateRow {
    int n = 0;
    int complexity = 0;
    bool full_read = false;
};

inline std::vector<CertificateRow> evasive_certificate(
    const Pattern& p, int n_max, const OracleOptions& opts = {}) {
    std::vector<CertificateRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const int d = exact_complexity_value(p, n, opts);
        rows.push_back({n, d, d == n});
    }
    return rows;
}

} // namespace smdt
