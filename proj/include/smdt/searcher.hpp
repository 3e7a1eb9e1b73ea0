#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/pattern.hpp"

namespace smdt {

/// Query-counting wrapper around a hidden text s[1..n].
///
/// Repeated queries to the same position are served from the log and counted
/// once. Positions beyond the end return a sentinel symbol outside the
/// alphabet (in particular different from p[m]) and are not counted.
class TextOracle {
  public:
    TextOracle(std::vector<Symbol> text, int sigma)
        : text_(std::move(text)), sigma_(sigma),
          seen_(text_.size(), false) {}

    int length() const { return static_cast<int>(text_.size()); }
    int sigma() const { return sigma_; }
    Symbol sentinel() const { return static_cast<Symbol>(sigma_); }

    /// 1-based position query.
    Symbol query(int pos) {
        assert(pos >= 1);
        if (pos > length()) return sentinel();
        auto idx = static_cast<std::size_t>(pos - 1);
        if (!seen_[idx]) {
            seen_[idx] = true;
            log_.push_back(pos);
        }
        return text_[idx];
    }

    int queries_used() const { return static_cast<int>(log_.size()); }
    bool queried(int pos) const {
        return pos >= 1 && pos <= length() && seen_[static_cast<std::size_t>(pos - 1)];
    }

    /// Distinct in-range positions in the order first queried.
    const std::vector<int>& query_log() const { return log_; }

  private:
    std::vector<Symbol> text_;
    int sigma_;
    std::vector<bool> seen_;
    std::vector<int> log_;
};

struct SearchOutcome {
    bool found = false;
    std::optional<int> first_occurrence; // 1-based start of the matched window
    int queries_used = 0;
};

namespace detail {

/// Is s[i..j] (already-queried cells, sentinel past the end) a suffix of p?
inline bool window_is_suffix(TextOracle& oracle, const Pattern& p, int i, int j) {
    const int len = j - i + 1;
    const int m = p.length();
    if (len > m) return false;
    for (int k = 0; k < len; ++k)
        if (oracle.query(i + k) != p.at(m - len + 1 + k)) return false;
    return true;
}

inline bool window_equals(TextOracle& oracle, const Pattern& p, int i) {
    for (int k = 1; k <= p.length(); ++k)
        if (oracle.query(i + k - 1) != p.at(k)) return false;
    return true;
}

/// All cells of s[i..i+m-1] have a value on record (positions past the end
/// count as known: they hold the sentinel).
inline bool window_known(const TextOracle& oracle, int i, int m) {
    for (int k = 0; k < m; ++k) {
        const int pos = i + k;
        if (pos <= oracle.length() && !oracle.queried(pos)) return false;
    }
    return true;
}

} // namespace detail

/// Full-read reference matcher: scans every window, returns the leftmost
/// occurrence.
inline SearchOutcome naive_find(const std::vector<Symbol>& s, const Pattern& p) {
    const int n = static_cast<int>(s.size());
    const int m = p.length();
    SearchOutcome out;
    out.queries_used = n;
    for (int start = 1; start + m - 1 <= n; ++start) {
        bool match = true;
        for (int k = 0; k < m && match; ++k)
            match = (s[static_cast<std::size_t>(start - 1 + k)] == p.at(k + 1));
        if (match) {
            out.found = true;
            out.first_occurrence = start;
            return out;
        }
    }
    return out;
}

/// Adaptive search for a bifix-free pattern. Queries in blocks of m: each
/// block either certifies an occurrence or eliminates a length-m prefix of
/// the remaining text, so at most n - (n mod m) characters are examined.
inline SearchOutcome find_bifix_free(TextOracle& oracle, const Pattern& p) {
    if (!is_bifix_free(p))
        throw PatternNotBifixFree("find_bifix_free requires a bifix-free pattern");
    const int n = oracle.length();
    const int m = p.length();
    int offset = 0;
    while (n - offset >= m) {
        int i = m, j = m; // indices local to s[offset+1..n]
        oracle.query(offset + m);
        while (j - i != m - 1) {
            if (detail::window_is_suffix(oracle, p, offset + i, offset + j)) {
                oracle.query(offset + i - 1);
                --i;
            } else {
                oracle.query(offset + j + 1);
                ++j;
            }
        }
        if (detail::window_equals(oracle, p, offset + i))
            return {true, offset + i, oracle.queries_used()};
        offset += m; // discard the eliminated prefix and restart
    }
    return {false, std::nullopt, oracle.queries_used()};
}

/// Adaptive search for an arbitrary pattern, advancing in blocks of
/// c = gcd(Period(p)) and querying at most n - (n mod c) characters. When the
/// pattern occurs, the leftmost occurrence is reported.
inline SearchOutcome find_general(TextOracle& oracle, const Pattern& p) {
    const int n = oracle.length();
    const int m = p.length();
    const int c = periods(p).gcd_c;
    if (n < m) return {false, std::nullopt, oracle.queries_used()};

    // Opening block, identical to one bifix-free round.
    int i = m, j = m;
    oracle.query(m);
    while (j - i != m - 1) {
        if (detail::window_is_suffix(oracle, p, i, j)) {
            oracle.query(i - 1);
            --i;
        } else {
            oracle.query(j + 1);
            ++j;
        }
    }
    if (detail::window_equals(oracle, p, i))
        return {true, i, oracle.queries_used()};

    // Blocks of c new characters each. For c >= 2 the opening query of a
    // block counts toward its budget of c; with c = 1 that accounting would
    // end every block immediately and lose occurrences straddling unqueried
    // cells, so there only in-block queries count (the n-query budget is
    // vacuous at c = 1 regardless).
    for (int l = m + c; l <= n; l += c) {
        i = l;
        j = l;
        int base = oracle.queries_used();
        oracle.query(l);
        if (c == 1) base = oracle.queries_used();
        while (true) {
            if (j - i == m - 1) break;
            if (detail::window_is_suffix(oracle, p, i, j)) {
                oracle.query(i - 1);
                --i;
            } else {
                oracle.query(j + 1);
                ++j;
            }
            if (oracle.queries_used() - base >= c) break;
        }
        // The window test reaches back to s[j-m+1..j]; cells left of i may be
        // known from earlier blocks. It is evaluated only when every cell of
        // the window has a recorded value.
        if (detail::window_known(oracle, j - m + 1, m) &&
            detail::window_equals(oracle, p, j - m + 1))
            return {true, j - m + 1, oracle.queries_used()};
    }
    return {false, std::nullopt, oracle.queries_used()};
}

/// Max queries of find_general over every length-n text (sigma^n of them),
/// together with the period budget n - (n mod c).
struct WorstCase {
    int max_queries = 0;
    int budget = 0;
    std::uint64_t texts = 0;
};

inline WorstCase worst_case_queries(const Pattern& p, int n) {
    const int sigma = p.sigma();
    const int c = periods(p).gcd_c;
    WorstCase out;
    out.budget = n - (n % c);
    std::uint64_t total = 1;
    for (int k = 0; k < n; ++k) total *= static_cast<std::uint64_t>(sigma);
    out.texts = total;
    std::vector<Symbol> text(static_cast<std::size_t>(n), 0);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        std::uint64_t r = rank;
        for (int k = 0; k < n; ++k) {
            text[static_cast<std::size_t>(k)] = static_cast<Symbol>(r % sigma);
            r /= sigma;
        }
        TextOracle oracle(text, sigma);
        const SearchOutcome got = find_general(oracle, p);
        out.max_queries = std::max(out.max_queries, got.queries_used);
        (void)got;
    }
    return out;
}

} // namespace smdt
