#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "smdt/errors.hpp"

namespace smdt {

using Symbol = std::uint8_t;

/// A pattern over the integer alphabet {0, ..., sigma-1}.
///
/// Positions are 1-based in the public API: at(1) is the first symbol and
/// at(length()) the last. Internal storage is a plain 0-based vector.
class Pattern {
  public:
    Pattern(std::vector<Symbol> symbols, int sigma)
        : symbols_(std::move(symbols)), sigma_(sigma) {
        if (symbols_.empty())
            throw InvalidPattern("pattern must have length >= 1");
        if (sigma_ < 2)
            throw InvalidPattern("alphabet size must be >= 2");
        for (Symbol s : symbols_)
            if (s >= sigma_)
                throw InvalidPattern("symbol out of range for alphabet size " +
                                     std::to_string(sigma_));
    }

    /// Parses a digit string such as "1010". Each character must be a decimal
    /// digit; the alphabet size defaults to max(2, largest digit + 1) and can
    /// be widened (never narrowed) with an explicit sigma.
    static Pattern parse(const std::string& text, int sigma = 0) {
        if (text.empty())
            throw InvalidPattern("pattern must have length >= 1");
        std::vector<Symbol> syms;
        syms.reserve(text.size());
        int max_digit = 0;
        for (char ch : text) {
            if (ch < '0' || ch > '9')
                throw InvalidPattern(std::string("invalid pattern character '") +
                                     ch + "' (digits 0-9 only)");
            int d = ch - '0';
            max_digit = std::max(max_digit, d);
            syms.push_back(static_cast<Symbol>(d));
        }
        int inferred = std::max(2, max_digit + 1);
        if (sigma == 0) sigma = inferred;
        return Pattern(std::move(syms), sigma);
    }

    int length() const { return static_cast<int>(symbols_.size()); }
    int sigma() const { return sigma_; }

    /// 1-based access, matching the p[i] convention used throughout.
    Symbol at(int i) const { return symbols_[static_cast<std::size_t>(i - 1)]; }

    const std::vector<Symbol>& symbols() const { return symbols_; }

    /// Substring p[i..j], 1-based inclusive.
    std::vector<Symbol> slice(int i, int j) const {
        return {symbols_.begin() + (i - 1), symbols_.begin() + j};
    }

    /// Number of 1s in p[1..k]. Only meaningful for binary patterns.
    int prefix_weight(int k) const {
        int w = 0;
        for (int i = 1; i <= k; ++i) w += (at(i) == 1);
        return w;
    }

    std::string to_string() const {
        std::string out;
        out.reserve(symbols_.size());
        for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
        return out;
    }

    bool operator==(const Pattern& other) const = default;

  private:
    std::vector<Symbol> symbols_;
    int sigma_;
};

/// The set Period(p) together with c = gcd(Period(p)).
///
/// k is a period of p when p[i] = p[i+k] for all 1 <= i <= m-k; m itself is
/// always a period, so the set is nonempty and c divides m.
struct PeriodSet {
    std::vector<int> periods; // ascending, each in [1, m], m always present
    int gcd_c = 0;

    bool contains(int k) const {
        return std::binary_search(periods.begin(), periods.end(), k);
    }
};

namespace detail {

/// Border array of s: border[i] = length of the longest proper prefix of
/// s[0..i] (0-based, inclusive) that is also a suffix of it. Standard KMP
/// prefix-function construction.
inline std::vector<int> border_array(const std::vector<Symbol>& s) {
    const int m = static_cast<int>(s.size());
    std::vector<int> border(static_cast<std::size_t>(m), 0);
    int k = 0;
    for (int i = 1; i < m; ++i) {
        while (k > 0 && s[static_cast<std::size_t>(i)] != s[static_cast<std::size_t>(k)])
            k = border[static_cast<std::size_t>(k - 1)];
        if (s[static_cast<std::size_t>(i)] == s[static_cast<std::size_t>(k)]) ++k;
        border[static_cast<std::size_t>(i)] = k;
    }
    return border;
}

/// All bifix lengths of s (including |s|), via the border chain.
inline std::vector<int> bifix_lengths(const std::vector<Symbol>& s) {
    const int m = static_cast<int>(s.size());
    std::vector<int> lengths;
    lengths.push_back(m);
    const auto border = border_array(s);
    int l = border[static_cast<std::size_t>(m - 1)];
    while (l > 0) {
        lengths.push_back(l);
        l = border[static_cast<std::size_t>(l - 1)];
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

} // namespace detail

/// Period(p) and its gcd. Uses the border chain: k < m is a period iff p has
/// a bifix of length m - k.
inline PeriodSet periods(const Pattern& p) {
    const int m = p.length();
    PeriodSet out;
    for (int l : detail::bifix_lengths(p.symbols()))
        if (l < m) out.periods.push_back(m - l);
    out.periods.push_back(m);
    std::sort(out.periods.begin(), out.periods.end());
    out.gcd_c = 0;
    for (int k : out.periods) out.gcd_c = std::gcd(out.gcd_c, k);
    return out;
}

/// All bifix lengths of p: { l in [1, m] : p[1..l] = p[m-l+1..m] }.
/// Computed by direct prefix/suffix comparison, independently of periods().
inline std::vector<int> bifixes(const Pattern& p) {
    const int m = p.length();
    std::vector<int> out;
    for (int l = 1; l <= m; ++l) {
        bool equal = true;
        for (int i = 1; i <= l && equal; ++i)
            equal = (p.at(i) == p.at(m - l + i));
        if (equal) out.push_back(l);
    }
    return out;
}

/// True iff p has no bifix other than itself, i.e. Period(p) = {m}.
inline bool is_bifix_free(const Pattern& p) {
    const auto& s = p.symbols();
    return detail::border_array(s).back() == 0;
}

} // namespace smdt
