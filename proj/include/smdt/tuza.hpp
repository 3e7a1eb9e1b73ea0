#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/pattern.hpp"

namespace smdt {

/// An internal window of the container (p(b) or pp) within the stated
/// Hamming distance of p. Offsets are 1-based positions in the container.
struct PropertyWitness {
    int offset = 0;
    int diff_count = 0;
};

struct Property1Witness {
    std::string base; // the bifix b
    int offset = 0;
    int diff_count = 0;
};

/// Outcome of the combinatorial lower-bound criteria for one pattern.
///
/// lower_bound_applies means no witness exists for either property, in which
/// case D_p(n) >= n - (n mod c) for all sufficiently large n and the period
/// upper bound makes the pattern settled (evasive when c = 1).
struct TuzaVerdict {
    std::string pattern;
    std::vector<std::string> bifix_bases;            // all b with p in BE(b)
    std::vector<Property1Witness> property1_failures;
    std::vector<PropertyWitness> property2_failures;
    bool lower_bound_applies = false;
    int bound_gcd = 0;                               // gcd({m} u {|b_i|}) = gcd(Period(p))
    std::optional<int> theorem2_threshold;           // smallest single-base n0 achieving bound_gcd
    std::string predicted;                           // "evasive" | "settled(c)" | "unknown"
};

namespace detail {

inline int hamming(const std::vector<Symbol>& container, int offset,
                   const std::vector<Symbol>& p, int cap) {
    int d = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (container[static_cast<std::size_t>(offset - 1) + k] != p[k] && ++d > cap)
            return d;
    }
    return d;
}

/// Witnesses among windows at internal offsets [2, |container| - |p|]; the
/// prefix window (offset 1) and the suffix window are excluded.
inline void scan_internal_windows(const std::vector<Symbol>& container,
                                  const std::vector<Symbol>& p, int cap,
                                  std::vector<PropertyWitness>& out,
                                  bool first_only) {
    const int last_internal = static_cast<int>(container.size()) - static_cast<int>(p.size());
    for (int offset = 2; offset <= last_internal; ++offset) {
        const int d = hamming(container, offset, p, cap);
        if (d <= cap) {
            out.push_back({offset, d});
            if (first_only) return;
        }
    }
}

} // namespace detail

/// All proper bifixes b of p (so p in BE(b)), shortest first.
inline std::vector<std::vector<Symbol>> be_bases(const Pattern& p) {
    std::vector<std::vector<Symbol>> bases;
    for (int l : bifixes(p))
        if (l < p.length()) bases.push_back(p.slice(1, l));
    return bases;
}

/// The overlap string ubv with ub = bv = p: p extended by its own tail after
/// the bifix b, of length 2|p| - |b|.
inline std::vector<Symbol> p_of_b(const Pattern& p, const std::vector<Symbol>& b) {
    const int m = p.length();
    const int lb = static_cast<int>(b.size());
    if (lb < 1 || lb >= m || p.slice(1, lb) != b || p.slice(m - lb + 1, m) != b)
        throw NotABifix("b must be a proper bifix of p");
    std::vector<Symbol> out = p.symbols();
    for (int k = lb + 1; k <= m; ++k) out.push_back(p.at(k));
    return out;
}

/// First internal window of p(b) within Hamming distance 2 of p, if any.
inline std::optional<PropertyWitness> has_property1(const Pattern& p,
                                                    const std::vector<Symbol>& b) {
    const std::vector<Symbol> container = p_of_b(p, b);
    std::vector<PropertyWitness> hits;
    detail::scan_internal_windows(container, p.symbols(), 2, hits, true);
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

/// First internal window of pp within Hamming distance 4 of p, if any.
inline std::optional<PropertyWitness> has_property2(const Pattern& p) {
    std::vector<Symbol> pp = p.symbols();
    pp.insert(pp.end(), p.symbols().begin(), p.symbols().end());
    std::vector<PropertyWitness> hits;
    detail::scan_internal_windows(pp, p.symbols(), 4, hits, true);
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

/// For |b| > m/2, the shorter bifix b' = p[k(m-|b|)+1..m] (k maximal with
/// k(m-|b|) < m). |b'| <= m/2, and any property-1 witness for b yields one
/// for b'.
inline std::vector<Symbol> b1_reduce(const Pattern& p, const std::vector<Symbol>& b) {
    const int m = p.length();
    const int lb = static_cast<int>(b.size());
    if (2 * lb <= m)
        throw PreconditionViolated("b1_reduce expects |b| > |p|/2");
    if (lb >= m || p.slice(1, lb) != b || p.slice(m - lb + 1, m) != b)
        throw NotABifix("b must be a proper bifix of p");
    const int step = m - lb;
    const int k = (m - 1) / step; // largest k with k*step < m
    return p.slice(k * step + 1, m);
}

/// Full verdict: every base, every witness, and the predicted complexity
/// class.
inline TuzaVerdict tuza_verdict(const Pattern& p) {
    const int m = p.length();
    TuzaVerdict v;
    v.pattern = p.to_string();

    const auto bases = be_bases(p);
    for (const auto& b : bases) {
        std::string text;
        for (Symbol s : b) text.push_back(static_cast<char>('0' + s));
        v.bifix_bases.push_back(std::move(text));
        const std::vector<Symbol> container = p_of_b(p, b);
        std::vector<PropertyWitness> hits;
        detail::scan_internal_windows(container, p.symbols(), 2, hits, false);
        for (const PropertyWitness& w : hits)
            v.property1_failures.push_back({v.bifix_bases.back(), w.offset, w.diff_count});
    }
    {
        std::vector<Symbol> pp = p.symbols();
        pp.insert(pp.end(), p.symbols().begin(), p.symbols().end());
        detail::scan_internal_windows(pp, p.symbols(), 4, v.property2_failures, false);
    }

    v.bound_gcd = m;
    for (const auto& b : bases)
        v.bound_gcd = std::gcd(v.bound_gcd, static_cast<int>(b.size()));

    v.lower_bound_applies =
        v.property1_failures.empty() && v.property2_failures.empty();

    if (v.lower_bound_applies) {
        for (const auto& b : bases) {
            const int lb = static_cast<int>(b.size());
            if (std::gcd(m, lb) != v.bound_gcd) continue;
            const int threshold = m * (2 * m - lb) / std::gcd(m, lb);
            if (!v.theorem2_threshold || threshold < *v.theorem2_threshold)
                v.theorem2_threshold = threshold;
        }
        v.predicted = (v.bound_gcd == 1)
                          ? "evasive"
                          : "settled(" + std::to_string(v.bound_gcd) + ")";
    } else {
        v.predicted = "unknown";
    }
    return v;
}

/// Exact |B1(m)| and |B2(m)| (and the size of their union) over all sigma^m
/// patterns. B1 membership is evaluated over bases of length <= m/2, which
/// b1_reduce proves equivalent to all bases.
struct B1B2Census {
    std::uint64_t b1 = 0;
    std::uint64_t b2 = 0;
    std::uint64_t covered = 0; // |B1 u B2|
};

struct EnumerationOptions {
    std::uint64_t max_patterns = std::uint64_t(1) << 20;
};

namespace detail {

inline void pattern_from_rank(std::uint64_t rank, int m, int sigma,
                              std::vector<Symbol>& out) {
    out.resize(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] =
            static_cast<Symbol>(rank % static_cast<std::uint64_t>(sigma));
        rank /= static_cast<std::uint64_t>(sigma);
    }
}

/// Property-1 membership scanning only bases with |b| <= m/2.
inline bool in_b1(const std::vector<Symbol>& syms, const std::vector<int>& border) {
    const int m = static_cast<int>(syms.size());
    int l = border[static_cast<std::size_t>(m - 1)];
    while (l > 0) {
        if (2 * l <= m) {
            // container = p . p[l+1..m]; windows at offsets [2, m-l]
            const int last_internal = m - l;
            for (int offset = 2; offset <= last_internal; ++offset) {
                int d = 0;
                for (int k = 0; k < m && d <= 2; ++k) {
                    const int pos = offset - 1 + k; // 0-based in container
                    const Symbol cs = pos < m
                                          ? syms[static_cast<std::size_t>(pos)]
                                          : syms[static_cast<std::size_t>(pos - m + l)];
                    d += (cs != syms[static_cast<std::size_t>(k)]);
                }
                if (d <= 2) return true;
            }
        }
        l = border[static_cast<std::size_t>(l - 1)];
    }
    return false;
}

inline bool in_b2(const std::vector<Symbol>& syms) {
    const int m = static_cast<int>(syms.size());
    for (int offset = 2; offset <= m; ++offset) {
        int d = 0;
        for (int k = 0; k < m && d <= 4; ++k) {
            const int pos = offset - 1 + k;
            const Symbol cs = pos < m ? syms[static_cast<std::size_t>(pos)]
                                      : syms[static_cast<std::size_t>(pos - m)];
            d += (cs != syms[static_cast<std::size_t>(k)]);
        }
        if (d <= 4) return true;
    }
    return false;
}

} // namespace detail

inline B1B2Census census_b1_b2(int m, int sigma,
                               const EnumerationOptions& opts = {}) {
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        total *= static_cast<std::uint64_t>(sigma);
        if (total > opts.max_patterns)
            throw InstanceTooLarge("pattern space exceeds the enumeration limit");
    }
    B1B2Census out;
    std::vector<Symbol> syms;
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        detail::pattern_from_rank(rank, m, sigma, syms);
        const auto border = detail::border_array(syms);
        const bool b1 = detail::in_b1(syms, border);
        const bool b2 = detail::in_b2(syms);
        out.b1 += b1;
        out.b2 += b2;
        out.covered += (b1 || b2);
    }
    return out;
}

} // namespace smdt
