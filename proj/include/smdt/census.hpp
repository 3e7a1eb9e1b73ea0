#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/parallel.hpp"
#include "smdt/pattern.hpp"
#include "smdt/tuza.hpp"

namespace smdt {

/// Whole-space classification of the sigma^m patterns of length m.
struct CensusRow {
    int m = 0;
    int sigma = 0;
    std::uint64_t total = 0;
    std::uint64_t bifix_free = 0;
    double b_frac = 0.0;
    std::uint64_t b1 = 0;           // |B1(m)|: some base has a property-1 witness
    std::uint64_t b2 = 0;           // |B2(m)|: pp has a property-2 witness
    std::uint64_t settled = 0;      // outside B1 u B2: D_p(n) = n - (n mod c) eventually
    std::uint64_t tuza_evasive = 0; // settled with c = 1
    std::uint64_t unknown = 0;      // |B1 u B2|
};

struct CensusOptions {
    std::uint64_t max_patterns = 5'000'000; // sigma=2 m<=22, sigma=3 m<=14, sigma=4 m<=11
    int jobs = 0;                           // 0 = hardware concurrency
};

namespace detail {

inline std::uint64_t checked_pattern_count(int m, int sigma, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        total *= static_cast<std::uint64_t>(sigma);
        if (total > cap)
            throw InstanceTooLarge("pattern space exceeds the enumeration limit");
    }
    return total;
}

/// gcd of Period(p) from the border chain: periods are m and m - l for every
/// bifix length l < m.
inline int period_gcd(const std::vector<int>& border, int m) {
    int g = m;
    int l = border[static_cast<std::size_t>(m - 1)];
    while (l > 0) {
        g = std::gcd(g, m - l);
        l = border[static_cast<std::size_t>(l - 1)];
    }
    return g;
}

} // namespace detail

inline CensusRow census(int m, int sigma, const CensusOptions& opts = {}) {
    const std::uint64_t total =
        detail::checked_pattern_count(m, sigma, opts.max_patterns);
    struct Acc {
        std::uint64_t bifix_free = 0, b1 = 0, b2 = 0, covered = 0, evasive = 0;
    };
    const int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    const auto parts = map_ranges<Acc>(total, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        Acc acc;
        std::vector<Symbol> syms;
        for (std::uint64_t rank = lo; rank < hi; ++rank) {
            detail::pattern_from_rank(rank, m, sigma, syms);
            const auto border = detail::border_array(syms);
            acc.bifix_free += (border[static_cast<std::size_t>(m - 1)] == 0);
            const bool b1 = detail::in_b1(syms, border);
            const bool b2 = detail::in_b2(syms);
            acc.b1 += b1;
            acc.b2 += b2;
            if (b1 || b2) {
                ++acc.covered;
            } else if (detail::period_gcd(border, m) == 1) {
                ++acc.evasive;
            }
        }
        return acc;
    });
    CensusRow row;
    row.m = m;
    row.sigma = sigma;
    row.total = total;
    for (const auto& acc : parts) {
        row.bifix_free += acc.bifix_free;
        row.b1 += acc.b1;
        row.b2 += acc.b2;
        row.unknown += acc.covered;
        row.tuza_evasive += acc.evasive;
    }
    row.settled = total - row.unknown;
    row.b_frac = static_cast<double>(row.bifix_free) / static_cast<double>(total);
    return row;
}

/// Bifix-free fraction b_m^sigma only; much cheaper than a full census.
inline CensusRow bifix_free_census(int m, int sigma, const CensusOptions& opts = {}) {
    const std::uint64_t total =
        detail::checked_pattern_count(m, sigma, opts.max_patterns);
    const int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    const auto parts = map_ranges<std::uint64_t>(
        total, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t count = 0;
            std::vector<Symbol> syms;
            for (std::uint64_t rank = lo; rank < hi; ++rank) {
                detail::pattern_from_rank(rank, m, sigma, syms);
                count += (detail::border_array(syms).back() == 0);
            }
            return count;
        });
    CensusRow row;
    row.m = m;
    row.sigma = sigma;
    row.total = total;
    row.bifix_free = std::accumulate(parts.begin(), parts.end(), std::uint64_t(0));
    row.b_frac = static_cast<double>(row.bifix_free) / static_cast<double>(total);
    return row;
}

/// One line of the bifix-free fraction table, with the known limit value for
/// small alphabets and Nielsen's lower bound 1 - 1/sigma - 1/sigma^2.
struct NielsenRow {
    int sigma = 0;
    int m = 0;
    std::uint64_t total = 0;
    std::uint64_t bifix_free = 0;
    double b_frac = 0.0;
    std::optional<double> limit_reference; // known to three digits for sigma <= 6
    double lower_bound = 0.0;
};

inline std::optional<double> nielsen_limit_reference(int sigma) {
    static constexpr std::array<double, 5> table{0.268, 0.557, 0.688, 0.760, 0.801};
    if (sigma >= 2 && sigma <= 6) return table[static_cast<std::size_t>(sigma - 2)];
    return std::nullopt;
}

inline NielsenRow nielsen_row(int sigma, int m, const CensusOptions& opts = {}) {
    const CensusRow base = bifix_free_census(m, sigma, opts);
    NielsenRow row;
    row.sigma = sigma;
    row.m = m;
    row.total = base.total;
    row.bifix_free = base.bifix_free;
    row.b_frac = base.b_frac;
    row.limit_reference = nielsen_limit_reference(sigma);
    row.lower_bound = 1.0 - 1.0 / sigma - 1.0 / (static_cast<double>(sigma) * sigma);
    return row;
}

inline std::vector<NielsenRow> nielsen_table(const std::vector<std::pair<int, int>>& sigma_m,
                                             const CensusOptions& opts = {}) {
    std::vector<NielsenRow> rows;
    rows.reserve(sigma_m.size());
    for (const auto& [sigma, m] : sigma_m) rows.push_back(nielsen_row(sigma, m, opts));
    return rows;
}

} // namespace smdt
