#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "smdt/errors.hpp"
#include "smdt/polynomial.hpp"

namespace smdt {

struct RootEstimate {
    std::complex<double> value;
    double modulus = 0.0;
    int multiplicity = 1;
};

namespace detail {

using cld = std::complex<long double>;

inline cld horner(const std::vector<long double>& c, cld z) {
    cld acc(0.0L, 0.0L);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

/// Relative backward error of z as a root: |P(z)| / sum |c_k| |z|^k.
inline long double backward_error(const std::vector<long double>& c, cld z) {
    const long double az = std::abs(z);
    long double scale = 0.0L, zk = 1.0L;
    for (long double ck : c) {
        scale += std::abs(ck) * zk;
        zk *= az;
    }
    if (scale == 0.0L) return 0.0L;
    return std::abs(horner(c, z)) / scale;
}

/// Aberth-Ehrlich simultaneous iteration on a square-free polynomial given by
/// coefficients low to high. Converges cubically for simple roots.
inline std::vector<cld> aberth(const std::vector<long double>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<cld> z(static_cast<std::size_t>(d));
    if (d == 1) {
        z[0] = cld(-c[0] / c[1], 0.0L);
        return z;
    }
    long double radius = 0.0L;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(d)]));
    radius = 1.0L + radius;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (int k = 0; k < d; ++k) {
        // Slightly irrational start angle so symmetric root sets do not pin
        // the iteration on a symmetric configuration.
        const long double angle = 2.0L * pi * k / d + 0.6180339887L;
        z[static_cast<std::size_t>(k)] =
            0.7L * radius * cld(std::cos(angle), std::sin(angle));
    }
    std::vector<long double> dc(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k)
        dc[static_cast<std::size_t>(k - 1)] = c[static_cast<std::size_t>(k)] * k;

    for (int iter = 0; iter < 500; ++iter) {
        long double worst = 0.0L;
        for (int k = 0; k < d; ++k) {
            cld& zk = z[static_cast<std::size_t>(k)];
            const cld pv = horner(c, zk);
            if (pv == cld(0.0L, 0.0L)) continue;
            const cld dv = horner(dc, zk);
            if (dv == cld(0.0L, 0.0L)) {
                zk += cld(1e-6L, 1e-6L);
                worst = 1.0L;
                continue;
            }
            const cld ratio = pv / dv;
            cld offsets(0.0L, 0.0L);
            for (int j = 0; j < d; ++j)
                if (j != k) offsets += cld(1.0L, 0.0L) / (zk - z[static_cast<std::size_t>(j)]);
            const cld denom = cld(1.0L, 0.0L) - ratio * offsets;
            const cld w = (denom == cld(0.0L, 0.0L)) ? ratio : ratio / denom;
            zk -= w;
            worst = std::max(worst, std::abs(w) / (1.0L + std::abs(zk)));
        }
        if (worst < 1e-18L) break;
    }
    // A few Newton steps polish each root independently.
    for (cld& zk : z)
        for (int it = 0; it < 3; ++it) {
            const cld dv = horner(dc, zk);
            if (dv == cld(0.0L, 0.0L)) break;
            zk -= horner(c, zk) / dv;
        }
    return z;
}

inline std::vector<long double> to_long_double(const BigPolynomial& p) {
    std::vector<long double> c;
    c.reserve(p.coeffs().size());
    for (const mpz_class& v : p.coeffs()) {
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > 52)
            throw RootFindingFailed("coefficient too large for float conversion");
        c.push_back(static_cast<long double>(v.get_d()));
    }
    return c;
}

} // namespace detail

/// All complex roots of p with exact multiplicities: Yun square-free
/// decomposition splits off each multiplicity class exactly, then the Aberth
/// iteration locates the (simple) roots of each square-free factor. Every
/// root must pass a backward-error residual gate or RootFindingFailed is
/// thrown.
inline std::vector<RootEstimate> find_roots(const BigPolynomial& p,
                                            long double residual_gate = 1e-14L) {
    if (p.degree() < 1)
        throw PreconditionViolated("find_roots needs degree >= 1");
    std::vector<RootEstimate> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        const auto coeffs = detail::to_long_double(factor);
        const auto roots = detail::aberth(coeffs);
        for (const detail::cld& z : roots) {
            if (detail::backward_error(coeffs, z) > residual_gate)
                throw RootFindingFailed("root residual exceeds the certification gate");
            RootEstimate est;
            est.value = std::complex<double>(static_cast<double>(z.real()),
                                             static_cast<double>(z.imag()));
            est.modulus = static_cast<double>(std::abs(z));
            est.multiplicity = mult;
            out.push_back(est);
        }
    }
    std::sort(out.begin(), out.end(), [](const RootEstimate& a, const RootEstimate& b) {
        if (a.modulus != b.modulus) return a.modulus > b.modulus;
        if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
        return a.value.imag() > b.value.imag();
    });
    return out;
}

} // namespace smdt
