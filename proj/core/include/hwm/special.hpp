#pragma once
/**
 * @file special.hpp
 * @brief Error-function helpers used by the max-distribution and pricer.
 *
 * std::erf/std::erfc come from libm and are good to ~1 ulp. What libm lacks
 * is the scaled complement erfcx(z) = e^{z^2} erfc(z), needed because the
 * closed forms multiply a potentially huge e^{2 mu h / v^2} by a tiny
 * erfc(...). Products of that shape go through exp_erfc().
 */

#include <cmath>

namespace hwm {

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2 pi)
inline constexpr double kSqrt2 = 1.4142135623730951;

/// Standard normal density.
inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

/// Standard normal CDF via erfc (stable in both tails).
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Scaled complementary error function e^{z^2} erfc(z) for z >= 0.
///
/// z < 26: the direct product is exact enough (erfc(26) ~ 2.7e-296 is still
/// a normal double). Beyond that erfc underflows, so switch to the
/// asymptotic series erfcx(z) ~ 1/(z sqrt(pi)) * sum_k (-1)^k (2k-1)!!/(2z^2)^k,
/// whose terms at z >= 26 decay below 1e-16 within 8 terms.
inline double erfcx(double z) {
    if (z < 26.0) return std::exp(z * z) * std::erfc(z);
    const double inv2z2 = 1.0 / (2.0 * z * z);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
        term *= -(2.0 * k - 1.0) * inv2z2;
        sum += term;
        if (std::abs(term) < 1e-17 * sum) break;
    }
    return sum / (z * 1.7724538509055160273);  // sqrt(pi)
}

/// e^L * erfc(z) without overflow/underflow of the factors.
///
/// For z >= 0 rewrite as e^{L - z^2} * erfcx(z); all uses in this library
/// have L - z^2 <= 0, so the result is representable even when e^L alone
/// is not. For z < 0, erfc(z) is in (1, 2) and e^L is moderate.
inline double exp_erfc(double L, double z) {
    if (z >= 0.0) return std::exp(L - z * z) * erfcx(z);
    return std::exp(L) * std::erfc(z);
}

}  // namespace hwm
