#include "electra/special_functions.hpp"

#include "electra/rational.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace electra {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_{2k} / (2k)!
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

}  // namespace

cplx log_gamma(cplx z) {
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        cplx s = std::sin(pi * z);
        if (std::abs(s) == 0.0) throw DomainError("log_gamma: pole");
        return std::log(pi) - std::log(s) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw DomainError("zeta: pole at s = 1");
    if (s.real() < 0.0) {
        // Functional equation keeps the summation in the half plane where it is well conditioned.
        constexpr double pi = std::numbers::pi;
        return std::pow(2.0, s) * std::pow(cplx(pi), s - 1.0) * std::sin(pi * s / 2.0) * gamma(1.0 - s) *
               zeta(1.0 - s);
    }
    const int n = 20 + static_cast<int>(std::ceil(std::abs(s.imag())));
    cplx sum = 0.0;
    for (int k = 1; k < n; ++k) sum += std::exp(-s * std::log(static_cast<double>(k)));
    const double ln = std::log(static_cast<double>(n));
    const cplx n_s = std::exp(-s * ln);  // N^{-s}
    sum += n_s * static_cast<double>(n) / (s - 1.0) + 0.5 * n_s;
    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    cplx rising = s;
    cplx power = n_s / static_cast<double>(n);
    for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
        cplx term = kBernoulliOverFactorial[k] * rising * power;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        const double m = 2.0 * static_cast<double>(k) + 1.0;
        rising *= (s + m) * (s + m + 1.0);
        power /= static_cast<double>(n) * static_cast<double>(n);
    }
    return sum;
}

}  // namespace electra
