#include "zladder/special.hpp"

#include <cmath>
#include <vector>

#include "zladder/constants.hpp"

namespace zladder {

namespace {

// B_{2k} / (2k (2k-1)) for the Stirling tail, k = 1..10.
constexpr double kStirling[] = {
    1.0 / 12,
    -1.0 / 360,
    1.0 / 1260,
    -1.0 / 1680,
    1.0 / 1188,
    -691.0 / 360360,
    1.0 / 156,
    -3617.0 / 122400,
    43867.0 / 244188,
    -174611.0 / 125400,
};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) {
        throw std::domain_error("log_gamma: requires Re(z) > 0");
    }
    // Shift into the region where the Stirling series converges fast.
    // The accumulated log stays on the principal branch because every
    // shifted argument has positive real part.
    std::complex<double> shift(0.0, 0.0);
    while (z.real() < 10.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const std::complex<double> lz = std::log(z);
    std::complex<double> s = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * kPi);
    const std::complex<double> w = 1.0 / (z * z);
    std::complex<double> zp = 1.0 / z;
    for (double c : kStirling) {
        s += c * zp;
        zp *= w;
    }
    return s + shift;
}

double theta_main(double t) {
    return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0;
}

double theta(double t, ThetaMethod method) {
    if (!(t > 0.0)) {
        throw std::domain_error("theta: requires t > 0");
    }
    if (method == ThetaMethod::asymptotic) {
        const double u = 1.0 / t;
        return theta_main(t) + u * (1.0 / 48 + u * u * (7.0 / 5760 + u * u * (31.0 / 80640)));
    }
    const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(kPi);
}

double mean_zero_gap(double t) {
    if (!(t > 2.0 * kPi * std::exp(1.0))) {
        throw std::domain_error("mean_zero_gap: requires t > 2 pi e");
    }
    return 2.0 * kPi / std::log(t / (2.0 * kPi));
}

std::uint64_t prime_count(double x, std::uint64_t cap) {
    if (!(x >= 0.0) || std::isnan(x)) {
        throw std::domain_error("prime_count: bad argument");
    }
    if (x > static_cast<double>(cap)) {
        throw CapExceeded("prime_count: argument above sieve cap");
    }
    const auto n = static_cast<std::uint64_t>(x);
    if (n < 2) return 0;
    if (n < 3) return 1;

    // Base primes up to sqrt(n), then count odd primes segment by segment.
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
    std::vector<bool> base(root + 1, true);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 3; i <= root; i += 2) {
        if (!base[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += 2 * i) base[j] = false;
    }

    constexpr std::uint64_t kSegment = 1u << 18;  // odds per segment
    std::uint64_t count = 1;  // the prime 2
    std::vector<bool> seg;
    for (std::uint64_t lo = 3; lo <= n; lo += 2 * kSegment) {
        const std::uint64_t hi = std::min(n, lo + 2 * kSegment - 2);
        seg.assign((hi - lo) / 2 + 1, true);
        for (std::uint64_t p : primes) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            if (start % 2 == 0) start += p;
            for (std::uint64_t j = start; j <= hi; j += 2 * p) seg[(j - lo) / 2] = false;
        }
        for (bool b : seg) count += b;
    }
    return count;
}

double prime_count_approx(double x) {
    if (!(x > 2.0)) {
        throw std::domain_error("prime_count_approx: requires x > 2");
    }
    // li(x) = gamma + log log x + sum_k (log x)^k / (k k!), entire in log x.
    const double L = std::log(x);
    double sum = kEulerGamma + std::log(L);
    double term = 1.0;  // (log x)^k / k!
    for (int k = 1; k < 400; ++k) {
        term *= L / k;
        const double add = term / k;
        sum += add;
        if (add < 1e-17 * sum && static_cast<double>(k) > L) break;
    }
    return sum;
}

std::uint64_t double_factorial(int n) {
    if (n < -1) {
        throw std::domain_error("double_factorial: requires n >= -1");
    }
    std::uint64_t r = 1;
    for (std::uint64_t k = static_cast<std::uint64_t>(n < 1 ? 1 : n); k >= 2; k -= 2) {
        if (r > UINT64_MAX / k) {
            throw std::overflow_error("double_factorial: exceeds uint64 range");
        }
        r *= k;
    }
    return r;
}

}  // namespace zladder
