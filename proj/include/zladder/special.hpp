#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace zladder {

// Principal branch of log Gamma(z) for Re(z) > 0, via the Stirling series
// after shifting Re(z) up by recurrence.  Accurate to ~1e-14 relative in
// both components over the strip used here (arguments 1/4 + it/2).
std::complex<double> log_gamma(std::complex<double> z);

enum class ThetaMethod { exact, asymptotic };

// Riemann-Siegel theta.  `exact` evaluates Im log Gamma(1/4 + it/2)
// - (t/2) log pi; `asymptotic` uses the large-t expansion through 1/t^5.
// Both require t > 0; they agree to ~3e-11 abs at t = 10 and to rounding
// level once t >= 100.
double theta(double t, ThetaMethod method = ThetaMethod::exact);

// Leading terms only: (t/2) log(t/(2 pi)) - t/2 - pi/8.  The remainder
// theta(t) - theta_main(t) is 1/(48 t) + O(1/t^3), so below 1/(8 t).
double theta_main(double t);

// Mean spacing of Z sign changes at height t, 2 pi / log(t / (2 pi)).
// Requires t > 2 pi e so the gap is positive and finite.
double mean_zero_gap(double t);

struct CapExceeded : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact prime count pi(x) by segmented sieve.  Throws CapExceeded when
// x > cap; callers that can tolerate the ~1e-4 relative error of the
// logarithmic-integral approximation should catch it and fall back to
// prime_count_approx, flagging the result as approximate.
std::uint64_t prime_count(double x, std::uint64_t cap = 100'000'000);

// Logarithmic integral li(x), the standard pi(x) surrogate.  x > 2.
double prime_count_approx(double x);

// n!! for n >= -1 ((-1)!! = 0!! = 1).  Throws std::overflow_error once the
// value leaves uint64 range (n >= 34).
std::uint64_t double_factorial(int n);

}  // namespace zladder
