#include "zladder/jacobi.hpp"

#include <cmath>
#include <string>

#include "zladder/constants.hpp"

namespace zladder {

namespace {

void validate(const JacobiSpec& spec) {
    if (!(spec.alpha > -1.0) || !(spec.beta > -1.0)) {
        throw std::domain_error("jacobi: requires alpha, beta > -1");
    }
    if (spec.n < 0) {
        throw std::domain_error("jacobi: requires n >= 0");
    }
}

}  // namespace

const char* family_name(Family family) {
    switch (family) {
        case Family::general:
            return "general";
        case Family::legendre:
            return "legendre";
        case Family::chebyshev_t:
            return "chebyshev-t";
        case Family::chebyshev_u:
            return "chebyshev-u";
    }
    throw std::invalid_argument("family_name: unknown enum value");
}

Family family_from_name(std::string_view name) {
    if (name == "general") return Family::general;
    if (name == "legendre") return Family::legendre;
    if (name == "chebyshev-t") return Family::chebyshev_t;
    if (name == "chebyshev-u") return Family::chebyshev_u;
    throw std::invalid_argument("unknown family name: " + std::string(name));
}

JacobiSpec make_spec(Family family, int n) {
    switch (family) {
        case Family::legendre:
            return {family, 0.0, 0.0, n};
        case Family::chebyshev_t:
            return {family, -0.5, -0.5, n};
        case Family::chebyshev_u:
            return {family, 0.5, 0.5, n};
        case Family::general:
            break;
    }
    throw std::domain_error("make_spec: general family needs explicit alpha, beta");
}

JacobiSpec make_spec(double alpha, double beta, int n) {
    return {Family::general, alpha, beta, n};
}

double jacobi_eval(const JacobiSpec& spec, double x) {
    validate(spec);
    const double a = spec.alpha, b = spec.beta;
    if (spec.n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int n = 2; n <= spec.n; ++n) {
        const double s = 2.0 * n + a + b;  // common recurrence offset
        const double c0 = 2.0 * n * (n + a + b) * (s - 2.0);
        const double c1 = (s - 1.0) * ((s * (s - 2.0)) * x + a * a - b * b);
        const double c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        const double next = (c1 * p - c2 * pm1) / c0;
        pm1 = p;
        p = next;
    }
    return p;
}

double norm_sq(const JacobiSpec& spec) {
    validate(spec);
    const double a = spec.alpha, b = spec.beta;
    if (spec.n == 0) {
        // weight mass 2^(a+b+1) B(a+1, b+1)
        return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                        std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    }
    const double n = spec.n;
    return std::exp((a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
                    std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                    std::lgamma(n + 1.0) - std::lgamma(n + a + b + 1.0));
}

double specialization_prefactor(Family family, int n) {
    if (n < 0) {
        throw std::domain_error("specialization_prefactor: requires n >= 0");
    }
    switch (family) {
        case Family::legendre:
            return 1.0;
        case Family::chebyshev_t: {
            // (2n-1)!! / (2n)!! as a stable product of ratios
            double r = 1.0;
            for (int k = 1; k <= n; ++k) r *= (2.0 * k - 1.0) / (2.0 * k);
            return r;
        }
        case Family::chebyshev_u: {
            // 2 (2n+1)!! / (2n+2)!!
            double r = 2.0;
            for (int k = 1; k <= n + 1; ++k) r *= (2.0 * k - 1.0) / (2.0 * k);
            return r;
        }
        case Family::general:
            break;
    }
    throw std::domain_error("specialization_prefactor: general family has none");
}

}  // namespace zladder
