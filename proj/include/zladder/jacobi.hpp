#pragma once

#include <stdexcept>
#include <string_view>

namespace zladder {

enum class Family { general, legendre, chebyshev_t, chebyshev_u };

// Stable external spellings: "general", "legendre", "chebyshev-t",
// "chebyshev-u".  Used by config files, report payloads and CSV rows.
const char* family_name(Family family);
Family family_from_name(std::string_view name);  // std::invalid_argument

// A single basis element P_n^(alpha,beta).  The named families pin
// (alpha, beta) to (0,0), (-1/2,-1/2) and (1/2,1/2) respectively.
struct JacobiSpec {
    Family family = Family::general;
    double alpha = 0.0;
    double beta = 0.0;
    int n = 0;
};

JacobiSpec make_spec(Family family, int n);                  // named families
JacobiSpec make_spec(double alpha, double beta, int n);      // general

// P_n^(alpha,beta)(x) by the three-term recurrence.  alpha, beta > -1.
double jacobi_eval(const JacobiSpec& spec, double x);

// Squared weighted L2 norm of P_n under (1-x)^alpha (1+x)^beta on [-1,1].
// The n = 0 case is the weight mass itself, which keeps alpha+beta = -1
// (the Chebyshev T line) finite.
double norm_sq(const JacobiSpec& spec);

// lambda_n with P_n^(-1/2,-1/2) = lambda_n T_n (chebyshev_t),
// P_n^(1/2,1/2) = lambda_n U_n (chebyshev_u), P_n^(0,0) = P_n (legendre,
// lambda_n = 1).  Throws for the general family.
double specialization_prefactor(Family family, int n);

}  // namespace zladder
