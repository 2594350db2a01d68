#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

namespace zladder {

struct QuadRule {
    Eigen::VectorXd nodes;    // ascending, inside (-1, 1)
    Eigen::VectorXd weights;  // positive, summing to the weight mass
    double alpha = 0.0;
    double beta = 0.0;
};

// Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta on [-1,1], order >= 1 nodes,
// from the eigen-decomposition of the symmetric recurrence matrix.
QuadRule gauss_jacobi(int order, double alpha, double beta);

double integrate_reference(const std::function<double(double)>& f, const QuadRule& rule);

struct IntegrateResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t evals = 0;
};

// Endpoint-local forms of the integrand: left(d) = f(a + d) and
// right(d) = f(b - d), supplied when f has integrable endpoint behavior
// whose location double precision cannot place exactly through t alone.
// The callables own their offset origin: factors that vanish at the
// endpoint must vanish exactly at d = 0.
struct EndpointIntegrands {
    std::function<double(double)> left;
    std::function<double(double)> right;
};

// Deterministic adaptive integration over [a, b] in t space.  Initial panel
// widths are capped at an eighth of the mean Z-oscillation spacing at b so
// oscillatory integrands enter resolved; the two end panels are always
// integrated under the substitution t = a + u^2 (resp. b - u^2), which turns
// inverse-square-root endpoint factors into smooth ones and fractional
// powers into Hoelder ones; panels are then refined globally worst-first
// against a 12-point Gauss vs split-Gauss comparison until the estimated
// error is below the absolute tolerance `tol`.  `breakpoints` adds panel
// boundaries at known kinks (interpolant knots).  When the refinement budget
// runs out first, `converged` is false and `error_estimate` reports what is
// left.
IntegrateResult integrate_t_space(const std::function<double(double)>& f, double a, double b,
                                  double tol, std::span<const double> breakpoints = {},
                                  const EndpointIntegrands* ends = nullptr);

}  // namespace zladder
