#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "zladder/jacobi.hpp"
#include "zladder/ladder.hpp"

namespace zladder {

// Supplies the ladder segment covering the window at T.  Callers that check
// several things against the same windows build each table once and hand out
// references; see build_window_table for the single-window case.
using TableSource = std::function<const LadderTable&(double T)>;

// Builds a ladder segment whose image covers [T, T+2] with at least `margin`
// of image slack below T.  The segment is anchored near t = T + (1-c) pi(T),
// retrying with a wider span when the derivative runs unusually low.
LadderTable build_window_table(double T, const GridPolicy& grid = {}, double margin = 8.0);

// Inner products of a polynomial family pulled back through the ladder:
// entry (m, n) integrates p_m(x(t)) p_n(x(t)) (1-x(t))^alpha (1+x(t))^beta
// dphi1(t) over the preimage of [T, T+2], where x(t) maps the achieved
// image of the preimage interval onto [-1, 1].  For the named families p_n
// is the classical polynomial (P_n, T_n, U_n), so closed_form_diag holds
// the textbook constants (2/(2n+1); pi and pi/2; pi/2).
struct GramReport {
    Family family = Family::general;
    double alpha = 0.0;
    double beta = 0.0;
    double T = 0.0;
    int nmax = 0;
    Eigen::MatrixXd gram;            // adaptive t-space route; symmetric
    Eigen::MatrixXd route_b;         // node-mapped cross-check, same entries
    Eigen::VectorXd closed_form_diag;
    double max_offdiag = 0.0;
    double max_diag_reldev = 0.0;
    double route_disagreement = 0.0;  // max |gram - route_b| entry
    bool degraded = false;            // some entry missed its quadrature budget
};

// Assembles the Gram matrix for basis orders 0..nmax by two routes that
// share only the ladder table: (A) adaptive quadrature in t with the weight
// factors evaluated in endpoint-offset form, and (B) Gauss-Jacobi nodes
// mapped through invert(), which is exact for these degrees apart from
// inversion error.  A report with degraded = true must not be taken as a
// pass regardless of the entry values.  nmax is capped at 12.
GramReport gram_transformed(const LadderTable& table, Family family, double T, int nmax,
                            double tol = 3e-8);
GramReport gram_transformed(const LadderTable& table, double alpha, double beta, double T,
                            int nmax, double tol = 3e-8);

struct ScanPoint {
    double T = 0.0;
    double t_bar = 0.0;     // lower preimage endpoint; the growth variable
    double integral = 0.0;  // squared-basis integral weighted by dphi1 * ln t
    double ratio = 0.0;     // integral / ln(t_bar)
    double reldev = 0.0;    // |ratio / limit - 1|
    bool degraded = false;
};

struct AsymptoticScan {
    JacobiSpec spec;
    double limit = 0.0;  // closed-form diagonal constant for spec
    std::vector<ScanPoint> points;
};

// Tracks ratio -> limit along increasing T.  The weight dphi1 * ln t stands
// in for |zeta(1/2+it)|^2 exactly under the surrogate derivative, so the
// residual deviation isolates how far ln t is from the constant ln t_bar
// across the window; reldev shrinks like 1/(t_bar ln t_bar).
AsymptoticScan asymptotic_scan(const TableSource& tables, const JacobiSpec& spec,
                               std::span<const double> T_values, double tol = 1e-8);

struct WindowDistance {
    double T = 0.0;
    double t_bar = 0.0;          // preimage_lo
    double ratio = 0.0;          // t_bar / T, above 1 and decreasing toward it
    double scaled_length = 0.0;  // preimage length * ln(T) / T, stays bounded
};

std::vector<WindowDistance> window_distance_check(const TableSource& tables,
                                                  std::span<const double> T_values);

}  // namespace zladder
