#include "zladder/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "zladder/jacobi.hpp"
#include "zladder/special.hpp"

namespace zladder {

QuadRule gauss_jacobi(int order, double alpha, double beta) {
    if (order < 1) {
        throw std::domain_error("gauss_jacobi: order must be >= 1");
    }
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        throw std::domain_error("gauss_jacobi: requires alpha, beta > -1");
    }
    const double a = alpha, b = beta;
    Eigen::VectorXd diag(order), sub(std::max(order - 1, 0));
    diag[0] = (b - a) / (a + b + 2.0);
    for (int k = 1; k < order; ++k) {
        const double s = 2.0 * k + a + b;
        diag[k] = (b * b - a * a) / (s * (s + 2.0));
        double bk;
        if (k == 1) {
            bk = 4.0 * (a + 1.0) * (b + 1.0) /
                 ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        } else {
            bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                 (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[k - 1] = std::sqrt(bk);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("gauss_jacobi: eigensolver failed");
    }

    const double mu0 = norm_sq(make_spec(a, b, 0));  // weight mass
    QuadRule rule;
    rule.alpha = a;
    rule.beta = b;
    rule.nodes = es.eigenvalues();
    rule.weights = mu0 * es.eigenvectors().row(0).array().square();
    return rule;
}

double integrate_reference(const std::function<double(double)>& f, const QuadRule& rule) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * f(rule.nodes[i]);
    }
    return s;
}

namespace {

// 12-point Gauss-Legendre on [-1,1]; positive half, symmetric.
constexpr double kGlX[6] = {0.1252334085114689154, 0.3678314989981801937,
                            0.5873179542866174473, 0.7699026741943046870,
                            0.9041172563704748566, 0.9815606342467192506};
constexpr double kGlW[6] = {0.2491470458134027850, 0.2334925365383548087,
                            0.2031674267230659217, 0.1600783285433462263,
                            0.1069393259953184310, 0.0471753363865118271};

enum Region { interior = 0, left_end = 1, right_end = 2 };

struct Panel {
    Region region;
    int depth;
    double lo, hi;        // t for interior panels, u for end panels
    double whole;         // GL12 over [lo, hi]
    double lhalf, rhalf;  // GL12 over the two halves
    double value() const { return lhalf + rhalf; }
    // bad panels (an eval hit a pole, or overflow) sort first and are kept
    // out of the finite error accounting
    bool bad() const { return !std::isfinite(std::abs(whole - (lhalf + rhalf))); }
    double disc() const {
        const double d = std::abs(whole - (lhalf + rhalf));
        return std::isfinite(d) ? d : std::numeric_limits<double>::infinity();
    }
};

// worst-first, with a total tie order so refinement is deterministic
bool lower_priority(const Panel& a, const Panel& b) {
    if (a.disc() != b.disc()) return a.disc() < b.disc();
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.region < b.region;
}

class Refiner {
  public:
    Refiner(const std::function<double(double)>& f, const EndpointIntegrands* ends, double a,
            double b)
        : f_(f), ends_(ends), a_(a), b_(b) {}

    double eval(Region r, double x) {
        ++evals_;
        switch (r) {
            case interior:
                return f_(x);
            case left_end:  // u-coordinate: t = a + u^2, dt = 2u du
                return 2.0 * x * (ends_ && ends_->left ? ends_->left(x * x) : f_(a_ + x * x));
            case right_end:
                return 2.0 * x * (ends_ && ends_->right ? ends_->right(x * x) : f_(b_ - x * x));
        }
        return 0.0;
    }

    double gl12(Region r, double lo, double hi) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (int i = 0; i < 6; ++i) {
            s += kGlW[i] * (eval(r, mid + half * kGlX[i]) + eval(r, mid - half * kGlX[i]));
        }
        return half * s;
    }

    Panel make(Region r, double lo, double hi, int depth, double whole) {
        const double mid = 0.5 * (lo + hi);
        return {r, depth, lo, hi, whole, gl12(r, lo, mid), gl12(r, mid, hi)};
    }
    Panel make(Region r, double lo, double hi) {
        return make(r, lo, hi, 0, gl12(r, lo, hi));
    }

    std::size_t evals() const { return evals_; }

  private:
    const std::function<double(double)>& f_;
    const EndpointIntegrands* ends_;
    double a_, b_;
    std::size_t evals_ = 0;
};

}  // namespace

IntegrateResult integrate_t_space(const std::function<double(double)>& f, double a, double b,
                                  double tol, std::span<const double> breakpoints,
                                  const EndpointIntegrands* ends) {
    if (!(b > a)) {
        throw std::domain_error("integrate_t_space: requires a < b");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("integrate_t_space: requires tol > 0");
    }

    // Panel boundaries: endpoints, caller breakpoints, then the oscillation
    // cap.  The mean gap shrinks with t, so its value at b bounds the range.
    std::vector<double> cuts{a, b};
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double hmax = mean_zero_gap(std::max(b, 25.0)) / 8.0;
    std::vector<double> bounds;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        bounds.push_back(cuts[i]);
        const double len = cuts[i + 1] - cuts[i];
        const int pieces = static_cast<int>(std::ceil(len / hmax));
        for (int j = 1; j < pieces; ++j) {
            bounds.push_back(cuts[i] + len * j / pieces);
        }
    }
    bounds.push_back(b);
    if (bounds.size() == 2) {
        // both endpoint substitutions need their own panel
        bounds.insert(bounds.begin() + 1, 0.5 * (a + b));
    }

    Refiner rf(f, ends, a, b);
    std::vector<Panel> heap;
    const std::size_t m = bounds.size() - 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (i == 0) {
            heap.push_back(rf.make(left_end, 0.0, std::sqrt(bounds[1] - bounds[0])));
        } else if (i == m - 1) {
            heap.push_back(rf.make(right_end, 0.0, std::sqrt(bounds[m] - bounds[m - 1])));
        } else {
            heap.push_back(rf.make(interior, bounds[i], bounds[i + 1]));
        }
    }
    std::make_heap(heap.begin(), heap.end(), lower_priority);

    double active = 0.0;  // sum of refinable finite discrepancies
    std::size_t bad_live = 0;
    for (const Panel& p : heap) {
        if (p.bad()) ++bad_live; else active += p.disc();
    }
    double frozen_value = 0.0, frozen_disc = 0.0;
    bool frozen_bad = false;
    constexpr std::size_t kEvalCap = 4'000'000;
    constexpr double kEps = std::numeric_limits<double>::epsilon();

    // stop early once frozen panels alone exceed the tolerance: no amount
    // of further refinement can recover
    while ((bad_live > 0 || active + frozen_disc > tol) && !frozen_bad && frozen_disc <= tol &&
           !heap.empty() && rf.evals() < kEvalCap) {
        std::pop_heap(heap.begin(), heap.end(), lower_priority);
        const Panel p = heap.back();
        heap.pop_back();
        if (p.bad()) --bad_live; else active -= p.disc();

        const double scale = std::max({1.0, std::abs(p.lo), std::abs(p.hi)});
        if (p.depth >= 48 || p.hi - p.lo < 32.0 * kEps * scale) {
            // resolution floor: keep the panel, report its discrepancy
            frozen_value += p.value();
            if (p.bad()) frozen_bad = true; else frozen_disc += p.disc();
            continue;
        }
        const double mid = 0.5 * (p.lo + p.hi);
        for (const Panel& child : {rf.make(p.region, p.lo, mid, p.depth + 1, p.lhalf),
                                   rf.make(p.region, mid, p.hi, p.depth + 1, p.rhalf)}) {
            if (child.bad()) ++bad_live; else active += child.disc();
            heap.push_back(child);
            std::push_heap(heap.begin(), heap.end(), lower_priority);
        }
    }

    IntegrateResult res;
    res.value = frozen_value;
    for (const Panel& p : heap) res.value += p.value();
    res.error_estimate = (bad_live > 0 || frozen_bad)
                             ? std::numeric_limits<double>::infinity()
                             : active + frozen_disc;
    res.evals = rf.evals();
    res.converged = res.error_estimate <= tol;
    return res;
}

}  // namespace zladder
