#include "zladder/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/quadrature.hpp"
#include "zladder/special.hpp"

namespace zladder {

namespace {

// Shared node count for the cross-check route.  Exactness needs only
// nmax+1 nodes for degree-2*nmax products; the extra headroom is free.
constexpr int kRouteBOrder = 24;

double wpow(double v, double e) { return e == 0.0 ? 1.0 : std::pow(v, e); }

// Classical member of a family: P_n, T_n, U_n, or a general Jacobi
// polynomial, as scale * P_n^(alpha,beta).
struct Basis {
    JacobiSpec spec;
    double scale = 1.0;
    double operator()(double x) const { return scale * jacobi_eval(spec, x); }
    double norm_const() const { return scale * scale * norm_sq(spec); }
};

Basis basis_for(Family family, double alpha, double beta, int n) {
    if (family == Family::general) return {make_spec(alpha, beta, n), 1.0};
    return {make_spec(family, n), 1.0 / specialization_prefactor(family, n)};
}

// phi(a + d) - phi(a) (rise polynomials have zero constant term, so the
// weight factors they feed vanish exactly at d = 0)
double rise_eval(const std::array<double, 8>& r, double d) {
    double s = r[7];
    for (int k = 6; k >= 1; --k) s = r[k] + d * s;
    return d * s;
}

// One window's quadrature geometry.  The map x(t) is pinned to the achieved
// images phi(a), phi(b), so x = -1 and x = +1 sit exactly on the computed
// preimage endpoints rather than at T, T+2; the difference is the inversion
// residual and keeps the endpoint factors representable.
struct Window {
    WindowPair wp;
    double a = 0.0, b = 0.0;
    double phia = 0.0, phib = 0.0;
    double half = 1.0;
    std::array<double, 8> rise_lo{};  // phi(a + d) - phi(a)
    std::array<double, 8> rise_hi{};  // phi(b) - phi(b - d)
    std::vector<double> cuts;         // knots between the end panels
};

Window make_window(const LadderTable& table, double T) {
    Window w;
    w.wp = table.window_preimage(T);
    w.a = w.wp.preimage_lo;
    w.b = w.wp.preimage_hi;
    w.phia = w.wp.image_lo;
    w.phib = w.wp.image_hi;
    w.half = 0.5 * (w.phib - w.phia);

    // Knot cuts keep each end panel inside a single interpolant panel, where
    // the rise polynomial represents phi to full relative precision.  A knot
    // closer to an endpoint than `snap` is dropped instead of becoming a
    // sliver cut: the end panel then overhangs that knot by at most snap,
    // and the rise polynomial extends across it with only a C2 mismatch at
    // cubic order in the overhang.
    const double snap = std::max(1e-9, 64.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(w.a), std::abs(w.b)));
    for (double t : table.knot_t()) {
        if (t > w.a + snap && t < w.b - snap) w.cuts.push_back(t);
    }

    const double c_lo = w.cuts.empty() ? w.b : w.cuts.front();
    const double c_hi = w.cuts.empty() ? w.a : w.cuts.back();
    const PanelPoly p_lo = table.panel_poly(0.5 * (w.a + c_lo)).recentered(w.a);
    const PanelPoly p_hi = table.panel_poly(0.5 * (c_hi + w.b)).recentered(w.b);
    for (int k = 1; k < 8; ++k) {
        w.rise_lo[k] = p_lo.c[k];
        w.rise_hi[k] = (k % 2 == 0) ? -p_hi.c[k] : p_hi.c[k];
    }
    return w;
}

// Weighted integrand over one window: poly(x(t)) (1-x)^alpha (1+x)^beta
// dphi1(t), optionally times ln t.  Interior evaluations difference the
// table's phi directly; endpoint evaluations come from the rise polynomials
// so the vanishing factor is exact however small d gets.
struct WindowIntegrand {
    const LadderTable& table;
    const Window& win;
    double alpha, beta;
    std::function<double(double)> poly;
    bool with_log = false;

    double at(double t, double onem, double onep) const {
        const double x = 0.5 * (onep - onem);
        double v = poly(x) * wpow(onem, alpha) * wpow(onep, beta) * table.dphi(t);
        if (with_log) v *= std::log(t);
        return v;
    }
    double interior(double t) const {
        const double p = table.phi(t);
        return at(t, (win.phib - p) / win.half, (p - win.phia) / win.half);
    }
    double left(double d) const {
        const double onep = rise_eval(win.rise_lo, d) / win.half;
        return at(win.a + d, 2.0 - onep, onep);
    }
    double right(double d) const {
        const double onem = rise_eval(win.rise_hi, d) / win.half;
        return at(win.b - d, onem, 2.0 - onem);
    }
};

IntegrateResult integrate_window(const WindowIntegrand& g, double tol) {
    const EndpointIntegrands ends{
        [&g](double d) { return g.left(d); },
        [&g](double d) { return g.right(d); },
    };
    return integrate_t_space([&g](double t) { return g.interior(t); }, g.win.a, g.win.b, tol,
                             g.win.cuts, &ends);
}

GramReport gram_core(const LadderTable& table, Family family, double alpha, double beta, double T,
                     int nmax, double tol) {
    if (nmax < 0 || nmax > 12) {
        throw std::domain_error("gram_transformed: requires 0 <= nmax <= 12");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("gram_transformed: requires tol > 0");
    }
    const Window win = make_window(table, T);

    std::vector<Basis> basis;
    basis.reserve(nmax + 1);
    for (int n = 0; n <= nmax; ++n) basis.push_back(basis_for(family, alpha, beta, n));
    alpha = basis.front().spec.alpha;  // named families pin the exponents
    beta = basis.front().spec.beta;

    GramReport rep;
    rep.family = family;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.T = T;
    rep.nmax = nmax;
    rep.gram.setZero(nmax + 1, nmax + 1);
    rep.route_b.setZero(nmax + 1, nmax + 1);
    rep.closed_form_diag.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n) rep.closed_form_diag[n] = basis[n].norm_const();

    // Route B: one node set per report.  Each node's image point goes back
    // through invert() and x is re-read off the table, so the sum exercises
    // the inversion round trip instead of restating the node coordinates.
    const QuadRule rule = gauss_jacobi(kRouteBOrder, alpha, beta);
    const int nk = static_cast<int>(rule.nodes.size());
    Eigen::MatrixXd bval(nk, nmax + 1);
    for (int k = 0; k < nk; ++k) {
        const double y = win.phia + win.half * (1.0 + rule.nodes[k]);
        const double p = table.phi(table.invert(y));
        const double xhat = 0.5 * ((p - win.phia) / win.half - (win.phib - p) / win.half);
        for (int n = 0; n <= nmax; ++n) bval(k, n) = basis[n](xhat);
    }

    for (int m = 0; m <= nmax; ++m) {
        for (int n = m; n <= nmax; ++n) {
            const WindowIntegrand g{table, win, alpha, beta,
                                    [&](double x) { return basis[m](x) * basis[n](x); }, false};
            const IntegrateResult res = integrate_window(g, tol);
            // (m, n) and (n, m) share one integrand; fill both halves
            rep.gram(m, n) = rep.gram(n, m) = res.value;
            rep.degraded = rep.degraded || !res.converged;
            double s = 0.0;
            for (int k = 0; k < nk; ++k) s += rule.weights[k] * bval(k, m) * bval(k, n);
            rep.route_b(m, n) = rep.route_b(n, m) = s;
        }
    }

    rep.route_disagreement = (rep.gram - rep.route_b).cwiseAbs().maxCoeff();
    for (int m = 0; m <= nmax; ++m) {
        for (int n = 0; n <= nmax; ++n) {
            if (m == n) {
                const double dev = std::abs(rep.gram(n, n) / rep.closed_form_diag[n] - 1.0);
                rep.max_diag_reldev = std::max(rep.max_diag_reldev, dev);
            } else {
                rep.max_offdiag = std::max(rep.max_offdiag, std::abs(rep.gram(m, n)));
            }
        }
    }
    return rep;
}

}  // namespace

GramReport gram_transformed(const LadderTable& table, Family family, double T, int nmax,
                            double tol) {
    if (family == Family::general) {
        throw std::domain_error("gram_transformed: general family needs explicit alpha, beta");
    }
    return gram_core(table, family, 0.0, 0.0, T, nmax, tol);
}

GramReport gram_transformed(const LadderTable& table, double alpha, double beta, double T,
                            int nmax, double tol) {
    return gram_core(table, Family::general, alpha, beta, T, nmax, tol);
}

AsymptoticScan asymptotic_scan(const TableSource& tables, const JacobiSpec& spec,
                               std::span<const double> T_values, double tol) {
    if (!tables) {
        throw std::domain_error("asymptotic_scan: requires a table source");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("asymptotic_scan: requires tol > 0");
    }
    for (std::size_t i = 0; i < T_values.size(); ++i) {
        if (!(T_values[i] > 0.0) || T_values[i] > 1e6) {
            throw std::domain_error("asymptotic_scan: T outside the desk cap (0, 1e6]");
        }
        if (i > 0 && !(T_values[i - 1] < T_values[i])) {
            throw std::domain_error("asymptotic_scan: T values must increase");
        }
    }

    const Basis b = basis_for(spec.family, spec.alpha, spec.beta, spec.n);
    AsymptoticScan scan;
    scan.spec = b.spec;
    scan.limit = b.norm_const();
    for (double T : T_values) {
        const LadderTable& table = tables(T);
        const Window win = make_window(table, T);
        const WindowIntegrand g{table, win, b.spec.alpha, b.spec.beta,
                                [&](double x) {
                                    const double v = b(x);
                                    return v * v;
                                },
                                true};
        const IntegrateResult res = integrate_window(g, tol);
        ScanPoint pt;
        pt.T = T;
        pt.t_bar = win.wp.preimage_lo;
        pt.integral = res.value;
        pt.ratio = res.value / std::log(pt.t_bar);
        pt.reldev = std::abs(pt.ratio / scan.limit - 1.0);
        pt.degraded = !res.converged;
        scan.points.push_back(pt);
    }
    return scan;
}

std::vector<WindowDistance> window_distance_check(const TableSource& tables,
                                                  std::span<const double> T_values) {
    if (!tables) {
        throw std::domain_error("window_distance_check: requires a table source");
    }
    std::vector<WindowDistance> rows;
    rows.reserve(T_values.size());
    for (double T : T_values) {
        const WindowPair wp = tables(T).window_preimage(T);
        rows.push_back({T, wp.preimage_lo, wp.preimage_lo / T,
                        (wp.preimage_hi - wp.preimage_lo) * std::log(T) / T});
    }
    return rows;
}

LadderTable build_window_table(double T, const GridPolicy& grid, double margin) {
    if (!(T >= 100.0 && T <= 1e6)) {
        throw std::domain_error("build_window_table: requires 100 <= T <= 1e6");
    }
    if (!(margin >= 2.0)) {
        throw std::domain_error("build_window_table: requires margin >= 2");
    }
    // The anchor makes phi(t_lo) = t_lo - (1-c) pi(t_lo), so aiming t_lo at
    // image T - margin means adding the gap as it is at the preimage, not at
    // T; one fixed-point refinement of pi covers the growth in between.
    double gap = kOneMinusGamma * static_cast<double>(prime_count(T));
    gap = kOneMinusGamma * static_cast<double>(prime_count(T + gap));

    // Windows are image-positioned, which bias-samples t toward large
    // derivative values, so segments hosting them run into sharp peaks of
    // Z^2 more often than t-uniform segments would.  When the resolution
    // gate trips, densify and start the coverage search over.
    GridPolicy dense = grid;
    for (int density = 0; density < 5; ++density) {
        double t_lo = T + gap - margin;
        double t_hi = t_lo + 2.0 + 2.0 * margin;
        try {
            for (int attempt = 0; attempt < 4; ++attempt) {
                LadderTable table = build_ladder(t_lo, t_hi, dense);
                const bool low_ok = table.phi_lo() <= T - 1.0;
                const bool high_ok = table.phi_hi() >= T + 3.0;
                if (low_ok && high_ok) return table;
                // derivative ran low (or the gap estimate high); widen
                if (!low_ok) t_lo -= margin;
                if (!high_ok) t_hi += 2.0 * margin;
            }
            throw std::runtime_error("build_window_table: window not covered after retries");
        } catch (const ResolutionError&) {
            dense.samples_per_gap *= 1.5;
        }
    }
    throw std::runtime_error("build_window_table: resolution gate still tripping at 5x density");
}

}  // namespace zladder
