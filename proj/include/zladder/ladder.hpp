#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "zladder/hardy.hpp"

namespace zladder {

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One interpolation panel of phi1 as a degree-7 polynomial in s = t - origin.
// Recentering is an exact Taylor shift, so a caller can place the origin on
// a computed root and obtain a factor that vanishes identically there; this
// is what makes endpoint-singular weight integrals computable at full
// precision (see EndpointIntegrands in quadrature.hpp).
struct PanelPoly {
    double origin = 0.0;
    double lo = 0.0, hi = 0.0;  // validity range in t
    std::array<double, 8> c{};  // value(t) = sum c[k] (t - origin)^k

    double eval(double t) const;
    double deriv(double t) const;
    PanelPoly recentered(double new_origin) const;
};

// Preimage of the image window [T, T+2] under phi1.
struct WindowPair {
    double T = 0.0;
    double image_lo = 0.0, image_hi = 0.0;
    double preimage_lo = 0.0, preimage_hi = 0.0;
    double gap_ratio = 0.0;  // (preimage_lo - T) / (T / ln T)
};

// Tabulated strictly-increasing surrogate ladder phi1 with derivative
// Z(t)^2 / ln t.  The table interpolates w = Z / sqrt(ln t) with a natural
// cubic spline and takes phi1' := w-hat^2, phi1 := its exact per-panel
// antiderivative.  Squaring the interpolated square root is what keeps the
// derivative nonnegative everywhere *and* exactly Z^2/ln t at the knots; a
// shape-constrained cubic on phi1 itself cannot have both, because the
// panels flanking a simple zero of Z sit on the monotonicity boundary
// (derivative-to-secant ratio -> 3).
class LadderTable {
  public:
    double phi(double t) const;
    double dphi(double t) const;  // >= 0 by construction

    // the surrogate weight: identical to dphi, named for call sites that
    // read as integrals against Z-tilde^2
    double tilde_z_sq(double t) const { return dphi(t); }

    // phi1^{-1}(y) by knot bracketing + safeguarded Newton; residual in
    // phi1-units lands well below 1e-9
    double invert(double y) const;

    WindowPair window_preimage(double T) const;

    PanelPoly panel_poly(double t) const;

    double t_lo() const { return t_.front(); }
    double t_hi() const { return t_.back(); }
    double phi_lo() const { return y_.front(); }
    double phi_hi() const { return y_.back(); }
    double anchor_t() const { return t_.front(); }
    double anchor_phi() const { return y_.front(); }
    std::size_t knots() const { return t_.size(); }
    std::span<const double> knot_t() const { return t_; }
    std::span<const double> knot_phi() const { return y_; }
    std::span<const double> knot_dphi() const { return dphi_; }

    // versioned binary ("ZLT1"); save is atomic, load revalidates the
    // stored phi1 column against a rebuild from (t, w) and throws
    // CacheError on any inconsistency
    void save(const std::filesystem::path& path) const;
    static LadderTable load(const std::filesystem::path& path);
    void export_csv(const std::filesystem::path& path) const;  // t,phi1,dphi1

  private:
    LadderTable() = default;
    friend LadderTable build_ladder(double t_lo, double t_hi, const GridPolicy& grid);

    std::size_t panel_of(double t) const;
    void spline_and_accumulate(double phi0);

    std::vector<double> t_, w_;              // knots: w = Z / sqrt(ln t)
    std::vector<double> y_, dphi_;           // knots: phi1 and w^2
    std::vector<std::array<double, 4>> a_;   // per-panel cubic of w-hat
    GridPolicy policy_;
};

// Build over [t_lo, t_hi], 50 <= t_lo < t_hi.  Knot spacing follows the
// grid policy; the anchor pins phi1(t_lo) = t_lo - (1-c) pi(t_lo) with c
// Euler's constant and pi the prime count.  Every panel is checked by
// comparing two refinement levels of a direct quadrature of Z^2/ln t;
// disagreement beyond 1e-8 means the grid cannot resolve the oscillations
// and raises ResolutionError.
LadderTable build_ladder(double t_lo, double t_hi, const GridPolicy& grid = {});

}  // namespace zladder
