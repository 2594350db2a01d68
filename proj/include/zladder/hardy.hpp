#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zladder {

enum class ZMethod { riemann_siegel, euler_maclaurin };

struct HardyEval {
    double t = 0.0;
    double z = 0.0;
    double theta = 0.0;
    double zeta_sq = 0.0;  // Z^2 = |zeta(1/2+it)|^2
    ZMethod method = ZMethod::riemann_siegel;
};

// Riemann-Siegel evaluation of Z(t) for t >= 10.  `terms` selects the
// highest classical correction order C_terms applied, 0..4; at terms = 4
// the tabulated orders up to C_13 are applied as well, which is what makes
// the low range t < ~1000 accurate to ~2e-9 instead of ~1e-5.  Above that
// the truncation error falls off like t^(-(2*terms+3)/4).
double hardy_z_rs(double t, int terms = 4);

// Tabulated correction coefficient C_k(p), k in 0..13, p in [0, 1].
// Diagnostic access for cross-checks against the closed-form expressions.
double rs_correction(int k, double p);

// Euler-Maclaurin route, independent of the Riemann-Siegel machinery:
// zeta(1/2+it) summed directly with tail corrections, then rotated by
// theta.  O(t) work per call, so capped at t <= 2e5.  The imaginary part
// of the rotated value is a self-check and stays below ~1e-10 here.
double hardy_z_em(double t);
std::complex<double> zeta_half_em(double t);

// Default dispatcher: Euler-Maclaurin below t = 50, Riemann-Siegel with
// full corrections above.
double hardy_z(double t);

struct GridPolicy {
    double samples_per_gap = 8.0;  // grid step <= mean_zero_gap(t_hi) / this
    int terms = 4;
    double em_below = 50.0;
};

// Uniform Z^2 grid over [t_lo, t_hi], step bounded by the policy so the
// oscillations of Z stay resolved.  Endpoints included.  t_lo >= 10.
std::vector<HardyEval> zsq_grid(double t_lo, double t_hi, const GridPolicy& policy = {});

struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary grid cache ("ZQG1" files): save is atomic (tmp file + rename).
// try_load returns nullopt when the file is absent or was built with
// different parameters; a present-but-corrupt file throws CacheError.
void save_grid(const std::filesystem::path& path, double t_lo, double t_hi,
               const GridPolicy& policy, const std::vector<HardyEval>& grid);
std::optional<std::vector<HardyEval>> try_load_grid(const std::filesystem::path& path,
                                                    double t_lo, double t_hi,
                                                    const GridPolicy& policy);

}  // namespace zladder
