#include "zladder/hardy.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "zladder/constants.hpp"
#include "zladder/special.hpp"

namespace zladder {

namespace {

#include "rs_correction_tables.inc"

double clenshaw(const double* c, int degree, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (int j = degree; j >= 1; --j) {
        const double b0 = 2.0 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

// B_{2k} / (2k)! for the Euler-Maclaurin tail, k = 1..12.
constexpr double kEmTail[] = {
    1.0 / 6 / 2,
    -1.0 / 30 / 24,
    1.0 / 42 / 720,
    -1.0 / 30 / 40320,
    5.0 / 66 / 3628800,
    -691.0 / 2730 / 479001600,
    7.0 / 6 / 87178291200.0,
    -3617.0 / 510 / 20922789888000.0,
    43867.0 / 798 / 6402373705728000.0,
    -174611.0 / 330 / 2432902008176640000.0,
    854513.0 / 138 / 1.12400072777760768e21,
    -236364091.0 / 2730 / 6.2044840173323944e23,
};

}  // namespace

double hardy_z_rs(double t, int terms) {
    if (!(t >= 10.0)) {
        throw std::domain_error("hardy_z_rs: requires t >= 10");
    }
    if (terms < 0 || terms > 4) {
        throw std::domain_error("hardy_z_rs: terms must be in 0..4");
    }
    const double a = std::sqrt(t / (2.0 * kPi));
    const auto N = static_cast<long>(a);
    const double p = a - static_cast<double>(N);
    const double th = theta(t);

    // Main sum, accumulated in long double: the terms are O(1) and there
    // are O(sqrt(t)) of them, so this keeps the sum's rounding negligible
    // next to the phase rounding inside cos.
    long double main = 0.0L;
    for (long n = 1; n <= N; ++n) {
        main += std::cos(th - t * std::log(static_cast<double>(n))) /
                std::sqrt(static_cast<double>(n));
    }
    main *= 2.0L;

    const int kmax = terms < 4 ? terms : kRsOrders - 1;
    const double x = 2.0 * p - 1.0;
    double corr = 0.0;
    double apow = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        corr += clenshaw(kRsCheb[k], kRsDegree[k], x) / apow;
        apow *= a;
    }
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    return static_cast<double>(main) + sign * corr / std::sqrt(a);
}

double rs_correction(int k, double p) {
    if (k < 0 || k >= kRsOrders) {
        throw std::domain_error("rs_correction: order out of range");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("rs_correction: p must be in [0, 1]");
    }
    return clenshaw(kRsCheb[k], kRsDegree[k], 2.0 * p - 1.0);
}

std::complex<double> zeta_half_em(double t) {
    if (!(t > 0.0) || t > 2e5) {
        throw std::domain_error("zeta_half_em: requires 0 < t <= 2e5");
    }
    const std::complex<double> s(0.5, t);
    const long N = std::max(20L, static_cast<long>(std::ceil(t / 2.0)));

    std::complex<long double> sum = 0.0L;
    for (long n = 1; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        sum += std::complex<long double>(amp * std::cos(t * ln), -amp * std::sin(t * ln));
    }
    const double lnN = std::log(static_cast<double>(N));
    const std::complex<double> Nms =  // N^(-s)
        (1.0 / std::sqrt(static_cast<double>(N))) *
        std::complex<double>(std::cos(t * lnN), -std::sin(t * lnN));

    std::complex<double> z = static_cast<std::complex<double>>(sum);
    z += Nms * static_cast<double>(N) / (s - 1.0);  // N^(1-s)/(s-1)
    z += 0.5 * Nms;

    // Tail: sum_k B_{2k}/(2k)! * (s)_{2k-1} * N^(-s-2k+1)
    std::complex<double> poch = s;              // (s)_1
    std::complex<double> scale = Nms * static_cast<double>(N);
    const double N2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    for (int k = 1; k <= 12; ++k) {
        scale *= N2;
        z += kEmTail[k - 1] * poch * scale;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    }
    return z;
}

double hardy_z_em(double t) {
    const double th = theta(t);
    const std::complex<double> rot(std::cos(th), std::sin(th));
    return (rot * zeta_half_em(t)).real();
}

double hardy_z(double t) {
    return t < 50.0 ? hardy_z_em(t) : hardy_z_rs(t);
}

std::vector<HardyEval> zsq_grid(double t_lo, double t_hi, const GridPolicy& policy) {
    if (!(t_lo >= 10.0) || !(t_hi > t_lo)) {
        throw std::domain_error("zsq_grid: requires 10 <= t_lo < t_hi");
    }
    if (!(policy.samples_per_gap >= 1.0)) {
        throw std::domain_error("zsq_grid: samples_per_gap must be >= 1");
    }
    // gap decreases with t, so the cap at t_hi bounds the whole range
    const double gap = mean_zero_gap(std::max(t_hi, 25.0));
    const double hmax = gap / policy.samples_per_gap;
    const auto steps = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / hmax));
    const double h = (t_hi - t_lo) / static_cast<double>(steps);

    std::vector<HardyEval> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = (i == steps) ? t_hi : t_lo + h * static_cast<double>(i);
        HardyEval& e = grid[i];
        e.t = t;
        if (t < policy.em_below) {
            e.z = hardy_z_em(t);
            e.method = ZMethod::euler_maclaurin;
        } else {
            e.z = hardy_z_rs(t, policy.terms);
            e.method = ZMethod::riemann_siegel;
        }
        e.theta = theta(t);
        e.zeta_sq = e.z * e.z;
    }
    return grid;
}

namespace {

constexpr char kGridMagic[4] = {'Z', 'Q', 'G', '1'};

template <typename T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T take(const char*& cur, const char* end) {
    if (end - cur < static_cast<std::ptrdiff_t>(sizeof(T))) {
        throw CacheError("grid cache: truncated file");
    }
    T v;
    std::memcpy(&v, cur, sizeof(T));
    cur += sizeof(T);
    return v;
}

}  // namespace

void save_grid(const std::filesystem::path& path, double t_lo, double t_hi,
               const GridPolicy& policy, const std::vector<HardyEval>& grid) {
    std::string buf;
    buf.reserve(48 + 16 * grid.size());
    buf.append(kGridMagic, 4);
    put<double>(buf, t_lo);
    put<double>(buf, t_hi);
    put<double>(buf, policy.samples_per_gap);
    put<std::int32_t>(buf, policy.terms);
    put<double>(buf, policy.em_below);
    put<std::uint64_t>(buf, grid.size());
    for (const HardyEval& e : grid) {
        put<double>(buf, e.t);
        put<double>(buf, e.z);
    }

    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
            throw CacheError("grid cache: cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw CacheError("grid cache: cannot move into place: " + ec.message());
    }
}

std::optional<std::vector<HardyEval>> try_load_grid(const std::filesystem::path& path,
                                                    double t_lo, double t_hi,
                                                    const GridPolicy& policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const char* cur = buf.data();
    const char* end = cur + buf.size();
    if (buf.size() < 4 || std::memcmp(cur, kGridMagic, 4) != 0) {
        throw CacheError("grid cache: bad magic in " + path.string());
    }
    cur += 4;
    const double lo = take<double>(cur, end);
    const double hi = take<double>(cur, end);
    const double spg = take<double>(cur, end);
    const auto terms = take<std::int32_t>(cur, end);
    const double em_below = take<double>(cur, end);
    if (lo != t_lo || hi != t_hi || spg != policy.samples_per_gap ||
        terms != policy.terms || em_below != policy.em_below) {
        return std::nullopt;  // stale parameters: caller rebuilds
    }
    const auto n = take<std::uint64_t>(cur, end);
    if (buf.size() != 48 + 16 * n) {
        throw CacheError("grid cache: size mismatch in " + path.string());
    }
    std::vector<HardyEval> grid(n);
    for (auto& e : grid) {
        e.t = take<double>(cur, end);
        e.z = take<double>(cur, end);
        e.theta = theta(e.t);
        e.zeta_sq = e.z * e.z;
        e.method = e.t < policy.em_below ? ZMethod::euler_maclaurin : ZMethod::riemann_siegel;
    }
    return grid;
}

}  // namespace zladder
