#include "hmcf/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hmcf/errors.hpp"

namespace hmcf::spectral {

namespace {

// FFTW planning is not thread-safe; executing a plan on fresh arrays is.
// Plans are created once per grid size with FFTW_UNALIGNED so they can run
// on any heap buffer, and FFTW_ESTIMATE keeps planning deterministic.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;

PlanPair plans_for(std::size_t m) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> a(m), b(m);
    auto* ap = reinterpret_cast<fftw_complex*>(a.data());
    auto* bp = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(m), ap, bp, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(m), ap, bp, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(m, p);
    return p;
}

std::vector<std::complex<double>> run_plan(fftw_plan plan,
                                           std::vector<std::complex<double>> in) {
    std::vector<std::complex<double>> out(in.size());
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace

void check_grid(std::size_t m) {
    if (m < 16 || (m & (m - 1)) != 0)
        throw ConfigError("grid size must be a power of two with M >= 16, got M = " +
                          std::to_string(m));
}

int mode_number(std::size_t i, std::size_t m) {
    return i < m / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(m);
}

double grid_spacing(std::size_t m) { return 2.0 * std::numbers::pi / static_cast<double>(m); }

std::vector<double> grid_angles(std::size_t m) {
    std::vector<double> th(m);
    const double dth = grid_spacing(m);
    for (std::size_t j = 0; j < m; ++j) th[j] = dth * static_cast<double>(j);
    return th;
}

std::vector<std::complex<double>> to_modes(std::span<const double> u) {
    const std::size_t m = u.size();
    check_grid(m);
    std::vector<std::complex<double>> in(m);
    for (std::size_t j = 0; j < m; ++j) in[j] = u[j];
    auto out = run_plan(plans_for(m).fwd, std::move(in));
    const double inv = 1.0 / static_cast<double>(m);
    for (auto& c : out) c *= inv;
    return out;
}

std::vector<double> from_modes(std::span<const std::complex<double>> modes) {
    const std::size_t m = modes.size();
    check_grid(m);
    auto out = run_plan(plans_for(m).bwd, std::vector<std::complex<double>>(modes.begin(), modes.end()));
    std::vector<double> re(m);
    for (std::size_t j = 0; j < m; ++j) re[j] = out[j].real();
    return re;
}

RealField derivative(std::span<const double> u, int order) {
    const std::size_t m = u.size();
    auto modes = to_modes(u);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = mode_number(i, m);
        if ((order % 2) != 0 && k == -static_cast<int>(m / 2)) {
            modes[i] = 0.0; // unpaired Nyquist bin
            continue;
        }
        modes[i] *= std::pow(std::complex<double>(0.0, static_cast<double>(k)), order);
    }
    return from_modes(modes);
}

VecField derivative(const VecField& u, int order) {
    const std::size_t m = u.size();
    RealField cx(m), cy(m);
    for (std::size_t j = 0; j < m; ++j) { cx[j] = u[j].x; cy[j] = u[j].y; }
    const RealField dx = derivative(cx, order);
    const RealField dy = derivative(cy, order);
    VecField out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = {dx[j], dy[j]};
    return out;
}

double sobolev_norm(std::span<const double> u, double s) {
    if (s < 0.0) throw ConfigError("Sobolev order must be nonnegative");
    const std::size_t m = u.size();
    auto modes = to_modes(u);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double k = static_cast<double>(mode_number(i, m));
        acc += std::pow(1.0 + k * k, s) * std::norm(modes[i]);
    }
    return std::sqrt(acc);
}

double sobolev_norm(const VecField& u, double s) {
    const std::size_t m = u.size();
    RealField cx(m), cy(m);
    for (std::size_t j = 0; j < m; ++j) { cx[j] = u[j].x; cy[j] = u[j].y; }
    const double nx = sobolev_norm(cx, s);
    const double ny = sobolev_norm(cy, s);
    return std::hypot(nx, ny);
}

double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

RealField smooth_truncate(std::span<const double> u, double cutoff) {
    if (cutoff <= 0.0) throw ConfigError("truncation level must be positive");
    const std::size_t m = u.size();
    auto modes = to_modes(u);
    for (std::size_t i = 0; i < m; ++i) {
        const double ak = std::fabs(static_cast<double>(mode_number(i, m)));
        modes[i] *= smoothstep(cutoff - ak);
    }
    return from_modes(modes);
}

VecField smooth_truncate(const VecField& u, double cutoff) {
    const std::size_t m = u.size();
    RealField cx(m), cy(m);
    for (std::size_t j = 0; j < m; ++j) { cx[j] = u[j].x; cy[j] = u[j].y; }
    const RealField tx = smooth_truncate(cx, cutoff);
    const RealField ty = smooth_truncate(cy, cutoff);
    VecField out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = {tx[j], ty[j]};
    return out;
}

} // namespace hmcf::spectral
