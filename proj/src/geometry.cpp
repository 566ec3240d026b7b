#include "hmcf/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

namespace {

RealField speed_of(const VecField& positions) {
    const VecField tau = spectral::derivative(positions, 1);
    RealField sg(tau.size());
    for (std::size_t j = 0; j < tau.size(); ++j) sg[j] = norm(tau[j]);
    return sg;
}

int turning_number_of(const VecField& tau) {
    // Accumulated angle increments of the tangent, each wrapped to (-pi, pi].
    double total = 0.0;
    const std::size_t m = tau.size();
    for (std::size_t j = 0; j < m; ++j) {
        const Vec2& a = tau[j];
        const Vec2& b = tau[(j + 1) % m];
        total += std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

} // namespace

double GridImmersion::degeneracy_threshold() const {
    double mean = 0.0;
    for (double m : reference_density) mean += m;
    mean /= static_cast<double>(reference_density.size());
    return 1e-6 * mean;
}

GridImmersion make_immersion(VecField positions) {
    spectral::check_grid(positions.size());
    if (!all_finite(positions)) throw NumericalError("immersion positions not finite");
    GridImmersion F;
    F.reference_density = speed_of(positions);
    F.positions = std::move(positions);
    for (double m : F.reference_density)
        if (m <= 0.0) throw DegeneracyError("reference density must be positive");
    const double thr = F.degeneracy_threshold();
    for (double m : F.reference_density)
        if (m <= thr) throw DegeneracyError("initial immersion is degenerate");
    return F;
}

GridImmersion with_reference(VecField positions, RealField reference_density) {
    spectral::check_grid(positions.size());
    if (positions.size() != reference_density.size())
        throw ConfigError("reference density length does not match grid");
    if (!all_finite(positions)) throw NumericalError("immersion positions not finite");
    GridImmersion F;
    F.positions = std::move(positions);
    F.reference_density = std::move(reference_density);
    return F;
}

GeometryBundle geometry_of(const GridImmersion& F) {
    const std::size_t m = F.size();
    GeometryBundle b;
    b.tangent = spectral::derivative(F.positions, 1);
    b.second_deriv = spectral::derivative(F.positions, 2);

    b.metric.resize(m);
    b.sqrt_metric.resize(m);
    b.unit_tangent.resize(m);
    b.normal.resize(m);
    b.second_form.resize(m);
    b.mean_curvature.resize(m);
    b.measure_ratio.resize(m);

    const double thr = F.degeneracy_threshold();
    for (std::size_t j = 0; j < m; ++j) {
        const double sg = norm(b.tangent[j]);
        if (!(sg > thr))
            throw DegeneracyError("immersion condition failed at node " + std::to_string(j) +
                                  ": |dF/dtheta| = " + std::to_string(sg));
        b.sqrt_metric[j] = sg;
        b.metric[j] = sg * sg;
        b.unit_tangent[j] = (1.0 / sg) * b.tangent[j];
        b.normal[j] = rot(b.unit_tangent[j]);
        b.second_form[j] = -dot(b.second_deriv[j], b.normal[j]);
        b.mean_curvature[j] = b.second_form[j] / b.metric[j];
        b.measure_ratio[j] = sg / F.reference_density[j];
    }

    const double dth = spectral::grid_spacing(m);
    double vol = 0.0;
    for (std::size_t j = 0; j < m; ++j) vol += dot(F.positions[j], rot(b.tangent[j]));
    b.volume = 0.5 * vol * dth;
    b.turning_number = turning_number_of(b.tangent);
    return b;
}

VecField outward_normal(const GridImmersion& F) { return geometry_of(F).normal; }

RealField mean_curvature(const GridImmersion& F) { return geometry_of(F).mean_curvature; }

double enclosed_volume(const GridImmersion& F) { return geometry_of(F).volume; }

RealField measure_ratio(const GridImmersion& F) { return geometry_of(F).measure_ratio; }

VecField surface_gradient(const GridImmersion& F, const RealField& f) {
    const GeometryBundle b = geometry_of(F);
    const RealField df = spectral::derivative(f, 1);
    VecField out(F.size());
    for (std::size_t j = 0; j < F.size(); ++j)
        out[j] = (df[j] / b.metric[j]) * b.tangent[j];
    return out;
}

RealField laplace_beltrami(const GridImmersion& F, const RealField& f) {
    const GeometryBundle b = geometry_of(F);
    RealField w = spectral::derivative(f, 1);
    for (std::size_t j = 0; j < F.size(); ++j) w[j] /= b.sqrt_metric[j];
    RealField out = spectral::derivative(w, 1);
    for (std::size_t j = 0; j < F.size(); ++j) out[j] /= b.sqrt_metric[j];
    return out;
}

std::pair<RealField, VecField> decompose(const GridImmersion& F, const VecField& h) {
    const VecField nu = outward_normal(F);
    RealField u(F.size());
    VecField top(F.size());
    for (std::size_t j = 0; j < F.size(); ++j) {
        u[j] = dot(h[j], nu[j]);
        top[j] = h[j] - u[j] * nu[j];
    }
    return {std::move(u), std::move(top)};
}

} // namespace hmcf
