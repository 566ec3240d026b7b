#include "hmcf/potential.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hmcf/errors.hpp"

namespace hmcf {

namespace {

double interp_eta(const PotentialSpec& spec, double w) {
    const auto& ws = spec.table_w;
    const auto& es = spec.table_eta;
    if (w < ws.front() || w > ws.back())
        throw ConfigError("tabulated eta evaluated at w = " + std::to_string(w) +
                          " outside table range [" + std::to_string(ws.front()) + ", " +
                          std::to_string(ws.back()) + "]");
    auto it = std::upper_bound(ws.begin(), ws.end(), w);
    if (it == ws.begin()) ++it;
    if (it == ws.end()) --it;
    const std::size_t i = static_cast<std::size_t>(it - ws.begin());
    const double t = (w - ws[i - 1]) / (ws[i] - ws[i - 1]);
    return es[i - 1] + t * (es[i] - es[i - 1]);
}

// log v(s) = -(n/2) \int_1^s eta(w)/w dw
double log_v(const PotentialSpec& spec, double s) {
    if (s <= 0.0) throw ConfigError("potential argument s must be positive");
    const double n = static_cast<double>(spec.dimension);
    switch (spec.kind) {
        case PotentialKind::ZeroEta:
            return 0.0;
        case PotentialKind::Gaussian:
            // eta/w = 2 gamma / n
            return -spec.gamma * (s - 1.0);
        case PotentialKind::Power:
            // eta/w = kappa w^p
            return -(n / 2.0) * spec.kappa *
                   (std::pow(s, spec.power + 1.0) - 1.0) / (spec.power + 1.0);
        case PotentialKind::Tabulated: {
            if (s == 1.0) return 0.0;
            auto integrand = [&](double w) { return interp_eta(spec, w) / w; };
            boost::math::quadrature::gauss_kronrod<double, 15> quad;
            double err = 0.0;
            const double lo = std::min(1.0, s), hi = std::max(1.0, s);
            double val = quad.integrate(integrand, lo, hi, 12, 1e-12, &err);
            if (s < 1.0) val = -val;
            if (!std::isfinite(val) || err > 1e-8)
                throw NumericalError("quadrature failure integrating tabulated eta");
            return -(n / 2.0) * val;
        }
    }
    throw ConfigError("unknown potential kind");
}

} // namespace

PotentialSpec PotentialSpec::zero_eta() { return {}; }

PotentialSpec PotentialSpec::gaussian(double gamma, int n) {
    PotentialSpec s;
    s.kind = PotentialKind::Gaussian;
    s.gamma = gamma;
    s.dimension = n;
    return s;
}

PotentialSpec PotentialSpec::power_law(double kappa, double p, int n) {
    PotentialSpec s;
    s.kind = PotentialKind::Power;
    s.kappa = kappa;
    s.power = p;
    s.dimension = n;
    return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> w, std::vector<double> eta, int n) {
    if (w.size() != eta.size() || w.size() < 2)
        throw ConfigError("tabulated eta needs two columns of equal length >= 2");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] <= w[i - 1]) throw ConfigError("tabulated eta requires strictly increasing w");
    if (w.front() > 1.0 || w.back() < 1.0)
        throw ConfigError("tabulated eta must bracket w = 1 (normalization point of v)");
    PotentialSpec s;
    s.kind = PotentialKind::Tabulated;
    s.table_w = std::move(w);
    s.table_eta = std::move(eta);
    s.dimension = n;
    return s;
}

PotentialSpec PotentialSpec::tabulated_from_csv(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open eta table: " + path);
    std::vector<double> w, eta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a >> b)) throw ConfigError("malformed eta table line: " + line);
        w.push_back(a);
        eta.push_back(b);
    }
    return tabulated(std::move(w), std::move(eta), n);
}

double eta_of_w(const PotentialSpec& spec, double w) {
    const double n = static_cast<double>(spec.dimension);
    switch (spec.kind) {
        case PotentialKind::ZeroEta:  return 0.0;
        case PotentialKind::Gaussian: return 2.0 * spec.gamma * w / n;
        case PotentialKind::Power:    return spec.kappa * std::pow(w, spec.power + 1.0);
        case PotentialKind::Tabulated: return interp_eta(spec, w);
    }
    throw ConfigError("unknown potential kind");
}

double v_of_s(const PotentialSpec& spec, double s) {
    const double v = std::exp(log_v(spec, s));
    if (!std::isfinite(v) || v <= 0.0) throw NumericalError("potential v(s) not positive finite");
    return v;
}

double phi_of_s(const PotentialSpec& spec, double s) {
    if (s <= 0.0) throw ConfigError("potential argument s must be positive");
    const double n = static_cast<double>(spec.dimension);
    return n / (2.0 * s) * eta_of_w(spec, s);
}

double dphi_ds(const PotentialSpec& spec, double s) {
    const double n = static_cast<double>(spec.dimension);
    switch (spec.kind) {
        case PotentialKind::ZeroEta:  return 0.0;
        case PotentialKind::Gaussian: return 0.0; // phi == gamma
        case PotentialKind::Power:
            // phi = (n/2) kappa s^p
            return (n / 2.0) * spec.kappa * spec.power * std::pow(s, spec.power - 1.0);
        case PotentialKind::Tabulated: {
            const double d = 1e-6 * std::max(1.0, std::fabs(s));
            return (phi_of_s(spec, s + d) - phi_of_s(spec, s - d)) / (2.0 * d);
        }
    }
    throw ConfigError("unknown potential kind");
}

GrowthReport check_growth(const PotentialSpec& spec, double p,
                          double lo, double hi, int samples) {
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("growth check needs 0 < lo < hi");
    GrowthReport rep;
    if (spec.kind == PotentialKind::ZeroEta) {
        rep.pass = true;
        rep.boundary_case = true;
        rep.worst_margin = std::pow(lo, p);
        rep.worst_w = lo;
        rep.note = "eta == 0 sits on the excluded boundary of the strict growth "
                   "condition; accepted as the constant-potential reference case";
        return rep;
    }
    rep.worst_margin = std::numeric_limits<double>::infinity();
    bool positive = true;
    for (int i = 0; i < samples; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
        const double q = std::fabs(eta_of_w(spec, w) / w);
        if (q == 0.0) positive = false;
        const double margin = std::pow(std::fabs(w), p) - q;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_w = w;
        }
    }
    // round-off slack so the equality case |eta/w| = |w|^p passes
    rep.pass = positive && rep.worst_margin >= -1e-12;
    if (!positive) rep.note = "eta/w vanishes inside the range";
    return rep;
}

} // namespace hmcf
