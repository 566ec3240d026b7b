#ifndef HMCF_POTENTIAL_HPP
#define HMCF_POTENTIAL_HPP

#include <string>
#include <utility>
#include <vector>

namespace hmcf {

// Radially symmetric potential density v(s), s = |F|^2 / 2, with
//   v(s)   = exp(-(n/2) \int_1^s eta(w)/w dw),      v(1) = 1,
//   phi(s) = (n / (2 s)) eta(s) = -v'(s) / v(s).
//
// Supported shapes of eta:
//   zero-eta   eta == 0, v == 1           (pure mean curvature + pressure)
//   gaussian   eta(w) = 2 gamma w / n     (v = exp(-gamma (s - 1)))
//   power      eta(w) = kappa w^{p+1}
//   tabulated  eta sampled on a strictly increasing w-grid (linear
//              interpolation, adaptive Gauss-Kronrod quadrature for log v)
enum class PotentialKind { ZeroEta, Gaussian, Power, Tabulated };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::ZeroEta;
    int dimension = 1;            // n
    double gamma = 0.0;           // gaussian
    double kappa = 0.0;           // power
    double power = 0.0;           // power exponent p
    std::vector<double> table_w;  // tabulated
    std::vector<double> table_eta;

    static PotentialSpec zero_eta();
    static PotentialSpec gaussian(double gamma, int n = 1);
    static PotentialSpec power_law(double kappa, double p, int n = 1);
    static PotentialSpec tabulated(std::vector<double> w, std::vector<double> eta, int n = 1);

    // Two-column CSV (w, eta), strictly increasing w.
    static PotentialSpec tabulated_from_csv(const std::string& path, int n = 1);
};

double eta_of_w(const PotentialSpec& spec, double w);
double v_of_s(const PotentialSpec& spec, double s);
double phi_of_s(const PotentialSpec& spec, double s);
double dphi_ds(const PotentialSpec& spec, double s);

// Growth condition check: 0 < |eta(w)/w| <= |w|^p sampled over [lo, hi].
// zero-eta sits on the excluded boundary |eta/w| = 0 and is reported as a
// special pass (see `boundary_case`).
struct GrowthReport {
    bool pass = false;
    bool boundary_case = false;   // eta == 0 identically
    double worst_margin = 0.0;    // min over samples of |w|^p - |eta/w|
    double worst_w = 0.0;
    std::string note;
};

GrowthReport check_growth(const PotentialSpec& spec, double p,
                          double lo, double hi, int samples = 512);

} // namespace hmcf

#endif
