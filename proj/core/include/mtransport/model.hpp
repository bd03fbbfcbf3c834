// model.hpp: physical problem definition: Hamiltonian, monitor, reservoirs
//
// Units: hbar = e = k_B = 1, energies in units of a reference hopping t.
// Particle currents come out in units of t, heat currents in t^2.

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace mt {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermiticityTol = 1e-12;

/// Occupation of a fermionic mode; exact step at T = 0 (1/2 at omega == mu).
double fermi(double omega, double mu, double T);

/// tanh((omega - mu) / 2T), i.e. 1 - 2 f; sign(omega - mu) at T = 0.
double thermal_factor(double omega, double mu, double T);

// Reservoir hybridization shapes. Each produces a scalar kernel that is
// embedded on the system as kernel(omega) * v v^dagger.

/// Energy filter between system and a wide metallic lead:
/// Sigma^R(w) = t_c^2 / (w - eps_f + i delta).
struct LorentzianFilter {
    double t_c = 1.0;
    double delta = 1.0;
    double eps_f = 0.0;
};

/// Constant coupling gamma0 on |w| <= half_bandwidth with the principal-value
/// log term as real part. wide_band makes Gamma = gamma0 on the whole axis
/// with a purely imaginary kernel; half_bandwidth is then ignored.
struct FlatBand {
    double gamma0 = 0.0;
    double half_bandwidth = 1.0;
    bool wide_band = false;
};

/// Linearly interpolated Gamma(w) on an ascending grid, zero outside.
struct Tabulated {
    std::vector<double> grid;
    std::vector<double> values;
};

using HybridizationShape = std::variant<LorentzianFilter, FlatBand, Tabulated>;

struct CouplingSite {
    int site = 0;
    cplx weight{1.0, 0.0};
};

struct HybridizationModel {
    HybridizationShape shape;
    std::vector<CouplingSite> coupling_sites{{0, {1.0, 0.0}}};
};

struct Reservoir {
    HybridizationModel hyb;
    double mu = 0.0;
    double T = 0.0;
};

enum class Side { Left = 0, Right = 1 };

inline constexpr Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline constexpr int index(Side s) { return static_cast<int>(s); }
inline constexpr const char* name(Side s) { return s == Side::Left ? "L" : "R"; }

struct Junction {
    Mat h;      // n x n Hermitian single-particle Hamiltonian
    Mat O;      // n x n Hermitian monitored observable
    Reservoir left;
    Reservoir right;
    double gamma = 0.0; // monitoring strength

    int n_sites() const { return static_cast<int>(h.rows()); }
    const Reservoir& reservoir(Side s) const { return s == Side::Left ? left : right; }
    Reservoir& reservoir(Side s) { return s == Side::Left ? left : right; }
};

/// Gamma(w) >= 0 of the scalar shape (before site embedding).
double hybridization_value(const HybridizationShape& shape, double omega);
inline double hybridization_value(const HybridizationModel& hyb, double omega) {
    return hybridization_value(hyb.shape, omega);
}

/// Retarded scalar kernel sigma(w); -Im sigma(w) == hybridization_value.
cplx retarded_kernel(const HybridizationShape& shape, double omega);

/// The n-vector v with Sigma_r = sigma_r(w) v v^dagger.
Vec coupling_vector(const HybridizationModel& hyb, int n_sites);

/// Measurement rate equivalent to coupling O to a bosonic bath:
/// gamma = pi tau^2 coth(|mu_B| / 2 T_B).
double gamma_from_bosonic_bath(double tau, double mu_B, double T_B);

struct ValidationIssue {
    std::string code;
    std::string message;
    int row = -1;
    int col = -1;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

ValidationReport validate(const Junction& j);
ValidationReport validate(const Reservoir& r, int n_sites, const std::string& label);

/// Throws InvalidParameterError carrying the report summary if validation fails.
void require_valid(const Junction& j);

/// Frequencies where integrands have kinks, steps or resonances, and a
/// representative energy scale for the tail mapping.
struct FrequencyFeatures {
    std::vector<double> breakpoints;
    double scale = 1.0;
};

FrequencyFeatures frequency_features(const Junction& j);

/// True if either reservoir is a wide-band FlatBand. With monitoring, the
/// inelastic heat current of such a junction diverges logarithmically.
bool has_wide_band(const Junction& j);

} // namespace mt
