// greens.hpp: reservoir self-energies and monitored retarded/advanced Green's functions

#pragma once

#include "mtransport/model.hpp"
#include "mtransport/numerics.hpp"

namespace mt {

struct ReservoirSelfEnergy {
    Mat retarded; // Sigma^R_r(w)
    Mat gamma;    // Gamma_r(w) = i (Sigma^R - Sigma^A) / 2, positive semidefinite
    Mat keldysh;  // Sigma^K_r(w) = -2i Gamma_r tanh((w - mu_r) / 2T_r)
};

ReservoirSelfEnergy reservoir_self_energy(const Reservoir& res, double omega, int n_sites);

struct DressedGreens {
    Mat retarded;
    Mat advanced;
};

/// Reciprocal condition number below which the inverse Green's function is
/// treated as singular.
inline constexpr double kSingularRcond = 1e-13;

/// Evaluates G^R(w) = [w - h - Sigma^R_L - Sigma^R_R + i gamma O^2]^{-1} and
/// the reservoir quantities at one frequency. Holds only precomputed
/// frequency-independent pieces, so one instance may be shared by threads.
class GreensEvaluator {
public:
    explicit GreensEvaluator(const Junction& j);

    const Junction& junction() const { return *j_; }
    int n() const { return n_; }

    /// Projector v_r v_r^dagger of reservoir r onto the system.
    const Mat& projector(Side s) const { return proj_[index(s)]; }
    const Mat& monitor_squared() const { return o2_; }

    /// Scalar kernel sigma_r(w) and Gamma_r(w) = -Im sigma_r(w).
    cplx kernel(Side s, double omega) const;
    double hybridization(Side s, double omega) const;

    /// Throws SingularMatrixError when the inverse is numerically singular.
    Mat retarded(double omega) const;

private:
    const Junction* j_;
    int n_;
    Mat o2_;
    Mat proj_[2];
};

DressedGreens dressed_greens(const Junction& j, double omega);

/// A(w) = (i / 2 pi) (G^R - G^A).
Mat spectral_function(const Junction& j, double omega);

/// T(w) = 4 tr[Gamma_L G^R Gamma_R G^A].
double transmission(const Junction& j, double omega);

/// `base` with the junction's breakpoints and tail scale filled in.
QuadratureSpec junction_quadrature(const Junction& j, const QuadratureSpec& base);

} // namespace mt
