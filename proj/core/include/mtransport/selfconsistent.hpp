// selfconsistent.hpp: stationary correlation matrix D_ij = <d_j^dagger d_i>
//
// The self-consistency D = int dw/pi G^R [sum_r f_r Gamma_r + gamma O D O] G^A
// is linear in D, so it splits into a drive term and a linear map:
//     D = source + map[D].

#pragma once

#include "mtransport/model.hpp"
#include "mtransport/numerics.hpp"

namespace mt {

struct TransferTensor {
    int n = 0;
    Mat source; // n x n, gamma independent drive
    /// n^2 x n^2 acting on column-major vec(X):
    /// map = (gamma / pi) int conj(G O) (x) (G O) dw.
    Mat map;
    double quadrature_error = 0.0;
    int panels = 0;

    Mat apply(const Mat& X) const;
};

struct TransferOptions {
    /// Multiplies every f_r in the drive term. Test hook for linearity checks.
    double drive_scale = 1.0;
};

TransferTensor assemble_transfer(const Junction& j, const QuadratureSpec& spec, const TransferOptions& opts = {});

struct CorrelationMatrix {
    Mat D;
    double residual = 0.0;                 // max-abs(D - source - map[D])
    double hermitization_correction = 0.0; // max-abs(D_raw - D)
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    int iterations = 0; // fixed-point solver only
};

inline constexpr double kEigenvalueSlack = 1e-9;
inline constexpr double kHermitianSlack = 1e-10;

/// Dense solve of (1 - map) vec(D) = vec(source).
CorrelationMatrix solve_correlation(const TransferTensor& tt);

struct FixedPointOptions {
    double damping = 0.5;
    int max_iter = 100000;
    double tolerance = 1e-13;
};

/// D <- (1 - damping) D + damping (source + map[D]), starting from source.
CorrelationMatrix solve_fixed_point(const TransferTensor& tt, const FixedPointOptions& opts = {});

} // namespace mt
