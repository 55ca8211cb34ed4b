#pragma once

#include "dfie/formulations.hpp"
#include "dfie/harmonics.hpp"
#include "dfie/media.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dfie {

/// E_in = amplitude * polarization * exp(i k0 direction . x),
/// H_in = sqrt(eps0/mu0) direction x E_in.
struct PlaneWave {
    Vec3 direction{0.0, 0.0, 1.0};
    Vec3 polarization{1.0, 0.0, 0.0};
    Complex amplitude{1.0};
};

/// Throws DomainError unless |direction| = 1, |polarization| = 1 and they are orthogonal.
void check_plane_wave(const PlaneWave& pw);

CVec3 incident_E(const PlaneWave& pw, const ProblemSetup& setup, const Vec3& x);
CVec3 incident_H(const PlaneWave& pw, const ProblemSetup& setup, const Vec3& x);

/// E_in = sum_nm A_nm M_nm + B_nm N_nm with the regular waves
///   M_nm = j_n(k0 r) W_nm,  N_nm = curl M_nm / k0.
/// The coefficients do not depend on k0.
struct WaveExpansion {
    int n_max = 0;
    std::vector<Complex> A, B;  ///< indexed by harmonic_index
};
WaveExpansion plane_wave_expansion(const PlaneWave& pw, int n_max);

/// Surface data of the incident wave on the unit sphere, per (n, m):
/// n x E_in and n x H_in in (V, W) components, n . E_in and n . H_in.
struct WaveTraces {
    int n_max = 0;
    std::vector<Complex> eV, eW, en, hV, hW, hn;  ///< indexed by harmonic_index
};

/// From the closed-form vector spherical wave expansion of the plane wave.
WaveTraces plane_wave_traces(const PlaneWave& pw, const ProblemSetup& setup, int n_max);

/// Same quantities by direct quadrature of the traces on an (n_theta x n_phi) sphere grid.
WaveTraces project_wave_traces(const PlaneWave& pw, const ProblemSetup& setup, int n_max, int n_theta, int n_phi);

/// DFIE right-hand sides, per (n, m), ordered like the block rows:
///   E problem: (f_V, f_W, q, g_V, g_W, p) with f = -n x E_in, g = -i w n x H_in, q = 0, p = -eps0 n . E_in
///   H problem: (f', q', g', p') with f' = -n x H_in, g' = +i w n x E_in, q' = 0, p' = -mu0 n . H_in
/// At n = 0 only (q, p).
struct BoundaryData {
    int n_max = 0;
    std::vector<Eigen::VectorXcd> e_problem, h_problem;
};
BoundaryData dfie_rhs(const PlaneWave& pw, const ProblemSetup& setup);

struct SolveResult {
    ProblemSetup setup;
    Formulation formulation;
    PlaneWave wave;
    /// DFIE: E-problem densities; Muller: (Js, Ks); cc: (J, K, rho, rho_M). Indexed by harmonic_index.
    std::vector<Eigen::VectorXcd> densities;
    /// DFIE: H-problem densities. Decoupled-cc: phi-system (alpha, beta).
    std::vector<Eigen::VectorXcd> secondary;
    /// Decoupled-cc: psi-system (alpha, beta).
    std::vector<Eigen::VectorXcd> tertiary;
    std::vector<Real> residuals;  ///< per (n, m): worst ||A x - b|| / (||A|| ||x|| + ||b||)
    Real condition = 0.0;
};

/// Throws NearSingularError if some block has sigma_min < 1e-13 sigma_max.
SolveResult solve(const Formulation& f, const PlaneWave& pw, const ProblemSetup& setup);

enum class Region { Interior, Exterior };

/// Exterior samples carry the scattered field (E0, H0), interior samples the
/// total field (E, H).
struct FieldSample {
    Vec3 point;
    Region region;
    CVec3 E, H;
};

/// Points within 1e-3 of the surface are rejected with DomainError. Muller
/// and decoupled-cc results throw UnsupportedError below omega = 1e-3.
std::vector<FieldSample> evaluate_field(const SolveResult& result, const std::vector<Vec3>& points);

Region region_of(const Vec3& point);

/// Mie series for the same problem, truncated at setup.n_max() + 8.
std::vector<FieldSample> mie_reference(const PlaneWave& pw, const ProblemSetup& setup,
                                       const std::vector<Vec3>& points);

/// Scattered-field coefficients relative to the incident ones for degree n:
/// TE (multiplying the outgoing M wave) and TM (outgoing N wave).
struct MieTCoefficients {
    Complex te, tm;
};
MieTCoefficients mie_t_coefficients(const ProblemSetup& setup, int n);

struct MaxwellReport {
    Real curl_defect = 0.0;        ///< max ||curl E - i w mu H|| / ||w mu H||
    Real divergence_defect = 0.0;  ///< max |div E| / ||E||
};

/// Fourth-order central differences with step `h` around each point.
MaxwellReport maxwell_consistency(const SolveResult& result, const std::vector<Vec3>& points, Real h = 1e-3);

/// max over a direction grid of || sqrt(mu0/eps0) H0 x rhat - E0 || at radius r.
Real silver_muller_residual(const SolveResult& result, Real r);

}  // namespace dfie
