#pragma once

#include "dfie/specfun.hpp"

#include <optional>
#include <string>

namespace dfie {

/// Relative permittivity/permeability of one homogeneous region.
struct Medium {
    Complex epsilon{1.0};
    Complex mu{1.0};
};

/// Passive: Im > 0, or real and positive, for each of epsilon and mu.
bool is_passive(Complex value);

/// Throws InvalidMaterialError naming `prefix + "epsilon"` or `prefix + "mu"`.
void check_passive(const Medium& m, const std::string& prefix = "");

/// omega * sqrt(eps mu) on the branch Im k >= 0; exactly 0 at omega = 0.
Complex wavenumber(Real omega, const Medium& m);

/// sqrt(eps mu) on the same branch (the wavenumber per unit omega).
Complex refractive_factor(const Medium& m);

/// Unit-sphere transmission problem. The scatterer radius is fixed at 1.
struct ProblemSetup {
    Real omega = 1.0;
    Medium exterior{};
    Medium interior{};
    std::optional<int> n_max_override;

    Complex k0() const { return wavenumber(omega, exterior); }
    Complex k() const { return wavenumber(omega, interior); }
    int n_max() const;
};

/// max(4, ceil(omega * max|sqrt(eps mu)|) + 12).
int default_n_max(Real omega, const Medium& exterior, const Medium& interior);

/// Validates both media and omega; returns the setup with n_max resolved.
ProblemSetup validate_setup(ProblemSetup p);

/// Duality swap epsilon <-> mu in both media (the magnetic problem).
ProblemSetup dual_setup(const ProblemSetup& p);

}  // namespace dfie
