#pragma once

#include "fluxladder/observables.hpp"

namespace fluxladder {

// All eigenstates within `tol` of the lowest eigenvalue, sorted ascending.
struct GroundSpace {
    std::vector<double> energies;
    std::vector<StateVector> states;
    double gap = 0.0;  // distance from the ground set to the next level
};
GroundSpace ground_states(const OperatorMatrix& H, double tol = 1e-8);

struct ScanPoint {
    double phi;
    double jc;           // ground-space average of the chiral current
    double jc_analytic;  // single-excitation closed form at the same t0
    int degeneracy;
};

// Chiral current versus uniform flux for a drive-synthesised ladder with
// modulation index alpha.  Degenerate ground states (level crossings in the
// vortex phase) are averaged.  The OpenMP version distributes flux points
// across threads; the serial version is the reference implementation.
std::vector<ScanPoint> chiral_current_scan(const LadderSpec& spec, double alpha,
                                           const std::vector<double>& phi_grid, int n_exc);
std::vector<ScanPoint> chiral_current_scan_serial(const LadderSpec& spec, double alpha,
                                                  const std::vector<double>& phi_grid, int n_exc);

// Equal-weight combination of the two degenerate ground-momentum Bloch states
// (+q and -q) of the uniform-flux ring in the vortex phase, expressed in the
// pinned symmetric gauge.  Exhibits the stationary vortex current pattern.
StateVector kramers_ground_combination(double t0, double phi, int N);

}  // namespace fluxladder
