#pragma once

#include "fluxladder/lattice.hpp"

namespace fluxladder {

// Bond-resolved currents and site densities of a normalised state.
// Sign convention: a positive leg current flows from rung j to rung j+1 and
// a positive rung current flows from leg A to leg B, i.e. for a bond with
// stored amplitude z on a†(from) a(to),  J = i z a†(from) a(to) + h.c.
// satisfies d n(from)/dt = -<J>.
struct CurrentReport {
    std::vector<double> jA, jB;   // one entry per leg bond
    std::vector<double> jRung;    // one entry per rung
    double jC = 0.0;              // sum(jA) - sum(jB)
    std::vector<double> density;  // one entry per site (A block then B block)
};

// Current operators in the sector basis (j is 1-based; bond j joins rungs j
// and j+1, wrapping under periodic boundaries).
OperatorMatrix bond_current_operator(const EffectiveCouplings& c, Leg leg, int j,
                                     const SectorBasis& basis);
OperatorMatrix rung_current_operator(const EffectiveCouplings& c, int j, const SectorBasis& basis);
OperatorMatrix chiral_current_operator(const EffectiveCouplings& c, const SectorBasis& basis);

// <psi|O|psi> for Hermitian O; rejects a nonvanishing imaginary residue.
double real_expectation(const StateVector& psi, const OperatorMatrix& op);

// One-body correlation matrix G(s, s') = <a†_s a_s'>; all bond currents and
// densities derive from it, which keeps two-excitation measurements cheap.
Eigen::MatrixXcd one_body_expectations(const StateVector& psi, const SectorBasis& basis);

// Full current/density report for a normalised state.
CurrentReport measure(const StateVector& psi, const EffectiveCouplings& c,
                      const SectorBasis& basis);

// Alias emphasising the bond-resolved map used for vortex visualisation.
inline CurrentReport current_map(const StateVector& psi, const EffectiveCouplings& c,
                                 const SectorBasis& basis) {
    return measure(psi, c, basis);
}

enum class CurrentPhase { Meissner, Vortex };

struct AnalyticCurrents {
    double q = 0.0;  // condensation momentum used (0 in the Meissner phase)
    std::vector<double> jA, jB, jRung;
    double jC = 0.0;
};

// Closed-form single-excitation currents of the uniform-flux N-rung ring.
// Meissner phase: uniform leg currents ±(t0/N) sin(phi/2), silent rungs.
// Vortex phase: condensate at the grid momentum q nearest the band minimum,
//   jA_j    = (t0/N) [a^2 sin(q - phi/2) - b^2 sin(q + phi/2)
//                     + 2 a b sin(phi/2) cos(q (2j + 1))]          = -jB_j,
//   jRung_j = -(t0/N) (b^2 - a^2) sin(2 q j),
// with (a, b) the lower-band eigenvector at q.
AnalyticCurrents analytic_currents(double t0, double phi, int N, CurrentPhase phase);

// Net chiral current of the phase diagram: 2 t0 sin(phi/2) below the critical
// flux, and the continuum-q vortex value above it.
double analytic_chiral_current(double t0, double phi);

// Site-resolved densities <n_s> (A block then B block).
Eigen::VectorXd site_densities(const StateVector& psi, const SectorBasis& basis);

// Population imbalance between the left and right halves of the ladder
// (centre rung ceil(N/2) excluded), per leg: (dnA, dnB).
std::pair<double, double> delta_n(const StateVector& psi, const SectorBasis& basis);

// Vortex if any rung carries current above tol, Meissner otherwise.
CurrentPhase classify_phase(const CurrentReport& report, double tol = 1e-6);

}  // namespace fluxladder
