#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "fluxladder/couplings.hpp"

namespace fluxladder {

using cplx = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Fixed-excitation basis for hard-core bosons on the 2N ladder sites.
//
//   n_exc = 1:  basis state s is the single occupied site (0..2N-1).
//   n_exc = 2:  basis states are unordered site pairs (s1, s2), s1 < s2,
//               enumerated lexicographically; double occupancy is excluded.
struct SectorBasis {
    int N = 0;
    int n_exc = 1;

    int sites() const { return 2 * N; }
    int dim() const { return n_exc == 1 ? sites() : sites() * (sites() - 1) / 2; }

    int pair_index(int s1, int s2) const;
    std::pair<int, int> pair_sites(int idx) const;
};

SectorBasis build_basis(const LadderSpec& spec, int n_exc);

// One-particle hopping matrix (2N x 2N): entry (from, to) carries the stored
// complex amplitude t e^{i phi} of each bond, plus the conjugate mirror.
Eigen::MatrixXcd one_particle_matrix(const EffectiveCouplings& c);

// Embed a one-particle matrix into the chosen sector.  For n_exc = 2 the
// hard-core constraint blocks any move onto an occupied site.
OperatorMatrix lift_one_body(const Eigen::MatrixXcd& h1, const SectorBasis& basis);

// y = H psi for the lifted operator, without materialising the sector matrix.
StateVector apply_one_body(const Eigen::MatrixXcd& h1, const SectorBasis& basis,
                           const StateVector& psi);

// Time-independent effective flux Hamiltonian in the given sector.
OperatorMatrix build_effective_hamiltonian(const EffectiveCouplings& c, const SectorBasis& basis);

// Laboratory-frame Hamiltonian of the driven array at time t: modulated
// on-site frequencies omega0 + eps sin(u t + phase) plus the bare (real)
// ladder hoppings.
OperatorMatrix build_driven_hamiltonian(const LadderSpec& spec, const DriveSchedule& sched,
                                        const SectorBasis& basis, double t);
Eigen::MatrixXcd driven_one_particle_matrix(const LadderSpec& spec, const DriveSchedule& sched,
                                            double t);

// Accumulated local frame angles theta_s(t) = -omega0 t + alpha cos(u t + phase)
// summed over the occupied sites of each basis state.
Eigen::VectorXd rotating_frame_phases(const DriveSchedule& sched, const SectorBasis& basis,
                                      double t);
// Diagonal unitary U(t) = diag(e^{i theta}) mapping rotating-frame states to
// laboratory-frame states.
OperatorMatrix rotating_frame(const DriveSchedule& sched, const SectorBasis& basis, double t);

// Gauge flux through plaquette j (1-based; between rungs j and j+1, the loop
// oriented so a uniform pinned gauge yields +phi):
//   Phi_j = phi~_A(bond j) - phi~_B(bond j) + chi(j+1) - chi(j),
// wrapped to (-pi, pi].
double plaquette_flux(const EffectiveCouplings& c, int j);

// Local U(1) redefinition a_s -> e^{i theta_s} a_s: each stored bond phase
// (on a†(from) a(to)) shifts by theta(to) - theta(from).  Spectra and fluxes
// are invariant.
EffectiveCouplings gauge_transform(const EffectiveCouplings& c,
                                   const std::vector<double>& site_phases);

}  // namespace fluxladder
