#pragma once

#include <utility>
#include <vector>

#include "fluxladder/lattice.hpp"

namespace fluxladder {

// Bloch theory of the uniform-flux ladder in the frame with real rung
// coupling and leg phases +phi/2 (A) / -phi/2 (B).  With the Fourier
// convention a(nu,k) = N^{-1/2} sum_j e^{+ikj} a(nu,j) the Bloch matrix is
//
//   h(k) = [ eps0 + epsz ,   t0        ]      eps0 = 2 t0 cos(phi/2) cos k
//          [ t0          ,  eps0 - epsz]      epsz = 2 t0 sin(phi/2) sin k
//
// with band energies E∓(k) = eps0 ∓ sqrt(epsz^2 + t0^2).
struct BlochParams {
    double t0 = 1.0;
    double phi = 0.0;

    void validate() const;
};

enum class Band { Lower, Upper };

std::pair<double, double> bloch_components(const BlochParams& p, double k);  // (eps0, epsz)
std::pair<double, double> band_energies(const BlochParams& p, double k);     // (E_lower, E_upper)

// Normalised (A, B) eigenvector components; real in this frame, with the
// lower band fixed to alpha < 0 <= beta so that k -> -k maps
// (alpha, beta) -> (-beta, -alpha).
std::pair<double, double> band_eigenvector(const BlochParams& p, double k, Band band);

// <sigma_z> = |alpha|^2 - |beta|^2 in the lower band (leg polarisation).
double sigma_z_expect(const BlochParams& p, double k);

struct BandPoint {
    double k;
    double E_lower, E_upper;
    double alpha_lower, beta_lower;
    double alpha_upper, beta_upper;
    double sz_lower;
};
BandPoint band_point(const BlochParams& p, double k);

// Flux at which the single lower-band minimum at k = pi splits into a
// symmetric pair: 2 arccos(sqrt(17)/4 - 1/4).
double critical_flux();

// All lower-band minima in (-pi, pi], canonicalised ({pi} below the
// transition, {-q, +q} above it).
std::vector<double> lower_band_minima(const BlochParams& p);

// Positive minimum momentum in the vortex regime (phi > critical flux):
// q = pi - arccos(X)/2 with X = (1 + cos phi)/(2(1 - cos phi)) + cos phi.
double vortex_momentum(double phi);
// Same, snapped to the N-rung momentum grid (lowest-energy grid point).
double vortex_momentum(double phi, int N);

// Allowed momenta 2 pi m / N, m in {-floor(N/2)+1, ..., floor(N/2)}.
std::vector<double> momentum_grid(int N);

// Real-space Bloch eigenstate of the N-rung periodic ladder (one-excitation
// sector, real-rung frame): amplitude e^{-ikj}/sqrt(N) times the band
// eigenvector components on legs A and B.
StateVector bloch_state(const BlochParams& p, double k, int N, Band band);

enum class LocalKind { Symmetric, Antisymmetric, SingleSite };

// Band-resolved momentum amplitudes of a localised rung excitation.
struct BandAmplitudes {
    std::vector<double> k;
    std::vector<cplx> lower, upper;

    double weight_lower() const;
    double weight_upper() const;
};

BandAmplitudes decompose_localized(LocalKind kind, int j0, int N, const BlochParams& p,
                                   Leg leg = Leg::B);

// Inverse map back to real space (same frame as bloch_state); round-trips
// decompose_localized to machine precision.
StateVector reconstruct_localized(const BandAmplitudes& amps, const BlochParams& p, int N);

}  // namespace fluxladder
