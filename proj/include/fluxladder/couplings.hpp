#pragma once

#include <array>
#include <string>
#include <vector>

#include "fluxladder/ladder.hpp"

namespace fluxladder {

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

// Site-resolved drive parameters: each transmon (leg, j) is modulated as
//   omega(t) = omega0 + eps * sin(u t + phase),
// and alpha = eps/u is the dimensionless modulation index that enters the
// Bessel-function renormalisation of the effective hoppings.
struct DriveSchedule {
    int N = 0;
    std::array<std::vector<double>, 2> eps;     // [leg][j-1]
    std::array<std::vector<double>, 2> u;       // modulation frequencies, > 0
    std::array<std::vector<double>, 2> phase;   // drive phases
    std::array<std::vector<double>, 2> omega0;  // static frequencies

    double alpha(Leg leg, int j) const;
    void validate() const;
};

// Time-independent couplings of the effective flux model: magnitudes t and
// phases phi~ per leg bond, plus rung magnitudes/phases chi per rung.  Bond
// indexing and the a†(from) a(to) orientation follow LadderSpec.
struct EffectiveCouplings {
    int N = 0;
    Boundary boundary = Boundary::Open;
    std::array<std::vector<double>, 2> t;      // [leg][bond]
    std::array<std::vector<double>, 2> phase;  // [leg][bond], in (-pi, pi]
    std::vector<double> t_rung;                // [j-1]
    std::vector<double> phase_rung;            // [j-1]

    // Pinned symmetric gauge for a uniform flux phi per plaquette:
    // phi~_A = +phi/2, phi~_B = -phi/2, rung phases tied to the B leg.
    static EffectiveCouplings uniform_flux(int N, Boundary b, double t0, double phi);

    int sites() const { return 2 * N; }
    int leg_bond_count() const { return boundary == Boundary::Periodic ? N : N - 1; }
    int plaquette_count() const { return leg_bond_count(); }
    int bond_from(int b) const { return b + 1; }
    int bond_to(int b) const { return (b + 1) % N + 1; }
    void validate() const;
};

// Effective hopping amplitude g * J0(alpha_from) * J1(alpha_to) for a bond
// whose endpoints are modulated with indices alpha_from, alpha_to.
double effective_hopping(double g, double alpha_from, double alpha_to);

// J0(alpha_A) * J1(alpha_B) sampled over a grid of modulation indices;
// result[i][j] corresponds to (alphaA[i], alphaB[j]).  Both grids must be
// nonempty and sorted ascending.
std::vector<std::vector<double>> interleg_surface(const std::vector<double>& alphaA,
                                                  const std::vector<double>& alphaB);

// Effective phase inherited by the bond terminating at rung j when the drive
// on the destination site carries phase phi_drive:
//   phi~ = (-1)^(j+1) * phi_drive + pi/2,  wrapped to (-pi, pi].
// The alternating sign reflects the staggered local frames along the chain.
double hopping_phase(double phi_drive, int j);

// Full drive -> effective-model map for a ladder: every leg bond acquires
// t = g J0(alpha_from) J1(alpha_to) and phase from the destination drive;
// every rung acquires t~ = g~ J0(alpha_A) J1(alpha_B) and the B-site phase.
EffectiveCouplings effective_couplings(const LadderSpec& spec, const DriveSchedule& sched);

// Static frequency ladder realising the two-tone resonance conditions:
// along each leg omega0 alternates by -u (descending pairs), and each rung
// is offset by +u from A to B.  Returns a complete schedule with uniform
// modulation index alpha and zero drive phases.
DriveSchedule frequency_ladder(double u, double omega_base, const LadderSpec& spec,
                               double alpha = 1.0);

struct ResonanceViolation {
    Leg leg;
    int j;                   // rung at which the constraint is anchored
    std::string constraint;  // human-readable description
    double residual;
};

// Check the intraleg alternation and rung offset conditions of a schedule;
// returns one entry per violated constraint (empty when consistent).
std::vector<ResonanceViolation> validate_resonance(const DriveSchedule& sched,
                                                   const LadderSpec& spec,
                                                   double tol = 1e-9);

enum class FluxKind { Uniform, Staggered, Linear, Custom };

// Target flux per plaquette.  Plaquettes are 1-based and follow the leg
// bonds: plaquette j sits between rungs j and j+1 (plus the wrap plaquette
// under periodic boundaries).
struct FluxPattern {
    FluxKind kind = FluxKind::Uniform;
    double phi = 0.0;
    std::vector<double> custom;  // used only for FluxKind::Custom

    double target(int j) const;
};

struct SynthesisResult {
    DriveSchedule schedule;
    EffectiveCouplings couplings;
};

// Choose drive phases so that the effective model threads the requested flux
// through every plaquette.  Uniform patterns use the symmetric pinned gauge
// (+phi/2 / -phi/2 on the legs); all other patterns put the accumulated
// phases on the A leg and keep B-leg and rung phases trivial.  The returned
// schedule satisfies the resonance conditions by construction.
SynthesisResult synthesize_flux(const FluxPattern& pattern, const LadderSpec& spec,
                                double alpha, double u = 1.0, double omega_base = 10.0);

}  // namespace fluxladder
