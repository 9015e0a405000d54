#include "fluxladder/couplings.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxladder/bessel.hpp"

namespace fluxladder {

namespace {
constexpr double kPi = 3.14159265358979323846;

double bond_g(const std::vector<double>& g, int b) {
    return g.empty() ? 1.0 : g[static_cast<std::size_t>(b)];
}
}  // namespace

double wrap_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a <= -kPi) a += 2 * kPi;
    if (a > kPi) a -= 2 * kPi;
    return a;
}

double DriveSchedule::alpha(Leg leg, int j) const {
    if (j < 1 || j > N)
        throw std::invalid_argument("DriveSchedule::alpha: rung index out of range");
    const auto l = static_cast<std::size_t>(leg);
    return eps[l][j - 1] / u[l][j - 1];
}

void DriveSchedule::validate() const {
    if (N < 1) throw std::invalid_argument("DriveSchedule: N must be positive");
    for (int l = 0; l < 2; ++l) {
        const auto n = static_cast<std::size_t>(N);
        if (eps[l].size() != n || u[l].size() != n || phase[l].size() != n ||
            omega0[l].size() != n)
            throw std::invalid_argument("DriveSchedule: arrays must have one entry per site");
        for (int j = 0; j < N; ++j) {
            if (!(u[l][j] > 0.0))
                throw std::invalid_argument("DriveSchedule: modulation frequencies must be > 0");
            if (!std::isfinite(eps[l][j]) || !std::isfinite(phase[l][j]) ||
                !std::isfinite(omega0[l][j]))
                throw std::invalid_argument("DriveSchedule: parameters must be finite");
        }
    }
}

EffectiveCouplings EffectiveCouplings::uniform_flux(int N, Boundary b, double t0, double phi) {
    EffectiveCouplings c;
    c.N = N;
    c.boundary = b;
    const int nb = c.leg_bond_count();
    if (N < 1 || nb < 0 || (b == Boundary::Periodic && N < 3))
        throw std::invalid_argument("uniform_flux: invalid ladder size");
    c.t[0].assign(nb, t0);
    c.t[1].assign(nb, t0);
    c.phase[0].assign(nb, wrap_angle(phi / 2));
    c.phase[1].assign(nb, wrap_angle(-phi / 2));
    c.t_rung.assign(N, t0);
    c.phase_rung.assign(N, wrap_angle(-phi / 2));
    return c;
}

void EffectiveCouplings::validate() const {
    if (N < 1) throw std::invalid_argument("EffectiveCouplings: N must be positive");
    if (boundary == Boundary::Periodic && N < 3)
        throw std::invalid_argument("EffectiveCouplings: periodic ladders need N >= 3");
    const auto nb = static_cast<std::size_t>(leg_bond_count());
    for (int l = 0; l < 2; ++l)
        if (t[l].size() != nb || phase[l].size() != nb)
            throw std::invalid_argument("EffectiveCouplings: wrong leg bond array size");
    if (t_rung.size() != static_cast<std::size_t>(N) ||
        phase_rung.size() != static_cast<std::size_t>(N))
        throw std::invalid_argument("EffectiveCouplings: wrong rung array size");
}

double effective_hopping(double g, double alpha_from, double alpha_to) {
    return g * bessel_j0(alpha_from) * bessel_j1(alpha_to);
}

std::vector<std::vector<double>> interleg_surface(const std::vector<double>& alphaA,
                                                  const std::vector<double>& alphaB) {
    if (alphaA.empty() || alphaB.empty())
        throw std::invalid_argument("interleg_surface: grids must be nonempty");
    auto check_sorted = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] < v[i - 1])
                throw std::invalid_argument("interleg_surface: grids must be sorted ascending");
    };
    check_sorted(alphaA);
    check_sorted(alphaB);
    std::vector<std::vector<double>> out(alphaA.size(), std::vector<double>(alphaB.size()));
    for (std::size_t i = 0; i < alphaA.size(); ++i) {
        const double j0 = bessel_j0(alphaA[i]);
        for (std::size_t j = 0; j < alphaB.size(); ++j) out[i][j] = j0 * bessel_j1(alphaB[j]);
    }
    return out;
}

double hopping_phase(double phi_drive, int j) {
    if (j < 1) throw std::invalid_argument("hopping_phase: rung index must be >= 1");
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    return wrap_angle(sign * phi_drive + kPi / 2);
}

EffectiveCouplings effective_couplings(const LadderSpec& spec, const DriveSchedule& sched) {
    spec.validate();
    sched.validate();
    if (sched.N != spec.N)
        throw std::invalid_argument("effective_couplings: spec and schedule sizes differ");

    EffectiveCouplings c;
    c.N = spec.N;
    c.boundary = spec.boundary;
    const int nb = spec.leg_bond_count();
    for (int l = 0; l < 2; ++l) {
        const Leg leg = static_cast<Leg>(l);
        c.t[l].resize(nb);
        c.phase[l].resize(nb);
        const auto& g = (leg == Leg::A) ? spec.gA : spec.gB;
        for (int b = 0; b < nb; ++b) {
            const int jf = spec.bond_from(b), jt = spec.bond_to(b);
            c.t[l][b] = effective_hopping(bond_g(g, b), sched.alpha(leg, jf), sched.alpha(leg, jt));
            c.phase[l][b] = hopping_phase(sched.phase[l][jt - 1], jt);
        }
    }
    c.t_rung.resize(spec.N);
    c.phase_rung.resize(spec.N);
    for (int j = 1; j <= spec.N; ++j) {
        const double g = spec.gRung.empty() ? 1.0 : spec.gRung[j - 1];
        c.t_rung[j - 1] = effective_hopping(g, sched.alpha(Leg::A, j), sched.alpha(Leg::B, j));
        c.phase_rung[j - 1] = hopping_phase(sched.phase[1][j - 1], j);
    }
    return c;
}

DriveSchedule frequency_ladder(double u, double omega_base, const LadderSpec& spec, double alpha) {
    spec.validate();
    if (!(u > 0)) throw std::invalid_argument("frequency_ladder: u must be > 0");
    DriveSchedule s;
    s.N = spec.N;
    for (int l = 0; l < 2; ++l) {
        s.eps[l].assign(spec.N, alpha * u);
        s.u[l].assign(spec.N, u);
        s.phase[l].assign(spec.N, 0.0);
        s.omega0[l].resize(spec.N);
    }
    for (int j = 1; j <= spec.N; ++j) {
        // Legs alternate omega_base, omega_base - u; rungs are offset by +u.
        const double wA = omega_base - ((j % 2 == 0) ? u : 0.0);
        s.omega0[0][j - 1] = wA;
        s.omega0[1][j - 1] = wA + u;
    }
    return s;
}

std::vector<ResonanceViolation> validate_resonance(const DriveSchedule& sched,
                                                   const LadderSpec& spec, double tol) {
    sched.validate();
    if (sched.N != spec.N)
        throw std::invalid_argument("validate_resonance: spec and schedule sizes differ");
    std::vector<ResonanceViolation> out;
    // Intraleg condition: omega0(j-1) - omega0(j) must equal (-1)^j u(j).
    for (int l = 0; l < 2; ++l) {
        for (int j = 2; j <= spec.N; ++j) {
            const double want = ((j % 2 == 0) ? 1.0 : -1.0) * sched.u[l][j - 1];
            const double got = sched.omega0[l][j - 2] - sched.omega0[l][j - 1];
            if (std::fabs(got - want) > tol)
                out.push_back({static_cast<Leg>(l), j, "intraleg frequency step",
                               std::fabs(got - want)});
        }
    }
    // Rung condition: omega0_B(j) - omega0_A(j) must equal u_B(j).
    for (int j = 1; j <= spec.N; ++j) {
        const double got = sched.omega0[1][j - 1] - sched.omega0[0][j - 1];
        const double res = std::fabs(got - sched.u[1][j - 1]);
        if (res > tol) out.push_back({Leg::B, j, "rung frequency offset", res});
    }
    return out;
}

double FluxPattern::target(int j) const {
    switch (kind) {
        case FluxKind::Uniform:
            return phi;
        case FluxKind::Staggered:
            return (j % 2 == 0) ? phi : -phi;
        case FluxKind::Linear:
            return j * phi;
        case FluxKind::Custom:
            if (j < 1 || j > static_cast<int>(custom.size()))
                throw std::invalid_argument("FluxPattern: plaquette index outside custom table");
            return custom[j - 1];
    }
    throw std::logic_error("FluxPattern: unknown kind");
}

SynthesisResult synthesize_flux(const FluxPattern& pattern, const LadderSpec& spec, double alpha,
                                double u, double omega_base) {
    spec.validate();
    const int N = spec.N;
    const int P = spec.plaquette_count();
    if (pattern.kind == FluxKind::Custom && static_cast<int>(pattern.custom.size()) != P)
        throw std::invalid_argument("synthesize_flux: custom pattern must list one flux per plaquette");

    // Per-site targets for the effective phase accumulated by the bond that
    // terminates at that site (the rung phase is tied to the B-leg target).
    std::vector<double> targetA(N, 0.0), targetB(N, 0.0);
    if (pattern.kind == FluxKind::Uniform) {
        for (int j = 0; j < N; ++j) {
            targetA[j] = pattern.phi / 2;
            targetB[j] = -pattern.phi / 2;
        }
    } else {
        // B-leg and rung phases trivial; the A leg carries the whole loop
        // phase: the bond of plaquette p ends at rung p+1 (wrapping to 1).
        for (int p = 1; p <= P; ++p) {
            const int jt = spec.bond_to(p - 1);
            targetA[jt - 1] = pattern.target(p);
        }
    }

    DriveSchedule sched = frequency_ladder(u, omega_base, spec, alpha);
    for (int j = 1; j <= N; ++j) {
        // Invert phi~ = (-1)^(j+1) phi_drive + pi/2 at each site.
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        sched.phase[0][j - 1] = wrap_angle(sign * (targetA[j - 1] - kPi / 2));
        sched.phase[1][j - 1] = wrap_angle(sign * (targetB[j - 1] - kPi / 2));
    }

    SynthesisResult result;
    result.schedule = std::move(sched);
    result.couplings = effective_couplings(spec, result.schedule);
    return result;
}

}  // namespace fluxladder
