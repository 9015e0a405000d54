#include "fluxladder/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxladder/bands.hpp"

namespace fluxladder {

namespace {

// J = i z a†(sf) a(st) + h.c. as a one-particle matrix contribution.
void add_current_term(Eigen::MatrixXcd& m, int sf, int st, cplx z) {
    m(sf, st) += cplx(0, 1) * z;
    m(st, sf) += std::conj(cplx(0, 1) * z);
}

cplx bond_amp(const EffectiveCouplings& c, int leg, int b) {
    return c.t[leg][b] * std::polar(1.0, c.phase[leg][b]);
}

cplx rung_amp(const EffectiveCouplings& c, int j) {
    return c.t_rung[j - 1] * std::polar(1.0, c.phase_rung[j - 1]);
}

}  // namespace

OperatorMatrix bond_current_operator(const EffectiveCouplings& c, Leg leg, int j,
                                     const SectorBasis& basis) {
    c.validate();
    if (j < 1 || j > c.leg_bond_count())
        throw std::invalid_argument("bond_current_operator: no such leg bond");
    const int b = j - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.sites(), c.sites());
    add_current_term(m, site_index(leg, c.bond_from(b), c.N), site_index(leg, c.bond_to(b), c.N),
                     bond_amp(c, static_cast<int>(leg), b));
    return lift_one_body(m, basis);
}

OperatorMatrix rung_current_operator(const EffectiveCouplings& c, int j, const SectorBasis& basis) {
    c.validate();
    if (j < 1 || j > c.N) throw std::invalid_argument("rung_current_operator: no such rung");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.sites(), c.sites());
    add_current_term(m, site_index(Leg::A, j, c.N), site_index(Leg::B, j, c.N), rung_amp(c, j));
    return lift_one_body(m, basis);
}

OperatorMatrix chiral_current_operator(const EffectiveCouplings& c, const SectorBasis& basis) {
    c.validate();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.sites(), c.sites());
    for (int b = 0; b < c.leg_bond_count(); ++b) {
        add_current_term(m, site_index(Leg::A, c.bond_from(b), c.N),
                         site_index(Leg::A, c.bond_to(b), c.N), bond_amp(c, 0, b));
        add_current_term(m, site_index(Leg::B, c.bond_from(b), c.N),
                         site_index(Leg::B, c.bond_to(b), c.N), -bond_amp(c, 1, b));
    }
    return lift_one_body(m, basis);
}

double real_expectation(const StateVector& psi, const OperatorMatrix& op) {
    if (psi.size() != op.rows() || op.rows() != op.cols())
        throw std::invalid_argument("real_expectation: dimension mismatch");
    const cplx v = psi.dot(op * psi);
    if (std::fabs(v.imag()) > 1e-10 * std::max(1.0, std::fabs(v.real())))
        throw std::runtime_error("real_expectation: nonvanishing imaginary part");
    return v.real();
}

Eigen::MatrixXcd one_body_expectations(const StateVector& psi, const SectorBasis& basis) {
    const int n = basis.sites();
    if (psi.size() != basis.dim())
        throw std::invalid_argument("one_body_expectations: state does not match basis");
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    if (basis.n_exc == 1) {
        for (int s = 0; s < n; ++s)
            for (int sp = 0; sp < n; ++sp) G(s, sp) = std::conj(psi[s]) * psi[sp];
        return G;
    }
    // <a†_s a_s'> over unordered pairs: the spectator x must avoid both sites
    // (hard core); the pair amplitude is symmetric in its two labels.
    auto amp = [&](int x, int y) { return psi[basis.pair_index(std::min(x, y), std::max(x, y))]; };
    for (int s = 0; s < n; ++s)
        for (int sp = 0; sp < n; ++sp) {
            cplx g(0, 0);
            for (int x = 0; x < n; ++x)
                if (x != s && x != sp) g += std::conj(amp(s, x)) * amp(sp, x);
            G(s, sp) = g;
        }
    return G;
}

CurrentReport measure(const StateVector& psi, const EffectiveCouplings& c,
                      const SectorBasis& basis) {
    c.validate();
    if (c.N != basis.N) throw std::invalid_argument("measure: couplings and basis sizes differ");
    if (std::fabs(psi.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("measure: state must be normalised");

    const Eigen::MatrixXcd G = one_body_expectations(psi, basis);
    CurrentReport r;
    const int nb = c.leg_bond_count();
    r.jA.resize(nb);
    r.jB.resize(nb);
    r.jRung.resize(c.N);
    for (int l = 0; l < 2; ++l) {
        auto& out = (l == 0) ? r.jA : r.jB;
        for (int b = 0; b < nb; ++b) {
            const int sf = site_index(static_cast<Leg>(l), c.bond_from(b), c.N);
            const int st = site_index(static_cast<Leg>(l), c.bond_to(b), c.N);
            // <i z a†_f a_t + h.c.> = -2 Im(z G(f, t))
            out[b] = -2.0 * std::imag(bond_amp(c, l, b) * G(sf, st));
        }
    }
    for (int j = 1; j <= c.N; ++j) {
        const int sa = site_index(Leg::A, j, c.N);
        const int sb = site_index(Leg::B, j, c.N);
        r.jRung[j - 1] = -2.0 * std::imag(rung_amp(c, j) * G(sa, sb));
    }
    r.jC = 0;
    for (int b = 0; b < nb; ++b) r.jC += r.jA[b] - r.jB[b];
    r.density.resize(c.sites());
    for (int s = 0; s < c.sites(); ++s) r.density[s] = G(s, s).real();
    return r;
}

AnalyticCurrents analytic_currents(double t0, double phi, int N, CurrentPhase phase) {
    if (N < 3) throw std::invalid_argument("analytic_currents: N must be >= 3");
    const double pc = critical_flux();
    AnalyticCurrents a;
    a.jA.resize(N);
    a.jB.resize(N);
    a.jRung.assign(N, 0.0);
    if (phase == CurrentPhase::Meissner) {
        if (!(phi < pc))
            throw std::domain_error("analytic_currents: Meissner form needs phi below the critical flux");
        const double j0 = t0 / N * std::sin(phi / 2);
        for (int b = 0; b < N; ++b) {
            a.jA[b] = j0;
            a.jB[b] = -j0;
        }
        a.jC = 2 * t0 * std::sin(phi / 2);
        return a;
    }
    if (!(phi > pc))
        throw std::domain_error("analytic_currents: vortex form needs phi above the critical flux");
    const double q = vortex_momentum(phi, N);
    a.q = q;
    const auto [av, bv] = band_eigenvector(BlochParams{t0, phi}, q, Band::Lower);
    const double uniform =
        av * av * std::sin(q - phi / 2) - bv * bv * std::sin(q + phi / 2);
    for (int j = 1; j <= N; ++j) {
        const double osc = 2 * av * bv * std::sin(phi / 2) * std::cos(q * (2 * j + 1));
        a.jA[j - 1] = t0 / N * (uniform + osc);
        a.jB[j - 1] = -a.jA[j - 1];
        a.jRung[j - 1] = -t0 / N * (bv * bv - av * av) * std::sin(2 * q * j);
    }
    a.jC = 0;
    for (int b = 0; b < N; ++b) a.jC += a.jA[b] - a.jB[b];
    return a;
}

double analytic_chiral_current(double t0, double phi) {
    if (!(t0 > 0) || !(phi >= 0) || phi > 3.14159265358979323846 + 1e-12)
        throw std::invalid_argument("analytic_chiral_current: need t0 > 0 and flux in [0, pi]");
    if (phi <= critical_flux()) return 2 * t0 * std::sin(phi / 2);
    const double q = vortex_momentum(phi);
    const auto [av, bv] = band_eigenvector(BlochParams{t0, phi}, q, Band::Lower);
    return 2 * t0 * (av * av * std::sin(q - phi / 2) - bv * bv * std::sin(q + phi / 2));
}

Eigen::VectorXd site_densities(const StateVector& psi, const SectorBasis& basis) {
    if (psi.size() != basis.dim())
        throw std::invalid_argument("site_densities: state does not match basis");
    Eigen::VectorXd dens = Eigen::VectorXd::Zero(basis.sites());
    if (basis.n_exc == 1) {
        for (int s = 0; s < basis.sites(); ++s) dens[s] = std::norm(psi[s]);
    } else {
        for (int q = 0; q < basis.dim(); ++q) {
            const double w = std::norm(psi[q]);
            const auto [s1, s2] = basis.pair_sites(q);
            dens[s1] += w;
            dens[s2] += w;
        }
    }
    return dens;
}

std::pair<double, double> delta_n(const StateVector& psi, const SectorBasis& basis) {
    const int N = basis.N;
    if (N < 3) throw std::invalid_argument("delta_n: need at least three rungs");
    const Eigen::VectorXd dens = site_densities(psi, basis);
    const int centre = (N + 1) / 2;
    double dnA = 0, dnB = 0;
    for (int j = 1; j <= N; ++j) {
        if (j == centre) continue;
        const double sgn = (j < centre) ? 1.0 : -1.0;
        dnA += sgn * dens[site_index(Leg::A, j, N)];
        dnB += sgn * dens[site_index(Leg::B, j, N)];
    }
    return {dnA, dnB};
}

CurrentPhase classify_phase(const CurrentReport& report, double tol) {
    for (double j : report.jRung)
        if (std::fabs(j) > tol) return CurrentPhase::Vortex;
    return CurrentPhase::Meissner;
}

}  // namespace fluxladder
