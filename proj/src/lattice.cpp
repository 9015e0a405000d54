#include "fluxladder/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxladder {

namespace {

// Sparse column view of a one-particle matrix; hopping matrices have at most
// three nonzeros per column (two leg neighbours and one rung partner).
std::vector<std::vector<std::pair<int, cplx>>> column_entries(const Eigen::MatrixXcd& h1) {
    const int n = static_cast<int>(h1.rows());
    std::vector<std::vector<std::pair<int, cplx>>> cols(n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            if (r != c && h1(r, c) != cplx(0.0, 0.0)) cols[c].emplace_back(r, h1(r, c));
    return cols;
}

}  // namespace

int SectorBasis::pair_index(int s1, int s2) const {
    const int n = sites();
    if (s1 < 0 || s2 <= s1 || s2 >= n)
        throw std::invalid_argument("SectorBasis::pair_index: need 0 <= s1 < s2 < 2N");
    // Lexicographic rank: all pairs starting below s1, then the offset of s2.
    return s1 * (2 * n - s1 - 1) / 2 + (s2 - s1 - 1);
}

std::pair<int, int> SectorBasis::pair_sites(int idx) const {
    const int n = sites();
    if (idx < 0 || idx >= dim())
        throw std::invalid_argument("SectorBasis::pair_sites: index out of range");
    int s1 = 0, offset = 0;
    while (offset + (n - s1 - 1) <= idx) {
        offset += n - s1 - 1;
        ++s1;
    }
    return {s1, s1 + 1 + (idx - offset)};
}

SectorBasis build_basis(const LadderSpec& spec, int n_exc) {
    spec.validate();
    if (n_exc != 1 && n_exc != 2)
        throw std::invalid_argument("build_basis: only the one- and two-excitation sectors are supported");
    if (n_exc == 2 && spec.sites() < 2)
        throw std::invalid_argument("build_basis: two excitations need at least two sites");
    return SectorBasis{spec.N, n_exc};
}

Eigen::MatrixXcd one_particle_matrix(const EffectiveCouplings& c) {
    c.validate();
    const int n = c.sites();
    Eigen::MatrixXcd h1 = Eigen::MatrixXcd::Zero(n, n);
    for (int l = 0; l < 2; ++l) {
        const Leg leg = static_cast<Leg>(l);
        for (int b = 0; b < c.leg_bond_count(); ++b) {
            const int sf = site_index(leg, c.bond_from(b), c.N);
            const int st = site_index(leg, c.bond_to(b), c.N);
            const cplx amp = c.t[l][b] * std::polar(1.0, c.phase[l][b]);
            h1(sf, st) += amp;
            h1(st, sf) += std::conj(amp);
        }
    }
    for (int j = 1; j <= c.N; ++j) {
        const int sa = site_index(Leg::A, j, c.N);
        const int sb = site_index(Leg::B, j, c.N);
        const cplx amp = c.t_rung[j - 1] * std::polar(1.0, c.phase_rung[j - 1]);
        h1(sa, sb) += amp;
        h1(sb, sa) += std::conj(amp);
    }
    return h1;
}

OperatorMatrix lift_one_body(const Eigen::MatrixXcd& h1, const SectorBasis& basis) {
    const int n = basis.sites();
    if (h1.rows() != n || h1.cols() != n)
        throw std::invalid_argument("lift_one_body: matrix size does not match basis");
    if (basis.n_exc == 1) return h1;

    const int dim = basis.dim();
    OperatorMatrix H = OperatorMatrix::Zero(dim, dim);
    const auto cols = column_entries(h1);
    for (int q = 0; q < dim; ++q) {
        const auto [k, l] = basis.pair_sites(q);
        H(q, q) += h1(k, k) + h1(l, l);
        for (const auto& [s, amp] : cols[k])
            if (s != l) H(basis.pair_index(std::min(s, l), std::max(s, l)), q) += amp;
        for (const auto& [s, amp] : cols[l])
            if (s != k) H(basis.pair_index(std::min(k, s), std::max(k, s)), q) += amp;
    }
    return H;
}

StateVector apply_one_body(const Eigen::MatrixXcd& h1, const SectorBasis& basis,
                           const StateVector& psi) {
    const int n = basis.sites();
    if (h1.rows() != n || h1.cols() != n || psi.size() != basis.dim())
        throw std::invalid_argument("apply_one_body: dimension mismatch");
    if (basis.n_exc == 1) return h1 * psi;

    const int dim = basis.dim();
    StateVector y = StateVector::Zero(dim);
    const auto cols = column_entries(h1);
    for (int q = 0; q < dim; ++q) {
        const cplx a = psi[q];
        if (a == cplx(0.0, 0.0)) continue;
        const auto [k, l] = basis.pair_sites(q);
        y[q] += (h1(k, k) + h1(l, l)) * a;
        for (const auto& [s, amp] : cols[k])
            if (s != l) y[basis.pair_index(std::min(s, l), std::max(s, l))] += amp * a;
        for (const auto& [s, amp] : cols[l])
            if (s != k) y[basis.pair_index(std::min(k, s), std::max(k, s))] += amp * a;
    }
    return y;
}

OperatorMatrix build_effective_hamiltonian(const EffectiveCouplings& c, const SectorBasis& basis) {
    if (c.N != basis.N)
        throw std::invalid_argument("build_effective_hamiltonian: couplings and basis sizes differ");
    return lift_one_body(one_particle_matrix(c), basis);
}

Eigen::MatrixXcd driven_one_particle_matrix(const LadderSpec& spec, const DriveSchedule& sched,
                                            double t) {
    spec.validate();
    sched.validate();
    if (sched.N != spec.N)
        throw std::invalid_argument("driven_one_particle_matrix: spec and schedule sizes differ");
    const int n = spec.sites();
    Eigen::MatrixXcd h1 = Eigen::MatrixXcd::Zero(n, n);
    for (int l = 0; l < 2; ++l) {
        for (int j = 1; j <= spec.N; ++j) {
            const int s = site_index(static_cast<Leg>(l), j, spec.N);
            h1(s, s) = sched.omega0[l][j - 1] +
                       sched.eps[l][j - 1] * std::sin(sched.u[l][j - 1] * t + sched.phase[l][j - 1]);
        }
        const auto& g = (l == 0) ? spec.gA : spec.gB;
        for (int b = 0; b < spec.leg_bond_count(); ++b) {
            const int sf = site_index(static_cast<Leg>(l), spec.bond_from(b), spec.N);
            const int st = site_index(static_cast<Leg>(l), spec.bond_to(b), spec.N);
            const double amp = g.empty() ? 1.0 : g[b];
            h1(sf, st) += amp;
            h1(st, sf) += amp;
        }
    }
    for (int j = 1; j <= spec.N; ++j) {
        const int sa = site_index(Leg::A, j, spec.N);
        const int sb = site_index(Leg::B, j, spec.N);
        const double amp = spec.gRung.empty() ? 1.0 : spec.gRung[j - 1];
        h1(sa, sb) += amp;
        h1(sb, sa) += amp;
    }
    return h1;
}

OperatorMatrix build_driven_hamiltonian(const LadderSpec& spec, const DriveSchedule& sched,
                                        const SectorBasis& basis, double t) {
    return lift_one_body(driven_one_particle_matrix(spec, sched, t), basis);
}

Eigen::VectorXd rotating_frame_phases(const DriveSchedule& sched, const SectorBasis& basis,
                                      double t) {
    sched.validate();
    if (sched.N != basis.N)
        throw std::invalid_argument("rotating_frame_phases: schedule and basis sizes differ");
    const int n = basis.sites();
    Eigen::VectorXd site_theta(n);
    for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= sched.N; ++j) {
            const double alpha = sched.alpha(static_cast<Leg>(l), j);
            site_theta[site_index(static_cast<Leg>(l), j, sched.N)] =
                -sched.omega0[l][j - 1] * t +
                alpha * std::cos(sched.u[l][j - 1] * t + sched.phase[l][j - 1]);
        }
    Eigen::VectorXd theta(basis.dim());
    if (basis.n_exc == 1) {
        theta = site_theta;
    } else {
        for (int q = 0; q < basis.dim(); ++q) {
            const auto [k, l] = basis.pair_sites(q);
            theta[q] = site_theta[k] + site_theta[l];
        }
    }
    return theta;
}

OperatorMatrix rotating_frame(const DriveSchedule& sched, const SectorBasis& basis, double t) {
    const Eigen::VectorXd theta = rotating_frame_phases(sched, basis, t);
    OperatorMatrix U = OperatorMatrix::Zero(theta.size(), theta.size());
    for (int i = 0; i < theta.size(); ++i) U(i, i) = std::polar(1.0, theta[i]);
    return U;
}

double plaquette_flux(const EffectiveCouplings& c, int j) {
    c.validate();
    if (j < 1 || j > c.plaquette_count())
        throw std::invalid_argument("plaquette_flux: plaquette index out of range");
    const int b = j - 1;
    const int jf = c.bond_from(b), jt = c.bond_to(b);
    return wrap_angle(c.phase[0][b] - c.phase[1][b] + c.phase_rung[jt - 1] -
                      c.phase_rung[jf - 1]);
}

EffectiveCouplings gauge_transform(const EffectiveCouplings& c,
                                   const std::vector<double>& site_phases) {
    c.validate();
    if (site_phases.size() != static_cast<std::size_t>(c.sites()))
        throw std::invalid_argument("gauge_transform: need one phase per site");
    EffectiveCouplings out = c;
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < c.leg_bond_count(); ++b) {
            const int sf = site_index(static_cast<Leg>(l), c.bond_from(b), c.N);
            const int st = site_index(static_cast<Leg>(l), c.bond_to(b), c.N);
            out.phase[l][b] = wrap_angle(c.phase[l][b] + site_phases[st] - site_phases[sf]);
        }
    for (int j = 1; j <= c.N; ++j) {
        const int sa = site_index(Leg::A, j, c.N);
        const int sb = site_index(Leg::B, j, c.N);
        out.phase_rung[j - 1] = wrap_angle(c.phase_rung[j - 1] + site_phases[sb] - site_phases[sa]);
    }
    return out;
}

}  // namespace fluxladder
