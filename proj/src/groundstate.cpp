#include "fluxladder/groundstate.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxladder/bands.hpp"

namespace fluxladder {

namespace {

// Degeneracy tolerance for grouping ground states during flux scans (the
// vortex regime crosses levels as q hops between grid momenta).
constexpr double kScanDegTol = 1e-8;

ScanPoint scan_point(const LadderSpec& spec, double alpha, double phi, int n_exc) {
    FluxPattern pattern;
    pattern.kind = FluxKind::Uniform;
    pattern.phi = phi;
    const SynthesisResult syn = synthesize_flux(pattern, spec, alpha);
    const SectorBasis basis = build_basis(spec, n_exc);
    const OperatorMatrix H = build_effective_hamiltonian(syn.couplings, basis);
    const GroundSpace gs = ground_states(H, kScanDegTol);

    double jc = 0;
    for (const auto& psi : gs.states) jc += measure(psi, syn.couplings, basis).jC;
    jc /= static_cast<double>(gs.states.size());

    const double t0 = syn.couplings.t[0].empty() ? syn.couplings.t_rung[0] : syn.couplings.t[0][0];
    ScanPoint p;
    p.phi = phi;
    p.jc = jc;
    p.jc_analytic = analytic_chiral_current(std::fabs(t0), phi);
    p.degeneracy = static_cast<int>(gs.states.size());
    return p;
}

void check_scan_args(const LadderSpec& spec, const std::vector<double>& grid, int n_exc) {
    spec.validate();
    if (grid.empty()) throw std::invalid_argument("chiral_current_scan: empty flux grid");
    if (n_exc != 1 && n_exc != 2)
        throw std::invalid_argument("chiral_current_scan: n_exc must be 1 or 2");
}

}  // namespace

GroundSpace ground_states(const OperatorMatrix& H, double tol) {
    if (H.rows() != H.cols() || H.rows() == 0)
        throw std::invalid_argument("ground_states: matrix must be square and nonempty");
    const double scale = H.cwiseAbs().maxCoeff();
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("ground_states: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(H);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    GroundSpace gs;
    const double e0 = evals[0];
    int i = 0;
    for (; i < evals.size() && evals[i] <= e0 + tol; ++i) {
        gs.energies.push_back(evals[i]);
        gs.states.push_back(solver.eigenvectors().col(i));
    }
    gs.gap = (i < evals.size()) ? evals[i] - e0 : 0.0;
    return gs;
}

std::vector<ScanPoint> chiral_current_scan(const LadderSpec& spec, double alpha,
                                           const std::vector<double>& phi_grid, int n_exc) {
    check_scan_args(spec, phi_grid, n_exc);
    std::vector<ScanPoint> out(phi_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(phi_grid.size()); ++i)
        out[i] = scan_point(spec, alpha, phi_grid[i], n_exc);
    return out;
}

std::vector<ScanPoint> chiral_current_scan_serial(const LadderSpec& spec, double alpha,
                                                  const std::vector<double>& phi_grid,
                                                  int n_exc) {
    check_scan_args(spec, phi_grid, n_exc);
    std::vector<ScanPoint> out;
    out.reserve(phi_grid.size());
    for (double phi : phi_grid) out.push_back(scan_point(spec, alpha, phi, n_exc));
    return out;
}

StateVector kramers_ground_combination(double t0, double phi, int N) {
    const BlochParams p{t0, phi};
    const double q = vortex_momentum(phi, N);
    StateVector plus = bloch_state(p, q, N, Band::Lower);
    StateVector minus = bloch_state(p, -q, N, Band::Lower);
    // Map from the real-rung frame to the pinned symmetric gauge: B-leg
    // amplitudes pick up e^{+i phi/2}.
    const cplx g = std::polar(1.0, phi / 2);
    for (int j = 1; j <= N; ++j) {
        plus[site_index(Leg::B, j, N)] *= g;
        minus[site_index(Leg::B, j, N)] *= g;
    }
    StateVector combo = (minus + plus) / std::sqrt(2.0);
    combo.normalize();
    return combo;
}

}  // namespace fluxladder
