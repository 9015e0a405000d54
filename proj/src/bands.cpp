#include "fluxladder/bands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxladder {

namespace {

constexpr double kPi = 3.14159265358979323846;

double lower_energy(const BlochParams& p, double k) {
    const auto [e0, ez] = bloch_components(p, k);
    return e0 - std::hypot(ez, p.t0);
}

// dE_lower/dk and d2E_lower/dk2, used by the Newton polish below.
void lower_derivs(const BlochParams& p, double k, double& d1, double& d2) {
    const double c = std::cos(p.phi / 2), s = std::sin(p.phi / 2);
    const double ez = 2 * p.t0 * s * std::sin(k);
    const double ezp = 2 * p.t0 * s * std::cos(k);
    const double S = std::hypot(ez, p.t0);
    const double e0p = -2 * p.t0 * c * std::sin(k);
    const double e0pp = -2 * p.t0 * c * std::cos(k);
    d1 = e0p - ez * ezp / S;
    // ez'' = -ez
    d2 = e0pp - (ezp * ezp - ez * ez) / S + (ez * ezp) * (ez * ezp) / (S * S * S);
}

double golden_min(const BlochParams& p, double a, double b) {
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    while (b - a > 1e-14) {
        if (lower_energy(p, c) < lower_energy(p, d))
            b = d;
        else
            a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return (a + b) / 2;
}

}  // namespace

void BlochParams::validate() const {
    if (!(t0 > 0)) throw std::invalid_argument("BlochParams: t0 must be > 0");
    if (!(phi >= 0) || phi > kPi)
        throw std::invalid_argument("BlochParams: flux must lie in [0, pi]");
}

std::pair<double, double> bloch_components(const BlochParams& p, double k) {
    p.validate();
    return {2 * p.t0 * std::cos(p.phi / 2) * std::cos(k),
            2 * p.t0 * std::sin(p.phi / 2) * std::sin(k)};
}

std::pair<double, double> band_energies(const BlochParams& p, double k) {
    const auto [e0, ez] = bloch_components(p, k);
    const double gap = std::hypot(ez, p.t0);
    return {e0 - gap, e0 + gap};
}

std::pair<double, double> band_eigenvector(const BlochParams& p, double k, Band band) {
    const auto [e0, ez] = bloch_components(p, k);
    (void)e0;
    // With ezb = ez/t0, the lower eigenvector is (alpha, beta) ~ (-1, w),
    // w = ezb + sqrt(1 + ezb^2); the upper one is its orthogonal complement.
    const double ezb = ez / p.t0;
    const double w = ezb + std::hypot(1.0, ezb);
    const double norm = std::hypot(1.0, w);
    const double alphaL = -1.0 / norm, betaL = w / norm;
    if (band == Band::Lower) return {alphaL, betaL};
    return {betaL, -alphaL};
}

double sigma_z_expect(const BlochParams& p, double k) {
    const auto [a, b] = band_eigenvector(p, k, Band::Lower);
    return a * a - b * b;
}

BandPoint band_point(const BlochParams& p, double k) {
    BandPoint bp;
    bp.k = k;
    std::tie(bp.E_lower, bp.E_upper) = band_energies(p, k);
    std::tie(bp.alpha_lower, bp.beta_lower) = band_eigenvector(p, k, Band::Lower);
    std::tie(bp.alpha_upper, bp.beta_upper) = band_eigenvector(p, k, Band::Upper);
    bp.sz_lower = bp.alpha_lower * bp.alpha_lower - bp.beta_lower * bp.beta_lower;
    return bp;
}

double critical_flux() { return 2 * std::acos(std::sqrt(17.0) / 4 - 0.25); }

std::vector<double> lower_band_minima(const BlochParams& p) {
    p.validate();
    constexpr int nk = 4096;
    const double h = 2 * kPi / nk;
    std::vector<double> E(nk);
    for (int i = 0; i < nk; ++i) E[i] = lower_energy(p, -kPi + i * h);

    std::vector<double> minima;
    for (int i = 0; i < nk; ++i) {
        const double prev = E[(i + nk - 1) % nk], next = E[(i + 1) % nk];
        if (!(E[i] < prev && E[i] <= next)) continue;
        double k = -kPi + i * h;
        // Newton polish on E'(k); fall back to a golden-section bracket when
        // the curvature is too small for Newton to be trustworthy.
        bool ok = false;
        double kn = k;
        for (int it = 0; it < 80; ++it) {
            double d1, d2;
            lower_derivs(p, kn, d1, d2);
            if (std::fabs(d2) < 1e-12 || std::fabs(d1 / d2) > 2 * h) break;
            const double step = d1 / d2;
            kn -= step;
            if (std::fabs(step) < 1e-14) {
                ok = true;
                break;
            }
        }
        minima.push_back(wrap_angle(ok ? kn : golden_min(p, k - h, k + h)));
    }

    std::sort(minima.begin(), minima.end());
    // Merge duplicates, treating -pi and +pi as the same point.
    std::vector<double> out;
    for (double k : minima) {
        bool dup = false;
        for (double o : out)
            if (std::fabs(k - o) < 1e-6 || std::fabs(std::fabs(k - o) - 2 * kPi) < 1e-6)
                dup = true;
        if (!dup) out.push_back(k);
    }
    // Canonical forms: a single minimum sits at pi; a split pair is
    // symmetric, so average out the tiny polish asymmetry.
    if (out.size() == 1) {
        if (std::fabs(std::fabs(out[0]) - kPi) < 1e-6) out[0] = kPi;
    } else if (out.size() == 2 && std::fabs(out[0] + out[1]) < 1e-9) {
        const double q = (out[1] - out[0]) / 2;
        out[0] = -q;
        out[1] = q;
    }
    return out;
}

double vortex_momentum(double phi) {
    const double pc = critical_flux();
    if (!(phi > pc - 1e-12) || phi > kPi + 1e-12)
        throw std::domain_error("vortex_momentum: flux must lie in (critical flux, pi]");
    const double c = std::cos(phi);
    double X = (1 + c) / (2 * (1 - c)) + c;
    X = std::clamp(X, -1.0, 1.0);
    return kPi - 0.5 * std::acos(X);
}

double vortex_momentum(double phi, int N) {
    if (N < 2) throw std::invalid_argument("vortex_momentum: N must be >= 2");
    vortex_momentum(phi);  // domain check
    const BlochParams p{1.0, phi};
    double best_k = 0, best_E = 0;
    bool first = true;
    for (double k : momentum_grid(N)) {
        if (k <= 0) continue;
        const double e = lower_energy(p, k);
        if (first || e < best_E) {
            best_E = e;
            best_k = k;
            first = false;
        }
    }
    return best_k;
}

std::vector<double> momentum_grid(int N) {
    if (N < 1) throw std::invalid_argument("momentum_grid: N must be positive");
    std::vector<double> ks;
    ks.reserve(N);
    for (int m = -((N - 1) / 2); m <= N / 2; ++m) ks.push_back(2 * kPi * m / N);
    return ks;
}

StateVector bloch_state(const BlochParams& p, double k, int N, Band band) {
    if (N < 1) throw std::invalid_argument("bloch_state: N must be positive");
    const auto [a, b] = band_eigenvector(p, k, band);
    StateVector psi(2 * N);
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    for (int j = 1; j <= N; ++j) {
        const cplx ph = std::polar(norm, -k * j);
        psi[site_index(Leg::A, j, N)] = ph * a;
        psi[site_index(Leg::B, j, N)] = ph * b;
    }
    return psi;
}

double BandAmplitudes::weight_lower() const {
    double w = 0;
    for (const cplx& c : lower) w += std::norm(c);
    return w;
}

double BandAmplitudes::weight_upper() const {
    double w = 0;
    for (const cplx& c : upper) w += std::norm(c);
    return w;
}

BandAmplitudes decompose_localized(LocalKind kind, int j0, int N, const BlochParams& p, Leg leg) {
    p.validate();
    if (N < 1) throw std::invalid_argument("decompose_localized: N must be positive");
    if (j0 < 1 || j0 > N)
        throw std::invalid_argument("decompose_localized: rung index out of range");

    BandAmplitudes amps;
    amps.k = momentum_grid(N);
    amps.lower.resize(amps.k.size());
    amps.upper.resize(amps.k.size());
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amps.k.size(); ++i) {
        const double k = amps.k[i];
        // a†(nu, j0)|0> = N^{-1/2} sum_k e^{+ik j0} a†(nu, k)|0>
        const cplx ph = std::polar(norm, k * j0);
        cplx cA(0, 0), cB(0, 0);
        switch (kind) {
            case LocalKind::Symmetric:
                cA = ph * inv_sqrt2;
                cB = ph * inv_sqrt2;
                break;
            case LocalKind::Antisymmetric:
                cA = ph * inv_sqrt2;
                cB = -ph * inv_sqrt2;
                break;
            case LocalKind::SingleSite:
                (leg == Leg::A ? cA : cB) = ph;
                break;
        }
        const auto [aL, bL] = band_eigenvector(p, k, Band::Lower);
        const auto [aU, bU] = band_eigenvector(p, k, Band::Upper);
        amps.lower[i] = aL * cA + bL * cB;
        amps.upper[i] = aU * cA + bU * cB;
    }
    return amps;
}

StateVector reconstruct_localized(const BandAmplitudes& amps, const BlochParams& p, int N) {
    if (static_cast<int>(amps.k.size()) != N || amps.lower.size() != amps.k.size() ||
        amps.upper.size() != amps.k.size())
        throw std::invalid_argument("reconstruct_localized: amplitude table does not match N");
    StateVector psi = StateVector::Zero(2 * N);
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t i = 0; i < amps.k.size(); ++i) {
        const double k = amps.k[i];
        const auto [aL, bL] = band_eigenvector(p, k, Band::Lower);
        const auto [aU, bU] = band_eigenvector(p, k, Band::Upper);
        const cplx cA = aL * amps.lower[i] + aU * amps.upper[i];
        const cplx cB = bL * amps.lower[i] + bU * amps.upper[i];
        for (int j = 1; j <= N; ++j) {
            const cplx ph = std::polar(norm, -k * j);
            psi[site_index(Leg::A, j, N)] += ph * cA;
            psi[site_index(Leg::B, j, N)] += ph * cB;
        }
    }
    return psi;
}

}  // namespace fluxladder
