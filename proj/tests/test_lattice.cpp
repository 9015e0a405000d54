#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fluxladder/lattice.hpp"

using namespace fluxladder;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Random coupling set with arbitrary magnitudes and phases.
EffectiveCouplings random_couplings(int N, Boundary bc, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> mag(0.2, 1.5), ang(-kPi, kPi);
    EffectiveCouplings c;
    c.N = N;
    c.boundary = bc;
    const int nb = c.leg_bond_count();
    for (int l = 0; l < 2; ++l) {
        c.t[l].resize(nb);
        c.phase[l].resize(nb);
        for (int b = 0; b < nb; ++b) {
            c.t[l][b] = mag(rng);
            c.phase[l][b] = ang(rng);
        }
    }
    c.t_rung.resize(N);
    c.phase_rung.resize(N);
    for (int j = 0; j < N; ++j) {
        c.t_rung[j] = mag(rng);
        c.phase_rung[j] = ang(rng);
    }
    return c;
}

StateVector random_state(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    StateVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cplx(n(rng), n(rng));
    v.normalize();
    return v;
}

// Independent full-Fock oracle: hard-core bosons on 2N sites as bitmasks.
// Builds H over all occupations and extracts the fixed-excitation block.
Eigen::MatrixXcd fock_block(const EffectiveCouplings& c, const SectorBasis& basis) {
    const int ns = c.sites();
    const int full = 1 << ns;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(full, full);
    auto add_bond = [&](int sf, int st, cplx z) {
        for (int m = 0; m < full; ++m) {
            // a†(sf) a(st): needs st occupied, sf empty
            if ((m >> st & 1) && !(m >> sf & 1)) {
                const int m2 = (m & ~(1 << st)) | (1 << sf);
                H(m2, m) += z;
                H(m, m2) += std::conj(z);
            }
        }
    };
    const int nb = c.leg_bond_count();
    for (int l = 0; l < 2; ++l)
        for (int b = 0; b < nb; ++b)
            add_bond(site_index(static_cast<Leg>(l), c.bond_from(b), c.N),
                     site_index(static_cast<Leg>(l), c.bond_to(b), c.N),
                     std::polar(c.t[l][b], c.phase[l][b]));
    for (int j = 1; j <= c.N; ++j)
        add_bond(site_index(Leg::A, j, c.N), site_index(Leg::B, j, c.N),
                 std::polar(c.t_rung[j - 1], c.phase_rung[j - 1]));

    // map sector indices to bitmasks
    std::vector<int> mask(basis.dim());
    for (int q = 0; q < basis.dim(); ++q) {
        if (basis.n_exc == 1)
            mask[q] = 1 << q;
        else {
            const auto [s1, s2] = basis.pair_sites(q);
            mask[q] = (1 << s1) | (1 << s2);
        }
    }
    Eigen::MatrixXcd block(basis.dim(), basis.dim());
    for (int a = 0; a < basis.dim(); ++a)
        for (int b = 0; b < basis.dim(); ++b) block(a, b) = H(mask[a], mask[b]);
    return block;
}

}  // namespace

TEST_CASE("sector dimensions and pair enumeration") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    CHECK(build_basis(spec, 1).dim() == 20);
    CHECK(build_basis(spec, 2).dim() == 190);
    CHECK(build_basis(LadderSpec::uniform(50, Boundary::Periodic), 2).dim() == 4950);
    CHECK_THROWS_AS(build_basis(spec, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(spec, 0), std::invalid_argument);

    const SectorBasis b2 = build_basis(LadderSpec::uniform(6, Boundary::Open), 2);
    int idx = 0;
    for (int s1 = 0; s1 < 12; ++s1)
        for (int s2 = s1 + 1; s2 < 12; ++s2) {
            CHECK(b2.pair_index(s1, s2) == idx);
            const auto [t1, t2] = b2.pair_sites(idx);
            CHECK(t1 == s1);
            CHECK(t2 == s2);
            ++idx;
        }
    CHECK(idx == b2.dim());
}

TEST_CASE("one-particle matrix of the two-rung open ladder") {
    // Sites: A1=0, A2=1, B1=2, B2=3.  One bond per leg plus two rungs.
    EffectiveCouplings c;
    c.N = 2;
    c.boundary = Boundary::Open;
    c.t = {std::vector<double>{0.5}, std::vector<double>{0.7}};
    c.phase = {std::vector<double>{0.3}, std::vector<double>{-0.2}};
    c.t_rung = {0.9, 1.1};
    c.phase_rung = {0.1, 0.4};
    const Eigen::MatrixXcd h1 = one_particle_matrix(c);
    REQUIRE(h1.rows() == 4);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
    want(0, 1) = std::polar(0.5, 0.3);   // A1 <- A2
    want(2, 3) = std::polar(0.7, -0.2);  // B1 <- B2
    want(0, 2) = std::polar(0.9, 0.1);   // A1 <- B1
    want(1, 3) = std::polar(1.1, 0.4);   // A2 <- B2
    want += want.adjoint().eval();
    CHECK((h1 - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("lifted Hamiltonians are Hermitian") {
    for (unsigned seed : {1u, 2u}) {
        const EffectiveCouplings c = random_couplings(5, Boundary::Periodic, seed);
        for (int n : {1, 2}) {
            const SectorBasis basis{5, n};
            const OperatorMatrix H = build_effective_hamiltonian(c, basis);
            CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("sector Hamiltonians match the full-Fock oracle") {
    for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
        const EffectiveCouplings c = random_couplings(3, bc, 42);
        for (int n : {1, 2}) {
            const SectorBasis basis{3, n};
            const OperatorMatrix H = build_effective_hamiltonian(c, basis);
            const Eigen::MatrixXcd ref = fock_block(c, basis);
            CHECK((H - ref).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("apply_one_body matches the materialised operator") {
    const EffectiveCouplings c = random_couplings(6, Boundary::Periodic, 7);
    const Eigen::MatrixXcd h1 = one_particle_matrix(c);
    for (int n : {1, 2}) {
        const SectorBasis basis{6, n};
        const OperatorMatrix H = lift_one_body(h1, basis);
        const StateVector psi = random_state(basis.dim(), 99 + n);
        const StateVector y = apply_one_body(h1, basis, psi);
        CHECK((y - H * psi).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("driven Hamiltonian diagonal and bare hoppings") {
    LadderSpec spec = LadderSpec::uniform(3, Boundary::Open, 0.35, 0.2);
    DriveSchedule sched = frequency_ladder(2.0, 30.0, spec, 0.8);
    sched.phase[0][1] = 0.4;  // A2
    const SectorBasis basis{3, 1};
    const double t = 0.37;
    const OperatorMatrix H = build_driven_hamiltonian(spec, sched, basis, t);

    for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= 3; ++j) {
            const int s = site_index(static_cast<Leg>(l), j, 3);
            const double want = sched.omega0[l][j - 1] +
                                sched.eps[l][j - 1] *
                                    std::sin(sched.u[l][j - 1] * t + sched.phase[l][j - 1]);
            CHECK_THAT(H(s, s).real(), Catch::Matchers::WithinAbs(want, 1e-13));
            CHECK_THAT(H(s, s).imag(), Catch::Matchers::WithinAbs(0.0, 1e-15));
        }
    // bare leg bond A1-A2 and rung 1 carry the unrenormalised couplings
    CHECK_THAT(H(site_index(Leg::A, 1, 3), site_index(Leg::A, 2, 3)).real(),
               Catch::Matchers::WithinAbs(0.35, 1e-15));
    CHECK_THAT(H(site_index(Leg::A, 1, 3), site_index(Leg::B, 1, 3)).real(),
               Catch::Matchers::WithinAbs(0.2, 1e-15));

    // two-excitation diagonal adds the two site terms
    const SectorBasis b2{3, 2};
    const OperatorMatrix H2 = build_driven_hamiltonian(spec, sched, b2, t);
    const int q = b2.pair_index(site_index(Leg::A, 1, 3), site_index(Leg::B, 2, 3));
    const double w = H(site_index(Leg::A, 1, 3), site_index(Leg::A, 1, 3)).real() +
                     H(site_index(Leg::B, 2, 3), site_index(Leg::B, 2, 3)).real();
    CHECK_THAT(H2(q, q).real(), Catch::Matchers::WithinAbs(w, 1e-13));
}

TEST_CASE("rotating frame phases and unitarity") {
    const LadderSpec spec = LadderSpec::uniform(3, Boundary::Open);
    DriveSchedule sched = frequency_ladder(1.5, 12.0, spec, 0.9);
    sched.phase[1][0] = -0.7;  // B1

    const SectorBasis b1{3, 1};
    // theta_s(0) = alpha cos(phase)
    const Eigen::VectorXd th0 = rotating_frame_phases(sched, b1, 0.0);
    for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= 3; ++j) {
            const int s = site_index(static_cast<Leg>(l), j, 3);
            CHECK_THAT(th0[s],
                       Catch::Matchers::WithinAbs(0.9 * std::cos(sched.phase[l][j - 1]), 1e-13));
        }

    const double t = 0.83;
    const OperatorMatrix U = rotating_frame(sched, b1, t);
    CHECK((U * U.adjoint() - OperatorMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);

    // pair phases are sums of site phases
    const SectorBasis b2{3, 2};
    const Eigen::VectorXd th1 = rotating_frame_phases(sched, b1, t);
    const Eigen::VectorXd th2 = rotating_frame_phases(sched, b2, t);
    for (int q = 0; q < b2.dim(); ++q) {
        const auto [s1, s2] = b2.pair_sites(q);
        CHECK_THAT(th2[q], Catch::Matchers::WithinAbs(th1[s1] + th1[s2], 1e-12));
    }
}

TEST_CASE("plaquette flux of the pinned uniform gauge") {
    const double phi = 0.5 * kPi;
    const EffectiveCouplings c = EffectiveCouplings::uniform_flux(6, Boundary::Periodic, 1.0, phi);
    for (int j = 1; j <= c.plaquette_count(); ++j)
        CHECK_THAT(plaquette_flux(c, j), Catch::Matchers::WithinAbs(phi, 1e-13));

    // all-real couplings thread zero flux
    EffectiveCouplings r = random_couplings(5, Boundary::Open, 3);
    for (int l = 0; l < 2; ++l) std::fill(r.phase[l].begin(), r.phase[l].end(), 0.0);
    std::fill(r.phase_rung.begin(), r.phase_rung.end(), 0.0);
    for (int j = 1; j <= r.plaquette_count(); ++j)
        CHECK_THAT(plaquette_flux(r, j), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("gauge transformations preserve flux and spectrum") {
    const EffectiveCouplings c = random_couplings(4, Boundary::Periodic, 11);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    std::vector<double> theta(c.sites());
    for (auto& v : theta) v = ang(rng);
    const EffectiveCouplings g = gauge_transform(c, theta);

    for (int j = 1; j <= c.plaquette_count(); ++j)
        CHECK_THAT(plaquette_flux(g, j), Catch::Matchers::WithinAbs(plaquette_flux(c, j), 1e-12));

    for (int n : {1, 2}) {
        const SectorBasis basis{4, n};
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> e1(build_effective_hamiltonian(c, basis));
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> e2(build_effective_hamiltonian(g, basis));
        CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
}
