#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fluxladder/dynamics.hpp"
#include "fluxladder/bessel.hpp"

using namespace fluxladder;

namespace {
constexpr double kPi = 3.14159265358979323846;

OperatorMatrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    OperatorMatrix H(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) H(i, j) = cplx(n(rng), n(rng));
    return (H + H.adjoint().eval()) / 2.0;
}
}  // namespace

TEST_CASE("two-level Rabi oscillation") {
    OperatorMatrix H(2, 2);
    const double t0 = 0.37;
    H << 0, t0, t0, 0;
    StateVector psi0(2);
    psi0 << 1, 0;
    for (double t : {0.0, 0.4, 1.3, 5.0}) {
        const StateVector psi = evolve_effective(H, psi0, t);
        CHECK_THAT(std::norm(psi[1]), Catch::Matchers::WithinAbs(std::pow(std::sin(t0 * t), 2), 1e-12));
        CHECK_THAT(psi.norm(), Catch::Matchers::WithinAbs(1.0, 1e-13));
    }
}

TEST_CASE("propagator conserves norm and energy") {
    const OperatorMatrix H = random_hermitian(12, 5);
    const Propagator P = make_propagator(H);
    StateVector psi0 = StateVector::Random(12);
    psi0.normalize();
    const double E0 = (psi0.dot(H * psi0)).real();
    for (double t : {0.3, 2.7, 11.0}) {
        const StateVector psi = P.apply(psi0, t);
        CHECK_THAT(psi.norm(), Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THAT((psi.dot(H * psi)).real(), Catch::Matchers::WithinAbs(E0, 1e-11));
    }
    OperatorMatrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(make_propagator(bad), std::invalid_argument);
}

TEST_CASE("chiral drift of the symmetric rung state") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const auto res = chiral_experiment(ChiralKind::OneS, spec, 0.5 * kPi, {0.5, 1.0}, 5);
    REQUIRE(res.dn.size() == 2);
    CHECK_THAT(res.dn[0].first, Catch::Matchers::WithinAbs(+9.696559457e-02, 1e-9));
    CHECK_THAT(res.dn[0].second, Catch::Matchers::WithinAbs(-9.696559495e-02, 1e-9));
    CHECK_THAT(res.dn[1].first, Catch::Matchers::WithinAbs(+3.425635991e-01, 1e-9));
    CHECK_THAT(res.dn[1].second, Catch::Matchers::WithinAbs(-3.425636809e-01, 1e-9));
    // total occupation stays put
    for (const auto& d : res.density) CHECK_THAT(d.sum(), Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("antisymmetric state mirrors the legs exactly") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const double phi = 0.5 * kPi;
    const auto s = chiral_experiment(ChiralKind::OneS, spec, phi, {1.0}, 5);
    const auto a = chiral_experiment(ChiralKind::OneAS, spec, phi, {1.0}, 5);
    const int N = 10;
    for (int j = 1; j <= N; ++j) {
        CHECK_THAT(a.density[0][site_index(Leg::B, j, N)],
                   Catch::Matchers::WithinAbs(s.density[0][site_index(Leg::A, j, N)], 1e-12));
        CHECK_THAT(a.density[0][site_index(Leg::A, j, N)],
                   Catch::Matchers::WithinAbs(s.density[0][site_index(Leg::B, j, N)], 1e-12));
    }
    CHECK_THAT(a.dn[0].first, Catch::Matchers::WithinAbs(s.dn[0].second, 1e-12));
    CHECK_THAT(a.dn[0].second, Catch::Matchers::WithinAbs(s.dn[0].first, 1e-12));
}

TEST_CASE("flux reversal swaps the role of the superpositions") {
    // density profiles of (S, -phi) equal those of (AS, +phi) leg by leg
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const auto rev = chiral_experiment(ChiralKind::OneS, spec, -0.5 * kPi, {0.7}, 5);
    const auto as = chiral_experiment(ChiralKind::OneAS, spec, +0.5 * kPi, {0.7}, 5);
    CHECK((rev.density[0] - as.density[0]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bare excitations show no cubic drift") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const double phi = 0.5 * kPi;
    const auto e1 = chiral_experiment(ChiralKind::OneE, spec, phi, {0.25, 1.0}, 5);
    CHECK_THAT(e1.dn[0].first, Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_THAT(e1.dn[0].second, Catch::Matchers::WithinAbs(0.0, 1e-10));
    // at t = 1 only a tiny higher-order imbalance survives
    CHECK_THAT(e1.dn[1].first, Catch::Matchers::WithinAbs(1.591510195e-06, 1e-10));

    const auto e2 = chiral_experiment(ChiralKind::TwoE, spec, phi, {0.5, 1.0}, 5);
    CHECK_THAT(e2.dn[0].first, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(e2.dn[1].first, Catch::Matchers::WithinAbs(-9.581059124e-08, 1e-10));
    CHECK_THAT(e2.dn[1].second, Catch::Matchers::WithinAbs(-9.581059113e-08, 1e-10));
}

TEST_CASE("interacting pair keeps a chiral response") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const double phi = 0.5 * kPi;
    const auto s2 = chiral_experiment(ChiralKind::TwoS, spec, phi, {1.0}, 5);
    CHECK_THAT(s2.dn[0].first, Catch::Matchers::WithinAbs(-2.164382858e-02, 1e-9));
    CHECK_THAT(s2.dn[0].second, Catch::Matchers::WithinAbs(-4.466823589e-01, 1e-9));
    for (const auto& d : s2.density) CHECK_THAT(d.sum(), Catch::Matchers::WithinAbs(2.0, 1e-10));

    // A <-> B mirror against the antisymmetric pair
    const auto a2 = chiral_experiment(ChiralKind::TwoAS, spec, phi, {1.0}, 5);
    const int N = 10;
    for (int j = 1; j <= N; ++j)
        CHECK_THAT(a2.density[0][site_index(Leg::A, j, N)],
                   Catch::Matchers::WithinAbs(s2.density[0][site_index(Leg::B, j, N)], 1e-12));
}

TEST_CASE("cubic onset of the chiral drift") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.01 * i);

    struct Want {
        double phi, c3;
    };
    for (const Want w : {Want{0.25 * kPi, 0.7018390}, Want{0.5 * kPi, 0.9915549},
                         Want{0.75 * kPi, 0.7004331}}) {
        const auto fit = short_time_law(ChiralKind::OneS, spec, w.phi, grid, 5);
        CHECK(fit.grid_ok);
        CHECK_THAT(fit.c3A, Catch::Matchers::WithinAbs(w.c3, 1e-6));
        CHECK_THAT(fit.prediction, Catch::Matchers::WithinAbs(std::sin(w.phi), 1e-12));
        CHECK(fit.rel_err < 0.02);
        CHECK_THAT(fit.c3B, Catch::Matchers::WithinAbs(-fit.c3A, 1e-6));
    }

    // the antisymmetric state drifts the other way
    const auto fas = short_time_law(ChiralKind::OneAS, spec, 0.5 * kPi, grid, 5);
    CHECK_THAT(fas.c3A, Catch::Matchers::WithinAbs(-0.9915549, 1e-6));

    // no flux, no drift
    const auto f0 = short_time_law(ChiralKind::OneS, spec, 0.0, grid, 5);
    CHECK_THAT(f0.c3A, Catch::Matchers::WithinAbs(0.0, 1e-10));

    // late sample times fall outside the validity window
    const auto late = short_time_law(ChiralKind::OneS, spec, 0.5 * kPi, {0.1, 0.5}, 5);
    CHECK_FALSE(late.grid_ok);

    CHECK_THROWS_AS(short_time_law(ChiralKind::OneE, spec, 0.5 * kPi, grid, 5),
                    std::invalid_argument);
}

TEST_CASE("driven evolution matches the closed form for decoupled sites") {
    // g = 0: each site evolves with phase omega0 t - alpha (cos(u t + p) - cos p)
    LadderSpec spec = LadderSpec::uniform(2, Boundary::Open, 0.0, 0.0);
    DriveSchedule sched = frequency_ladder(3.0, 7.0, spec, 0.9);
    sched.phase[0][1] = 0.5;
    sched.phase[1][0] = -1.1;
    const SectorBasis basis{2, 1};
    StateVector psi0(4);
    psi0 << 0.5, 0.5, cplx(0, 0.5), 0.5;

    const double T = 1.3;
    const StateVector psi = evolve_driven(spec, sched, basis, psi0, T, 0.01);
    for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= 2; ++j) {
            const int s = site_index(static_cast<Leg>(l), j, 2);
            const double w0 = sched.omega0[l][j - 1], u = sched.u[l][j - 1];
            const double al = sched.alpha(static_cast<Leg>(l), j), p = sched.phase[l][j - 1];
            const double theta = w0 * T - al * (std::cos(u * T + p) - std::cos(p));
            const cplx want = std::exp(cplx(0, -theta)) * psi0[s];
            CHECK(std::abs(psi[s] - want) < 1e-9);
        }

    // a step too coarse for the fastest tone is rejected outright
    CHECK_THROWS_AS(evolve_driven(spec, sched, basis, psi0, T, 1.0), std::invalid_argument);
}

TEST_CASE("rotating-frame fidelity is exact for decoupled sites") {
    const LadderSpec spec = LadderSpec::uniform(2, Boundary::Open, 0.0, 0.0);
    const DriveSchedule sched = detuned_drive_ladder(spec, 5.0);
    const EffectiveCouplings c = effective_couplings(spec, sched);
    StateVector psi0 = StateVector::Zero(4);
    psi0[0] = 1.0;
    const FidelityTrace tr = rwa_fidelity(spec, sched, c, psi0, 1.0, 10);
    REQUIRE(tr.F.size() == 11);
    for (double f : tr.F) CHECK_THAT(f, Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("effective description holds at strong drive separation") {
    const FidelityTrace tr = rwa_check(20.0, 1.0, 2.0, 50);
    REQUIRE(tr.t.size() == 51);
    CHECK_THAT(tr.min_F, Catch::Matchers::WithinAbs(0.993774, 1e-4));
    for (double f : tr.F) CHECK(f > 0.99);
}

TEST_CASE("detuned drive ladder keeps the pairwise tones distinct") {
    const LadderSpec spec = LadderSpec::uniform(2, Boundary::Open);
    const DriveSchedule sched = detuned_drive_ladder(spec, 10.0);
    CHECK(validate_resonance(sched, spec).empty());
    std::vector<double> tones;
    for (int l = 0; l < 2; ++l)
        for (double u : sched.u[l]) tones.push_back(u);
    std::sort(tones.begin(), tones.end());
    for (std::size_t i = 1; i < tones.size(); ++i) CHECK(tones[i] - tones[i - 1] > 1.0);
    CHECK_THROWS_AS(detuned_drive_ladder(LadderSpec::uniform(3, Boundary::Open), 10.0),
                    std::invalid_argument);
}

TEST_CASE("ramp shapes and paths") {
    CHECK(ramp_shape(RampShape::Smoothstep, 0.0) == 0.0);
    CHECK(ramp_shape(RampShape::Smoothstep, 1.0) == 1.0);
    CHECK_THAT(ramp_shape(RampShape::Smoothstep, 0.5), Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(ramp_shape(RampShape::Smootherstep, 0.5), Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK(ramp_shape(RampShape::Smootherstep, -0.3) == 0.0);  // clamped
    CHECK(ramp_shape(RampShape::Smootherstep, 1.2) == 1.0);
    const auto path = ramp_path(2.0, -1.0);
    CHECK_THAT(path(0.0), Catch::Matchers::WithinAbs(2.0, 1e-15));
    CHECK_THAT(path(1.0), Catch::Matchers::WithinAbs(-1.0, 1e-15));
    CHECK_THAT(constant_path(0.7)(0.3), Catch::Matchers::WithinAbs(0.7, 1e-15));
}

TEST_CASE("avoided-crossing sweep on a single rung") {
    // Rung coupling ramps 0 -> -1 while a +-1.5 detuning releases; the ground
    // state turns from a bare site into the symmetric combination.
    LadderSpec spec = LadderSpec::uniform(1, Boundary::Open, 1.0, 1.0);
    spec.gRung = {-1.0};

    RampSchedule ramp;
    ramp.T = 50.0;
    ramp.t0_scale = ramp_path(0.0, 1.0);
    ramp.detune[0] = {ramp_path(-1.5, 0.0)};
    ramp.detune[1] = {ramp_path(+1.5, 0.0)};

    StateVector psi0(2);
    psi0 << 1, 0;
    const AdiabaticResult res = adiabatic_ramp(spec, ramp, psi0, 0.01);
    CHECK(res.initial_was_ground);
    CHECK(res.final_fidelity > 0.999);
    CHECK_THAT(res.final_fidelity, Catch::Matchers::WithinAbs(0.9999997352, 1e-6));
    StateVector target(2);
    target << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CHECK_THAT(std::norm(target.dot(res.psi)), Catch::Matchers::WithinAbs(res.final_fidelity, 1e-9));

    // zero-length ramp is the identity
    RampSchedule none;
    none.T = 0.0;
    const AdiabaticResult id = adiabatic_ramp(spec, none, psi0, 0.01);
    CHECK((id.psi - psi0).norm() < 1e-12);

    // starting from the excited state is flagged
    StateVector ex(2);
    ex << 0, 1;
    CHECK_FALSE(adiabatic_ramp(spec, ramp, ex, 0.01).initial_was_ground);
}

TEST_CASE("superposition preparation fidelities") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Open);
    const PrepareResult s = prepare_superposition(ChiralKind::OneS, spec, 50.0);
    CHECK_THAT(s.fidelity, Catch::Matchers::WithinAbs(0.99794119, 1e-7));
    REQUIRE(s.stages.size() == 1);
    CHECK(s.stages[0].initial_was_ground);

    const PrepareResult a = prepare_superposition(ChiralKind::OneAS, spec, 50.0);
    CHECK_THAT(a.fidelity, Catch::Matchers::WithinAbs(0.99997769, 1e-7));

    // target states: equal-weight rung superpositions on the centre rung
    const int N = 10;
    CHECK_THAT(std::abs(s.target[site_index(Leg::A, 5, N)]),
               Catch::Matchers::WithinAbs(1 / std::sqrt(2.0), 1e-12));
    CHECK_THAT((s.target[site_index(Leg::B, 5, N)] / s.target[site_index(Leg::A, 5, N)]).real(),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT((a.target[site_index(Leg::B, 5, N)] / a.target[site_index(Leg::A, 5, N)]).real(),
               Catch::Matchers::WithinAbs(-1.0, 1e-12));

    CHECK_THROWS_AS(prepare_superposition(ChiralKind::OneE, spec, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(
        prepare_superposition(ChiralKind::OneS, LadderSpec::uniform(10, Boundary::Periodic), 50.0),
        std::invalid_argument);
}

TEST_CASE("sequential pair preparation factorises") {
    // all connecting bonds are parked at Bessel zeros during each stage, so
    // the two-step pair protocol multiplies the single-rung fidelities
    const LadderSpec spec = LadderSpec::uniform(5, Boundary::Open);
    const PrepareResult one = prepare_superposition(ChiralKind::OneS, spec, 50.0);
    const PrepareResult two = prepare_superposition(ChiralKind::TwoS, spec, 50.0);
    REQUIRE(two.stages.size() == 2);
    CHECK_THAT(two.fidelity, Catch::Matchers::WithinAbs(one.fidelity * one.fidelity, 1e-9));
    CHECK(two.fidelity > 0.99);
}
