#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fluxladder/bands.hpp"
#include "fluxladder/groundstate.hpp"

using namespace fluxladder;

namespace {
constexpr double kPi = 3.14159265358979323846;
// g renormalised so the effective hopping at modulation index 1 is exactly 1
const double kGUnit = 1.0 / (0.76519768655796661 * 0.44005058574493355);

SynthesisResult uniform_ladder(int N, double phi, Boundary bc = Boundary::Periodic) {
    const LadderSpec spec = LadderSpec::uniform(N, bc, kGUnit, kGUnit);
    FluxPattern pat;
    pat.kind = FluxKind::Uniform;
    pat.phi = phi;
    return synthesize_flux(pat, spec, 1.0);
}
}  // namespace

TEST_CASE("ground space of a 2x2 exchange matrix") {
    OperatorMatrix H(2, 2);
    H << 0, 1, 1, 0;
    const GroundSpace gs = ground_states(H);
    REQUIRE(gs.states.size() == 1);
    CHECK_THAT(gs.energies[0], Catch::Matchers::WithinAbs(-1.0, 1e-14));
    CHECK_THAT(gs.gap, Catch::Matchers::WithinAbs(2.0, 1e-14));
    CHECK_THAT(std::abs(gs.states[0][0] / gs.states[0][1] + 1.0),
               Catch::Matchers::WithinAbs(0.0, 1e-13));

    // widening the tolerance absorbs the excited state
    CHECK(ground_states(H, 3.0).states.size() == 2);
}

TEST_CASE("ground_states rejects non-Hermitian input") {
    OperatorMatrix H(2, 2);
    H << 0, 1, 0, 0;
    CHECK_THROWS_AS(ground_states(H), std::invalid_argument);
}

TEST_CASE("Meissner ground state of the synthesised ring") {
    const int N = 50;
    const double phi = 0.1 * kPi;
    const auto syn = uniform_ladder(N, phi);
    CHECK_THAT(syn.couplings.t[0][0], Catch::Matchers::WithinAbs(1.0, 1e-13));

    const SectorBasis basis{N, 1};
    const OperatorMatrix H = build_effective_hamiltonian(syn.couplings, basis);
    const GroundSpace gs = ground_states(H);
    REQUIRE(gs.states.size() == 1);

    // energy matches the band minimum (k = pi below the critical flux)
    const BlochParams p{1.0, phi};
    CHECK_THAT(gs.energies[0], Catch::Matchers::WithinAbs(band_energies(p, kPi).first, 1e-10));

    const CurrentReport rep = measure(gs.states[0], syn.couplings, basis);
    CHECK_THAT(rep.jC, Catch::Matchers::WithinAbs(0.31286893008046174, 1e-12));
    CHECK_THAT(rep.jC, Catch::Matchers::WithinAbs(2 * std::sin(phi / 2), 1e-12));
    for (double r : rep.jRung) CHECK_THAT(r, Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK(classify_phase(rep) == CurrentPhase::Meissner);
    // uniform leg currents of equal and opposite sign
    for (int b = 0; b < N; ++b) {
        CHECK_THAT(rep.jA[b], Catch::Matchers::WithinAbs(std::sin(phi / 2) / N, 1e-10));
        CHECK_THAT(rep.jB[b], Catch::Matchers::WithinAbs(-std::sin(phi / 2) / N, 1e-10));
    }
}

TEST_CASE("vortex ground space and the stationary current pattern") {
    const int N = 50;
    const double phi = 0.9 * kPi;
    const auto syn = uniform_ladder(N, phi);
    const SectorBasis basis{N, 1};
    const OperatorMatrix H = build_effective_hamiltonian(syn.couplings, basis);
    const GroundSpace gs = ground_states(H);
    REQUIRE(gs.states.size() == 2);  // +q / -q Kramers pair
    CHECK_THAT(gs.energies[0], Catch::Matchers::WithinAbs(-2.241537376379, 1e-9));

    // the equal-weight combination lies in the ground space...
    const StateVector combo = kramers_ground_combination(1.0, phi, N);
    StateVector res = combo;
    for (const auto& v : gs.states) res -= v * (v.dot(combo));
    CHECK(res.norm() < 1e-8);

    // ...and carries the analytic vortex current pattern at the grid momentum
    const CurrentReport rep = measure(combo, syn.couplings, basis);
    const auto ana = analytic_currents(1.0, phi, N, CurrentPhase::Vortex);
    for (int j = 0; j < N; ++j)
        CHECK_THAT(rep.jRung[j], Catch::Matchers::WithinAbs(ana.jRung[j], 1e-12));
    for (int b = 0; b < N; ++b) {
        CHECK_THAT(rep.jA[b], Catch::Matchers::WithinAbs(ana.jA[b], 1e-12));
        CHECK_THAT(rep.jA[b] + rep.jB[b], Catch::Matchers::WithinAbs(0.0, 1e-10));
    }
    CHECK_THAT(rep.jC, Catch::Matchers::WithinAbs(0.096965956949, 1e-9));
    CHECK(classify_phase(rep) == CurrentPhase::Vortex);

    // normalised correlation between measured and analytic rung profiles
    double num = 0, da = 0, db = 0;
    for (int j = 0; j < N; ++j) {
        num += rep.jRung[j] * ana.jRung[j];
        da += rep.jRung[j] * rep.jRung[j];
        db += ana.jRung[j] * ana.jRung[j];
    }
    CHECK(num / std::sqrt(da * db) > 0.999999999);
}

TEST_CASE("scan reproduces the analytic curve deep in the Meissner phase") {
    const LadderSpec spec = LadderSpec::uniform(20, Boundary::Periodic, kGUnit, kGUnit);
    const std::vector<double> grid = {0.05 * kPi, 0.1 * kPi, 0.2 * kPi};
    const auto scan = chiral_current_scan(spec, 1.0, grid, 1);
    REQUIRE(scan.size() == 3);
    for (const auto& pt : scan) {
        CHECK(pt.degeneracy == 1);
        CHECK_THAT(pt.jc, Catch::Matchers::WithinAbs(pt.jc_analytic, 1e-10));
        CHECK_THAT(pt.jc_analytic, Catch::Matchers::WithinAbs(2 * std::sin(pt.phi / 2), 1e-12));
    }
}

TEST_CASE("parallel and serial scans agree") {
    const LadderSpec spec = LadderSpec::uniform(10, Boundary::Periodic, kGUnit, kGUnit);
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back((i + 1) * kPi / 13);
    const auto a = chiral_current_scan(spec, 1.0, grid, 1);
    const auto b = chiral_current_scan_serial(spec, 1.0, grid, 1);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].degeneracy == b[i].degeneracy);
        CHECK_THAT(a[i].jc, Catch::Matchers::WithinAbs(b[i].jc, 1e-13));
        CHECK_THAT(a[i].jc_analytic, Catch::Matchers::WithinAbs(b[i].jc_analytic, 1e-13));
    }

    // two-excitation path as well (small ladder)
    const LadderSpec open5 = LadderSpec::uniform(5, Boundary::Open, kGUnit, kGUnit);
    const auto a2 = chiral_current_scan(open5, 1.0, grid, 2);
    const auto b2 = chiral_current_scan_serial(open5, 1.0, grid, 2);
    for (std::size_t i = 0; i < a2.size(); ++i)
        CHECK_THAT(a2[i].jc, Catch::Matchers::WithinAbs(b2[i].jc, 1e-13));
}

TEST_CASE("vortex degeneracy appears in the scan output") {
    const LadderSpec spec = LadderSpec::uniform(50, Boundary::Periodic, kGUnit, kGUnit);
    const auto scan = chiral_current_scan(spec, 1.0, {0.1 * kPi, 0.9 * kPi}, 1);
    CHECK(scan[0].degeneracy == 1);
    CHECK(scan[1].degeneracy == 2);
}
