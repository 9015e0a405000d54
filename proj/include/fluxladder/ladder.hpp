#pragma once

#include <stdexcept>
#include <vector>

namespace fluxladder {

// Two-leg ladder geometry.
//
// Rungs are labelled j = 1..N.  Single-particle sites are linearised with the
// A leg first:   site(A, j) = j-1,   site(B, j) = N + j-1.
// Leg bond b (0-based) connects rung b+1 to rung b+2; under periodic boundary
// conditions an extra wrap bond N -> 1 is appended as bond index N-1.
// Stored hopping amplitudes multiply  a†(from) a(to)  with "from" the lower
// rung of the bond (for the wrap bond: from = N, to = 1); the Hermitian
// conjugate is implied.

enum class Leg { A = 0, B = 1 };
enum class Boundary { Open, Periodic };

inline int site_index(Leg leg, int j, int N) {
    if (N < 1)
        throw std::invalid_argument("site_index: N must be positive");
    if (j < 1 || j > N)
        throw std::invalid_argument("site_index: rung index out of range");
    return static_cast<int>(leg) * N + (j - 1);
}

// Bare (undriven) couplings of the physical array: leg hoppings g per leg
// bond and rung hoppings g~ per rung.  These set the overall scale of the
// effective model once the drive parameters are folded in.
struct LadderSpec {
    int N = 1;
    Boundary boundary = Boundary::Open;
    std::vector<double> gA, gB;  // one entry per leg bond
    std::vector<double> gRung;   // one entry per rung

    static LadderSpec uniform(int N, Boundary b, double g = 1.0, double g_rung = 1.0);

    int sites() const { return 2 * N; }
    int leg_bond_count() const { return boundary == Boundary::Periodic ? N : N - 1; }
    int plaquette_count() const { return leg_bond_count(); }
    int bond_from(int b) const { return b + 1; }          // 1-based rung
    int bond_to(int b) const { return (b + 1) % N + 1; }  // wraps under PBC

    void validate() const;
};

inline LadderSpec LadderSpec::uniform(int N, Boundary b, double g, double g_rung) {
    LadderSpec s;
    s.N = N;
    s.boundary = b;
    s.validate();
    s.gA.assign(s.leg_bond_count(), g);
    s.gB.assign(s.leg_bond_count(), g);
    s.gRung.assign(N, g_rung);
    return s;
}

inline void LadderSpec::validate() const {
    if (N < 1)
        throw std::invalid_argument("LadderSpec: N must be positive");
    if (boundary == Boundary::Periodic && N < 3)
        throw std::invalid_argument("LadderSpec: periodic ladders need N >= 3");
    auto check = [](const std::vector<double>& v, std::size_t want, const char* name) {
        if (!v.empty() && v.size() != want)
            throw std::invalid_argument(std::string("LadderSpec: wrong size for ") + name);
    };
    check(gA, static_cast<std::size_t>(leg_bond_count()), "gA");
    check(gB, static_cast<std::size_t>(leg_bond_count()), "gB");
    check(gRung, static_cast<std::size_t>(N), "gRung");
}

}  // namespace fluxladder
