#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle.hpp"
#include "qswap/states.hpp"

using namespace qswap;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("basis kets") {
    const StateVector plus = basis_ket({Spin::Plus});
    CHECK(plus.amplitudes() == CVec{1.0, 0.0});
    const StateVector minus = basis_ket({Spin::Minus});
    CHECK(minus.amplitudes() == CVec{0.0, 1.0});

    const StateVector pm = basis_ket({Spin::Plus, Spin::Minus});
    REQUIRE(pm.dim() == 4);
    CHECK(pm.amplitudes()[0b01] == cplx{1.0});
    for (std::size_t i : {0, 2, 3}) CHECK(pm.amplitudes()[i] == cplx{0.0});

    // pattern follows the given label order, layout follows sorted labels
    const StateVector swapped = basis_ket({Spin::Plus, Spin::Minus}, {4, 1});
    CHECK(swapped.labels() == std::vector<int>{1, 4});
    CHECK(swapped.amplitudes()[0b10] == cplx{1.0});  // particle 1 is minus
}

TEST_CASE("singlet") {
    const StateVector s = singlet(1, 2);
    CHECK(s.labels() == std::vector<int>{1, 2});
    CHECK(std::abs(s.amplitudes()[1] - kInvSqrt2) < 1e-16);
    CHECK(std::abs(s.amplitudes()[2] + kInvSqrt2) < 1e-16);
    CHECK(s.amplitudes()[0] == cplx{0.0});
    CHECK(s.amplitudes()[3] == cplx{0.0});

    CHECK(std::abs(overlap(s, s) - 1.0) < 1e-15);

    // antisymmetry: swapping the two qubits negates the state
    const StateVector sw = singlet(2, 1);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(sw.amplitudes()[i] + s.amplitudes()[i]) < 1e-16);

    CHECK_THROWS_AS(singlet(1, 1), std::invalid_argument);
}

TEST_CASE("bell states") {
    CHECK(bell_state(BellKind::PsiMinus, 1, 2).amplitudes() == singlet(1, 2).amplitudes());

    const StateVector phip = bell_state(BellKind::PhiPlus, 1, 2);
    CHECK(std::abs(phip.amplitudes()[0] - kInvSqrt2) < 1e-16);
    CHECK(std::abs(phip.amplitudes()[3] - kInvSqrt2) < 1e-16);

    // orthonormal family
    const BellKind kinds[] = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                              BellKind::PhiMinus};
    for (BellKind a : kinds)
        for (BellKind b : kinds) {
            const cplx g = overlap(bell_state(a, 1, 2), bell_state(b, 1, 2));
            CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-12);
        }

    CHECK_THROWS_AS(bell_state(BellKind::PhiPlus, 3, 3), std::invalid_argument);
}

TEST_CASE("two-singlet initial state") {
    const StateVector psi = two_singlet_state();
    REQUIRE(psi.num_qubits() == 4);
    CHECK(psi.labels() == std::vector<int>{1, 2, 3, 4});

    // |+-+-> carries +1/2, |+--+> carries -1/2
    CHECK(std::abs(psi.amplitudes()[0b0101] - 0.5) < 1e-15);
    CHECK(std::abs(psi.amplitudes()[0b0110] + 0.5) < 1e-15);
    CHECK(std::abs(psi.amplitudes()[0b1001] + 0.5) < 1e-15);
    CHECK(std::abs(psi.amplitudes()[0b1010] - 0.5) < 1e-15);

    // the 12 patterns with qubit1==qubit2 or qubit3==qubit4 vanish
    int zeros = 0;
    for (std::size_t i = 0; i < 16; ++i) {
        const bool b1 = (i >> 3) & 1, b2 = (i >> 2) & 1, b3 = (i >> 1) & 1, b4 = i & 1;
        if (b1 == b2 || b3 == b4) {
            CHECK(psi.amplitudes()[i] == cplx{0.0});
            ++zeros;
        }
    }
    CHECK(zeros == 12);

    // same construction path as the raw amplitude tensor product
    CHECK(psi.amplitudes() == tensor(singlet(1, 2).amplitudes(), singlet(3, 4).amplitudes()));
}

TEST_CASE("tensor with interleaved labels") {
    // (x-up on particle 2) tensor (minus on particle 1): layout must follow labels (1,2)
    const StateVector a({2}, {kInvSqrt2, kInvSqrt2});
    const StateVector b({1}, {0.0, 1.0});
    const StateVector t = tensor(a, b);
    CHECK(t.labels() == std::vector<int>{1, 2});
    CHECK(std::abs(t.amplitudes()[0b10] - kInvSqrt2) < 1e-16);  // |-(1) +(2)>
    CHECK(std::abs(t.amplitudes()[0b11] - kInvSqrt2) < 1e-16);
    CHECK(t.amplitudes()[0b00] == cplx{0.0});
    CHECK(t.amplitudes()[0b01] == cplx{0.0});

    CHECK_THROWS_AS(tensor(t, b), std::invalid_argument);  // label 1 on both sides
}

TEST_CASE("state vector invariants") {
    CHECK_THROWS_AS(StateVector({1, 1}, CVec(4, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({1, 2}, CVec{1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({1}, CVec{1.0, 1.0}), std::invalid_argument);  // unnormalized
    const double nan = std::nan("");
    CHECK_THROWS_AS(StateVector({1}, CVec{cplx{nan, 0.0}, 0.0}), std::invalid_argument);
}

TEST_CASE("global phase comparison") {
    const StateVector v = bell_state(BellKind::PsiPlus, 1, 2);
    CHECK(equal_up_to_global_phase(v, v, 1e-12));

    CVec negated = v.amplitudes();
    for (cplx& z : negated) z = -z;
    CHECK(equal_up_to_global_phase(v, StateVector({1, 2}, negated), 1e-12));

    CVec rotated = v.amplitudes();
    const cplx phase = std::polar(1.0, 1.234);
    for (cplx& z : rotated) z *= phase;
    CHECK(equal_up_to_global_phase(v, StateVector({1, 2}, rotated), 1e-12));

    CHECK_FALSE(equal_up_to_global_phase(v, bell_state(BellKind::PsiMinus, 1, 2), 1e-12));

    CHECK(std::abs(phase_insensitive_distance(v, StateVector({1, 2}, rotated))) < 1e-12);
    CHECK(std::abs(phase_insensitive_distance(v, bell_state(BellKind::PsiMinus, 1, 2)) -
                   std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("phase equivalence behaves like an equivalence relation") {
    RngStream rng(21, 0);
    for (int it = 0; it < 500; ++it) {
        const StateVector a = oracle::random_state(2, rng);
        CHECK(equal_up_to_global_phase(a, a, 1e-10));  // reflexive

        CVec rot = a.amplitudes();
        const cplx phase = std::polar(1.0, 6.283185307179586 * rng.uniform());
        for (cplx& z : rot) z *= phase;
        const StateVector b(a.labels(), rot);
        CHECK(equal_up_to_global_phase(a, b, 1e-10));  // phase-invariant
        CHECK(equal_up_to_global_phase(b, a, 1e-10));  // symmetric

        const StateVector c = oracle::random_state(2, rng);
        if (equal_up_to_global_phase(a, c, 1e-10)) {
            CHECK(equal_up_to_global_phase(b, c, 2e-10));  // transitive within slack
        }
    }
}

TEST_CASE("every named constructor yields a normalized state") {
    CHECK(std::abs(norm_sq(two_singlet_state().amplitudes()) - 1.0) < 1e-10);
    CHECK(std::abs(norm_sq(singlet(3, 7).amplitudes()) - 1.0) < 1e-10);
    for (BellKind k : {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                       BellKind::PhiMinus})
        CHECK(std::abs(norm_sq(bell_state(k, 2, 5).amplitudes()) - 1.0) < 1e-10);
}
