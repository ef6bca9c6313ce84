#include <cmath>
#include <numbers>

#include <doctest.h>

#include "checks.hpp"
#include "jcengine/errors.hpp"
#include "jcengine/pulse_smatrix.hpp"
#include "reference.hpp"

using namespace jcengine;
using std::numbers::pi;

namespace {

CycleParams resonant() {
    CycleParams p;
    p.omega1 = 2 * p.mu;
    p.omega3 = 2 * p.delta;
    return p;
}

}  // namespace

TEST_CASE("dressed coefficients") {
    const CycleParams p = resonant();
    const auto c0 = dressed_coefficients(Side::cold, 0, p);
    CHECK(c0.angle == doctest::Approx(pi / 4));
    CHECK(c0.splitting == doctest::Approx(p.kappa12));
    const auto w3 = dressed_coefficients(Side::warm, 3, p);
    CHECK(w3.splitting == doctest::Approx(p.kappa23 * 2));

    CycleParams q;
    q.kappa12 = 0;
    q.omega1 = 0.5;  // detuning < 0
    CHECK(dressed_coefficients(Side::cold, 2, q).angle == doctest::Approx(pi / 2));
    q.omega1 = 3.0;
    CHECK(dressed_coefficients(Side::cold, 2, q).angle == doctest::Approx(0.0));
    CHECK_THROWS(dressed_coefficients(Side::cold, -1, p));
}

TEST_CASE("the two tan(theta) forms agree") {
    ref::ParamGenerator gen(11);
    for (int draw = 0; draw < 200; ++draw) {
        const CycleParams p = gen.draw();
        for (int n = 0; n < 6; ++n) {
            const auto [lambda, theta] = dressed_coefficients(Side::cold, n, p);
            const double g = 2 * p.kappa12 * std::sqrt(n + 1.0);
            const double det = p.omega1 - 2 * p.mu;
            CHECK(std::tan(theta) == doctest::Approx(g / (2 * lambda + det)).epsilon(1e-9));
            CHECK(std::tan(theta) == doctest::Approx((2 * lambda - det) / g).epsilon(1e-9));
        }
    }
}

TEST_CASE("dressed energies are the doublet eigenvalues") {
    ref::ParamGenerator gen(12);
    for (int draw = 0; draw < 20; ++draw) {
        const CycleParams p = gen.draw();
        const ref::M hc = ref::cold_h(p, 5, 0);
        const ref::M hw = ref::warm_h(p, 0, 5);
        for (int n = 0; n < 4; ++n) {
            Eigen::Matrix2cd bc, bw;
            const int i = ref::idx(n + 1, 0, 0, 0), j = ref::idx(n, 1, 0, 0);
            bc << hc(i, i), hc(i, j), hc(j, i), hc(j, j);
            const int k = ref::idx(0, 1, n + 1, 5), l = ref::idx(0, 2, n, 5);
            bw << hw(k, k), hw(k, l), hw(l, k), hw(l, l);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> sc(bc), sw(bw);
            const auto ec = dressed_energies(Side::cold, n, p);
            const auto ew = dressed_energies(Side::warm, n, p);
            CHECK(std::abs(sc.eigenvalues()(0) - ec.lower) <= 1e-12);
            CHECK(std::abs(sc.eigenvalues()(1) - ec.upper) <= 1e-12);
            CHECK(std::abs(sw.eigenvalues()(0) - ew.lower) <= 1e-12);
            CHECK(std::abs(sw.eigenvalues()(1) - ew.upper) <= 1e-12);
        }
    }
}

TEST_CASE("contact S-matrices match the reference evolution") {
    ref::ParamGenerator gen(13);
    const int bound = 3;
    const ProductSpace space = ProductSpace::for_quanta_bound(bound);
    const RetainedSpace r(space, bound);
    for (int draw = 0; draw < 10; ++draw) {
        const CycleParams p = gen.draw();
        const ref::M h0 = ref::free_h(p, bound, bound);
        const ref::M e1 = ref::smatrix(h0, ref::cold_h(p, bound, bound), p.tau1);
        const ref::M e3 = ref::smatrix(h0, ref::warm_h(p, bound, bound), p.tau3);
        CHECK(ref::norm2(r.compress(space.cold_engine(s1(p, space.cold_cutoff()))) - ref::retained(e1, bound, bound, bound)) <= 1e-9);
        CHECK(ref::norm2(r.compress(space.engine_warm(s3(p, space.warm_cutoff()))) - ref::retained(e3, bound, bound, bound)) <= 1e-9);
    }
}

TEST_CASE("contact S-matrices reduce to the identity") {
    const ProductSpace space = ProductSpace::for_quanta_bound(5);
    const RetainedSpace r(space, 5);
    CycleParams p;
    p.tau1 = 0;
    p.tau3 = 0;
    CHECK(dist_on(r, space.cold_engine(s1(p, space.cold_cutoff())), space.identity()) <= 1e-14);
    CHECK(dist_on(r, space.engine_warm(s3(p, space.warm_cutoff())), space.identity()) <= 1e-14);

    CycleParams q;
    q.kappa12 = 0;
    q.kappa23 = 0;
    CHECK(dist_on(r, space.cold_engine(s1(q, space.cold_cutoff())), space.identity()) <= 1e-14);
    CHECK(dist_on(r, space.engine_warm(s3(q, space.warm_cutoff())), space.identity()) <= 1e-14);
}

TEST_CASE("exchange amplitude carries the coupling sign") {
    CycleParams p = resonant();
    p.tau1 = pi / (2 * p.kappa12);  // full exchange in the n = 0 doublet
    CHECK(exchange_amplitude(Side::cold, 0, p) == doctest::Approx(-1.0));
    const Operator S1 = s1(p, FockCutoff(2));
    // |0,e> -> i * B_0 * phase * |1,g>, so the amplitude has modulus 1.
    const Index from = 0 * 3 + 1, to = 1 * 3 + 0;
    CHECK(std::abs(S1.matrix()(to, from)) == doctest::Approx(1.0));
}

TEST_CASE("finite pulses match the reference evolution and the quarter-period forms") {
    ref::ParamGenerator gen(14);
    for (int draw = 0; draw < 50; ++draw) {
        CycleParams p = gen.draw();
        p.pulse_mode = PulseMode::finite;
        const ref::M h = ref::engine_h(p);
        CHECK(ref::norm2(s2a(p).matrix() - ref::smatrix(h, ref::pulse_a_h(p), p.pulse_a_duration())) <= 1e-12);
        CHECK(ref::norm2(s2b(p).matrix() - ref::smatrix(h, ref::pulse_b_h(p), p.pulse_b_duration())) <= 1e-12);
        CHECK((s2a(p).matrix() - s2a_quarter_period(p).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((s2b(p).matrix() - s2b_quarter_period(p).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((s2(p).matrix() - s2_quarter_period(p).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(dist(s4(p), s2(p).adjoint()) == 0.0);

        // Arbitrary durations still match the evolution.
        p.tau_a = gen.uniform(0, 3);
        p.tau_b = gen.uniform(0, 3);
        CHECK(ref::norm2(s2a(p).matrix() - ref::smatrix(h, ref::pulse_a_h(p), *p.tau_a)) <= 1e-12);
        CHECK(ref::norm2(s2b(p).matrix() - ref::smatrix(h, ref::pulse_b_h(p), *p.tau_b)) <= 1e-12);
    }
}

TEST_CASE("strong-pulse limits") {
    Matrix a(3, 3), b(3, 3);
    a << 1, 0, 0, 0, 0, -kI, 0, -kI, 0;
    b << 0, kI, 0, kI, 0, 0, 0, 0, 1;
    CHECK(dist(s2a_strong_limit().matrix(), a) == 0.0);
    CHECK(dist(s2b_strong_limit().matrix(), b) == 0.0);
    CHECK(dist(s2_strong_limit().matrix(), b * a) == 0.0);

    CycleParams strong;
    CHECK(dist(s2(strong), s2_strong_limit()) == 0.0);

    // Finite S2 approaches the limit monotonically as the field grows.
    CycleParams p;
    p.pulse_mode = PulseMode::finite;
    double previous = INFINITY;
    for (double eps = 10; eps <= 1e5; eps *= std::sqrt(10.0)) {
        p.eps_a = p.eps_b = eps;
        const double err = (s2(p).matrix() - s2_strong_limit().matrix()).cwiseAbs().maxCoeff();
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous <= 1e-4);
}

TEST_CASE("strong-limit conjugation table") {
    const auto& em = engine_matrices();
    const Operator S2 = s2_strong_limit();
    CHECK(dist(S2.adjoint() * em.e1 * S2, em.e3) == 0.0);
    CHECK(dist(S2.adjoint() * em.e2 * S2, em.e1) == 0.0);
    CHECK(dist(S2.adjoint() * em.e3 * S2, em.e2) == 0.0);
}

TEST_CASE("quanta conservation: s1, s3 and S commute with N, s2 does not") {
    const ProductSpace space = ProductSpace::for_quanta_bound(4);
    const RetainedSpace r(space, 4);
    const Operator n = quanta_operator(space);
    const CycleParams p;
    CHECK(spectral_norm(r.compress(commutator(space.cold_engine(s1(p, space.cold_cutoff())), n))) <= 1e-12);
    CHECK(spectral_norm(r.compress(commutator(space.engine_warm(s3(p, space.warm_cutoff())), n))) <= 1e-12);
    CHECK(spectral_norm(r.compress(commutator(compose_cycle_product(p, space), n))) <= 1e-12);
    CHECK(spectral_norm(r.compress(commutator(space.engine(s2(p)), n))) > 0.5);
}

TEST_CASE("composed cycle: product and closed form") {
    ref::ParamGenerator gen(15);
    for (int draw = 0; draw < 10; ++draw) {
        const CycleParams p = gen.draw();
        const auto cycle = compose_cycle(p, 6);
        REQUIRE(cycle.two_path_deviation);
        CHECK(*cycle.two_path_deviation <= 1e-10);

        const ProductSpace space = ProductSpace::for_quanta_bound(6);
        const Vector g = space.basis_vector({0, EngineLevel::g, 0});
        CHECK((cycle.s.apply(g) - g).norm() <= 1e-12);
        for (Index i = 0; i < space.dim(); ++i) {
            if (space.label(i).level != EngineLevel::f) continue;
            const Vector v = space.basis_vector(space.label(i));
            CHECK((cycle.s.apply(v) - v).norm() == 0.0);
        }
        CHECK(unitarity_defect(RetainedSpace(space, 6).compress(cycle.s)) <= 1e-12);
    }

    CycleParams finite;
    finite.pulse_mode = PulseMode::finite;
    CHECK_FALSE(compose_cycle(finite, 3).two_path_deviation.has_value());
    CHECK_THROWS_AS(compose_cycle_closed_form(finite, ProductSpace::for_quanta_bound(3)), std::invalid_argument);

    // The nine printed groups really are needed: each one is nonzero.
    const auto terms = compose_cycle_closed_form_terms(CycleParams{}, ProductSpace::for_quanta_bound(3));
    CHECK(terms.size() == 9);
    for (const auto& t : terms) CHECK(spectral_norm(t.matrix()) > 1e-3);
}

TEST_CASE("effective S-matrix") {
    const CycleParams p;
    const ProductSpace space = ProductSpace::for_quanta_bound(5);
    const RetainedSpace r(space, 5);
    const Operator eff = embed_doublet(s_eff(p, space.cold_cutoff()), space);
    CHECK(unitarity_defect(r.compress(eff)) <= 1e-12);

    CycleParams zero = p;
    zero.tau1 = 0;
    CHECK(dist_on(r, embed_doublet(s_eff(zero, space.cold_cutoff()), space), space.identity()) <= 1e-14);
    CHECK_THROWS_AS(embed_doublet(s1(p, space.cold_cutoff()), space), std::invalid_argument);
}

TEST_CASE("diagonal identities at cutoff 20") {
    ref::ParamGenerator gen(16);
    for (int draw = 0; draw < 20; ++draw) {
        for (const auto& id : diagonal_identities(gen.draw(), 20)) {
            INFO(id.name);
            CHECK(id.deviation <= 1e-12);
        }
    }
}
