#include <cmath>

#include <doctest.h>

#include "checks.hpp"
#include "jcengine/fock_algebra.hpp"

using namespace jcengine;

TEST_CASE("ladder operators on a truncated oscillator") {
    const FockCutoff cut(6);
    const Operator a = annihilator(cut);
    const Operator ad = creator(cut);

    for (int n = 1; n <= 6; ++n) CHECK(a.matrix()(n - 1, n).real() == doctest::Approx(std::sqrt(n)));
    CHECK(dist(ad, a.adjoint()) == 0.0);
    CHECK(dist(ad * a, number_operator(cut)) <= 1e-14);

    // [a, a+] = 1 except on the top level, where truncation gives -n_max.
    const Matrix comm = commutator(a, ad).matrix();
    for (int n = 0; n < 6; ++n) CHECK(std::abs(comm(n, n) - 1.0) <= 1e-14);
    CHECK(std::abs(comm(6, 6) + 6.0) <= 1e-14);

    CHECK(vacuum_projector(cut).matrix()(0, 0) == Complex(1.0));
    CHECK(vacuum_projector(cut).matrix().trace() == Complex(1.0));
    CHECK_THROWS_AS(FockCutoff(-1), std::invalid_argument);
    CHECK_THROWS_AS(annihilator(cut, FactorKind::engine), std::invalid_argument);
}

TEST_CASE("Gell-Mann matrices are Hermitian, traceless and orthogonal") {
    for (int i = 1; i <= 8; ++i) {
        const Matrix li = gell_mann(i).matrix();
        CHECK(hermiticity_defect(li) == 0.0);
        CHECK(std::abs(li.trace()) <= 1e-15);
        for (int j = 1; j <= 8; ++j) {
            const Complex tr = (li * gell_mann(j).matrix()).trace();
            CHECK(std::abs(tr - (i == j ? 2.0 : 0.0)) <= 1e-14);
        }
    }
    CHECK_THROWS_AS(gell_mann(0), std::out_of_range);
    CHECK_THROWS_AS(gell_mann(9), std::out_of_range);
}

TEST_CASE("engine level operators") {
    const auto& em = engine_matrices();
    CHECK(dist(em.e1 + em.e2 + em.e3, identity({FactorKind::engine, 3})) == 0.0);
    CHECK(dist(em.e_plus.adjoint(), em.e_minus) == 0.0);
    CHECK(dist(em.f_plus.adjoint(), em.f_minus) == 0.0);
    CHECK(dist(em.e_plus * em.e_minus, em.e1) == 0.0);
    CHECK(dist(em.f_plus * em.f_minus, em.e2) == 0.0);
    // E+ = |g><e| lowers the engine by one quantum.
    CHECK(em.e_plus.matrix()(0, 1) == Complex(1.0));

    const Matrix h = engine_hamiltonian(0.7, 0.9).matrix();
    CHECK(h(0, 0).real() == doctest::Approx(-0.7));
    CHECK(h(1, 1).real() == doctest::Approx(0.7));
    CHECK(h(2, 2).real() == doctest::Approx(2.5));
    CHECK(level_energy(EngineLevel::f, 0.7, 0.9) == doctest::Approx(2.5));

    for (char c : {'g', 'e', 'f'}) CHECK(level_symbol(parse_level(c)) == c);
    CHECK_THROWS(parse_level('x'));
}

TEST_CASE("product space basis ordering") {
    const ProductSpace space(FockCutoff(3), FockCutoff(2));
    CHECK(space.dim() == 4 * 3 * 3);
    for (Index i = 0; i < space.dim(); ++i) CHECK(space.index(space.label(i)) == i);
    CHECK(space.index({2, EngineLevel::e, 1}) == (2 * 3 + 1) * 3 + 1);
    CHECK(space.contains({3, EngineLevel::f, 2}));
    CHECK_FALSE(space.contains({4, EngineLevel::g, 0}));
    CHECK_THROWS(space.index({0, EngineLevel::g, 3}));

    CHECK(dist(tensor3(identity({FactorKind::cold, 4}), identity({FactorKind::engine, 3}), identity({FactorKind::warm, 3})),
               space.identity()) == 0.0);
    CHECK_THROWS_AS(tensor3(identity({FactorKind::warm, 4}), identity({FactorKind::engine, 3}), identity({FactorKind::warm, 3})),
                    std::invalid_argument);

    // Operators on different spaces do not mix.
    CHECK_THROWS_AS(annihilator(FockCutoff(3)) + annihilator(FockCutoff(4)), std::invalid_argument);
    CHECK_THROWS_AS(annihilator(FockCutoff(3)) * annihilator(FockCutoff(3), FactorKind::warm), std::invalid_argument);
}

TEST_CASE("lifts agree with explicit tensor products") {
    const ProductSpace space(FockCutoff(2), FockCutoff(3));
    const Operator a = annihilator(space.cold_cutoff());
    const Operator c = annihilator(space.warm_cutoff(), FactorKind::warm);
    const Operator id_c = identity({FactorKind::cold, 3});
    const Operator id_e = identity({FactorKind::engine, 3});
    const Operator id_w = identity({FactorKind::warm, 4});
    const auto& em = engine_matrices();

    CHECK(dist(space.cold(a), tensor3(a, id_e, id_w)) == 0.0);
    CHECK(dist(space.warm(c), tensor3(id_c, id_e, c)) == 0.0);
    CHECK(dist(space.engine(em.e_plus), tensor3(id_c, em.e_plus, id_w)) == 0.0);
    CHECK(dist(space.cold_engine(kron(a, em.e_minus)), tensor3(a, em.e_minus, id_w)) == 0.0);
    CHECK(dist(space.engine_warm(kron(em.f_plus, c)), tensor3(id_c, em.f_plus, c)) == 0.0);

    // Matrix element check of a lifted operator by hand.
    const Operator x = tensor3(a.adjoint(), em.e_plus, id_w);
    const Vector v = x.apply(space.basis_vector({1, EngineLevel::e, 2}));
    CHECK(std::abs(v(space.index({2, EngineLevel::g, 2})) - std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(v.norm() - std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("quanta number and retained span") {
    CHECK(quanta({2, EngineLevel::e, 3}) == 6);
    CHECK(quanta({0, EngineLevel::f, 0}) == 2);
    CHECK(level_quanta(EngineLevel::g) == 0);

    const ProductSpace space = ProductSpace::for_quanta_bound(4);
    const Matrix n = quanta_operator(space).matrix();
    for (Index i = 0; i < space.dim(); ++i) CHECK(n(i, i).real() == quanta(space.label(i)));

    const RetainedSpace r(space, 4);
    Index expected = 0;
    for (Index i = 0; i < space.dim(); ++i) expected += quanta(space.label(i)) <= 4;
    CHECK(r.dim() == expected);
    CHECK(dist(r.compress(space.identity()), Matrix::Identity(r.dim(), r.dim())) == 0.0);
    CHECK(r.leakage(quanta_operator(space)) == 0.0);
    // a+ on the cold side pushes N = 4 states out.
    CHECK(r.leakage(space.cold(creator(space.cold_cutoff()))) > 0.5);
    CHECK(r.outside_norm(space.basis_vector({4, EngineLevel::e, 0})) == 1.0);
    CHECK(r.outside_norm(space.basis_vector({1, EngineLevel::f, 1})) == 0.0);
}

TEST_CASE("norm helpers") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 3.0;
    CHECK(spectral_norm(m) == doctest::Approx(3.0));
    CHECK(hermiticity_defect(m) == doctest::Approx(3.0));
    Matrix u(2, 2);
    u << 0, kI, kI, 0;
    CHECK(unitarity_defect(u) <= 1e-15);
}
