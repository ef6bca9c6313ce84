#include <cmath>

#include <doctest.h>

#include "checks.hpp"
#include "jcengine/errors.hpp"
#include "jcengine/pulse_smatrix.hpp"
#include "jcengine/sectors.hpp"
#include "reference.hpp"

using namespace jcengine;

TEST_CASE("sector bases") {
    for (int n = 0; n <= 6; ++n) {
        const SectorBasis b = sector_basis(n);
        CHECK(b.dim() == 2 * n + 1);
        for (const auto& l : b.labels) CHECK(quanta(l) == n);
    }
    CHECK(sector_basis(0).labels.front() == BasisLabel{0, EngineLevel::g, 0});
    CHECK_THROWS(sector_basis(-1));
    CHECK_THROWS(sector_indices(sector_basis(5), ProductSpace::for_quanta_bound(4)));
}

TEST_CASE("composed S leaves every sector invariant and is unitary on it") {
    ref::ParamGenerator gen(31);
    for (int draw = 0; draw < 5; ++draw) {
        const CycleParams p = gen.draw();
        const Operator S = compose_cycle(p, 6).s;
        for (int n = 0; n <= 6; ++n) {
            CHECK(sector_leakage(S, sector_basis(n)) <= 1e-12);
            CHECK(unitarity_defect(project(S, sector_basis(n), 1e-10)) <= 1e-12);
            for (Complex z : sector_spectrum(S, sector_basis(n))) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-10);
        }
        const auto ground = sector_spectrum(S, sector_basis(0));
        REQUIRE(ground.size() == 1);
        CHECK(std::abs(ground[0] - 1.0) <= 1e-12);
    }
}

TEST_CASE("a single pulse is not sector-preserving") {
    const ProductSpace space = ProductSpace::for_quanta_bound(3);
    const Operator pulse = space.engine(s2(CycleParams{}));
    CHECK(sector_leakage(pulse, sector_basis(1)) > 0.5);
    CHECK_THROWS_AS(project(pulse, sector_basis(1), 1e-10), InvarianceError);
}

TEST_CASE("quasi-periodic returns") {
    const CycleParams p;
    const Operator S = compose_cycle(p, 3).s;
    const ProductSpace space = ProductSpace::for_quanta_bound(3);
    Vector psi = space.basis_vector({1, EngineLevel::g, 0});
    const auto overlaps = quasi_periodicity(S, psi, 3000);
    CHECK(overlaps.size() == 3001);
    CHECK(overlaps[0] == doctest::Approx(1.0));
    double best = 0.0;
    for (std::size_t k = 1; k < overlaps.size(); ++k) {
        CHECK(overlaps[k] <= 1.0);
        best = std::max(best, overlaps[k]);
    }
    CHECK(best > 0.95);
    CHECK_THROWS(quasi_periodicity(S, 2.0 * psi, 3));
}
