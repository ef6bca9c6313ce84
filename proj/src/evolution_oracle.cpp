#include "jcengine/evolution_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace jcengine {

namespace {

constexpr double kHermitianSlack = 1e-12;

bool is_hermitian(const Matrix& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return hermiticity_defect(m) <= kHermitianSlack * scale;
}

}  // namespace

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::cold_contact: return "1";
        case Phase::pulse_a: return "2a";
        case Phase::pulse_b: return "2b";
        case Phase::warm_contact: return "3";
    }
    return "?";
}

PhaseSpec PhaseSpec::of(Phase phase, const CycleParams& p) {
    switch (phase) {
        case Phase::cold_contact: return {phase, p.tau1};
        case Phase::pulse_a: return {phase, p.pulse_a_duration()};
        case Phase::pulse_b: return {phase, p.pulse_b_duration()};
        case Phase::warm_contact: return {phase, p.tau3};
    }
    throw std::invalid_argument("unknown phase");
}

Operator free_hamiltonian(const CycleParams& p, const ProductSpace& space) {
    return p.omega1 * space.cold(number_operator(space.cold_cutoff(), FactorKind::cold)) +
           space.engine(engine_hamiltonian(p.mu, p.delta)) +
           p.omega3 * space.warm(number_operator(space.warm_cutoff(), FactorKind::warm));
}

Operator assemble_hamiltonian(const PhaseSpec& phase, const CycleParams& p, const ProductSpace& space) {
    const auto& em = engine_matrices();
    Operator h = [&]() -> Operator {
        switch (phase.phase) {
            case Phase::cold_contact: {
                const Operator a = annihilator(space.cold_cutoff(), FactorKind::cold);
                const Operator id_warm = identity({FactorKind::warm, space.warm_cutoff().dim()});
                return free_hamiltonian(p, space) +
                       p.kappa12 * (tensor3(a.adjoint(), em.e_plus, id_warm) + tensor3(a, em.e_minus, id_warm));
            }
            case Phase::warm_contact: {
                const Operator c = annihilator(space.warm_cutoff(), FactorKind::warm);
                const Operator id_cold = identity({FactorKind::cold, space.cold_cutoff().dim()});
                return free_hamiltonian(p, space) +
                       p.kappa23 * (tensor3(id_cold, em.f_plus, c.adjoint()) + tensor3(id_cold, em.f_minus, c));
            }
            case Phase::pulse_a: return engine_hamiltonian(p.mu, p.delta) + p.eps_a * gell_mann(6);
            case Phase::pulse_b: return engine_hamiltonian(p.mu, p.delta) - p.eps_b * gell_mann(1);
        }
        throw std::invalid_argument("unknown phase");
    }();
    if (!is_hermitian(h.matrix())) throw std::logic_error("assembled Hamiltonian for phase " + to_string(phase.phase) + " is not Hermitian");
    return h;
}

Operator unitary_exponential(const Operator& h, double t) {
    if (!is_hermitian(h.matrix())) throw std::invalid_argument("unitary_exponential needs a Hermitian generator");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigendecomposition failed");
    const Eigen::VectorXcd phases = (-kI * t * solver.eigenvalues().cast<Complex>()).array().exp();
    const Matrix& v = solver.eigenvectors();
    return Operator(v * phases.asDiagonal() * v.adjoint(), h.signature());
}

Operator oracle_smatrix(const PhaseSpec& phase, const CycleParams& p, const ProductSpace& space) {
    const Operator h = assemble_hamiltonian(phase, p, space);
    if (phase.phase == Phase::pulse_a || phase.phase == Phase::pulse_b) {
        const Operator h_gef = engine_hamiltonian(p.mu, p.delta);
        return space.engine(unitary_exponential(h_gef, -phase.duration) * unitary_exponential(h, phase.duration));
    }
    const Operator h0 = free_hamiltonian(p, space);
    return unitary_exponential(h0, -phase.duration) * unitary_exponential(h, phase.duration);
}

}  // namespace jcengine
