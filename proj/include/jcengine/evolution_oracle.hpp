#pragma once

#include <string>

#include "jcengine/fock_algebra.hpp"
#include "jcengine/params.hpp"

namespace jcengine {

/// The piecewise-constant stages of one cycle. Exactly one time-dependent
/// term is switched on in each.
enum class Phase {
    cold_contact,  // H0 + kappa12 (a+ E+ + a E-)
    pulse_a,       // H_gef + eps_a Lambda6   (engine only)
    pulse_b,       // H_gef - eps_b Lambda1   (engine only)
    warm_contact,  // H0 + kappa23 (F+ c+ + F- c)
};

std::string to_string(Phase phase);

struct PhaseSpec {
    Phase phase;
    double duration;

    /// The phase with its duration taken from the cycle parameters.
    static PhaseSpec of(Phase phase, const CycleParams& p);
};

/// H0 = omega1 a+a + H_gef + omega3 c+c on the product space.
Operator free_hamiltonian(const CycleParams& p, const ProductSpace& space);

/// Hamiltonian active during a phase: on the product space for the two
/// contacts, on the engine factor for the two pulses. Throws std::logic_error
/// if the assembled matrix is not Hermitian.
Operator assemble_hamiltonian(const PhaseSpec& phase, const CycleParams& p, const ProductSpace& space);

/// exp(-i t H) through the Hermitian eigendecomposition of H. Throws
/// std::invalid_argument when H is not Hermitian.
Operator unitary_exponential(const Operator& h, double t);

/// exp(i tau H0) exp(-i tau H_phase) on the product space, by brute force.
Operator oracle_smatrix(const PhaseSpec& phase, const CycleParams& p, const ProductSpace& space);

}  // namespace jcengine
