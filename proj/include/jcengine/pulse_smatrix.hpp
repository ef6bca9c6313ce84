#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jcengine/fock_algebra.hpp"
#include "jcengine/params.hpp"

namespace jcengine {

/// Which oscillator a Jaynes-Cummings contact couples to the engine.
///   cold: g <-> e via a, detuning omega1 - 2 mu, coupling kappa12, duration tau1
///   warm: e <-> f via c, detuning omega3 - 2 delta, coupling kappa23, duration tau3
enum class Side { cold, warm };

double contact_detuning(Side side, const CycleParams& p);
double contact_coupling(Side side, const CycleParams& p);
double contact_duration(Side side, const CycleParams& p);

/// Half-splitting and mixing angle of the n-th dressed doublet
/// (lambda_n, theta_n on the cold side; xi_n, phi_n on the warm side).
struct DressedCoefficients {
    double splitting;
    double angle;
};

/// splitting = 1/2 sqrt(4 kappa^2 (n+1) + detuning^2);
/// tan(angle) = 2 kappa sqrt(n+1) / (2 splitting + detuning), principal branch,
/// with the degenerate 0/0 case (kappa = 0, detuning < 0) mapped to pi/2.
DressedCoefficients dressed_coefficients(Side side, int n, const CycleParams& p);

struct DressedEnergies {
    double lower;
    double upper;
};

/// Eigenvalues of the contact Hamiltonian on the n-th doublet. Cold side:
/// (n + 1/2) omega1 -/+ lambda_n on span{|n+1,g>, |n,e>}. Warm side:
/// mu + delta + (n + 1/2) omega3 -/+ xi_n on span{|e,n+1>, |f,n>}.
DressedEnergies dressed_energies(Side side, int n, const CycleParams& p);

/// sqrt(n+1) times the n-th entry of B (cold) or Y (warm):
/// -sin(tau lambda_n) sin(2 theta_n). The minus sign belongs to the
/// +kappa sign of the coupling Hamiltonian.
double exchange_amplitude(Side side, int n, const CycleParams& p);

/// Fock-diagonal operators of a contact phase:
///   cosine   = A or Z :  cos(tau lambda_n) / (n+1)
///   exchange = B or Y :  exchange_amplitude(n) / sqrt(n+1)
///   chirp    = C or V :  sin(tau lambda_n) cos(2 theta_n) / (n+1)
struct ContactDiagonals {
    Operator cosine;
    Operator exchange;
    Operator chirp;
};

ContactDiagonals contact_diagonals(Side side, const CycleParams& p, FockCutoff cutoff);

/// Phase prefactor exponent tau (omega - 2 level) / 2 of a contact S-matrix.
double contact_phase(Side side, const CycleParams& p);

/// Cold contact S-matrix on cold (x) engine.
Operator s1(const CycleParams& p, FockCutoff cold);
/// Warm contact S-matrix on engine (x) warm.
Operator s3(const CycleParams& p, FockCutoff warm);

/// Pulse S-matrices on the engine factor. Pulse a drives e <-> f, pulse b
/// drives g <-> e. In finite mode the durations come from CycleParams.
Operator s2a(const CycleParams& p);
Operator s2b(const CycleParams& p);
Operator s2(const CycleParams& p);
Operator s4(const CycleParams& p);

/// The closed 3x3 forms valid at the default durations tau = pi T / 2.
/// An independent transcription used to cross-check s2a/s2b/s2.
Operator s2a_quarter_period(const CycleParams& p);
Operator s2b_quarter_period(const CycleParams& p);
Operator s2_quarter_period(const CycleParams& p);

/// Strong-pulse limits.
Operator s2a_strong_limit();
Operator s2b_strong_limit();
Operator s2_strong_limit();

/// S4 S3 S2 S1 by multiplying the lifted phase matrices (any pulse mode).
Operator compose_cycle_product(const CycleParams& p, const ProductSpace& space);

/// The expanded closed form of the composed cycle in the strong-pulse limit,
/// returned term by term in the order they are printed; their sum is S.
std::vector<Operator> compose_cycle_closed_form_terms(const CycleParams& p, const ProductSpace& space);
Operator compose_cycle_closed_form(const CycleParams& p, const ProductSpace& space);

struct ComposedCycle {
    Operator s;
    /// || product - closed form ||; empty in finite pulse mode.
    std::optional<double> two_path_deviation;
};

/// Composed cycle S-matrix on the product space with cutoffs = quanta_bound.
/// In strong_limit mode both constructions are built and compared; throws
/// ConsistencyError when they differ by more than `tolerance`.
ComposedCycle compose_cycle(const CycleParams& p, int quanta_bound, double tolerance = 1e-10);

/// Effective S-matrix on cold (x) {g, e}:
///   [[G1 + a+(A - iC)a, i a+ B], [i B a, a a+(A + iC)]].
Operator s_eff(const CycleParams& p, FockCutoff cold);

/// Embeds an operator on cold (x) {g, e} into the product space, acting as
/// identity on f and on the warm factor.
Operator embed_doublet(const Operator& op, const ProductSpace& space);

struct IdentityCheck {
    std::string name;
    double deviation;  // spectral norm of lhs - rhs
};

/// The Fock-diagonal identities behind the unitarity of S_eff and the
/// derivation of D, evaluated on Fock states 0..n_max. The operators are
/// built one level higher so the truncated aa+ does not touch the checked block.
std::vector<IdentityCheck> diagonal_identities(const CycleParams& p, int n_max);

}  // namespace jcengine
