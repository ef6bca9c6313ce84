#pragma once

#include <array>
#include <string>
#include <vector>

#include "jcengine/fock_algebra.hpp"
#include "jcengine/params.hpp"

namespace jcengine {

/// Where the cycle starts. The transfer operator D belongs to cold_first
/// (S = S4 S3 S2 S1); the per-phase work operators belong to pulse_first
/// (S1 S4 S3 S2); warm_first (S2 S1 S4 S3) gives the warm-side analogue of D.
enum class CycleOrder { cold_first, pulse_first, warm_first };

/// Product of the lifted phase S-matrices in the given order.
Operator cycle_smatrix(const CycleParams& p, const ProductSpace& space, CycleOrder order);

// ---------------------------------------------------------------------------
// Cold-oscillator transfer operator D = S+ a+a S - a+a.

Operator transfer_operator_by_conjugation(const CycleParams& p, const ProductSpace& space);

/// [aa+B^2 (x) E2 - a+B^2a (x) E1 + i a+aa+(A+iC)B (x) E+ - i(A-iC)B aa+a (x) E-] on cold (x) engine.
Operator transfer_operator_closed_form(const CycleParams& p, FockCutoff cold);

struct TransferOperator {
    Operator d;                 // closed form lifted to the product space
    double two_path_deviation;  // on the retained span
};

/// Builds D both ways at cutoffs = quanta_bound (strong-pulse limit) and
/// throws ConsistencyError if they differ on the retained span by more than `tolerance`.
TransferOperator transfer_operator(const CycleParams& p, int quanta_bound, double tolerance = 1e-10);

/// S+ c+c S - c+c for the cycle that starts at the warm contact. No closed form.
Operator warm_transfer_operator(const CycleParams& p, const ProductSpace& space);

/// Closed-form spectrum of D on span{|n+1,g>, |n,e>} (warm factor untouched).
/// rho_plus = sin(tau1 lambda_n) sin(2 theta_n) = -rho_minus. With
/// s = rho_plus the eigenvectors are u|n+1,g> + v|n,e> where
/// u = sin(tau1 lambda_n) cos(2 theta_n) - i cos(tau1 lambda_n) and
/// v = +1 + s for rho_plus, v = -1 + s for rho_minus.
struct TransferSpectrumEntry {
    int n;
    double rho_plus;
    double rho_minus;
    Complex u;
    Complex v_plus;
    Complex v_minus;

    /// Normalized eigenvector (components on |n+1,g>, |n,e>) for rho_plus
    /// (sign > 0) or rho_minus (sign < 0). Falls back to the second
    /// eigen-equation where (u, v) vanishes, e.g. at cos(tau1 lambda_n) = cos(2 theta_n) = 0.
    Eigen::Vector2cd eigenvector(int sign) const;
};

TransferSpectrumEntry transfer_spectrum(int n, const CycleParams& p);

// ---------------------------------------------------------------------------
// Work per phase for the pulse-first cycle.

/// Phase 1 is stored as S1+ dE1 S1 = S1+ H0 S1 - H0 with dE1 = H0 - S1 H0 S1+,
/// so its expectation is taken in the state entering phase 1 rather than
/// the state leaving it.
struct WorkOperators {
    Operator phase1;  // S1+ (H0 - S1 H0 S1+) S1
    Operator phase2;  // S2+ H0 S2 - H0
    Operator phase3;  // S2+ (S3+ H0 S3 - H0) S2
    Operator phase4;  // S2+ S3+ (S2 H0 S2+ - H0) S3 S2
};

WorkOperators work_operators_by_definition(const CycleParams& p, const ProductSpace& space);
/// Closed forms, strong-pulse limit only.
WorkOperators work_operators_closed_form(const CycleParams& p, const ProductSpace& space);

struct WorkAccounting {
    WorkOperators ops;                 // closed forms
    std::array<double, 4> deviations;  // definition vs closed form, per phase, on the retained span
};

WorkAccounting work_operators(const CycleParams& p, int quanta_bound, double tolerance = 1e-10);

/// Eigenvalues of dE2 + dE4 on span{|g,n+1>, |e,n>} (warm index) are
/// scale * (+/- sin(tau3 xi_n) sin(2 phi_n)) with scale = 2 (mu - delta).
struct PulseWorkPair {
    double plus;
    double minus;
    double scale;
};

PulseWorkPair pulse_work_spectrum(int n, const CycleParams& p);

/// One pulse-first cycle split into per-phase energy changes for a state.
/// Phases 2-4 are expectation values in the initial state, phase 1 in the
/// state entering phase 1 (S4 S3 S2 psi); their sum equals total_change.
struct EnergyLedger {
    double total_change;
    std::array<double, 4> phases;
};

EnergyLedger energy_ledger(const Vector& psi, const CycleParams& p, const ProductSpace& space, const WorkOperators& ops);

// ---------------------------------------------------------------------------
// Energy-flow classification of the monomials in the composed S-matrix.

enum class Flow { none, toward_engine, away_from_engine };

struct FlowLabel {
    std::string term;
    Flow cold;
    Flow warm;

    /// "→", "←" or "---" per interface, reading cold -> engine -> warm left to right.
    std::string cold_arrow() const;
    std::string warm_arrow() const;

    bool operator==(const FlowLabel&) const = default;
};

/// The eight monomials with their expected flow directions.
const std::vector<FlowLabel>& flow_table_reference();

/// The same eight monomials as product-space operators, in table order.
std::vector<Operator> flow_table_monomials(const CycleParams& p, const ProductSpace& space);

/// Flow directions computed from [a+a, M] = s_c M and [c+c, M] = s_w M.
/// Throws ConsistencyError if a monomial has no definite shift.
std::vector<FlowLabel> classify_flows(const CycleParams& p = {}, int quanta_bound = 4);

// ---------------------------------------------------------------------------

/// Weight of a state on the negative, null and positive eigenspaces of a
/// Hermitian operator restricted to the retained span.
struct SignWeights {
    double negative;
    double zero;
    double positive;
};

SignWeights sign_weights(const Vector& psi, const Operator& op, const RetainedSpace& retained, double zero_tolerance = 1e-9);

}  // namespace jcengine
