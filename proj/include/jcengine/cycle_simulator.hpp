#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "jcengine/energy_accounting.hpp"
#include "jcengine/fock_algebra.hpp"
#include "jcengine/params.hpp"

namespace jcengine {

// ---------------------------------------------------------------------------
// Initial states

struct ProductSpec {
    BasisLabel label;
};

struct SuperpositionSpec {
    std::vector<std::pair<Complex, BasisLabel>> terms;  // normalized on construction
};

/// Eigenvector of D on span{|n+1,g>, |n,e>} for rho_plus (sign > 0) or
/// rho_minus (sign < 0), tensored with the warm Fock state |warm>.
struct TransferEigenSpec {
    int n;
    int sign;
    int warm;
};

/// Random normalized state on all basis states with N <= quanta bound,
/// amplitudes drawn from a seeded mt19937_64.
struct RandomSpec {
    std::uint64_t seed;
};

using InitialState = std::variant<ProductSpec, SuperpositionSpec, TransferEigenSpec, RandomSpec>;

/// Text forms:
///   product:1,g,0
///   superposition:1@1,g,0;1@0,e,0      (amplitude@m,level,k; amplitudes like 0.5, -2, 0.3+0.4i, 1i)
///   transfer:0,-,2
///   random:42
/// Throws std::invalid_argument on malformed input.
InitialState parse_initial_state(const std::string& text);
std::string to_string(const InitialState& spec);

/// Largest quanta number among the basis states the spec touches.
int required_quanta(const InitialState& spec);

/// Normalized state on the product space. Throws std::invalid_argument when
/// the spec needs more quanta than `quanta_bound` or has zero norm.
Vector make_initial_state(const InitialState& spec, const CycleParams& p, const ProductSpace& space, int quanta_bound);

/// S psi.
Vector step_cycle(const Vector& state, const Operator& s);

// ---------------------------------------------------------------------------
// Observables

struct CycleRecord {
    long long cycle;
    double cold_energy;   // omega1 <a+a>
    double warm_energy;   // omega3 <c+c>
    double p_g, p_e, p_f;
    double total_quanta;  // <N>
    double entropy_cold, entropy_engine, entropy_warm;  // von Neumann, natural log
    Complex return_amplitude;  // <psi_0 | psi_k>
    double norm;
};

/// Reduced density matrices of the three factors.
Matrix reduced_density_cold(const Vector& state, const ProductSpace& space);
Matrix reduced_density_engine(const Vector& state, const ProductSpace& space);
Matrix reduced_density_warm(const Vector& state, const ProductSpace& space);

/// -sum p ln p over the eigenvalues of rho; eigenvalues within 1e-12 of 0 or 1
/// contribute nothing.
double von_neumann_entropy(const Matrix& rho);

CycleRecord observe(const Vector& state, const Vector& initial, const CycleParams& p, const ProductSpace& space, long long cycle = 0);

// ---------------------------------------------------------------------------
// Long runs

/// Powers of a quanta-conserving cycle S-matrix through its sector
/// decompositions. Each sector block is Schur-diagonalized once and its
/// eigenvalues are renormalized to the unit circle, so S^k stays exactly
/// unitary for any k. Basis states outside every sector (f states) must be
/// fixed by S.
class SectorPropagator {
public:
    /// Throws InvarianceError if S leaks out of a sector or moves an f state
    /// by more than `tolerance`.
    SectorPropagator(const Operator& s, int quanta_bound, double tolerance = 1e-10);

    int quanta_bound() const { return bound_; }
    const ProductSpace& space() const { return space_; }

    /// Eigenvalues of the n-th sector block (unit modulus).
    const Eigen::VectorXcd& eigenvalues(int n) const { return sectors_.at(n).phases; }

    /// S^k psi for a state supported on N <= quanta_bound.
    Vector evolve(const Vector& psi, long long k) const;

private:
    struct Block {
        std::vector<Index> indices;
        Matrix vectors;           // Schur basis
        Eigen::VectorXcd phases;  // unit-modulus eigenvalues
        Eigen::VectorXd angles;
    };

    ProductSpace space_;
    int bound_;
    std::vector<Block> sectors_;
    std::vector<Index> fixed_;  // f states within the bound
};

struct SimulationConfig {
    CycleParams params;
    int quanta_bound = 4;
    long long cycles = 10;
    InitialState initial = ProductSpec{{0, EngineLevel::g, 0}};
    CycleOrder order = CycleOrder::cold_first;
};

/// One record per cycle, cycle 0 being the initial state. Strong-pulse
/// limit only: finite pulses do not conserve N and are refused with
/// std::invalid_argument.
std::vector<CycleRecord> run(const SimulationConfig& config);

}  // namespace jcengine
