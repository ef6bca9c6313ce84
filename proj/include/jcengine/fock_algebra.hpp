#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jcengine {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Highest retained occupation of one truncated oscillator.
class FockCutoff {
public:
    explicit FockCutoff(int n_max);

    int n_max() const { return n_max_; }
    Index dim() const { return n_max_ + 1; }

private:
    int n_max_;
};

enum class FactorKind { cold, engine, doublet, warm };

/// One tensor factor an operator acts on. `doublet` is the {g, e} subspace
/// of the engine.
struct Factor {
    FactorKind kind;
    Index dim;

    bool operator==(const Factor&) const = default;
};

std::string to_string(FactorKind kind);
std::string to_string(const std::vector<Factor>& signature);

/// Dense square matrix tagged with the ordered list of factors it acts on.
/// Arithmetic between operators on different spaces throws std::invalid_argument.
class Operator {
public:
    Operator(Matrix entries, std::vector<Factor> signature);

    const Matrix& matrix() const { return entries_; }
    const std::vector<Factor>& signature() const { return signature_; }
    Index dim() const { return entries_.rows(); }
    bool acts_on(const std::vector<Factor>& signature) const { return signature_ == signature; }

    Operator adjoint() const;
    Vector apply(const Vector& v) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);
    friend Operator operator*(Complex s, Operator op) { return op *= s; }
    friend Operator operator*(Operator op, Complex s) { return op *= s; }
    friend Operator operator-(Operator op) { return op *= -1.0; }

private:
    Matrix entries_;
    std::vector<Factor> signature_;
};

/// Commutator [x, y] = xy - yx.
Operator commutator(const Operator& x, const Operator& y);

/// Spectral norm (largest singular value).
double spectral_norm(const Matrix& m);
double hermiticity_defect(const Matrix& m);
double unitarity_defect(const Matrix& m);

// ---------------------------------------------------------------------------
// Oscillator factors.  `side` must be FactorKind::cold or FactorKind::warm.

Operator identity(const Factor& factor);
Operator annihilator(FockCutoff cutoff, FactorKind side = FactorKind::cold);
Operator creator(FockCutoff cutoff, FactorKind side = FactorKind::cold);
Operator number_operator(FockCutoff cutoff, FactorKind side = FactorKind::cold);
/// |0><0| on the oscillator (G1 on the cold side, G3 on the warm side).
Operator vacuum_projector(FockCutoff cutoff, FactorKind side = FactorKind::cold);
/// Fock-diagonal operator sum_n values[n] |n><n|.
Operator fock_diagonal(const Eigen::VectorXcd& values, FactorKind side);

// ---------------------------------------------------------------------------
// Engine factor.

enum class EngineLevel : int { g = 0, e = 1, f = 2 };

inline constexpr int kEngineDim = 3;

double level_energy(EngineLevel level, double mu, double delta);
char level_symbol(EngineLevel level);
EngineLevel parse_level(char symbol);

/// Gell-Mann matrix Lambda_index, index in 1..8.
Operator gell_mann(int index);

struct EngineMatrices {
    Operator e_plus;   // |g><e|
    Operator e_minus;  // |e><g|
    Operator f_plus;   // |e><f|
    Operator f_minus;  // |f><e|
    Operator e1;       // |g><g|
    Operator e2;       // |e><e|
    Operator e3;       // |f><f|
};

const EngineMatrices& engine_matrices();

/// diag(-mu, mu, mu + 2 delta).
Operator engine_hamiltonian(double mu, double delta);

// ---------------------------------------------------------------------------
// Tensor products.

Operator kron(const Operator& left, const Operator& right);

/// cold (x) engine (x) warm with index = (m * 3 + level) * warm_dim + k.
Operator tensor3(const Operator& cold, const Operator& engine, const Operator& warm);

struct BasisLabel {
    int cold;
    EngineLevel level;
    int warm;

    bool operator==(const BasisLabel&) const = default;
};

std::string to_string(const BasisLabel& label);

/// Quanta weight of an engine level: g -> 0, e -> 1, f -> 2.
int level_quanta(EngineLevel level);
int quanta(const BasisLabel& label);

/// The truncated product space H_cold (x) C^3 (x) H_warm.
class ProductSpace {
public:
    ProductSpace(FockCutoff cold, FockCutoff warm);

    /// Cutoffs n_max = bound on both oscillators; exact for all sectors with at most `bound` quanta.
    static ProductSpace for_quanta_bound(int bound);

    FockCutoff cold_cutoff() const { return cold_; }
    FockCutoff warm_cutoff() const { return warm_; }
    Index dim() const { return cold_.dim() * kEngineDim * warm_.dim(); }
    std::vector<Factor> signature() const;

    Index index(const BasisLabel& label) const;
    BasisLabel label(Index index) const;
    bool contains(const BasisLabel& label) const;

    Operator identity() const;
    Operator cold(const Operator& op) const;
    Operator engine(const Operator& op) const;
    Operator warm(const Operator& op) const;
    Operator cold_engine(const Operator& op) const;
    Operator engine_warm(const Operator& op) const;

    Vector basis_vector(const BasisLabel& label) const;

private:
    FockCutoff cold_;
    FockCutoff warm_;
};

/// N = a+a (x) 1 (x) 1 + 1 (x) diag(0,1,2) (x) 1 + 1 (x) 1 (x) c+c.
Operator quanta_operator(const ProductSpace& space);

/// Span of the product-basis states carrying at most `bound` quanta. Every
/// operator built here that conserves N is exact (truncation-free) on it.
class RetainedSpace {
public:
    RetainedSpace(ProductSpace space, int bound);
    explicit RetainedSpace(int bound) : RetainedSpace(ProductSpace::for_quanta_bound(bound), bound) {}

    const ProductSpace& space() const { return space_; }
    int bound() const { return bound_; }
    const std::vector<Index>& indices() const { return indices_; }
    Index dim() const { return static_cast<Index>(indices_.size()); }

    /// P^dagger X P for the coordinate isometry P onto the retained states.
    Matrix compress(const Operator& op) const;
    /// || (1 - P P^dagger) X P ||, the amplitude X moves out of the retained span.
    double leakage(const Operator& op) const;
    /// Norm of the part of `v` outside the retained span.
    double outside_norm(const Vector& v) const;

private:
    ProductSpace space_;
    int bound_;
    std::vector<Index> indices_;
};

}  // namespace jcengine
