#include "jcengine/fock_algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace jcengine {

namespace {

void require_side(FactorKind side) {
    if (side != FactorKind::cold && side != FactorKind::warm) {
        throw std::invalid_argument("oscillator operators need a cold or warm factor, got " + to_string(side));
    }
}

void require_same_space(const Operator& a, const Operator& b, const char* what) {
    if (a.signature() != b.signature()) {
        throw std::invalid_argument(std::string(what) + ": signature mismatch " + to_string(a.signature()) +
                                    " vs " + to_string(b.signature()));
    }
}

Operator engine_op(std::initializer_list<std::initializer_list<Complex>> rows) {
    Matrix m(kEngineDim, kEngineDim);
    Index r = 0;
    for (const auto& row : rows) {
        Index c = 0;
        for (const auto& x : row) m(r, c++) = x;
        ++r;
    }
    return Operator(std::move(m), {{FactorKind::engine, kEngineDim}});
}

}  // namespace

FockCutoff::FockCutoff(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("Fock cutoff must be nonnegative");
}

std::string to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::cold: return "cold";
        case FactorKind::engine: return "engine";
        case FactorKind::doublet: return "doublet";
        case FactorKind::warm: return "warm";
    }
    return "?";
}

std::string to_string(const std::vector<Factor>& signature) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < signature.size(); ++i) {
        if (i) os << ", ";
        os << to_string(signature[i].kind) << '(' << signature[i].dim << ')';
    }
    os << ']';
    return os.str();
}

Operator::Operator(Matrix entries, std::vector<Factor> signature)
    : entries_(std::move(entries)), signature_(std::move(signature)) {
    Index expected = 1;
    for (const auto& f : signature_) expected *= f.dim;
    if (entries_.rows() != entries_.cols() || entries_.rows() != expected) {
        throw std::invalid_argument("operator of size " + std::to_string(entries_.rows()) + "x" +
                                    std::to_string(entries_.cols()) + " does not match signature " +
                                    to_string(signature_));
    }
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), signature_); }

Vector Operator::apply(const Vector& v) const {
    if (v.size() != dim()) throw std::invalid_argument("state dimension does not match operator");
    return entries_ * v;
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_space(*this, rhs, "operator+");
    entries_ += rhs.entries_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_space(*this, rhs, "operator-");
    entries_ -= rhs.entries_;
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    entries_ *= s;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    require_same_space(lhs, rhs, "operator*");
    return Operator(lhs.entries_ * rhs.entries_, lhs.signature_);
}

Operator commutator(const Operator& x, const Operator& y) { return x * y - y * x; }

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_defect(const Matrix& m) {
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return std::max(spectral_norm(m.adjoint() * m - id), spectral_norm(m * m.adjoint() - id));
}

Operator identity(const Factor& factor) { return Operator(Matrix::Identity(factor.dim, factor.dim), {factor}); }

Operator annihilator(FockCutoff cutoff, FactorKind side) {
    require_side(side);
    Matrix a = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (Index n = 1; n < cutoff.dim(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return Operator(std::move(a), {{side, cutoff.dim()}});
}

Operator creator(FockCutoff cutoff, FactorKind side) { return annihilator(cutoff, side).adjoint(); }

Operator number_operator(FockCutoff cutoff, FactorKind side) {
    require_side(side);
    Eigen::VectorXcd diag(cutoff.dim());
    for (Index n = 0; n < cutoff.dim(); ++n) diag(n) = static_cast<double>(n);
    return fock_diagonal(diag, side);
}

Operator vacuum_projector(FockCutoff cutoff, FactorKind side) {
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(cutoff.dim());
    diag(0) = 1.0;
    return fock_diagonal(diag, side);
}

Operator fock_diagonal(const Eigen::VectorXcd& values, FactorKind side) {
    require_side(side);
    return Operator(values.asDiagonal().toDenseMatrix(), {{side, values.size()}});
}

double level_energy(EngineLevel level, double mu, double delta) {
    switch (level) {
        case EngineLevel::g: return -mu;
        case EngineLevel::e: return mu;
        case EngineLevel::f: return mu + 2.0 * delta;
    }
    return 0.0;
}

char level_symbol(EngineLevel level) {
    switch (level) {
        case EngineLevel::g: return 'g';
        case EngineLevel::e: return 'e';
        case EngineLevel::f: return 'f';
    }
    return '?';
}

EngineLevel parse_level(char symbol) {
    switch (symbol) {
        case 'g': return EngineLevel::g;
        case 'e': return EngineLevel::e;
        case 'f': return EngineLevel::f;
        default: throw std::invalid_argument(std::string("unknown engine level '") + symbol + "'");
    }
}

Operator gell_mann(int index) {
    const Complex i = kI;
    const double r3 = 1.0 / std::sqrt(3.0);
    switch (index) {
        case 1: return engine_op({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
        case 2: return engine_op({{0, -i, 0}, {i, 0, 0}, {0, 0, 0}});
        case 3: return engine_op({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}});
        case 4: return engine_op({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
        case 5: return engine_op({{0, 0, -i}, {0, 0, 0}, {i, 0, 0}});
        case 6: return engine_op({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
        case 7: return engine_op({{0, 0, 0}, {0, 0, -i}, {0, i, 0}});
        case 8: return engine_op({{r3, 0, 0}, {0, r3, 0}, {0, 0, -2.0 * r3}});
        default: throw std::out_of_range("Gell-Mann index must be in 1..8, got " + std::to_string(index));
    }
}

const EngineMatrices& engine_matrices() {
    static const EngineMatrices m = [] {
        const Operator e_plus = 0.5 * (gell_mann(1) + kI * gell_mann(2));
        const Operator e_minus = 0.5 * (gell_mann(1) - kI * gell_mann(2));
        const Operator f_plus = 0.5 * (gell_mann(6) + kI * gell_mann(7));
        const Operator f_minus = 0.5 * (gell_mann(6) - kI * gell_mann(7));
        return EngineMatrices{e_plus,
                              e_minus,
                              f_plus,
                              f_minus,
                              e_plus * e_minus,
                              e_minus * e_plus,
                              engine_op({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})};
    }();
    return m;
}

Operator engine_hamiltonian(double mu, double delta) {
    return engine_op({{-mu, 0, 0}, {0, mu, 0}, {0, 0, mu + 2.0 * delta}});
}

Operator kron(const Operator& left, const Operator& right) {
    Matrix m = Eigen::kroneckerProduct(left.matrix(), right.matrix()).eval();
    std::vector<Factor> sig = left.signature();
    sig.insert(sig.end(), right.signature().begin(), right.signature().end());
    return Operator(std::move(m), std::move(sig));
}

Operator tensor3(const Operator& cold, const Operator& engine, const Operator& warm) {
    const auto single = [](const Operator& op, FactorKind kind) {
        return op.signature().size() == 1 && op.signature().front().kind == kind;
    };
    if (!single(cold, FactorKind::cold) || !single(engine, FactorKind::engine) || !single(warm, FactorKind::warm)) {
        throw std::invalid_argument("tensor3 expects [cold], [engine], [warm] factors, got " +
                                    to_string(cold.signature()) + ", " + to_string(engine.signature()) + ", " +
                                    to_string(warm.signature()));
    }
    return kron(kron(cold, engine), warm);
}

std::string to_string(const BasisLabel& label) {
    std::ostringstream os;
    os << '|' << label.cold << ',' << level_symbol(label.level) << ',' << label.warm << '>';
    return os.str();
}

int level_quanta(EngineLevel level) { return static_cast<int>(level); }

int quanta(const BasisLabel& label) { return label.cold + level_quanta(label.level) + label.warm; }

ProductSpace::ProductSpace(FockCutoff cold, FockCutoff warm) : cold_(cold), warm_(warm) {}

ProductSpace ProductSpace::for_quanta_bound(int bound) {
    if (bound < 0) throw std::invalid_argument("quanta bound must be nonnegative");
    return ProductSpace(FockCutoff(bound), FockCutoff(bound));
}

std::vector<Factor> ProductSpace::signature() const {
    return {{FactorKind::cold, cold_.dim()}, {FactorKind::engine, kEngineDim}, {FactorKind::warm, warm_.dim()}};
}

Index ProductSpace::index(const BasisLabel& label) const {
    if (!contains(label)) throw std::out_of_range("basis label " + to_string(label) + " outside the truncated space");
    return (label.cold * kEngineDim + static_cast<int>(label.level)) * warm_.dim() + label.warm;
}

BasisLabel ProductSpace::label(Index index) const {
    if (index < 0 || index >= dim()) throw std::out_of_range("basis index out of range");
    const Index k = index % warm_.dim();
    const Index rest = index / warm_.dim();
    return {static_cast<int>(rest / kEngineDim), static_cast<EngineLevel>(rest % kEngineDim), static_cast<int>(k)};
}

bool ProductSpace::contains(const BasisLabel& label) const {
    return label.cold >= 0 && label.cold <= cold_.n_max() && label.warm >= 0 && label.warm <= warm_.n_max();
}

Operator ProductSpace::identity() const { return Operator(Matrix::Identity(dim(), dim()), signature()); }

Operator ProductSpace::cold(const Operator& op) const {
    return tensor3(op, jcengine::identity({FactorKind::engine, kEngineDim}),
                   jcengine::identity({FactorKind::warm, warm_.dim()}));
}

Operator ProductSpace::engine(const Operator& op) const {
    return tensor3(jcengine::identity({FactorKind::cold, cold_.dim()}), op,
                   jcengine::identity({FactorKind::warm, warm_.dim()}));
}

Operator ProductSpace::warm(const Operator& op) const {
    return tensor3(jcengine::identity({FactorKind::cold, cold_.dim()}),
                   jcengine::identity({FactorKind::engine, kEngineDim}), op);
}

Operator ProductSpace::cold_engine(const Operator& op) const {
    const std::vector<Factor> expected{{FactorKind::cold, cold_.dim()}, {FactorKind::engine, kEngineDim}};
    if (!op.acts_on(expected)) throw std::invalid_argument("cold_engine lift expects " + to_string(expected));
    return kron(op, jcengine::identity({FactorKind::warm, warm_.dim()}));
}

Operator ProductSpace::engine_warm(const Operator& op) const {
    const std::vector<Factor> expected{{FactorKind::engine, kEngineDim}, {FactorKind::warm, warm_.dim()}};
    if (!op.acts_on(expected)) throw std::invalid_argument("engine_warm lift expects " + to_string(expected));
    return kron(jcengine::identity({FactorKind::cold, cold_.dim()}), op);
}

Vector ProductSpace::basis_vector(const BasisLabel& label) const {
    Vector v = Vector::Zero(dim());
    v(index(label)) = 1.0;
    return v;
}

Operator quanta_operator(const ProductSpace& space) {
    Eigen::VectorXcd weights(kEngineDim);
    weights << 0.0, 1.0, 2.0;
    const Operator engine_weights(weights.asDiagonal().toDenseMatrix(), {{FactorKind::engine, kEngineDim}});
    return space.cold(number_operator(space.cold_cutoff(), FactorKind::cold)) + space.engine(engine_weights) +
           space.warm(number_operator(space.warm_cutoff(), FactorKind::warm));
}

RetainedSpace::RetainedSpace(ProductSpace space, int bound) : space_(space), bound_(bound) {
    if (bound < 0) throw std::invalid_argument("quanta bound must be nonnegative");
    const Matrix n = quanta_operator(space_).matrix();
    for (Index i = 0; i < space_.dim(); ++i) {
        if (std::lround(n(i, i).real()) <= bound_) indices_.push_back(i);
    }
}

Matrix RetainedSpace::compress(const Operator& op) const {
    if (!op.acts_on(space_.signature())) throw std::invalid_argument("compress: operator not on the product space");
    const Matrix& m = op.matrix();
    Matrix out(dim(), dim());
    for (Index c = 0; c < dim(); ++c)
        for (Index r = 0; r < dim(); ++r) out(r, c) = m(indices_[r], indices_[c]);
    return out;
}

double RetainedSpace::leakage(const Operator& op) const {
    if (!op.acts_on(space_.signature())) throw std::invalid_argument("leakage: operator not on the product space");
    std::vector<bool> inside(space_.dim(), false);
    for (Index i : indices_) inside[i] = true;
    std::vector<Index> outside;
    for (Index i = 0; i < space_.dim(); ++i)
        if (!inside[i]) outside.push_back(i);
    if (outside.empty()) return 0.0;
    Matrix block(static_cast<Index>(outside.size()), dim());
    for (Index c = 0; c < dim(); ++c)
        for (Index r = 0; r < block.rows(); ++r) block(r, c) = op.matrix()(outside[r], indices_[c]);
    return spectral_norm(block);
}

double RetainedSpace::outside_norm(const Vector& v) const {
    if (v.size() != space_.dim()) throw std::invalid_argument("outside_norm: state dimension mismatch");
    std::vector<bool> inside(space_.dim(), false);
    for (Index i : indices_) inside[i] = true;
    double total = 0.0;
    for (Index i = 0; i < space_.dim(); ++i)
        if (!inside[i]) total += std::norm(v(i));
    return std::sqrt(total);
}

}  // namespace jcengine
