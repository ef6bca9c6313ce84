#include "jcengine/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jcengine/errors.hpp"

namespace jcengine {

namespace {

ProductSpace space_of(const Operator& op) {
    const auto& sig = op.signature();
    if (sig.size() != 3 || sig[0].kind != FactorKind::cold || sig[1].kind != FactorKind::engine ||
        sig[2].kind != FactorKind::warm) {
        throw std::invalid_argument("sector operations need an operator on the product space, got " + to_string(sig));
    }
    return ProductSpace(FockCutoff(static_cast<int>(sig[0].dim - 1)), FockCutoff(static_cast<int>(sig[2].dim - 1)));
}

}  // namespace

SectorBasis sector_basis(int n) {
    if (n < 0) throw std::invalid_argument("sector_basis: n must be nonnegative");
    SectorBasis basis{n, {}};
    basis.labels.reserve(2 * n + 1);
    for (int m = 0; m <= n; ++m) basis.labels.push_back({m, EngineLevel::g, n - m});
    for (int m = 0; m < n; ++m) basis.labels.push_back({m, EngineLevel::e, n - m - 1});
    return basis;
}

std::vector<Index> sector_indices(const SectorBasis& basis, const ProductSpace& space) {
    const Matrix n_op = quanta_operator(space).matrix();
    std::vector<Index> out;
    out.reserve(basis.labels.size());
    for (const auto& label : basis.labels) {
        const Index i = space.index(label);
        if (std::lround(n_op(i, i).real()) != basis.n) {
            throw std::logic_error("label " + to_string(label) + " does not carry " + std::to_string(basis.n) + " quanta");
        }
        out.push_back(i);
    }
    return out;
}

double sector_leakage(const Operator& op, const SectorBasis& basis) {
    const ProductSpace space = space_of(op);
    const auto idx = sector_indices(basis, space);
    std::vector<bool> inside(space.dim(), false);
    for (Index i : idx) inside[i] = true;
    double worst = 0.0;
    for (Index col : idx) {
        double out = 0.0;
        for (Index r = 0; r < space.dim(); ++r)
            if (!inside[r]) out += std::norm(op.matrix()(r, col));
        worst = std::max(worst, std::sqrt(out));
    }
    return worst;
}

Matrix project(const Operator& op, const SectorBasis& basis, std::optional<double> invariance_tolerance) {
    const ProductSpace space = space_of(op);
    if (invariance_tolerance) {
        const double leak = sector_leakage(op, basis);
        if (!(leak <= *invariance_tolerance)) {
            throw InvarianceError("operator leaks " + std::to_string(leak) + " out of sector H_" + std::to_string(basis.n));
        }
    }
    const auto idx = sector_indices(basis, space);
    const Index d = static_cast<Index>(idx.size());
    Matrix block(d, d);
    for (Index c = 0; c < d; ++c)
        for (Index r = 0; r < d; ++r) block(r, c) = op.matrix()(idx[r], idx[c]);
    return block;
}

std::vector<Complex> sector_spectrum(const Operator& op, const SectorBasis& basis) {
    const Matrix block = project(op, basis);
    Eigen::ComplexEigenSolver<Matrix> solver(block, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sector eigensolver failed");
    std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + block.rows());
    std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
        if (std::arg(x) != std::arg(y)) return std::arg(x) < std::arg(y);
        return std::abs(x) < std::abs(y);
    });
    return values;
}

std::vector<double> quasi_periodicity(const Operator& op, const Vector& state, int horizon) {
    if (horizon < 0) throw std::invalid_argument("quasi_periodicity: horizon must be nonnegative");
    if (std::abs(state.norm() - 1.0) > 1e-10) throw std::invalid_argument("quasi_periodicity: state must be normalized");
    std::vector<double> out;
    out.reserve(horizon + 1);
    Vector current = state;
    for (int k = 0; k <= horizon; ++k) {
        out.push_back(std::min(1.0, std::abs(state.dot(current))));
        if (k < horizon) current = op.apply(current);
    }
    return out;
}

}  // namespace jcengine
