#pragma once

#include <optional>
#include <vector>

#include "jcengine/fock_algebra.hpp"

namespace jcengine {

/// Ordered basis of the invariant n-quanta subspace H_n:
/// |m,g,n-m> for m = 0..n, then |m,e,n-m-1> for m = 0..n-1. f states are
/// not part of H_n; the composed cycle fixes each of them.
struct SectorBasis {
    int n;
    std::vector<BasisLabel> labels;

    Index dim() const { return static_cast<Index>(labels.size()); }
};

SectorBasis sector_basis(int n);

/// The sector's labels as product-space indices. Membership is re-checked
/// against the diagonal of the quanta operator; throws if a label is outside
/// the space or carries the wrong quanta number.
std::vector<Index> sector_indices(const SectorBasis& basis, const ProductSpace& space);

/// Amplitude `op` moves out of the sector: max over sector basis vectors of
/// the norm of the out-of-sector part of op|v>.
double sector_leakage(const Operator& op, const SectorBasis& basis);

/// (2n+1) x (2n+1) compression of `op` onto the sector. With a tolerance,
/// throws InvarianceError when the leakage exceeds it.
Matrix project(const Operator& op, const SectorBasis& basis, std::optional<double> invariance_tolerance = std::nullopt);

/// Eigenvalues of the sector block, sorted by argument then modulus.
std::vector<Complex> sector_spectrum(const Operator& op, const SectorBasis& basis);

/// |<psi| op^k |psi>| for k = 0..horizon.
std::vector<double> quasi_periodicity(const Operator& op, const Vector& state, int horizon);

}  // namespace jcengine
