#include "jcengine/energy_accounting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jcengine/errors.hpp"
#include "jcengine/evolution_oracle.hpp"
#include "jcengine/pulse_smatrix.hpp"

namespace jcengine {

namespace {

void require_strong_limit(const CycleParams& p, const char* what) {
    if (p.pulse_mode != PulseMode::strong_limit)
        throw std::invalid_argument(std::string(what) + " is only available in the strong-pulse limit");
}

struct Ladders {
    Operator a, ad, c, cd;
    Operator id_cold, id_warm;
};

Ladders ladders(const ProductSpace& space) {
    const Operator a = annihilator(space.cold_cutoff(), FactorKind::cold);
    const Operator c = annihilator(space.warm_cutoff(), FactorKind::warm);
    return {a, a.adjoint(), c, c.adjoint(), identity({FactorKind::cold, space.cold_cutoff().dim()}),
            identity({FactorKind::warm, space.warm_cutoff().dim()})};
}

double retained_deviation(const Operator& x, const Operator& y, const RetainedSpace& retained) {
    return spectral_norm(retained.compress(x - y));
}

// s with [n, m] = s m for s in {-1, 0, +1}.
int ladder_shift(const Operator& n, const Operator& m, const std::string& term) {
    const double size = spectral_norm(m.matrix());
    if (size < 1e-12) throw ConsistencyError("flow of " + term + ": monomial vanishes", size, 1e-12);
    const Matrix comm = commutator(n, m).matrix();
    int best = 0;
    double best_residual = INFINITY;
    for (int s : {-1, 0, 1}) {
        const double r = spectral_norm(comm - static_cast<double>(s) * m.matrix());
        if (r < best_residual) {
            best_residual = r;
            best = s;
        }
    }
    const double tol = 1e-9 * std::max(1.0, size);
    if (!(best_residual <= tol)) throw ConsistencyError("flow of " + term + ": no definite quanta shift", best_residual, tol);
    return best;
}

}  // namespace

Operator cycle_smatrix(const CycleParams& p, const ProductSpace& space, CycleOrder order) {
    const Operator S1 = space.cold_engine(s1(p, space.cold_cutoff()));
    const Operator S2 = space.engine(s2(p));
    const Operator S3 = space.engine_warm(s3(p, space.warm_cutoff()));
    const Operator S4 = space.engine(s4(p));
    switch (order) {
        case CycleOrder::cold_first: return S4 * S3 * S2 * S1;
        case CycleOrder::pulse_first: return S1 * S4 * S3 * S2;
        case CycleOrder::warm_first: return S2 * S1 * S4 * S3;
    }
    throw std::invalid_argument("unknown cycle order");
}

Operator transfer_operator_by_conjugation(const CycleParams& p, const ProductSpace& space) {
    const Operator s = cycle_smatrix(p, space, CycleOrder::cold_first);
    const Operator n = space.cold(number_operator(space.cold_cutoff(), FactorKind::cold));
    return s.adjoint() * n * s - n;
}

Operator transfer_operator_closed_form(const CycleParams& p, FockCutoff cold) {
    const auto& em = engine_matrices();
    const Operator a = annihilator(cold, FactorKind::cold);
    const Operator ad = a.adjoint();
    const auto [A, B, C] = contact_diagonals(Side::cold, p, cold);
    const Operator B2 = B * B;
    return kron(a * ad * B2, em.e2) - kron(ad * B2 * a, em.e1) + kI * kron(ad * a * ad * (A + kI * C) * B, em.e_plus) -
           kI * kron((A - kI * C) * B * a * ad * a, em.e_minus);
}

TransferOperator transfer_operator(const CycleParams& p, int quanta_bound, double tolerance) {
    p.validate();
    require_strong_limit(p, "the closed-form transfer operator");
    const ProductSpace space = ProductSpace::for_quanta_bound(quanta_bound);
    const RetainedSpace retained(space, quanta_bound);
    Operator closed = space.cold_engine(transfer_operator_closed_form(p, space.cold_cutoff()));
    const double deviation = retained_deviation(transfer_operator_by_conjugation(p, space), closed, retained);
    if (!(deviation <= tolerance)) throw ConsistencyError("D: conjugation vs closed form", deviation, tolerance);
    return {std::move(closed), deviation};
}

Operator warm_transfer_operator(const CycleParams& p, const ProductSpace& space) {
    const Operator s = cycle_smatrix(p, space, CycleOrder::warm_first);
    const Operator n = space.warm(number_operator(space.warm_cutoff(), FactorKind::warm));
    return s.adjoint() * n * s - n;
}

TransferSpectrumEntry transfer_spectrum(int n, const CycleParams& p) {
    if (n < 0) throw std::invalid_argument("transfer_spectrum: n must be nonnegative");
    const auto [lambda, theta] = dressed_coefficients(Side::cold, n, p);
    const double st = std::sin(p.tau1 * lambda);
    const double ct = std::cos(p.tau1 * lambda);
    const double s = st * std::sin(2 * theta);
    return {n, s, -s, Complex(st * std::cos(2 * theta), -ct), Complex(1 + s), Complex(-1 + s)};
}

Eigen::Vector2cd TransferSpectrumEntry::eigenvector(int sign) const {
    if (sign == 0) throw std::invalid_argument("eigenvector: sign must be nonzero");
    const double rho = sign > 0 ? rho_plus : rho_minus;
    // Block of D on (|n+1,g>, |n,e>) is [[-b^2, i b w], [-i b conj(w), b^2]]
    // with b = -rho_plus and w = i u.
    const double b = -rho_plus;
    const Complex w = kI * u;

    Eigen::Vector2cd first(u, sign > 0 ? v_plus : v_minus);
    Eigen::Vector2cd second(b * b - rho, kI * b * std::conj(w));
    Eigen::Vector2cd& pick = first.norm() >= second.norm() ? first : second;
    if (pick.norm() < 1e-14) return sign > 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    return pick.normalized();
}

WorkOperators work_operators_by_definition(const CycleParams& p, const ProductSpace& space) {
    const Operator h0 = free_hamiltonian(p, space);
    const Operator S1 = space.cold_engine(s1(p, space.cold_cutoff()));
    const Operator S2 = space.engine(s2(p));
    const Operator S3 = space.engine_warm(s3(p, space.warm_cutoff()));
    const Operator S2d = S2.adjoint();
    const Operator S3d = S3.adjoint();
    const Operator leave_frame = h0 - S1 * h0 * S1.adjoint();
    return {S1.adjoint() * leave_frame * S1, S2d * h0 * S2 - h0, S2d * (S3d * h0 * S3 - h0) * S2,
            S2d * S3d * (S2 * h0 * S2d - h0) * S3 * S2};
}

WorkOperators work_operators_closed_form(const CycleParams& p, const ProductSpace& space) {
    require_strong_limit(p, "the closed-form work operators");
    const auto& em = engine_matrices();
    const auto [a, ad, c, cd, id_cold, id_warm] = ladders(space);
    const auto [A, B, C] = contact_diagonals(Side::cold, p, space.cold_cutoff());
    const auto [Z, Y, V] = contact_diagonals(Side::warm, p, space.warm_cutoff());
    const double d1 = contact_detuning(Side::cold, p);
    const double d3 = contact_detuning(Side::warm, p);
    const double dmu = 2 * (p.mu - p.delta);
    const Operator B2 = B * B;
    const Operator Y2 = Y * Y;

    Operator phase1 = d1 * (tensor3(B2 * a * ad, em.e2, id_warm) - tensor3(ad * B2 * a, em.e1, id_warm)) +
                      kI * d1 * tensor3(ad * B * a * ad * (A + kI * C), em.e_plus, id_warm) -
                      kI * d1 * tensor3(B * a * ad * (A - kI * C) * a, em.e_minus, id_warm);

    Operator phase2 = space.engine(Operator(
        Eigen::Vector3cd(2 * p.mu, 2 * p.delta, -2 * (p.mu + p.delta)).asDiagonal().toDenseMatrix(),
        {{FactorKind::engine, kEngineDim}}));

    Operator phase3 = d3 * (tensor3(id_cold, em.e2, c * cd * Y2) - tensor3(id_cold, em.e1, cd * Y2 * c)) -
                      kI * d3 * tensor3(id_cold, em.e_plus, cd * (Z + kI * V) * c * cd * Y) +
                      kI * d3 * tensor3(id_cold, em.e_minus, (Z - kI * V) * c * cd * Y * c);

    Operator phase4 = -phase2 + dmu * (tensor3(id_cold, em.e1, cd * Y2 * c) - tensor3(id_cold, em.e2, Y2 * c * cd)) +
                      kI * dmu *
                          (tensor3(id_cold, em.e_plus, cd * (Z + kI * V) * c * cd * Y) -
                           tensor3(id_cold, em.e_minus, Y * c * cd * (Z - kI * V) * c));

    return {std::move(phase1), std::move(phase2), std::move(phase3), std::move(phase4)};
}

WorkAccounting work_operators(const CycleParams& p, int quanta_bound, double tolerance) {
    p.validate();
    require_strong_limit(p, "the closed-form work operators");
    const ProductSpace space = ProductSpace::for_quanta_bound(quanta_bound);
    const RetainedSpace retained(space, quanta_bound);
    const WorkOperators def = work_operators_by_definition(p, space);
    WorkOperators closed = work_operators_closed_form(p, space);

    const std::array<double, 4> dev{retained_deviation(def.phase1, closed.phase1, retained),
                                    retained_deviation(def.phase2, closed.phase2, retained),
                                    retained_deviation(def.phase3, closed.phase3, retained),
                                    retained_deviation(def.phase4, closed.phase4, retained)};
    for (std::size_t i = 0; i < dev.size(); ++i) {
        if (!(dev[i] <= tolerance))
            throw ConsistencyError("work operator of phase " + std::to_string(i + 1) + ": definition vs closed form", dev[i],
                                   tolerance);
    }
    return {std::move(closed), dev};
}

PulseWorkPair pulse_work_spectrum(int n, const CycleParams& p) {
    if (n < 0) throw std::invalid_argument("pulse_work_spectrum: n must be nonnegative");
    const auto [xi, phi] = dressed_coefficients(Side::warm, n, p);
    const double s = std::sin(p.tau3 * xi) * std::sin(2 * phi);
    return {s, -s, 2 * (p.mu - p.delta)};
}

EnergyLedger energy_ledger(const Vector& psi, const CycleParams& p, const ProductSpace& space, const WorkOperators& ops) {
    if (psi.size() != space.dim()) throw std::invalid_argument("energy_ledger: state dimension mismatch");
    const Operator h0 = free_hamiltonian(p, space);
    const Operator S2 = space.engine(s2(p));
    const Operator S3 = space.engine_warm(s3(p, space.warm_cutoff()));
    const Vector entering_phase1 = space.engine(s4(p)).apply(S3.apply(S2.apply(psi)));
    const Vector out = space.cold_engine(s1(p, space.cold_cutoff())).apply(entering_phase1);
    auto expect = [](const Operator& op, const Vector& v) { return v.dot(op.apply(v)).real(); };
    return {expect(h0, out) - expect(h0, psi),
            {expect(ops.phase1, entering_phase1), expect(ops.phase2, psi), expect(ops.phase3, psi), expect(ops.phase4, psi)}};
}

std::string FlowLabel::cold_arrow() const {
    switch (cold) {
        case Flow::toward_engine: return "→";
        case Flow::away_from_engine: return "←";
        case Flow::none: break;
    }
    return "---";
}

std::string FlowLabel::warm_arrow() const {
    switch (warm) {
        case Flow::toward_engine: return "←";
        case Flow::away_from_engine: return "→";
        case Flow::none: break;
    }
    return "---";
}

const std::vector<FlowLabel>& flow_table_reference() {
    using F = Flow;
    static const std::vector<FlowLabel> table{
        {"a†(A-iC)a ⊗ E1 ⊗ c†(Z-iV)c", F::none, F::none},
        {"a†B ⊗ E+ ⊗ c†(Z-iV)c", F::away_from_engine, F::none},
        {"Ba ⊗ E1 ⊗ c†Y", F::toward_engine, F::away_from_engine},
        {"aa†(A+iC) ⊗ E+ ⊗ c†Y", F::none, F::away_from_engine},
        {"a†(A-iC)a ⊗ E- ⊗ Yc", F::none, F::toward_engine},
        {"a†B ⊗ E2 ⊗ Yc", F::away_from_engine, F::toward_engine},
        {"Ba ⊗ E- ⊗ cc†(Z+iV)", F::toward_engine, F::none},
        {"aa†(A+iC) ⊗ E2 ⊗ cc†(Z+iV)", F::none, F::none},
    };
    return table;
}

std::vector<Operator> flow_table_monomials(const CycleParams& p, const ProductSpace& space) {
    const auto& em = engine_matrices();
    const auto [a, ad, c, cd, id_cold, id_warm] = ladders(space);
    const auto [A, B, C] = contact_diagonals(Side::cold, p, space.cold_cutoff());
    const auto [Z, Y, V] = contact_diagonals(Side::warm, p, space.warm_cutoff());

    const Operator cold_keep = ad * (A - kI * C) * a;
    const Operator cold_emit = ad * B;
    const Operator cold_absorb = B * a;
    const Operator cold_stay = a * ad * (A + kI * C);
    const Operator warm_keep = cd * (Z - kI * V) * c;
    const Operator warm_emit = cd * Y;
    const Operator warm_absorb = Y * c;
    const Operator warm_stay = c * cd * (Z + kI * V);

    return {tensor3(cold_keep, em.e1, warm_keep),     tensor3(cold_emit, em.e_plus, warm_keep),
            tensor3(cold_absorb, em.e1, warm_emit),   tensor3(cold_stay, em.e_plus, warm_emit),
            tensor3(cold_keep, em.e_minus, warm_absorb), tensor3(cold_emit, em.e2, warm_absorb),
            tensor3(cold_absorb, em.e_minus, warm_stay), tensor3(cold_stay, em.e2, warm_stay)};
}

std::vector<FlowLabel> classify_flows(const CycleParams& p, int quanta_bound) {
    p.validate();
    const ProductSpace space = ProductSpace::for_quanta_bound(quanta_bound);
    const Operator n_cold = space.cold(number_operator(space.cold_cutoff(), FactorKind::cold));
    const Operator n_warm = space.warm(number_operator(space.warm_cutoff(), FactorKind::warm));
    const auto monomials = flow_table_monomials(p, space);
    const auto& reference = flow_table_reference();

    // Cold quanta leaving the oscillator flow toward the engine; warm quanta
    // arriving in the oscillator flow away from it.
    auto cold_flow = [](int s) { return s < 0 ? Flow::toward_engine : s > 0 ? Flow::away_from_engine : Flow::none; };
    auto warm_flow = [](int s) { return s > 0 ? Flow::away_from_engine : s < 0 ? Flow::toward_engine : Flow::none; };

    std::vector<FlowLabel> out;
    out.reserve(monomials.size());
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        const std::string& term = reference[i].term;
        out.push_back({term, cold_flow(ladder_shift(n_cold, monomials[i], term)),
                       warm_flow(ladder_shift(n_warm, monomials[i], term))});
    }
    return out;
}

SignWeights sign_weights(const Vector& psi, const Operator& op, const RetainedSpace& retained, double zero_tolerance) {
    if (psi.size() != retained.space().dim()) throw std::invalid_argument("sign_weights: state dimension mismatch");
    const Matrix block = retained.compress(op);
    if (hermiticity_defect(block) > 1e-9 * std::max(1.0, block.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("sign_weights needs a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sign_weights: eigensolver failed");

    Vector local(retained.dim());
    for (Index i = 0; i < retained.dim(); ++i) local(i) = psi(retained.indices()[i]);
    const Eigen::VectorXd weights = (solver.eigenvectors().adjoint() * local).cwiseAbs2();

    SignWeights out{0, 0, 0};
    for (Index i = 0; i < weights.size(); ++i) {
        const double ev = solver.eigenvalues()(i);
        (ev < -zero_tolerance ? out.negative : ev > zero_tolerance ? out.positive : out.zero) += weights(i);
    }
    return out;
}

}  // namespace jcengine
