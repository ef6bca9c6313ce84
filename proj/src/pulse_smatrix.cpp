#include "jcengine/pulse_smatrix.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jcengine/errors.hpp"

namespace jcengine {

namespace {

Operator engine3(const Eigen::Matrix3cd& m) { return Operator(m, {{FactorKind::engine, kEngineDim}}); }

Operator doublet_unit(Index row, Index col) {
    Matrix m = Matrix::Zero(2, 2);
    m(row, col) = 1.0;
    return Operator(std::move(m), {{FactorKind::doublet, 2}});
}

void require_strong_limit(const CycleParams& p, const char* what) {
    if (p.pulse_mode != PulseMode::strong_limit) {
        throw std::invalid_argument(std::string(what) + " is only available in the strong-pulse limit");
    }
}

}  // namespace

double contact_detuning(Side side, const CycleParams& p) {
    return side == Side::cold ? p.omega1 - 2.0 * p.mu : p.omega3 - 2.0 * p.delta;
}

double contact_coupling(Side side, const CycleParams& p) { return side == Side::cold ? p.kappa12 : p.kappa23; }

double contact_duration(Side side, const CycleParams& p) { return side == Side::cold ? p.tau1 : p.tau3; }

DressedCoefficients dressed_coefficients(Side side, int n, const CycleParams& p) {
    if (n < 0) throw std::invalid_argument("dressed_coefficients: n must be nonnegative");
    const double detuning = contact_detuning(side, p);
    const double g = contact_coupling(side, p) * std::sqrt(n + 1.0);
    // sin(2 theta) = g / splitting and cos(2 theta) = detuning / (2 splitting);
    // half the polar angle is the principal arctangent of 2g / (2 splitting + detuning)
    // and avoids cancellation in that denominator when detuning < 0.
    return {0.5 * std::hypot(2.0 * g, detuning), 0.5 * std::atan2(g, 0.5 * detuning)};
}

DressedEnergies dressed_energies(Side side, int n, const CycleParams& p) {
    const double split = dressed_coefficients(side, n, p).splitting;
    const double centre = side == Side::cold ? (n + 0.5) * p.omega1 : p.mu + p.delta + (n + 0.5) * p.omega3;
    return {centre - split, centre + split};
}

double exchange_amplitude(Side side, int n, const CycleParams& p) {
    const auto [split, angle] = dressed_coefficients(side, n, p);
    return -std::sin(contact_duration(side, p) * split) * std::sin(2.0 * angle);
}

ContactDiagonals contact_diagonals(Side side, const CycleParams& p, FockCutoff cutoff) {
    const FactorKind kind = side == Side::cold ? FactorKind::cold : FactorKind::warm;
    const double tau = contact_duration(side, p);
    Eigen::VectorXcd cosine(cutoff.dim()), exchange(cutoff.dim()), chirp(cutoff.dim());
    for (int n = 0; n <= cutoff.n_max(); ++n) {
        const auto [split, angle] = dressed_coefficients(side, n, p);
        cosine(n) = std::cos(tau * split) / (n + 1.0);
        exchange(n) = exchange_amplitude(side, n, p) / std::sqrt(n + 1.0);
        chirp(n) = std::sin(tau * split) * std::cos(2.0 * angle) / (n + 1.0);
    }
    return {fock_diagonal(cosine, kind), fock_diagonal(exchange, kind), fock_diagonal(chirp, kind)};
}

double contact_phase(Side side, const CycleParams& p) {
    return 0.5 * contact_duration(side, p) * contact_detuning(side, p);
}

Operator s1(const CycleParams& p, FockCutoff cold) {
    const auto& em = engine_matrices();
    const Operator a = annihilator(cold, FactorKind::cold);
    const Operator ad = a.adjoint();
    const auto [A, B, C] = contact_diagonals(Side::cold, p, cold);
    const Complex up = std::polar(1.0, contact_phase(Side::cold, p));

    return up * (kron(ad * (A - kI * C) * a, em.e1) + kI * kron(ad * B, em.e_plus)) +
           std::conj(up) * (kI * kron(B * a, em.e_minus) + kron(a * ad * (A + kI * C), em.e2)) +
           kron(vacuum_projector(cold, FactorKind::cold), em.e1) +
           kron(identity({FactorKind::cold, cold.dim()}), em.e3);
}

Operator s3(const CycleParams& p, FockCutoff warm) {
    const auto& em = engine_matrices();
    const Operator c = annihilator(warm, FactorKind::warm);
    const Operator cd = c.adjoint();
    const auto [Z, Y, V] = contact_diagonals(Side::warm, p, warm);
    const Complex up = std::polar(1.0, contact_phase(Side::warm, p));

    return kron(em.e1, identity({FactorKind::warm, warm.dim()})) +
           kron(em.e2, vacuum_projector(warm, FactorKind::warm)) +
           up * (kron(em.e2, cd * (Z - kI * V) * c) + kI * kron(em.f_plus, cd * Y)) +
           std::conj(up) * (kI * kron(em.f_minus, Y * c) + kron(em.e3, c * cd * (Z + kI * V)));
}

Operator s2a_strong_limit() {
    Eigen::Matrix3cd m;
    m << 1, 0, 0, 0, 0, -kI, 0, -kI, 0;
    return engine3(m);
}

Operator s2b_strong_limit() {
    Eigen::Matrix3cd m;
    m << 0, kI, 0, kI, 0, 0, 0, 0, 1;
    return engine3(m);
}

Operator s2_strong_limit() {
    Eigen::Matrix3cd m;
    m << 0, 0, 1, kI, 0, 0, 0, -kI, 0;
    return engine3(m);
}

Operator s2a(const CycleParams& p) {
    if (p.pulse_mode == PulseMode::strong_limit) return s2a_strong_limit();
    // [cos(tau delta) - i sin(tau delta) s3][cos(tau/T) + i T sin(tau/T)(delta s3 - eps s1)] on {e, f}
    const double tau = p.pulse_a_duration();
    const double period = p.pulse_a_period();
    const double c = std::cos(tau / period);
    const double ts = period * std::sin(tau / period);
    Eigen::Matrix2cd frame;
    frame << std::polar(1.0, -tau * p.delta), 0, 0, std::polar(1.0, tau * p.delta);
    Eigen::Matrix2cd rotation;
    rotation << c + kI * ts * p.delta, -kI * ts * p.eps_a, -kI * ts * p.eps_a, c - kI * ts * p.delta;
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = 1.0;
    m.block<2, 2>(1, 1) = frame * rotation;
    return engine3(m);
}

Operator s2b(const CycleParams& p) {
    if (p.pulse_mode == PulseMode::strong_limit) return s2b_strong_limit();
    // [cos(tau mu) - i sin(tau mu) s3][cos(tau/T) + i T sin(tau/T)(mu s3 + eps s1)] on {g, e}
    const double tau = p.pulse_b_duration();
    const double period = p.pulse_b_period();
    const double c = std::cos(tau / period);
    const double ts = period * std::sin(tau / period);
    Eigen::Matrix2cd frame;
    frame << std::polar(1.0, -tau * p.mu), 0, 0, std::polar(1.0, tau * p.mu);
    Eigen::Matrix2cd rotation;
    rotation << c + kI * ts * p.mu, kI * ts * p.eps_b, kI * ts * p.eps_b, c - kI * ts * p.mu;
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m.block<2, 2>(0, 0) = frame * rotation;
    m(2, 2) = 1.0;
    return engine3(m);
}

Operator s2(const CycleParams& p) { return s2b(p) * s2a(p); }

Operator s4(const CycleParams& p) { return s2(p).adjoint(); }

Operator s2a_quarter_period(const CycleParams& p) {
    const double t = p.pulse_a_period();
    const double tau = 0.5 * std::numbers::pi * t;
    const Complex lo = std::polar(1.0, -tau * p.delta);
    const Complex hi = std::polar(1.0, tau * p.delta);
    Eigen::Matrix3cd m;
    m << 1, 0, 0,
         0, kI * t * p.delta * lo, -kI * t * p.eps_a * lo,
         0, -kI * t * p.eps_a * hi, -kI * t * p.delta * hi;
    return engine3(m);
}

Operator s2b_quarter_period(const CycleParams& p) {
    const double t = p.pulse_b_period();
    const double tau = 0.5 * std::numbers::pi * t;
    const Complex lo = std::polar(1.0, -tau * p.mu);
    const Complex hi = std::polar(1.0, tau * p.mu);
    Eigen::Matrix3cd m;
    m << kI * t * p.mu * lo, kI * t * p.eps_b * lo, 0,
         kI * t * p.eps_b * hi, -kI * t * p.mu * hi, 0,
         0, 0, 1;
    return engine3(m);
}

Operator s2_quarter_period(const CycleParams& p) {
    const double ta = p.pulse_a_period();
    const double tb = p.pulse_b_period();
    const double tau_a = 0.5 * std::numbers::pi * ta;
    const double tau_b = 0.5 * std::numbers::pi * tb;
    const double d = p.delta, mu = p.mu, ea = p.eps_a, eb = p.eps_b;
    const auto ph = [](double x) { return std::polar(1.0, x); };
    Eigen::Matrix3cd m;
    m << kI * tb * mu * ph(-tau_b * mu), -ta * tb * eb * d * ph(-tau_a * d - tau_b * mu),
         ta * tb * ea * eb * ph(-tau_a * d - tau_b * mu),
         kI * tb * eb * ph(tau_b * mu), ta * tb * mu * d * ph(-tau_a * d + tau_b * mu),
         -ta * tb * mu * ea * ph(-tau_a * d + tau_b * mu),
         0, -kI * ta * ea * ph(tau_a * d), -kI * ta * d * ph(tau_a * d);
    return engine3(m);
}

Operator compose_cycle_product(const CycleParams& p, const ProductSpace& space) {
    return space.engine(s4(p)) * space.engine_warm(s3(p, space.warm_cutoff())) * space.engine(s2(p)) *
           space.cold_engine(s1(p, space.cold_cutoff()));
}

std::vector<Operator> compose_cycle_closed_form_terms(const CycleParams& p, const ProductSpace& space) {
    require_strong_limit(p, "the closed-form cycle S-matrix");
    const auto& em = engine_matrices();
    const FockCutoff cold = space.cold_cutoff();
    const FockCutoff warm = space.warm_cutoff();

    const Operator a = annihilator(cold, FactorKind::cold);
    const Operator ad = a.adjoint();
    const Operator c = annihilator(warm, FactorKind::warm);
    const Operator cd = c.adjoint();
    const auto [A, B, C] = contact_diagonals(Side::cold, p, cold);
    const auto [Z, Y, V] = contact_diagonals(Side::warm, p, warm);

    const Operator id_cold = identity({FactorKind::cold, cold.dim()});
    const Operator id_warm = identity({FactorKind::warm, warm.dim()});
    const Operator g1 = vacuum_projector(cold, FactorKind::cold);
    const Operator g3 = vacuum_projector(warm, FactorKind::warm);

    const Operator cold_keep = ad * (A - kI * C) * a;   // a+(A - iC)a
    const Operator cold_emit = ad * B;                  // a+B
    const Operator cold_absorb = B * a;                 // Ba
    const Operator cold_stay = a * ad * (A + kI * C);   // aa+(A + iC)
    const Operator warm_keep = cd * (Z - kI * V) * c;   // c+(Z - iV)c
    const Operator warm_emit = cd * Y;                  // c+Y
    const Operator warm_absorb = Y * c;                 // Yc
    const Operator warm_stay = c * cd * (Z + kI * V);   // cc+(Z + iV)

    const Complex p1 = std::polar(1.0, contact_phase(Side::cold, p));
    const Complex p3 = std::polar(1.0, contact_phase(Side::warm, p));

    std::vector<Operator> terms;
    terms.push_back(tensor3(id_cold, em.e3, id_warm));
    terms.push_back(tensor3(g1, em.e1, g3));
    terms.push_back(p1 * (tensor3(cold_keep, em.e1, g3) + kI * tensor3(cold_emit, em.e_plus, g3)));
    terms.push_back(p3 * tensor3(g1, em.e1, warm_keep));
    terms.push_back(-kI * std::conj(p3) * tensor3(g1, em.e_minus, warm_absorb));
    terms.push_back(p3 * p1 * (tensor3(cold_keep, em.e1, warm_keep) + kI * tensor3(cold_emit, em.e_plus, warm_keep)));
    terms.push_back(p3 * std::conj(p1) *
                    (tensor3(cold_absorb, em.e1, warm_emit) - kI * tensor3(cold_stay, em.e_plus, warm_emit)));
    terms.push_back(std::conj(p3) * p1 *
                    (-kI * tensor3(cold_keep, em.e_minus, warm_absorb) + tensor3(cold_emit, em.e2, warm_absorb)));
    terms.push_back(std::conj(p3) * std::conj(p1) *
                    (kI * tensor3(cold_absorb, em.e_minus, warm_stay) + tensor3(cold_stay, em.e2, warm_stay)));
    return terms;
}

Operator compose_cycle_closed_form(const CycleParams& p, const ProductSpace& space) {
    auto terms = compose_cycle_closed_form_terms(p, space);
    Operator sum = std::move(terms.front());
    for (std::size_t i = 1; i < terms.size(); ++i) sum += terms[i];
    return sum;
}

ComposedCycle compose_cycle(const CycleParams& p, int quanta_bound, double tolerance) {
    p.validate();
    const ProductSpace space = ProductSpace::for_quanta_bound(quanta_bound);
    Operator product = compose_cycle_product(p, space);
    if (p.pulse_mode == PulseMode::finite) return {std::move(product), std::nullopt};

    const double deviation = spectral_norm(product.matrix() - compose_cycle_closed_form(p, space).matrix());
    if (!(deviation <= tolerance)) throw ConsistencyError("composed S: product vs closed form", deviation, tolerance);
    return {std::move(product), deviation};
}

Operator s_eff(const CycleParams& p, FockCutoff cold) {
    const Operator a = annihilator(cold, FactorKind::cold);
    const Operator ad = a.adjoint();
    const auto [A, B, C] = contact_diagonals(Side::cold, p, cold);
    return kron(vacuum_projector(cold, FactorKind::cold) + ad * (A - kI * C) * a, doublet_unit(0, 0)) +
           kI * kron(ad * B, doublet_unit(0, 1)) + kI * kron(B * a, doublet_unit(1, 0)) +
           kron(a * ad * (A + kI * C), doublet_unit(1, 1));
}

Operator embed_doublet(const Operator& op, const ProductSpace& space) {
    const Index dc = space.cold_cutoff().dim();
    const std::vector<Factor> expected{{FactorKind::cold, dc}, {FactorKind::doublet, 2}};
    if (!op.acts_on(expected)) throw std::invalid_argument("embed_doublet expects " + to_string(expected));

    const Index dw = space.warm_cutoff().dim();
    Matrix full = Matrix::Zero(space.dim(), space.dim());
    for (Index m = 0; m < dc; ++m) {
        for (Index k = 0; k < dw; ++k) {
            const Index f = (m * kEngineDim + 2) * dw + k;
            full(f, f) = 1.0;
        }
        for (Index l = 0; l < 2; ++l)
            for (Index m2 = 0; m2 < dc; ++m2)
                for (Index l2 = 0; l2 < 2; ++l2) {
                    const Complex x = op.matrix()(m * 2 + l, m2 * 2 + l2);
                    if (x == Complex{}) continue;
                    for (Index k = 0; k < dw; ++k)
                        full((m * kEngineDim + l) * dw + k, (m2 * kEngineDim + l2) * dw + k) = x;
                }
    }
    return Operator(std::move(full), space.signature());
}

std::vector<IdentityCheck> diagonal_identities(const CycleParams& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("diagonal_identities: n_max must be nonnegative");
    const FockCutoff big(n_max + 1);
    const Index keep = n_max + 1;
    auto block_dev = [&](const Operator& lhs, const Matrix& rhs) {
        return spectral_norm(lhs.matrix().topLeftCorner(keep, keep) - rhs);
    };
    const Matrix id = Matrix::Identity(keep, keep);

    const Operator a = annihilator(big, FactorKind::cold);
    const Operator ad = a.adjoint();
    const auto [A, B, C] = contact_diagonals(Side::cold, p, big);
    const Operator aad = a * ad;
    const Operator AC = A * A + C * C;

    const Operator c = annihilator(big, FactorKind::warm);
    const Operator cd = c.adjoint();
    const auto [Z, Y, V] = contact_diagonals(Side::warm, p, big);
    const Operator X = c * cd * (Z * Z + V * V) + Y * Y;
    Eigen::VectorXcd inverse(keep);
    for (Index n = 0; n < keep; ++n) inverse(n) = 1.0 / static_cast<double>(n + 1);

    return {
        {"aa+B^2 + (aa+)^2(A^2+C^2) = I", block_dev(aad * B * B + aad * aad * AC, id)},
        {"G1 + a+B^2a + a+aa+(A^2+C^2)a = I",
         block_dev(vacuum_projector(big, FactorKind::cold) + ad * B * B * a + ad * aad * AC * a, id)},
        {"cc+(Z^2+V^2) + Y^2 = sum 1/(n+1)|n><n|", block_dev(X, inverse.asDiagonal().toDenseMatrix())},
        {"cc+X = I", block_dev(c * cd * X, id)},
        {"G3 + c+Xc = I", block_dev(vacuum_projector(big, FactorKind::warm) + cd * X * c, id)},
    };
}

}  // namespace jcengine
