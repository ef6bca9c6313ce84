#include "jcengine/cycle_simulator.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jcengine/errors.hpp"
#include "jcengine/sectors.hpp"

namespace jcengine {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double parse_double(std::string_view s, const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "' in " + context);
    return value;
}

int parse_int(std::string_view s, const std::string& context) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "' in " + context);
    return value;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

// 0.5, -2, 0.3+0.4i, 1e-3-2i, i, -i
Complex parse_complex(std::string s, const std::string& context) {
    if (s.empty()) throw std::invalid_argument("empty amplitude in " + context);
    if (s.back() != 'i') return parse_double(s, context);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (!im.empty() && im.front() == '+') im.erase(0, 1);
    const double im_value = im.empty() ? 1.0 : im == "-" ? -1.0 : parse_double(im, context);
    return {re.empty() ? 0.0 : parse_double(re, context), im_value};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

BasisLabel parse_label(const std::string& s, const std::string& context) {
    const auto parts = split(s, ',');
    if (parts.size() != 3 || parts[1].size() != 1) throw std::invalid_argument("expected m,level,k in " + context);
    BasisLabel label{parse_int(parts[0], context), EngineLevel::g, parse_int(parts[2], context)};
    try {
        label.level = parse_level(parts[1][0]);
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown engine level '" + parts[1] + "' in " + context);
    }
    if (label.cold < 0 || label.warm < 0) throw std::invalid_argument("negative occupation in " + context);
    return label;
}

std::string label_text(const BasisLabel& l) {
    return std::to_string(l.cold) + "," + level_symbol(l.level) + "," + std::to_string(l.warm);
}

std::string complex_text(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag());
    if (im.front() != '-') im.insert(0, "+");
    return format_double(z.real()) + im + "i";
}

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};

}  // namespace

InitialState parse_initial_state(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("initial state '" + text + "' needs a kind prefix");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    if (kind == "product") return ProductSpec{parse_label(body, text)};
    if (kind == "superposition") {
        SuperpositionSpec spec;
        for (const auto& term : split(body, ';')) {
            const auto at = term.find('@');
            if (at == std::string::npos) throw std::invalid_argument("superposition term '" + term + "' needs amplitude@m,level,k");
            spec.terms.emplace_back(parse_complex(term.substr(0, at), text), parse_label(term.substr(at + 1), text));
        }
        if (spec.terms.empty()) throw std::invalid_argument("empty superposition");
        return spec;
    }
    if (kind == "transfer") {
        const auto parts = split(body, ',');
        if (parts.size() != 3 || (parts[1] != "+" && parts[1] != "-"))
            throw std::invalid_argument("expected transfer:n,+|-,k in '" + text + "'");
        const TransferEigenSpec spec{parse_int(parts[0], text), parts[1] == "+" ? 1 : -1, parse_int(parts[2], text)};
        if (spec.n < 0 || spec.warm < 0) throw std::invalid_argument("negative index in '" + text + "'");
        return spec;
    }
    if (kind == "random") {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), seed);
        if (ec != std::errc() || ptr != body.data() + body.size()) throw std::invalid_argument("bad seed in '" + text + "'");
        return RandomSpec{seed};
    }
    throw std::invalid_argument("unknown initial state kind '" + kind + "'");
}

std::string to_string(const InitialState& spec) {
    return std::visit(overloaded{
                          [](const ProductSpec& s) { return "product:" + label_text(s.label); },
                          [](const SuperpositionSpec& s) {
                              std::string out = "superposition:";
                              for (std::size_t i = 0; i < s.terms.size(); ++i) {
                                  if (i) out += ";";
                                  out += complex_text(s.terms[i].first) + "@" + label_text(s.terms[i].second);
                              }
                              return out;
                          },
                          [](const TransferEigenSpec& s) {
                              return "transfer:" + std::to_string(s.n) + "," + (s.sign > 0 ? "+" : "-") + "," +
                                     std::to_string(s.warm);
                          },
                          [](const RandomSpec& s) { return "random:" + std::to_string(s.seed); },
                      },
                      spec);
}

int required_quanta(const InitialState& spec) {
    return std::visit(overloaded{
                          [](const ProductSpec& s) { return quanta(s.label); },
                          [](const SuperpositionSpec& s) {
                              int q = 0;
                              for (const auto& [amp, label] : s.terms) q = std::max(q, quanta(label));
                              return q;
                          },
                          [](const TransferEigenSpec& s) { return s.n + 1 + s.warm; },
                          [](const RandomSpec&) { return 0; },
                      },
                      spec);
}

Vector make_initial_state(const InitialState& spec, const CycleParams& p, const ProductSpace& space, int quanta_bound) {
    const int need = required_quanta(spec);
    if (need > quanta_bound)
        throw std::invalid_argument("initial state " + to_string(spec) + " needs " + std::to_string(need) +
                                    " quanta, above the bound " + std::to_string(quanta_bound));

    Vector psi = Vector::Zero(space.dim());
    std::visit(overloaded{
                   [&](const ProductSpec& s) { psi = space.basis_vector(s.label); },
                   [&](const SuperpositionSpec& s) {
                       for (const auto& [amp, label] : s.terms) psi += amp * space.basis_vector(label);
                   },
                   [&](const TransferEigenSpec& s) {
                       const Eigen::Vector2cd v = transfer_spectrum(s.n, p).eigenvector(s.sign);
                       psi = v(0) * space.basis_vector({s.n + 1, EngineLevel::g, s.warm}) +
                             v(1) * space.basis_vector({s.n, EngineLevel::e, s.warm});
                   },
                   [&](const RandomSpec& s) {
                       std::mt19937_64 rng(s.seed);
                       std::uniform_real_distribution<double> uniform(-1.0, 1.0);
                       for (Index i = 0; i < space.dim(); ++i) {
                           const double re = uniform(rng);
                           const double im = uniform(rng);
                           if (quanta(space.label(i)) <= quanta_bound) psi(i) = Complex(re, im);
                       }
                   },
               },
               spec);
    const double norm = psi.norm();
    if (!(norm > 1e-12)) throw std::invalid_argument("initial state " + to_string(spec) + " is not normalizable");
    return psi / norm;
}

Vector step_cycle(const Vector& state, const Operator& s) { return s.apply(state); }

Matrix reduced_density_cold(const Vector& state, const ProductSpace& space) {
    const Index dc = space.cold_cutoff().dim();
    const Eigen::Map<const RowMajor> t(state.data(), dc, state.size() / dc);
    return t * t.adjoint();
}

Matrix reduced_density_warm(const Vector& state, const ProductSpace& space) {
    const Index dw = space.warm_cutoff().dim();
    const Eigen::Map<const RowMajor> t(state.data(), state.size() / dw, dw);
    return (t.adjoint() * t).transpose();
}

Matrix reduced_density_engine(const Vector& state, const ProductSpace& space) {
    const Index dc = space.cold_cutoff().dim();
    const Index dw = space.warm_cutoff().dim();
    Matrix rho = Matrix::Zero(kEngineDim, kEngineDim);
    for (Index m = 0; m < dc; ++m)
        for (Index k = 0; k < dw; ++k)
            for (Index i = 0; i < kEngineDim; ++i)
                for (Index j = 0; j < kEngineDim; ++j)
                    rho(i, j) += state((m * kEngineDim + i) * dw + k) * std::conj(state((m * kEngineDim + j) * dw + k));
    return rho;
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    // Eigenvalues within 1e-12 of 0 or 1 contribute nothing; this keeps
    // pure reductions at exactly zero entropy.
    double s = 0.0;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double x = solver.eigenvalues()(i);
        if (x > 1e-12 && x < 1.0 - 1e-12) s -= x * std::log(x);
    }
    return std::max(0.0, s);
}

CycleRecord observe(const Vector& state, const Vector& initial, const CycleParams& p, const ProductSpace& space, long long cycle) {
    const Index dc = space.cold_cutoff().dim();
    const Index dw = space.warm_cutoff().dim();
    double n_cold = 0, n_warm = 0, n_total = 0;
    double pop[kEngineDim] = {0, 0, 0};
    for (Index m = 0; m < dc; ++m) {
        for (Index l = 0; l < kEngineDim; ++l) {
            for (Index k = 0; k < dw; ++k) {
                const double w = std::norm(state((m * kEngineDim + l) * dw + k));
                n_cold += w * m;
                n_warm += w * k;
                n_total += w * (m + l + k);
                pop[l] += w;
            }
        }
    }
    return {cycle,
            p.omega1 * n_cold,
            p.omega3 * n_warm,
            pop[0],
            pop[1],
            pop[2],
            n_total,
            von_neumann_entropy(reduced_density_cold(state, space)),
            von_neumann_entropy(reduced_density_engine(state, space)),
            von_neumann_entropy(reduced_density_warm(state, space)),
            initial.dot(state),
            state.norm()};
}

SectorPropagator::SectorPropagator(const Operator& s, int quanta_bound, double tolerance)
    : space_(ProductSpace::for_quanta_bound(quanta_bound)), bound_(quanta_bound) {
    if (quanta_bound < 0) throw std::invalid_argument("SectorPropagator: quanta bound must be nonnegative");
    if (!s.acts_on(space_.signature()))
        throw std::invalid_argument("SectorPropagator: S acts on " + to_string(s.signature()) + ", expected " +
                                    to_string(space_.signature()));

    for (int n = 0; n <= bound_; ++n) {
        const SectorBasis basis = sector_basis(n);
        const Matrix block = project(s, basis, tolerance);
        Eigen::ComplexSchur<Matrix> schur(block);
        if (schur.info() != Eigen::Success) throw std::runtime_error("Schur decomposition failed in sector " + std::to_string(n));
        const Matrix& t = schur.matrixT();
        const double off = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm();
        if (!(off <= tolerance)) throw InvarianceError("sector " + std::to_string(n) + " block is not normal (off-diagonal " + std::to_string(off) + ")");

        Block b{sector_indices(basis, space_), schur.matrixU(), t.diagonal(), Eigen::VectorXd(t.rows())};
        for (Index i = 0; i < b.phases.size(); ++i) {
            b.angles(i) = std::arg(b.phases(i));
            b.phases(i) = std::polar(1.0, b.angles(i));
        }
        sectors_.push_back(std::move(b));
    }

    const Matrix& m = s.matrix();
    for (Index i = 0; i < space_.dim(); ++i) {
        const BasisLabel l = space_.label(i);
        if (l.level != EngineLevel::f || quanta(l) > bound_) continue;
        Vector col = m.col(i);
        col(i) -= 1.0;
        if (!(col.norm() <= tolerance)) throw InvarianceError("S does not fix " + to_string(l));
        fixed_.push_back(i);
    }
}

Vector SectorPropagator::evolve(const Vector& psi, long long k) const {
    if (psi.size() != space_.dim()) throw std::invalid_argument("evolve: state dimension mismatch");
    double outside = psi.squaredNorm();
    Vector out = Vector::Zero(space_.dim());
    for (const Block& b : sectors_) {
        Vector x(b.indices.size());
        for (std::size_t i = 0; i < b.indices.size(); ++i) x(i) = psi(b.indices[i]);
        outside -= x.squaredNorm();
        Vector c = b.vectors.adjoint() * x;
        for (Index j = 0; j < c.size(); ++j) c(j) *= std::polar(1.0, static_cast<double>(k) * b.angles(j));
        const Vector y = b.vectors * c;
        for (std::size_t i = 0; i < b.indices.size(); ++i) out(b.indices[i]) = y(i);
    }
    for (Index i : fixed_) {
        out(i) = psi(i);
        outside -= std::norm(psi(i));
    }
    if (outside > 1e-12 * std::max(1.0, psi.squaredNorm()))
        throw std::invalid_argument("evolve: state has weight above the quanta bound");
    return out;
}

std::vector<CycleRecord> run(const SimulationConfig& config) {
    const CycleParams& p = config.params;
    p.validate();
    if (p.pulse_mode != PulseMode::strong_limit)
        throw std::invalid_argument("run: finite pulses do not conserve the quanta number; use the strong-pulse limit");
    if (config.cycles < 0) throw std::invalid_argument("run: cycle count must be nonnegative");
    if (config.quanta_bound < 0) throw std::invalid_argument("run: quanta bound must be nonnegative");

    const ProductSpace space = ProductSpace::for_quanta_bound(config.quanta_bound);
    const SectorPropagator propagator(cycle_smatrix(p, space, config.order), config.quanta_bound);
    const Vector psi0 = make_initial_state(config.initial, p, space, config.quanta_bound);

    std::vector<CycleRecord> records;
    records.reserve(static_cast<std::size_t>(config.cycles) + 1);
    for (long long k = 0; k <= config.cycles; ++k) {
        const Vector psi = k == 0 ? psi0 : propagator.evolve(psi0, k);
        records.push_back(observe(psi, psi0, p, space, k));
    }
    return records;
}

}  // namespace jcengine
