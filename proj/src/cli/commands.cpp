#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "jcengine/cli.hpp"
#include "jcengine/cycle_simulator.hpp"
#include "jcengine/energy_accounting.hpp"
#include "jcengine/errors.hpp"
#include "jcengine/evolution_oracle.hpp"
#include "jcengine/pulse_smatrix.hpp"
#include "jcengine/sectors.hpp"

namespace jcengine::cli {

namespace {

std::vector<std::pair<std::string, std::string>> metadata(const RunConfig& c) {
    const CycleParams& p = c.params;
    std::vector<std::pair<std::string, std::string>> m{
        {"units", "hbar = 1; energies and frequencies share one unit, durations its inverse"},
        {"omega1", format_number(p.omega1)},
        {"omega3", format_number(p.omega3)},
        {"mu", format_number(p.mu)},
        {"delta", format_number(p.delta)},
        {"kappa12", format_number(p.kappa12)},
        {"kappa23", format_number(p.kappa23)},
        {"tau1", format_number(p.tau1)},
        {"tau3", format_number(p.tau3)},
        {"eps_a", format_number(p.eps_a)},
        {"eps_b", format_number(p.eps_b)},
        {"tau_a", format_number(p.pulse_a_duration())},
        {"tau_b", format_number(p.pulse_b_duration())},
        {"pulse_mode", to_string(p.pulse_mode)},
        {"quanta_bound", std::to_string(c.quanta_bound)},
        {"seed", std::to_string(c.seed)},
        {"tol_operator", format_number(c.tolerances.operator_check)},
        {"tol_drift", format_number(c.tolerances.drift)},
    };
    return m;
}

// Sorted eigenphases of one sector block, -0 folded to 0.
std::vector<double> sector_phases(const SectorPropagator& prop, int n) {
    const auto& ev = prop.eigenvalues(n);
    std::vector<double> out;
    for (Index i = 0; i < ev.size(); ++i) out.push_back(std::arg(ev(i)) + 0.0);
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_number(xs[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Verification suite

struct Check {
    std::string name;
    double deviation;
    double tolerance;
    std::string status;  // pass | fail | skip | error
};

class Suite {
public:
    void add(const std::string& name, double tolerance, const std::function<double()>& measure) {
        double dev = NAN;
        std::string status;
        try {
            dev = measure();
            status = dev <= tolerance ? "pass" : "fail";
        } catch (const std::exception& e) {
            status = "error";
            errors_.push_back(name + ": " + e.what());
        }
        checks_.push_back({name, dev, tolerance, status});
    }
    void skip(const std::string& name, double tolerance) { checks_.push_back({name, NAN, tolerance, "skip"}); }

    const std::vector<Check>& checks() const { return checks_; }
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<Check> checks_;
    std::vector<std::string> errors_;
};

// Largest gap between the sorted 2x2 block eigenvalues of D and the closed-form pair.
double d_spectrum_gap(const Operator& d, const CycleParams& p, const ProductSpace& space, int bound) {
    double worst = 0.0;
    for (int n = 0; n + 1 <= bound; ++n) {
        const Index i = space.index({n + 1, EngineLevel::g, 0});
        const Index j = space.index({n, EngineLevel::e, 0});
        Eigen::Matrix2cd block;
        block << d.matrix()(i, i), d.matrix()(i, j), d.matrix()(j, i), d.matrix()(j, j);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block, Eigen::EigenvaluesOnly);
        const auto entry = transfer_spectrum(n, p);
        const double lo = std::min(entry.rho_plus, entry.rho_minus);
        const double hi = std::max(entry.rho_plus, entry.rho_minus);
        worst = std::max({worst, std::abs(solver.eigenvalues()(0) - lo), std::abs(solver.eigenvalues()(1) - hi)});
    }
    return worst;
}

double pulse_work_gap(const Operator& work, const CycleParams& p, const ProductSpace& space, int bound) {
    double worst = 0.0;
    for (int n = 0; n + 1 <= bound; ++n) {
        const Index i = space.index({0, EngineLevel::g, n + 1});
        const Index j = space.index({0, EngineLevel::e, n});
        Eigen::Matrix2cd block;
        block << work.matrix()(i, i), work.matrix()(i, j), work.matrix()(j, i), work.matrix()(j, j);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block, Eigen::EigenvaluesOnly);
        const auto pair = pulse_work_spectrum(n, p);
        const double a = pair.scale * pair.plus;
        const double b = pair.scale * pair.minus;
        worst = std::max({worst, std::abs(solver.eigenvalues()(0) - std::min(a, b)),
                          std::abs(solver.eigenvalues()(1) - std::max(a, b))});
    }
    return worst;
}

std::vector<Check> run_suite(const RunConfig& c, std::vector<std::string>& errors) {
    const CycleParams& p = c.params;
    const int bound = c.quanta_bound;
    const double tol = c.tolerances.operator_check;
    const ProductSpace space = ProductSpace::for_quanta_bound(bound);
    const RetainedSpace retained(space, bound);
    auto on_retained = [&](const Operator& x, const Operator& y) { return spectral_norm(retained.compress(x - y)); };

    CycleParams finite = p;
    finite.pulse_mode = PulseMode::finite;

    Suite s;
    s.add("S1 vs exact evolution", tol, [&] {
        return on_retained(space.cold_engine(s1(p, space.cold_cutoff())),
                           oracle_smatrix(PhaseSpec::of(Phase::cold_contact, p), p, space));
    });
    s.add("S3 vs exact evolution", tol, [&] {
        return on_retained(space.engine_warm(s3(p, space.warm_cutoff())),
                           oracle_smatrix(PhaseSpec::of(Phase::warm_contact, p), p, space));
    });
    s.add("S2a (finite) vs exact evolution", tol, [&] {
        return spectral_norm(s2a(finite).matrix() -
                             oracle_smatrix(PhaseSpec::of(Phase::pulse_a, finite), finite, ProductSpace(FockCutoff(0), FockCutoff(0))).matrix());
    });
    s.add("S2b (finite) vs exact evolution", tol, [&] {
        return spectral_norm(s2b(finite).matrix() -
                             oracle_smatrix(PhaseSpec::of(Phase::pulse_b, finite), finite, ProductSpace(FockCutoff(0), FockCutoff(0))).matrix());
    });
    if (!p.tau_a && !p.tau_b) {
        s.add("S2a vs quarter-period matrix", tol, [&] { return spectral_norm(s2a(finite).matrix() - s2a_quarter_period(finite).matrix()); });
        s.add("S2b vs quarter-period matrix", tol, [&] { return spectral_norm(s2b(finite).matrix() - s2b_quarter_period(finite).matrix()); });
        s.add("S2 vs quarter-period matrix", tol, [&] { return spectral_norm(s2(finite).matrix() - s2_quarter_period(finite).matrix()); });
    } else {
        for (const char* name : {"S2a vs quarter-period matrix", "S2b vs quarter-period matrix", "S2 vs quarter-period matrix"})
            s.skip(name, tol);
    }
    s.add("S1 unitary on retained span", tol,
          [&] { return unitarity_defect(retained.compress(space.cold_engine(s1(p, space.cold_cutoff())))); });
    s.add("S3 unitary on retained span", tol,
          [&] { return unitarity_defect(retained.compress(space.engine_warm(s3(p, space.warm_cutoff())))); });

    for (const auto& id : diagonal_identities(p, std::max(bound, 1)))
        s.add("identity " + id.name, tol, [&] { return id.deviation; });

    const bool strong = p.pulse_mode == PulseMode::strong_limit;
    const char* strong_only[] = {"composed S: product vs closed form",
                                 "S|0,g,0> = |0,g,0>",
                                 "f states fixed by S",
                                 "sector leakage",
                                 "sector blocks unitary",
                                 "D: conjugation vs closed form",
                                 "D spectrum vs closed form",
                                 "D|0,g> = 0",
                                 "S_eff+ a+a S_eff = D + a+a",
                                 "S_eff+ a+a S_eff = S+ a+a S",
                                 "work phase 1: definition vs closed form",
                                 "work phase 2: definition vs closed form",
                                 "work phase 3: definition vs closed form",
                                 "work phase 4: definition vs closed form",
                                 "dE2 + dE4 spectrum vs closed form",
                                 "energy ledger sums to total change",
                                 "energy-flow directions (mismatches)",
                                 "trajectory norm drift",
                                 "trajectory quanta drift"};
    if (!strong) {
        for (const char* name : strong_only) s.skip(name, tol);
        errors = s.errors();
        return s.checks();
    }

    const Operator S = compose_cycle_product(p, space);
    s.add(strong_only[0], tol, [&] {
        auto terms = compose_cycle_closed_form_terms(p, space);
        if (c.fault == "closed_form") terms.pop_back();
        Operator sum = terms.front();
        for (std::size_t i = 1; i < terms.size(); ++i) sum += terms[i];
        return spectral_norm(S.matrix() - sum.matrix());
    });
    s.add(strong_only[1], tol, [&] {
        const Vector g = space.basis_vector({0, EngineLevel::g, 0});
        return (S.apply(g) - g).norm();
    });
    s.add(strong_only[2], tol, [&] {
        double worst = 0.0;
        for (Index i = 0; i < space.dim(); ++i) {
            if (space.label(i).level != EngineLevel::f) continue;
            Vector col = S.matrix().col(i);
            col(i) -= 1.0;
            worst = std::max(worst, col.norm());
        }
        return worst;
    });
    s.add(strong_only[3], tol, [&] {
        double worst = 0.0;
        for (int n = 0; n <= bound; ++n) worst = std::max(worst, sector_leakage(S, sector_basis(n)));
        return worst;
    });
    s.add(strong_only[4], tol, [&] {
        double worst = 0.0;
        for (int n = 0; n <= bound; ++n) worst = std::max(worst, unitarity_defect(project(S, sector_basis(n))));
        return worst;
    });

    const Operator d_conj = transfer_operator_by_conjugation(p, space);
    const Operator d_closed = space.cold_engine(transfer_operator_closed_form(p, space.cold_cutoff()));
    s.add(strong_only[5], tol, [&] { return on_retained(d_conj, d_closed); });
    s.add(strong_only[6], tol, [&] { return d_spectrum_gap(d_conj, p, space, bound); });
    s.add(strong_only[7], tol, [&] { return d_conj.apply(space.basis_vector({0, EngineLevel::g, 0})).norm(); });

    const Operator n_cold = space.cold(number_operator(space.cold_cutoff(), FactorKind::cold));
    const Operator seff = embed_doublet(s_eff(p, space.cold_cutoff()), space);
    const Operator seff_n = seff.adjoint() * n_cold * seff;
    s.add(strong_only[8], tol, [&] { return on_retained(seff_n, d_closed + n_cold); });
    s.add(strong_only[9], tol, [&] { return on_retained(seff_n, S.adjoint() * n_cold * S); });

    const WorkOperators def = work_operators_by_definition(p, space);
    const WorkOperators closed = work_operators_closed_form(p, space);
    s.add(strong_only[10], tol, [&] { return on_retained(def.phase1, closed.phase1); });
    s.add(strong_only[11], tol, [&] { return on_retained(def.phase2, closed.phase2); });
    s.add(strong_only[12], tol, [&] { return on_retained(def.phase3, closed.phase3); });
    s.add(strong_only[13], tol, [&] { return on_retained(def.phase4, closed.phase4); });
    s.add(strong_only[14], tol, [&] { return pulse_work_gap(def.phase2 + def.phase4, p, space, bound); });
    s.add(strong_only[15], tol, [&] {
        const Vector psi = make_initial_state(RandomSpec{c.seed}, p, space, bound);
        const EnergyLedger ledger = energy_ledger(psi, p, space, def);
        double sum = 0.0;
        for (double x : ledger.phases) sum += x;
        return std::abs(sum - ledger.total_change);
    });
    s.add(strong_only[16], 0.0, [&] {
        const auto computed = classify_flows(p, std::max(bound, 1));
        const auto& reference = flow_table_reference();
        double mismatches = 0;
        for (std::size_t i = 0; i < reference.size(); ++i) mismatches += computed[i] == reference[i] ? 0 : 1;
        return mismatches;
    });

    const double drift_tol = c.tolerances.drift;
    std::vector<CycleRecord> trajectory;
    auto trajectory_drift = [&](auto field) {
        if (trajectory.empty()) {
            SimulationConfig sim{p, bound, 200, RandomSpec{c.seed}, CycleOrder::cold_first};
            trajectory = run(sim);
        }
        double worst = 0.0;
        for (const auto& r : trajectory) worst = std::max(worst, std::abs(field(r) - field(trajectory.front())));
        return worst;
    };
    s.add(strong_only[17], drift_tol, [&] { return trajectory_drift([](const CycleRecord& r) { return r.norm; }); });
    s.add(strong_only[18], drift_tol, [&] { return trajectory_drift([](const CycleRecord& r) { return r.total_quanta; }); });

    errors = s.errors();
    return s.checks();
}

}  // namespace

CommandResult cmd_verify(const RunConfig& config) {
    config.validate();
    std::vector<std::string> errors;
    const auto checks = run_suite(config, errors);

    CommandResult result;
    result.table.command = "verify";
    result.table.metadata = metadata(config);
    result.table.columns = {{"check", "-"}, {"deviation", "-"}, {"tolerance", "-"}, {"status", "-"}};
    for (const auto& c : checks) {
        result.table.rows.push_back({c.name, c.deviation, c.tolerance, c.status});
        if ((c.status == "fail" || c.status == "error") && result.message.empty()) {
            result.exit_code = kExitCheckFailed;
            result.message = "check failed: " + c.name;
            if (c.status == "fail") result.message += " (deviation " + format_number(c.deviation) + ", tolerance " + format_number(c.tolerance) + ")";
        }
    }
    for (const auto& e : errors) result.message += "\n" + e;
    return result;
}

CommandResult cmd_spectrum(const RunConfig& config) {
    config.validate();
    const CycleParams& p = config.params;
    const int bound = config.quanta_bound;

    std::optional<SectorPropagator> prop;
    if (p.pulse_mode == PulseMode::strong_limit) {
        const ProductSpace space = ProductSpace::for_quanta_bound(bound);
        prop.emplace(cycle_smatrix(p, space, CycleOrder::cold_first), bound, config.tolerances.operator_check);
    }

    CommandResult result;
    result.table.command = "spectrum";
    result.table.metadata = metadata(config);
    result.table.columns = {{"n", "quanta"},          {"lambda", "energy"},     {"theta", "rad"},
                            {"xi", "energy"},         {"phi", "rad"},           {"rho_plus", "quanta"},
                            {"rho_minus", "quanta"},  {"work_plus", "energy"},  {"work_minus", "energy"},
                            {"sector_eigenphases", "rad"}};
    for (int n = 0; n <= bound; ++n) {
        const auto cold = dressed_coefficients(Side::cold, n, p);
        const auto warm = dressed_coefficients(Side::warm, n, p);
        const auto rho = transfer_spectrum(n, p);
        const auto work = pulse_work_spectrum(n, p);
        result.table.rows.push_back({static_cast<double>(n), cold.splitting, cold.angle, warm.splitting, warm.angle,
                                     rho.rho_plus, rho.rho_minus, work.scale * work.plus, work.scale * work.minus,
                                     prop ? join(sector_phases(*prop, n)) : std::string()});
    }
    return result;
}

CommandResult cmd_simulate(const RunConfig& config) {
    config.validate();
    if (config.params.pulse_mode != PulseMode::strong_limit)
        throw ConfigError("simulate needs pulse_mode = strong_limit; finite pulses do not conserve the quanta number");

    SimulationConfig sim;
    sim.params = config.params;
    sim.quanta_bound = config.quanta_bound;
    sim.cycles = config.cycles;
    sim.initial = parse_initial_state(resolved_initial(config));
    const auto records = run(sim);

    CommandResult result;
    result.table.command = "simulate";
    result.table.metadata = metadata(config);
    result.table.metadata.emplace_back("cycles", std::to_string(config.cycles));
    result.table.metadata.emplace_back("initial", to_string(sim.initial));
    result.table.metadata.emplace_back("entropy", "von Neumann, natural log");
    result.table.columns = {{"cycle", "-"},           {"cold_energy", "energy"},   {"warm_energy", "energy"},
                            {"p_g", "probability"},    {"p_e", "probability"},      {"p_f", "probability"},
                            {"total_quanta", "quanta"}, {"entropy_cold", "nat"},     {"entropy_engine", "nat"},
                            {"entropy_warm", "nat"},   {"return_amplitude_re", "-"}, {"return_amplitude_im", "-"},
                            {"norm", "-"}};
    for (const auto& r : records) {
        result.table.rows.push_back({static_cast<double>(r.cycle), r.cold_energy, r.warm_energy, r.p_g, r.p_e, r.p_f,
                                     r.total_quanta, r.entropy_cold, r.entropy_engine, r.entropy_warm,
                                     r.return_amplitude.real(), r.return_amplitude.imag(), r.norm});
    }
    return result;
}

CommandResult cmd_table1(const RunConfig& config) {
    config.validate();
    if (config.params.pulse_mode != PulseMode::strong_limit)
        throw ConfigError("table1 needs pulse_mode = strong_limit; the monomials come from the strong-limit S");

    const auto computed = classify_flows(config.params, std::max(config.quanta_bound, 1));
    const auto& reference = flow_table_reference();

    CommandResult result;
    result.table.command = "table1";
    result.table.metadata = metadata(config);
    result.table.columns = {{"row", "-"},  {"term", "-"},           {"cold", "flow"},       {"warm", "flow"},
                            {"reference_cold", "flow"}, {"reference_warm", "flow"}, {"match", "-"}};
    for (std::size_t i = 0; i < computed.size(); ++i) {
        const bool ok = computed[i] == reference[i];
        result.table.rows.push_back({static_cast<double>(i + 1), computed[i].term, computed[i].cold_arrow(),
                                     computed[i].warm_arrow(), reference[i].cold_arrow(), reference[i].warm_arrow(),
                                     std::string(ok ? "yes" : "no")});
        if (!ok && result.message.empty()) {
            result.exit_code = kExitCheckFailed;
            result.message = "flow mismatch in row " + std::to_string(i + 1) + ": " + computed[i].term;
        }
    }
    return result;
}

}  // namespace jcengine::cli
