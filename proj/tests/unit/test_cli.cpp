#include <cmath>
#include <sstream>

#include <doctest.h>

#include "jcengine/cli.hpp"

using namespace jcengine;
using namespace jcengine::cli;

namespace {

double number(const Cell& c) { return std::get<double>(c); }

std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i].name == name) return i;
    FAIL("no column " << name);
    return 0;
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config(R"(
# comment
omega1 = 1.25
eps-a = 40   # trailing comment
quanta_bound = 6
initial = transfer:1,-,0
pulse_mode = finite
tau_a = 0.1
format = json
tol_operator = 1e-8
)");
    CHECK(c.params.omega1 == 1.25);
    CHECK(c.params.eps_a == 40.0);
    CHECK(c.quanta_bound == 6);
    CHECK(c.initial == "transfer:1,-,0");
    CHECK(c.params.pulse_mode == PulseMode::finite);
    CHECK(c.params.tau_a == 0.1);
    CHECK(c.format == OutputFormat::json);
    CHECK(c.tolerances.operator_check == 1e-8);
    CHECK(c.params.omega3 == RunConfig{}.params.omega3);

    RunConfig base;
    base.cycles = 99;
    CHECK(parse_config("mu = 1", base).cycles == 99);

    CHECK_THROWS_AS(parse_config("nonsense = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("omega1 = abc"), ConfigError);
    CHECK_THROWS_AS(parse_config("omega1 = 1.0x"), ConfigError);
    CHECK_THROWS_AS(parse_config("omega1"), ConfigError);
    CHECK_THROWS_AS(parse_config("quanta_bound = -1").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("tau1 = -2").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("format = xml"), ConfigError);
    CHECK_THROWS_AS(parse_config("initial = product:9,q,0").validate(), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/jcengine.cfg"), IoError);

    RunConfig seeded;
    seeded.initial = "random";
    seeded.seed = 17;
    CHECK(resolved_initial(seeded) == "random:17");
}

TEST_CASE("table round trips") {
    Table t;
    t.command = "demo";
    t.metadata = {{"omega1", "2"}, {"note", "x y"}};
    t.columns = {{"n", "-"}, {"value", "energy"}, {"label", "-"}};
    t.rows = {{0.0, 0.1, std::string("a;b")}, {1.0, -1e-300, std::string("")}, {2.0, 1.0 / 3.0, std::string("→")}};

    std::istringstream in(csv(t));
    CHECK(read_csv(in) == t);

    std::ostringstream js;
    write_json(t, js);
    std::istringstream jin(js.str());
    CHECK(read_json(jin) == t);

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "-0");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(csv(t).find("value [energy]") != std::string::npos);
}

TEST_CASE("verify") {
    RunConfig c;
    const CommandResult ok = cmd_verify(c);
    CHECK(ok.exit_code == kExitOk);
    CHECK(ok.message.empty());
    CHECK(ok.table.rows.size() > 20);

    c.fault = "closed_form";
    const CommandResult bad = cmd_verify(c);
    CHECK(bad.exit_code == kExitCheckFailed);
    CHECK(bad.message.find("composed S") != std::string::npos);

    RunConfig small;
    small.quanta_bound = 1;
    CHECK(cmd_verify(small).exit_code == kExitOk);

    RunConfig finite;
    finite.params.pulse_mode = PulseMode::finite;
    CHECK(cmd_verify(finite).exit_code == kExitOk);
}

TEST_CASE("simulate") {
    RunConfig c;
    const Table t = cmd_simulate(c).table;
    REQUIRE(t.rows.size() == 11);
    for (const auto& row : t.rows) {
        for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] == t.rows[0][j]);
    }
    CHECK(number(t.rows[10][0]) == 10.0);
    CHECK(t.columns[column(t, "entropy_engine")].unit == "nat");

    RunConfig r;
    r.initial = "random";
    r.seed = 4;
    r.cycles = 5;
    CHECK(csv(cmd_simulate(r).table) == csv(cmd_simulate(r).table));

    RunConfig finite;
    finite.params.pulse_mode = PulseMode::finite;
    CHECK_THROWS(cmd_simulate(finite));
}

TEST_CASE("table1 and spectrum") {
    const Table t = cmd_table1(RunConfig{}).table;
    CHECK(t.rows.size() == 8);
    for (const auto& row : t.rows) CHECK(std::get<std::string>(row[column(t, "match")]) == "yes");

    RunConfig res;
    res.params.omega1 = 2 * res.params.mu;
    const Table s = cmd_spectrum(res).table;
    CHECK(s.rows.size() == static_cast<std::size_t>(res.quanta_bound + 1));
    for (const auto& row : s.rows) {
        const double n = number(row[column(s, "n")]);
        const double expect = std::sin(res.params.tau1 * res.params.kappa12 * std::sqrt(n + 1));
        CHECK(number(row[column(s, "rho_plus")]) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(number(row[column(s, "rho_minus")]) == doctest::Approx(-expect).epsilon(1e-12));
    }
}
