#pragma once

#include <optional>
#include <string>

namespace jcengine {

enum class PulseMode { finite, strong_limit };

std::string to_string(PulseMode mode);
PulseMode parse_pulse_mode(const std::string& text);

/// Physical and pulse parameters of one engine cycle (hbar = 1).
struct CycleParams {
    double omega1 = 2.0;   // cold oscillator frequency
    double omega3 = 2.5;   // warm oscillator frequency
    double mu = 0.7;       // engine levels at -mu, mu, mu + 2 delta
    double delta = 0.9;
    double kappa12 = 0.3;  // cold coupling
    double kappa23 = 0.45; // warm coupling
    double tau1 = 1.5;     // cold contact duration
    double tau3 = 2.1;     // warm contact duration
    double eps_a = 20.0;   // pulse a field (e <-> f)
    double eps_b = 20.0;   // pulse b field (g <-> e)
    std::optional<double> tau_a;  // defaults to pi / (2 sqrt(delta^2 + eps_a^2))
    std::optional<double> tau_b;  // defaults to pi / (2 sqrt(mu^2 + eps_b^2))
    PulseMode pulse_mode = PulseMode::strong_limit;

    double pulse_a_period() const;  // T_a = 1 / sqrt(delta^2 + eps_a^2)
    double pulse_b_period() const;  // T_b = 1 / sqrt(mu^2 + eps_b^2)
    double pulse_a_duration() const;
    double pulse_b_duration() const;

    /// Throws std::invalid_argument on negative durations or non-finite values.
    void validate() const;
};

}  // namespace jcengine
