#include "jcengine/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jcengine {

std::string to_string(PulseMode mode) { return mode == PulseMode::finite ? "finite" : "strong_limit"; }

PulseMode parse_pulse_mode(const std::string& text) {
    if (text == "finite") return PulseMode::finite;
    if (text == "strong_limit" || text == "strong") return PulseMode::strong_limit;
    throw std::invalid_argument("unknown pulse mode '" + text + "' (expected finite or strong_limit)");
}

double CycleParams::pulse_a_period() const { return 1.0 / std::hypot(delta, eps_a); }

double CycleParams::pulse_b_period() const { return 1.0 / std::hypot(mu, eps_b); }

double CycleParams::pulse_a_duration() const {
    return tau_a.value_or(0.5 * std::numbers::pi * pulse_a_period());
}

double CycleParams::pulse_b_duration() const {
    return tau_b.value_or(0.5 * std::numbers::pi * pulse_b_period());
}

void CycleParams::validate() const {
    const double values[] = {omega1, omega3, mu, delta, kappa12, kappa23, tau1, tau3, eps_a, eps_b};
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("cycle parameters must be finite");
    }
    if (tau1 < 0 || tau3 < 0) throw std::invalid_argument("contact durations must be nonnegative");
    if ((tau_a && *tau_a < 0) || (tau_b && *tau_b < 0)) throw std::invalid_argument("pulse durations must be nonnegative");
    if (pulse_mode == PulseMode::finite) {
        if (std::hypot(delta, eps_a) == 0.0 || std::hypot(mu, eps_b) == 0.0) {
            throw std::invalid_argument("finite pulses need delta^2 + eps_a^2 > 0 and mu^2 + eps_b^2 > 0");
        }
    }
}

}  // namespace jcengine
