#include "emvs/estep.hpp"

#include <cmath>
#include <limits>

#include "emvs/errors.hpp"
#include "emvs/mathx.hpp"

namespace emvs {

double inclusion_probability(double beta_j, double sigma, double theta, const SpikeSlabHyper& h) {
    // log N(b; 0, s^2*nu0) - log N(b; 0, s^2*nu1)
    //   = 0.5*log(nu1/nu0) + b^2/(2 s^2) * (1/nu1 - 1/nu0),
    // so p* = sigmoid(log(theta/(1-theta)) - that difference).
    const double delta = std::log1p(-theta) - std::log(theta) + 0.5 * std::log(h.nu1 / h.nu0) +
                         sq(beta_j / sigma) * 0.5 * (1.0 / h.nu1 - 1.0 / h.nu0);
    return sigmoid(-delta);
}

double expected_precision(double p_star_j, const SpikeSlabHyper& h) {
    return (1.0 - p_star_j) / h.nu0 + p_star_j / h.nu1;
}

double clamp_theta(double theta) {
    const double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return theta < lo ? lo : (theta > hi ? hi : theta);
}

EmState e_step(EmState state, const SpikeSlabHyper& h) {
    h.validate();
    if (!(state.sigma > 0.0) || !(state.theta > 0.0) || !(state.theta < 1.0))
        throw SpecInvalid("e_step needs sigma > 0 and theta in (0,1)");
    const std::size_t p = state.beta.size();
    state.p_star.resize(p);
    state.d_star.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        state.p_star[j] = inclusion_probability(state.beta[j], state.sigma, state.theta, h);
        state.d_star[j] = expected_precision(state.p_star[j], h);
    }
    return state;
}

}  // namespace emvs
