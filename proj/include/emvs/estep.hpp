#pragma once

#include "emvs/types.hpp"

// E-step quantities shared by both engines: the posterior inclusion
// probability p*_j of each coordinate and its expected prior precision d*_j.
namespace emvs {

// p*_j = theta*N(beta_j; 0, sigma^2*nu1) /
//        [theta*N(beta_j; 0, sigma^2*nu1) + (1-theta)*N(beta_j; 0, sigma^2*nu0)],
// evaluated through log-density differences so spike variances as small as
// 2e-4 cannot underflow the ratio.
double inclusion_probability(double beta_j, double sigma, double theta, const SpikeSlabHyper& h);

// d*_j = (1 - p*_j)/nu0 + p*_j/nu1
double expected_precision(double p_star_j, const SpikeSlabHyper& h);

// Recomputes p_star/d_star from (beta, sigma, theta); leaves those untouched.
EmState e_step(EmState state, const SpikeSlabHyper& h);

// The closed-form theta maximizer (sum p* + a - 1)/(a + b + p - 2) lands
// exactly on 0 or 1 when a <= 1 (or b <= 1) and every p*_j rounds to the same
// extreme; the objective's supremum over (0,1) is then attained at the nearest
// representable interior point, which this returns.
double clamp_theta(double theta);

}  // namespace emvs
