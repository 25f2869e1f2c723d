#ifndef SECRATE_CHANNELS_HPP
#define SECRATE_CHANNELS_HPP

/* Worked broadcast-channel families with binary additive noise.
 *
 * Dueck family: three independent input bits (X0, X1, X2).  Receiver 1
 * observes (X0 + Z0, X1 + Z1) and receiver 2 observes (X0 + Z0, X2 + Z2),
 * all sums mod 2.  Z0 ~ Bern(p); the triple (Z0, Z1, Z2) follows one of two
 * Markov chains selected by DueckNoiseCase.  The scheme mapping is Q = X0,
 * U1 = X1, U2 = X2, X = (X0, X1, X2), and the feedback extension reveals a
 * pair of noise bits as V0 together with V1 = (X0, X1), V2 = (X0, X2).
 *
 * Blackwell family: ternary input X in {0,1,2} fed by auxiliaries through
 * X = U1 + U2 with U2 <= U1; receiver 1 sees 1{X >= 1} + Z1 and receiver 2
 * sees 1{X = 2} + Z2 (mod 2) with independent Bern(p) noises.  The time
 * sharing variable Q is a fair bit that swaps the roles of the weights
 * alpha and beta between the two receivers.
 *
 * For each family this module provides the explicit joint distribution
 * (feeding the generic bound evaluators in regions.hpp), closed-form rate
 * regions obtained by evaluating the bounds analytically, and a sum-rate
 * sweep that optimizes the closed forms over their weight parameters.
 */

#include <vector>

#include "secrate/polytope.hpp"
#include "secrate/regions.hpp"

namespace secrate {

// How the noise triple is generated.  Z0 ~ Bern(p) always.
enum class DueckNoiseCase {
    // Markov chain Z0 -> Z1 -> Z2: Z1 = Z0 + Bern(q), Z2 = Z1 + Bern(r).
    z0_z1_z2,
    // Markov chain Z1 -> Z0 -> Z2: Z1 = Z0 + Bern(q), Z2 = Z0 + Bern(r).
    z1_z0_z2,
};

// Which noise pair the feedback extension exposes as V0.
enum class DueckCommonPart {
    z0_z1,
    z0_z2,
};

struct DueckParams {
    DueckNoiseCase noise_case = DueckNoiseCase::z0_z1_z2;
    double p = 0.05;  // bias of Z0
    double q = 0.05;  // flip probability from Z0 to Z1
    double r = 0.05;  // flip probability of the second link (per noise_case)
    double alpha1 = 0.5;  // P(X0 = 1)
    double alpha2 = 0.5;  // P(X1 = 1)
    double alpha3 = 0.5;  // P(X2 = 1)

    // Throws ArgumentError unless p, q, r are in [0, 1/2] and the input
    // biases are in [0, 1].
    void validate() const;
};

struct BlackwellParams {
    double p = 0.05;  // receiver noise bias, in [0, 1/2]
    // Weights of the auxiliary joint used by the achievable regions:
    // given Q = 0 the pair (U1, U2) is (0,0), (1,0), (1,1) with probability
    // alpha, 1 - alpha - beta, beta; given Q = 1 alpha and beta swap.
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    // Channel input distribution used by the closed-form outer bound:
    // P(X = 0) = alpha1, P(X = 1) = alpha2, P(X = 2) = 1 - alpha1 - alpha2.
    double alpha1 = 1.0 / 3.0;
    double alpha2 = 1.0 / 3.0;

    // Throws ArgumentError unless p is in [0, 1/2], alpha and beta are
    // nonnegative with alpha + beta <= 1, and (alpha1, alpha2) lies in the
    // probability simplex.
    void validate() const;
};

// Explicit joint distributions for the two families, in the variable layout
// expected by regions.hpp.
//
// Dueck: Q(2), U1(2), U2(2), X(8), Y1(4), Y2(4); composite symbols are
// packed most-significant-first, e.g. X = 4*X0 + 2*X1 + X2 and
// Y1 = 2*(X0+Z0) + (X1+Z1).  With the extension (on by default):
// V0(4) = the noise pair selected by common_part, V1(4) = (X0, X1),
// V2(4) = (X0, X2).  The result passes verify_factorization.
SchemeDistribution dueck_distribution(const DueckParams& params,
                                      DueckCommonPart common_part = DueckCommonPart::z0_z1,
                                      bool with_extension = true);

// Blackwell: Q(2), U1(2), U2(2), X(3), Y1(2), Y2(2).  With the extension:
// V0(4) = (Z1, Z2), V1(2) = U1, V2(2) = U2.
SchemeDistribution blackwell_distribution(const BlackwellParams& params,
                                          bool with_extension = false);

// Closed-form rate regions over (R1, R2), each row's constant clamped at 0.
//
// The Dueck closed forms assume uniform input bits and throw ArgumentError
// unless alpha1 = alpha2 = alpha3 = 1/2.  Row layouts match the generic
// evaluators: inner regions are [key1, key2, plain1, plain2, sum], the outer
// region is [R1 cap, R2 cap, sum], no-feedback is [R1 cap, R2 cap].
HalfSpaceSystem dueck_closed_inner1(const DueckParams& params);
HalfSpaceSystem dueck_closed_inner2(const DueckParams& params);
HalfSpaceSystem dueck_closed_outer(const DueckParams& params);
HalfSpaceSystem dueck_closed_nofeedback(const DueckParams& params);

// Blackwell closed forms.  inner1/inner2 rows are [key1, key2, plain1,
// plain2, sum]; the outer bound has two rows (each a min of two caps) and no
// sum row; no-feedback has two rows.
HalfSpaceSystem blackwell_closed_inner1(const BlackwellParams& params);
HalfSpaceSystem blackwell_closed_inner2(const BlackwellParams& params);
HalfSpaceSystem blackwell_closed_outer(const BlackwellParams& params);
HalfSpaceSystem blackwell_closed_nofeedback(const BlackwellParams& params);

// One sweep sample: the best achievable R1 + R2 of each closed-form region
// at noise level p, maximized over the weight parameters on a uniform grid
// over the simplex (alpha = i/(n-1), beta = j/(n-1), i + j <= n-1, where
// n = grid_resolution; the outer column scans (alpha1, alpha2) instead).
struct SweepRow {
    double p = 0.0;
    double sum_inner1 = 0.0;
    double sum_inner2 = 0.0;
    double sum_outer = 0.0;
    double sum_nofeedback = 0.0;
};

// Throws ArgumentError if p_grid is empty, any p is outside [0, 1/2], or
// grid_resolution < 2.  The parallel variant distributes grid points across
// threads; results are identical to the serial variant bit for bit.
std::vector<SweepRow> sweep_blackwell_sumrate(const std::vector<double>& p_grid,
                                              int grid_resolution = 201);
std::vector<SweepRow> sweep_blackwell_sumrate_serial(const std::vector<double>& p_grid,
                                                     int grid_resolution = 201);

}  // namespace secrate

#endif  // SECRATE_CHANNELS_HPP
