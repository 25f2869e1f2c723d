#include "secrate/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "secrate/errors.hpp"
#include "secrate/prob.hpp"

namespace secrate {
namespace {

constexpr double kParamTol = 1e-12;

void require_in(double v, double lo, double hi, const std::string& what) {
    if (!(v >= lo - kParamTol && v <= hi + kParamTol))
        throw ArgumentError(what + " = " + std::to_string(v) + " must lie in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double pos(double v) { return v > 0.0 ? v : 0.0; }

// Probability that a Bernoulli variable with P(1) = one_prob takes `bit`.
double bit_prob(int bit, double one_prob) {
    return bit ? one_prob : 1.0 - one_prob;
}

HalfSpaceSystem rate_pair_system(const std::vector<std::array<double, 3>>& rows) {
    HalfSpaceSystem sys({"R1", "R2"}, true);
    for (const auto& r : rows)
        sys.add_row({Rational(static_cast<long>(r[0])), Rational(static_cast<long>(r[1]))},
                    rationalize(pos(r[2])));
    return sys;
}

// Entropies of the Dueck noise triple; every closed form reads the shared
// quantities from here so that identical constants stay bit-identical
// across regions.
struct NoiseEntropies {
    double h_z0 = 0.0;
    double h_z1_given_z0 = 0.0;
    double h_z2_given_z0 = 0.0;
    double h_z1_given_z0z2 = 0.0;
    double h_z2_given_z0z1 = 0.0;
    double h_z0z1 = 0.0;
    double h_z0z2 = 0.0;
    double h_z0z1z2 = 0.0;
};

NoiseEntropies noise_entropies(const DueckParams& d) {
    NoiseEntropies ne;
    double hp = binary_entropy(d.p);
    double hq = binary_entropy(d.q);
    double hr = binary_entropy(d.r);
    ne.h_z0 = hp;
    ne.h_z1_given_z0 = hq;
    ne.h_z2_given_z0z1 = hr;
    if (d.noise_case == DueckNoiseCase::z0_z1_z2) {
        // Z2 = Z0 + Bern(q) + Bern(r), so the Z0 -> Z2 link is a q * r
        // convolution; conditioning on Z2 tightens Z1 accordingly.
        double hqr = binary_entropy(binary_convolve(d.q, d.r));
        ne.h_z2_given_z0 = hqr;
        ne.h_z1_given_z0z2 = hq + hr - hqr;
    } else {
        // Z1 and Z2 are conditionally independent given Z0.
        ne.h_z2_given_z0 = hr;
        ne.h_z1_given_z0z2 = hq;
    }
    ne.h_z0z1 = hp + ne.h_z1_given_z0;
    ne.h_z0z2 = hp + ne.h_z2_given_z0;
    ne.h_z0z1z2 = hp + hq + hr;
    return ne;
}

void require_uniform_bits(const DueckParams& d) {
    if (std::abs(d.alpha1 - 0.5) > kParamTol || std::abs(d.alpha2 - 0.5) > kParamTol ||
        std::abs(d.alpha3 - 0.5) > kParamTol)
        throw ArgumentError(
            "closed-form regions assume uniform input bits "
            "(alpha1 = alpha2 = alpha3 = 1/2)");
}

// Shared quantities of the Blackwell closed forms for weights (alpha, beta).
struct BlackwellTerms {
    double hp = 0.0;    // H(Z)
    double s = 0.0;     // H(Yj | Q)
    double t = 0.0;     // H(Yj)
    double g = 0.0;     // (h(alpha) + h(beta)) / 2
    double h3 = 0.0;    // joint entropy of the auxiliary pair given Q
    double iuu = 0.0;   // I(U1; U2 | Q)
    double mid = 0.0;   // (alpha + beta) / 2
};

BlackwellTerms blackwell_terms(double p, double alpha, double beta) {
    BlackwellTerms bt;
    bt.hp = binary_entropy(p);
    bt.s = 0.5 * (binary_entropy(binary_convolve(alpha, p)) +
                  binary_entropy(binary_convolve(beta, p)));
    bt.mid = 0.5 * (alpha + beta);
    bt.t = binary_entropy(binary_convolve(bt.mid, p));
    double ha = binary_entropy(alpha);
    double hb = binary_entropy(beta);
    bt.g = 0.5 * (ha + hb);
    bt.h3 = ternary_entropy(alpha, beta);
    bt.iuu = ha + hb - bt.h3;
    return bt;
}

// Output-pair entropy of the Blackwell channel under the input distribution
// (alpha1, alpha2, 1 - alpha1 - alpha2) with independent Bern(p) noises.
double blackwell_output_entropy(double p, double alpha1, double alpha2) {
    double pb = 1.0 - p;
    double a3 = pos(1.0 - alpha1 - alpha2);
    double c00 = alpha1 * pb * pb + alpha2 * p * pb + a3 * p * p;
    double c01 = alpha1 * pb * p + alpha2 * p * p + a3 * p * pb;
    double c10 = alpha1 * p * pb + alpha2 * pb * pb + a3 * pb * p;
    double c11 = alpha1 * p * p + alpha2 * pb * p + a3 * pb * pb;
    return neg_p_log2(c00) + neg_p_log2(c01) + neg_p_log2(c10) + neg_p_log2(c11);
}

void require_sweep_args(const std::vector<double>& p_grid, int grid_resolution) {
    if (p_grid.empty())
        throw ArgumentError("sweep: p_grid must not be empty");
    if (grid_resolution < 2)
        throw ArgumentError("sweep: grid_resolution must be at least 2, got " +
                            std::to_string(grid_resolution));
    for (double p : p_grid) require_in(p, 0.0, 0.5, "sweep: p");
}

// Best R1 + R2 of each closed-form family at noise level p, maximized over
// the weight simplex grid.  Pure double arithmetic; no systems are built.
SweepRow sweep_one(double p, int res) {
    double hp = binary_entropy(p);
    double inv = 1.0 / static_cast<double>(res - 1);
    SweepRow row;
    row.p = p;
    for (int i = 0; i < res; ++i) {
        double a = static_cast<double>(i) * inv;
        for (int j = 0; i + j < res; ++j) {
            double b = static_cast<double>(j) * inv;
            BlackwellTerms bt = blackwell_terms(p, a, b);

            // First inner region: per-user cap is the tighter of the key
            // row and the plain row; the sum row caps the total.
            double cap1 = std::min(pos(bt.s - bt.iuu), pos(bt.t - hp));
            double sum1 = std::min(pos(bt.t + bt.s - 2.0 * hp - bt.iuu), 2.0 * cap1);
            row.sum_inner1 = std::max(row.sum_inner1, sum1);

            // Second inner region.
            double key = pos(std::min(bt.g, bt.h3 - bt.g + hp));
            double r3 = pos(bt.t - 2.0 * hp);
            double r4 = pos(binary_entropy(binary_convolve(bt.mid, 1.0 - p)) - 2.0 * hp);
            double sum2 = std::min(pos(bt.t - 2.0 * hp - bt.g + bt.h3),
                                   std::min(key, r3) + std::min(key, r4));
            row.sum_inner2 = std::max(row.sum_inner2, sum2);

            // No-feedback region: two equal caps, no sum row.
            row.sum_nofeedback =
                std::max(row.sum_nofeedback, 2.0 * pos(bt.s - hp - bt.iuu));

            // Outer bound, scanning the channel-input weights instead.
            double joint = blackwell_output_entropy(p, a, b);
            double hy1 = binary_entropy(binary_convolve(a, p));
            double hy2 = binary_entropy(binary_convolve(a + b, p));
            double cap_out1 = pos(std::min(hy1 - hp, joint - hy2));
            double cap_out2 = pos(std::min(hy2 - hp, joint - hy1));
            row.sum_outer = std::max(row.sum_outer, cap_out1 + cap_out2);
        }
    }
    return row;
}

}  // namespace

void DueckParams::validate() const {
    require_in(p, 0.0, 0.5, "p");
    require_in(q, 0.0, 0.5, "q");
    require_in(r, 0.0, 0.5, "r");
    require_in(alpha1, 0.0, 1.0, "alpha1");
    require_in(alpha2, 0.0, 1.0, "alpha2");
    require_in(alpha3, 0.0, 1.0, "alpha3");
}

void BlackwellParams::validate() const {
    require_in(p, 0.0, 0.5, "p");
    require_in(alpha, 0.0, 1.0, "alpha");
    require_in(beta, 0.0, 1.0, "beta");
    if (alpha + beta > 1.0 + kParamTol)
        throw ArgumentError("alpha + beta = " + std::to_string(alpha + beta) +
                            " must not exceed 1");
    require_in(alpha1, 0.0, 1.0, "alpha1");
    require_in(alpha2, 0.0, 1.0, "alpha2");
    if (alpha1 + alpha2 > 1.0 + kParamTol)
        throw ArgumentError("alpha1 + alpha2 = " + std::to_string(alpha1 + alpha2) +
                            " must not exceed 1");
}

SchemeDistribution dueck_distribution(const DueckParams& params,
                                      DueckCommonPart common_part,
                                      bool with_extension) {
    params.validate();
    std::vector<Alphabet> base_vars = {{"Q", 2},  {"U1", 2}, {"U2", 2},
                                       {"X", 8},  {"Y1", 4}, {"Y2", 4}};
    std::vector<Alphabet> ext_vars = base_vars;
    ext_vars.push_back({"V0", 4});
    ext_vars.push_back({"V1", 4});
    ext_vars.push_back({"V2", 4});
    std::vector<double> base(1024, 0.0);
    std::vector<double> ext(with_extension ? 65536 : 0, 0.0);

    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2)
                for (int z0 = 0; z0 < 2; ++z0)
                    for (int z1 = 0; z1 < 2; ++z1)
                        for (int z2 = 0; z2 < 2; ++z2) {
                            int z2_base =
                                params.noise_case == DueckNoiseCase::z0_z1_z2 ? z1 : z0;
                            double prob = bit_prob(x0, params.alpha1) *
                                          bit_prob(x1, params.alpha2) *
                                          bit_prob(x2, params.alpha3) *
                                          bit_prob(z0, params.p) *
                                          bit_prob(z1 ^ z0, params.q) *
                                          bit_prob(z2 ^ z2_base, params.r);
                            int x = x0 * 4 + x1 * 2 + x2;
                            int y1 = (x0 ^ z0) * 2 + (x1 ^ z1);
                            int y2 = (x0 ^ z0) * 2 + (x2 ^ z2);
                            std::size_t cell =
                                ((((static_cast<std::size_t>(x0) * 2 + x1) * 2 + x2) * 8 + x) *
                                     4 + y1) * 4 + y2;
                            base[cell] += prob;
                            if (with_extension) {
                                int v0 = common_part == DueckCommonPart::z0_z1
                                             ? z0 * 2 + z1
                                             : z0 * 2 + z2;
                                int v1 = x0 * 2 + x1;
                                int v2 = x0 * 2 + x2;
                                ext[((cell * 4 + v0) * 4 + v1) * 4 + v2] += prob;
                            }
                        }

    JointPmf base_pmf(base_vars, std::move(base));
    if (!with_extension) return SchemeDistribution(std::move(base_pmf));
    return SchemeDistribution(std::move(base_pmf), JointPmf(ext_vars, std::move(ext)));
}

SchemeDistribution blackwell_distribution(const BlackwellParams& params,
                                          bool with_extension) {
    params.validate();
    std::vector<Alphabet> base_vars = {{"Q", 2},  {"U1", 2}, {"U2", 2},
                                       {"X", 3},  {"Y1", 2}, {"Y2", 2}};
    std::vector<Alphabet> ext_vars = base_vars;
    ext_vars.push_back({"V0", 4});
    ext_vars.push_back({"V1", 2});
    ext_vars.push_back({"V2", 2});
    std::vector<double> base(96, 0.0);
    std::vector<double> ext(with_extension ? 1536 : 0, 0.0);

    // Auxiliary pairs in support: (0,0), (1,0), (1,1).
    const int pair_u1[3] = {0, 1, 1};
    const int pair_u2[3] = {0, 0, 1};
    double rest = pos(1.0 - params.alpha - params.beta);
    for (int q = 0; q < 2; ++q) {
        double w0 = q == 0 ? params.alpha : params.beta;
        double w2 = q == 0 ? params.beta : params.alpha;
        const double weight[3] = {w0, rest, w2};
        for (int k = 0; k < 3; ++k) {
            int u1 = pair_u1[k];
            int u2 = pair_u2[k];
            int x = u1 + u2;
            for (int z1 = 0; z1 < 2; ++z1)
                for (int z2 = 0; z2 < 2; ++z2) {
                    double prob = 0.5 * weight[k] * bit_prob(z1, params.p) *
                                  bit_prob(z2, params.p);
                    int y1 = u1 ^ z1;
                    int y2 = u2 ^ z2;
                    std::size_t cell =
                        ((((static_cast<std::size_t>(q) * 2 + u1) * 2 + u2) * 3 + x) * 2 +
                             y1) * 2 + y2;
                    base[cell] += prob;
                    if (with_extension) {
                        int v0 = z1 * 2 + z2;
                        ext[((cell * 4 + v0) * 2 + u1) * 2 + u2] += prob;
                    }
                }
        }
    }

    JointPmf base_pmf(base_vars, std::move(base));
    if (!with_extension) return SchemeDistribution(std::move(base_pmf));
    return SchemeDistribution(std::move(base_pmf), JointPmf(ext_vars, std::move(ext)));
}

HalfSpaceSystem dueck_closed_inner1(const DueckParams& params) {
    params.validate();
    require_uniform_bits(params);
    NoiseEntropies ne = noise_entropies(params);
    double key1 = 1.0 - ne.h_z1_given_z0 + ne.h_z1_given_z0z2;
    double key2 = 1.0 - ne.h_z2_given_z0 + ne.h_z2_given_z0z1;
    double plain1 = 2.0 - ne.h_z0z1;
    double plain2 = 2.0 - ne.h_z0z2;
    double sum = 3.0 + ne.h_z0 - ne.h_z0z1 - ne.h_z0z2;
    return rate_pair_system({{1, 0, key1},
                             {0, 1, key2},
                             {1, 0, plain1},
                             {0, 1, plain2},
                             {1, 1, sum}});
}

HalfSpaceSystem dueck_closed_inner2(const DueckParams& params) {
    params.validate();
    require_uniform_bits(params);
    NoiseEntropies ne = noise_entropies(params);
    double key1 = 1.0 + ne.h_z1_given_z0z2;
    double key2 = 1.0 + ne.h_z2_given_z0z1;
    double plain1 = 2.0 - ne.h_z0z1;
    double plain2 = 2.0 - ne.h_z0z2;
    double sum = 3.0 - ne.h_z0z1z2;
    return rate_pair_system({{1, 0, key1},
                             {0, 1, key2},
                             {1, 0, plain1},
                             {0, 1, plain2},
                             {1, 1, sum}});
}

HalfSpaceSystem dueck_closed_outer(const DueckParams& params) {
    params.validate();
    require_uniform_bits(params);
    NoiseEntropies ne = noise_entropies(params);
    return rate_pair_system({{1, 0, 2.0 - ne.h_z0z1},
                             {0, 1, 2.0 - ne.h_z0z2},
                             {1, 1, 3.0 - ne.h_z0z1z2}});
}

HalfSpaceSystem dueck_closed_nofeedback(const DueckParams& params) {
    params.validate();
    require_uniform_bits(params);
    NoiseEntropies ne = noise_entropies(params);
    return rate_pair_system({{1, 0, 1.0 - ne.h_z1_given_z0},
                             {0, 1, 1.0 - ne.h_z2_given_z0}});
}

HalfSpaceSystem blackwell_closed_inner1(const BlackwellParams& params) {
    params.validate();
    BlackwellTerms bt = blackwell_terms(params.p, params.alpha, params.beta);
    double key = bt.s - bt.iuu;
    double plain = bt.t - bt.hp;
    double sum = bt.t + bt.s - 2.0 * bt.hp - bt.iuu;
    return rate_pair_system({{1, 0, key},
                             {0, 1, key},
                             {1, 0, plain},
                             {0, 1, plain},
                             {1, 1, sum}});
}

HalfSpaceSystem blackwell_closed_inner2(const BlackwellParams& params) {
    params.validate();
    BlackwellTerms bt = blackwell_terms(params.p, params.alpha, params.beta);
    double key = std::min(bt.g, bt.h3 - bt.g + bt.hp);
    double plain1 = bt.t - 2.0 * bt.hp;
    double plain2 =
        binary_entropy(binary_convolve(bt.mid, 1.0 - params.p)) - 2.0 * bt.hp;
    double sum = bt.t - 2.0 * bt.hp - bt.g + bt.h3;
    return rate_pair_system({{1, 0, key},
                             {0, 1, key},
                             {1, 0, plain1},
                             {0, 1, plain2},
                             {1, 1, sum}});
}

HalfSpaceSystem blackwell_closed_outer(const BlackwellParams& params) {
    params.validate();
    double hp = binary_entropy(params.p);
    double joint = blackwell_output_entropy(params.p, params.alpha1, params.alpha2);
    double hy1 = binary_entropy(binary_convolve(params.alpha1, params.p));
    double hy2 =
        binary_entropy(binary_convolve(params.alpha1 + params.alpha2, params.p));
    return rate_pair_system({{1, 0, std::min(hy1 - hp, joint - hy2)},
                             {0, 1, std::min(hy2 - hp, joint - hy1)}});
}

HalfSpaceSystem blackwell_closed_nofeedback(const BlackwellParams& params) {
    params.validate();
    BlackwellTerms bt = blackwell_terms(params.p, params.alpha, params.beta);
    double cap = bt.s - bt.hp - bt.iuu;
    return rate_pair_system({{1, 0, cap}, {0, 1, cap}});
}

std::vector<SweepRow> sweep_blackwell_sumrate(const std::vector<double>& p_grid,
                                              int grid_resolution) {
    require_sweep_args(p_grid, grid_resolution);
    std::vector<SweepRow> rows(p_grid.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p_grid.size());
    // Each slot is written by exactly one iteration, so the result does not
    // depend on the thread count.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] =
            sweep_one(p_grid[static_cast<std::size_t>(i)], grid_resolution);
    return rows;
}

std::vector<SweepRow> sweep_blackwell_sumrate_serial(const std::vector<double>& p_grid,
                                                     int grid_resolution) {
    require_sweep_args(p_grid, grid_resolution);
    std::vector<SweepRow> rows(p_grid.size());
    for (std::size_t i = 0; i < p_grid.size(); ++i)
        rows[i] = sweep_one(p_grid[i], grid_resolution);
    return rows;
}

}  // namespace secrate
