// Acceptance gate: ten end-to-end checks covering the closed-form/generic
// agreement of every published bound, the three worked region figures, the
// sum-rate sweep properties, the projection oracle, the collapse property,
// and the two simulation guarantees.  Each criterion prints one PASS/FAIL
// line; the exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "secrate/channels.hpp"
#include "secrate/keysim.hpp"
#include "secrate/polytope.hpp"
#include "secrate/regions.hpp"
#include "secrate/verify.hpp"

using namespace secrate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double to_d(const Rational& r) { return r.convert_to<double>(); }

constexpr double kInf = std::numeric_limits<double>::infinity();

// Worst absolute difference between selected rows of two systems, matched
// pairwise in the given order; infinity when the shapes differ.
double rows_deviation(const HalfSpaceSystem& a, const HalfSpaceSystem& b,
                      const std::vector<std::size_t>& rows_a,
                      const std::vector<std::size_t>& rows_b) {
    if (rows_a.size() != rows_b.size()) return kInf;
    if (a.variables() != b.variables()) return kInf;
    double worst = 0.0;
    for (std::size_t k = 0; k < rows_a.size(); ++k) {
        if (rows_a[k] >= a.row_count() || rows_b[k] >= b.row_count()) return kInf;
        const auto& ra = a.rows()[rows_a[k]];
        const auto& rb = b.rows()[rows_b[k]];
        for (std::size_t j = 0; j < ra.coeffs.size(); ++j)
            worst = std::max(worst, std::abs(to_d(ra.coeffs[j]) - to_d(rb.coeffs[j])));
        worst = std::max(worst, std::abs(to_d(ra.rhs) - to_d(rb.rhs)));
    }
    return worst;
}

std::vector<std::size_t> all_rows(const HalfSpaceSystem& sys) {
    std::vector<std::size_t> idx(sys.row_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

// Largest amount by which any extreme point of `big` violates a row of
// `small`; a value >= margin witnesses strict inclusion of small in big.
double worst_violation(const Region2D& big, const HalfSpaceSystem& small) {
    double best = 0.0;
    for (const auto& v : big.vertices) {
        for (const auto& row : small.rows()) {
            double lhs = to_d(row.coeffs[0]) * v[0] + to_d(row.coeffs[1]) * v[1];
            best = std::max(best, lhs - to_d(row.rhs));
        }
    }
    return best;
}

const std::vector<double> kNoiseGrid = {0.0, 0.125, 0.25, 0.375, 0.5};

bool report(int number, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", number, detail.c_str());
    std::fflush(stdout);
    return pass;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return std::string(buf);
}

// 1. The closed-form first inner bound matches the generic evaluator row by
// row across both noise couplings and a full noise grid.
bool criterion1() {
    auto start = Clock::now();
    double worst = 0.0;
    for (DueckNoiseCase nc : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2}) {
        for (double p : kNoiseGrid)
            for (double q : kNoiseGrid)
                for (double r : kNoiseGrid) {
                    DueckParams params;
                    params.noise_case = nc;
                    params.p = p;
                    params.q = q;
                    params.r = r;
                    HalfSpaceSystem closed = dueck_closed_inner1(params);
                    HalfSpaceSystem generic = region_inner1(
                        dueck_distribution(params, DueckCommonPart::z0_z1, false));
                    worst = std::max(worst,
                                     rows_deviation(closed, generic, all_rows(closed),
                                                    all_rows(generic)));
                }
    }
    double secs = seconds_since(start);
    bool pass = worst <= 1e-9 && secs < 10.0;
    return report(1, pass,
                  fmt("first inner bound, closed form vs generic evaluator on the "
                      "5x5x5 noise grid, both couplings (max deviation %.3g, %.2f s)",
                      worst, secs));
}

// 2. Same comparison for the hybrid inner bound.  Each per-user min row of
// the closed form is generated by one choice of the revealed noise pair, so
// the generic evaluator runs under both choices and each closed row is
// checked against the choice that produces it.
bool criterion2() {
    auto start = Clock::now();
    double worst = 0.0;
    for (DueckNoiseCase nc : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2}) {
        for (double p : kNoiseGrid)
            for (double q : kNoiseGrid)
                for (double r : kNoiseGrid) {
                    DueckParams params;
                    params.noise_case = nc;
                    params.p = p;
                    params.q = q;
                    params.r = r;
                    HalfSpaceSystem closed = dueck_closed_inner2(params);
                    HalfSpaceSystem g1 = region_inner2(
                        dueck_distribution(params, DueckCommonPart::z0_z1, true));
                    HalfSpaceSystem g2 = region_inner2(
                        dueck_distribution(params, DueckCommonPart::z0_z2, true));
                    worst = std::max(worst, rows_deviation(closed, g1, {0, 1, 2, 4},
                                                           {0, 1, 2, 4}));
                    worst = std::max(worst, rows_deviation(closed, g2, {0, 1, 3, 4},
                                                           {0, 1, 3, 4}));
                }
    }
    double secs = seconds_since(start);
    bool pass = worst <= 1e-9 && secs < 60.0;
    return report(2, pass,
                  fmt("hybrid inner bound, closed form vs generic evaluator on the "
                      "5x5x5 noise grid, both couplings and both revealed noise "
                      "pairs (max deviation %.3g, %.2f s)",
                      worst, secs));
}

// 3. Weak noise, chain coupling: the four bounds form a strict inclusion
// chain and the generic evaluators reproduce the published caps.
bool criterion3() {
    DueckParams params;  // chain coupling, p = q = r = 0.05
    SchemeDistribution dist = dueck_distribution(params);
    HalfSpaceSystem nofb_s = region_nofeedback(dist);
    HalfSpaceSystem in1_s = region_inner1(dist);
    HalfSpaceSystem in2_s = region_inner2(dist);
    HalfSpaceSystem out_s = dueck_closed_outer(params);
    Region2D nofb = vertices2d(nofb_s);
    Region2D in1 = vertices2d(in1_s);
    Region2D in2 = vertices2d(in2_s);
    Region2D out = vertices2d(out_s);

    bool included = is_subset(nofb, in1_s) && is_subset(in1, in2_s) &&
                    is_subset(in2, out_s);
    double gap1 = worst_violation(in1, nofb_s);
    double gap2 = worst_violation(in2, in1_s);
    double gap3 = worst_violation(out, in2_s);
    bool strict = gap1 >= 1e-3 && gap2 >= 1e-3 && gap3 >= 1e-3;

    double cap_in1 = to_d(in1_s.rows()[0].rhs);
    double cap_in2 = to_d(in2_s.rows()[0].rhs);
    double cap_out = to_d(out_s.rows()[0].rhs);
    bool caps = std::abs(cap_in1 - 0.833455) <= 1e-6 &&
                std::abs(cap_in2 - 1.119852) <= 1e-6 &&
                std::abs(cap_out - 1.427206) <= 1e-6;

    bool pass = included && strict && caps;
    return report(3, pass,
                  fmt("weak-noise chain case: no-feedback c inner1 c inner2 c outer, "
                      "strict (gaps %.3g/%.3g/%.3g), caps %.6f/%.6f/%.6f",
                      gap1, gap2, gap3, cap_in1, cap_in2, cap_out));
}

// 4. Chain coupling at (p, q, r) = (0.25, 0.2, 0.3): the hybrid inner bound
// meets the outer bound while the first inner bound stays strictly inside.
bool criterion4() {
    DueckParams params;
    params.p = 0.25;
    params.q = 0.2;
    params.r = 0.3;
    Region2D in1 = vertices2d(dueck_closed_inner1(params));
    Region2D in2 = vertices2d(dueck_closed_inner2(params));
    HalfSpaceSystem out_s = dueck_closed_outer(params);
    Region2D out = vertices2d(out_s);

    bool meets = region_equal(in2, out, 1e-9);
    bool inside = is_subset(in1, out_s);
    double gap = max_sum_rate(out_s) - max_sum_rate(dueck_closed_inner1(params));
    bool pass = meets && inside && gap >= 1e-3;
    return report(4, pass,
                  fmt("chain case at (0.25, 0.2, 0.3): hybrid bound equals the outer "
                      "bound, first inner bound stays inside (sum-rate gap %.6f)",
                      gap));
}

// 5. Fork coupling at (p, q, r) = (0.25, 0.2, 0.3): both feedback inner
// bounds and the outer bound coincide, settling the capacity region there.
bool criterion5() {
    DueckParams params;
    params.noise_case = DueckNoiseCase::z1_z0_z2;
    params.p = 0.25;
    params.q = 0.2;
    params.r = 0.3;
    Region2D in1 = vertices2d(dueck_closed_inner1(params));
    Region2D in2 = vertices2d(dueck_closed_inner2(params));
    Region2D out = vertices2d(dueck_closed_outer(params));
    bool pass = region_equal(in1, in2, 1e-9) && region_equal(in2, out, 1e-9) &&
                region_equal(in1, out, 1e-9);
    return report(5, pass,
                  "fork case at (0.25, 0.2, 0.3): both feedback bounds and the outer "
                  "bound coincide");
}

// 6. Ternary-input sum-rate sweep: feedback never loses to no-feedback, and
// neither feedback strategy dominates the other everywhere.  The crossing
// locations are found by grid search; the second direction only opens on a
// narrow low-noise window, so it is witnessed on a refined grid.
bool criterion6() {
    auto start = Clock::now();
    std::vector<double> grid;
    for (int i = 0; i <= 25; ++i) grid.push_back(static_cast<double>(i) * 0.02);
    std::vector<SweepRow> rows = sweep_blackwell_sumrate(grid, 201);

    bool dominance = true;
    double worst_margin = kInf;
    for (const SweepRow& row : rows) {
        double feedback = std::max(row.sum_inner1, row.sum_inner2);
        worst_margin = std::min(worst_margin, feedback - row.sum_nofeedback);
        if (feedback < row.sum_nofeedback - 1e-9) dominance = false;
    }

    double p_first = -1.0;  // first inner bound leads
    for (const SweepRow& row : rows)
        if (row.sum_inner1 > row.sum_inner2 + 1e-9 && p_first < 0.0) p_first = row.p;

    std::vector<SweepRow> refined = sweep_blackwell_sumrate({0.005, 0.01, 0.015}, 201);
    double p_second = -1.0;  // hybrid bound leads
    for (const SweepRow& row : refined)
        if (row.sum_inner2 > row.sum_inner1 + 1e-9 && p_second < 0.0) p_second = row.p;

    double secs = seconds_since(start);
    bool pass = dominance && p_first >= 0.0 && p_second >= 0.0 && secs < 300.0;
    return report(6, pass,
                  fmt("sum-rate sweep: feedback >= no-feedback at all 26 noise levels "
                      "(min margin %.3g); first inner bound leads at p=%.3f, hybrid "
                      "bound leads at p=%.3f (%.2f s)",
                      worst_margin, p_first, p_second, secs));
}

// 7. The source-coding rate region matches an independently projected
// split-rate system on sampled points (built-in projection check).
bool criterion7() {
    VerifyOptions options;
    options.only = "wynerziv-projection";
    std::vector<VerifyCheck> checks = run_verification(options);
    bool pass = checks.size() == 1 && checks[0].pass;
    return report(7, pass,
                  fmt("source-coding region equals the projected split-rate system "
                      "(%s)", checks.empty() ? "check missing" : checks[0].detail.c_str()));
}

// 8. A constant extension collapses the hybrid bound onto the first inner
// bound row by row (built-in collapse check over random distributions).
bool criterion8() {
    VerifyOptions options;
    options.only = "constant-extension-collapse";
    std::vector<VerifyCheck> checks = run_verification(options);
    bool pass = checks.size() == 1 && checks[0].pass;
    return report(8, pass,
                  fmt("constant extension collapses the hybrid bound onto the first "
                      "inner bound (%s)",
                      checks.empty() ? "check missing" : checks[0].detail.c_str()));
}

// 9. Exhaustive key extraction: near-full conditional key entropy when the
// observations are independent, exactly zero when they are identical.
bool criterion9() {
    auto start = Clock::now();
    KeySimConfig config;
    config.channel = uniform_independent_channel();
    config.blocklength = 8;
    config.rate = 0.75;
    KeySimReport indep = run_key_extraction(config);
    config.channel = identical_channel();
    KeySimReport ident = run_key_extraction(config);
    double secs = seconds_since(start);

    double target = 0.95 * 8 * 0.75;
    bool pass = indep.conditional_key_entropy >= target &&
                ident.conditional_key_entropy == 0.0 && secs < 30.0;
    return report(9, pass,
                  fmt("exhaustive key extraction at N=8, R=0.75: independent pair "
                      "keeps H(K|Y2^N)=%.4f >= %.2f, identical pair gives exactly "
                      "%.1f (%.2f s)",
                      indep.conditional_key_entropy, target,
                      ident.conditional_key_entropy, secs));
}

// 10. One-time-pad roundtrip: every trial decodes, leakage stays under 0.05
// bits per message bit for independent observations and is exactly one bit
// per bit when the eavesdropper sees the key source directly.
bool criterion10() {
    KeySimConfig config;
    config.channel = uniform_independent_channel();
    config.blocklength = 8;
    config.rate = 0.75;
    OtpReport indep = run_otp_roundtrip(config, 6, 10000);
    config.channel = identical_channel();
    OtpReport ident = run_otp_roundtrip(config, 6, 10000);

    bool pass = indep.decode_ok && indep.message_leakage <= 0.05 * 6 &&
                ident.decode_ok && ident.message_leakage == 6.0;
    return report(10, pass,
                  fmt("one-time-pad roundtrip over 10000 trials: decode exact, "
                      "independent leakage %.4f <= 0.30 bits, identical leakage "
                      "%.1f = 6 bits",
                      indep.message_leakage, ident.message_leakage));
}

}  // namespace

int main() {
    int failures = 0;
    failures += criterion1() ? 0 : 1;
    failures += criterion2() ? 0 : 1;
    failures += criterion3() ? 0 : 1;
    failures += criterion4() ? 0 : 1;
    failures += criterion5() ? 0 : 1;
    failures += criterion6() ? 0 : 1;
    failures += criterion7() ? 0 : 1;
    failures += criterion8() ? 0 : 1;
    failures += criterion9() ? 0 : 1;
    failures += criterion10() ? 0 : 1;
    if (failures == 0)
        std::printf("all 10 acceptance criteria passed\n");
    else
        std::printf("%d of 10 acceptance criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
