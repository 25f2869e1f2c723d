#include "secrate/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "secrate/channels.hpp"
#include "secrate/errors.hpp"
#include "secrate/keysim.hpp"
#include "secrate/polytope.hpp"
#include "secrate/prob.hpp"
#include "secrate/regions.hpp"

namespace secrate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Worst |rhs| difference across the listed row indices (all rows when the
// list is empty).  Shape or coefficient mismatches count as infinite.
double max_row_difference(const HalfSpaceSystem& a, const HalfSpaceSystem& b,
                          std::vector<std::size_t> rows = {}) {
    if (a.variables() != b.variables() || a.row_count() != b.row_count())
        return kInf;
    if (rows.empty())
        for (std::size_t i = 0; i < a.row_count(); ++i) rows.push_back(i);
    double worst = 0.0;
    for (std::size_t i : rows) {
        const auto& ra = a.rows()[i];
        const auto& rb = b.rows()[i];
        for (std::size_t k = 0; k < ra.coeffs.size(); ++k)
            if (ra.coeffs[k] != rb.coeffs[k]) return kInf;
        worst = std::max(worst, std::abs(ra.rhs.convert_to<double>() -
                                         rb.rhs.convert_to<double>()));
    }
    return worst;
}

// Largest lhs - rhs over all (vertex, row) pairs; positive means some
// vertex of the region lies outside the system by that margin.  Variables
// are matched by name.
double worst_violation(const Region2D& region, const HalfSpaceSystem& sys) {
    const auto& rvars = region.inequalities.variables();
    std::vector<std::size_t> pos(sys.variables().size());
    for (std::size_t k = 0; k < sys.variables().size(); ++k)
        pos[k] = static_cast<std::size_t>(
            std::find(rvars.begin(), rvars.end(), sys.variables()[k]) - rvars.begin());
    double worst = -kInf;
    for (const auto& v : region.vertices) {
        for (const auto& row : sys.rows()) {
            double lhs = 0.0;
            for (std::size_t k = 0; k < pos.size(); ++k)
                lhs += row.coeffs[k].convert_to<double>() * v[pos[k]];
            worst = std::max(worst, lhs - row.rhs.convert_to<double>());
        }
    }
    return worst;
}

// Copy of `sys` with the first right-hand side shifted down by `delta`.
HalfSpaceSystem offset_first_rhs(const HalfSpaceSystem& sys, double delta) {
    HalfSpaceSystem out(sys.variables(), sys.implicit_nonneg());
    for (std::size_t i = 0; i < sys.row_count(); ++i) {
        const auto& r = sys.rows()[i];
        Rational rhs = r.rhs;
        if (i == 0) rhs -= rationalize(delta);
        out.add_row(r.coeffs, rhs);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed form vs generic evaluator checks.

VerifyCheck check_inner1_dueck_grid(const VerifyOptions& opts) {
    VerifyCheck c;
    c.name = "inner1-dueck-grid";
    c.tolerance = 1e-9;
    const double levels[] = {0.05, 0.25, 0.45};
    int points = 0;
    double worst = 0.0;
    for (DueckNoiseCase noise : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2})
        for (double p : levels)
            for (double q : levels)
                for (double r : levels) {
                    DueckParams dp;
                    dp.noise_case = noise;
                    dp.p = p;
                    dp.q = q;
                    dp.r = r;
                    HalfSpaceSystem closed = dueck_closed_inner1(dp);
                    if (opts.inner1_perturbation != 0.0)
                        closed = offset_first_rhs(closed, opts.inner1_perturbation);
                    HalfSpaceSystem generic = region_inner1(
                        dueck_distribution(dp, DueckCommonPart::z0_z1, false));
                    worst = std::max(worst, max_row_difference(closed, generic));
                    ++points;
                }
    c.max_deviation = worst;
    c.pass = worst <= c.tolerance;
    c.detail = "closed-form feedback inner bound matches the generic evaluator on " +
               std::to_string(points) + " noise points across both noise structures";
    return c;
}

VerifyCheck check_inner2_dueck_grid(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "inner2-dueck-grid";
    c.tolerance = 1e-9;
    const double levels[] = {0.05, 0.25, 0.45};
    int points = 0;
    double worst = 0.0;
    for (DueckNoiseCase noise : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2})
        for (double p : levels)
            for (double q : levels)
                for (double r : levels) {
                    DueckParams dp;
                    dp.noise_case = noise;
                    dp.p = p;
                    dp.q = q;
                    dp.r = r;
                    HalfSpaceSystem closed = dueck_closed_inner2(dp);
                    // The closed form quotes the better of the two exposable
                    // noise pairs per plain row: the first-link pair attains
                    // the R1 bound, the second-link pair the R2 bound, and
                    // the key and sum rows agree under either choice.
                    HalfSpaceSystem first = region_inner2(
                        dueck_distribution(dp, DueckCommonPart::z0_z1, true));
                    HalfSpaceSystem second = region_inner2(
                        dueck_distribution(dp, DueckCommonPart::z0_z2, true));
                    worst = std::max(worst, max_row_difference(closed, first, {0, 1, 2, 4}));
                    worst = std::max(worst, max_row_difference(closed, second, {0, 1, 3, 4}));
                    ++points;
                }
    c.max_deviation = worst;
    c.pass = worst <= c.tolerance;
    c.detail = "closed-form hybrid inner bound matches the generic evaluator on " +
               std::to_string(points) + " noise points (both exposable noise pairs)";
    return c;
}

VerifyCheck check_blackwell_inner1_grid(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "blackwell-inner1-grid";
    c.tolerance = 1e-9;
    const double ps[] = {0.0, 0.05, 0.1};
    const std::array<double, 2> weights[] = {{1.0 / 3.0, 1.0 / 3.0},
                                             {0.2, 0.3},
                                             {0.4, 0.15},
                                             {0.25, 0.5},
                                             {0.5, 0.25}};
    int points = 0;
    double worst = 0.0;
    for (double p : ps)
        for (const auto& w : weights) {
            BlackwellParams bp;
            bp.p = p;
            bp.alpha = w[0];
            bp.beta = w[1];
            HalfSpaceSystem closed = blackwell_closed_inner1(bp);
            HalfSpaceSystem generic = region_inner1(blackwell_distribution(bp));
            worst = std::max(worst, max_row_difference(closed, generic));
            ++points;
        }
    c.max_deviation = worst;
    c.pass = worst <= c.tolerance;
    c.detail = "deterministic-sum-channel closed form matches the generic evaluator on " +
               std::to_string(points) + " weight points";
    return c;
}

// ---------------------------------------------------------------------------
// Region geometry checks on the three-noise broadcast family.

VerifyCheck check_dueck_chain_weak_noise(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "dueck-chain-weak-noise";
    c.tolerance = 1e-9;
    DueckParams dp;  // defaults: chained noise, p = q = r = 0.05
    HalfSpaceSystem s_nofb = dueck_closed_nofeedback(dp);
    HalfSpaceSystem s_in1 = dueck_closed_inner1(dp);
    HalfSpaceSystem s_in2 = dueck_closed_inner2(dp);
    HalfSpaceSystem s_out = dueck_closed_outer(dp);
    Region2D r_nofb = vertices2d(s_nofb);
    Region2D r_in1 = vertices2d(s_in1);
    Region2D r_in2 = vertices2d(s_in2);
    Region2D r_out = vertices2d(s_out);
    double inclusion = std::max({0.0, worst_violation(r_nofb, s_in1),
                                 worst_violation(r_in1, s_in2),
                                 worst_violation(r_in2, s_out)});
    double strict = std::min({worst_violation(r_in1, s_nofb),
                              worst_violation(r_in2, s_in1),
                              worst_violation(r_out, s_in2)});
    c.max_deviation = inclusion;
    c.pass = inclusion <= c.tolerance && strict >= 1e-3;
    c.detail = "strict chain no-feedback < inner-1 < inner-2 < outer at weak noise; "
               "smallest strict gap " + fmt(strict) + " bits";
    return c;
}

VerifyCheck check_dueck_case1(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "dueck-case1-inner2-meets-outer";
    c.tolerance = 1e-9;
    DueckParams dp;  // chained noise
    dp.p = 0.25;
    dp.q = 0.2;
    dp.r = 0.3;
    HalfSpaceSystem s_in1 = dueck_closed_inner1(dp);
    HalfSpaceSystem s_in2 = dueck_closed_inner2(dp);
    HalfSpaceSystem s_out = dueck_closed_outer(dp);
    Region2D r_in1 = vertices2d(s_in1);
    Region2D r_in2 = vertices2d(s_in2);
    Region2D r_out = vertices2d(s_out);
    double equality = std::max({0.0, worst_violation(r_in2, s_out),
                                worst_violation(r_out, s_in2),
                                worst_violation(r_in1, s_in2)});
    double strict = worst_violation(r_in2, s_in1);
    c.max_deviation = equality;
    c.pass = equality <= c.tolerance && strict >= 1e-3;
    c.detail = "hybrid inner bound meets the outer bound (max sum rate " +
               fmt(max_sum_rate(s_out)) + ") while the first inner bound stays " +
               "strictly inside (max sum rate " + fmt(max_sum_rate(s_in1)) + ")";
    return c;
}

VerifyCheck check_dueck_case2(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "dueck-case2-bounds-coincide";
    c.tolerance = 1e-9;
    DueckParams dp;
    dp.noise_case = DueckNoiseCase::z1_z0_z2;  // forked noise
    dp.p = 0.25;
    dp.q = 0.2;
    dp.r = 0.3;
    HalfSpaceSystem s_in1 = dueck_closed_inner1(dp);
    HalfSpaceSystem s_in2 = dueck_closed_inner2(dp);
    HalfSpaceSystem s_out = dueck_closed_outer(dp);
    Region2D r_in1 = vertices2d(s_in1);
    Region2D r_in2 = vertices2d(s_in2);
    Region2D r_out = vertices2d(s_out);
    double dev = std::max({0.0, worst_violation(r_in1, s_in2),
                           worst_violation(r_in2, s_in1),
                           worst_violation(r_in2, s_out),
                           worst_violation(r_out, s_in2)});
    c.max_deviation = dev;
    c.pass = dev <= c.tolerance;
    c.detail = "both inner bounds and the outer bound describe the same region "
               "(max sum rate " + fmt(max_sum_rate(s_out)) + ")";
    return c;
}

// ---------------------------------------------------------------------------
// Source-coding region vs split-rate oracle.

// Two uniform source bits form X; each receiver observes one bit through
// its own binary symmetric noise, and the three descriptions carry the
// parity and the two bits through further independent noises.
JointPmf coded_side_info_pmf() {
    const double e1 = 0.1, e2 = 0.2, f0 = 0.05, f1 = 0.1, f2 = 0.15;
    auto bp = [](int bit, double one) { return bit ? one : 1.0 - one; };
    std::vector<Alphabet> vars = {{"V0", 2}, {"V1", 2}, {"V2", 2},
                                  {"X", 4},  {"Y1", 2}, {"Y2", 2}};
    std::vector<double> table(128, 0.0);
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int n1 = 0; n1 < 2; ++n1)
                for (int n2 = 0; n2 < 2; ++n2)
                    for (int m0 = 0; m0 < 2; ++m0)
                        for (int m1 = 0; m1 < 2; ++m1)
                            for (int m2 = 0; m2 < 2; ++m2) {
                                double prob = 0.25 * bp(n1, e1) * bp(n2, e2) *
                                              bp(m0, f0) * bp(m1, f1) * bp(m2, f2);
                                int x = b1 * 2 + b2;
                                int y1 = b1 ^ n1;
                                int y2 = b2 ^ n2;
                                int v0 = (b1 ^ b2) ^ m0;
                                int v1 = b1 ^ m1;
                                int v2 = b2 ^ m2;
                                std::size_t cell =
                                    ((((static_cast<std::size_t>(v0) * 2 + v1) * 2 + v2) * 4 +
                                      x) * 2 + y1) * 2 + y2;
                                table[cell] += prob;
                            }
    return JointPmf(std::move(vars), std::move(table));
}

// Independent description of the source-coding region: every link rate is
// split into an explicit share and a binned share recovered from receiver
// side information, giving a 13-variable system whose exact projection to
// (R0, R1, R2) must coincide with the direct three-row region.
HalfSpaceSystem split_rate_oracle(const JointPmf& pmf) {
    auto mi = [&](const std::vector<std::string>& a, const std::vector<std::string>& b,
                  const std::vector<std::string>& cond) {
        return cond_mutual_info(pmf, a, b, cond);
    };
    double need0 = mi({"X"}, {"V0"}, {});
    double need1 = mi({"V1"}, {"X", "V0"}, {});
    double need2 = mi({"V2"}, {"X", "V0"}, {});
    double side1 = mi({"V1"}, {"V0", "Y1"}, {});
    double side2 = mi({"V2"}, {"V0", "Y2"}, {});
    double common1 = mi({"V0"}, {"Y1"}, {});
    double common2 = mi({"V0"}, {"Y2"}, {});

    HalfSpaceSystem sys({"R0", "R1", "R2", "R00", "R01", "R02", "R10", "R11",
                         "R20", "R22", "Rp0", "Rp1", "Rp2"},
                        true);
    auto row = [&](std::initializer_list<std::pair<const char*, long>> terms,
                   double rhs) {
        LinearInequality ineq;
        for (const auto& t : terms) ineq.coeffs[t.first] = Rational(t.second);
        ineq.rhs = rationalize(rhs);
        sys.add(ineq);
    };
    // Description budgets: the announced share plus the binning slack must
    // cover each description's information content.
    row({{"Rp0", -1}, {"R00", -1}}, -need0);
    row({{"Rp1", -1}, {"R01", -1}, {"R11", -1}}, -need1);
    row({{"Rp2", -1}, {"R02", -1}, {"R22", -1}}, -need2);
    // Binning slack each receiver can recover from what it already has.
    row({{"Rp1", 1}}, side1);
    row({{"Rp2", 1}}, side2);
    row({{"Rp0", 1}, {"Rp1", 1}, {"R10", -1}}, common1 + side1);
    row({{"Rp0", 1}, {"Rp2", 1}, {"R20", -1}}, common2 + side2);
    // Link rates are the sums of their shares (two inequalities each).
    row({{"R0", 1}, {"R00", -1}, {"R01", -1}, {"R02", -1}}, 0.0);
    row({{"R0", -1}, {"R00", 1}, {"R01", 1}, {"R02", 1}}, 0.0);
    row({{"R1", 1}, {"R10", -1}, {"R11", -1}}, 0.0);
    row({{"R1", -1}, {"R10", 1}, {"R11", 1}}, 0.0);
    row({{"R2", 1}, {"R20", -1}, {"R22", -1}}, 0.0);
    row({{"R2", -1}, {"R20", 1}, {"R22", 1}}, 0.0);
    return sys;
}

VerifyCheck check_wynerziv_projection(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "wynerziv-projection";
    c.tolerance = 0.0;
    JointPmf pmf = coded_side_info_pmf();
    HalfSpaceSystem direct = region_wynerziv(WynerZivDistribution(pmf));
    HalfSpaceSystem oracle = split_rate_oracle(pmf);
    HalfSpaceSystem projected = fme_eliminate(
        oracle, {"R00", "R01", "R02", "R10", "R11", "R20", "R22", "Rp0", "Rp1", "Rp2"});
    int bad = membership_disagreements(projected, direct, {0.0, 0.0, 0.0},
                                       {3.0, 3.0, 3.0}, 10000);
    c.max_deviation = static_cast<double>(bad);
    c.pass = bad == 0;
    c.detail = "13-variable split-rate oracle projected to (R0, R1, R2) agrees with "
               "the direct region on 10000 sample points (" + std::to_string(bad) +
               " disagreements, projected system has " +
               std::to_string(projected.row_count()) + " rows)";
    return c;
}

// ---------------------------------------------------------------------------
// Degenerate-extension collapse on random schemes.

// Random product-form scheme Q(2), U1(2), U2(2), X(3), Y1(2), Y2(2) built
// from independently drawn conditional tables, so the channel condition
// holds by construction.
JointPmf random_product_scheme(CounterRng& rng) {
    auto fill = [&](std::vector<double>& block) {
        double total = 0.0;
        for (auto& v : block) {
            v = rng.next_unit() + 0.1;
            total += v;
        }
        for (auto& v : block) v /= total;
    };
    std::vector<double> pq(2);
    fill(pq);
    std::array<std::vector<double>, 2> puu;
    for (auto& b : puu) {
        b.resize(4);
        fill(b);
    }
    std::array<std::vector<double>, 4> px;
    for (auto& b : px) {
        b.resize(3);
        fill(b);
    }
    std::array<std::vector<double>, 3> pyy;
    for (auto& b : pyy) {
        b.resize(4);
        fill(b);
    }
    std::vector<Alphabet> vars = {{"Q", 2},  {"U1", 2}, {"U2", 2},
                                  {"X", 3},  {"Y1", 2}, {"Y2", 2}};
    std::vector<double> table(96);
    std::size_t cell = 0;
    for (int q = 0; q < 2; ++q)
        for (int u1 = 0; u1 < 2; ++u1)
            for (int u2 = 0; u2 < 2; ++u2)
                for (int x = 0; x < 3; ++x)
                    for (int yy = 0; yy < 4; ++yy)
                        table[cell++] = pq[static_cast<std::size_t>(q)] *
                                        puu[static_cast<std::size_t>(q)]
                                           [static_cast<std::size_t>(u1 * 2 + u2)] *
                                        px[static_cast<std::size_t>(u1 * 2 + u2)]
                                          [static_cast<std::size_t>(x)] *
                                        pyy[static_cast<std::size_t>(x)]
                                           [static_cast<std::size_t>(yy)];
    return JointPmf(std::move(vars), std::move(table));
}

VerifyCheck check_constant_extension_collapse(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "constant-extension-collapse";
    c.tolerance = 1e-9;
    CounterRng rng(1234567);
    double worst = 0.0;
    const int schemes = 20;
    for (int t = 0; t < schemes; ++t) {
        JointPmf base = random_product_scheme(rng);
        std::vector<Alphabet> ext_vars = base.variables();
        ext_vars.push_back({"V0", 1});
        ext_vars.push_back({"V1", 1});
        ext_vars.push_back({"V2", 1});
        JointPmf ext(std::move(ext_vars), base.table());
        SchemeDistribution dist(base, std::move(ext));
        worst = std::max(worst,
                         max_row_difference(region_inner2(dist), region_inner1(dist)));
    }
    c.max_deviation = worst;
    c.pass = worst <= c.tolerance;
    c.detail = "with single-valued feedback descriptions the hybrid inner bound "
               "collapses to the plain one on " + std::to_string(schemes) +
               " random schemes";
    return c;
}

// ---------------------------------------------------------------------------
// Simulation identity checks.

VerifyCheck check_key_extraction_independent(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "key-extraction-independent";
    c.tolerance = 1e-9;
    KeySimConfig cfg;
    cfg.channel = uniform_independent_channel();
    cfg.blocklength = 6;
    cfg.rate = 0.5;
    cfg.seed = 7;
    KeySimReport par = run_key_extraction(cfg);
    KeySimReport ser = run_key_extraction_serial(cfg);
    bool identical = par.gamma == ser.gamma && par.key_entropy == ser.key_entropy &&
                     par.conditional_key_entropy == ser.conditional_key_entropy &&
                     par.leakage == ser.leakage &&
                     par.total_variation == ser.total_variation &&
                     par.normalized_entropy == ser.normalized_entropy;
    double log_gamma = std::log2(static_cast<double>(par.gamma));
    c.max_deviation = std::abs(par.leakage);
    c.pass = identical && std::abs(par.leakage) <= c.tolerance &&
             par.conditional_key_entropy <= log_gamma + 1e-9 &&
             par.conditional_key_entropy >= 0.9 * log_gamma;
    c.detail = "independent observations leak nothing: H(K) = " + fmt(par.key_entropy) +
               ", H(K|Y2^N) = " + fmt(par.conditional_key_entropy) +
               " of " + fmt(log_gamma) + " bits; serial and parallel runs " +
               (identical ? "identical" : "DIFFER");
    return c;
}

VerifyCheck check_otp_roundtrip(const VerifyOptions&) {
    VerifyCheck c;
    c.name = "otp-roundtrip";
    c.tolerance = 0.05;
    const int message_bits = 6;
    const int trials = 500;
    KeySimConfig cfg;
    cfg.channel = uniform_independent_channel();
    cfg.blocklength = 8;
    cfg.rate = 0.75;
    cfg.seed = 5;
    OtpReport hidden = run_otp_roundtrip(cfg, message_bits, trials);
    cfg.channel = identical_channel();
    OtpReport exposed = run_otp_roundtrip(cfg, message_bits, trials);
    double per_bit = hidden.message_leakage / message_bits;
    c.max_deviation = per_bit;
    c.pass = hidden.decode_ok && exposed.decode_ok && per_bit <= c.tolerance &&
             exposed.message_leakage == static_cast<double>(message_bits);
    c.detail = "all pads decode; leakage " + fmt(per_bit) +
               " bits per message bit with independent observations, " +
               fmt(exposed.message_leakage) + " of " + std::to_string(message_bits) +
               " bits when the eavesdropper sees the key source exactly";
    return c;
}

// ---------------------------------------------------------------------------

using CheckFn = VerifyCheck (*)(const VerifyOptions&);

struct NamedCheck {
    const char* name;
    CheckFn fn;
};

const NamedCheck kChecks[] = {
    {"inner1-dueck-grid", check_inner1_dueck_grid},
    {"inner2-dueck-grid", check_inner2_dueck_grid},
    {"dueck-chain-weak-noise", check_dueck_chain_weak_noise},
    {"dueck-case1-inner2-meets-outer", check_dueck_case1},
    {"dueck-case2-bounds-coincide", check_dueck_case2},
    {"blackwell-inner1-grid", check_blackwell_inner1_grid},
    {"wynerziv-projection", check_wynerziv_projection},
    {"constant-extension-collapse", check_constant_extension_collapse},
    {"key-extraction-independent", check_key_extraction_independent},
    {"otp-roundtrip", check_otp_roundtrip},
};

}  // namespace

std::vector<std::string> verification_check_names() {
    std::vector<std::string> names;
    for (const auto& entry : kChecks) names.push_back(entry.name);
    return names;
}

std::vector<VerifyCheck> run_verification(const VerifyOptions& options) {
    std::vector<VerifyCheck> results;
    bool found = options.only.empty();
    for (const auto& entry : kChecks) {
        if (!options.only.empty() && options.only != entry.name) continue;
        found = true;
        results.push_back(entry.fn(options));
    }
    if (!found) {
        std::string msg = "unknown check '" + options.only + "'; valid names:";
        for (const auto& entry : kChecks) msg += std::string(" ") + entry.name;
        throw ArgumentError(msg);
    }
    return results;
}

}  // namespace secrate
