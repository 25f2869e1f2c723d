// Tests for the two worked channel examples: constructors, closed-form
// regions, cross-validation against the generic evaluators, and sweeps.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include <secrate/channels.hpp>
#include <secrate/errors.hpp>
#include <secrate/polytope.hpp>
#include <secrate/prob.hpp>
#include <secrate/regions.hpp>

using namespace secrate;

namespace {

double rhs_of(const HalfSpaceSystem& sys, std::size_t i) {
    return sys.rows()[i].rhs.convert_to<double>();
}

// Local entropy oracle, independent of the library helpers.
double href(double p) {
    double out = 0.0;
    if (p > 0.0) out -= p * std::log2(p);
    if (1.0 - p > 0.0) out -= (1.0 - p) * std::log2(1.0 - p);
    return out;
}

double conv(double a, double b) { return a + b - 2.0 * a * b; }

void check_rows_match(const HalfSpaceSystem& a, const HalfSpaceSystem& b,
                      const std::vector<std::size_t>& rows_a,
                      const std::vector<std::size_t>& rows_b,
                      double tol = 1e-9) {
    REQUIRE(rows_a.size() == rows_b.size());
    for (std::size_t k = 0; k < rows_a.size(); ++k) {
        CHECK(a.rows()[rows_a[k]].coeffs == b.rows()[rows_b[k]].coeffs);
        CHECK(rhs_of(a, rows_a[k]) ==
              doctest::Approx(rhs_of(b, rows_b[k])).epsilon(tol));
    }
}

DueckParams dueck(DueckNoiseCase nc, double p, double q, double r) {
    DueckParams dp;
    dp.noise_case = nc;
    dp.p = p;
    dp.q = q;
    dp.r = r;
    return dp;
}

BlackwellParams blackwell(double p, double alpha, double beta) {
    BlackwellParams bp;
    bp.p = p;
    bp.alpha = alpha;
    bp.beta = beta;
    return bp;
}

}  // namespace

TEST_CASE("parameter validation") {
    DueckParams dp;
    dp.p = 0.6;
    CHECK_THROWS_AS(dp.validate(), ArgumentError);
    dp.p = 0.05;
    dp.alpha1 = 1.5;
    CHECK_THROWS_AS(dp.validate(), ArgumentError);
    dp.alpha1 = 0.5;
    CHECK_NOTHROW(dp.validate());

    BlackwellParams bp;
    bp.p = 0.51;
    CHECK_THROWS_AS(bp.validate(), ArgumentError);
    bp.p = 0.1;
    bp.alpha = 0.7;
    bp.beta = 0.7;
    CHECK_THROWS_AS(bp.validate(), ArgumentError);
    bp.alpha = bp.beta = 0.2;
    bp.alpha1 = 0.9;
    bp.alpha2 = 0.3;
    CHECK_THROWS_AS(bp.validate(), ArgumentError);
}

TEST_CASE("first example construction is a valid scheme") {
    for (auto nc : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2}) {
        for (auto cp : {DueckCommonPart::z0_z1, DueckCommonPart::z0_z2}) {
            SchemeDistribution dist =
                dueck_distribution(dueck(nc, 0.05, 0.05, 0.05), cp, true);
            CHECK(dist.has_extension());
            CHECK(verify_factorization(dist).empty());
        }
    }
    // The first output's leading bit is unbiased at alpha1 = 1/2.
    SchemeDistribution dist = dueck_distribution(
        dueck(DueckNoiseCase::z0_z1_z2, 0.05, 0.05, 0.05),
        DueckCommonPart::z0_z1, false);
    JointPmf y1 = marginalize(dist.base(), {"Y1"});
    CHECK(y1.table()[2] + y1.table()[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("noiseless first example achieves the unit square") {
    SchemeDistribution dist = dueck_distribution(
        dueck(DueckNoiseCase::z0_z1_z2, 0.0, 0.0, 0.0),
        DueckCommonPart::z0_z1, false);
    Region2D region = vertices2d(region_inner1(dist));
    REQUIRE(region.vertices.size() == 4);
    CHECK(region.vertices[2][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(region.vertices[2][1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed forms for the first example, chain noise") {
    DueckParams dp = dueck(DueckNoiseCase::z0_z1_z2, 0.05, 0.05, 0.05);

    HalfSpaceSystem in1 = dueck_closed_inner1(dp);
    REQUIRE(in1.row_count() == 5);
    CHECK(rhs_of(in1, 0) == doctest::Approx(0.833455).epsilon(1e-6));
    CHECK(rhs_of(in1, 0) ==
          doctest::Approx(1.0 - href(0.095) + href(0.05)).epsilon(1e-9));
    CHECK(rhs_of(in1, 1) == doctest::Approx(rhs_of(in1, 0)).epsilon(1e-10));
    CHECK(rhs_of(in1, 2) == doctest::Approx(1.427206).epsilon(1e-6));
    CHECK(rhs_of(in1, 4) == doctest::Approx(1.974264).epsilon(1e-6));
    CHECK(rhs_of(in1, 4) ==
          doctest::Approx(3.0 - 2.0 * href(0.05) - href(0.095)).epsilon(1e-9));

    HalfSpaceSystem in2 = dueck_closed_inner2(dp);
    CHECK(rhs_of(in2, 0) == doctest::Approx(1.119852).epsilon(1e-6));
    CHECK(rhs_of(in2, 0) ==
          doctest::Approx(1.0 + 2.0 * href(0.05) - href(0.095)).epsilon(1e-9));
    CHECK(rhs_of(in2, 4) == doctest::Approx(2.140809).epsilon(1e-6));

    HalfSpaceSystem nofb = dueck_closed_nofeedback(dp);
    CHECK(rhs_of(nofb, 0) == doctest::Approx(0.713603).epsilon(1e-6));
    CHECK(rhs_of(nofb, 1) == doctest::Approx(0.547058).epsilon(1e-6));

    DueckParams hard = dueck(DueckNoiseCase::z0_z1_z2, 0.25, 0.2, 0.3);
    HalfSpaceSystem outer = dueck_closed_outer(hard);
    REQUIRE(outer.row_count() == 3);
    CHECK(rhs_of(outer, 0) == doctest::Approx(0.466794).epsilon(1e-6));
    CHECK(rhs_of(outer, 1) == doctest::Approx(0.230680).epsilon(1e-6));
    CHECK(rhs_of(outer, 2) == doctest::Approx(0.585503).epsilon(1e-6));
    CHECK(max_sum_rate(outer) == doctest::Approx(0.585503).epsilon(1e-6));
}

TEST_CASE("closed forms for the first example, fork noise") {
    DueckParams dp = dueck(DueckNoiseCase::z1_z0_z2, 0.25, 0.2, 0.3);
    HalfSpaceSystem in1 = dueck_closed_inner1(dp);
    // With independent per-user noise the key terms reach a full bit.
    CHECK(rhs_of(in1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rhs_of(in1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rhs_of(in1, 2) == doctest::Approx(0.466794).epsilon(1e-6));
    CHECK(rhs_of(in1, 3) == doctest::Approx(0.307431).epsilon(1e-6));
    CHECK(rhs_of(in1, 4) == doctest::Approx(0.585503).epsilon(1e-6));

    DueckParams weak = dueck(DueckNoiseCase::z1_z0_z2, 0.05, 0.05, 0.05);
    CHECK(rhs_of(dueck_closed_inner2(weak), 0) ==
          doctest::Approx(1.286397).epsilon(1e-6));
    CHECK(rhs_of(dueck_closed_outer(weak), 1) ==
          doctest::Approx(1.427206).epsilon(1e-6));

    DueckParams noiseless = dueck(DueckNoiseCase::z1_z0_z2, 0.0, 0.0, 0.0);
    HalfSpaceSystem nofb = dueck_closed_nofeedback(noiseless);
    CHECK(rhs_of(nofb, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rhs_of(nofb, 1) == doctest::Approx(1.0).epsilon(1e-12));

    DueckParams worst = dueck(DueckNoiseCase::z1_z0_z2, 0.0, 0.5, 0.5);
    Region2D dead = vertices2d(dueck_closed_nofeedback(worst));
    REQUIRE(dead.vertices.size() == 1);
    CHECK(dead.vertices[0][0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed forms reject unsupported input biases") {
    DueckParams dp;
    dp.alpha2 = 0.4;
    CHECK_THROWS_AS(dueck_closed_inner1(dp), ArgumentError);
    CHECK_THROWS_AS(dueck_closed_inner2(dp), ArgumentError);
    CHECK_THROWS_AS(dueck_closed_outer(dp), ArgumentError);
    CHECK_THROWS_AS(dueck_closed_nofeedback(dp), ArgumentError);
}

TEST_CASE("generic evaluators reproduce the closed forms") {
    for (auto nc : {DueckNoiseCase::z0_z1_z2, DueckNoiseCase::z1_z0_z2}) {
        for (auto [p, q, r] : {std::array<double, 3>{0.05, 0.05, 0.05},
                               std::array<double, 3>{0.25, 0.2, 0.3}}) {
            DueckParams dp = dueck(nc, p, q, r);
            HalfSpaceSystem generic = region_inner1(
                dueck_distribution(dp, DueckCommonPart::z0_z1, false));
            check_rows_match(dueck_closed_inner1(dp), generic,
                             {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
        }
    }
}

TEST_CASE("hybrid evaluator reproduces the closed form per common part") {
    DueckParams dp = dueck(DueckNoiseCase::z0_z1_z2, 0.05, 0.05, 0.05);
    HalfSpaceSystem closed = dueck_closed_inner2(dp);
    // The first common-part choice certifies user 1's row, the second
    // certifies user 2's; shared rows agree under both.
    HalfSpaceSystem g1 = region_inner2(
        dueck_distribution(dp, DueckCommonPart::z0_z1, true));
    check_rows_match(closed, g1, {0, 1, 2, 4}, {0, 1, 2, 4});
    HalfSpaceSystem g2 = region_inner2(
        dueck_distribution(dp, DueckCommonPart::z0_z2, true));
    check_rows_match(closed, g2, {0, 1, 3, 4}, {0, 1, 3, 4});
}

TEST_CASE("bound coincidence at the published parameter points") {
    DueckParams meet = dueck(DueckNoiseCase::z0_z1_z2, 0.25, 0.2, 0.3);
    Region2D in2 = vertices2d(dueck_closed_inner2(meet));
    Region2D outer = vertices2d(dueck_closed_outer(meet));
    CHECK(region_equal(in2, outer, 1e-9));
    CHECK_FALSE(region_equal(vertices2d(dueck_closed_inner1(meet)), outer,
                             1e-9));

    DueckParams weak = dueck(DueckNoiseCase::z0_z1_z2, 0.05, 0.05, 0.05);
    CHECK_FALSE(region_equal(vertices2d(dueck_closed_inner2(weak)),
                             vertices2d(dueck_closed_outer(weak)), 1e-9));

    DueckParams fork = dueck(DueckNoiseCase::z1_z0_z2, 0.25, 0.2, 0.3);
    Region2D fin1 = vertices2d(dueck_closed_inner1(fork));
    Region2D fin2 = vertices2d(dueck_closed_inner2(fork));
    Region2D fout = vertices2d(dueck_closed_outer(fork));
    CHECK(region_equal(fin1, fin2, 1e-9));
    CHECK(region_equal(fin2, fout, 1e-9));
}

TEST_CASE("second example construction is a valid scheme") {
    BlackwellParams bp = blackwell(0.05, 1.0 / 3.0, 1.0 / 3.0);
    SchemeDistribution dist = blackwell_distribution(bp, true);
    CHECK(dist.has_extension());
    CHECK(verify_factorization(dist).empty());

    // The ternary channel input is uniform under the symmetric weights.
    JointPmf x = marginalize(dist.base(), {"X"});
    REQUIRE(x.cell_count() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(x.table()[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Degenerate weights make the two auxiliaries deterministic twins.
    SchemeDistribution det =
        blackwell_distribution(blackwell(0.1, 1.0, 0.0), false);
    CHECK(cond_mutual_info(det.base(), {"U1"}, {"U2"}, {"Q"}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("useless channel at p = 1/2 collapses every region") {
    BlackwellParams bp = blackwell(0.5, 1.0 / 3.0, 1.0 / 3.0);
    SchemeDistribution dist = blackwell_distribution(bp, false);
    Region2D generic = vertices2d(region_inner1(dist));
    REQUIRE(generic.vertices.size() == 1);
    CHECK(generic.vertices[0][0] == doctest::Approx(0.0).epsilon(1e-12));

    for (const HalfSpaceSystem& sys :
         {blackwell_closed_inner1(bp), blackwell_closed_inner2(bp),
          blackwell_closed_outer(bp), blackwell_closed_nofeedback(bp)}) {
        Region2D region = vertices2d(sys);
        REQUIRE(region.vertices.size() == 1);
        CHECK(region.vertices[0][0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(region.vertices[0][1] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("noiseless symmetric second example has exact caps") {
    BlackwellParams bp = blackwell(0.0, 1.0 / 3.0, 1.0 / 3.0);
    double h3 = std::log2(3.0);

    HalfSpaceSystem in1 = blackwell_closed_inner1(bp);
    CHECK(rhs_of(in1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(rhs_of(in1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(rhs_of(in1, 2) == doctest::Approx(href(1.0 / 3.0)).epsilon(1e-9));
    CHECK(rhs_of(in1, 4) == doctest::Approx(h3).epsilon(1e-9));

    HalfSpaceSystem in2 = blackwell_closed_inner2(bp);
    CHECK(rhs_of(in2, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    BlackwellParams op = blackwell(0.0, 1.0 / 3.0, 1.0 / 3.0);
    op.alpha1 = op.alpha2 = 1.0 / 3.0;
    HalfSpaceSystem outer = blackwell_closed_outer(op);
    REQUIRE(outer.row_count() == 2);
    CHECK(rhs_of(outer, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(rhs_of(outer, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("degenerate auxiliary weights collapse the achievable regions") {
    BlackwellParams bp = blackwell(0.1, 0.0, 0.0);
    for (const HalfSpaceSystem& sys :
         {blackwell_closed_inner1(bp), blackwell_closed_inner2(bp),
          blackwell_closed_nofeedback(bp)}) {
        Region2D region = vertices2d(sys);
        REQUIRE(region.vertices.size() == 1);
        CHECK(region.vertices[0][0] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("generic evaluator matches the closed second-example forms") {
    for (auto [p, a, b] :
         {std::array<double, 3>{0.1, 1.0 / 3.0, 1.0 / 3.0},
          std::array<double, 3>{0.0, 0.2, 0.3},
          std::array<double, 3>{0.05, 0.4, 0.15}}) {
        BlackwellParams bp = blackwell(p, a, b);
        SchemeDistribution dist = blackwell_distribution(bp, false);
        check_rows_match(blackwell_closed_inner1(bp), region_inner1(dist),
                         {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
        check_rows_match(blackwell_closed_nofeedback(bp),
                         region_nofeedback(dist), {0, 1}, {0, 1});
    }
}

TEST_CASE("per-distribution outer rows respect simple information caps") {
    std::mt19937_64 rng(60601);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int it = 0; it < 50; ++it) {
        double a = unit(rng), b = unit(rng);
        if (a + b > 1.0) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        BlackwellParams bp = blackwell(0.5 * unit(rng), a, b);
        SchemeDistribution dist = blackwell_distribution(bp, false);
        HalfSpaceSystem outer = region_outer(dist);
        const JointPmf& pmf = dist.base();
        double cap1 = std::min(cond_mutual_info(pmf, {"X"}, {"Y1"}, {}),
                               cond_entropy(pmf, {"Y1"}, {"Y2"}));
        double cap2 = std::min(cond_mutual_info(pmf, {"X"}, {"Y2"}, {}),
                               cond_entropy(pmf, {"Y2"}, {"Y1"}));
        CHECK(rhs_of(outer, 0) <= cap1 + 1e-9);
        CHECK(rhs_of(outer, 1) <= cap2 + 1e-9);
    }
}

TEST_CASE("sum-rate sweep reproduces pinned anchor values") {
    auto rows = sweep_blackwell_sumrate({0.0, 0.02, 0.10, 0.12, 0.5}, 201);
    REQUIRE(rows.size() == 5);

    CHECK(rows[0].sum_inner1 == doctest::Approx(1.388452551386).epsilon(1e-8));
    CHECK(rows[0].sum_inner2 == doctest::Approx(1.388452551386).epsilon(1e-8));
    CHECK(rows[0].sum_outer == doctest::Approx(1.388452551386).epsilon(1e-8));
    CHECK(rows[0].sum_nofeedback ==
          doctest::Approx(1.388452551386).epsilon(1e-8));

    CHECK(rows[1].sum_inner1 == doctest::Approx(1.315651024268).epsilon(1e-8));
    CHECK(rows[1].sum_inner2 == doctest::Approx(1.304856734536).epsilon(1e-8));
    CHECK(rows[1].sum_outer == doctest::Approx(1.506786616).epsilon(1e-7));
    CHECK(rows[1].sum_nofeedback ==
          doctest::Approx(1.130734174).epsilon(1e-7));

    CHECK(rows[2].sum_inner1 == doctest::Approx(0.720202604424).epsilon(1e-8));
    CHECK(rows[2].sum_inner2 == doctest::Approx(0.123925292175).epsilon(1e-8));
    CHECK(rows[2].sum_outer == doctest::Approx(1.062008813).epsilon(1e-7));
    CHECK(rows[2].sum_nofeedback ==
          doctest::Approx(0.582554913).epsilon(1e-7));

    CHECK(rows[3].sum_inner2 == 0.0);
    CHECK(rows[4].sum_inner1 == 0.0);
    CHECK(rows[4].sum_inner2 == 0.0);
    CHECK(rows[4].sum_outer == 0.0);
    CHECK(rows[4].sum_nofeedback == 0.0);
}

TEST_CASE("the two feedback strategies trade places across noise levels") {
    auto rows = sweep_blackwell_sumrate({0.005, 0.015}, 201);
    CHECK(rows[0].sum_inner2 > rows[0].sum_inner1 + 1e-9);
    CHECK(rows[1].sum_inner1 > rows[1].sum_inner2 + 1e-9);
}

TEST_CASE("sweep validation and determinism") {
    CHECK_THROWS_AS(sweep_blackwell_sumrate({}, 201), ArgumentError);
    CHECK_THROWS_AS(sweep_blackwell_sumrate({0.6}, 201), ArgumentError);
    CHECK_THROWS_AS(sweep_blackwell_sumrate({0.1}, 1), ArgumentError);

    std::vector<double> grid{0.0, 0.1, 0.25, 0.4};
    auto par = sweep_blackwell_sumrate(grid, 41);
    auto ser = sweep_blackwell_sumrate_serial(grid, 41);
    REQUIRE(par.size() == ser.size());
    CHECK(std::memcmp(par.data(), ser.data(),
                      par.size() * sizeof(SweepRow)) == 0);
}

TEST_CASE("doubling the simplex resolution never loses sum rate") {
    std::vector<double> grid{0.05, 0.2};
    auto coarse = sweep_blackwell_sumrate(grid, 51);
    auto fine = sweep_blackwell_sumrate(grid, 101);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(fine[i].sum_inner1 >= coarse[i].sum_inner1 - 1e-12);
        CHECK(fine[i].sum_inner2 >= coarse[i].sum_inner2 - 1e-12);
        CHECK(fine[i].sum_outer >= coarse[i].sum_outer - 1e-12);
        CHECK(fine[i].sum_nofeedback >= coarse[i].sum_nofeedback - 1e-12);
    }
}

TEST_CASE("binary convolution shorthand stays consistent") {
    // Spot check the closed forms' shared arithmetic against the local
    // oracle at an asymmetric parameter point.
    DueckParams dp = dueck(DueckNoiseCase::z0_z1_z2, 0.25, 0.2, 0.3);
    HalfSpaceSystem in1 = dueck_closed_inner1(dp);
    CHECK(rhs_of(in1, 0) ==
          doctest::Approx(1.0 - href(conv(0.2, 0.3)) + href(0.3))
              .epsilon(1e-9));
    CHECK(rhs_of(in1, 4) ==
          doctest::Approx(3.0 - href(0.25) - href(0.2) - href(conv(0.2, 0.3)))
              .epsilon(1e-9));
}
