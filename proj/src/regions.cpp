#include "secrate/regions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace secrate {
namespace {

using Vars = std::vector<std::string>;

const Vars kBaseVars = {"Q", "U1", "U2", "X", "Y1", "Y2"};
const Vars kExtensionVars = {"V0", "V1", "V2"};

std::string describe_vars(const JointPmf& pmf) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < pmf.variable_count(); ++i) {
        if (i) out << ", ";
        out << pmf.variables()[i].name;
    }
    out << "}";
    return out.str();
}

void require_var_set(const JointPmf& pmf, const Vars& expected, const char* what) {
    std::set<std::string> have;
    for (const auto& v : pmf.variables()) have.insert(v.name);
    std::set<std::string> want(expected.begin(), expected.end());
    if (have != want)
        throw ModelError(std::string(what) + " must use variables exactly {Q, U1, U2, X, Y1, Y2}"
                         + std::string(expected.size() > 6 ? " plus {V0, V1, V2}" : "")
                         + ", got " + describe_vars(pmf));
}

// Fast per-cell lookup of a marginal's value at the coordinates a source
// cell projects to.
class MarginalLookup {
public:
    MarginalLookup(const JointPmf& source, Vars keep)
        : marginal_(marginalize(source, keep)) {
        std::size_t stride = 1;
        src_pos_.resize(keep.size());
        strides_.resize(keep.size());
        for (std::size_t i = keep.size(); i-- > 0;) {
            src_pos_[i] = source.index_of(keep[i]);
            strides_[i] = stride;
            stride *= static_cast<std::size_t>(marginal_.variables()[i].size);
        }
    }

    double at(const JointPmf& source, std::size_t cell) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < src_pos_.size(); ++i)
            idx += strides_[i] * static_cast<std::size_t>(source.coordinate(cell, src_pos_[i]));
        return marginal_.table()[idx];
    }

private:
    JointPmf marginal_;
    std::vector<std::size_t> src_pos_;
    std::vector<std::size_t> strides_;
};

double conditional(double joint, double given) {
    return given > kProbZeroTol ? joint / given : 0.0;
}

double pos(double x) { return x > 0.0 ? x : 0.0; }

// Builds a system over (R1, R2) from rows of (coeff_R1, coeff_R2, rhs);
// right-hand sides are clamped at zero and rationalized.
HalfSpaceSystem rate_pair_system(const std::vector<std::array<double, 3>>& rows) {
    HalfSpaceSystem sys({"R1", "R2"}, true);
    for (const auto& r : rows) {
        sys.add_row({Rational(static_cast<long>(r[0])), Rational(static_cast<long>(r[1]))},
                    rationalize(pos(r[2])));
    }
    return sys;
}

double mi(const JointPmf& p, const Vars& a, const Vars& b, const Vars& c = {}) {
    return cond_mutual_info(p, a, b, c);
}

double hc(const JointPmf& p, const Vars& a, const Vars& c) {
    return cond_entropy(p, a, c);
}

void require_valid(const SchemeDistribution& dist, const char* op) {
    auto violations = verify_factorization(dist);
    if (violations.empty()) return;
    std::ostringstream out;
    out << op << ": distribution violates ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << ", ";
        out << violations[i].condition << " (max deviation "
            << violations[i].magnitude << ")";
    }
    throw ModelError(out.str());
}

} // namespace

SchemeDistribution::SchemeDistribution(JointPmf base) : base_(std::move(base)) {
    validate();
}

SchemeDistribution::SchemeDistribution(JointPmf base, JointPmf extended)
    : base_(std::move(base)), extended_(std::move(extended)) {
    validate();
}

const JointPmf& SchemeDistribution::extended() const {
    if (!extended_)
        throw ModelError("this operation needs the extended distribution over (V0, V1, V2), "
                         "but the scheme carries only the base variables");
    return *extended_;
}

void SchemeDistribution::validate() const {
    require_var_set(base_, kBaseVars, "scheme base distribution");
    if (!extended_) return;
    Vars all = kBaseVars;
    all.insert(all.end(), kExtensionVars.begin(), kExtensionVars.end());
    require_var_set(*extended_, all, "scheme extended distribution");
    for (const auto& v : base_.variables()) {
        int ext_size = extended_->variables()[extended_->index_of(v.name)].size;
        if (ext_size != v.size)
            throw ModelError("alphabet size mismatch for " + v.name + ": base " +
                             std::to_string(v.size) + ", extended " + std::to_string(ext_size));
    }
}

WynerZivDistribution::WynerZivDistribution(JointPmf pmf) : pmf_(std::move(pmf)) {
    Vars expected = {"V0", "V1", "V2", "X", "Y1", "Y2"};
    std::set<std::string> have;
    for (const auto& v : pmf_.variables()) have.insert(v.name);
    if (have != std::set<std::string>(expected.begin(), expected.end()))
        throw ModelError("source-coding distribution must use variables exactly "
                         "{V0, V1, V2, X, Y1, Y2}, got " + describe_vars(pmf_));
}

std::vector<FactorizationViolation> verify_factorization(const SchemeDistribution& dist) {
    std::vector<FactorizationViolation> violations;

    // Channel condition: (Q,U1,U2) -> X -> (Y1,Y2), i.e. the cell mass must
    // equal P(q,u1,u2,x) * P(y1,y2|x).  X itself may be an arbitrary function
    // of (Q,U1,U2), so no factorization of P(q,u1,u2,x) is imposed.
    {
        const JointPmf& b = dist.base();
        MarginalLookup quux(b, {"Q", "U1", "U2", "X"});
        MarginalLookup x(b, {"X"});
        MarginalLookup xyy(b, {"X", "Y1", "Y2"});
        double worst = 0.0;
        for (std::size_t cell = 0; cell < b.cell_count(); ++cell) {
            double product = quux.at(b, cell)
                           * conditional(xyy.at(b, cell), x.at(b, cell));
            worst = std::max(worst, std::abs(b.table()[cell] - product));
        }
        if (worst > kFactorizationTol)
            violations.push_back({"channel_markov", worst});
    }

    if (dist.has_extension()) {
        const JointPmf& e = dist.extended();

        // Locality: P(v0,v1,v2 | q,u1,u2,x,y1,y2) must not depend on x.
        {
            MarginalLookup with_x(e, {"Q", "U1", "U2", "X", "Y1", "Y2"});
            MarginalLookup no_x_v(e, {"Q", "U1", "U2", "Y1", "Y2", "V0", "V1", "V2"});
            MarginalLookup no_x(e, {"Q", "U1", "U2", "Y1", "Y2"});
            double worst = 0.0;
            for (std::size_t cell = 0; cell < e.cell_count(); ++cell) {
                double base_mass = with_x.at(e, cell);
                if (base_mass <= kProbZeroTol) continue;
                double lhs = e.table()[cell] / base_mass;
                double rhs = conditional(no_x_v.at(e, cell), no_x.at(e, cell));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            if (worst > kFactorizationTol)
                violations.push_back({"extension_locality", worst});
        }

        // Marginal consistency: summing out (V0,V1,V2) recovers the base.
        {
            Vars base_order;
            for (const auto& v : dist.base().variables()) base_order.push_back(v.name);
            JointPmf projected = marginalize(e, base_order);
            double worst = 0.0;
            for (std::size_t cell = 0; cell < projected.cell_count(); ++cell)
                worst = std::max(worst,
                                 std::abs(projected.table()[cell] - dist.base().table()[cell]));
            if (worst > kFactorizationTol)
                violations.push_back({"extension_marginal", worst});
        }
    }

    return violations;
}

HalfSpaceSystem region_inner1(const SchemeDistribution& dist) {
    require_valid(dist, "region_inner1");
    const JointPmf& b = dist.base();

    double i_u1u2 = mi(b, {"U1"}, {"U2"}, {"Q"});
    double i_u1y1 = mi(b, {"U1"}, {"Y1"}, {"Q"});
    double i_u2y2 = mi(b, {"U2"}, {"Y2"}, {"Q"});
    double common = std::min(mi(b, {"Q"}, {"Y1"}), mi(b, {"Q"}, {"Y2"}));

    double key1 = pos(i_u1y1 - i_u1u2 - mi(b, {"U1"}, {"Y2"}, {"Q", "U2"}))
                + hc(b, {"Y1"}, {"Q", "U1", "U2", "Y2"});
    double key2 = pos(i_u2y2 - i_u1u2 - mi(b, {"U2"}, {"Y1"}, {"Q", "U1"}))
                + hc(b, {"Y2"}, {"Q", "U1", "U2", "Y1"});

    return rate_pair_system({{1, 0, key1},
                             {0, 1, key2},
                             {1, 0, common + i_u1y1},
                             {0, 1, common + i_u2y2},
                             {1, 1, common + i_u1y1 + i_u2y2 - i_u1u2}});
}

HalfSpaceSystem region_inner2(const SchemeDistribution& dist) {
    require_valid(dist, "region_inner2");
    const JointPmf& e = dist.extended();

    double i_u1u2 = mi(e, {"U1"}, {"U2"}, {"Q"});
    double i_u1yv1 = mi(e, {"U1"}, {"Y1", "V1"}, {"Q"});
    double i_u2yv2 = mi(e, {"U2"}, {"Y2", "V2"}, {"Q"});
    double common = std::min(mi(e, {"Q"}, {"Y1", "V1"}), mi(e, {"Q"}, {"Y2", "V2"}));

    double key1 = pos(i_u1yv1 - i_u1u2 - mi(e, {"U1"}, {"Y2", "V2"}, {"Q", "U2"}))
                + hc(e, {"Y1"}, {"Q", "U1", "U2", "Y2", "V2"});
    double key2 = pos(i_u2yv2 - i_u1u2 - mi(e, {"U2"}, {"Y1", "V1"}, {"Q", "U1"}))
                + hc(e, {"Y2"}, {"Q", "U1", "U2", "Y1", "V1"});

    double leak1 = mi(e, {"V0", "V1"}, {"Q", "U1", "U2", "Y2"}, {"Y1"});
    double leak2 = mi(e, {"V0", "V2"}, {"Q", "U1", "U2", "Y1"}, {"Y2"});

    double refine1 = mi(e, {"V1"}, {"Q", "U1", "U2", "Y2"}, {"Y1", "V0"});
    double refine2 = mi(e, {"V2"}, {"Q", "U1", "U2", "Y1"}, {"Y2", "V0"});
    double common_leak = std::max(mi(e, {"V0"}, {"Q", "U1", "U2", "Y2"}, {"Y1"}),
                                  mi(e, {"V0"}, {"Q", "U1", "U2", "Y1"}, {"Y2"}));

    return rate_pair_system(
        {{1, 0, key1},
         {0, 1, key2},
         {1, 0, common + i_u1yv1 - leak1},
         {0, 1, common + i_u2yv2 - leak2},
         {1, 1, common + i_u1yv1 + i_u2yv2 - i_u1u2 - refine1 - refine2 - common_leak}});
}

HalfSpaceSystem region_outer(const SchemeDistribution& dist) {
    const JointPmf& b = dist.base();

    double cap1 = std::min({mi(b, {"U1"}, {"Y1"}, {"Q"}) - mi(b, {"U1"}, {"Y2"}, {"Q"}),
                            mi(b, {"U1"}, {"Y1"}, {"Q", "U2"}) - mi(b, {"U1"}, {"Y2"}, {"Q", "U2"}),
                            hc(b, {"Y1"}, {"Q", "U2", "Y2"})});
    double cap2 = std::min({mi(b, {"U2"}, {"Y2"}, {"Q"}) - mi(b, {"U2"}, {"Y1"}, {"Q"}),
                            mi(b, {"U2"}, {"Y2"}, {"Q", "U1"}) - mi(b, {"U2"}, {"Y1"}, {"Q", "U1"}),
                            hc(b, {"Y2"}, {"Q", "U1", "Y1"})});

    return rate_pair_system({{1, 0, cap1}, {0, 1, cap2}});
}

HalfSpaceSystem region_nofeedback(const SchemeDistribution& dist) {
    require_valid(dist, "region_nofeedback");
    const JointPmf& b = dist.base();

    double i_u1u2 = mi(b, {"U1"}, {"U2"}, {"Q"});
    double cap1 = mi(b, {"U1"}, {"Y1"}, {"Q"}) - i_u1u2 - mi(b, {"U1"}, {"Y2"}, {"Q", "U2"});
    double cap2 = mi(b, {"U2"}, {"Y2"}, {"Q"}) - i_u1u2 - mi(b, {"U2"}, {"Y1"}, {"Q", "U1"});

    return rate_pair_system({{1, 0, cap1}, {0, 1, cap2}});
}

HalfSpaceSystem region_wynerziv(const WynerZivDistribution& dist) {
    const JointPmf& p = dist.pmf();

    // Markov requirement: (V0,V1,V2) -> X -> (Y1,Y2), checked cell-wise as
    // P(v,x,y) = P(v,x) P(x,y) / P(x).
    {
        MarginalLookup vx(p, {"V0", "V1", "V2", "X"});
        MarginalLookup x(p, {"X"});
        MarginalLookup xy(p, {"X", "Y1", "Y2"});
        double worst = 0.0;
        for (std::size_t cell = 0; cell < p.cell_count(); ++cell) {
            double product = vx.at(p, cell) * conditional(xy.at(p, cell), x.at(p, cell));
            worst = std::max(worst, std::abs(p.table()[cell] - product));
        }
        if (worst > kFactorizationTol)
            throw ModelError("region_wynerziv: (V0,V1,V2) -> X -> (Y1,Y2) Markov chain violated "
                             "(max deviation " + std::to_string(worst) + ")");
    }

    double r01 = mi(p, {"X"}, {"V0", "V1"}, {"Y1"});
    double r02 = mi(p, {"X"}, {"V0", "V2"}, {"Y2"});
    double rsum = mi(p, {"X"}, {"V1"}, {"Y1", "V0"}) + mi(p, {"X"}, {"V2"}, {"Y2", "V0"})
                + std::max(mi(p, {"X"}, {"V0"}, {"Y1"}), mi(p, {"X"}, {"V0"}, {"Y2"}));

    // Lower bounds R0+R1 >= a are stored as -R0-R1 <= -a.
    HalfSpaceSystem sys({"R0", "R1", "R2"}, true);
    sys.add_row({-1, -1, 0}, -rationalize(pos(r01)));
    sys.add_row({-1, 0, -1}, -rationalize(pos(r02)));
    sys.add_row({-1, -1, -1}, -rationalize(pos(rsum)));
    return sys;
}

} // namespace secrate
