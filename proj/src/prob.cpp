#include "secrate/prob.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace secrate {

JointPmf::JointPmf(std::vector<Alphabet> variables, std::vector<double> table)
    : vars_(std::move(variables)), table_(std::move(table)) {
    std::set<std::string> seen;
    std::size_t cells = 1;
    for (const auto& v : vars_) {
        if (v.name.empty())
            throw NameError("JointPmf: empty variable name");
        if (!seen.insert(v.name).second)
            throw NameError("JointPmf: duplicate variable name '" + v.name + "'");
        if (v.size <= 0)
            throw ValueError("JointPmf: variable '" + v.name + "' has nonpositive size");
        cells *= static_cast<std::size_t>(v.size);
    }
    if (table_.size() != cells)
        throw ArgumentError("JointPmf: table has " + std::to_string(table_.size()) +
                            " entries, expected " + std::to_string(cells));

    strides_.assign(vars_.size(), 1);
    for (std::size_t i = vars_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * static_cast<std::size_t>(vars_[i].size);

    double sum = 0.0;
    for (double p : table_) {
        if (p < 0.0)
            throw ValueError("JointPmf: negative entry " + std::to_string(p));
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTol)
        throw NormalizationError("JointPmf: total mass " + std::to_string(sum) +
                                 " differs from 1 by more than " + std::to_string(kNormTol));
}

std::size_t JointPmf::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    throw NameError("JointPmf: unknown variable '" + name + "'");
}

bool JointPmf::has_variable(const std::string& name) const {
    return std::any_of(vars_.begin(), vars_.end(),
                       [&](const Alphabet& v) { return v.name == name; });
}

JointPmf marginalize(const JointPmf& pmf, const std::vector<std::string>& keep) {
    std::vector<std::size_t> pos;
    pos.reserve(keep.size());
    std::set<std::string> seen;
    for (const auto& name : keep) {
        if (!seen.insert(name).second)
            throw NameError("marginalize: duplicate variable '" + name + "'");
        pos.push_back(pmf.index_of(name));
    }

    std::vector<Alphabet> vars;
    vars.reserve(pos.size());
    std::size_t cells = 1;
    for (std::size_t p : pos) {
        vars.push_back(pmf.variables()[p]);
        cells *= static_cast<std::size_t>(vars.back().size);
    }

    std::vector<double> out(cells, 0.0);
    const auto& t = pmf.table();
    for (std::size_t cell = 0; cell < t.size(); ++cell) {
        double v = t[cell];
        if (v < kProbZeroTol) continue;
        std::size_t oidx = 0;
        for (std::size_t k = 0; k < pos.size(); ++k)
            oidx = oidx * static_cast<std::size_t>(vars[k].size) +
                   static_cast<std::size_t>(pmf.coordinate(cell, pos[k]));
        out[oidx] += v;
    }
    return JointPmf(std::move(vars), std::move(out));
}

double entropy(const JointPmf& pmf, const std::vector<std::string>& vars) {
    // Entropy is order-invariant, so when `vars` covers every variable the
    // marginalization pass can be skipped entirely.
    if (vars.size() == pmf.variable_count()) {
        std::set<std::string> seen;
        bool all = true;
        for (const auto& name : vars) {
            if (!pmf.has_variable(name) || !seen.insert(name).second) {
                all = false;
                break;
            }
        }
        if (all) {
            double h = 0.0;
            for (double p : pmf.table()) h += neg_p_log2(p);
            return h;
        }
    }
    JointPmf m = marginalize(pmf, vars);
    double h = 0.0;
    for (double p : m.table()) h += neg_p_log2(p);
    return h;
}

double cond_entropy(const JointPmf& pmf,
                    const std::vector<std::string>& vars,
                    const std::vector<std::string>& given) {
    if (given.empty()) return entropy(pmf, vars);
    std::vector<std::string> joint = vars;
    joint.insert(joint.end(), given.begin(), given.end());
    return entropy(pmf, joint) - entropy(pmf, given);
}

double cond_mutual_info(const JointPmf& pmf,
                        const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& c) {
    std::set<std::string> seen;
    for (const auto* group : {&a, &b, &c})
        for (const auto& name : *group)
            if (!seen.insert(name).second)
                throw ArgumentError("cond_mutual_info: variable '" + name +
                                    "' appears in more than one argument set");

    auto join = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        std::vector<std::string> r = x;
        r.insert(r.end(), y.begin(), y.end());
        return r;
    };

    double hac = entropy(pmf, join(a, c));
    double hbc = entropy(pmf, join(b, c));
    double habc = entropy(pmf, join(join(a, b), c));
    double hc = c.empty() ? 0.0 : entropy(pmf, c);
    double mi = hac + hbc - habc - hc;
    if (mi < 0.0 && mi > -kMutualInfoClampTol) mi = 0.0;
    return mi;
}

} // namespace secrate
