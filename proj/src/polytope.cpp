#include "secrate/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace secrate {

using boost::multiprecision::cpp_int;
using Row = HalfSpaceSystem::Row;

Rational exact_rational(double x) {
    if (!std::isfinite(x))
        throw ArgumentError("exact_rational: non-finite input");
    return Rational(x);
}

namespace {

cpp_int rat_floor(const Rational& r) {
    cpp_int n = numerator(r), d = denominator(r);
    cpp_int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

} // namespace

Rational rationalize(double x, double tol) {
    if (!std::isfinite(x))
        throw ArgumentError("rationalize: non-finite input");
    if (tol < 0.0)
        throw ArgumentError("rationalize: negative tolerance");
    const Rational target = exact_rational(x);
    const Rational tolr = exact_rational(tol);

    // Continued-fraction convergents of the exact binary value; stop at the
    // first convergent within tolerance.
    Rational t = target;
    cpp_int p_prev = 1, q_prev = 0;  // convergent k-1 (seeded as 1/0)
    cpp_int p_pp = 0, q_pp = 1;      // convergent k-2 (seeded as 0/1)
    for (int iter = 0; iter < 128; ++iter) {
        cpp_int a = rat_floor(t);
        cpp_int p = a * p_prev + p_pp;
        cpp_int q = a * q_prev + q_pp;
        p_pp = p_prev;
        q_pp = q_prev;
        p_prev = p;
        q_prev = q;
        Rational conv(p, q);
        if (abs(target - conv) <= tolr) return conv;
        Rational frac = t - Rational(a);
        if (frac == 0) return conv;
        t = Rational(1) / frac;
    }
    return target;
}

HalfSpaceSystem::HalfSpaceSystem(std::vector<std::string> variables, bool implicit_nonneg)
    : vars_(std::move(variables)), nonneg_(implicit_nonneg) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty())
            throw NameError("HalfSpaceSystem: empty variable name");
        if (!seen.insert(v).second)
            throw NameError("HalfSpaceSystem: duplicate variable '" + v + "'");
    }
}

std::size_t HalfSpaceSystem::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw NameError("HalfSpaceSystem: unknown variable '" + name + "'");
}

void HalfSpaceSystem::add(const LinearInequality& ineq) {
    Row r;
    r.coeffs.assign(vars_.size(), Rational(0));
    for (const auto& [name, c] : ineq.coeffs)
        r.coeffs[index_of(name)] = c;
    r.rhs = ineq.rhs;
    rows_.push_back(std::move(r));
}

void HalfSpaceSystem::add_row(std::vector<Rational> coeffs, Rational rhs) {
    if (coeffs.size() != vars_.size())
        throw ArgumentError("HalfSpaceSystem: row has " + std::to_string(coeffs.size()) +
                            " coefficients, expected " + std::to_string(vars_.size()));
    rows_.push_back(Row{std::move(coeffs), std::move(rhs)});
}

LinearInequality HalfSpaceSystem::row(std::size_t i) const {
    LinearInequality out;
    const Row& r = rows_.at(i);
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (r.coeffs[k] != 0) out.coeffs[vars_[k]] = r.coeffs[k];
    out.rhs = r.rhs;
    return out;
}

bool HalfSpaceSystem::has_contradiction_row() const {
    for (const Row& r : rows_) {
        bool all_zero = std::all_of(r.coeffs.begin(), r.coeffs.end(),
                                    [](const Rational& c) { return c == 0; });
        if (all_zero && r.rhs < 0) return true;
    }
    return false;
}

namespace {

// Scales a row by the unique positive rational that makes all coefficients
// coprime integers.  Rows that are positive multiples of each other become
// identical except possibly in the right-hand side.
void canonicalize_row(Row& r) {
    cpp_int den_lcm = 1;
    for (const Rational& c : r.coeffs)
        if (c != 0) den_lcm = lcm(den_lcm, denominator(c));
    if (den_lcm != 1) {
        for (Rational& c : r.coeffs) c *= den_lcm;
        r.rhs *= den_lcm;
    }
    cpp_int g = 0;
    for (const Rational& c : r.coeffs) g = gcd(g, numerator(c));
    if (g > 1) {
        for (Rational& c : r.coeffs) c /= g;
        r.rhs /= g;
    }
}

bool row_all_zero(const Row& r) {
    return std::all_of(r.coeffs.begin(), r.coeffs.end(),
                       [](const Rational& c) { return c == 0; });
}

// Syntactic cleanup: canonical scaling, duplicate/domination removal (equal
// coefficient vectors keep the smallest right-hand side, in first-seen
// position), trivial rows, and rows implied by nonnegativity (all
// coefficients <= 0 with rhs >= 0).  Returns false if a contradictory row
// proves the system infeasible.
bool syntactic_prune(std::vector<Row>& rows, bool nonneg) {
    std::vector<Row> kept;
    kept.reserve(rows.size());
    std::map<std::vector<Rational>, std::size_t> first_pos;
    for (Row& r : rows) {
        canonicalize_row(r);
        if (row_all_zero(r)) {
            if (r.rhs < 0) return false;
            continue;
        }
        if (nonneg && r.rhs >= 0 &&
            std::all_of(r.coeffs.begin(), r.coeffs.end(),
                        [](const Rational& c) { return c <= 0; }))
            continue;
        auto it = first_pos.find(r.coeffs);
        if (it != first_pos.end()) {
            if (r.rhs < kept[it->second].rhs) kept[it->second].rhs = r.rhs;
        } else {
            first_pos.emplace(r.coeffs, kept.size());
            kept.push_back(std::move(r));
        }
    }
    rows = std::move(kept);
    return true;
}

// result = pos * (-neg_c) + neg * (pos_c), cancelling variable v exactly.
Row combine_rows(const Row& pos, const Row& neg, std::size_t v) {
    const Rational a = pos.coeffs[v];  // > 0
    const Rational b = neg.coeffs[v];  // < 0
    Row out;
    out.coeffs.resize(pos.coeffs.size());
    for (std::size_t k = 0; k < pos.coeffs.size(); ++k)
        out.coeffs[k] = pos.coeffs[k] * (-b) + neg.coeffs[k] * a;
    out.rhs = pos.rhs * (-b) + neg.rhs * a;
    out.coeffs[v] = 0;
    return out;
}

HalfSpaceSystem contradictory_system(std::vector<std::string> vars, bool nonneg) {
    HalfSpaceSystem out(std::move(vars), nonneg);
    out.add_row(std::vector<Rational>(out.variables().size(), Rational(0)), Rational(-1));
    return out;
}

// Eliminates column v from the working rows, materializing -x_v <= 0 first
// when the system carries implicit nonnegativity.  Returns false on
// detected infeasibility.
bool eliminate_column(std::vector<Row>& rows, std::size_t v, std::size_t width, bool nonneg) {
    if (nonneg) {
        Row lower;
        lower.coeffs.assign(width, Rational(0));
        lower.coeffs[v] = -1;
        lower.rhs = 0;
        rows.push_back(std::move(lower));
    }
    std::vector<Row> pos, neg, rest;
    for (Row& r : rows) {
        if (r.coeffs[v] > 0)
            pos.push_back(std::move(r));
        else if (r.coeffs[v] < 0)
            neg.push_back(std::move(r));
        else
            rest.push_back(std::move(r));
    }
    for (const Row& p : pos)
        for (const Row& n : neg)
            rest.push_back(combine_rows(p, n, v));
    rows = std::move(rest);
    return syntactic_prune(rows, nonneg);
}

// Exact planar vertex enumeration on materialized rows.
struct ExactVerts {
    enum class Status { ok, infeasible, unbounded };
    Status status = Status::ok;
    std::vector<std::array<Rational, 2>> verts;
};

// Feasibility of a materialized two-column row set by exact elimination.
bool rows_feasible(std::vector<Row> rows) {
    for (std::size_t v = 0; v < 2; ++v)
        if (!eliminate_column(rows, v, 2, false)) return false;
    for (const Row& r : rows)
        if (row_all_zero(r) && r.rhs < 0) return false;
    return true;
}

// True if the recession cone {d : rows * d <= 0} contains a nonzero
// direction.  Nonnegativity rows must already be materialized.
bool rows_unbounded(const std::vector<Row>& rows) {
    auto direction_ok = [&](const Rational& d0, const Rational& d1) {
        for (const Row& r : rows)
            if (r.coeffs[0] * d0 + r.coeffs[1] * d1 > 0) return false;
        return true;
    };
    if (direction_ok(0, 1) || direction_ok(0, -1)) return true;

    // Families d = (s, t) with s fixed at +1 or -1 and t free: each row
    // gives a half-line constraint on t; intersect exactly.
    for (int s : {1, -1}) {
        bool feasible = true;
        bool has_lo = false, has_hi = false;
        Rational lo, hi;
        for (const Row& r : rows) {
            Rational c0 = r.coeffs[0] * s;
            const Rational& c1 = r.coeffs[1];
            if (c1 == 0) {
                if (c0 > 0) {
                    feasible = false;
                    break;
                }
            } else if (c1 > 0) {
                Rational bound = -c0 / c1;
                if (!has_hi || bound < hi) {
                    hi = bound;
                    has_hi = true;
                }
            } else {
                Rational bound = -c0 / c1;
                if (!has_lo || bound > lo) {
                    lo = bound;
                    has_lo = true;
                }
            }
        }
        if (feasible && (!has_lo || !has_hi || lo <= hi)) return true;
    }
    return false;
}

bool lex_less(const std::array<Rational, 2>& a, const std::array<Rational, 2>& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
}

Rational cross(const std::array<Rational, 2>& o, const std::array<Rational, 2>& a,
               const std::array<Rational, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strict convex hull (collinear interior points dropped), counterclockwise,
// starting at the lexicographically smallest point.
std::vector<std::array<Rational, 2>> convex_hull(std::vector<std::array<Rational, 2>> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) {
                              return a[0] == b[0] && a[1] == b[1];
                          }),
              pts.end());
    if (pts.size() <= 2) return pts;

    std::vector<std::array<Rational, 2>> lower, upper;
    for (const auto& p : pts) {
        while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0)
            lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

ExactVerts exact_vertices(std::vector<Row> rows, bool nonneg) {
    ExactVerts out;
    if (nonneg) {
        for (std::size_t v = 0; v < 2; ++v) {
            Row r;
            r.coeffs.assign(2, Rational(0));
            r.coeffs[v] = -1;
            r.rhs = 0;
            rows.push_back(std::move(r));
        }
    }
    for (const Row& r : rows) {
        if (row_all_zero(r) && r.rhs < 0) {
            out.status = ExactVerts::Status::infeasible;
            return out;
        }
    }
    if (!rows_feasible(rows)) {
        out.status = ExactVerts::Status::infeasible;
        return out;
    }
    if (rows_unbounded(rows)) {
        out.status = ExactVerts::Status::unbounded;
        return out;
    }

    std::vector<std::array<Rational, 2>> candidates;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const Row& a = rows[i];
            const Row& b = rows[j];
            Rational det = a.coeffs[0] * b.coeffs[1] - a.coeffs[1] * b.coeffs[0];
            if (det == 0) continue;
            Rational x = (a.rhs * b.coeffs[1] - a.coeffs[1] * b.rhs) / det;
            Rational y = (a.coeffs[0] * b.rhs - a.rhs * b.coeffs[0]) / det;
            bool ok = true;
            for (const Row& r : rows) {
                if (r.coeffs[0] * x + r.coeffs[1] * y > r.rhs) {
                    ok = false;
                    break;
                }
            }
            if (ok) candidates.push_back({std::move(x), std::move(y)});
        }
    }
    out.verts = convex_hull(std::move(candidates));
    return out;
}

} // namespace

HalfSpaceSystem fme_eliminate(const HalfSpaceSystem& sys, const std::string& var) {
    return fme_eliminate(sys, std::vector<std::string>{var});
}

HalfSpaceSystem fme_eliminate(const HalfSpaceSystem& sys,
                              const std::vector<std::string>& eliminate) {
    if (eliminate.empty()) return prune_redundant(sys);

    std::set<std::size_t> elim_set;
    std::vector<std::size_t> elim_order;
    for (const auto& name : eliminate) {
        std::size_t idx = sys.index_of(name);
        if (!elim_set.insert(idx).second)
            throw ArgumentError("fme_eliminate: variable '" + name + "' listed twice");
        elim_order.push_back(idx);
    }

    std::vector<std::string> remaining;
    for (std::size_t i = 0; i < sys.variables().size(); ++i)
        if (!elim_set.count(i)) remaining.push_back(sys.variables()[i]);

    std::vector<Row> work = sys.rows();
    bool feasible = syntactic_prune(work, sys.implicit_nonneg());
    for (std::size_t v : elim_order) {
        if (!feasible) break;
        feasible = eliminate_column(work, v, sys.variables().size(), sys.implicit_nonneg());
    }
    if (!feasible) return contradictory_system(remaining, sys.implicit_nonneg());

    HalfSpaceSystem out(remaining, sys.implicit_nonneg());
    for (const Row& r : work) {
        std::vector<Rational> coeffs;
        coeffs.reserve(remaining.size());
        for (std::size_t i = 0; i < sys.variables().size(); ++i)
            if (!elim_set.count(i)) coeffs.push_back(r.coeffs[i]);
        out.add_row(std::move(coeffs), r.rhs);
    }
    return prune_redundant(out);
}

HalfSpaceSystem prune_redundant(const HalfSpaceSystem& sys) {
    std::vector<Row> rows = sys.rows();
    if (!syntactic_prune(rows, sys.implicit_nonneg()))
        return contradictory_system(sys.variables(), sys.implicit_nonneg());

    if (sys.variables().size() == 2) {
        ExactVerts all = exact_vertices(rows, sys.implicit_nonneg());
        if (all.status == ExactVerts::Status::infeasible)
            return contradictory_system(sys.variables(), sys.implicit_nonneg());
        if (all.status == ExactVerts::Status::ok) {
            // Vertex-supported necessity: a row is redundant exactly when
            // dropping it leaves a bounded region whose extreme points all
            // still satisfy it.
            for (std::size_t i = 0; i < rows.size();) {
                std::vector<Row> rest;
                rest.reserve(rows.size() - 1);
                for (std::size_t j = 0; j < rows.size(); ++j)
                    if (j != i) rest.push_back(rows[j]);
                ExactVerts without = exact_vertices(rest, sys.implicit_nonneg());
                bool redundant = false;
                if (without.status == ExactVerts::Status::ok) {
                    redundant = true;
                    for (const auto& v : without.verts) {
                        if (rows[i].coeffs[0] * v[0] + rows[i].coeffs[1] * v[1] > rows[i].rhs) {
                            redundant = false;
                            break;
                        }
                    }
                }
                if (redundant)
                    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
                else
                    ++i;
            }
        }
    }

    HalfSpaceSystem out(sys.variables(), sys.implicit_nonneg());
    for (Row& r : rows) out.add_row(std::move(r.coeffs), std::move(r.rhs));
    return out;
}

Region2D vertices2d(const HalfSpaceSystem& sys) {
    if (sys.variables().size() != 2)
        throw DimensionError("vertices2d: system has " +
                             std::to_string(sys.variables().size()) +
                             " variables, need exactly 2");
    ExactVerts ev = exact_vertices(sys.rows(), sys.implicit_nonneg());
    Region2D out;
    out.inequalities = sys;
    if (ev.status == ExactVerts::Status::infeasible) return out;
    if (ev.status == ExactVerts::Status::unbounded)
        throw BoundednessError("vertices2d: feasible set is unbounded");
    out.vertices.reserve(ev.verts.size());
    for (const auto& v : ev.verts)
        out.vertices.push_back({v[0].convert_to<double>(), v[1].convert_to<double>()});
    return out;
}

bool contains(const HalfSpaceSystem& sys, const std::vector<double>& point, double tol) {
    if (point.size() != sys.variables().size())
        throw ArgumentError("contains: point dimension mismatch");
    if (sys.implicit_nonneg())
        for (double x : point)
            if (x < -tol) return false;
    for (const Row& r : sys.rows()) {
        double lhs = 0.0;
        for (std::size_t k = 0; k < point.size(); ++k)
            lhs += r.coeffs[k].convert_to<double>() * point[k];
        if (lhs > r.rhs.convert_to<double>() + tol) return false;
    }
    return true;
}

namespace {

// Maps a point given in `from` variable order into `to` variable order.
std::vector<double> remap_point(const std::vector<double>& pt,
                                const std::vector<std::string>& from,
                                const HalfSpaceSystem& to) {
    std::vector<double> out(pt.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        out[to.index_of(from[i])] = pt[i];
    return out;
}

void require_same_varset(const HalfSpaceSystem& a, const HalfSpaceSystem& b) {
    if (a.variables().size() != b.variables().size())
        throw ArgumentError("systems are over different variable sets");
    for (const auto& v : a.variables())
        b.index_of(v);  // throws NameError when missing
}

} // namespace

bool is_subset(const Region2D& a, const HalfSpaceSystem& b, double tol) {
    require_same_varset(a.inequalities, b);
    for (const auto& v : a.vertices) {
        std::vector<double> pt = remap_point({v[0], v[1]}, a.inequalities.variables(), b);
        if (!contains(b, pt, tol)) return false;
    }
    return true;
}

bool region_equal(const Region2D& a, const Region2D& b, double tol) {
    return is_subset(a, b.inequalities, tol) && is_subset(b, a.inequalities, tol);
}

std::vector<std::vector<double>> halton_points(int dim, int count,
                                               const std::vector<double>& lo,
                                               const std::vector<double>& hi) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (dim <= 0 || dim > static_cast<int>(std::size(primes)))
        throw ArgumentError("halton_points: dimension out of range");
    if (count < 0) throw ArgumentError("halton_points: negative count");
    if (lo.size() != static_cast<std::size_t>(dim) || hi.size() != static_cast<std::size_t>(dim))
        throw ArgumentError("halton_points: box dimension mismatch");

    auto radical_inverse = [](int base, long long i) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= base;
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };

    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long long i = 1; i <= count; ++i) {
        std::vector<double> p(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d)
            p[static_cast<std::size_t>(d)] =
                lo[d] + (hi[d] - lo[d]) * radical_inverse(primes[d], i);
        pts.push_back(std::move(p));
    }
    return pts;
}

int membership_disagreements(const HalfSpaceSystem& a, const HalfSpaceSystem& b,
                             const std::vector<double>& lo, const std::vector<double>& hi,
                             int count, double tol) {
    require_same_varset(a, b);
    int dim = static_cast<int>(a.variables().size());
    auto pts = halton_points(dim, count, lo, hi);
    int disagreements = 0;
    for (const auto& p : pts) {
        bool in_a = contains(a, p, tol);
        bool in_b = contains(b, remap_point(p, a.variables(), b), tol);
        if (in_a != in_b) ++disagreements;
    }
    return disagreements;
}

double max_sum_rate(const HalfSpaceSystem& sys) {
    Region2D region = vertices2d(sys);
    if (region.empty()) return 0.0;
    // The maximum of a linear functional over a polytope sits at a vertex.
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : region.vertices)
        best = std::max(best, v[0] + v[1]);
    return best;
}

} // namespace secrate
