#ifndef SECRATE_POLYTOPE_HPP
#define SECRATE_POLYTOPE_HPP

/*
 * Exact rational half-space systems in named variables.
 *
 * Systems store rows of the form  sum_i c_i * x_i <= b  with arbitrary-
 * precision rational coefficients, plus an implicit-nonnegativity flag
 * meaning every variable additionally satisfies x_i >= 0.  Projection
 * (Fourier-Motzkin), redundancy pruning, planar vertex enumeration, and
 * membership tests are exact in the rationals; floating inputs are
 * rationalized once at the boundary.
 */

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "secrate/errors.hpp"

namespace secrate {

using Rational = boost::multiprecision::cpp_rational;

// Exact rational value of a finite double.
Rational exact_rational(double x);

// Best rational approximation of x with absolute error at most `tol`,
// found by continued-fraction expansion.  This is how floating constants
// enter exact polyhedral arithmetic.
Rational rationalize(double x, double tol = 1e-12);

// One inequality  sum coeffs[name] * name <= rhs  in sparse map form.
struct LinearInequality {
    std::map<std::string, Rational> coeffs;
    Rational rhs;
};

// A conjunction of linear inequalities over an ordered variable list.
class HalfSpaceSystem {
public:
    // Dense row aligned with the system's variable order.
    struct Row {
        std::vector<Rational> coeffs;
        Rational rhs;
    };

    HalfSpaceSystem() = default;
    explicit HalfSpaceSystem(std::vector<std::string> variables, bool implicit_nonneg = true);

    const std::vector<std::string>& variables() const { return vars_; }
    bool implicit_nonneg() const { return nonneg_; }
    std::size_t index_of(const std::string& name) const;  // NameError if unknown

    const std::vector<Row>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }

    // Appends an inequality given in sparse form; unknown variable names
    // raise NameError.
    void add(const LinearInequality& ineq);
    // Appends a dense row; the coefficient count must match (ArgumentError).
    void add_row(std::vector<Rational> coeffs, Rational rhs);

    // Sparse view of row i (zero coefficients omitted).
    LinearInequality row(std::size_t i) const;

    // True if the system contains an explicitly contradictory row
    // (all-zero coefficients with negative right-hand side).
    bool has_contradiction_row() const;

private:
    std::vector<std::string> vars_;
    std::vector<Row> rows_;
    bool nonneg_ = true;
};

// Bounded planar region: the describing inequalities plus their extreme
// points.
struct Region2D {
    HalfSpaceSystem inequalities;
    // Counterclockwise extreme points starting from the lexicographically
    // smallest (x, then y).  Empty means the feasible set is empty.
    std::vector<std::array<double, 2>> vertices;
    bool empty() const { return vertices.empty(); }
};

// Exact Fourier-Motzkin elimination of the named variables, processed in
// the order given.  Remaining variables keep their original order and the
// implicit-nonnegativity flag carries over; eliminated variables' implied
// nonnegativity rows are materialized before elimination.  An infeasible
// input yields the canonical contradictory system (single row 0 <= -1).
// An empty elimination list is a prune-only pass.
HalfSpaceSystem fme_eliminate(const HalfSpaceSystem& sys,
                              const std::vector<std::string>& eliminate);

// Single-variable elimination.
HalfSpaceSystem fme_eliminate(const HalfSpaceSystem& sys, const std::string& var);

// Removes duplicate rows, rows dominated coefficient-wise (equal
// coefficients with a weaker right-hand side), rows implied by implicit
// nonnegativity, and, for bounded two-variable systems, rows whose removal
// leaves the exact vertex set unchanged.  Kept rows preserve their order.
// Detected infeasibility collapses the system to the single row 0 <= -1.
HalfSpaceSystem prune_redundant(const HalfSpaceSystem& sys);

// Exact extreme-point enumeration for a two-variable system (DimensionError
// otherwise).  An infeasible system returns an empty region; an unbounded
// feasible set raises BoundednessError.  Ordering is deterministic:
// counterclockwise starting from the lexicographically smallest vertex.
Region2D vertices2d(const HalfSpaceSystem& sys);

// True if `point` (aligned with sys.variables()) satisfies every row, and
// every nonnegativity bound when implicit, within slack `tol`.
bool contains(const HalfSpaceSystem& sys, const std::vector<double>& point,
              double tol = 1e-9);

// True if region `a` is contained in the feasible set of `b`, decided by
// testing a's extreme points against b's inequalities within `tol` (valid
// by convexity).  Variables are matched by name; order may differ.
bool is_subset(const Region2D& a, const HalfSpaceSystem& b, double tol = 1e-9);

// Mutual inclusion at tolerance `tol`.
bool region_equal(const Region2D& a, const Region2D& b, double tol = 1e-9);

// First `count` points of the Halton low-discrepancy sequence (prime bases
// 2, 3, 5, ...) scaled into the axis-aligned box [lo, hi]^dim.
std::vector<std::vector<double>> halton_points(int dim, int count,
                                               const std::vector<double>& lo,
                                               const std::vector<double>& hi);

// Number of Halton sample points inside the box on which the two systems
// disagree about membership (same slack `tol` on both sides).  Variables
// are matched by name; the systems must use the same variable set.
int membership_disagreements(const HalfSpaceSystem& a, const HalfSpaceSystem& b,
                             const std::vector<double>& lo, const std::vector<double>& hi,
                             int count, double tol = 1e-9);

// Maximum of R1 + R2 over a two-variable system (any variable names; the
// coordinates sum in system order).  Returns 0 for an empty region; throws
// BoundednessError if the maximum is unbounded, DimensionError if the
// system is not two-dimensional.
double max_sum_rate(const HalfSpaceSystem& sys);

} // namespace secrate

#endif // SECRATE_POLYTOPE_HPP
