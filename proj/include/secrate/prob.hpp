#ifndef SECRATE_PROB_HPP
#define SECRATE_PROB_HPP

/*
 * Finite-alphabet probability core.
 *
 * A JointPmf is a dense probability table over a list of named finite
 * variables, stored row-major with the last declared variable varying
 * fastest.  All information quantities are in bits (logarithms base 2).
 * Entries below 1e-15 are treated as exact zeros inside entropy sums so
 * that 0 * log 0 never produces NaNs, and tables must be normalized to
 * within 1e-12.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "secrate/errors.hpp"

namespace secrate {

// Probabilities below this threshold are treated as exact zeros when
// evaluating p * log p terms.
inline constexpr double kProbZeroTol = 1e-15;

// A probability table must sum to 1 within this tolerance.
inline constexpr double kNormTol = 1e-12;

// Conditional mutual information values above -1e-9 but below zero are
// treated as numerical noise and clamped to zero.
inline constexpr double kMutualInfoClampTol = 1e-9;

// One named finite random variable.
struct Alphabet {
    std::string name;
    int size = 0;
};

// Dense joint probability mass function over a list of named variables.
class JointPmf {
public:
    // Validates that sizes are positive, names are unique and non-empty,
    // every entry is nonnegative (ValueError otherwise), the table length
    // matches the product of alphabet sizes (ArgumentError), and the total
    // mass is 1 within kNormTol (NormalizationError).
    JointPmf(std::vector<Alphabet> variables, std::vector<double> table);

    const std::vector<Alphabet>& variables() const { return vars_; }
    const std::vector<double>& table() const { return table_; }
    std::size_t cell_count() const { return table_.size(); }
    std::size_t variable_count() const { return vars_.size(); }

    // Position of a variable in the declared order; NameError if unknown.
    std::size_t index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const;

    // Stride of variable `pos` in the row-major table layout.
    std::size_t stride(std::size_t pos) const { return strides_[pos]; }

    // Coordinate of variable `pos` inside flat cell index `cell`.
    int coordinate(std::size_t cell, std::size_t pos) const {
        return static_cast<int>((cell / strides_[pos]) % static_cast<std::size_t>(vars_[pos].size));
    }

private:
    std::vector<Alphabet> vars_;
    std::vector<std::size_t> strides_;
    std::vector<double> table_;
};

// Marginal distribution over `keep`, in the order given.  Unknown or
// duplicated names raise NameError.  An empty list yields the trivial
// zero-variable pmf with a single unit cell.
JointPmf marginalize(const JointPmf& pmf, const std::vector<std::string>& keep);

// Joint entropy H(vars) in bits.  `vars` may be any subset of the pmf's
// variables, in any order.
double entropy(const JointPmf& pmf, const std::vector<std::string>& vars);

// Conditional entropy H(vars | given) = H(vars, given) - H(given).
double cond_entropy(const JointPmf& pmf,
                    const std::vector<std::string>& vars,
                    const std::vector<std::string>& given);

// Conditional mutual information I(a; b | c) in bits, computed as
// H(a,c) + H(b,c) - H(a,b,c) - H(c).  The three sets must be pairwise
// disjoint (ArgumentError); `c` may be empty.  Small negative results
// within kMutualInfoClampTol are clamped to zero.
double cond_mutual_info(const JointPmf& pmf,
                        const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& c);

// -p * log2(p) with the 0 * log 0 = 0 convention.
inline double neg_p_log2(double p) {
    if (p < kProbZeroTol) return 0.0;
    return -p * std::log2(p);
}

// Binary entropy h(a) in bits; h(0) = h(1) = 0.  Arguments may stray from
// [0, 1] by at most 1e-12 (they are clamped); anything further is a
// ValueError.
inline double binary_entropy(double a) {
    if (a < -kNormTol || a > 1.0 + kNormTol)
        throw ValueError("binary_entropy: argument " + std::to_string(a) + " outside [0, 1]");
    if (a < 0.0) a = 0.0;
    if (a > 1.0) a = 1.0;
    return neg_p_log2(a) + neg_p_log2(1.0 - a);
}

// Binary convolution a * (1-b) + b * (1-a): the flip probability of two
// cascaded independent binary symmetric noises.
inline double binary_convolve(double a, double b) {
    if (a < -kNormTol || a > 1.0 + kNormTol || b < -kNormTol || b > 1.0 + kNormTol)
        throw ValueError("binary_convolve: arguments outside [0, 1]");
    return a + b - 2.0 * a * b;
}

// Entropy of the ternary distribution (a, b, 1-a-b) in bits.  Requires
// a, b >= 0 and a + b <= 1 within 1e-12 tolerance.
inline double ternary_entropy(double a, double b) {
    if (a < -kNormTol || b < -kNormTol || a + b > 1.0 + kNormTol)
        throw ValueError("ternary_entropy: (a, b) outside the probability simplex");
    if (a < 0.0) a = 0.0;
    if (b < 0.0) b = 0.0;
    double c = 1.0 - a - b;
    if (c < 0.0) c = 0.0;
    return neg_p_log2(a) + neg_p_log2(b) + neg_p_log2(c);
}

} // namespace secrate

#endif // SECRATE_PROB_HPP
