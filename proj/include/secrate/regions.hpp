#ifndef SECRATE_REGIONS_HPP
#define SECRATE_REGIONS_HPP

// Secrecy-rate region evaluators for the two-receiver broadcast channel with
// mutual secrecy and noiseless feedback. Each evaluator consumes a scheme
// distribution (a joint pmf over the auxiliary, input, and output variables)
// and emits a half-space system over the rate pair (R1, R2), or over
// (R0, R1, R2) for the source-coding region. Rows are emitted in a fixed,
// documented order so closed-form comparisons can be made row by row.

#include <optional>
#include <string>
#include <vector>

#include "secrate/polytope.hpp"
#include "secrate/prob.hpp"

namespace secrate {

// Tolerance for the factorization / Markov checks (per cell, absolute).
inline constexpr double kFactorizationTol = 1e-9;

// A named factorization-condition violation with its worst-cell magnitude.
struct FactorizationViolation {
    std::string condition;
    double magnitude = 0.0;
};

// A scheme distribution: a base joint pmf over {Q, U1, U2, X, Y1, Y2} and an
// optional extension over those plus {V0, V1, V2}. The constructor checks
// variable sets and alphabet consistency only; probabilistic structure is
// checked by verify_factorization and by the evaluators that rely on it.
class SchemeDistribution {
  public:
    explicit SchemeDistribution(JointPmf base);
    SchemeDistribution(JointPmf base, JointPmf extended);

    const JointPmf& base() const { return base_; }
    bool has_extension() const { return extended_.has_value(); }
    // Throws ModelError when no extension is present.
    const JointPmf& extended() const;

  private:
    void validate() const;

    JointPmf base_;
    std::optional<JointPmf> extended_;
};

// A source-coding distribution over {V0, V1, V2, X, Y1, Y2} used by the
// rate-region computation for lossless source coding with decoder side
// information. The constructor checks the variable set only.
class WynerZivDistribution {
  public:
    explicit WynerZivDistribution(JointPmf pmf);

    const JointPmf& pmf() const { return pmf_; }

  private:
    JointPmf pmf_;
};

// Checks the probabilistic structure a scheme distribution must satisfy:
//  - "channel_markov": (Q,U1,U2) -> X -> (Y1,Y2), i.e.
//        P(y1,y2 | q,u1,u2,x) = P(y1,y2 | x)
//    (the channel acts on X alone; note X may be any deterministic or random
//    function of (Q,U1,U2) jointly, as the worked constructions require);
//  - "extension_locality" (extended only): P(v0,v1,v2 | q,u1,u2,x,y1,y2)
//    does not depend on x given the rest;
//  - "extension_marginal" (extended only): marginalizing the extension over
//    (V0,V1,V2) recovers the base pmf.
// Returns one entry per violated condition (max deviation > kFactorizationTol);
// an empty result means the distribution is valid.
std::vector<FactorizationViolation> verify_factorization(const SchemeDistribution& dist);

// Secret-key feedback inner bound. Rows over (R1, R2), in order:
//   0: R1 <= [I(U1;Y1|Q) - I(U1;U2|Q) - I(U1;Y2|Q,U2)]+ + H(Y1|Q,U1,U2,Y2)
//   1: R2 <= symmetric
//   2: R1 <= min{I(Q;Y1), I(Q;Y2)} + I(U1;Y1|Q)
//   3: R2 <= symmetric
//   4: R1+R2 <= min{I(Q;Y1), I(Q;Y2)} + I(U1;Y1|Q) + I(U2;Y2|Q) - I(U1;U2|Q)
// All right-hand sides are clamped at zero. Uses the base pmf.
HalfSpaceSystem region_inner1(const SchemeDistribution& dist);

// Hybrid feedback inner bound; requires the extension. Rows over (R1, R2):
//   0: R1 <= [I(U1;Y1,V1|Q) - I(U1;U2|Q) - I(U1;Y2,V2|Q,U2)]+
//            + H(Y1|Q,U1,U2,Y2,V2)
//   1: R2 <= symmetric
//   2: R1 <= min{I(Q;Y1,V1), I(Q;Y2,V2)} + I(U1;Y1,V1|Q)
//            - I(V0,V1; Q,U1,U2,Y2 | Y1)
//   3: R2 <= symmetric
//   4: R1+R2 <= min{I(Q;Y1,V1), I(Q;Y2,V2)} + I(U1;Y1,V1|Q) + I(U2;Y2,V2|Q)
//              - I(U1;U2|Q) - I(V1; Q,U1,U2,Y2 | Y1,V0)
//              - I(V2; Q,U1,U2,Y1 | Y2,V0)
//              - max{I(V0; Q,U1,U2,Y2 | Y1), I(V0; Q,U1,U2,Y1 | Y2)}
// All right-hand sides are clamped at zero.
HalfSpaceSystem region_inner2(const SchemeDistribution& dist);

// Outer bound. Rows over (R1, R2):
//   0: R1 <= min{I(U1;Y1|Q) - I(U1;Y2|Q),
//                I(U1;Y1|Q,U2) - I(U1;Y2|Q,U2),
//                H(Y1|Q,U2,Y2)}
//   1: R2 <= symmetric
// Accepts any distribution over the base variables (no factorization check).
HalfSpaceSystem region_outer(const SchemeDistribution& dist);

// No-feedback inner bound. Rows over (R1, R2):
//   0: R1 <= [I(U1;Y1|Q) - I(U1;U2|Q) - I(U1;Y2|Q,U2)]+
//   1: R2 <= symmetric
HalfSpaceSystem region_nofeedback(const SchemeDistribution& dist);

// Rate region for lossless source coding with coded side information, over
// (R0, R1, R2). Stored as <= rows with negated coefficients:
//   0: R0+R1    >= I(X; V0,V1 | Y1)
//   1: R0+R2    >= I(X; V0,V2 | Y2)
//   2: R0+R1+R2 >= I(X; V1 | Y1,V0) + I(X; V2 | Y2,V0)
//                 + max{I(X; V0 | Y1), I(X; V0 | Y2)}
// Requires the Markov chain (V0,V1,V2) -> X -> (Y1,Y2) within
// kFactorizationTol per cell; throws ModelError otherwise.
HalfSpaceSystem region_wynerziv(const WynerZivDistribution& dist);

}  // namespace secrate

#endif  // SECRATE_REGIONS_HPP
