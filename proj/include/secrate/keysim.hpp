#ifndef SECRATE_KEYSIM_HPP
#define SECRATE_KEYSIM_HPP

/* Empirical key-extraction experiments on a pair of correlated observation
 * sequences.
 *
 * Model: each of N time slots draws a symbol pair (Y1, Y2) iid from a joint
 * per-symbol distribution.  A key K is extracted from the Y1 sequence by a
 * random coloring with gamma = round(2^(N*R)) colors; the other sequence
 * plays the eavesdropper.  The exhaustive mode enumerates all sequence
 * pairs and computes H(K), H(K | Y2^N), the leakage I(K; Y2^N), and the
 * expected total-variation distance of P(K | y2^N) from uniform exactly
 * (up to rounding).  The Monte Carlo mode estimates the same quantities
 * from sampled sequence pairs with Miller-Madow bias correction and a
 * bootstrap standard error.
 *
 * All randomness is counter-based: every trial derives its own stream from
 * (seed, trial index), so results are bit-identical for any thread count.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

namespace secrate {

// SplitMix64 finalizer; the basis of all randomness in this module.
std::uint64_t mix64(std::uint64_t x);

// Stateless counter RNG: output i of stream `key` is mix64(key + i * odd
// constant).  Instances only track the next counter value.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}
    std::uint64_t next_u64();
    // Uniform double in [0, 1).
    double next_unit();

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Joint per-symbol distribution of the observation pair, row-major
// (y1 * size2 + y2).
struct PairChannel {
    std::size_t size1 = 2;
    std::size_t size2 = 2;
    std::vector<double> joint;

    // Throws ArgumentError unless both sizes are >= 2, the table has
    // size1 * size2 nonnegative entries, and the mass sums to 1.
    void validate() const;
    std::vector<double> marginal1() const;
    std::vector<double> marginal2() const;
};

// Y1 and Y2 independent, each uniform.
PairChannel uniform_independent_channel(std::size_t size1 = 2, std::size_t size2 = 2);
// Y2 = Y1, uniform.
PairChannel identical_channel(std::size_t size = 2);

// Deterministic map from Y1-sequence index to a color in [0, gamma).
// The default draw assigns colors iid uniform (via a mix64 stream); the
// universal-hash variant uses ((a*i + b) mod (2^61 - 1)) mod gamma.
class KeyColoring {
  public:
    KeyColoring(std::uint64_t gamma, std::uint64_t seed, bool universal_hash = false);
    std::uint32_t color(std::uint64_t index) const;
    std::uint64_t gamma() const { return gamma_; }

  private:
    std::uint64_t gamma_;
    std::uint64_t key_;
    std::uint64_t a_ = 1;
    std::uint64_t b_ = 0;
    bool universal_;
};

enum class KeySimMode { exhaustive, monte_carlo };

struct KeySimConfig {
    PairChannel channel;
    int blocklength = 8;             // N
    double rate = 0.75;              // R, key bits per symbol
    KeySimMode mode = KeySimMode::exhaustive;
    std::uint64_t seed = 1;
    int trials = 10000;              // Monte Carlo sample count
    bool universal_hash = false;
};

struct KeySimReport {
    std::uint64_t gamma = 1;
    double key_entropy = 0.0;               // H(K)
    double conditional_key_entropy = 0.0;   // H(K | Y2^N)
    double leakage = 0.0;                   // H(K) - H(K | Y2^N)
    double total_variation = 0.0;           // E_y2 TV(P(K|y2), uniform)
    double normalized_entropy = 0.0;        // H(K | Y2^N) / (N * R)
    double conditional_entropy_stderr = 0.0;  // bootstrap SE (Monte Carlo only)
    bool exhaustive = true;
};

// Limits (ConfigError when exceeded): gamma <= 2^20 always; exhaustive mode
// needs size1^N * size2^N <= 2^24; Monte Carlo needs N*log2(size) <= 62 for
// each alphabet so sequence indices fit an integer.  The parallel variant
// splits work across threads; results equal the serial variant bit for bit.
KeySimReport run_key_extraction(const KeySimConfig& config);
KeySimReport run_key_extraction_serial(const KeySimConfig& config);

struct OtpReport {
    int message_bits = 0;
    int trials = 0;
    bool decode_ok = true;             // every trial decoded exactly
    double message_leakage = 0.0;      // m - H(K mod 2^m | Y2^N), exhaustive
};

// One-time-pad roundtrip: per trial draws a fresh observation pair, masks a
// uniform m-bit message with the low m bits of the extracted key index, and
// decodes with the same key.  message_bits must satisfy
// 0 <= m <= floor(N * R) and m <= 62 (ArgumentError otherwise); the leakage
// term is computed with the exhaustive kernel, so exhaustive size limits
// apply regardless of config.mode.
OtpReport run_otp_roundtrip(const KeySimConfig& config, int message_bits,
                            int trials = 10000);

struct FrontierPoint {
    double rate = 0.0;
    std::uint64_t gamma = 1;
    double normalized_entropy = 0.0;  // H(K | Y2^N) / (N * rate)
};

// Exhaustive normalized conditional key entropy across a grid of target
// rates (same channel, blocklength, and seed).
std::vector<FrontierPoint> key_rate_frontier(const PairChannel& channel,
                                             int blocklength,
                                             const std::vector<double>& rate_grid,
                                             std::uint64_t seed);

}  // namespace secrate

#endif  // SECRATE_KEYSIM_HPP
