#include "secrate/keysim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "secrate/errors.hpp"
#include "secrate/prob.hpp"

namespace secrate {
namespace {

constexpr std::uint64_t kStreamStep = 0x9e3779b97f4a7c15ull;  // odd, full period
constexpr std::uint64_t kMersenne61 = (1ull << 61) - 1;
constexpr std::uint64_t kMaxGamma = 1ull << 20;
constexpr std::uint64_t kMaxExhaustivePairs = 1ull << 24;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(prod & kMersenne61);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t s = lo + hi;  // < 2^62
    s = (s & kMersenne61) + (s >> 61);
    if (s >= kMersenne61) s -= kMersenne61;
    return s;
}

// Number of length-n sequences over an alphabet of the given size, or 0 if
// the count would not fit the exhaustive pair budget by itself.
std::uint64_t sequence_count(std::size_t alphabet, int n) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > kMaxExhaustivePairs) return 0;
        count *= alphabet;
    }
    return count > kMaxExhaustivePairs ? 0 : count;
}

std::uint64_t derive_gamma(int blocklength, double rate) {
    double bits = static_cast<double>(blocklength) * rate;
    double raw = std::exp2(bits);
    if (!(raw >= 0.0) || raw > static_cast<double>(kMaxGamma) + 0.5)
        throw ConfigError("key space 2^(N*R) = 2^" + std::to_string(bits) +
                          " exceeds the 2^20 color limit");
    auto gamma = static_cast<std::uint64_t>(std::llround(raw));
    return gamma < 1 ? 1 : gamma;
}

void require_config(const KeySimConfig& cfg) {
    cfg.channel.validate();
    if (cfg.blocklength < 1)
        throw ConfigError("blocklength must be positive, got " +
                          std::to_string(cfg.blocklength));
    if (!(cfg.rate >= 0.0))
        throw ConfigError("rate must be nonnegative, got " + std::to_string(cfg.rate));
    if (cfg.mode == KeySimMode::monte_carlo && cfg.trials < 1)
        throw ConfigError("Monte Carlo mode needs at least one trial, got " +
                          std::to_string(cfg.trials));
}

// Sequence index `seq` interpreted as blocklength base-`alphabet` digits,
// most significant first; returns the product of per-digit weights.
double sequence_prob(const std::vector<double>& symbol_prob, std::uint64_t seq,
                     int blocklength, std::size_t alphabet) {
    double prob = 1.0;
    for (int t = 0; t < blocklength; ++t) {
        prob *= symbol_prob[seq % alphabet];
        seq /= alphabet;
    }
    return prob;
}

struct ExhaustiveResult {
    double key_entropy = 0.0;
    double cond_entropy = 0.0;
    double total_variation = 0.0;
};

// Exact H(K), H(K | Y2^N), and expected total variation from uniform for a
// color map over Y1 sequences.  Every output is a fixed-order serial sum of
// per-sequence slots, so thread count never changes a bit of the result.
template <typename ColorOf>
ExhaustiveResult exhaustive_kernel(const PairChannel& ch, int n, std::uint64_t gamma,
                                   const ColorOf& color_of, bool parallel) {
    std::uint64_t m1 = sequence_count(ch.size1, n);
    std::uint64_t m2 = sequence_count(ch.size2, n);
    if (m1 == 0 || m2 == 0 || m1 > kMaxExhaustivePairs / m2)
        throw ConfigError("exhaustive mode needs |Y1|^N * |Y2|^N <= 2^24");

    std::vector<double> p1 = ch.marginal1();
    std::vector<double> p2 = ch.marginal2();

    // H(K) from the Y2-independent key distribution.
    std::vector<double> key_mass(gamma, 0.0);
    for (std::uint64_t i = 0; i < m1; ++i)
        key_mass[color_of(i)] += sequence_prob(p1, i, n, ch.size1);
    ExhaustiveResult res;
    for (std::uint64_t k = 0; k < gamma; ++k) res.key_entropy += neg_p_log2(key_mass[k]);

    // Per-Y2-sequence contributions.
    std::vector<double> joint_term(m2, 0.0);   // sum_k -P(k, y2) log2 P(k, y2)
    std::vector<double> marg_term(m2, 0.0);    // -P(y2) log2 P(y2)
    std::vector<double> tv_term(m2, 0.0);      // P(y2) * TV(P(K|y2), uniform)
    const double inv_gamma = 1.0 / static_cast<double>(gamma);
    const auto m2s = static_cast<std::ptrdiff_t>(m2);

#pragma omp parallel if (parallel)
    {
        std::vector<double> acc(gamma, 0.0);
        std::vector<std::uint32_t> touched;
        touched.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(gamma, m1)));
        std::vector<std::size_t> y2_digit(static_cast<std::size_t>(n));

#pragma omp for schedule(static)
        for (std::ptrdiff_t js = 0; js < m2s; ++js) {
            auto j = static_cast<std::uint64_t>(js);
            std::uint64_t rem = j;
            for (int t = 0; t < n; ++t) {
                y2_digit[static_cast<std::size_t>(t)] = rem % ch.size2;
                rem /= ch.size2;
            }
            for (std::uint64_t i = 0; i < m1; ++i) {
                double pij = 1.0;
                std::uint64_t ri = i;
                for (int t = 0; t < n; ++t) {
                    pij *= ch.joint[(ri % ch.size1) * ch.size2 +
                                    y2_digit[static_cast<std::size_t>(t)]];
                    ri /= ch.size1;
                }
                if (pij <= 0.0) continue;
                std::uint32_t k = color_of(i);
                if (acc[k] == 0.0) touched.push_back(k);
                acc[k] += pij;
            }
            double p2j = sequence_prob(p2, j, n, ch.size2);
            double joint_sum = 0.0;
            double tv = 0.0;
            for (std::uint32_t k : touched) joint_sum += neg_p_log2(acc[k]);
            if (p2j > 0.0) {
                double dev = 0.0;
                for (std::uint32_t k : touched) dev += std::abs(acc[k] / p2j - inv_gamma);
                dev += static_cast<double>(gamma - touched.size()) * inv_gamma;
                tv = 0.5 * dev;
            }
            joint_term[j] = joint_sum;
            marg_term[j] = neg_p_log2(p2j);
            tv_term[j] = p2j * tv;
            for (std::uint32_t k : touched) acc[k] = 0.0;
            touched.clear();
        }
    }

    double h_joint = 0.0, h_marg = 0.0, tv_total = 0.0;
    for (std::uint64_t j = 0; j < m2; ++j) {
        h_joint += joint_term[j];
        h_marg += marg_term[j];
        tv_total += tv_term[j];
    }
    double cond = h_joint - h_marg;
    res.cond_entropy = cond > 0.0 ? cond : 0.0;
    res.total_variation = tv_total;
    return res;
}

// Inverse-CDF draw of a joint symbol pair.
std::pair<std::size_t, std::size_t> draw_pair(const PairChannel& ch, double u) {
    double cum = 0.0;
    std::size_t cells = ch.size1 * ch.size2;
    for (std::size_t c = 0; c < cells; ++c) {
        cum += ch.joint[c];
        if (u < cum) return {c / ch.size2, c % ch.size2};
    }
    return {ch.size1 - 1, ch.size2 - 1};
}

KeySimReport monte_carlo_kernel(const KeySimConfig& cfg, std::uint64_t gamma,
                                const KeyColoring& coloring, bool parallel) {
    const int n = cfg.blocklength;
    double bits1 = static_cast<double>(n) * std::log2(static_cast<double>(cfg.channel.size1));
    double bits2 = static_cast<double>(n) * std::log2(static_cast<double>(cfg.channel.size2));
    if (bits1 > 62.0 || bits2 > 62.0)
        throw ConfigError("Monte Carlo mode needs N*log2|Y| <= 62 per alphabet");

    const auto trials = static_cast<std::ptrdiff_t>(cfg.trials);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> samples(
        static_cast<std::size_t>(trials));

    // Sampling is the hot loop; each trial owns a slot and a counter stream,
    // so the fill order does not matter.
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
        CounterRng rng(mix64(cfg.seed ^ (0x7260a4f1f6e8cd2bull +
                                         static_cast<std::uint64_t>(t) * kStreamStep)));
        // Pack slot s at place value size^s, matching the digit order the
        // exhaustive kernel uses, so a sequence gets the same color in
        // either mode.
        std::uint64_t y1_idx = 0, y2_idx = 0;
        std::uint64_t place1 = 1, place2 = 1;
        for (int s = 0; s < n; ++s) {
            auto [y1, y2] = draw_pair(cfg.channel, rng.next_unit());
            y1_idx += y1 * place1;
            y2_idx += y2 * place2;
            place1 *= cfg.channel.size1;
            place2 *= cfg.channel.size2;
        }
        samples[static_cast<std::size_t>(t)] = {coloring.color(y1_idx), y2_idx};
    }

    // Deterministic serial counting in trial order.
    std::map<std::pair<std::uint32_t, std::uint64_t>, long long> joint_counts;
    std::map<std::uint64_t, long long> y2_counts;
    std::map<std::uint32_t, long long> key_counts;
    for (const auto& s : samples) {
        ++joint_counts[s];
        ++y2_counts[s.second];
        ++key_counts[s.first];
    }

    auto plug_in = [&](const auto& counts) {
        double h = 0.0;
        long long support = 0;
        for (const auto& [cell, c] : counts) {
            (void)cell;
            if (c == 0) continue;
            ++support;
            h += neg_p_log2(static_cast<double>(c) / static_cast<double>(cfg.trials));
        }
        // Miller-Madow correction: (support - 1) / (2 n ln 2).
        if (support > 0)
            h += static_cast<double>(support - 1) /
                 (2.0 * static_cast<double>(cfg.trials) * std::log(2.0));
        return h;
    };

    KeySimReport rep;
    rep.gamma = gamma;
    rep.exhaustive = false;
    rep.key_entropy = plug_in(key_counts);
    double cond = plug_in(joint_counts) - plug_in(y2_counts);
    rep.conditional_key_entropy = cond > 0.0 ? cond : 0.0;
    rep.leakage = rep.key_entropy - rep.conditional_key_entropy;

    // Plug-in expected total variation from uniform: accumulate the per-y2
    // deviation and touched-color count in one pass over the joint counts.
    const double inv_gamma = 1.0 / static_cast<double>(gamma);
    std::map<std::uint64_t, std::pair<double, std::uint64_t>> tv_parts;
    for (const auto& [cell, c] : joint_counts) {
        if (c == 0) continue;
        double ny2 = static_cast<double>(y2_counts.at(cell.second));
        auto& part = tv_parts[cell.second];
        part.first += std::abs(static_cast<double>(c) / ny2 - inv_gamma);
        part.second += 1;
    }
    double tv_total = 0.0;
    for (const auto& [y2, part] : tv_parts) {
        double dev = part.first + static_cast<double>(gamma - part.second) * inv_gamma;
        tv_total += 0.5 * dev * static_cast<double>(y2_counts.at(y2)) /
                    static_cast<double>(cfg.trials);
    }
    rep.total_variation = tv_total;

    // Bootstrap standard error of the conditional entropy estimate.
    constexpr int kResamples = 32;
    double mean = 0.0, sq = 0.0;
    for (int b = 0; b < kResamples; ++b) {
        CounterRng rng(mix64(cfg.seed ^ (0xb007e7a9ull + static_cast<std::uint64_t>(b))));
        std::map<std::pair<std::uint32_t, std::uint64_t>, long long> jc;
        std::map<std::uint64_t, long long> yc;
        for (std::ptrdiff_t t = 0; t < trials; ++t) {
            const auto& s = samples[static_cast<std::size_t>(
                rng.next_u64() % static_cast<std::uint64_t>(cfg.trials))];
            ++jc[s];
            ++yc[s.second];
        }
        double c = plug_in(jc) - plug_in(yc);
        if (c < 0.0) c = 0.0;
        mean += c;
        sq += c * c;
    }
    mean /= kResamples;
    double var = (sq - kResamples * mean * mean) / (kResamples - 1);
    rep.conditional_entropy_stderr = var > 0.0 ? std::sqrt(var) : 0.0;

    double denom = static_cast<double>(n) * cfg.rate;
    rep.normalized_entropy = denom > 0.0 ? rep.conditional_key_entropy / denom : 0.0;
    return rep;
}

KeySimReport run_impl(const KeySimConfig& cfg, bool parallel) {
    require_config(cfg);
    std::uint64_t gamma = derive_gamma(cfg.blocklength, cfg.rate);
    KeyColoring coloring(gamma, cfg.seed, cfg.universal_hash);
    if (cfg.mode == KeySimMode::monte_carlo)
        return monte_carlo_kernel(cfg, gamma, coloring, parallel);

    ExhaustiveResult ex = exhaustive_kernel(
        cfg.channel, cfg.blocklength, gamma,
        [&](std::uint64_t i) { return coloring.color(i); }, parallel);
    KeySimReport rep;
    rep.gamma = gamma;
    rep.exhaustive = true;
    rep.key_entropy = ex.key_entropy;
    rep.conditional_key_entropy = ex.cond_entropy;
    rep.leakage = ex.key_entropy - ex.cond_entropy;
    rep.total_variation = ex.total_variation;
    double denom = static_cast<double>(cfg.blocklength) * cfg.rate;
    rep.normalized_entropy = denom > 0.0 ? ex.cond_entropy / denom : 0.0;
    return rep;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kStreamStep);
}

double CounterRng::next_unit() {
    // 53 high bits.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void PairChannel::validate() const {
    if (size1 < 2 || size2 < 2)
        throw ArgumentError("channel alphabets need at least two symbols");
    if (joint.size() != size1 * size2)
        throw ArgumentError("channel table has " + std::to_string(joint.size()) +
                            " entries, expected " + std::to_string(size1 * size2));
    double total = 0.0;
    for (double v : joint) {
        if (v < -1e-15)
            throw ArgumentError("channel table has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ArgumentError("channel table mass is " + std::to_string(total) +
                            ", expected 1");
}

std::vector<double> PairChannel::marginal1() const {
    std::vector<double> m(size1, 0.0);
    for (std::size_t y1 = 0; y1 < size1; ++y1)
        for (std::size_t y2 = 0; y2 < size2; ++y2) m[y1] += joint[y1 * size2 + y2];
    return m;
}

std::vector<double> PairChannel::marginal2() const {
    std::vector<double> m(size2, 0.0);
    for (std::size_t y1 = 0; y1 < size1; ++y1)
        for (std::size_t y2 = 0; y2 < size2; ++y2) m[y2] += joint[y1 * size2 + y2];
    return m;
}

PairChannel uniform_independent_channel(std::size_t size1, std::size_t size2) {
    PairChannel ch;
    ch.size1 = size1;
    ch.size2 = size2;
    ch.joint.assign(size1 * size2, 1.0 / static_cast<double>(size1 * size2));
    return ch;
}

PairChannel identical_channel(std::size_t size) {
    PairChannel ch;
    ch.size1 = size;
    ch.size2 = size;
    ch.joint.assign(size * size, 0.0);
    for (std::size_t y = 0; y < size; ++y)
        ch.joint[y * size + y] = 1.0 / static_cast<double>(size);
    return ch;
}

KeyColoring::KeyColoring(std::uint64_t gamma, std::uint64_t seed, bool universal_hash)
    : gamma_(gamma), key_(mix64(seed ^ 0xc01028f1ea7ull)), universal_(universal_hash) {
    if (gamma_ < 1 || gamma_ > kMaxGamma)
        throw ConfigError("color count " + std::to_string(gamma_) +
                          " outside [1, 2^20]");
    if (universal_) {
        a_ = mix64(key_ + 1) % (kMersenne61 - 1) + 1;  // in [1, p-1]
        b_ = mix64(key_ + 2) % kMersenne61;            // in [0, p-1]
    }
}

std::uint32_t KeyColoring::color(std::uint64_t index) const {
    if (universal_) {
        std::uint64_t v = mulmod61(a_, index % kMersenne61);
        v += b_;
        if (v >= kMersenne61) v -= kMersenne61;
        return static_cast<std::uint32_t>(v % gamma_);
    }
    std::uint64_t h = mix64(key_ + index * kStreamStep);
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(h) * gamma_) >> 64);
}

KeySimReport run_key_extraction(const KeySimConfig& config) {
    return run_impl(config, true);
}

KeySimReport run_key_extraction_serial(const KeySimConfig& config) {
    return run_impl(config, false);
}

OtpReport run_otp_roundtrip(const KeySimConfig& config, int message_bits, int trials) {
    require_config(config);
    std::uint64_t gamma = derive_gamma(config.blocklength, config.rate);
    double budget = static_cast<double>(config.blocklength) * config.rate;
    if (message_bits < 0 || message_bits > 62 ||
        static_cast<double>(message_bits) > std::floor(budget) + 1e-12)
        throw ArgumentError("message_bits = " + std::to_string(message_bits) +
                            " must lie in [0, floor(N*R)] and be at most 62");
    if (trials < 1)
        throw ArgumentError("trials must be positive, got " + std::to_string(trials));

    OtpReport rep;
    rep.message_bits = message_bits;
    rep.trials = trials;
    if (message_bits == 0) return rep;

    const std::uint64_t space = 1ull << message_bits;
    KeyColoring coloring(gamma, config.seed, config.universal_hash);
    std::vector<double> p1 = config.channel.marginal1();

    // Leakage about the masked message: m - H(K mod 2^m | Y2^N), exact.
    // Runs first so the exhaustive size limits are enforced up front.
    ExhaustiveResult ex = exhaustive_kernel(
        config.channel, config.blocklength, space,
        [&](std::uint64_t i) {
            return static_cast<std::uint32_t>(coloring.color(i) % space);
        },
        true);
    rep.message_leakage = static_cast<double>(message_bits) - ex.cond_entropy;

    // Roundtrip: mask a uniform message with the low bits of the key drawn
    // from a fresh observation, then unmask with the same key.
    bool all_ok = true;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(mix64(config.seed ^ (0x07b0a2d1ull +
                                            static_cast<std::uint64_t>(t) * kStreamStep)));
        std::uint64_t y1_idx = 0;
        std::uint64_t place = 1;
        for (int s = 0; s < config.blocklength; ++s) {
            double u = rng.next_unit();
            double cum = 0.0;
            std::size_t sym = config.channel.size1 - 1;
            for (std::size_t y = 0; y < config.channel.size1; ++y) {
                cum += p1[y];
                if (u < cum) {
                    sym = y;
                    break;
                }
            }
            y1_idx += sym * place;
            place *= config.channel.size1;
        }
        std::uint64_t pad = coloring.color(y1_idx) % space;
        std::uint64_t message = rng.next_u64() % space;
        std::uint64_t cipher = message ^ pad;
        all_ok = all_ok && ((cipher ^ pad) == message);
    }
    rep.decode_ok = all_ok;
    return rep;
}

std::vector<FrontierPoint> key_rate_frontier(const PairChannel& channel,
                                             int blocklength,
                                             const std::vector<double>& rate_grid,
                                             std::uint64_t seed) {
    if (rate_grid.empty()) throw ArgumentError("rate grid must not be empty");
    std::vector<FrontierPoint> out;
    out.reserve(rate_grid.size());
    for (double rate : rate_grid) {
        KeySimConfig cfg;
        cfg.channel = channel;
        cfg.blocklength = blocklength;
        cfg.rate = rate;
        cfg.mode = KeySimMode::exhaustive;
        cfg.seed = seed;
        KeySimReport rep = run_key_extraction(cfg);
        out.push_back({rate, rep.gamma, rep.normalized_entropy});
    }
    return out;
}

}  // namespace secrate
