// Wall-clock comparison of the parallel kernels against their serial
// reference implementations.  Each benchmark also asserts that the two
// paths produce bit-identical results, which is the contract that lets the
// serial variants serve as test oracles.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "secrate/channels.hpp"
#include "secrate/keysim.hpp"

using namespace secrate;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_of(F&& fn) {
    auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

PairChannel correlated_channel() {
    PairChannel channel;
    channel.size1 = 2;
    channel.size2 = 2;
    channel.joint = {0.4, 0.1, 0.1, 0.4};
    return channel;
}

bool reports_equal(const KeySimReport& a, const KeySimReport& b) {
    return a.gamma == b.gamma && a.key_entropy == b.key_entropy &&
           a.conditional_key_entropy == b.conditional_key_entropy &&
           a.leakage == b.leakage && a.total_variation == b.total_variation &&
           a.normalized_entropy == b.normalized_entropy &&
           a.conditional_entropy_stderr == b.conditional_entropy_stderr &&
           a.exhaustive == b.exhaustive;
}

int print_row(const char* name, double serial_s, double parallel_s, bool match) {
    std::printf("%-32s %10.3f %12.3f %9.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, match ? "identical" : "MISMATCH");
    return match ? 0 : 1;
}

}  // namespace

int main() {
    std::printf("%-32s %10s %12s %10s   %s\n", "kernel", "serial s", "parallel s",
                "speedup", "result");
    int mismatches = 0;

    {
        std::vector<double> grid;
        for (int i = 0; i <= 25; ++i) grid.push_back(static_cast<double>(i) * 0.02);
        std::vector<SweepRow> serial_rows, parallel_rows;
        double ts = time_of([&] { serial_rows = sweep_blackwell_sumrate_serial(grid, 401); });
        double tp = time_of([&] { parallel_rows = sweep_blackwell_sumrate(grid, 401); });
        bool match = serial_rows.size() == parallel_rows.size() &&
                     std::memcmp(serial_rows.data(), parallel_rows.data(),
                                 serial_rows.size() * sizeof(SweepRow)) == 0;
        mismatches += print_row("sum-rate sweep (26 x 401 grid)", ts, tp, match);
    }

    {
        KeySimConfig config;
        config.channel = correlated_channel();
        config.blocklength = 12;
        config.rate = 0.5;
        config.seed = 3;
        KeySimReport serial_report, parallel_report;
        double ts = time_of([&] { serial_report = run_key_extraction_serial(config); });
        double tp = time_of([&] { parallel_report = run_key_extraction(config); });
        mismatches += print_row("exhaustive extraction (N=12)", ts, tp,
                                reports_equal(serial_report, parallel_report));
    }

    {
        KeySimConfig config;
        config.channel = correlated_channel();
        config.blocklength = 24;
        config.rate = 0.5;
        config.seed = 3;
        config.mode = KeySimMode::monte_carlo;
        config.trials = 200000;
        KeySimReport serial_report, parallel_report;
        double ts = time_of([&] { serial_report = run_key_extraction_serial(config); });
        double tp = time_of([&] { parallel_report = run_key_extraction(config); });
        mismatches += print_row("sampled extraction (200k trials)", ts, tp,
                                reports_equal(serial_report, parallel_report));
    }

    if (mismatches != 0) std::printf("%d kernel(s) diverged from the reference\n", mismatches);
    return mismatches;
}
