// Timing comparisons: the memo-free reference versus the memoized solver,
// the shared-table root split, and OpenMP across independent solves.
// Every parallel result is checked against its serial counterpart.
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "satgame/solver.hpp"

using namespace satgame;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0)
        .count();
}

double solve_ms(const GameSpec& spec, int threads, long long& value) {
    Solver solver(spec, SolverOptions{0, threads});
    auto t0 = Clock::now();
    value = solver.solve().value;
    return ms_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial versus parallel solver timings"};
    int threads =
#ifdef _OPENMP
        omp_get_max_threads();
#else
        static_cast<int>(std::thread::hardware_concurrency());
#endif
    int reps = 3;
    app.add_option("--threads", threads, "parallel worker count");
    app.add_option("--reps", reps, "repetitions (best time kept)");
    CLI11_PARSE(app, argc, argv);
    if (threads < 2) threads = 2;
    int mismatches = 0;
    std::printf("hardware threads: %u (speedups are bounded by this)\n\n",
                std::thread::hardware_concurrency());

    std::printf("reference versus memoized (S4-free, P3 score, n=6)\n");
    {
        GameSpec tiny{ForbiddenSpec::of(PatternId::star(4)),
                      PatternId::path(3), 6, Player::max};
        auto t0 = Clock::now();
        long long ref = reference_solve_value(tiny, initial_state(tiny));
        double ref_ms = ms_since(t0);
        long long memo = 0;
        double memo_ms = solve_ms(tiny, 1, memo);
        std::printf("  %-34s value %lld  %10.1f ms\n", "memo-free minimax",
                    ref, ref_ms);
        std::printf("  %-34s value %lld  %10.1f ms\n",
                    "canonicalized, memoized", memo, memo_ms);
        if (ref != memo) ++mismatches;
    }

    std::printf("\nsingle solve, shared-table root split (%d threads)\n",
                threads);
    std::printf("  states reconverge across subtrees, so this holds level "
                "rather than scaling\n");
    struct Case {
        const char* label;
        GameSpec spec;
    };
    const std::vector<Case> cases = {
        {"K3-free, P4 score, n=10",
         {ForbiddenSpec::of(PatternId::triangle()), PatternId::path(4), 10,
          Player::max}},
        {"P5-free, K3 score, n=10",
         {ForbiddenSpec::of(PatternId::path(5)), PatternId::triangle(), 10,
          Player::max}},
        {"cycle-free, S5 score, n=11",
         {ForbiddenSpec::cycles(), PatternId::star(5), 11, Player::max}},
    };
    for (const Case& c : cases) {
        double serial = 1e300, parallel = 1e300;
        long long v1 = 0, vN = 0;
        for (int rep = 0; rep < reps; ++rep) {
            serial = std::min(serial, solve_ms(c.spec, 1, v1));
            parallel = std::min(parallel, solve_ms(c.spec, threads, vN));
        }
        if (v1 != vN) {
            ++mismatches;
            std::printf("  %-34s serial %lld != parallel %lld\n", c.label,
                        v1, vN);
            continue;
        }
        std::printf("  %-34s value %lld  serial %8.1f ms  parallel %8.1f "
                    "ms  %5.2fx\n",
                    c.label, v1, serial, parallel, serial / parallel);
    }

    std::printf("\nindependent solves across n (%d threads)\n", threads);
    struct Sweep {
        const char* label;
        ForbiddenSpec forbid;
        PatternId score;
        int lo, hi;
    };
    const std::vector<Sweep> sweeps = {
        {"K3-free, P4 score, n=4..10",
         ForbiddenSpec::of(PatternId::triangle()), PatternId::path(4), 4,
         10},
        {"P5-free, K3 score, n=4..10", ForbiddenSpec::of(PatternId::path(5)),
         PatternId::triangle(), 4, 10},
    };
    for (const Sweep& s : sweeps) {
        std::vector<GameSpec> specs;
        for (int n = s.lo; n <= s.hi; ++n)
            specs.push_back({s.forbid, s.score, n, Player::max});
        std::vector<long long> serial_vals(specs.size()),
            parallel_vals(specs.size());
        double serial = 1e300, parallel = 1e300;
        for (int rep = 0; rep < reps; ++rep) {
            auto t0 = Clock::now();
            for (std::size_t i = 0; i < specs.size(); ++i)
                solve_ms(specs[i], 1, serial_vals[i]);
            serial = std::min(serial, ms_since(t0));
            t0 = Clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
            for (std::size_t i = 0; i < specs.size(); ++i)
                solve_ms(specs[i], 1, parallel_vals[i]);
            parallel = std::min(parallel, ms_since(t0));
        }
        if (serial_vals != parallel_vals) {
            ++mismatches;
            std::printf("  %-34s value mismatch across the sweep\n",
                        s.label);
            continue;
        }
        std::printf("  %-34s serial %8.1f ms  parallel %8.1f ms  %5.2fx\n",
                    s.label, serial, parallel, serial / parallel);
    }

    if (mismatches != 0)
        std::printf("\n%d mismatch(es) between serial and parallel values\n",
                    mismatches);
    return mismatches == 0 ? 0 : 1;
}
