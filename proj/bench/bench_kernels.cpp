// Times the OpenMP kernels against their serial reference implementations
// and verifies the outputs agree.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "takagi/expectation.hpp"
#include "takagi/levelsets.hpp"

using namespace takagi;

namespace {

double timed(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& name, double serial, double parallel, bool equal) {
    std::printf("%-34s %9.3fs %9.3fs %7.2fx  %s\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, equal ? "outputs equal" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

    {
        std::vector<RAdic> a, b;
        const double ts = timed([&] { a = enumerate_balanced_serial(2, 10); });
        const double tp = timed([&] { b = enumerate_balanced(2, 10); });
        row("enumerate_balanced r=2 m=10", ts, tp, a == b);
    }
    {
        std::vector<RAdic> a, b;
        const double ts = timed([&] { a = enumerate_balanced_serial(4, 5); });
        const double tp = timed([&] { b = enumerate_balanced(4, 5); });
        row("enumerate_balanced r=4 m=5", ts, tp, a == b);
    }
    {
        std::vector<RAdic> a, b;
        const double ts = timed([&] { a = enumerate_leading_serial(2, 12, 4); });
        const double tp = timed([&] { b = enumerate_leading(2, 12, 4); });
        row("enumerate_leading r=2 m=12 n=4", ts, tp, a == b);
    }
    {
        const Rational y = eval_exact(RAdic(2, Int(5), 4));
        LevelSetReport a, b;
        const double ts = timed([&] { a = solve_level_set_serial(2, y, 14); });
        const double tp = timed([&] { b = solve_level_set(2, y, 14); });
        row("solve_level_set r=2 depth=14", ts, tp,
            a.cells == b.cells && a.components == b.components);
    }
    {
        const Rational y = eval_exact(RAdic(4, Int(7), 3));
        LevelSetReport a, b;
        const double ts = timed([&] { a = solve_level_set_serial(4, y, 8); });
        const double tp = timed([&] { b = solve_level_set(4, y, 8); });
        row("solve_level_set r=4 depth=8", ts, tp,
            a.cells == b.cells && a.components == b.components);
    }
    {
        MCReport a, b;
        const double ts = timed([&] { a = monte_carlo_nloc_serial(2, 4, 500000, 1); });
        const double tp = timed([&] { b = monte_carlo_nloc(2, 4, 500000, 1); });
        row("monte_carlo r=2 M=4 n=5e5", ts, tp,
            a.mean == b.mean && a.std_error == b.std_error);
    }
    return 0;
}
