// Benchmark: OpenMP kernels against the serial reference.
// Times operator application (the solver's hot loop) and full assembly for a
// few mesh sizes and prints throughput plus the parallel speedup.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "h3b/levels.hpp"
#include "h3b/operator.hpp"

using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clk::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%4s %10s %12s %12s %9s %12s\n", "M", "dim", "apply_par", "apply_ser", "speedup",
                "assemble");

    for (int m : {12, 16, 20, 24}) {
        h3b::SystemParams params{1.0, 0.5, 1.0};
        auto rule = h3b::gauss_laguerre_rule(m);
        double h = h3b::default_scale(params, rule);
        h3b::MeshSpec mesh{m, h};

        auto t0 = clk::now();
        h3b::AssembledOperator op = h3b::assemble(mesh, rule, params);
        double t_asm = seconds_since(t0);

        Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(op.dimension(), 0.1, 1.0);
        Eigen::VectorXd y(op.dimension());
        // warm up both paths and check they agree bit for bit
        Eigen::VectorXd y_ser(op.dimension());
        op.apply(x, y);
        op.apply_serial(x, y_ser);
        if (y != y_ser) {
            std::printf("M=%d: parallel and serial outputs differ!\n", m);
            return 1;
        }

        int reps = m <= 16 ? 40 : 10;
        double t_par = time_best_of(3, [&] {
            for (int r = 0; r < reps; ++r) op.apply(x, y);
        }) / reps;
        double t_ser = time_best_of(3, [&] {
            for (int r = 0; r < reps; ++r) op.apply_serial(x, y_ser);
        }) / reps;

        std::printf("%4d %10lld %9.3f ms %9.3f ms %8.2fx %9.3f s\n", m,
                    static_cast<long long>(op.dimension()), 1e3 * t_par, 1e3 * t_ser,
                    t_ser / t_par, t_asm);
    }
    return 0;
}
