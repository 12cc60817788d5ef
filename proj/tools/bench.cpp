// Benchmark of the row-parallel ball kernels against the serial reference.
#include <chrono>
#include <complex>
#include <cstdio>

#include "eisenlab/autoseries.hpp"
#include "eisenlab/kronecker.hpp"

using namespace eisenlab;

namespace {

double time_ms(void (*fn)()) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void run_eell() {
    EllipticAnchor e = anchor_i();
    volatile double sink =
        eis_ell(e, UhpPoint(0.3, 1.4), cplx(2.5), SumMethod::direct, {}, 13.0).value.real();
    (void)sink;
}

void run_multi() {
    EllipticAnchor e = anchor_rho();
    std::vector<cplx> exps;
    for (int k = 0; k < 12; ++k) exps.push_back(cplx(2.0 + 2.0 * k));
    auto v = ball_series_multi(e, UhpPoint(0.0, 2.0), exps, BallKernel::cosh_pow, {}, 12.0);
    volatile double sink = v.back().value.real();
    (void)sink;
}

void run_rows() {
    PrecisionBudget b{1e-7, 400'000'000};
    volatile double sink =
        eis_par(UhpPoint(0.0, 1.0), cplx(2.0), SumMethod::direct, b).value.real();
    (void)sink;
}

} // namespace

int main() {
    struct Case {
        const char* name;
        void (*fn)();
    } cases[] = {
        {"eis_ell direct R=13", run_eell},
        {"cosh powers x12 R=12", run_multi},
        {"coprime rows tol 1e-7", run_rows},
    };
    std::printf("%-24s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
    for (auto& c : cases) {
        exec_mode() = ExecMode::serial;
        c.fn();  // warm caches and the kappa fit
        double ts = time_ms(c.fn);
        exec_mode() = ExecMode::parallel;
        double tp = time_ms(c.fn);
        std::printf("%-24s %12.1f %12.1f %8.2f\n", c.name, ts, tp, ts / tp);
    }
    exec_mode() = ExecMode::parallel;
    return 0;
}
