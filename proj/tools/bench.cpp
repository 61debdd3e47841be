// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: the finite-field point oracle and the Hilbert table.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zchain/hilbert.hpp"

using namespace zchain;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

void bench_oracle(const TypeVector& tv, int q) {
    ZRep v = dual(make_u_of_r(tv, field_Q()));
    auto t0 = clk::now();
    auto serial = oracle_points_serial(v, q);
    double t_serial = ms_since(t0);
    t0 = clk::now();
    auto parallel = oracle_points(v, q, true);
    double t_parallel = ms_since(t0);
    bool equal = serial.size() == parallel.size();
    for (size_t i = 0; equal && i < serial.size(); ++i)
        equal = serial[i].line.x == parallel[i].line.x;
    std::printf("oracle  r=%-10s q=%d  points=%-7zu serial %8.1f ms  parallel %8.1f ms  x%.2f  %s\n",
                tv.str().c_str(), q, serial.size(), t_serial, t_parallel,
                t_serial / (t_parallel > 0 ? t_parallel : 1e-9), equal ? "equal" : "MISMATCH");
}

void bench_hilbert(const TypeVector& tv, int box_edge) {
    ZRep v = dual(make_u_of_r(tv, field_Q()));
    std::vector<int> box(tv.d() + 1, box_edge);
    auto t0 = clk::now();
    auto serial = hilbert_report(v, tv.total(), box, PairMode::All, false);
    double t_serial = ms_since(t0);
    t0 = clk::now();
    auto parallel = hilbert_report(v, tv.total(), box, PairMode::All, true);
    double t_parallel = ms_since(t0);
    bool equal = serial.size() == parallel.size();
    for (size_t i = 0; equal && i < serial.size(); ++i)
        equal = serial[i].computed == parallel[i].computed;
    std::printf("hilbert r=%-10s box=%d  cells=%-7zu serial %8.1f ms  parallel %8.1f ms  x%.2f  %s\n",
                tv.str().c_str(), box_edge, serial.size(), t_serial, t_parallel,
                t_serial / (t_parallel > 0 ? t_parallel : 1e-9), equal ? "equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP with %d threads\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif
    bench_oracle(TypeVector({1, 1, 1}), 7);
    bench_oracle(TypeVector({2, 1, 1}), 3);
    bench_oracle(TypeVector({1, 1, 1, 1}), 2);
    bench_hilbert(TypeVector({1, 1}), 4);
    bench_hilbert(TypeVector({1, 1, 1}), 3);
    bench_hilbert(TypeVector({2, 1}), 4);
    return 0;
}
