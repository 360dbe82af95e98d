#include "shearsub/masks.hpp"
#include "shearsub/subdivision.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace shearsub;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

FieldD random_field(long long n, std::mt19937_64& rng) {
    FieldD c = FieldD::zeros(0, 0, n, n);
    std::uniform_int_distribution<int> coef(-64, 64);
    for (auto& v : c.values) v = Dyadic(coef(rng), 4);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    long long n = argc > 1 ? std::atoll(argv[1]) : 192;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    std::mt19937_64 rng(7);
    MaskPair p = dd_pair();
    FieldD cd = random_field(n, rng);
    FieldF cf = to_float(cd);

#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled\n");
#endif
    std::printf("input %lldx%lld, %d reps, dd pair\n\n", n, n, reps);

    for (uint8_t eps : {uint8_t{0}, uint8_t{1}}) {
        const LaurentPoly& a = eps ? p.a1 : p.a0;
        FieldD outg = step(a, eps, cd);
        FieldD outs = step_serial(a, eps, cd);
        std::printf("eps=%d  gather/serial outputs %s\n", eps,
                    outg == outs ? "identical" : "DIFFER");

        double tg = 0, ts = 0, tgf = 0, tsf = 0;
        for (int r = 0; r < reps; ++r) {
            tg += time_ms([&] { step(a, eps, cd); });
            ts += time_ms([&] { step_serial(a, eps, cd); });
            tgf += time_ms([&] { step(a, eps, cf); });
            tsf += time_ms([&] { step_serial(a, eps, cf); });
        }
        std::printf("  dyadic : gather %8.2f ms   serial %8.2f ms\n", tg / reps, ts / reps);
        std::printf("  double : gather %8.2f ms   serial %8.2f ms\n\n", tgf / reps, tsf / reps);
    }
    return 0;
}
