// Times the OpenMP kernels against their serial references on a mid-size
// problem and checks that both paths agree.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ocdma/criteria.hpp"
#include "ocdma/matrix.hpp"
#include "ocdma/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ocdma;

namespace {

SignatureMatrix random_matrix(int m, int n, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SignatureMatrix a = SignatureMatrix::filled(m, n, 0.0);
    for (auto& e : a.entries) e = u(rng);
    return a;
}

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, agree ? "values agree" : "VALUES DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        const SignatureMatrix a = random_matrix(4, 8, 7);
        CriterionSpec spec;
        spec.kind = Criterion::Capacity;
        spec.channel = ChannelParams::from_ebn0_db(8.0);
        spec.mc_samples = 100000;
        spec.seed = 11;
        CriterionValue vs, vp;
        const double ts = time_ms([&] { vs = serial::capacity(a, spec); });
        const double tp = time_ms([&] { vp = capacity(a, spec); });
        report("capacity MC (4x8, 1e5)", ts, tp, vs.value == vp.value);
    }
    {
        const SignatureMatrix a = random_matrix(3, 6, 3);
        CriterionSpec spec;
        spec.kind = Criterion::Ber;
        spec.channel = ChannelParams::from_ebn0_db(6.0);
        spec.mc_samples = 400000;
        spec.seed = 11;
        CriterionValue vs, vp;
        const double ts = time_ms([&] { vs = serial::ber(a, spec); });
        const double tp = time_ms([&] { vp = ber(a, spec); });
        report("BER MC (3x6, 4e5 bits)", ts, tp, vs.value == vp.value);
    }
    {
        const SignatureMatrix a = random_matrix(6, 14, 5);
        CriterionValue vs, vp;
        const double ts = time_ms([&] { vs = serial::md(a); });
        const double tp = time_ms([&] { vp = md(a); });
        report("min distance (6x14)", ts, tp, vs.value == vp.value);
    }
    {
        const SignatureMatrix a = random_matrix(6, 13, 5);
        const ChannelParams ch = ChannelParams::from_ebn0_db(8.0);
        CriterionValue vs, vp;
        const double ts = time_ms([&] { vs = serial::qd(a, ch); });
        const double tp = time_ms([&] { vp = qd(a, ch); });
        const bool agree = std::abs(vs.value - vp.value) <= 1e-9 * std::abs(vs.value);
        report("Q-distance sum (6x13)", ts, tp, agree);
    }
    {
        const SignatureMatrix a = random_matrix(6, 13, 9);
        const ChannelParams ch = ChannelParams::from_ebn0_db(8.0);
        CriterionValue vs, vp;
        const double ts = time_ms([&] { vs = serial::ed(a, ch); });
        const double tp = time_ms([&] { vp = ed(a, ch); });
        const bool agree = std::abs(vs.value - vp.value) <= 1e-9 * std::abs(vs.value);
        report("exp-distance sum (6x13)", ts, tp, agree);
    }
    return 0;
}
