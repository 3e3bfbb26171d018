#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "stlf/kernels.hpp"
#include "stlf/rng.hpp"

using namespace stlf;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double s, double par, bool ok) {
    std::printf("%-26s %12.2f %12.2f %8.2fx  %s\n", name, s, par,
                par > 0 ? s / par : 0.0, ok ? "identical" : "MISMATCH");
}

// O(M^2) transforms at large M
bool bench_masses(uint32_t M) {
    Zp R(3, 8, 4);
    uint64_t mod = R.modulus();
    Rng rng(42);
    std::vector<uint64_t> a(M);
    for (auto& v : a) v = rng.below(mod);
    std::vector<uint64_t> pascal = kernels::pascal_triangle(M, mod);
    std::vector<uint64_t> h1(M), h2(M);
    auto t0 = std::chrono::steady_clock::now();
    kernels::point_masses_serial(a.data(), h1.data(), M, 1, mod, pascal.data());
    double s = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    kernels::point_masses_parallel(a.data(), h2.data(), M, 1, mod, pascal.data());
    double p = ms_since(t0);
    bool ok = h1 == h2;
    std::printf("  (M=%u)\n", M);
    row("point_masses", s, p, ok);
    return ok;
}

// O(M^3) contraction with a random matrix at mid M
bool bench_apply(uint32_t M) {
    Zp R(3, 8, 4);
    uint64_t mod = R.modulus();
    Rng rng(7);
    std::vector<uint64_t> a(M), K(size_t(M) * M);
    for (auto& v : a) v = rng.below(mod);
    for (auto& v : K) v = rng.below(mod);
    std::vector<uint64_t> b1(M), b2(M);
    auto t0 = std::chrono::steady_clock::now();
    kernels::matrix_apply_serial(a.data(), b1.data(), K.data(), M, 1, mod);
    double s = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    kernels::matrix_apply_parallel(a.data(), b2.data(), K.data(), M, 1, mod);
    double p = ms_since(t0);
    bool ok = b1 == b2;
    std::printf("  (M=%u)\n", M);
    row("matrix_apply", s, p, ok);
    return ok;
}

// the substitution kernel at production-like sizes (k! head-room caps M)
bool bench_subst(uint32_t M, uint32_t reps) {
    Zp R(3, 8, 24);
    Padic alpha = R.from_rational(1, 5);
    kernels::SubstKernel k1 = kernels::substitution_kernel_serial(R, alpha, M);
    kernels::SubstKernel k2 = kernels::substitution_kernel_parallel(R, alpha, M);
    auto t0 = std::chrono::steady_clock::now();
    for (uint32_t i = 0; i < reps; ++i)
        k1 = kernels::substitution_kernel_serial(R, alpha, M);
    double s = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    for (uint32_t i = 0; i < reps; ++i)
        k2 = kernels::substitution_kernel_parallel(R, alpha, M);
    double p = ms_since(t0);
    bool ok = k1.K == k2.K;
    std::printf("  (M=%u, %u reps)\n", M, reps);
    row("substitution_kernel", s, p, ok);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    uint32_t scale = 1;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--full") scale = 4;
        if (arg == "--quick") scale = 0;
    }
    std::printf("threads=%d (openmp %s)\n", kernels::max_threads(),
                kernels::openmp_compiled() ? "on" : "off");
    std::printf("%-26s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
    bool ok = true;
    ok &= bench_masses(scale ? 4096 * scale : 1024);
    ok &= bench_apply(scale ? 768 * scale : 256);
    ok &= bench_subst(48, scale ? 400 * scale : 50);
    if (!ok) {
        std::printf("FAIL: serial/parallel mismatch\n");
        return 1;
    }
    return 0;
}
