#include "stlf/kernels.hpp"

#include <atomic>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stlf::kernels {

using u128 = unsigned __int128;

namespace {
std::atomic<Mode> g_mode{Mode::Auto};

inline uint64_t addm(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t s = a + b;
    return s >= m ? s - m : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + m - b;
}
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((u128(a) * b) % m);
}

bool go_parallel(size_t work) {
    switch (g_mode.load()) {
        case Mode::ForceSerial: return false;
        case Mode::ForceParallel: return openmp_compiled();
        case Mode::Auto: break;
    }
    return openmp_compiled() && work >= (size_t(1) << 16) && max_threads() > 1;
}
} // namespace

void set_mode(Mode m) { g_mode.store(m); }
Mode mode() { return g_mode.load(); }

bool openmp_compiled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

uint32_t factorial_valuation(uint64_t p, uint64_t n) {
    uint64_t v = 0;
    for (uint64_t q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break; // avoid overflow of q *= p
    }
    return uint32_t(v);
}

std::vector<uint64_t> pascal_triangle(uint32_t M, uint64_t mod) {
    std::vector<uint64_t> t(size_t(M) * (M + 1) / 2);
    for (uint32_t n = 0; n < M; ++n) {
        uint64_t* row = &t[size_t(n) * (n + 1) / 2];
        const uint64_t* prev = n ? &t[size_t(n - 1) * n / 2] : nullptr;
        row[0] = 1 % mod;
        for (uint32_t l = 1; l < n; ++l) row[l] = addm(prev[l - 1], prev[l], mod);
        if (n) row[n] = 1 % mod;
    }
    return t;
}

namespace {

template <int SIGNED>
void triangular_transform(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                          uint64_t mod, const uint64_t* pascal, bool parallel) {
    // SIGNED=1: h_l = sum_{n>=l} (-1)^(n-l) C(n,l) a_n; SIGNED=0: plain C(n,l) sums
    auto body = [&](uint32_t l) {
        uint64_t* out = h + size_t(l) * block;
        for (size_t b = 0; b < block; ++b) out[b] = 0;
        for (uint32_t n = l; n < M; ++n) {
            uint64_t coef = pascal[size_t(n) * (n + 1) / 2 + l];
            if (coef == 0) continue;
            const uint64_t* in = a + size_t(n) * block;
            bool neg = SIGNED && ((n - l) & 1);
            for (size_t b = 0; b < block; ++b) {
                uint64_t term = mulm(coef, in[b], mod);
                out[b] = neg ? subm(out[b], term, mod) : addm(out[b], term, mod);
            }
        }
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (int64_t l = 0; l < int64_t(M); ++l) body(uint32_t(l));
        return;
    }
#else
    (void)parallel;
#endif
    for (uint32_t l = 0; l < M; ++l) body(l);
}

} // namespace

void point_masses_serial(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                         uint64_t mod, const uint64_t* pascal) {
    triangular_transform<1>(a, h, M, block, mod, pascal, false);
}
void point_masses_parallel(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                           uint64_t mod, const uint64_t* pascal) {
    triangular_transform<1>(a, h, M, block, mod, pascal, true);
}
void point_masses(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                  uint64_t mod, const uint64_t* pascal) {
    triangular_transform<1>(a, h, M, block, mod, pascal,
                            go_parallel(size_t(M) * M * block));
}

namespace {

// a_n = sum_{l>=n} C(l,n) h_l : reuse the triangular loop with swapped roles
void inverse_transform(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                       uint64_t mod, const uint64_t* pascal, bool parallel) {
    auto body = [&](uint32_t n) {
        uint64_t* out = a + size_t(n) * block;
        for (size_t b = 0; b < block; ++b) out[b] = 0;
        for (uint32_t l = n; l < M; ++l) {
            uint64_t coef = pascal[size_t(l) * (l + 1) / 2 + n];
            if (coef == 0) continue;
            const uint64_t* in = h + size_t(l) * block;
            for (size_t b = 0; b < block; ++b)
                out[b] = addm(out[b], mulm(coef, in[b], mod), mod);
        }
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (int64_t n = 0; n < int64_t(M); ++n) body(uint32_t(n));
        return;
    }
#else
    (void)parallel;
#endif
    for (uint32_t n = 0; n < M; ++n) body(n);
}

} // namespace

void masses_to_coeffs_serial(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                             uint64_t mod, const uint64_t* pascal) {
    inverse_transform(h, a, M, block, mod, pascal, false);
}
void masses_to_coeffs_parallel(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                               uint64_t mod, const uint64_t* pascal) {
    inverse_transform(h, a, M, block, mod, pascal, true);
}
void masses_to_coeffs(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                      uint64_t mod, const uint64_t* pascal) {
    inverse_transform(h, a, M, block, mod, pascal, go_parallel(size_t(M) * M * block));
}

void binomial_row(const Zp& R, const Padic& alpha, uint32_t M,
                  std::vector<uint64_t>& out, std::vector<uint32_t>& prec_out) {
    uint64_t p = R.prime();
    uint64_t mod = R.modulus();
    out.assign(M, 0);
    prec_out.assign(M, alpha.prec());
    out[0] = 1;
    uint64_t acc = 1;                    // C(alpha, j) scaled: exact mod p^(prec - v_p(j!))
    uint64_t x = alpha.residue();        // alpha mod p^store
    for (uint32_t j = 1; j < M; ++j) {
        // acc *= (alpha - j + 1) / j
        uint64_t factor = subm(x, (j - 1) % mod, mod);
        acc = mulm(acc, factor, mod);
        uint64_t den = j;
        uint32_t v = 0;
        while (den % p == 0) { den /= p; ++v; }
        if (v) {
            uint64_t q = 1;
            for (uint32_t i = 0; i < v; ++i) q *= p;
            if (acc % q != 0)
                throw insufficient_precision("binomial coefficient division by p^v not exact");
            acc /= q;
        }
        if (den > 1)
            acc = mulm(acc, R.make(int64_t(den)).inverse().residue(), mod);
        uint32_t loss = factorial_valuation(p, j);
        if (loss >= alpha.prec())
            throw insufficient_precision("N <= v_p(k!) in binomial expansion");
        prec_out[j] = alpha.prec() - loss;
        out[j] = acc;
    }
}

namespace {

SubstKernel build_kernel(const Zp& R, const Padic& alpha, uint32_t M, bool parallel) {
    SubstKernel k;
    k.M = M;
    k.mod = R.modulus();
    k.K.assign(size_t(M) * M, 0);
    k.col_prec.assign(M, alpha.prec());
    uint64_t p = R.prime();
    for (uint32_t j = 1; j < M; ++j) {
        uint32_t loss = factorial_valuation(p, j);
        if (loss >= alpha.prec())
            throw insufficient_precision("N <= v_p(k!) in substitution kernel");
        k.col_prec[j] = alpha.prec() - loss;
        if (loss) k.precision_loss = true;
    }
    std::vector<uint64_t> pascal = pascal_triangle(M, k.mod);

    // B(i, j) = C(alpha*i, j); then K(n,j) = sum_i (-1)^(n-i) C(n,i) B(i,j)
    std::vector<uint64_t> B(size_t(M) * M);
    auto fill_B_row = [&](uint32_t i) {
        Padic ai = alpha * R.make(int64_t(i));
        std::vector<uint64_t> row;
        std::vector<uint32_t> pr;
        binomial_row(R, ai, M, row, pr);
        for (uint32_t j = 0; j < M; ++j) B[size_t(i) * M + j] = row[j];
    };
    auto fill_K_row = [&](uint32_t n) {
        const uint64_t* prow = &pascal[size_t(n) * (n + 1) / 2];
        uint64_t* out = &k.K[size_t(n) * M];
        for (uint32_t i = 0; i <= n; ++i) {
            uint64_t c = prow[i];
            if (c == 0) continue;
            bool neg = (n - i) & 1;
            const uint64_t* brow = &B[size_t(i) * M];
            for (uint32_t j = 0; j < M; ++j) {
                uint64_t term = mulm(c, brow[j], k.mod);
                out[j] = neg ? subm(out[j], term, k.mod) : addm(out[j], term, k.mod);
            }
        }
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int64_t i = 0; i < int64_t(M); ++i) fill_B_row(uint32_t(i));
#pragma omp parallel for schedule(dynamic, 4)
        for (int64_t n = 0; n < int64_t(M); ++n) fill_K_row(uint32_t(n));
        return k;
    }
#else
    (void)parallel;
#endif
    for (uint32_t i = 0; i < M; ++i) fill_B_row(i);
    for (uint32_t n = 0; n < M; ++n) fill_K_row(n);
    return k;
}

} // namespace

SubstKernel substitution_kernel_serial(const Zp& R, const Padic& alpha, uint32_t M) {
    return build_kernel(R, alpha, M, false);
}
SubstKernel substitution_kernel_parallel(const Zp& R, const Padic& alpha, uint32_t M) {
    return build_kernel(R, alpha, M, true);
}
SubstKernel substitution_kernel(const Zp& R, const Padic& alpha, uint32_t M) {
    return build_kernel(R, alpha, M, go_parallel(size_t(M) * M * M));
}

namespace {

void apply(const uint64_t* a, uint64_t* b, const uint64_t* K, uint32_t M,
           size_t block, uint64_t mod, bool parallel) {
    auto body = [&](uint32_t j) {
        uint64_t* out = b + size_t(j) * block;
        for (size_t t = 0; t < block; ++t) out[t] = 0;
        for (uint32_t n = 0; n < M; ++n) {
            uint64_t c = K[size_t(n) * M + j];
            if (c == 0) continue;
            const uint64_t* in = a + size_t(n) * block;
            for (size_t t = 0; t < block; ++t)
                out[t] = addm(out[t], mulm(c, in[t], mod), mod);
        }
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t j = 0; j < int64_t(M); ++j) body(uint32_t(j));
        return;
    }
#else
    (void)parallel;
#endif
    for (uint32_t j = 0; j < M; ++j) body(j);
}

} // namespace

void matrix_apply_serial(const uint64_t* a, uint64_t* b, const uint64_t* K,
                         uint32_t M, size_t block, uint64_t mod) {
    apply(a, b, K, M, block, mod, false);
}
void matrix_apply_parallel(const uint64_t* a, uint64_t* b, const uint64_t* K,
                           uint32_t M, size_t block, uint64_t mod) {
    apply(a, b, K, M, block, mod, true);
}
void matrix_apply(const uint64_t* a, uint64_t* b, const uint64_t* K,
                  uint32_t M, size_t block, uint64_t mod) {
    apply(a, b, K, M, block, mod, go_parallel(size_t(M) * M * block));
}

} // namespace stlf::kernels
