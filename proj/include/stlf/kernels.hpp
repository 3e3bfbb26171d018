#pragma once

#include <cstdint>
#include <vector>

#include "stlf/zp.hpp"

namespace stlf::kernels {

/// Thread dispatch for the block-linear kernels.  Exact modular arithmetic is
/// associative and commutative, so the parallel and serial paths are required
/// to produce bit-identical output (asserted by the test suite and compared
/// by tools/bench-kernels).
enum class Mode { Auto, ForceSerial, ForceParallel };
void set_mode(Mode m);
Mode mode();
bool openmp_compiled();
int max_threads();

/// Pascal triangle C(n,l) mod `mod`, rows 0..M-1 packed at offset n(n+1)/2.
std::vector<uint64_t> pascal_triangle(uint32_t M, uint64_t mod);

/// h[l] = sum_{n>=l} (-1)^(n-l) C(n,l) a[n]  (point masses of a polynomial
/// Amice transform).  a and h hold M blocks of `block` limbs each.
void point_masses_serial(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                         uint64_t mod, const uint64_t* pascal);
void point_masses_parallel(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                           uint64_t mod, const uint64_t* pascal);
void point_masses(const uint64_t* a, uint64_t* h, uint32_t M, size_t block,
                  uint64_t mod, const uint64_t* pascal);

/// Inverse transform: a[n] = sum_{l>=n} C(l,n) h[l].
void masses_to_coeffs_serial(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                             uint64_t mod, const uint64_t* pascal);
void masses_to_coeffs_parallel(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                               uint64_t mod, const uint64_t* pascal);
void masses_to_coeffs(const uint64_t* h, uint64_t* a, uint32_t M, size_t block,
                      uint64_t mod, const uint64_t* pascal);

/// Kernel matrix of T -> (1+T)^alpha - 1 on truncated series:
/// K(n,j) = sum_i (-1)^(n-i) C(n,i) C(alpha*i, j), so that b_j = sum_n a_n K(n,j).
/// Column j is exact modulo p^col_prec[j] (the k! division loses v_p(j!)).
struct SubstKernel {
    uint32_t M = 0;
    uint64_t mod = 0;
    std::vector<uint64_t> K;            // row-major M x M
    std::vector<uint32_t> col_prec;
    bool precision_loss = false;        // some col_prec[j] < alpha precision
};

SubstKernel substitution_kernel_serial(const Zp& R, const Padic& alpha, uint32_t M);
SubstKernel substitution_kernel_parallel(const Zp& R, const Padic& alpha, uint32_t M);
SubstKernel substitution_kernel(const Zp& R, const Padic& alpha, uint32_t M);

/// b[j] = sum_n a[n] K(n,j) on M blocks of `block` limbs.
void matrix_apply_serial(const uint64_t* a, uint64_t* b, const uint64_t* K,
                         uint32_t M, size_t block, uint64_t mod);
void matrix_apply_parallel(const uint64_t* a, uint64_t* b, const uint64_t* K,
                           uint32_t M, size_t block, uint64_t mod);
void matrix_apply(const uint64_t* a, uint64_t* b, const uint64_t* K,
                  uint32_t M, size_t block, uint64_t mod);

/// Binomial row C(alpha, 0..M-1); prec_out[j] tells the precision kept.
/// Throws insufficient_precision when a column would keep no digits.
void binomial_row(const Zp& R, const Padic& alpha, uint32_t M,
                  std::vector<uint64_t>& out, std::vector<uint32_t>& prec_out);

uint32_t factorial_valuation(uint64_t p, uint64_t n);

} // namespace stlf::kernels
