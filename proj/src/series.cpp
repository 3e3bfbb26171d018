#include "stlf/series.hpp"

namespace stlf {

PowerSeries<Padic> binomial_power(const Padic& alpha, uint32_t M) {
    const Zp& R = alpha.ring();
    std::vector<uint64_t> row;
    std::vector<uint32_t> prec;
    kernels::binomial_row(R, alpha, M, row, prec);
    std::vector<Padic> c;
    c.reserve(M);
    for (uint32_t j = 0; j < M; ++j)
        c.push_back(Padic(&R, row[j] % R.pow_p(prec[j]), prec[j]));
    return PowerSeries<Padic>(std::move(c));
}

} // namespace stlf
