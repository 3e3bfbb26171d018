#include "stlf/measures.hpp"

#include "stlf/kernels.hpp"

namespace stlf {

Padic with_prec_of(const Padic& x, uint32_t cap) { return x.with_prec(std::min(x.prec(), cap)); }
Cyclo with_prec_of(const Cyclo& x, uint32_t cap) { return x.with_prec(std::min(x.prec(), cap)); }
IwasawaElement with_prec_of(const IwasawaElement& x, uint32_t cap) {
    return x.with_prec(std::min(x.min_prec(), cap));
}

template <class R>
std::vector<R> Measure<R>::compute_masses(const PowerSeries<R>& F) {
    uint32_t M = F.truncation();
    const R& proto = F[0];
    const Zp& R0 = Flat<R>::zp(proto);
    size_t block = Flat<R>::block(proto);
    uint32_t prec = F.min_prec();
    uint64_t mod = R0.pow_p(prec);
    std::vector<uint64_t> pascal = kernels::pascal_triangle(M, mod);
    std::vector<uint64_t> in(size_t(M) * block), out(size_t(M) * block);
    for (uint32_t n = 0; n < M; ++n) Flat<R>::write(F[n], &in[size_t(n) * block]);
    kernels::point_masses(in.data(), out.data(), M, block, mod, pascal.data());
    std::vector<R> h;
    h.reserve(M);
    for (uint32_t l = 0; l < M; ++l)
        h.push_back(Flat<R>::read(proto, &out[size_t(l) * block], prec));
    return h;
}

template <class R>
Measure<R> Measure<R>::from_masses(const R& proto, const std::vector<R>& h) {
    uint32_t M = uint32_t(h.size());
    const Zp& R0 = Flat<R>::zp(proto);
    size_t block = Flat<R>::block(proto);
    uint32_t prec = prec_of(h[0]);
    for (const R& x : h) prec = std::min(prec, prec_of(x));
    uint64_t mod = R0.pow_p(prec);
    std::vector<uint64_t> pascal = kernels::pascal_triangle(M, mod);
    std::vector<uint64_t> in(size_t(M) * block), out(size_t(M) * block);
    for (uint32_t l = 0; l < M; ++l) Flat<R>::write(h[l].with_prec(prec), &in[size_t(l) * block]);
    kernels::masses_to_coeffs(in.data(), out.data(), M, block, mod, pascal.data());
    std::vector<R> c;
    c.reserve(M);
    for (uint32_t n = 0; n < M; ++n)
        c.push_back(Flat<R>::read(proto, &out[size_t(n) * block], prec));
    return Measure<R>(PowerSeries<R>(std::move(c)));
}

template class Measure<Padic>;
template class Measure<Cyclo>;
template class Measure<IwasawaElement>;

} // namespace stlf
