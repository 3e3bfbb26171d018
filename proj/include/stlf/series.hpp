#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stlf/cyclotomic.hpp"
#include "stlf/kernels.hpp"
#include "stlf/zp.hpp"

namespace stlf {

/// Flattening traits: a ring element as a fixed-size block of u64 limbs, so
/// the coefficient-linear kernels (substitution, point masses) can run on any
/// coefficient ring.  Specialized for Padic, Cyclo and IwasawaElement.
template <class R>
struct Flat;

template <>
struct Flat<Padic> {
    static size_t block(const Padic&) { return 1; }
    static const Zp& zp(const Padic& proto) { return proto.ring(); }
    static void write(const Padic& x, uint64_t* out) { out[0] = x.residue(); }
    static Padic read(const Padic& proto, const uint64_t* in, uint32_t prec) {
        uint64_t m = proto.ring().pow_p(prec);
        return Padic(&proto.ring(), in[0] % m, prec);
    }
};

template <>
struct Flat<Cyclo> {
    static size_t block(const Cyclo& proto) { return proto.ring().degree(); }
    static const Zp& zp(const Cyclo& proto) { return proto.ring().zp(); }
    static void write(const Cyclo& x, uint64_t* out) {
        for (size_t i = 0; i < x.coords().size(); ++i) out[i] = x.coords()[i];
    }
    static Cyclo read(const Cyclo& proto, const uint64_t* in, uint32_t prec) {
        uint64_t m = proto.ring().zp().pow_p(prec);
        std::vector<uint64_t> c(proto.ring().degree());
        for (size_t i = 0; i < c.size(); ++i) c[i] = in[i] % m;
        return Cyclo(&proto.ring(), std::move(c), prec);
    }
};

inline Padic zero_like(const Padic& x) { return x.ring().zero(x.prec()); }
inline Cyclo zero_like(const Cyclo& x) { return x.ring().zero(x.prec()); }
inline uint64_t prime_of(const Padic& x) { return x.prime(); }
inline uint64_t prime_of(const Cyclo& x) { return x.ring().prime(); }
inline uint32_t prec_of(const Padic& x) { return x.prec(); }
inline uint32_t prec_of(const Cyclo& x) { return x.prec(); }

/// Truncated power series sum a_n T^n, n < truncation().  Operations are
/// exact modulo (precision, T^M) and never report coefficients beyond the
/// smaller truncation of their inputs.
template <class R>
class PowerSeries {
public:
    explicit PowerSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {}
    PowerSeries(const R& proto, uint32_t M) : c_(M, zero_like(proto)) {}

    uint32_t truncation() const { return uint32_t(c_.size()); }
    const std::vector<R>& coeffs() const { return c_; }
    std::vector<R>& coeffs() { return c_; }
    const R& operator[](uint32_t n) const { return c_[n]; }
    R& operator[](uint32_t n) { return c_[n]; }

    PowerSeries truncated(uint32_t M) const {
        std::vector<R> c(c_.begin(), c_.begin() + std::min<size_t>(M, c_.size()));
        return PowerSeries(std::move(c));
    }

    PowerSeries operator+(const PowerSeries& o) const {
        uint32_t M = std::min(truncation(), o.truncation());
        std::vector<R> c;
        c.reserve(M);
        for (uint32_t n = 0; n < M; ++n) c.push_back(c_[n] + o.c_[n]);
        return PowerSeries(std::move(c));
    }

    PowerSeries operator-(const PowerSeries& o) const {
        uint32_t M = std::min(truncation(), o.truncation());
        std::vector<R> c;
        c.reserve(M);
        for (uint32_t n = 0; n < M; ++n) c.push_back(c_[n] - o.c_[n]);
        return PowerSeries(std::move(c));
    }

    PowerSeries operator*(const PowerSeries& o) const {
        uint32_t M = std::min(truncation(), o.truncation());
        std::vector<R> c(M, zero_like(c_[0]));
        for (uint32_t i = 0; i < M; ++i) {
            for (uint32_t j = 0; i + j < M && j < o.truncation(); ++j)
                c[i + j] = c[i + j] + c_[i] * o.c_[j];
        }
        return PowerSeries(std::move(c));
    }

    template <class S>
    PowerSeries scaled(const S& s) const {
        std::vector<R> c;
        c.reserve(c_.size());
        for (const R& a : c_) c.push_back(a * s);
        return PowerSeries(std::move(c));
    }

    bool eq_at_precision(const PowerSeries& o) const {
        uint32_t M = std::min(truncation(), o.truncation());
        for (uint32_t n = 0; n < M; ++n)
            if (!c_[n].eq_at_precision(o.c_[n])) return false;
        return true;
    }

    uint32_t min_prec() const {
        uint32_t m = prec_of(c_[0]);
        for (const R& a : c_) m = std::min(m, prec_of(a));
        return m;
    }

    /// Align every coefficient to the series' minimal precision (the flat
    /// kernels need a uniform block layout).
    PowerSeries uniform() const {
        uint32_t m = min_prec();
        std::vector<R> c;
        c.reserve(c_.size());
        for (const R& a : c_) c.push_back(a.with_prec(m));
        return PowerSeries(std::move(c));
    }

private:
    std::vector<R> c_;
};

/// Coefficient a_n survives iff p does not divide n; a_0 is zeroed (p | 0).
template <class R>
PowerSeries<R> deplete(const PowerSeries<R>& f) {
    uint64_t p = prime_of(f[0]);
    std::vector<R> c;
    c.reserve(f.truncation());
    for (uint32_t n = 0; n < f.truncation(); ++n)
        c.push_back(n % p == 0 ? zero_like(f[n]) : f[n]);
    return PowerSeries<R>(std::move(c));
}

/// (1+T)^alpha = sum_k C(alpha,k) T^k, the p-adically convergent binomial
/// series; the k! divisions cost v_p(k!) digits on coefficient k.
PowerSeries<Padic> binomial_power(const Padic& alpha, uint32_t M);

/// f((1+T)^alpha - 1) truncated at the input truncation.  When
/// `precision_audit` is given it is set when some kernel column lost digits
/// to the k! division (it never fires while the guard digits hold out).
template <class R>
PowerSeries<R> substitute_binomial(const PowerSeries<R>& f, const Padic& alpha,
                                   bool* precision_audit = nullptr) {
    const PowerSeries<R> g = f.uniform();
    uint32_t M = g.truncation();
    const R& proto = g[0];
    const Zp& R0 = Flat<R>::zp(proto);
    kernels::SubstKernel K = kernels::substitution_kernel(R0, alpha, M);
    if (precision_audit) *precision_audit = K.precision_loss;

    size_t block = Flat<R>::block(proto);
    std::vector<uint64_t> in(size_t(M) * block), out(size_t(M) * block);
    for (uint32_t n = 0; n < M; ++n) Flat<R>::write(g[n], &in[size_t(n) * block]);
    kernels::matrix_apply(in.data(), out.data(), K.K.data(), M, block, K.mod);

    uint32_t data_prec = g.min_prec();
    std::vector<R> c;
    c.reserve(M);
    for (uint32_t j = 0; j < M; ++j) {
        uint32_t prec = std::min(data_prec, K.col_prec[j]);
        c.push_back(Flat<R>::read(proto, &out[size_t(j) * block], prec));
    }
    return PowerSeries<R>(std::move(c));
}

using ScalarSeries = PowerSeries<Padic>;
using CycloSeries = PowerSeries<Cyclo>;

} // namespace stlf
