#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stlf/iwasawa.hpp"
#include "stlf/series.hpp"

namespace stlf {

/// O-valued measure on Z_p in the Amice dictionary: the series F with
/// integral of (1+T)^x against mu equal to F(T), i.e. the Mahler moments
/// integral of C(x,n) are the coefficients a_n.
///
/// A truncated series is exactly the measure sum_l h_l delta_l supported on
/// the integer points 0..M-1, where h_l = sum_{n>=l} (-1)^(n-l) C(n,l) a_n
/// are its point masses (binomial inversion of the Mahler moments).  Every
/// operator below is the usual root-of-unity average with the zeta-sums
/// carried out symbolically (sum of zeta^i over p^m-th roots is p^m or 0),
/// so no p^m division and no precision drop occurs.
template <class R>
class Measure {
public:
    explicit Measure(PowerSeries<R> series) : F_(series.uniform()), masses_(compute_masses(F_)) {}

    static Measure from_series(const PowerSeries<R>& F) { return Measure(F); }
    const PowerSeries<R>& series() const { return F_; }
    uint32_t truncation() const { return F_.truncation(); }

    const std::vector<R>& point_masses() const { return masses_; }

    /// mu(Z_p) = F(0) = a_0.
    R total_mass() const { return F_[0]; }

    /// mu(a + p^m Z_p) = p^-m sum_{zeta^(p^m)=1} zeta^-a F(zeta - 1).
    R coset_value(uint64_t a, uint32_t m) const {
        uint64_t pm = 1;
        for (uint32_t i = 0; i < m; ++i) pm *= prime_of(F_[0]);
        R acc = zero_like(F_[0]);
        for (uint64_t l = a % pm; l < masses_.size(); l += pm) acc = acc + masses_[size_t(l)];
        return acc;
    }

    /// The measure 1_{Z_p^x} mu, with series F(T) - p^-1 sum_{zeta^p=1} F(zeta(1+T)-1).
    Measure restricted_to_units() const {
        std::vector<R> h = masses_;
        for (size_t l = 0; l < h.size(); l += size_t(prime_of(F_[0])))
            h[l] = zero_like(F_[0]);
        return from_masses(F_[0], h);
    }

    /// Diagnostic: already supported on Z_p^x at the working precision?
    bool supported_on_units() const {
        uint64_t p = prime_of(F_[0]);
        R z = zero_like(F_[0]);
        for (size_t l = 0; l < masses_.size(); l += size_t(p))
            if (!masses_[l].eq_at_precision(z)) return false;
        return true;
    }

    static Measure from_masses(const R& proto, const std::vector<R>& h);

private:
    static std::vector<R> compute_masses(const PowerSeries<R>& F);

    PowerSeries<R> F_;
    std::vector<R> masses_;
};

/// Exact pairing: integral of g against mu, where g is given by its values
/// at the integer points 0..M-1 (the support of the truncated measure).
/// V must support V + V and V * R.
template <class V, class R>
V integrate_points(const Measure<R>& mu, const std::vector<V>& g_values) {
    const std::vector<R>& h = mu.point_masses();
    V acc = g_values[0] * h[0];
    for (size_t l = 1; l < h.size(); ++l) acc = acc + g_values[l] * h[l];
    return acc;
}

/// Locally polynomial integrand at level m: on the coset residue + p^m Z_p
/// the function is weight * sum_r poly[r] u^r; unlisted cosets are zero.
template <class V>
struct LocallyPolynomial {
    uint32_t level = 1;
    struct Piece {
        uint64_t residue;
        V weight;
        std::vector<Padic> poly;
    };
    std::vector<Piece> pieces;
};

/// Integral of a locally polynomial function: the coset-restricted series is
/// differentiated r times with D = (1+T) d/dT and read off at T = 0, coset by
/// coset; on the point-mass decomposition this is the exact finite pairing.
template <class V, class R>
V integrate_locally_polynomial(const Measure<R>& mu, const LocallyPolynomial<V>& g,
                               const V& zero) {
    uint64_t p = prime_of(mu.series()[0]);
    uint64_t pm = 1;
    for (uint32_t i = 0; i < g.level; ++i) pm *= p;
    const std::vector<R>& h = mu.point_masses();
    V acc = zero;
    for (const auto& piece : g.pieces) {
        for (uint64_t l = piece.residue % pm; l < h.size(); l += pm) {
            // poly(l) as a scalar, then weight * poly(l) * h_l
            const Zp& R0 = Flat<R>::zp(mu.series()[0]);
            Padic val = R0.zero(piece.poly.empty() ? R0.store_prec() : piece.poly[0].prec());
            Padic lp = R0.one();
            Padic lpad = R0.make(int64_t(l));
            for (size_t r = 0; r < piece.poly.size(); ++r) {
                val += piece.poly[r] * lp;
                lp = lp * lpad;
            }
            acc = acc + (piece.weight * val) * h[size_t(l)];
        }
    }
    return acc;
}

/// Mahler-expansion integral: sum_{n<M} c_n a_n with the certified precision
/// coming from the caller's tail valuation bound v_p(c_n) >= bound for n >= M.
/// Throws insufficient precision ("TailBoundTooWeak") below one digit.
template <class V, class R>
V integrate_mahler(const Measure<R>& mu, const std::vector<V>& mahler_coefficients,
                   uint32_t tail_valuation_bound, const V& zero) {
    if (tail_valuation_bound < 1)
        throw insufficient_precision("TailBoundTooWeak: certified precision below one digit");
    const PowerSeries<R>& F = mu.series();
    V acc = zero;
    size_t n = std::min<size_t>(F.truncation(), mahler_coefficients.size());
    for (size_t i = 0; i < n; ++i) acc = acc + mahler_coefficients[i] * F[uint32_t(i)];
    return with_prec_of(acc, tail_valuation_bound);
}

Padic with_prec_of(const Padic& x, uint32_t cap);
Cyclo with_prec_of(const Cyclo& x, uint32_t cap);
IwasawaElement with_prec_of(const IwasawaElement& x, uint32_t cap);

using ScalarMeasure = Measure<Padic>;
using FamilyMeasure = Measure<IwasawaElement>;

} // namespace stlf
