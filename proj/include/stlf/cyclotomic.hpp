#pragma once

#include <cstdint>
#include <vector>

#include "stlf/zp.hpp"

namespace stlf {

class Cyclo;

/// Z_p[X] / Phi_{p^L}(X): the class of X is a primitive p^L-th root of unity.
/// Level 0 degenerates to Z_p itself (degree 1), which lets scalar and
/// cyclotomic code paths share one type.
class CycloRing {
public:
    CycloRing(const Zp* zp, uint32_t level);

    const Zp& zp() const { return *zp_; }
    uint64_t prime() const { return zp_->prime(); }
    uint32_t level() const { return level_; }
    uint32_t degree() const { return deg_; }

    Cyclo zero(uint32_t prec) const;
    Cyclo zero() const;
    Cyclo one() const;
    Cyclo embed(const Padic& x) const;

    /// zeta_{p^level}^e (any integer exponent e).
    Cyclo root(int64_t e) const;

    /// zeta_{p^sublevel}^e as an element of this ring (sublevel <= level).
    Cyclo subroot(uint32_t sublevel, int64_t e) const;

private:
    const Zp* zp_;
    uint32_t level_;
    uint32_t deg_;
    uint64_t pl_;       // p^level, group order of the roots
    uint64_t step_;     // p^(level-1) for level >= 1
    friend class Cyclo;
};

/// Element of Z_p[X]/Phi_{p^L} with all coordinates known modulo p^prec.
class Cyclo {
public:
    Cyclo() : ring_(nullptr), prec_(0) {}
    Cyclo(const CycloRing* ring, std::vector<uint64_t> coords, uint32_t prec);

    const CycloRing& ring() const { return *ring_; }
    uint32_t prec() const { return prec_; }
    const std::vector<uint64_t>& coords() const { return c_; }

    bool is_zero() const;
    /// Smallest coordinate valuation (prec if the element vanishes).
    uint32_t valuation_floor() const;

    Cyclo with_prec(uint32_t prec) const;

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    Cyclo scaled(const Padic& s) const;
    Cyclo scaled_int(uint64_t s) const;     // s already reduced mod p^prec
    Cyclo pow(int64_t e) const;             // e >= 0, or unit scalar base

    Cyclo divide_exact_p(uint32_t k) const;

    bool eq_at_precision(const Cyclo& o) const;
    uint32_t joint_prec(const Cyclo& o) const { return prec_ < o.prec_ ? prec_ : o.prec_; }

    /// True when coordinates 1..deg-1 vanish at this precision.
    bool is_scalar() const;
    /// Coordinate 0 as a Padic (meaningful when is_scalar()).
    Padic scalar_part() const;

    /// Image under X -> X^{p^(L2-L1)} in a higher-level ring.
    Cyclo lift_to(const CycloRing* higher) const;

private:
    const CycloRing* ring_;
    std::vector<uint64_t> c_;
    uint32_t prec_;
};

inline Cyclo operator*(const Cyclo& a, const Padic& s) { return a.scaled(s); }

} // namespace stlf
