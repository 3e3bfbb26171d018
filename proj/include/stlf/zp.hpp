#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlf/errors.hpp"

namespace stlf {

class Padic;

/// Arithmetic context for Z_p at a fixed absolute precision.
///
/// External data lives modulo p^data_prec.  Internally residues are kept
/// modulo p^store_prec with store_prec >= data_prec; the headroom absorbs the
/// exact divisions by k! (binomial coefficients) and by p^(m-1) (Fourier
/// inversion) without eating into the precision of results.  p^store_prec
/// must fit in 62 bits so that sums of two residues never overflow.
class Zp {
public:
    Zp(uint64_t p, uint32_t data_prec, uint32_t guard = 0);

    uint64_t prime() const { return p_; }
    uint32_t data_prec() const { return n_; }
    uint32_t store_prec() const { return store_; }
    uint64_t pow_p(uint32_t k) const { return pow_.at(k); }
    uint64_t modulus() const { return pow_[store_]; }

    /// Largest k with p^k <= 2^62.
    static uint32_t max_store(uint64_t p);

    Padic make(int64_t value) const;               // full store precision
    Padic make(int64_t value, uint32_t prec) const;
    Padic zero(uint32_t prec) const;
    Padic zero() const;
    Padic one() const;

    /// num/den mod p^prec; den must be a unit.
    Padic from_rational(int64_t num, int64_t den) const;
    Padic from_rational(int64_t num, int64_t den, uint32_t prec) const;

    /// The fixed topological generator u = 1+p of the principal units.
    Padic generator() const;

    uint64_t reduce_residue(int64_t value, uint32_t prec) const;

private:
    uint64_t p_;
    uint32_t n_;
    uint32_t store_;
    std::vector<uint64_t> pow_;
};

/// An element of Z_p known modulo p^prec.
///
/// Invariants: residue < p^prec and prec <= store_prec of the ring.  The zero
/// residue stands for any element of valuation >= prec; valuation() then
/// reports prec.  All operations are exact modulo the reported precision and
/// precision never silently increases.
class Padic {
public:
    Padic() : ring_(nullptr), r_(0), prec_(0) {}
    Padic(const Zp* ring, uint64_t residue, uint32_t prec);

    const Zp& ring() const { return *ring_; }
    uint64_t residue() const { return r_; }
    uint32_t prec() const { return prec_; }
    uint64_t prime() const { return ring_->prime(); }

    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return r_ % ring_->prime() != 0; }
    bool is_principal_unit() const;     // == 1 mod p
    uint32_t valuation() const;         // min(v_p(residue), prec)

    Padic with_prec(uint32_t prec) const;   // cap precision (never raises)

    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const;
    Padic operator-() const;
    Padic operator*(const Padic& o) const;
    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }

    Padic inverse() const;              // unit inverse, same precision
    Padic operator/(const Padic& o) const { return *this * o.inverse(); }
    Padic pow(int64_t e) const;         // unit base for e < 0

    /// Exact division by p^k (residue must be divisible); drops precision by k.
    Padic divide_exact_p(uint32_t k) const;

    /// Congruent modulo p^min(prec, o.prec)?
    bool eq_at_precision(const Padic& o) const;
    uint32_t joint_prec(const Padic& o) const { return prec_ < o.prec_ ? prec_ : o.prec_; }

    std::string str() const;

private:
    const Zp* ring_;
    uint64_t r_;
    uint32_t prec_;
};

/// Teichmueller lift: the (p-1)-st root of unity congruent to x mod p.
Padic teichmueller(const Padic& x);

/// Principal part <x> = x / teichmueller(x), a 1 mod p unit.
Padic principal_part(const Padic& x);

/// Unique square root of x in 1+pZp (x must be 1 mod p, p odd).
Padic principal_sqrt(const Padic& x);

/// Square root of a unit, if it is a quadratic residue.  Of the two roots the
/// one with residue in [0, p^prec / 2) is returned.
std::optional<Padic> unit_sqrt(const Padic& a);

/// Digit-by-digit solution z of (1+p)^z = w mod p^prec for a principal unit w.
/// z is determined (and returned) modulo p^(prec-1).
Padic principal_log(const Padic& w);

} // namespace stlf
