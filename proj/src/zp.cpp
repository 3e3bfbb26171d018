#include "stlf/zp.hpp"

#include <algorithm>
#include <cassert>

namespace stlf {

using u128 = unsigned __int128;

uint32_t Zp::max_store(uint64_t p) {
    uint64_t limit = uint64_t(1) << 62;
    uint32_t k = 0;
    uint64_t v = 1;
    while (v <= limit / p) {
        v *= p;
        ++k;
    }
    return k;
}

Zp::Zp(uint64_t p, uint32_t data_prec, uint32_t guard) : p_(p), n_(data_prec) {
    if (p < 3 || p % 2 == 0)
        throw config_error("p must be an odd prime >= 3");
    // trial division is plenty for the primes this library meets
    for (uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0)
            throw config_error("p must be prime");
    if (data_prec == 0)
        throw config_error("precision exponent must be positive");
    uint32_t cap = max_store(p);
    if (data_prec > cap)
        throw config_error("p^N does not fit the 62-bit residue representation");
    if (guard == 0) {
        // default headroom: v_p(31!) for the k! divisions at the default
        // truncation M = 32, plus a little for Fourier inversion and logs
        uint64_t vfact = 0;
        for (uint64_t q = p; q <= 31; q *= p) vfact += 31 / q;
        guard = uint32_t(vfact) + 6;
    }
    store_ = std::min<uint32_t>(data_prec + guard, cap);
    pow_.resize(store_ + 1);
    pow_[0] = 1;
    for (uint32_t i = 1; i <= store_; ++i) pow_[i] = pow_[i - 1] * p_;
}

uint64_t Zp::reduce_residue(int64_t value, uint32_t prec) const {
    uint64_t m = pow_[prec];
    int64_t r = value % int64_t(m);
    if (r < 0) r += int64_t(m);
    return uint64_t(r);
}

Padic Zp::make(int64_t value) const { return make(value, store_); }

Padic Zp::make(int64_t value, uint32_t prec) const {
    return Padic(this, reduce_residue(value, prec), prec);
}

Padic Zp::zero(uint32_t prec) const { return Padic(this, 0, prec); }
Padic Zp::zero() const { return zero(store_); }
Padic Zp::one() const { return make(1); }
Padic Zp::generator() const { return make(int64_t(p_) + 1); }

Padic Zp::from_rational(int64_t num, int64_t den) const {
    return from_rational(num, den, store_);
}

Padic Zp::from_rational(int64_t num, int64_t den, uint32_t prec) const {
    if (den % int64_t(p_) == 0)
        throw denominator_divisible_by_p();
    Padic n = make(num, prec);
    Padic d = make(den, prec);
    return n * d.inverse();
}

Padic::Padic(const Zp* ring, uint64_t residue, uint32_t prec)
    : ring_(ring), r_(residue), prec_(prec) {
    assert(ring_ && prec_ > 0 && prec_ <= ring_->store_prec());
    assert(r_ < ring_->pow_p(prec_));
}

bool Padic::is_principal_unit() const { return r_ % prime() == 1; }

uint32_t Padic::valuation() const {
    if (r_ == 0) return prec_;
    uint64_t v = r_;
    uint32_t k = 0;
    while (v % prime() == 0) {
        v /= prime();
        ++k;
    }
    return k;
}

Padic Padic::with_prec(uint32_t prec) const {
    if (prec >= prec_) return *this;
    return Padic(ring_, r_ % ring_->pow_p(prec), prec);
}

Padic Padic::operator+(const Padic& o) const {
    assert(ring_ == o.ring_);
    uint32_t prec = joint_prec(o);
    uint64_t m = ring_->pow_p(prec);
    uint64_t s = (r_ % m) + (o.r_ % m);
    if (s >= m) s -= m;
    return Padic(ring_, s, prec);
}

Padic Padic::operator-(const Padic& o) const {
    assert(ring_ == o.ring_);
    uint32_t prec = joint_prec(o);
    uint64_t m = ring_->pow_p(prec);
    uint64_t a = r_ % m, b = o.r_ % m;
    return Padic(ring_, a >= b ? a - b : a + m - b, prec);
}

Padic Padic::operator-() const {
    uint64_t m = ring_->pow_p(prec_);
    return Padic(ring_, r_ == 0 ? 0 : m - r_, prec_);
}

Padic Padic::operator*(const Padic& o) const {
    assert(ring_ == o.ring_);
    // error term of a*b has valuation >= min(prec_a + v(b), prec_b + v(a))
    uint32_t prec = std::min<uint64_t>(
        std::min<uint64_t>(uint64_t(prec_) + o.valuation(), uint64_t(o.prec_) + valuation()),
        ring_->store_prec());
    uint64_t m = ring_->pow_p(prec);
    uint64_t r = uint64_t((u128(r_) * o.r_) % m);
    return Padic(ring_, r, prec);
}

namespace {

// extended gcd on int64; returns g and x with a*x = g mod m
int64_t inv_mod(int64_t a, int64_t m) {
    int64_t old_r = a % m, r = m;
    int64_t old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1 && old_r != -1)
        throw not_a_unit();
    if (old_r == -1) old_s = -old_s;
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) acc = uint64_t((u128(acc) * b) % m);
        b = uint64_t((u128(b) * b) % m);
        e >>= 1;
    }
    return acc;
}

} // namespace

Padic Padic::inverse() const {
    if (!is_unit())
        throw not_a_unit();
    uint64_t m = ring_->pow_p(prec_);
    return Padic(ring_, uint64_t(inv_mod(int64_t(r_), int64_t(m))), prec_);
}

Padic Padic::pow(int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    uint64_t m = ring_->pow_p(prec_);
    return Padic(ring_, pow_mod(r_, uint64_t(e), m), prec_);
}

Padic Padic::divide_exact_p(uint32_t k) const {
    if (k == 0) return *this;
    if (k >= prec_)
        throw insufficient_precision("exact division by p^k leaves no digits");
    uint64_t q = ring_->pow_p(k);
    if (r_ % q != 0)
        throw insufficient_precision("residue not divisible by p^k in exact division");
    return Padic(ring_, r_ / q, prec_ - k);
}

bool Padic::eq_at_precision(const Padic& o) const {
    assert(ring_ == o.ring_);
    uint64_t m = ring_->pow_p(joint_prec(o));
    return r_ % m == o.r_ % m;
}

std::string Padic::str() const {
    return std::to_string(r_) + " (mod " + std::to_string(prime()) + "^" +
           std::to_string(prec_) + ")";
}

Padic teichmueller(const Padic& x) {
    if (!x.is_unit())
        throw not_a_unit("Teichmueller lift of a non-unit");
    // y -> y^p gains one digit of agreement with the lift per step
    Padic y = x;
    for (uint32_t i = 0; i <= x.prec(); ++i) {
        Padic z = y.pow(int64_t(x.prime()));
        if (z.eq_at_precision(y)) return z;
        y = z;
    }
    return y;
}

Padic principal_part(const Padic& x) {
    return x * teichmueller(x).inverse();
}

Padic principal_sqrt(const Padic& x) {
    if (!x.is_principal_unit())
        throw not_principal_unit();
    // on 1+pZp squaring is invertible; the inverse exponent of 2 modulo the
    // group order p^(prec-1) is (p^prec + 1)/2
    uint64_t e = (x.ring().pow_p(x.prec()) + 1) / 2;
    return x.pow(int64_t(e));
}

std::optional<Padic> unit_sqrt(const Padic& a) {
    if (!a.is_unit())
        throw not_a_unit("square root of a non-unit");
    uint64_t p = a.prime();
    uint64_t a0 = a.residue() % p;
    if (pow_mod(a0, (p - 1) / 2, p) != 1)
        return std::nullopt;

    // Tonelli-Shanks mod p
    uint64_t q = p - 1;
    uint32_t s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) == 1) ++z;
    uint64_t m = s;
    uint64_t c = pow_mod(z, q, p);
    uint64_t t = pow_mod(a0, q, p);
    uint64_t y = pow_mod(a0, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) { tt = uint64_t((u128(tt) * tt) % p); ++i; }
        uint64_t b = c;
        for (uint64_t j = 0; j + i + 1 < m; ++j) b = uint64_t((u128(b) * b) % p);
        m = i;
        c = uint64_t((u128(b) * b) % p);
        t = uint64_t((u128(t) * c) % p);
        y = uint64_t((u128(y) * b) % p);
    }

    // Newton lift y <- (y + a/y)/2, doubling the valid digits each round
    const Zp& R = a.ring();
    Padic root = R.make(int64_t(y), a.prec());
    Padic half = R.from_rational(1, 2, a.prec());
    for (uint32_t digits = 1; digits < a.prec(); digits *= 2)
        root = (root + a * root.inverse()) * half;

    // convention: the representative in [0, p^prec / 2)
    uint64_t mod = R.pow_p(a.prec());
    if (root.residue() > mod / 2) root = -root;
    return root;
}

Padic principal_log(const Padic& w) {
    if (!w.is_principal_unit())
        throw not_principal_unit("principal_log needs w = 1 mod p");
    if (w.prec() < 2)
        throw insufficient_precision("principal_log needs at least two digits");
    const Zp& R = w.ring();
    uint64_t p = R.prime();
    uint32_t prec = w.prec();
    // invariant: (1+p)^z = w mod p^(i+1); each step fixes the next digit
    Padic u = R.generator().with_prec(prec);
    uint64_t z = 0;
    Padic rem = w;                          // w * u^(-z)
    uint64_t pk = 1;                        // p^i
    for (uint32_t i = 0; i + 1 < prec; ++i) {
        uint64_t diff = (rem - R.one().with_prec(prec)).residue();
        uint64_t digit = (diff / R.pow_p(i + 1)) % p;
        if (digit != 0) {
            z += digit * pk;
            rem = rem * u.pow(int64_t(digit * pk)).inverse();
        }
        pk *= p;
    }
    return R.make(int64_t(z), prec - 1);
}

} // namespace stlf
