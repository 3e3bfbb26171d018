#include "stlf/cyclotomic.hpp"

#include <cassert>

namespace stlf {

using u128 = unsigned __int128;

CycloRing::CycloRing(const Zp* zp, uint32_t level) : zp_(zp), level_(level) {
    uint64_t p = zp_->prime();
    if (level_ == 0) {
        deg_ = 1;
        pl_ = 1;
        step_ = 1;
        return;
    }
    step_ = 1;
    for (uint32_t i = 1; i < level_; ++i) step_ *= p;
    pl_ = step_ * p;
    deg_ = uint32_t(step_ * (p - 1));
}

Cyclo CycloRing::zero(uint32_t prec) const {
    return Cyclo(this, std::vector<uint64_t>(deg_, 0), prec);
}

Cyclo CycloRing::zero() const { return zero(zp_->store_prec()); }

Cyclo CycloRing::one() const { return embed(zp_->one()); }

Cyclo CycloRing::embed(const Padic& x) const {
    std::vector<uint64_t> c(deg_, 0);
    c[0] = x.residue();
    return Cyclo(this, std::move(c), x.prec());
}

Cyclo CycloRing::root(int64_t e) const {
    uint32_t prec = zp_->store_prec();
    int64_t em = e % int64_t(pl_);
    if (em < 0) em += int64_t(pl_);
    std::vector<uint64_t> c(deg_, 0);
    if (uint64_t(em) < deg_) {
        c[size_t(em)] = 1;
    } else {
        // X^(deg+t) = -sum_i X^(t + i p^(L-1)), one step suffices here
        uint64_t t = uint64_t(em) - deg_;
        uint64_t m = zp_->pow_p(prec);
        for (uint64_t i = 0; i + 1 < zp_->prime(); ++i)
            c[size_t(t + i * step_)] = m - 1;
    }
    return Cyclo(this, std::move(c), prec);
}

Cyclo CycloRing::subroot(uint32_t sublevel, int64_t e) const {
    assert(sublevel <= level_);
    uint64_t scale = 1;
    for (uint32_t i = sublevel; i < level_; ++i) scale *= zp_->prime();
    uint64_t sub_order = pl_ / scale;
    int64_t em = e % int64_t(sub_order);
    if (em < 0) em += int64_t(sub_order);
    return root(int64_t(uint64_t(em) * scale));
}

Cyclo::Cyclo(const CycloRing* ring, std::vector<uint64_t> coords, uint32_t prec)
    : ring_(ring), c_(std::move(coords)), prec_(prec) {
    assert(c_.size() == ring_->degree());
    assert(prec_ > 0 && prec_ <= ring_->zp().store_prec());
}

bool Cyclo::is_zero() const {
    for (uint64_t v : c_)
        if (v != 0) return false;
    return true;
}

uint32_t Cyclo::valuation_floor() const {
    uint64_t p = ring_->prime();
    uint32_t best = prec_;
    for (uint64_t v : c_) {
        if (v == 0) continue;
        uint32_t k = 0;
        while (v % p == 0) { v /= p; ++k; }
        if (k < best) best = k;
        if (best == 0) break;
    }
    return best;
}

Cyclo Cyclo::with_prec(uint32_t prec) const {
    if (prec >= prec_) return *this;
    uint64_t m = ring_->zp().pow_p(prec);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] % m;
    return Cyclo(ring_, std::move(c), prec);
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    assert(ring_ == o.ring_);
    uint32_t prec = joint_prec(o);
    uint64_t m = ring_->zp().pow_p(prec);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        uint64_t s = (c_[i] % m) + (o.c_[i] % m);
        c[i] = s >= m ? s - m : s;
    }
    return Cyclo(ring_, std::move(c), prec);
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
    assert(ring_ == o.ring_);
    uint32_t prec = joint_prec(o);
    uint64_t m = ring_->zp().pow_p(prec);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        uint64_t a = c_[i] % m, b = o.c_[i] % m;
        c[i] = a >= b ? a - b : a + m - b;
    }
    return Cyclo(ring_, std::move(c), prec);
}

Cyclo Cyclo::operator-() const {
    uint64_t m = ring_->zp().pow_p(prec_);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] == 0 ? 0 : m - c_[i];
    return Cyclo(ring_, std::move(c), prec_);
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    assert(ring_ == o.ring_);
    uint32_t prec = std::min<uint64_t>(
        std::min<uint64_t>(uint64_t(prec_) + o.valuation_floor(),
                           uint64_t(o.prec_) + valuation_floor()),
        ring_->zp().store_prec());
    uint64_t m = ring_->zp().pow_p(prec);
    uint32_t d = ring_->degree();
    std::vector<uint64_t> buf(2 * size_t(d) - 1, 0);
    for (uint32_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        uint64_t a = c_[i] % m;
        for (uint32_t j = 0; j < d; ++j) {
            if (o.c_[j] == 0) continue;
            size_t k = size_t(i) + j;
            buf[k] = uint64_t((buf[k] + u128(a) * (o.c_[j] % m)) % m);
        }
    }
    // reduce X^(deg+t) = -sum_{i<p-1} X^(t + i step), top down
    if (ring_->level() >= 1) {
        uint64_t p = ring_->prime();
        for (size_t idx = buf.size(); idx-- > d;) {
            uint64_t v = buf[idx];
            if (v == 0) continue;
            buf[idx] = 0;
            size_t t = idx - d;
            for (uint64_t i = 0; i + 1 < p; ++i) {
                size_t k = t + size_t(i * ring_->step_);
                buf[k] = buf[k] >= v ? buf[k] - v : buf[k] + m - v;
            }
        }
    } else if (buf.size() > 1) {
        // level 0: X = 1
        buf[0] = (buf[0] + buf[1]) % m;
    }
    buf.resize(d);
    return Cyclo(ring_, std::move(buf), prec);
}

Cyclo Cyclo::scaled(const Padic& s) const {
    uint32_t prec = std::min<uint64_t>(
        std::min<uint64_t>(uint64_t(prec_) + s.valuation(),
                           uint64_t(s.prec()) + valuation_floor()),
        ring_->zp().store_prec());
    uint64_t m = ring_->zp().pow_p(prec);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        c[i] = uint64_t((u128(c_[i] % m) * (s.residue() % m)) % m);
    return Cyclo(ring_, std::move(c), prec);
}

Cyclo Cyclo::scaled_int(uint64_t s) const {
    uint64_t m = ring_->zp().pow_p(prec_);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        c[i] = uint64_t((u128(c_[i]) * (s % m)) % m);
    return Cyclo(ring_, std::move(c), prec_);
}

Cyclo Cyclo::pow(int64_t e) const {
    if (e < 0) {
        if (!is_scalar())
            throw error("negative powers only for scalar cyclotomic elements");
        return ring_->embed(scalar_part().pow(e));
    }
    Cyclo acc = ring_->one().with_prec(prec_);
    Cyclo base = *this;
    uint64_t k = uint64_t(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Cyclo Cyclo::divide_exact_p(uint32_t k) const {
    if (k == 0) return *this;
    if (k >= prec_)
        throw insufficient_precision("exact division by p^k leaves no digits");
    uint64_t q = ring_->zp().pow_p(k);
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % q != 0)
            throw insufficient_precision("coordinate not divisible by p^k");
        c[i] = c_[i] / q;
    }
    return Cyclo(ring_, std::move(c), prec_ - k);
}

bool Cyclo::eq_at_precision(const Cyclo& o) const {
    assert(ring_ == o.ring_);
    uint64_t m = ring_->zp().pow_p(joint_prec(o));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] % m != o.c_[i] % m) return false;
    return true;
}

bool Cyclo::is_scalar() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Padic Cyclo::scalar_part() const {
    return Padic(&ring_->zp(), c_[0], prec_);
}

Cyclo Cyclo::lift_to(const CycloRing* higher) const {
    assert(higher->level() >= ring_->level());
    if (higher->level() == ring_->level()) {
        return Cyclo(higher, c_, prec_);
    }
    uint64_t scale = 1;
    for (uint32_t i = ring_->level(); i < higher->level(); ++i)
        scale *= ring_->prime();
    std::vector<uint64_t> c(higher->degree(), 0);
    for (size_t i = 0; i < c_.size(); ++i)
        c[size_t(scale * i)] = c_[i];
    return Cyclo(higher, std::move(c), prec_);
}

} // namespace stlf
