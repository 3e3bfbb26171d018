#include "stlf/iwasawa.hpp"

#include <cassert>

#include "stlf/kernels.hpp"

namespace stlf {

Cyclo FiniteCharacter::on_generator_power(const CycloRing& C, int64_t a) const {
    assert(C.level() + 1 >= level);
    uint64_t ord = order(C.prime());
    int64_t e = int64_t((unsigned __int128)(exponent % ord) * ((a % int64_t(ord) + int64_t(ord)) % int64_t(ord)) % ord);
    return C.subroot(level - 1, e);
}

Cyclo FiniteCharacter::at_unit(const CycloRing& C, const Padic& z) const {
    Padic g = principal_log(z);
    uint64_t ord = order(C.prime());
    if (g.prec() < 1 || C.zp().pow_p(g.prec()) < ord)
        throw insufficient_precision("character level exceeds log precision");
    return on_generator_power(C, int64_t(g.residue() % ord));
}

FiniteCharacter FiniteCharacter::half(uint64_t p) const {
    uint64_t ord = order(p);
    unsigned __int128 e = (unsigned __int128)(exponent % ord) * ((ord + 1) / 2);
    return {level, uint64_t(e % ord)};
}

std::vector<FiniteCharacter> characters_of_level(uint64_t p, uint32_t m) {
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= p;
    std::vector<FiniteCharacter> out;
    out.reserve(size_t(ord));
    for (uint64_t e = 0; e < ord; ++e) out.push_back({m, e});
    return out;
}

IwasawaElement::IwasawaElement(std::vector<Cyclo> coeffs, bool exact_degree)
    : c_(std::move(coeffs)), exact_(exact_degree) {
    assert(!c_.empty());
}

IwasawaElement IwasawaElement::zero(const CycloRing& C, uint32_t s_trunc, uint32_t prec) {
    return IwasawaElement(std::vector<Cyclo>(s_trunc, C.zero(prec)), true);
}

IwasawaElement IwasawaElement::scalar(const CycloRing& C, const Cyclo& x, uint32_t s_trunc) {
    std::vector<Cyclo> c(s_trunc, C.zero(x.prec()));
    c[0] = x;
    return IwasawaElement(std::move(c), true);
}

IwasawaElement IwasawaElement::group_like(const CycloRing& C, const Padic& z, uint32_t s_trunc) {
    std::vector<uint64_t> row;
    std::vector<uint32_t> prec;
    kernels::binomial_row(C.zp(), z, s_trunc, row, prec);
    std::vector<Cyclo> c;
    c.reserve(s_trunc);
    for (uint32_t j = 0; j < s_trunc; ++j) {
        uint64_t m = C.zp().pow_p(prec[j]);
        c.push_back(C.embed(Padic(&C.zp(), row[j] % m, prec[j])));
    }
    return IwasawaElement(std::move(c), false);
}

IwasawaElement IwasawaElement::from_group_basis(const CycloRing& C,
                                                const std::vector<Cyclo>& coeffs,
                                                uint32_t m, uint32_t s_trunc) {
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= C.prime();
    assert(coeffs.size() == ord);
    if (s_trunc < ord)
        throw insufficient_precision("s_trunc too small for the level-m group basis");
    uint32_t prec = coeffs[0].prec();
    for (const Cyclo& x : coeffs) prec = std::min(prec, x.prec());
    // sum_a coeffs[a]·(1+S)^a: integer Pascal rows, at the joint precision
    uint64_t mod = C.zp().pow_p(prec);
    std::vector<uint64_t> pascal = kernels::pascal_triangle(uint32_t(ord), mod);
    std::vector<Cyclo> c(s_trunc, C.zero(prec));
    for (uint64_t a = 0; a < ord; ++a) {
        const uint64_t* row = &pascal[size_t(a) * (a + 1) / 2];
        Cyclo base = coeffs[size_t(a)].with_prec(prec);
        for (uint64_t j = 0; j <= a; ++j)
            c[size_t(j)] += base.scaled_int(row[j]);
    }
    return IwasawaElement(std::move(c), true);
}

bool IwasawaElement::is_zero() const {
    for (const Cyclo& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

uint32_t IwasawaElement::min_prec() const {
    uint32_t m = c_[0].prec();
    for (const Cyclo& x : c_) m = std::min(m, x.prec());
    return m;
}

IwasawaElement IwasawaElement::with_prec(uint32_t prec) const {
    std::vector<Cyclo> c;
    c.reserve(c_.size());
    for (const Cyclo& x : c_) c.push_back(x.with_prec(prec));
    return IwasawaElement(std::move(c), exact_);
}

IwasawaElement IwasawaElement::truncated(uint32_t s_trunc) const {
    bool exact = exact_;
    std::vector<Cyclo> c(c_.begin(), c_.begin() + std::min<size_t>(s_trunc, c_.size()));
    for (size_t j = c.size(); j < c_.size(); ++j)
        if (!c_[j].is_zero()) exact = false;
    while (c.size() < s_trunc) c.push_back(c_[0].ring().zero(min_prec()));
    return IwasawaElement(std::move(c), exact);
}

IwasawaElement IwasawaElement::lift_to(const CycloRing* higher) const {
    std::vector<Cyclo> c;
    c.reserve(c_.size());
    for (const Cyclo& x : c_) c.push_back(x.lift_to(higher));
    return IwasawaElement(std::move(c), exact_);
}

IwasawaElement IwasawaElement::operator+(const IwasawaElement& o) const {
    uint32_t s = std::min(s_trunc(), o.s_trunc());
    bool exact = exact_ && o.exact_;
    for (uint32_t j = s; j < s_trunc(); ++j)
        if (!c_[j].is_zero()) exact = false;
    for (uint32_t j = s; j < o.s_trunc(); ++j)
        if (!o.c_[j].is_zero()) exact = false;
    std::vector<Cyclo> c;
    c.reserve(s);
    for (uint32_t j = 0; j < s; ++j) c.push_back(c_[j] + o.c_[j]);
    return IwasawaElement(std::move(c), exact);
}

IwasawaElement IwasawaElement::operator-(const IwasawaElement& o) const {
    return *this + (-o);
}

IwasawaElement IwasawaElement::operator-() const {
    std::vector<Cyclo> c;
    c.reserve(c_.size());
    for (const Cyclo& x : c_) c.push_back(-x);
    return IwasawaElement(std::move(c), exact_);
}

IwasawaElement IwasawaElement::operator*(const IwasawaElement& o) const {
    uint32_t s = std::min(s_trunc(), o.s_trunc());
    uint32_t prec = std::min(min_prec(), o.min_prec());
    std::vector<Cyclo> c(s, c_[0].ring().zero(prec));
    int64_t deg_a = -1, deg_b = -1;
    for (uint32_t j = 0; j < s_trunc(); ++j)
        if (!c_[j].is_zero()) deg_a = j;
    for (uint32_t j = 0; j < o.s_trunc(); ++j)
        if (!o.c_[j].is_zero()) deg_b = j;
    for (uint32_t i = 0; i < s_trunc(); ++i) {
        if (c_[i].is_zero()) continue;
        for (uint32_t j = 0; j < o.s_trunc() && i + j < s; ++j)
            c[i + j] += c_[i] * o.c_[j];
    }
    bool exact = exact_ && o.exact_ && (deg_a < 0 || deg_b < 0 || deg_a + deg_b < int64_t(s));
    return IwasawaElement(std::move(c), exact);
}

IwasawaElement IwasawaElement::scaled(const Cyclo& s) const {
    std::vector<Cyclo> c;
    c.reserve(c_.size());
    for (const Cyclo& x : c_) c.push_back(x * s);
    return IwasawaElement(std::move(c), exact_);
}

IwasawaElement IwasawaElement::scaled(const Padic& s) const {
    std::vector<Cyclo> c;
    c.reserve(c_.size());
    for (const Cyclo& x : c_) c.push_back(x.scaled(s));
    return IwasawaElement(std::move(c), exact_);
}

bool IwasawaElement::eq_at_precision(const IwasawaElement& o) const {
    uint32_t s = std::min(s_trunc(), o.s_trunc());
    for (uint32_t j = 0; j < s; ++j)
        if (!c_[j].eq_at_precision(o.c_[j])) return false;
    return true;
}

Cyclo IwasawaElement::specialize(uint32_t k, const FiniteCharacter& eps) const {
    if (k < 2 || k % 2 != 0)
        throw weight_class_mismatch("specialization weight must be even and >= 2");
    const CycloRing& C = cyclo_ring();
    const Zp& R = C.zp();
    // x = eps(u)·u^(k-2) - 1
    Padic uk = R.generator().pow(int64_t(k) - 2);
    Cyclo x = eps.on_generator_power(C, 1).scaled(uk) - C.one();
    Cyclo acc = C.zero(min_prec());
    for (size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
    if (!exact_) {
        // dropped tail is a multiple of x^s_trunc
        uint32_t cap = x.pow(int64_t(c_.size())).valuation_floor();
        acc = acc.with_prec(std::min<uint32_t>(acc.prec(), cap));
    }
    return acc;
}

std::vector<Cyclo> IwasawaElement::group_basis(uint32_t m) const {
    const CycloRing& C = cyclo_ring();
    uint64_t p = C.prime();
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= p;
    uint32_t prec = min_prec();
    uint64_t mod = C.zp().pow_p(prec);
    // S^j = sum_i (-1)^(j-i) C(j,i) [u^i], indices folded mod p^(m-1)
    std::vector<uint64_t> pascal = kernels::pascal_triangle(s_trunc(), mod);
    std::vector<Cyclo> g(size_t(ord), C.zero(prec));
    for (uint32_t j = 0; j < s_trunc(); ++j) {
        if (c_[j].is_zero()) continue;
        const uint64_t* row = &pascal[size_t(j) * (j + 1) / 2];
        Cyclo base = c_[j].with_prec(prec);
        for (uint32_t i = 0; i <= j; ++i) {
            Cyclo term = base.scaled_int(row[i]);
            size_t a = size_t(i % ord);
            if ((j - i) & 1)
                g[a] -= term;
            else
                g[a] += term;
        }
    }
    return g;
}

IwasawaElement IwasawaElement::reduce_mod_omega(uint32_t m) const {
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= cyclo_ring().prime();
    return from_group_basis(cyclo_ring(), group_basis(m), m,
                            std::max<uint32_t>(s_trunc(), uint32_t(ord)));
}

StarCheck check_star_condition(const CycloRing& C, const std::vector<Cyclo>& values,
                               uint32_t m, const Padic& alpha) {
    Padic g = principal_log(alpha);
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= C.prime();
    assert(values.size() == ord);
    Cyclo sum = C.zero(values[0].prec());
    for (uint64_t e = 0; e < ord; ++e) {
        FiniteCharacter eps{m, e};
        // eps(alpha)^(-1) = zeta^(-e·log alpha)
        Cyclo w = eps.on_generator_power(C, -int64_t(g.residue() % ord));
        sum += values[size_t(e)] * w;
    }
    StarCheck r;
    r.required_valuation = m - 1;
    r.observed_valuation = sum.valuation_floor();
    r.ok = r.observed_valuation >= r.required_valuation;
    return r;
}

StarCheck check_star_all(const CycloRing& C, const std::vector<Cyclo>& values, uint32_t m) {
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= C.prime();
    const Zp& R = C.zp();
    for (uint64_t a = 0; a < ord; ++a) {
        Padic alpha = R.generator().pow(int64_t(a));
        StarCheck r = check_star_condition(C, values, m, alpha);
        if (!r.ok) {
            r.failing_alpha_exponent = a;
            return r;
        }
    }
    StarCheck ok;
    ok.required_valuation = m - 1;
    ok.observed_valuation = m - 1;
    return ok;
}

IwasawaElement reconstruct_from_characters(const CycloRing& C,
                                           const std::vector<Cyclo>& values,
                                           uint32_t m, uint32_t s_trunc) {
    uint64_t ord = 1;
    for (uint32_t i = 1; i < m; ++i) ord *= C.prime();
    assert(values.size() == ord);
    std::vector<Cyclo> basis;
    basis.reserve(size_t(ord));
    for (uint64_t a = 0; a < ord; ++a) {
        Cyclo sum = C.zero(values[0].prec());
        for (uint64_t e = 0; e < ord; ++e) {
            FiniteCharacter eps{m, e};
            Cyclo w = eps.on_generator_power(C, -int64_t(a));
            sum += values[size_t(e)] * w;
        }
        Cyclo coeff;
        try {
            coeff = sum.divide_exact_p(m - 1);
        } catch (const insufficient_precision&) {
            throw star_condition_violated("group coefficient not divisible by p^(m-1)");
        }
        basis.push_back(std::move(coeff));
    }
    return IwasawaElement::from_group_basis(C, basis, m, s_trunc);
}

FamilyValidation validate_family(const CharacterFamily& fam) {
    FamilyValidation v;
    for (uint32_t m = 1; m < fam.m_max; ++m) {
        const auto& lo = fam.levels[m - 1];
        const auto& hi = fam.levels[m];
        for (uint64_t e = 0; e < lo.size(); ++e) {
            const CycloSeries& a = lo[size_t(e)];
            const CycloSeries& b = hi[size_t(e * fam.p)];
            uint32_t n = std::min(a.truncation(), b.truncation());
            for (uint32_t i = 0; i < n; ++i) {
                if (!a[i].eq_at_precision(b[i])) {
                    v.ok = false;
                    v.level = m;
                    v.exponent = e;
                    v.coefficient = i;
                    return v;
                }
            }
        }
    }
    return v;
}

TwoVariableSeries assemble_family_series(const CycloRing& C, const CharacterFamily& fam,
                                         uint32_t s_trunc) {
    FamilyValidation v = validate_family(fam);
    if (!v.ok)
        throw inconsistent_family("family values disagree at level " + std::to_string(v.level));
    const auto& top = fam.levels[fam.m_max - 1];
    uint32_t M = top[0].truncation();
    std::vector<IwasawaElement> coeffs;
    coeffs.reserve(M);
    for (uint32_t n = 0; n < M; ++n) {
        std::vector<Cyclo> values;
        values.reserve(top.size());
        for (const CycloSeries& s : top) values.push_back(s[n]);
        StarCheck sc = check_star_all(C, values, fam.m_max);
        if (!sc.ok)
            throw star_condition_violated("condition (*) fails at coefficient " + std::to_string(n));
        coeffs.push_back(reconstruct_from_characters(C, values, fam.m_max, s_trunc));
    }
    return TwoVariableSeries(std::move(coeffs));
}

CycloSeries specialize_family_series(const TwoVariableSeries& F, const FiniteCharacter& eps) {
    std::vector<Cyclo> c;
    c.reserve(F.truncation());
    for (uint32_t n = 0; n < F.truncation(); ++n) c.push_back(F[n].at_character(eps));
    return CycloSeries(std::move(c));
}

CycloSeries specialize_series(const TwoVariableSeries& F, uint32_t k, const FiniteCharacter& eps) {
    std::vector<Cyclo> c;
    c.reserve(F.truncation());
    for (uint32_t n = 0; n < F.truncation(); ++n) c.push_back(F[n].specialize(k, eps));
    return CycloSeries(std::move(c));
}

CharacterFamily family_from_series(const TwoVariableSeries& F, uint32_t m_max) {
    CharacterFamily fam;
    const CycloRing& C = F[0].cyclo_ring();
    fam.p = C.prime();
    fam.N = C.zp().data_prec();
    fam.M = F.truncation();
    fam.m_max = m_max;
    fam.levels.resize(m_max);
    for (uint32_t m = 1; m <= m_max; ++m) {
        for (const FiniteCharacter& eps : characters_of_level(fam.p, m))
            fam.levels[m - 1].push_back(specialize_family_series(F, eps));
    }
    return fam;
}

} // namespace stlf
