#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlf/series.hpp"

namespace stlf {

/// Finite-order character of the principal units, factoring through
/// U^(1)/U^(m) (cyclic of order p^(m-1), generated by the image of u = 1+p).
/// eps(u) = zeta_{p^(m-1)}^exponent.
struct FiniteCharacter {
    uint32_t level = 1;     // m
    uint64_t exponent = 0;  // e mod p^(m-1)

    static FiniteCharacter trivial() { return {1, 0}; }
    bool is_trivial(uint64_t p) const { return exponent % order(p) == 0; }
    uint64_t order(uint64_t p) const {     // p^(m-1)
        uint64_t o = 1;
        for (uint32_t i = 1; i < level; ++i) o *= p;
        return o;
    }
    /// eps(u^a); the ring must have level >= m-1.
    Cyclo on_generator_power(const CycloRing& C, int64_t a) const;
    /// eps(z) for a principal unit z (z = u^principal_log(z)).
    Cyclo at_unit(const CycloRing& C, const Padic& z) const;
    /// The square root in the dual group of odd order p^(m-1):
    /// eps^((p^(m-1)+1)/2), the pinned convention for eps^(1/2).
    FiniteCharacter half(uint64_t p) const;
};

/// All p^(m-1) characters of level <= m, indexed by exponent.
std::vector<FiniteCharacter> characters_of_level(uint64_t p, uint32_t m);

/// Element of the Iwasawa algebra O[[U^(1)]] written in the variable
/// S = [u] - 1: a polynomial of degree < s_trunc with Cyclo coefficients,
/// exact modulo (p^prec, S^s_trunc).  `exact_degree` marks elements that are
/// genuine polynomials (nothing was truncated away), for which arithmetic
/// specialization is exact at every finite character.
class IwasawaElement {
public:
    IwasawaElement(std::vector<Cyclo> coeffs, bool exact_degree);

    static IwasawaElement zero(const CycloRing& C, uint32_t s_trunc, uint32_t prec);
    static IwasawaElement scalar(const CycloRing& C, const Cyclo& x, uint32_t s_trunc);
    /// Group-like [u^z] = (1+S)^z for z in Z_p.
    static IwasawaElement group_like(const CycloRing& C, const Padic& z, uint32_t s_trunc);
    /// sum_a coeffs[a]·[u^a], a polynomial of degree < p^(m-1) (exact).
    static IwasawaElement from_group_basis(const CycloRing& C,
                                           const std::vector<Cyclo>& coeffs,
                                           uint32_t m, uint32_t s_trunc);

    const CycloRing& cyclo_ring() const { return c_[0].ring(); }
    uint32_t s_trunc() const { return uint32_t(c_.size()); }
    bool exact_degree() const { return exact_; }
    const std::vector<Cyclo>& coeffs() const { return c_; }
    const Cyclo& operator[](uint32_t j) const { return c_[j]; }

    bool is_zero() const;
    uint32_t min_prec() const;
    IwasawaElement with_prec(uint32_t prec) const;
    IwasawaElement truncated(uint32_t s_trunc) const;
    IwasawaElement lift_to(const CycloRing* higher) const;

    IwasawaElement operator+(const IwasawaElement& o) const;
    IwasawaElement operator-(const IwasawaElement& o) const;
    IwasawaElement operator-() const;
    IwasawaElement operator*(const IwasawaElement& o) const;
    IwasawaElement scaled(const Cyclo& s) const;
    IwasawaElement scaled(const Padic& s) const;

    bool eq_at_precision(const IwasawaElement& o) const;

    /// Arithmetic specialization kappa of signature (k, eps): evaluation at
    /// S = eps(u)·u^(k-2) - 1.  k even, >= 2.  A truncated element reports
    /// the certified precision floor(v_p(x^s_trunc)) of the dropped tail.
    Cyclo specialize(uint32_t k, const FiniteCharacter& eps) const;
    /// Specialization at weight 2: S = eps(u) - 1.
    Cyclo at_character(const FiniteCharacter& eps) const { return specialize(2, eps); }

    /// Coefficients of [u^a], a in Z/p^(m-1), of the image mod omega_m(S).
    std::vector<Cyclo> group_basis(uint32_t m) const;
    IwasawaElement reduce_mod_omega(uint32_t m) const;

private:
    std::vector<Cyclo> c_;
    bool exact_;
};

inline IwasawaElement zero_like(const IwasawaElement& x) {
    return IwasawaElement::zero(x.cyclo_ring(), x.s_trunc(), x.min_prec());
}
inline IwasawaElement operator*(const IwasawaElement& a, const Cyclo& s) { return a.scaled(s); }
inline IwasawaElement operator*(const IwasawaElement& a, const Padic& s) { return a.scaled(s); }
inline uint64_t prime_of(const IwasawaElement& x) { return x.cyclo_ring().prime(); }
inline uint32_t prec_of(const IwasawaElement& x) { return x.min_prec(); }

template <>
struct Flat<IwasawaElement> {
    static size_t block(const IwasawaElement& proto) {
        return size_t(proto.s_trunc()) * proto.cyclo_ring().degree();
    }
    static const Zp& zp(const IwasawaElement& proto) { return proto.cyclo_ring().zp(); }
    static void write(const IwasawaElement& x, uint64_t* out) {
        size_t d = x.cyclo_ring().degree();
        for (uint32_t j = 0; j < x.s_trunc(); ++j)
            for (size_t i = 0; i < d; ++i) out[size_t(j) * d + i] = x[j].coords()[i];
    }
    static IwasawaElement read(const IwasawaElement& proto, const uint64_t* in, uint32_t prec) {
        size_t d = proto.cyclo_ring().degree();
        uint64_t m = proto.cyclo_ring().zp().pow_p(prec);
        std::vector<Cyclo> c;
        c.reserve(proto.s_trunc());
        for (uint32_t j = 0; j < proto.s_trunc(); ++j) {
            std::vector<uint64_t> v(d);
            for (size_t i = 0; i < d; ++i) v[i] = in[size_t(j) * d + i] % m;
            c.emplace_back(&proto.cyclo_ring(), std::move(v), prec);
        }
        return IwasawaElement(std::move(c), false);
    }
};

using TwoVariableSeries = PowerSeries<IwasawaElement>;

/// Result of the condition (*) congruence check.
struct StarCheck {
    bool ok = true;
    uint64_t failing_alpha_exponent = 0;   // alpha = u^a of the first failure
    uint32_t observed_valuation = 0;
    uint32_t required_valuation = 0;
};

/// sum over all characters of level <= m of eps(alpha)^(-1) values[eps] must
/// be divisible by p^(m-1).  `values` is indexed by character exponent.
StarCheck check_star_condition(const CycloRing& C, const std::vector<Cyclo>& values,
                               uint32_t m, const Padic& alpha);
/// The same for every alpha (equivalently every group element u^a).
StarCheck check_star_all(const CycloRing& C, const std::vector<Cyclo>& values, uint32_t m);

/// Fourier inversion: A = sum_a c_a [u^a] with
/// c_a = p^-(m-1) sum_e zeta^(-e a) values[e]; precision drops by m-1.
/// Postcondition: A.at_character(eps) reproduces values for all eps of
/// level <= m.  Throws star_condition_violated when some c_a is not integral
/// or not scalar at precision.
IwasawaElement reconstruct_from_characters(const CycloRing& C,
                                           const std::vector<Cyclo>& values,
                                           uint32_t m, uint32_t s_trunc);

/// Character-indexed family data: for each level m <= m_max a full set of
/// p^(m-1) power series, values of the same underlying two-variable series.
struct CharacterFamily {
    uint64_t p = 0;
    uint32_t N = 0;
    uint32_t M = 0;
    uint32_t m_max = 1;
    /// levels[m-1][e] = series attached to the level-m character of exponent e.
    std::vector<std::vector<CycloSeries>> levels;
};

struct FamilyValidation {
    bool ok = true;
    uint32_t level = 0;        // first inconsistent (level, exponent, coeff)
    uint64_t exponent = 0;
    uint32_t coefficient = 0;
};

/// Cross-level consistency: the value stored at level m for eps equals the
/// value stored at level m+1 for the same eps (exponent p·e).
FamilyValidation validate_family(const CharacterFamily& fam);

/// Reconstruct the two-variable series F with F specialized at eps equal to
/// the family values, coefficient by coefficient (Fourier inversion per T_x
/// coefficient).  Requires validate_family and the star condition.
TwoVariableSeries assemble_family_series(const CycloRing& C, const CharacterFamily& fam,
                                         uint32_t s_trunc);

/// Coefficient-wise evaluation a_n -> a_n(eps(u) - 1).
CycloSeries specialize_family_series(const TwoVariableSeries& F, const FiniteCharacter& eps);

/// Coefficient-wise arithmetic specialization at (k, eps).
CycloSeries specialize_series(const TwoVariableSeries& F, uint32_t k, const FiniteCharacter& eps);

/// Sample a CharacterFamily from a two-variable series (the synthetic route:
/// families arrive as data, here generated by specialization).
CharacterFamily family_from_series(const TwoVariableSeries& F, uint32_t m_max);

} // namespace stlf
