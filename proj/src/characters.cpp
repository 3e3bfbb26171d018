#include "stlf/characters.hpp"

#include <cassert>

namespace stlf {

CriticalCharacter::CriticalCharacter(const Zp* ring, uint32_t k0_) : R(ring), k0(k0_) {
    uint64_t step = 2 * (R->prime() - 1);
    if (k0 < 2 || k0 % 2 != 0 || (uint64_t(k0) - 2) % step != 0)
        throw config_error("k0 must be even with k0 = 2 mod 2(p-1)");
}

void CriticalCharacter::require_weight(uint32_t k) const {
    uint64_t step = 2 * (R->prime() - 1);
    if (k < 2 || k % 2 != 0 || (uint64_t(k) % step) != (uint64_t(k0) % step))
        throw weight_class_mismatch();
}

Cyclo MonomialIwasawa::specialize(const CycloRing& C, uint32_t k,
                                  const FiniteCharacter& eps) const {
    assert(k >= 2 && k % 2 == 0);
    const Zp& R = C.zp();
    uint64_t ord = eps.order(R.prime());
    if (R.pow_p(exponent.prec()) < ord)
        throw insufficient_precision("group-like exponent known to too few digits for eps");
    Cyclo eps_part = eps.on_generator_power(C, int64_t(exponent.residue() % ord));
    // u^{exponent (k-2)}: the order of u mod p^prec is p^(prec-1), so the
    // exponent can be reduced before the 128-bit product
    uint32_t prec = std::min<uint32_t>(exponent.prec() + 1, R.store_prec());
    Padic u = R.generator().with_prec(prec);
    uint64_t red = R.pow_p(prec - 1);
    uint64_t e = uint64_t((unsigned __int128)(exponent.residue() % red) * (k - 2) % red);
    Padic weight_part = u.pow(int64_t(e));
    return eps_part.scaled(scalar * weight_part);
}

IwasawaElement MonomialIwasawa::to_iwasawa(const CycloRing& C, uint32_t s_trunc) const {
    return IwasawaElement::group_like(C, exponent, s_trunc).scaled(scalar);
}

MonomialIwasawa critical_family_at(const CriticalCharacter& th, const Padic& z) {
    if (!z.is_unit())
        throw not_a_unit("critical character of a non-unit");
    Padic omega = teichmueller(z);
    Padic tame = omega.pow(int64_t((th.k0 - 2) / 2));
    Padic gamma = principal_log(principal_part(z));
    // [<z>^(1/2)] = [u^(gamma/2)]
    Padic half = th.R->from_rational(1, 2, gamma.prec());
    return {tame, gamma * half};
}

Cyclo critical_value(const CriticalCharacter& th, const CycloRing& C, const Padic& z,
                     uint32_t k, const FiniteCharacter& eps) {
    th.require_weight(k);
    if (!z.is_unit())
        throw not_a_unit("critical character of a non-unit");
    Padic zpart = principal_part(z);
    Cyclo eps_half = eps.half(C.prime()).at_unit(C, zpart);
    Padic zk = z.pow(int64_t((k - 2) / 2));
    return eps_half.scaled(zk);
}

MonomialIwasawa norm_twist_inverse(const CriticalCharacter& th, int64_t rep_index) {
    if (rep_index % int64_t(th.R->prime()) == 0)
        throw representative_not_coprime();
    // z = N_K(a) = #(O_c/a)^(-1)
    Padic z = th.R->from_rational(1, rep_index);
    return critical_family_at(th, z);
}

void HeckeUnitData::validate() const {
    for (const Padic& t : values)
        if (!t.is_unit())
            throw not_a_unit("lambda table entry is not a unit");
}

std::vector<MonomialIwasawa> anticyclotomic_family(const CriticalCharacter& th,
                                                   const HeckeUnitData& data) {
    data.validate();
    std::vector<MonomialIwasawa> out;
    out.reserve(data.values.size());
    for (const Padic& t : data.values) {
        Padic gamma = principal_log(principal_part(t));
        Padic half = th.R->from_rational(1, 2, gamma.prec());
        out.push_back({t, gamma * half});
    }
    return out;
}

Cyclo AnticycloSpecialization::local_value(const CycloRing& C, const Padic& v) const {
    if (!v.is_unit())
        throw not_a_unit("xi_p of a non-unit");
    Cyclo e = eps_half.at_unit(C, principal_part(v));
    return e.scaled(v.pow(int64_t(k / 2)));
}

AnticycloSpecialization anticyclotomic_specialize(const CriticalCharacter& th,
                                                  const HeckeUnitData& data,
                                                  const CycloRing& C, uint32_t k,
                                                  const FiniteCharacter& eps) {
    th.require_weight(k);
    data.validate();
    AnticycloSpecialization out;
    out.k = k;
    out.eps = eps;
    out.eps_half = eps.half(C.prime());
    out.class_values.reserve(data.values.size());
    for (const Padic& t : data.values) {
        Cyclo e = out.eps_half.at_unit(C, principal_part(t));
        out.class_values.push_back(e.scaled(t.pow(int64_t(k / 2))));
    }
    return out;
}

MonomialIwasawa anticyclotomic_local_family(const CriticalCharacter& th, const Padic& v) {
    if (!v.is_unit())
        throw not_a_unit("xi_p of a non-unit");
    Padic gamma = principal_log(principal_part(v));
    Padic half = th.R->from_rational(1, 2, gamma.prec());
    return {v, gamma * half};
}

} // namespace stlf
