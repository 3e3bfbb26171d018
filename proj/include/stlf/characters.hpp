#pragma once

#include <cstdint>
#include <vector>

#include "stlf/iwasawa.hpp"

namespace stlf {

/// Context for the critical (square-root-twisted) character: a fixed even
/// weight anchor k0 with k0 = 2 mod 2(p-1).  Weights fed to specializations
/// must lie in the same class mod 2(p-1).
struct CriticalCharacter {
    const Zp* R;
    uint32_t k0;

    CriticalCharacter(const Zp* ring, uint32_t k0);
    void require_weight(uint32_t k) const;
};

/// scalar * [u^exponent]: the exact carrier for products of character values
/// in the Iwasawa algebra (a unit scalar times one group-like).  Arithmetic
/// specialization of this shape is exact, with no S-truncation.
struct MonomialIwasawa {
    Padic scalar;
    Padic exponent;

    MonomialIwasawa operator*(const MonomialIwasawa& o) const {
        return {scalar * o.scalar, exponent + o.exponent};
    }
    MonomialIwasawa inverse() const { return {scalar.inverse(), -exponent}; }

    /// kappa of signature (k, eps): scalar · eps(u)^exponent · u^{exponent(k-2)}.
    Cyclo specialize(const CycloRing& C, uint32_t k, const FiniteCharacter& eps) const;

    /// Expansion scalar·(1+S)^exponent truncated at s_trunc.
    IwasawaElement to_iwasawa(const CycloRing& C, uint32_t s_trunc) const;
};

/// The weight-family value at a unit z: omega(z)^((k0-2)/2) · [<z>^(1/2)].
MonomialIwasawa critical_family_at(const CriticalCharacter& th, const Padic& z);

/// Closed form of the specialized critical character,
/// eps^(1/2)(<z>) · z^((k-2)/2); agrees with specialize(critical_family_at).
Cyclo critical_value(const CriticalCharacter& th, const CycloRing& C, const Padic& z,
                     uint32_t k, const FiniteCharacter& eps);

/// The inverse norm-twist family character evaluated on an ideal class via
/// its coprime representative of index rep_index (= #(O_c/a)); this is the
/// weight family at z = N_K(a) = 1/rep_index.  Its specialization at (k, eps
/// trivial) is N(a)^(1-k/2) c^(1-k/2).
MonomialIwasawa norm_twist_inverse(const CriticalCharacter& th, int64_t rep_index);

/// Per-class unit values of the anticyclotomic ratio lambda(a/abar), the
/// ingested avatar data for the character family built from lambda.
struct HeckeUnitData {
    const Zp* R;
    uint32_t k0;
    std::vector<Padic> values;      // one unit per ideal class

    void validate() const;          // all entries must be units
};

/// Per-class family values t(a)·[<t(a)>^(1/2)].
std::vector<MonomialIwasawa> anticyclotomic_family(const CriticalCharacter& th,
                                                   const HeckeUnitData& data);

/// Specialized anticyclotomic data at kappa = (k, eps): the class table
/// eps^(1/2)(<t>)·t^(k/2) and the local character at the split prime,
/// u -> eps^(1/2)(<u>)·u^(k/2) on Z_p^x.
struct AnticycloSpecialization {
    uint32_t k;
    FiniteCharacter eps;
    FiniteCharacter eps_half;
    std::vector<Cyclo> class_values;

    /// xi_{kappa,p}(v) for a unit v (error for non-units).
    Cyclo local_value(const CycloRing& C, const Padic& v) const;
};

AnticycloSpecialization anticyclotomic_specialize(const CriticalCharacter& th,
                                                  const HeckeUnitData& data,
                                                  const CycloRing& C, uint32_t k,
                                                  const FiniteCharacter& eps);

/// The local part of the anticyclotomic family at the split prime:
/// v -> v·[<v>^(1/2)], whose (k, eps) specialization is the local character
/// above whenever k = 2 mod 2(p-1).
MonomialIwasawa anticyclotomic_local_family(const CriticalCharacter& th, const Padic& v);

} // namespace stlf
