#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlf/characters.hpp"
#include "stlf/measures.hpp"
#include "stlf/quadratic.hpp"

namespace stlf {

/// Finite-order character of Gamma_infinity in the product model
/// ClassGroup x Z_p^x, plus the (n,-n)-power component on the Z_p^x factor:
/// value at (class i, v) = class_values[i] · omega(v)^tame · wild(<v>) · v^power.
struct GammaCharacter {
    std::vector<Padic> class_values;        // empty means trivial on classes
    int64_t tame_exponent = 0;
    FiniteCharacter wild = FiniteCharacter::trivial();
    int64_t power = 0;

    bool trivial_on_classes() const { return class_values.empty(); }
    Padic on_class(const Zp& R, size_t i) const {
        return trivial_on_classes() ? R.one() : class_values[i];
    }
    /// The Z_p^x-factor value at a unit v.
    Cyclo on_unit(const CycloRing& C, const Padic& v) const;
    uint32_t wild_level() const { return wild.level; }
};

/// Check multiplicativity of a class-character value table against the group.
bool is_class_character(const ClassGroup& G, const std::vector<Padic>& values);

enum class BundleMode { OneVariable, Family };

struct BundleContext {
    uint64_t p = 5;
    int64_t DK = 11;
    int64_t c = 1;
    uint32_t N = 8;
    uint32_t M = 32;
    uint32_t k0 = 2;
    uint32_t m_max = 2;
    uint32_t s_trunc = 10;

    int64_t discriminant() const { return -c * c * DK; }
    void validate() const;
};

/// One ideal class of the bundle: the reduced form, a representative with
/// leading coefficient (= ideal index) coprime to c p D_K, the ingested
/// Z_p^x-part of rec_K(a), and the expansion coefficients.
struct BundleClass {
    QuadraticForm form;
    QuadraticForm rep;
    Padic u_a;
    std::optional<ScalarSeries> scalar_coeffs;               // one-variable mode
    std::optional<TwoVariableSeries> family_coeffs;          // family mode

    int64_t rep_index() const { return rep.a; }
};

struct ExpansionBundle {
    BundleContext ctx;
    BundleMode mode = BundleMode::OneVariable;
    std::vector<BundleClass> classes;

    void validate(const Zp& R) const;
};

/// The substitution exponent alpha = N(a)^-1 sqrt(-D_K)^-1 of the class.
Padic substitution_exponent(const Zp& R, const BundleContext& ctx, int64_t rep_index);

/// Per-class measure: deplete the class series, substitute T -> (1+T)^alpha - 1.
ScalarMeasure class_measure(const Zp& R, const ExpansionBundle& b, size_t i);
FamilyMeasure class_measure_family(const Zp& R, const CycloRing& C,
                                   const ExpansionBundle& b, size_t i);

/// One-variable p-adic L-value:
/// sum_a xi_k(a) N(a)^(-k/2) ∫_{Z_p^x} xi_{k,p}(u) (phi|[a])(u) dmu_{f,a}(u).
Cyclo l_one_variable(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                     const AnticycloSpecialization& xi, const GammaCharacter& phi,
                     uint32_t k);

/// Two-variable (Lambda-valued) L-function:
/// sum_a chi^-1 xi(a) N(a)^-1 ∫_{Z_p^x} xi_p(u)(phi|[a])(u) dmu_a(u), with the
/// family's local weight xi_p(u) = u·[<u>^(1/2)] inside the integral.
IwasawaElement l_big(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                     const CriticalCharacter& th, const HeckeUnitData& lambda,
                     const GammaCharacter& phi);

/// kappa composed with the big L-value (delegates to arithmetic specialization).
Cyclo specialize_l(const IwasawaElement& L, uint32_t k, const FiniteCharacter& eps);

/// Per-class diagnostic: is the depleted+substituted measure already
/// supported on Z_p^x, i.e. is the explicit restriction a no-op?  Cited for
/// genuine quaternionic expansions; reported, never assumed.
std::vector<bool> restriction_noop_diagnostic(const Zp& R, const CycloRing& C,
                                              const ExpansionBundle& b);

/// The specialized one-variable bundle f_kappa: coefficient-wise arithmetic
/// specialization of the family coefficients at (k, eps trivial).
ExpansionBundle specialize_bundle(const ExpansionBundle& b, uint32_t k);

struct InterpRow {
    uint32_t k = 0;
    bool pass = false;
    uint32_t precision = 0;     // digits at which the two sides were compared
    std::string lhs;
    std::string rhs;
};

struct InterpReport {
    bool pass = true;
    std::vector<InterpRow> rows;
};

/// Machine check of the interpolation identity: for each k in ks (eps
/// trivial), specialize_l(l_big) must equal
/// critical_value(c)^-1 · l_one_variable(specialized bundle).
InterpReport interp_check(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                          const HeckeUnitData& lambda, const GammaCharacter& phi,
                          const std::vector<uint32_t>& ks);

struct StabilizationReport {
    bool depletions_equal = true;
    std::vector<size_t> mismatched_classes;   // classes whose depletions differ
    bool l_equal = false;
    bool pass = false;
    uint32_t precision = 0;
};

/// Lemma-level check: two bundles whose class series agree after depletion
/// must produce identical one-variable L-values.
StabilizationReport stabilization_check(const Zp& R, const CycloRing& C,
                                        const ExpansionBundle& f,
                                        const ExpansionBundle& fsharp,
                                        const AnticycloSpecialization& xi,
                                        const GammaCharacter& phi, uint32_t k);

} // namespace stlf
