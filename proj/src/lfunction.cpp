#include "stlf/lfunction.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace stlf {

Cyclo GammaCharacter::on_unit(const CycloRing& C, const Padic& v) const {
    if (!v.is_unit())
        throw not_a_unit("GammaCharacter at a non-unit");
    const Zp& R = C.zp();
    int64_t pm1 = int64_t(R.prime()) - 1;
    int64_t te = ((tame_exponent % pm1) + pm1) % pm1;
    Padic scalar = teichmueller(v).pow(te) * v.pow(power);
    Cyclo w = wild.is_trivial(R.prime()) ? C.one().with_prec(v.prec())
                                         : wild.at_unit(C, principal_part(v));
    return w.scaled(scalar);
}

bool is_class_character(const ClassGroup& G, const std::vector<Padic>& values) {
    if (values.empty()) return true;
    if (values.size() != G.order()) return false;
    for (size_t i = 0; i < G.order(); ++i)
        for (size_t j = 0; j < G.order(); ++j)
            if (!(values[i] * values[j]).eq_at_precision(values[G.compose_indices(i, j)]))
                return false;
    return true;
}

void BundleContext::validate() const {
    if (c < 1) throw config_error("conductor c must be >= 1");
    if (DK <= 0) throw config_error("D_K must be the positive discriminant magnitude");
    if (int64_t(p) <= 2) throw config_error("p must be an odd prime");
    if (DK % int64_t(p) == 0 || c % int64_t(p) == 0)
        throw config_error("p must not divide c*D_K");
    if (splitting_type(int64_t(p), DK) != SplittingType::Split)
        throw config_error("p must be split in K");
    uint64_t step = 2 * (p - 1);
    if (k0 < 2 || k0 % 2 != 0 || (uint64_t(k0) - 2) % step != 0)
        throw config_error("k0 must be even with k0 = 2 mod 2(p-1)");
    if (M < 2) throw config_error("truncation M must be >= 2");
    if (N < 2) throw config_error("precision N must be >= 2");
}

void ExpansionBundle::validate(const Zp& R) const {
    ctx.validate();
    if (R.prime() != ctx.p) throw config_error("ring prime differs from bundle context");
    std::vector<QuadraticForm> forms = reduced_forms(ctx.discriminant());
    if (forms.size() != classes.size())
        throw config_error("bundle must have one entry per ideal class");
    int64_t mod = ctx.c * int64_t(ctx.p) * ctx.DK;
    for (size_t i = 0; i < classes.size(); ++i) {
        const BundleClass& cls = classes[i];
        if (!(cls.form == forms[i]))
            throw config_error("bundle classes must follow the reduced-forms ordering");
        if (cls.rep.discriminant() != ctx.discriminant())
            throw config_error("representative has the wrong discriminant");
        if (!(cls.rep.reduced() == cls.form))
            throw config_error("representative is not equivalent to its class form");
        if (std::gcd(cls.rep.a, mod) != 1)
            throw representative_not_coprime();
        if (!cls.u_a.is_unit())
            throw not_a_unit("u_a must be a unit");
        if (mode == BundleMode::OneVariable) {
            if (!cls.scalar_coeffs || cls.scalar_coeffs->truncation() != ctx.M)
                throw config_error("one-variable class series missing or mistruncated");
        } else {
            if (!cls.family_coeffs || cls.family_coeffs->truncation() != ctx.M)
                throw config_error("family class series missing or mistruncated");
        }
    }
}

Padic substitution_exponent(const Zp& R, const BundleContext& ctx, int64_t rep_index) {
    // N(a)^-1 = c / rep_index, then divide by sqrt(-D_K)
    Padic ninv = R.from_rational(ctx.c, rep_index);
    return ninv * sqrt_minus_dk(R, ctx.DK).inverse();
}

ScalarMeasure class_measure(const Zp& R, const ExpansionBundle& b, size_t i) {
    const BundleClass& cls = b.classes[i];
    Padic alpha = substitution_exponent(R, b.ctx, cls.rep_index());
    ScalarSeries depleted = deplete(*cls.scalar_coeffs);
    return ScalarMeasure(substitute_binomial(depleted, alpha));
}

FamilyMeasure class_measure_family(const Zp& R, const CycloRing& C,
                                   const ExpansionBundle& b, size_t i) {
    const BundleClass& cls = b.classes[i];
    Padic alpha = substitution_exponent(R, b.ctx, cls.rep_index());
    std::vector<IwasawaElement> lifted;
    lifted.reserve(cls.family_coeffs->truncation());
    for (uint32_t n = 0; n < cls.family_coeffs->truncation(); ++n)
        lifted.push_back((*cls.family_coeffs)[n].lift_to(&C));
    TwoVariableSeries depleted = deplete(TwoVariableSeries(std::move(lifted)));
    return FamilyMeasure(substitute_binomial(depleted, alpha));
}

namespace {

// integrand values on the integer points 0..M-1, zero off the units
template <class V, class Make>
std::vector<V> unit_point_values(uint64_t p, uint32_t M, const V& zero, Make&& make) {
    std::vector<V> g;
    g.reserve(M);
    for (uint32_t l = 0; l < M; ++l)
        g.push_back(l % p == 0 ? zero : make(l));
    return g;
}

} // namespace

namespace {

void require_class_character(const ExpansionBundle& b, const GammaCharacter& phi) {
    if (phi.trivial_on_classes()) return;
    ClassGroup G(b.ctx.discriminant());
    if (!is_class_character(G, phi.class_values))
        throw config_error("phi class values are not multiplicative on the class group");
}

} // namespace

Cyclo l_one_variable(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                     const AnticycloSpecialization& xi, const GammaCharacter& phi,
                     uint32_t k) {
    if (b.mode != BundleMode::OneVariable)
        throw config_error("l_one_variable needs a one-variable bundle");
    b.validate(R);
    require_class_character(b, phi);
    if (xi.k != k)
        throw weight_class_mismatch("xi specialization weight differs from k");
    if (xi.class_values.size() != b.classes.size())
        throw config_error("xi table size differs from the class count");
    Cyclo acc = C.zero();
    for (size_t i = 0; i < b.classes.size(); ++i) {
        const BundleClass& cls = b.classes[i];
        ScalarMeasure mu = class_measure(R, b, i).restricted_to_units();
        Padic phic = phi.on_class(R, i);
        std::vector<Cyclo> g = unit_point_values<Cyclo>(
            R.prime(), b.ctx.M, C.zero(), [&](uint32_t l) {
                Padic lp = R.make(int64_t(l));
                Cyclo xi_loc = xi.local_value(C, lp);
                Cyclo phiv = phi.on_unit(C, cls.u_a * lp);
                return xi_loc * phiv.scaled(phic);
            });
        Cyclo integral = integrate_points(mu, g);
        // N(a)^(-k/2) = (c / rep_index)^(k/2)
        Padic norm_pow = R.from_rational(b.ctx.c, cls.rep_index()).pow(int64_t(k / 2));
        acc += xi.class_values[i] * integral.scaled(norm_pow);
    }
    return acc;
}

IwasawaElement l_big(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                     const CriticalCharacter& th, const HeckeUnitData& lambda,
                     const GammaCharacter& phi) {
    if (b.mode != BundleMode::Family)
        throw config_error("l_big needs a family-mode bundle");
    b.validate(R);
    require_class_character(b, phi);
    if (lambda.values.size() != b.classes.size())
        throw config_error("lambda table size differs from the class count");
    uint32_t s = b.ctx.s_trunc;
    std::vector<MonomialIwasawa> xi_fam = anticyclotomic_family(th, lambda);
    IwasawaElement acc = IwasawaElement::zero(C, s, R.store_prec());
    for (size_t i = 0; i < b.classes.size(); ++i) {
        const BundleClass& cls = b.classes[i];
        FamilyMeasure mu = class_measure_family(R, C, b, i).restricted_to_units();
        Padic phic = phi.on_class(R, i);
        IwasawaElement zero = IwasawaElement::zero(C, s, R.store_prec());
        std::vector<IwasawaElement> g = unit_point_values<IwasawaElement>(
            R.prime(), b.ctx.M, zero, [&](uint32_t l) {
                Padic lp = R.make(int64_t(l));
                // xi_p(l) = l·[<l>^(1/2)], the family's local weight
                MonomialIwasawa loc = anticyclotomic_local_family(th, lp);
                Cyclo phiv = phi.on_unit(C, cls.u_a * lp).scaled(phic);
                return loc.to_iwasawa(C, s).scaled(phiv);
            });
        IwasawaElement integral = integrate_points(mu, g);
        MonomialIwasawa class_factor = norm_twist_inverse(th, cls.rep_index()) * xi_fam[i];
        Padic ninv = R.from_rational(b.ctx.c, cls.rep_index());   // N(a)^-1
        acc = acc + (class_factor.to_iwasawa(C, s) * integral).scaled(ninv);
    }
    return acc;
}

Cyclo specialize_l(const IwasawaElement& L, uint32_t k, const FiniteCharacter& eps) {
    return L.specialize(k, eps);
}

std::vector<bool> restriction_noop_diagnostic(const Zp& R, const CycloRing& C,
                                              const ExpansionBundle& b) {
    std::vector<bool> out;
    out.reserve(b.classes.size());
    for (size_t i = 0; i < b.classes.size(); ++i) {
        if (b.mode == BundleMode::OneVariable)
            out.push_back(class_measure(R, b, i).supported_on_units());
        else
            out.push_back(class_measure_family(R, C, b, i).supported_on_units());
    }
    return out;
}

ExpansionBundle specialize_bundle(const ExpansionBundle& b, uint32_t k) {
    assert(b.mode == BundleMode::Family);
    ExpansionBundle out;
    out.ctx = b.ctx;
    out.mode = BundleMode::OneVariable;
    out.classes.reserve(b.classes.size());
    for (const BundleClass& cls : b.classes) {
        BundleClass sc;
        sc.form = cls.form;
        sc.rep = cls.rep;
        sc.u_a = cls.u_a;
        std::vector<Padic> coeffs;
        coeffs.reserve(cls.family_coeffs->truncation());
        for (uint32_t n = 0; n < cls.family_coeffs->truncation(); ++n) {
            Cyclo v = (*cls.family_coeffs)[n].specialize(k, FiniteCharacter::trivial());
            if (!v.is_scalar())
                throw error("trivial-character specialization produced a non-scalar");
            coeffs.push_back(v.scalar_part());
        }
        sc.scalar_coeffs = ScalarSeries(std::move(coeffs));
        out.classes.push_back(std::move(sc));
    }
    return out;
}

InterpReport interp_check(const Zp& R, const CycloRing& C, const ExpansionBundle& b,
                          const HeckeUnitData& lambda, const GammaCharacter& phi,
                          const std::vector<uint32_t>& ks) {
    CriticalCharacter th(&R, b.ctx.k0);
    IwasawaElement L = l_big(R, C, b, th, lambda, phi);
    InterpReport report;
    for (uint32_t k : ks) {
        th.require_weight(k);
        FiniteCharacter triv = FiniteCharacter::trivial();
        Cyclo lhs = specialize_l(L, k, triv);

        ExpansionBundle fk = specialize_bundle(b, k);
        AnticycloSpecialization xi = anticyclotomic_specialize(th, lambda, C, k, triv);
        Cyclo lval = l_one_variable(R, C, fk, xi, phi, k);
        Cyclo theta_c = critical_value(th, C, R.make(b.ctx.c), k, triv);
        if (!theta_c.is_scalar())
            throw error("critical value at the trivial character must be scalar");
        Cyclo rhs = lval.scaled(theta_c.scalar_part().inverse());

        InterpRow row;
        row.k = k;
        row.precision = std::min(lhs.prec(), rhs.prec());
        row.pass = lhs.eq_at_precision(rhs);
        auto render = [&](const Cyclo& v) {
            Cyclo w = v.with_prec(row.precision);
            std::string s;
            for (size_t i = 0; i < w.coords().size(); ++i)
                s += (i ? "," : "") + std::to_string(w.coords()[i]);
            return s;
        };
        row.lhs = render(lhs);
        row.rhs = render(rhs);
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    return report;
}

StabilizationReport stabilization_check(const Zp& R, const CycloRing& C,
                                        const ExpansionBundle& f,
                                        const ExpansionBundle& fsharp,
                                        const AnticycloSpecialization& xi,
                                        const GammaCharacter& phi, uint32_t k) {
    StabilizationReport rep;
    if (f.classes.size() != fsharp.classes.size())
        throw config_error("stabilization bundles have different class counts");
    for (size_t i = 0; i < f.classes.size(); ++i) {
        ScalarSeries d1 = deplete(*f.classes[i].scalar_coeffs);
        ScalarSeries d2 = deplete(*fsharp.classes[i].scalar_coeffs);
        if (!d1.eq_at_precision(d2)) {
            rep.depletions_equal = false;
            rep.mismatched_classes.push_back(i);
        }
    }
    Cyclo l1 = l_one_variable(R, C, f, xi, phi, k);
    Cyclo l2 = l_one_variable(R, C, fsharp, xi, phi, k);
    rep.l_equal = l1.eq_at_precision(l2);
    rep.precision = std::min(l1.prec(), l2.prec());
    rep.pass = rep.depletions_equal && rep.l_equal;
    return rep;
}

} // namespace stlf
