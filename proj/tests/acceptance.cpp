// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// All comparisons are exact at the tracked p-adic precision (equalities of
// residues, never tolerances).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "stlf/lfunction.hpp"
#include "stlf/rng.hpp"
#include "stlf/synth.hpp"

using namespace stlf;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", criterion, name.c_str(),
                pass ? "PASS" : "FAIL", detail.empty() ? "" : ": ", detail.c_str());
    if (!pass) ++g_failures;
}

RunConfig config_for(uint64_t p, int64_t DK, uint64_t seed) {
    RunConfig cfg;
    cfg.ctx.p = p;
    cfg.ctx.DK = DK;
    cfg.ctx.c = 1;
    cfg.ctx.N = 8;
    cfg.ctx.M = 32;
    cfg.ctx.k0 = 2;
    cfg.ctx.m_max = 2;
    cfg.ctx.s_trunc = 10;
    cfg.seed = seed;
    return cfg;
}

// ---- criterion 1: interpolation at desk scale ------------------------------

bool interp_for_config(uint64_t p, int64_t DK, double* elapsed, std::string* why) {
    Timer t;
    RunConfig cfg = config_for(p, DK, 20260809 + p);
    Zp R(p, cfg.ctx.N);
    CycloRing C0(&R, 0);
    CycloRing C(&R, 1);

    std::vector<HeckeUnitData> tables;
    tables.push_back(synth_lambda(R, cfg, true));            // t = 1
    RunConfig alt = cfg;
    alt.seed = cfg.seed + 1;
    tables.push_back(synth_lambda(R, alt, false));           // two nontrivial tables
    alt.seed = cfg.seed + 2;
    tables.push_back(synth_lambda(R, alt, false));

    std::vector<std::string> phis = {"trivial", "wild2", "power1"};
    if (p == 13) phis.push_back("class");                    // h = 3 divides p-1

    std::vector<uint32_t> ks = {2, uint32_t(2 + 2 * (p - 1))};
    for (uint64_t bundle_seed : {cfg.seed, cfg.seed + 17}) {
        RunConfig bcfg = cfg;
        bcfg.seed = bundle_seed;
        ExpansionBundle bundle = synth_bundle(R, C0, bcfg, BundleMode::Family, true);
        for (const HeckeUnitData& lambda : tables) {
            for (const std::string& phi_name : phis) {
                GammaCharacter phi = synth_phi(R, cfg, phi_name);
                InterpReport rep = interp_check(R, C, bundle, lambda, phi, ks);
                if (!rep.pass) {
                    *why = "identity fails for phi=" + phi_name;
                    return false;
                }
                for (const InterpRow& row : rep.rows) {
                    if (row.precision < cfg.ctx.N - 3) {
                        *why = "precision " + std::to_string(row.precision) + " < N-3 at k=" +
                               std::to_string(row.k) + ", phi=" + phi_name;
                        return false;
                    }
                }
            }
        }
    }
    *elapsed = t.seconds();
    if (*elapsed > 10.0) {
        *why = "runtime over 10 s";
        return false;
    }
    return true;
}

void criterion1() {
    double e5 = 0, e13 = 0;
    std::string why;
    bool ok = interp_for_config(5, 11, &e5, &why) && interp_for_config(13, 23, &e13, &why);
    char buf[128];
    std::snprintf(buf, sizeof buf, "p=5/D_K=11 %.2fs, p=13/D_K=23 %.2fs", e5, e13);
    report(1, "interpolation theorem", ok, ok ? buf : why);
}

// ---- criterion 2: Ohta reconstruction round trip ---------------------------

void criterion2() {
    Timer t;
    Zp R(3, 8);
    CycloRing C(&R, 2);
    Rng rng(2);
    const uint32_t m = 3;
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::vector<Cyclo> basis;
        for (int a = 0; a < 9; ++a)
            basis.push_back(C.embed(Padic(&R, rng.below(R.pow_p(8)), 8)));
        IwasawaElement a0 = IwasawaElement::from_group_basis(C, basis, m, 10);
        std::vector<Cyclo> values;
        for (uint64_t e = 0; e < 9; ++e)
            values.push_back(a0.at_character(FiniteCharacter{m, e}));
        if (!check_star_all(C, values, m).ok) {
            ok = false;
            why = "star condition failed on trial " + std::to_string(trial);
            break;
        }
        IwasawaElement back = reconstruct_from_characters(C, values, m, 10);
        if (back.min_prec() != 6 ||
            !back.reduce_mod_omega(m).eq_at_precision(a0.reduce_mod_omega(m).with_prec(6))) {
            ok = false;
            why = "round trip differs mod (p^6, omega_3) on trial " + std::to_string(trial);
        }
    }
    double el = t.seconds();
    if (el > 5.0) {
        ok = false;
        why = "runtime over 5 s";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "50 elements, %.2fs", el);
    report(2, "Ohta reconstruction round trip", ok, ok ? buf : why);
}

// ---- criterion 3: Amice/measure suite --------------------------------------

void criterion3() {
    bool ok = true;
    std::string why;
    for (uint64_t p : {3ull, 5ull}) {
        Zp R(p, 8);
        Rng rng(p * 101);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            ScalarSeries F = [&] {
                std::vector<Padic> c;
                for (uint32_t n = 0; n < 32; ++n)
                    c.push_back(Padic(&R, rng.below(R.pow_p(8)), 8));
                return ScalarSeries(std::move(c));
            }();
            ScalarMeasure mu{F};
            // round trip
            if (!ScalarMeasure::from_masses(F[0], mu.point_masses()).series().eq_at_precision(F)) {
                ok = false; why = "mass/coefficient round trip"; break;
            }
            // total mass
            Padic total = R.zero(8);
            for (uint64_t a = 0; a < p; ++a) total += mu.coset_value(a, 1);
            if (!total.eq_at_precision(F[0])) { ok = false; why = "total mass"; break; }
            // additivity, levels 1..3
            for (uint32_t m = 1; m < 3 && ok; ++m) {
                uint64_t pm = 1;
                for (uint32_t i = 0; i < m; ++i) pm *= p;
                for (uint64_t a = 0; a < pm && ok; ++a) {
                    Padic parent = mu.coset_value(a, m);
                    Padic sum = R.zero(8);
                    for (uint64_t b = 0; b < p; ++b) sum += mu.coset_value(a + b * pm, m + 1);
                    if (!parent.eq_at_precision(sum)) { ok = false; why = "coset additivity"; }
                }
            }
            if (!ok) break;
            // restriction idempotence
            ScalarMeasure r1 = mu.restricted_to_units();
            if (!r1.restricted_to_units().series().eq_at_precision(r1.series()) ||
                !r1.supported_on_units()) {
                ok = false; why = "restriction idempotence"; break;
            }
            // group-like moments: integer unit point mass, r <= 4
            int64_t at = 1 + int64_t(rng.below(31));
            if (at % int64_t(p) == 0) ++at;
            ScalarMeasure d{binomial_power(R.make(at), 32)};
            for (uint32_t r = 0; r <= 4 && ok; ++r) {
                std::vector<Padic> g;
                for (uint32_t l = 0; l < 32; ++l)
                    g.push_back(R.make(int64_t(l), 8).pow(int64_t(r)));
                Padic want = R.make(at, 8).pow(int64_t(r));
                if (!integrate_points(d.restricted_to_units(), g).eq_at_precision(want))
                    { ok = false; why = "group-like moment"; }
            }
        }
        if (!ok) {
            why += " at p=" + std::to_string(p);
            break;
        }
    }
    report(3, "Amice/measure suite", ok, ok ? "100 seeded series at p=3,5" : why);
}

// ---- criterion 4: depletion/stabilization ----------------------------------

void criterion4() {
    bool ok = true;
    std::string why;
    {
        Zp R(5, 8);
        Rng rng(404);
        for (int trial = 0; trial < 200 && ok; ++trial) {
            auto rand_series = [&] {
                std::vector<Padic> c;
                for (uint32_t n = 0; n < 32; ++n)
                    c.push_back(Padic(&R, rng.below(R.pow_p(8)), 8));
                return ScalarSeries(std::move(c));
            };
            ScalarSeries f = rand_series(), g = rand_series();
            if (!deplete(deplete(f)).eq_at_precision(deplete(f)) ||
                !deplete(f + g).eq_at_precision(deplete(f) + deplete(g))) {
                ok = false;
                why = "depletion idempotence/linearity";
            }
        }
    }
    if (ok) {
        Zp R(13, 8);
        CycloRing C0(&R, 0), C(&R, 1);
        RunConfig cfg = config_for(13, 23, 44);
        ExpansionBundle f = synth_bundle(R, C0, cfg, BundleMode::OneVariable, true);
        ExpansionBundle fsharp = f;
        Rng rng(45);
        for (auto& cls : fsharp.classes) {
            std::vector<Padic> extra(cfg.ctx.M, R.zero(8));
            for (uint32_t n = 0; n < cfg.ctx.M; n += 13)
                extra[n] = Padic(&R, rng.below(R.pow_p(8)), 8);
            cls.scalar_coeffs = *cls.scalar_coeffs + ScalarSeries(std::move(extra));
        }
        CriticalCharacter th(&R, 2);
        HeckeUnitData lambda = synth_lambda(R, cfg, false);
        GammaCharacter phi = synth_phi(R, cfg, "class");
        for (uint32_t k : {2u, 26u}) {
            AnticycloSpecialization xi =
                anticyclotomic_specialize(th, lambda, C, k, FiniteCharacter::trivial());
            StabilizationReport rep = stabilization_check(R, C, f, fsharp, xi, phi, k);
            if (!rep.pass) {
                ok = false;
                why = "stabilization at k=" + std::to_string(k);
            }
        }
    }
    report(4, "depletion/stabilization", ok,
           ok ? "200 seeded depletions; L-values agree on p|n-modified bundles" : why);
}

// ---- criterion 5: substitution group law ------------------------------------

void criterion5() {
    bool ok = true;
    std::string why;
    for (uint64_t p : {3ull, 5ull, 13ull}) {
        Zp R(p, 8);
        Rng rng(p * 7 + 1);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            // full store precision so every kernel column keeps >= 8 digits
            Padic a = Padic(&R, rng.below(R.modulus()), R.store_prec());
            Padic b = Padic(&R, rng.below(R.modulus()), R.store_prec());
            std::vector<Padic> c;
            for (uint32_t n = 0; n < 32; ++n)
                c.push_back(Padic(&R, rng.below(R.pow_p(8)), 8));
            ScalarSeries f(std::move(c));
            ScalarSeries two = substitute_binomial(substitute_binomial(f, a), b);
            ScalarSeries one = substitute_binomial(f, a * b);
            if (two.min_prec() < 8 || one.min_prec() < 8) {
                ok = false;
                why = "lost digits below p^8 at p=" + std::to_string(p);
                break;
            }
            if (!two.eq_at_precision(one)) {
                ok = false;
                why = "group law fails at p=" + std::to_string(p);
                break;
            }
            ScalarSeries prod = binomial_power(a, 32) * binomial_power(b, 32);
            if (!binomial_power(a + b, 32).eq_at_precision(prod)) {
                ok = false;
                why = "binomial additivity fails at p=" + std::to_string(p);
                break;
            }
        }
        if (!ok) break;
    }
    report(5, "substitution group law", ok, ok ? "100 seeded (a,b) per prime, mod (p^8, T^32)" : why);
}

// ---- criterion 6: class-group laws ------------------------------------------

bool is_fundamental(int64_t D) {     // D = |disc| of the imaginary quadratic field
    int64_t d = -D;
    int64_t r = ((d % 4) + 4) % 4;
    if (r == 1) {
        // squarefree check
        for (int64_t q = 2; q * q <= D; ++q)
            if (D % (q * q) == 0) return false;
        return true;
    }
    if (r == 0) {
        int64_t m = d / 4;
        int64_t mr = ((m % 4) + 4) % 4;
        if (mr != 2 && mr != 3) return false;
        for (int64_t q = 2; q * q <= -m; ++q)
            if ((-m) % (q * q) == 0) return false;
        return true;
    }
    return false;
}

void criterion6() {
    bool ok = true;
    std::string why;
    int count = 0;
    for (int64_t DK = 3; DK <= 400 && ok; ++DK) {
        if (!is_fundamental(DK)) continue;
        for (int64_t c = 1; c * c * DK <= 400 && ok; ++c) {
            int64_t disc = -c * c * DK;
            ClassGroup G(disc);
            ++count;
            size_t h = G.order();
            for (size_t i = 0; i < h && ok; ++i) {
                if (G.compose_indices(0, i) != i ||
                    G.compose_indices(i, G.inverse_index(i)) != 0) {
                    ok = false;
                    why = "identity/inverse at disc " + std::to_string(disc);
                }
                for (size_t j = 0; j < h && ok; ++j) {
                    if (G.compose_indices(i, j) != G.compose_indices(j, i)) {
                        ok = false;
                        why = "commutativity at disc " + std::to_string(disc);
                    }
                    for (size_t k = 0; k < h && ok; ++k)
                        if (G.compose_indices(G.compose_indices(i, j), k) !=
                            G.compose_indices(i, G.compose_indices(j, k))) {
                            ok = false;
                            why = "associativity at disc " + std::to_string(disc);
                        }
                }
            }
        }
    }
    if (ok && (reduced_forms(-4).size() != 1 || reduced_forms(-3).size() != 1 ||
               reduced_forms(-23).size() != 3)) {
        ok = false;
        why = "reference class numbers h(-4), h(-3), h(-23)";
    }
    report(6, "class-group laws", ok,
           ok ? std::to_string(count) + " discriminants verified exhaustively" : why);
}

// ---- criterion 7: character two-path agreement ------------------------------

void criterion7() {
    bool ok = true;
    std::string why;
    for (uint64_t p : {5ull, 13ull}) {
        Zp R(p, 8);
        CycloRing C(&R, 2);
        CriticalCharacter th(&R, 2);
        Rng rng(p * 13);
        std::vector<std::pair<uint32_t, FiniteCharacter>> kappas = {
            {2, FiniteCharacter::trivial()},
            {uint32_t(2 + 2 * (p - 1)), FiniteCharacter::trivial()},
            {2, FiniteCharacter{2, 1}},
            {uint32_t(2 + 2 * (p - 1)), FiniteCharacter{2, 2}},
            {2, FiniteCharacter{3, 3}},
            {uint32_t(2 + 2 * (p - 1)), FiniteCharacter{3, 1}},
        };
        for (const auto& [k, eps] : kappas) {
            int done = 0;
            while (done < 100 && ok) {
                Padic z = Padic(&R, rng.below(R.pow_p(8)), 8);
                if (!z.is_unit()) continue;
                ++done;
                Cyclo via = critical_family_at(th, z).specialize(C, k, eps);
                Cyclo closed = critical_value(th, C, z, k, eps);
                if (!via.eq_at_precision(closed)) {
                    ok = false;
                    why = "critical two-path at p=" + std::to_string(p);
                    break;
                }
                HeckeUnitData d{&R, 2, {z}};
                Cyclo via2 = anticyclotomic_family(th, d)[0].specialize(C, k, eps);
                Cyclo closed2 = anticyclotomic_specialize(th, d, C, k, eps).class_values[0];
                if (!via2.eq_at_precision(closed2)) {
                    ok = false;
                    why = "xi two-path at p=" + std::to_string(p);
                    break;
                }
            }
            if (!ok) break;
        }
        if (!ok) break;
        // xi on the constant table t = 1 is identically 1
        HeckeUnitData ones{&R, 2, {R.one(), R.one(), R.one()}};
        for (const MonomialIwasawa& v : anticyclotomic_family(th, ones))
            if (!v.scalar.eq_at_precision(R.one()) || !v.exponent.is_zero()) {
                ok = false;
                why = "xi not trivial on t=1";
            }
        // (eps^(1/2))^2 = eps for all characters of level <= 3
        for (uint32_t m = 1; m <= 3 && ok; ++m) {
            for (const FiniteCharacter& eps : characters_of_level(p, m)) {
                FiniteCharacter h = eps.half(p);
                Cyclo sq = h.on_generator_power(C, 1) * h.on_generator_power(C, 1);
                if (!sq.eq_at_precision(eps.on_generator_power(C, 1))) {
                    ok = false;
                    why = "(eps^(1/2))^2 != eps";
                    break;
                }
            }
        }
        if (!ok) break;
    }
    report(7, "character two-path agreement", ok,
           ok ? "100 seeded inputs per (k,eps) pair at p=5,13" : why);
}

// ---- criterion 8: proof-identity check --------------------------------------

void criterion8() {
    Zp R(13, 8);
    CycloRing C(&R, 1);
    CriticalCharacter th(&R, 2);
    bool ok = true;
    std::string why;
    const int64_t c = 1;
    for (const QuadraticForm& f : reduced_forms(-23)) {
        QuadraticForm rep = coprime_representative(f, 13 * 23);
        for (uint32_t k : {2u, 26u}) {
            Cyclo got =
                norm_twist_inverse(th, rep.a).specialize(C, k, FiniteCharacter::trivial());
            // N(a)^(1-k/2) c^(1-k/2) with N(a) = rep.a / c
            Padic want = R.from_rational(c, rep.a).pow(int64_t(k / 2 - 1)) *
                         R.from_rational(1, c).pow(int64_t(k / 2 - 1));
            if (!got.eq_at_precision(C.embed(want))) {
                ok = false;
                why = "class with index " + std::to_string(rep.a) + ", k=" + std::to_string(k);
            }
        }
    }
    report(8, "proof-identity check", ok, ok ? "all classes of disc -23, k in {2,26}" : why);
}

} // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s (%d criterion failure%s, %.2fs total)\n",
                g_failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED", g_failures,
                g_failures == 1 ? "" : "s", total.seconds());
    return g_failures == 0 ? 0 : 1;
}
