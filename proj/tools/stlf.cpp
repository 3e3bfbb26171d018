#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stlf/bundle_io.hpp"
#include "stlf/synth.hpp"

using nlohmann::json;
using namespace stlf;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// paths may come from the environment when the flag is omitted
std::string need_path(const std::string& flag_value, const char* env, const char* what) {
    if (!flag_value.empty()) return flag_value;
    if (const char* e = std::getenv(env)) return e;
    throw usage_error(std::string(what) + " path missing (flag or " + env + ")");
}

std::vector<int64_t> parse_int_list(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

struct Session {
    RunConfig cfg;
    std::unique_ptr<Zp> R;
    std::unique_ptr<CycloRing> C0;       // scalar level for bundle data
    std::unique_ptr<CycloRing> C;        // working cyclotomic level

    explicit Session(const RunConfig& config, uint32_t cyclo_level = 1) : cfg(config) {
        cfg.validate();
        R = std::make_unique<Zp>(cfg.ctx.p, cfg.ctx.N);
        C0 = std::make_unique<CycloRing>(R.get(), 0);
        C = std::make_unique<CycloRing>(R.get(), cyclo_level);
    }
};

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // plain text: one line per top-level entry
    for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << ": " << it.value().dump() << "\n";
}

json report_header(const RunConfig& cfg) {
    json j;
    j["config"] = config_to_json(cfg);
    return j;
}

int run_classgroup(int64_t disc, const std::string& format) {
    ClassGroup G(disc);
    json forms = json::array();
    for (const QuadraticForm& f : G.forms()) forms.push_back({f.a, f.b, f.c});
    json table = json::array();
    for (size_t i = 0; i < G.order(); ++i) {
        json row = json::array();
        for (size_t jx = 0; jx < G.order(); ++jx) row.push_back(G.compose_indices(i, jx));
        table.push_back(row);
    }
    json out;
    out["discriminant"] = disc;
    out["class_number"] = G.order();
    out["forms"] = forms;
    out["composition_table"] = table;
    emit(out, format);
    return 0;
}

GammaCharacter phi_by_name(const Session& s, const std::string& name) {
    return synth_phi(*s.R, s.cfg, name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic anticyclotomic L-function toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    // classgroup --disc D
    auto* sc_class = app.add_subcommand("classgroup", "reduced forms and composition table");
    int64_t disc = -23;
    sc_class->add_option("--disc", disc)->required();

    // deplete --p P --coeffs 1,1,1,1
    auto* sc_dep = app.add_subcommand("deplete", "p-depletion of a coefficient list");
    uint64_t dp_p = 3;
    uint32_t dp_N = 8;
    std::string dp_coeffs;
    sc_dep->add_option("--p", dp_p)->required();
    sc_dep->add_option("--N", dp_N);
    sc_dep->add_option("--coeffs", dp_coeffs)->required();

    // substitute --p --N --coeffs --alpha-num --alpha-den
    auto* sc_sub = app.add_subcommand("substitute", "binomial substitution T -> (1+T)^a - 1");
    uint64_t sb_p = 5;
    uint32_t sb_N = 8;
    std::string sb_coeffs;
    int64_t sb_num = 1, sb_den = 1;
    sc_sub->add_option("--p", sb_p)->required();
    sc_sub->add_option("--N", sb_N);
    sc_sub->add_option("--coeffs", sb_coeffs)->required();
    sc_sub->add_option("--alpha-num", sb_num)->required();
    sc_sub->add_option("--alpha-den", sb_den)->required();

    // measure coset|integrate
    auto* sc_meas = app.add_subcommand("measure", "measure operations");
    sc_meas->require_subcommand(1);
    auto* sc_coset = sc_meas->add_subcommand("coset", "mu(a + p^m Z_p)");
    uint64_t ms_p = 5;
    uint32_t ms_N = 8;
    std::string ms_coeffs;
    uint64_t ms_a = 0;
    uint32_t ms_m = 1;
    sc_coset->add_option("--p", ms_p)->required();
    sc_coset->add_option("--N", ms_N);
    sc_coset->add_option("--coeffs", ms_coeffs)->required();
    sc_coset->add_option("--a", ms_a)->required();
    sc_coset->add_option("--m", ms_m)->required();
    auto* sc_int = sc_meas->add_subcommand("integrate", "moment of a measure");
    uint64_t mi_p = 5;
    uint32_t mi_N = 8;
    std::string mi_coeffs;
    uint32_t mi_r = 1;
    bool mi_units = false;
    sc_int->add_option("--p", mi_p)->required();
    sc_int->add_option("--N", mi_N);
    sc_int->add_option("--coeffs", mi_coeffs)->required();
    sc_int->add_option("--r", mi_r)->required();
    sc_int->add_flag("--units", mi_units, "restrict to Z_p^x first");

    // family validate|assemble|reconstruct
    auto* sc_fam = app.add_subcommand("family", "character family operations");
    sc_fam->require_subcommand(1);
    std::string fam_config, fam_input, fam_output;
    auto* sc_fval = sc_fam->add_subcommand("validate", "cross-level consistency");
    sc_fval->add_option("--config", fam_config);
    sc_fval->add_option("--input", fam_input)->required();
    auto* sc_fasm = sc_fam->add_subcommand("assemble", "reconstruct the two-variable series");
    sc_fasm->add_option("--config", fam_config);
    sc_fasm->add_option("--input", fam_input)->required();
    sc_fasm->add_option("--out", fam_output);
    auto* sc_frec = sc_fam->add_subcommand("reconstruct", "Fourier inversion at one coefficient");
    uint32_t frec_n = 0;
    sc_frec->add_option("--config", fam_config);
    sc_frec->add_option("--input", fam_input)->required();
    sc_frec->add_option("--coefficient", frec_n);

    // lfun one-var|big|specialize
    auto* sc_lfun = app.add_subcommand("lfun", "p-adic L-values");
    sc_lfun->require_subcommand(1);
    std::string lf_config, lf_bundle, lf_lambda, lf_phi = "trivial", lf_in;
    uint32_t lf_k = 2;
    auto* sc_lone = sc_lfun->add_subcommand("one-var", "one-variable L-value");
    sc_lone->add_option("--config", lf_config);
    sc_lone->add_option("--bundle", lf_bundle);
    sc_lone->add_option("--lambda", lf_lambda);
    sc_lone->add_option("--phi", lf_phi);
    sc_lone->add_option("--k", lf_k);
    auto* sc_lbig = sc_lfun->add_subcommand("big", "Lambda-valued L-function");
    sc_lbig->add_option("--config", lf_config);
    sc_lbig->add_option("--bundle", lf_bundle);
    sc_lbig->add_option("--lambda", lf_lambda);
    sc_lbig->add_option("--phi", lf_phi);
    auto* sc_lspec = sc_lfun->add_subcommand("specialize", "arithmetic specialization");
    sc_lspec->add_option("--config", lf_config);
    sc_lspec->add_option("--in", lf_in)->required();
    sc_lspec->add_option("--k", lf_k)->required();

    // interp-check
    auto* sc_interp = app.add_subcommand("interp-check", "interpolation identity check");
    std::string ic_config, ic_bundle, ic_lambda, ic_phi = "trivial", ic_weights;
    sc_interp->add_option("--config", ic_config);
    sc_interp->add_option("--bundle", ic_bundle);
    sc_interp->add_option("--lambda", ic_lambda);
    sc_interp->add_option("--phi", ic_phi);
    sc_interp->add_option("--weights", ic_weights, "comma list, default k0,k0+2(p-1)");

    // stabilization-check
    auto* sc_stab = app.add_subcommand("stabilization-check", "depletion/L-value equality");
    std::string st_config, st_bundle, st_sharp, st_phi = "trivial";
    uint32_t st_k = 2;
    sc_stab->add_option("--config", st_config);
    sc_stab->add_option("--bundle", st_bundle);
    sc_stab->add_option("--bundle-sharp", st_sharp)->required();
    sc_stab->add_option("--phi", st_phi);
    sc_stab->add_option("--k", st_k);

    // synth bundle|lambda
    auto* sc_synth = app.add_subcommand("synth", "seeded synthetic data");
    sc_synth->require_subcommand(1);
    std::string sy_config, sy_out, sy_mode = "one_var";
    bool sy_random_units = false, sy_nontrivial = false;
    auto* sc_sybundle = sc_synth->add_subcommand("bundle", "expansion bundle");
    sc_sybundle->add_option("--config", sy_config);
    sc_sybundle->add_option("--out", sy_out);
    sc_sybundle->add_option("--mode", sy_mode)->check(CLI::IsMember({"one_var", "family"}));
    sc_sybundle->add_flag("--random-units", sy_random_units);
    auto* sc_sylambda = sc_synth->add_subcommand("lambda", "unit table");
    sc_sylambda->add_option("--config", sy_config);
    sc_sylambda->add_option("--out", sy_out);
    sc_sylambda->add_flag("--nontrivial", sy_nontrivial);

    // let --format live before or after the subcommand name
    for (CLI::App* sc : app.get_subcommands(nullptr)) {
        sc->fallthrough();
        for (CLI::App* sub : sc->get_subcommands(nullptr)) sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sc_class) return run_classgroup(disc, format);

        if (*sc_dep) {
            Zp R(dp_p, dp_N);
            std::vector<int64_t> cs = parse_int_list(dp_coeffs);
            std::vector<Padic> c;
            for (int64_t v : cs) c.push_back(R.make(v, dp_N));
            ScalarSeries out = deplete(ScalarSeries(std::move(c)));
            json jc = json::array();
            for (uint32_t n = 0; n < out.truncation(); ++n) jc.push_back(out[n].residue());
            emit(json{{"p", dp_p}, {"N", dp_N}, {"M", out.truncation()},
                      {"coefficients", jc}},
                 format);
            return 0;
        }

        if (*sc_sub) {
            Zp R(sb_p, sb_N);
            std::vector<int64_t> cs = parse_int_list(sb_coeffs);
            std::vector<Padic> c;
            for (int64_t v : cs) c.push_back(R.make(v, sb_N));
            Padic alpha = R.from_rational(sb_num, sb_den);
            ScalarSeries out = substitute_binomial(ScalarSeries(std::move(c)), alpha);
            json jc = json::array();
            for (uint32_t n = 0; n < out.truncation(); ++n)
                jc.push_back(padic_to_json(out[n], out[n].prec()));
            emit(json{{"p", sb_p}, {"N", sb_N}, {"M", out.truncation()},
                      {"coefficients", jc}},
                 format);
            return 0;
        }

        if (*sc_meas) {
            if (*sc_coset) {
                Zp R(ms_p, ms_N);
                std::vector<int64_t> cs = parse_int_list(ms_coeffs);
                std::vector<Padic> c;
                for (int64_t v : cs) c.push_back(R.make(v, ms_N));
                ScalarMeasure mu{ScalarSeries(std::move(c))};
                Padic val = mu.coset_value(ms_a, ms_m);
                emit(json{{"value", padic_to_json(val, val.prec())}}, format);
                return 0;
            }
            Zp R(mi_p, mi_N);
            std::vector<int64_t> cs = parse_int_list(mi_coeffs);
            std::vector<Padic> c;
            for (int64_t v : cs) c.push_back(R.make(v, mi_N));
            ScalarMeasure mu{ScalarSeries(std::move(c))};
            if (mi_units) mu = mu.restricted_to_units();
            std::vector<Padic> g;
            for (uint32_t l = 0; l < mu.truncation(); ++l)
                g.push_back(R.make(int64_t(l)).pow(int64_t(mi_r)).with_prec(mi_N));
            Padic val = integrate_points(mu, g);
            emit(json{{"value", padic_to_json(val, val.prec())}}, format);
            return 0;
        }

        if (*sc_fam) {
            RunConfig cfg = load_config(need_path(fam_config, "STLF_CONFIG", "config"));
            Session s(cfg, cfg.ctx.m_max >= 1 ? cfg.ctx.m_max - 1 : 0);
            CharacterFamily fam = load_family(*s.C, fam_input);
            if (*sc_fval) {
                FamilyValidation v = validate_family(fam);
                json out = report_header(cfg);
                out["ok"] = v.ok;
                if (!v.ok) {
                    out["level"] = v.level;
                    out["exponent"] = v.exponent;
                    out["coefficient"] = v.coefficient;
                }
                emit(out, format);
                return v.ok ? 0 : 1;
            }
            if (*sc_frec) {
                const auto& top = fam.levels[fam.m_max - 1];
                std::vector<Cyclo> values;
                for (const CycloSeries& se : top) values.push_back(se[frec_n]);
                StarCheck scheck = check_star_all(*s.C, values, fam.m_max);
                json out = report_header(cfg);
                out["star_condition"] = scheck.ok;
                if (!scheck.ok) {
                    out["failing_alpha_exponent"] = scheck.failing_alpha_exponent;
                    out["observed_valuation"] = scheck.observed_valuation;
                    emit(out, format);
                    return 1;
                }
                IwasawaElement A =
                    reconstruct_from_characters(*s.C, values, fam.m_max, cfg.ctx.s_trunc);
                out["coefficient"] = iwasawa_to_json(A, cfg.ctx.N);
                emit(out, format);
                return 0;
            }
            TwoVariableSeries F = assemble_family_series(*s.C, fam, cfg.ctx.s_trunc);
            json arr = json::array();
            for (uint32_t n = 0; n < F.truncation(); ++n)
                arr.push_back(iwasawa_to_json(F[n], cfg.ctx.N));
            json out = report_header(cfg);
            out["series"] = arr;
            if (!fam_output.empty()) write_json(fam_output, out);
            else emit(out, format);
            return 0;
        }

        if (*sc_lfun) {
            RunConfig cfg = load_config(need_path(lf_config, "STLF_CONFIG", "config"));
            uint32_t level = std::max<uint32_t>(2, cfg.ctx.m_max) - 1;
            Session s(cfg, level);
            if (*sc_lspec) {
                json j = read_json(lf_in);
                uint32_t prec = std::min(cfg.ctx.N, j.value("precision", cfg.ctx.N));
                IwasawaElement L =
                    iwasawa_from_json(*s.C0, j.at("value"), prec, cfg.ctx.s_trunc,
                                      j.value("exact_s_degree", true));
                Cyclo v = specialize_l(L, lf_k, FiniteCharacter::trivial());
                emit(json{{"value", cyclo_to_json(v, v.prec())}, {"precision", v.prec()}},
                     format);
                return 0;
            }
            ExpansionBundle b = load_bundle(*s.R, *s.C0, lf_bundle.empty() ? need_path(cfg.bundle_path, "STLF_BUNDLE", "bundle") : lf_bundle);
            std::string lam_path = lf_lambda.empty() ? cfg.lambda_path : lf_lambda;
            HeckeUnitData lambda = lam_path.empty() ? synth_lambda(*s.R, cfg, true)
                                                    : load_lambda(*s.R, lam_path);
            GammaCharacter phi = phi_by_name(s, lf_phi);
            CriticalCharacter th(s.R.get(), cfg.ctx.k0);
            if (*sc_lone) {
                AnticycloSpecialization xi = anticyclotomic_specialize(
                    th, lambda, *s.C, lf_k, FiniteCharacter::trivial());
                Cyclo v = l_one_variable(*s.R, *s.C, b, xi, phi, lf_k);
                emit(json{{"value", cyclo_to_json(v, v.prec())},
                          {"precision", v.prec()},
                          {"restriction_noop", restriction_noop_diagnostic(*s.R, *s.C, b)}},
                     format);
                return 0;
            }
            IwasawaElement L = l_big(*s.R, *s.C, b, th, lambda, phi);
            json out = report_header(cfg);
            out["precision"] = std::min(cfg.ctx.N, L.min_prec());
            out["exact_s_degree"] = L.exact_degree();
            bool scalar = true;
            for (uint32_t jx = 0; jx < L.s_trunc() && scalar; ++jx)
                scalar = L[jx].is_scalar();
            if (scalar) out["value"] = iwasawa_to_json(L, cfg.ctx.N);
            else {
                json arr = json::array();
                for (uint32_t jx = 0; jx < L.s_trunc(); ++jx)
                    arr.push_back(cyclo_to_json(L[jx], cfg.ctx.N));
                out["value_cyclotomic"] = arr;
            }
            emit(out, format);
            return 0;
        }

        if (*sc_interp) {
            auto t0 = std::chrono::steady_clock::now();
            RunConfig cfg = load_config(need_path(ic_config, "STLF_CONFIG", "config"));
            uint32_t level = std::max<uint32_t>(2, cfg.ctx.m_max) - 1;
            Session s(cfg, level);
            ExpansionBundle b = load_bundle(*s.R, *s.C0, ic_bundle.empty() ? need_path(cfg.bundle_path, "STLF_BUNDLE", "bundle") : ic_bundle);
            std::string lam_path = ic_lambda.empty() ? cfg.lambda_path : ic_lambda;
            HeckeUnitData lambda = lam_path.empty() ? synth_lambda(*s.R, cfg, true)
                                                    : load_lambda(*s.R, lam_path);
            GammaCharacter phi = phi_by_name(s, ic_phi);
            std::vector<uint32_t> ks;
            if (ic_weights.empty()) {
                ks = {cfg.ctx.k0, cfg.ctx.k0 + 2 * uint32_t(cfg.ctx.p - 1)};
            } else {
                for (int64_t k : parse_int_list(ic_weights)) ks.push_back(uint32_t(k));
            }
            InterpReport rep = interp_check(*s.R, *s.C, b, lambda, phi, ks);
            auto t1 = std::chrono::steady_clock::now();
            json rows = json::array();
            for (const InterpRow& r : rep.rows)
                rows.push_back(json{{"k", r.k},
                                    {"pass", r.pass},
                                    {"precision", r.precision},
                                    {"lhs", r.lhs},
                                    {"rhs", r.rhs}});
            json out = report_header(cfg);
            out["phi"] = ic_phi;
            out["pass"] = rep.pass;
            out["checks"] = rows;
            out["restriction_noop"] = restriction_noop_diagnostic(*s.R, *s.C, b);
            out["elapsed_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            emit(out, format);
            return rep.pass ? 0 : 1;
        }

        if (*sc_stab) {
            RunConfig cfg = load_config(need_path(st_config, "STLF_CONFIG", "config"));
            uint32_t level = std::max<uint32_t>(2, cfg.ctx.m_max) - 1;
            Session s(cfg, level);
            ExpansionBundle f = load_bundle(*s.R, *s.C0, st_bundle.empty() ? need_path(cfg.bundle_path, "STLF_BUNDLE", "bundle") : st_bundle);
            ExpansionBundle fs = load_bundle(*s.R, *s.C0, st_sharp);
            HeckeUnitData lambda = synth_lambda(*s.R, cfg, true);
            GammaCharacter phi = phi_by_name(s, st_phi);
            CriticalCharacter th(s.R.get(), cfg.ctx.k0);
            AnticycloSpecialization xi = anticyclotomic_specialize(
                th, lambda, *s.C, st_k, FiniteCharacter::trivial());
            StabilizationReport rep = stabilization_check(*s.R, *s.C, f, fs, xi, phi, st_k);
            json out = report_header(cfg);
            out["depletions_equal"] = rep.depletions_equal;
            out["mismatched_classes"] = rep.mismatched_classes;
            out["l_equal"] = rep.l_equal;
            out["precision"] = rep.precision;
            out["pass"] = rep.pass;
            emit(out, format);
            return rep.pass ? 0 : 1;
        }

        if (*sc_synth) {
            RunConfig cfg = load_config(need_path(sy_config, "STLF_CONFIG", "config"));
            Session s(cfg, 0);
            if (*sc_sybundle) {
                BundleMode mode =
                    sy_mode == "family" ? BundleMode::Family : BundleMode::OneVariable;
                ExpansionBundle b = synth_bundle(*s.R, *s.C0, cfg, mode, sy_random_units);
                write_json(sy_out.empty() ? need_path(cfg.out_path, "STLF_OUT", "output") : sy_out, bundle_to_json(b));
                return 0;
            }
            HeckeUnitData lambda = synth_lambda(*s.R, cfg, !sy_nontrivial);
            write_json(sy_out.empty() ? need_path(cfg.out_path, "STLF_OUT", "output") : sy_out, lambda_to_json(lambda, cfg.ctx.N));
            return 0;
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const stlf::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
