#include "stlf/bundle_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace stlf {

using nlohmann::json;

namespace {
constexpr int kSchemaVersion = 1;

json context_to_json(const BundleContext& ctx) {
    return json{{"p", ctx.p},     {"D_K", ctx.DK},       {"c", ctx.c},
                {"N", ctx.N},     {"M", ctx.M},          {"k0", ctx.k0},
                {"m_max", ctx.m_max}, {"s_trunc", ctx.s_trunc}};
}

BundleContext context_from_json(const json& j) {
    BundleContext ctx;
    ctx.p = j.at("p").get<uint64_t>();
    ctx.DK = j.at("D_K").get<int64_t>();
    ctx.c = j.at("c").get<int64_t>();
    ctx.N = j.at("N").get<uint32_t>();
    ctx.M = j.at("M").get<uint32_t>();
    ctx.k0 = j.at("k0").get<uint32_t>();
    ctx.m_max = j.value("m_max", 2u);
    ctx.s_trunc = j.value("s_trunc", ctx.N + 2);
    return ctx;
}

json form_to_json(const QuadraticForm& f) { return json::array({f.a, f.b, f.c}); }

QuadraticForm form_from_json(const json& j) {
    return {j.at(0).get<int64_t>(), j.at(1).get<int64_t>(), j.at(2).get<int64_t>()};
}
} // namespace

json config_to_json(const RunConfig& cfg) {
    json j = context_to_json(cfg.ctx);
    j["seed"] = cfg.seed;
    if (!cfg.bundle_path.empty()) j["bundle"] = cfg.bundle_path;
    if (!cfg.lambda_path.empty()) j["lambda"] = cfg.lambda_path;
    if (!cfg.out_path.empty()) j["out"] = cfg.out_path;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    cfg.ctx = context_from_json(j);
    cfg.seed = j.value("seed", uint64_t(1));
    cfg.bundle_path = j.value("bundle", std::string());
    cfg.lambda_path = j.value("lambda", std::string());
    cfg.out_path = j.value("out", std::string());
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) { return config_from_json(read_json(path)); }

json padic_to_json(const Padic& x, uint32_t cap) {
    Padic y = x.with_prec(cap);
    return json::array({y.residue(), y.valuation()});
}

Padic padic_from_json(const Zp& R, const json& j, uint32_t prec) {
    uint64_t residue = j.at(0).get<uint64_t>();
    if (residue >= R.pow_p(prec))
        throw config_error("serialized residue exceeds p^N");
    return Padic(&R, residue, prec);
}

json series_to_json(const ScalarSeries& f, uint32_t cap) {
    json arr = json::array();
    for (uint32_t n = 0; n < f.truncation(); ++n) arr.push_back(padic_to_json(f[n], cap));
    return arr;
}

ScalarSeries series_from_json(const Zp& R, const json& j, uint32_t prec) {
    std::vector<Padic> c;
    c.reserve(j.size());
    for (const auto& e : j) c.push_back(padic_from_json(R, e, prec));
    return ScalarSeries(std::move(c));
}

json iwasawa_to_json(const IwasawaElement& x, uint32_t cap) {
    // S-power coefficients; bundle data is scalar (level-0) so each
    // coefficient serializes as one [residue, valuation] pair
    json arr = json::array();
    for (uint32_t jx = 0; jx < x.s_trunc(); ++jx) {
        const Cyclo& co = x[jx];
        if (!co.is_scalar())
            throw config_error("only scalar-coefficient Iwasawa elements serialize");
        arr.push_back(padic_to_json(co.scalar_part(), cap));
    }
    return arr;
}

IwasawaElement iwasawa_from_json(const CycloRing& C, const json& j, uint32_t prec,
                                 uint32_t s_trunc, bool exact_degree) {
    std::vector<Cyclo> c;
    c.reserve(s_trunc);
    for (const auto& e : j) c.push_back(C.embed(padic_from_json(C.zp(), e, prec)));
    while (c.size() < s_trunc) c.push_back(C.zero(prec));
    if (c.size() > s_trunc)
        throw config_error("serialized S-degree exceeds s_trunc");
    return IwasawaElement(std::move(c), exact_degree);
}

json bundle_to_json(const ExpansionBundle& b) {
    json classes = json::array();
    for (const BundleClass& cls : b.classes) {
        json e;
        e["form"] = form_to_json(cls.form);
        e["rep"] = form_to_json(cls.rep);
        e["u_a"] = padic_to_json(cls.u_a, b.ctx.N);
        if (b.mode == BundleMode::OneVariable) {
            e["coefficients"] = series_to_json(*cls.scalar_coeffs, b.ctx.N);
        } else {
            json arr = json::array();
            for (uint32_t n = 0; n < cls.family_coeffs->truncation(); ++n)
                arr.push_back(iwasawa_to_json((*cls.family_coeffs)[n], b.ctx.N));
            e["coefficients"] = arr;
        }
        classes.push_back(e);
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["context"] = context_to_json(b.ctx);
    j["mode"] = b.mode == BundleMode::OneVariable ? "one_var" : "family";
    j["classes"] = classes;
    return j;
}

ExpansionBundle bundle_from_json(const Zp& R, const CycloRing& C0, const json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw config_error("unsupported bundle schema version");
    ExpansionBundle b;
    b.ctx = context_from_json(j.at("context"));
    b.mode = j.at("mode").get<std::string>() == "family" ? BundleMode::Family
                                                         : BundleMode::OneVariable;
    for (const auto& e : j.at("classes")) {
        BundleClass cls;
        cls.form = form_from_json(e.at("form"));
        cls.rep = form_from_json(e.at("rep"));
        cls.u_a = padic_from_json(R, e.at("u_a"), b.ctx.N);
        if (b.mode == BundleMode::OneVariable) {
            cls.scalar_coeffs = series_from_json(R, e.at("coefficients"), b.ctx.N);
        } else {
            std::vector<IwasawaElement> coeffs;
            for (const auto& ce : e.at("coefficients"))
                coeffs.push_back(iwasawa_from_json(C0, ce, b.ctx.N, b.ctx.s_trunc));
            cls.family_coeffs = TwoVariableSeries(std::move(coeffs));
        }
        b.classes.push_back(std::move(cls));
    }
    b.validate(R);
    return b;
}

ExpansionBundle load_bundle(const Zp& R, const CycloRing& C0, const std::string& path) {
    return bundle_from_json(R, C0, read_json(path));
}

json lambda_to_json(const HeckeUnitData& data, uint32_t cap) {
    json values = json::array();
    for (const Padic& t : data.values) values.push_back(padic_to_json(t, cap));
    return json{{"p", data.R->prime()}, {"N", cap}, {"k0", data.k0}, {"unit_values", values}};
}

HeckeUnitData lambda_from_json(const Zp& R, const json& j) {
    HeckeUnitData data;
    data.R = &R;
    data.k0 = j.at("k0").get<uint32_t>();
    uint32_t prec = j.at("N").get<uint32_t>();
    for (const auto& e : j.at("unit_values"))
        data.values.push_back(padic_from_json(R, e, prec));
    data.validate();
    return data;
}

HeckeUnitData load_lambda(const Zp& R, const std::string& path) {
    return lambda_from_json(R, read_json(path));
}

json cyclo_to_json(const Cyclo& x, uint32_t cap) {
    Cyclo y = x.with_prec(std::min(cap, x.prec()));
    json arr = json::array();
    for (uint64_t v : y.coords()) arr.push_back(v);
    return arr;
}

Cyclo cyclo_from_json(const CycloRing& C, const json& j, uint32_t prec) {
    if (j.size() != C.degree())
        throw config_error("cyclotomic coordinate count mismatch");
    std::vector<uint64_t> c;
    c.reserve(j.size());
    uint64_t m = C.zp().pow_p(prec);
    for (const auto& e : j) {
        uint64_t v = e.get<uint64_t>();
        if (v >= m) throw config_error("cyclotomic coordinate exceeds p^N");
        c.push_back(v);
    }
    return Cyclo(&C, std::move(c), prec);
}

json family_to_json(const CharacterFamily& fam, uint32_t cap) {
    json entries = json::array();
    for (uint32_t m = 1; m <= fam.m_max; ++m) {
        const auto& level = fam.levels[m - 1];
        for (uint64_t e = 0; e < level.size(); ++e) {
            const CycloSeries& s = level[size_t(e)];
            json coeffs = json::array();
            for (uint32_t n = 0; n < s.truncation(); ++n)
                coeffs.push_back(cyclo_to_json(s[n], cap));
            entries.push_back(json{{"level", m}, {"exponent", e}, {"coefficients", coeffs}});
        }
    }
    return json{{"p", fam.p}, {"N", fam.N}, {"M", fam.M}, {"m_max", fam.m_max},
                {"entries", entries}};
}

CharacterFamily family_from_json(const CycloRing& C, const json& j) {
    CharacterFamily fam;
    fam.p = j.at("p").get<uint64_t>();
    fam.N = j.at("N").get<uint32_t>();
    fam.M = j.at("M").get<uint32_t>();
    fam.m_max = j.at("m_max").get<uint32_t>();
    if (fam.p != C.prime())
        throw config_error("family prime differs from the ring");
    fam.levels.resize(fam.m_max);
    for (uint32_t m = 1; m <= fam.m_max; ++m) {
        uint64_t ord = 1;
        for (uint32_t i = 1; i < m; ++i) ord *= fam.p;
        fam.levels[m - 1].resize(size_t(ord), CycloSeries(C.zero(fam.N), fam.M));
    }
    std::vector<std::vector<bool>> seen(fam.m_max);
    for (uint32_t m = 1; m <= fam.m_max; ++m)
        seen[m - 1].resize(fam.levels[m - 1].size(), false);
    for (const auto& e : j.at("entries")) {
        uint32_t m = e.at("level").get<uint32_t>();
        uint64_t exp = e.at("exponent").get<uint64_t>();
        if (m < 1 || m > fam.m_max || exp >= fam.levels[m - 1].size())
            throw config_error("family entry out of range");
        std::vector<Cyclo> coeffs;
        for (const auto& ce : e.at("coefficients"))
            coeffs.push_back(cyclo_from_json(C, ce, fam.N));
        if (coeffs.size() != fam.M)
            throw config_error("family entry truncation mismatch");
        fam.levels[m - 1][size_t(exp)] = CycloSeries(std::move(coeffs));
        seen[m - 1][size_t(exp)] = true;
    }
    for (uint32_t m = 1; m <= fam.m_max; ++m)
        for (bool s : seen[m - 1])
            if (!s) throw config_error("family is missing a character entry");
    return fam;
}

CharacterFamily load_family(const CycloRing& C, const std::string& path) {
    return family_from_json(C, read_json(path));
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace stlf
