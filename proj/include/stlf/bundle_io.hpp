#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "stlf/lfunction.hpp"

namespace stlf {

/// Run-level configuration: the arithmetic context, the synthesis seed, and
/// optional default input/output paths (flags override these, and the
/// STLF_CONFIG environment variable can stand in for --config).
struct RunConfig {
    BundleContext ctx;
    uint64_t seed = 1;
    std::string bundle_path;
    std::string lambda_path;
    std::string out_path;

    void validate() const { ctx.validate(); }
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// p-adic scalars serialize as [residue, valuation] pairs, capped to the
// context precision N; series as arrays of those with a (p, N, M) header.
nlohmann::json padic_to_json(const Padic& x, uint32_t cap);
Padic padic_from_json(const Zp& R, const nlohmann::json& j, uint32_t prec);

nlohmann::json series_to_json(const ScalarSeries& f, uint32_t cap);
ScalarSeries series_from_json(const Zp& R, const nlohmann::json& j, uint32_t prec);

nlohmann::json iwasawa_to_json(const IwasawaElement& x, uint32_t cap);
IwasawaElement iwasawa_from_json(const CycloRing& C, const nlohmann::json& j,
                                 uint32_t prec, uint32_t s_trunc,
                                 bool exact_degree = true);

nlohmann::json bundle_to_json(const ExpansionBundle& b);
ExpansionBundle bundle_from_json(const Zp& R, const CycloRing& C0, const nlohmann::json& j);
ExpansionBundle load_bundle(const Zp& R, const CycloRing& C0, const std::string& path);

nlohmann::json lambda_to_json(const HeckeUnitData& data, uint32_t cap);
HeckeUnitData lambda_from_json(const Zp& R, const nlohmann::json& j);
HeckeUnitData load_lambda(const Zp& R, const std::string& path);

nlohmann::json cyclo_to_json(const Cyclo& x, uint32_t cap);
Cyclo cyclo_from_json(const CycloRing& C, const nlohmann::json& j, uint32_t prec);

nlohmann::json family_to_json(const CharacterFamily& fam, uint32_t cap);
CharacterFamily family_from_json(const CycloRing& C, const nlohmann::json& j);
CharacterFamily load_family(const CycloRing& C, const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

} // namespace stlf
