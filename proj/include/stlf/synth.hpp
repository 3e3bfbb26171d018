#pragma once

#include "stlf/bundle_io.hpp"
#include "stlf/rng.hpp"

namespace stlf {

/// Seeded synthetic data.  Everything is a pure function of (config, seed),
/// so emitted files are byte-identical across runs.

Padic random_padic(const Zp& R, Rng& rng, uint32_t prec);
Padic random_unit(const Zp& R, Rng& rng, uint32_t prec);
/// Units and non-units mixed: valuation 0 with probability ~3/4, else small.
Padic random_mixed(const Zp& R, Rng& rng, uint32_t prec);

ScalarSeries random_series(const Zp& R, Rng& rng, uint32_t M, uint32_t prec);
IwasawaElement random_iwasawa(const CycloRing& C, Rng& rng, uint32_t s_trunc,
                              uint32_t max_degree, uint32_t prec);

/// Deterministic bundle for the config: one entry per reduced form of
/// -c^2 D_K, coprime representatives, u_a = 1 unless random_units.
ExpansionBundle synth_bundle(const Zp& R, const CycloRing& C0, const RunConfig& cfg,
                             BundleMode mode, bool random_units = false);

HeckeUnitData synth_lambda(const Zp& R, const RunConfig& cfg, bool trivial);

/// Named test characters of Gamma_infinity ("trivial", "class", "wild2",
/// "power1").  "class" needs a cyclic class group of order dividing p-1;
/// throws config_error otherwise.
GammaCharacter synth_phi(const Zp& R, const RunConfig& cfg, const std::string& name);

} // namespace stlf
