#include "stlf/synth.hpp"

#include <numeric>

namespace stlf {

Padic random_padic(const Zp& R, Rng& rng, uint32_t prec) {
    return Padic(&R, rng.below(R.pow_p(prec)), prec);
}

Padic random_unit(const Zp& R, Rng& rng, uint32_t prec) {
    while (true) {
        Padic x = random_padic(R, rng, prec);
        if (x.is_unit()) return x;
    }
}

Padic random_mixed(const Zp& R, Rng& rng, uint32_t prec) {
    uint64_t pick = rng.below(4);
    if (pick < 3) return random_unit(R, rng, prec);
    uint32_t v = uint32_t(1 + rng.below(3));
    if (v >= prec) v = prec - 1;
    uint64_t q = R.pow_p(v);
    return Padic(&R, (rng.below(R.pow_p(prec) / q)) * q, prec);
}

ScalarSeries random_series(const Zp& R, Rng& rng, uint32_t M, uint32_t prec) {
    std::vector<Padic> c;
    c.reserve(M);
    for (uint32_t n = 0; n < M; ++n) c.push_back(random_mixed(R, rng, prec));
    return ScalarSeries(std::move(c));
}

IwasawaElement random_iwasawa(const CycloRing& C, Rng& rng, uint32_t s_trunc,
                              uint32_t max_degree, uint32_t prec) {
    std::vector<Cyclo> c(s_trunc, C.zero(prec));
    uint32_t deg = uint32_t(rng.below(max_degree + 1));
    for (uint32_t j = 0; j <= deg && j < s_trunc; ++j)
        c[j] = C.embed(random_mixed(C.zp(), rng, prec));
    return IwasawaElement(std::move(c), true);
}

ExpansionBundle synth_bundle(const Zp& R, const CycloRing& C0, const RunConfig& cfg,
                             BundleMode mode, bool random_units) {
    cfg.validate();
    Rng rng(cfg.seed);
    ExpansionBundle b;
    b.ctx = cfg.ctx;
    b.mode = mode;
    int64_t coprime_to = cfg.ctx.c * int64_t(cfg.ctx.p) * cfg.ctx.DK;
    for (const QuadraticForm& f : reduced_forms(cfg.ctx.discriminant())) {
        BundleClass cls;
        cls.form = f;
        cls.rep = coprime_representative(f, coprime_to);
        cls.u_a = random_units ? random_unit(R, rng, cfg.ctx.N) : R.one().with_prec(cfg.ctx.N);
        if (mode == BundleMode::OneVariable) {
            cls.scalar_coeffs = random_series(R, rng, cfg.ctx.M, cfg.ctx.N);
        } else {
            std::vector<IwasawaElement> coeffs;
            coeffs.reserve(cfg.ctx.M);
            for (uint32_t n = 0; n < cfg.ctx.M; ++n)
                coeffs.push_back(random_iwasawa(C0, rng, cfg.ctx.s_trunc, 3, cfg.ctx.N));
            cls.family_coeffs = TwoVariableSeries(std::move(coeffs));
        }
        b.classes.push_back(std::move(cls));
    }
    b.validate(R);
    return b;
}

HeckeUnitData synth_lambda(const Zp& R, const RunConfig& cfg, bool trivial) {
    Rng rng(cfg.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    HeckeUnitData data;
    data.R = &R;
    data.k0 = cfg.ctx.k0;
    size_t h = reduced_forms(cfg.ctx.discriminant()).size();
    for (size_t i = 0; i < h; ++i)
        data.values.push_back(trivial ? R.one().with_prec(cfg.ctx.N)
                                      : random_unit(R, rng, cfg.ctx.N));
    data.validate();
    return data;
}

namespace {

// a generator of (Z/p)^x by trial
uint64_t primitive_root(uint64_t p) {
    auto order_divides = [&](uint64_t g, uint64_t e) {
        uint64_t acc = 1, base = g % p, k = e;
        while (k) {
            if (k & 1) acc = (unsigned __int128)(acc)*base % p;
            base = (unsigned __int128)(base)*base % p;
            k >>= 1;
        }
        return acc == 1;
    };
    for (uint64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (uint64_t q = 2; q <= p - 1; ++q) {
            if ((p - 1) % q != 0) continue;
            bool qprime = true;
            for (uint64_t d = 2; d * d <= q; ++d)
                if (q % d == 0) { qprime = false; break; }
            if (!qprime) continue;
            if (order_divides(g, (p - 1) / q)) { primitive = false; break; }
        }
        if (primitive) return g;
    }
    throw error("no primitive root found");
}

} // namespace

GammaCharacter synth_phi(const Zp& R, const RunConfig& cfg, const std::string& name) {
    GammaCharacter phi;
    if (name == "trivial") return phi;
    if (name == "wild2") {
        phi.wild = FiniteCharacter{2, 1};
        return phi;
    }
    if (name == "power1") {
        phi.power = 1;
        return phi;
    }
    if (name == "class") {
        ClassGroup G(cfg.ctx.discriminant());
        size_t h = G.order();
        if (h == 1)
            throw config_error("class group is trivial; no nontrivial class character");
        if ((R.prime() - 1) % h != 0)
            throw config_error("class character needs h | p-1 for values in Z_p");
        // find a generator (the group is cyclic for the shipped configs)
        size_t gen = 0;
        for (size_t i = 1; i < h; ++i) {
            size_t acc = i, ord = 1;
            while (acc != 0) { acc = G.compose_indices(acc, i); ++ord; }
            if (ord == h) { gen = i; break; }
        }
        if (gen == 0)
            throw config_error("class group is not cyclic; class character unsupported");
        // zeta_h in Z_p via the Teichmueller lift of a primitive root power
        Padic zeta = teichmueller(R.make(int64_t(primitive_root(R.prime()))))
                         .pow(int64_t((R.prime() - 1) / h));
        phi.class_values.assign(h, R.one());
        size_t idx = 0;       // walks the powers of the generator
        Padic val = R.one();
        for (size_t j = 1; j < h; ++j) {
            idx = G.compose_indices(idx, gen);
            val = val * zeta;
            phi.class_values[idx] = val;
        }
        return phi;
    }
    throw config_error("unknown phi name: " + name);
}

} // namespace stlf
