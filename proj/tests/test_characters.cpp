#include <doctest.h>

#include "stlf/characters.hpp"
#include "stlf/rng.hpp"

using namespace stlf;

TEST_CASE("epsilon half squares back to epsilon, levels <= 3") {
    for (uint64_t p : {3ull, 5ull}) {
        Zp R(p, 8);
        for (uint32_t m = 1; m <= 3; ++m) {
            CycloRing C(&R, m >= 1 ? m - 1 : 0);
            for (const FiniteCharacter& eps : characters_of_level(p, m)) {
                FiniteCharacter h = eps.half(p);
                Cyclo lhs = h.on_generator_power(C, 1) * h.on_generator_power(C, 1);
                CHECK(lhs.eq_at_precision(eps.on_generator_power(C, 1)));
            }
        }
    }
}

TEST_CASE("critical character family values") {
    Zp R(5, 8);
    CycloRing C(&R, 1);
    CriticalCharacter th(&R, 2);

    MonomialIwasawa one = critical_family_at(th, R.one());
    CHECK(one.scalar.eq_at_precision(R.one()));
    CHECK(one.exponent.is_zero());

    // z = u^2: <z>^(1/2) = u, so the family value is [u]
    Padic u = R.generator();
    MonomialIwasawa at_u2 = critical_family_at(th, u * u);
    CHECK(at_u2.scalar.eq_at_precision(R.one()));
    CHECK(at_u2.exponent.eq_at_precision(R.one().with_prec(at_u2.exponent.prec())));

    // z = 2, k0 = 2: trivial Teichmueller factor, exponent log<2>/2
    MonomialIwasawa at_2 = critical_family_at(th, R.make(2));
    CHECK(at_2.scalar.eq_at_precision(R.one()));
    Padic gamma = principal_log(principal_sqrt(principal_part(R.make(2))));
    CHECK(at_2.exponent.eq_at_precision(gamma));

    CHECK_THROWS_AS(critical_family_at(th, R.make(5)), not_a_unit);
}

TEST_CASE("critical character specialization closed form") {
    Zp R(5, 8);
    CycloRing C(&R, 1);
    CriticalCharacter th(&R, 2);

    // k = 2, trivial eps: value 1 for any unit
    CHECK(critical_value(th, C, R.make(3), 2, FiniteCharacter::trivial())
              .eq_at_precision(C.one()));
    // k = 2 + 2(p-1), z = 2: 2^((k-2)/2) = 2^4 = 16
    CHECK(critical_value(th, C, R.make(2), 10, FiniteCharacter::trivial())
              .eq_at_precision(C.embed(R.make(16))));
    CHECK_THROWS_AS(critical_value(th, C, R.make(2), 4, FiniteCharacter::trivial()),
                    weight_class_mismatch);
}

TEST_CASE("two-path agreement for the critical character") {
    for (uint64_t p : {5ull, 13ull}) {
        Zp R(p, 8);
        CycloRing C(&R, 2);
        CriticalCharacter th(&R, 2);
        Rng rng(p);
        std::vector<std::pair<uint32_t, FiniteCharacter>> kappas = {
            {2, FiniteCharacter::trivial()},
            {uint32_t(2 + 2 * (p - 1)), FiniteCharacter::trivial()},
            {2, FiniteCharacter{2, 1}},
            {2, FiniteCharacter{3, 2}},
        };
        for (const auto& [k, eps] : kappas) {
            for (int i = 0; i < 100; ++i) {
                Padic z = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
                if (!z.is_unit()) continue;
                Cyclo via_family = critical_family_at(th, z).specialize(C, k, eps);
                Cyclo closed = critical_value(th, C, z, k, eps);
                CHECK(via_family.eq_at_precision(closed));
            }
        }
    }
}

TEST_CASE("critical family is multiplicative") {
    Zp R(5, 8);
    CriticalCharacter th(&R, 2);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        Padic z1 = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
        Padic z2 = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
        if (!z1.is_unit() || !z2.is_unit()) continue;
        MonomialIwasawa prod = critical_family_at(th, z1) * critical_family_at(th, z2);
        MonomialIwasawa direct = critical_family_at(th, z1 * z2);
        CHECK(prod.scalar.eq_at_precision(direct.scalar));
        CHECK(prod.exponent.eq_at_precision(direct.exponent));
    }
}

TEST_CASE("norm twist inverse specializes to the proof identity") {
    Zp R(13, 8);
    CycloRing C(&R, 1);
    CriticalCharacter th(&R, 2);
    // class of norm 2 (disc -23, c = 1), k = 4 + ... must give 2^(1-k/2)
    for (uint32_t k : {2u, 26u}) {
        Cyclo got = norm_twist_inverse(th, 2).specialize(C, k, FiniteCharacter::trivial());
        Padic want = R.from_rational(1, 2).pow(int64_t(k / 2 - 1));
        CHECK(got.eq_at_precision(C.embed(want)));
    }
    // principal class: always 1
    Cyclo one = norm_twist_inverse(th, 1).specialize(C, 26, FiniteCharacter::trivial());
    CHECK(one.eq_at_precision(C.one()));
}

TEST_CASE("anticyclotomic family and its specializations") {
    Zp R(5, 8);
    CycloRing C(&R, 2);
    CriticalCharacter th(&R, 2);

    HeckeUnitData triv{&R, 2, {R.one(), R.one(), R.one()}};
    for (const MonomialIwasawa& x : anticyclotomic_family(th, triv)) {
        CHECK(x.scalar.eq_at_precision(R.one()));
        CHECK(x.exponent.is_zero());
    }
    AnticycloSpecialization sp = anticyclotomic_specialize(th, triv, C, 2,
                                                           FiniteCharacter::trivial());
    for (const Cyclo& v : sp.class_values) CHECK(v.eq_at_precision(C.one()));
    // local character at k=2, trivial eps is u -> u
    CHECK(sp.local_value(C, R.make(7)).eq_at_precision(C.embed(R.make(7))));

    // u^2 table: family value u^2 [u]
    Padic u = R.generator();
    HeckeUnitData sq{&R, 2, {u * u}};
    MonomialIwasawa xi = anticyclotomic_family(th, sq)[0];
    CHECK(xi.scalar.eq_at_precision(u * u));
    CHECK(xi.exponent.eq_at_precision(R.one().with_prec(xi.exponent.prec())));

    // inverse table gives inverse values
    Rng rng(12);
    for (int i = 0; i < 30; ++i) {
        Padic t = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
        if (!t.is_unit()) continue;
        HeckeUnitData d1{&R, 2, {t}};
        HeckeUnitData d2{&R, 2, {t.inverse()}};
        MonomialIwasawa a = anticyclotomic_family(th, d1)[0];
        MonomialIwasawa b = anticyclotomic_family(th, d2)[0];
        CHECK((a * b).scalar.eq_at_precision(R.one()));
        CHECK((a * b).exponent.is_zero());
        // anticyclotomic symmetry after specialization
        for (uint32_t k : {2u, 10u}) {
            Cyclo va = anticyclotomic_specialize(th, d1, C, k, FiniteCharacter{2, 3})
                           .class_values[0];
            Cyclo vb = anticyclotomic_specialize(th, d2, C, k, FiniteCharacter{2, 3})
                           .class_values[0];
            CHECK((va * vb).eq_at_precision(C.one().with_prec(va.prec())));
        }
    }

    HeckeUnitData bad{&R, 2, {R.make(10)}};
    CHECK_THROWS_AS(anticyclotomic_family(th, bad), not_a_unit);
}

TEST_CASE("two-path agreement for the anticyclotomic table") {
    Zp R(5, 8);
    CycloRing C(&R, 2);
    CriticalCharacter th(&R, 2);
    Rng rng(77);
    for (const auto& [k, eps] : std::vector<std::pair<uint32_t, FiniteCharacter>>{
             {2, FiniteCharacter::trivial()},
             {10, FiniteCharacter::trivial()},
             {2, FiniteCharacter{2, 1}},
             {10, FiniteCharacter{2, 4}}}) {
        for (int i = 0; i < 100; ++i) {
            Padic t = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
            if (!t.is_unit()) continue;
            HeckeUnitData d{&R, 2, {t}};
            Cyclo via_family = anticyclotomic_family(th, d)[0].specialize(C, k, eps);
            Cyclo closed = anticyclotomic_specialize(th, d, C, k, eps).class_values[0];
            CHECK(via_family.eq_at_precision(closed));
        }
    }
}

TEST_CASE("local family weight specializes to the local character") {
    Zp R(5, 8);
    CycloRing C(&R, 2);
    CriticalCharacter th(&R, 2);
    Rng rng(3);
    HeckeUnitData d{&R, 2, {R.one()}};
    for (uint32_t k : {2u, 10u}) {
        for (const FiniteCharacter& eps :
             {FiniteCharacter::trivial(), FiniteCharacter{2, 2}}) {
            AnticycloSpecialization sp = anticyclotomic_specialize(th, d, C, k, eps);
            for (int i = 0; i < 40; ++i) {
                Padic v = Padic(&R, 1 + rng.below(R.pow_p(8) - 1), 8);
                if (!v.is_unit()) continue;
                Cyclo via_family = anticyclotomic_local_family(th, v).specialize(C, k, eps);
                CHECK(via_family.eq_at_precision(sp.local_value(C, v)));
            }
        }
    }
}
