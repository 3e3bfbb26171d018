#include <doctest.h>

#include <numeric>
#include <set>
#include <tuple>

#include "stlf/quadratic.hpp"

using namespace stlf;

namespace {

// enumeration oracle: count reduced primitive forms by brute force over the
// full (a, b, c) box
std::set<std::tuple<int64_t, int64_t, int64_t>> oracle_forms(int64_t disc) {
    std::set<std::tuple<int64_t, int64_t, int64_t>> out;
    for (int64_t a = 1; a * a <= -disc; ++a) {
        for (int64_t b = -a; b <= a; ++b) {
            for (int64_t c = a; c * c <= disc * disc; ++c) {
                if (b * b - 4 * a * c != disc) continue;
                if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
                if (!(std::abs(b) <= a && a <= c)) continue;
                if ((std::abs(b) == a || a == c) && b < 0) continue;
                out.insert({a, b, c});
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("reduced form lists match the enumeration oracle") {
    CHECK(reduced_forms(-4).size() == 1);
    CHECK(reduced_forms(-4)[0] == QuadraticForm{1, 0, 1});
    CHECK(reduced_forms(-3).size() == 1);
    CHECK(reduced_forms(-3)[0] == QuadraticForm{1, 1, 1});

    auto forms23 = reduced_forms(-23);
    REQUIRE(forms23.size() == 3);
    CHECK(forms23[0] == QuadraticForm{1, 1, 6});
    CHECK(forms23[1] == QuadraticForm{2, -1, 3});
    CHECK(forms23[2] == QuadraticForm{2, 1, 3});

    for (int64_t disc = -3; disc >= -120; --disc) {
        if (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1) continue;
        auto got = reduced_forms(disc);
        auto want = oracle_forms(disc);
        CHECK(got.size() == want.size());
        for (const auto& f : got) CHECK(want.count({f.a, f.b, f.c}) == 1);
    }

    CHECK_THROWS_AS(reduced_forms(-6), bad_discriminant);
    CHECK_THROWS_AS(reduced_forms(5), bad_discriminant);
}

TEST_CASE("composition on the class number 3 discriminant") {
    QuadraticForm id{1, 1, 6}, f{2, 1, 3}, g{2, -1, 3};
    CHECK(compose(id, f) == f);
    CHECK(compose(f, g) == id);               // inverse classes
    CHECK(compose(compose(f, f), f) == id);   // order 3
    CHECK(compose(f, f) == g);
    CHECK_THROWS_AS(compose(id, QuadraticForm{1, 0, 1}), discriminant_mismatch);
}

TEST_CASE("class groups are finite abelian groups for |disc| <= 400") {
    for (int64_t disc = -3; disc >= -400; --disc) {
        int64_t r = ((disc % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        ClassGroup G(disc);
        size_t h = G.order();
        // identity
        for (size_t i = 0; i < h; ++i) {
            CHECK(G.compose_indices(0, i) == i);
            CHECK(G.compose_indices(i, 0) == i);
        }
        // commutativity and inverses
        for (size_t i = 0; i < h; ++i) {
            CHECK(G.compose_indices(i, G.inverse_index(i)) == 0);
            for (size_t j = 0; j < h; ++j)
                CHECK(G.compose_indices(i, j) == G.compose_indices(j, i));
        }
        // associativity, exhaustively
        for (size_t i = 0; i < h; ++i)
            for (size_t j = 0; j < h; ++j)
                for (size_t k = 0; k < h; ++k)
                    CHECK(G.compose_indices(G.compose_indices(i, j), k) ==
                          G.compose_indices(i, G.compose_indices(j, k)));
    }
}

TEST_CASE("reduction is idempotent and preserves discriminant/primitivity") {
    QuadraticForm f{7, 11, 5};   // disc = 121 - 140 = -19
    QuadraticForm r = f.reduced();
    CHECK(r.is_reduced());
    CHECK(r.discriminant() == f.discriminant());
    CHECK(r.is_primitive());
    CHECK(r.reduced() == r);
}

TEST_CASE("splitting type via the Kronecker symbol") {
    CHECK(splitting_type(13, 23) == SplittingType::Split);    // -23 = 3 = 4^2 mod 13
    CHECK(splitting_type(23, 23) == SplittingType::Ramified);
    CHECK(splitting_type(5, 23) == SplittingType::Inert);     // -23 = 2, not a square mod 5
    CHECK(splitting_type(5, 11) == SplittingType::Split);     // -11 = 4 mod 5
    CHECK(splitting_type(3, 11) == SplittingType::Split);     // -11 = 1 mod 3
}

TEST_CASE("coprime representatives and norms") {
    auto forms = reduced_forms(-23);
    for (const auto& f : forms) {
        QuadraticForm rep = coprime_representative(f, 23 * 13 * 2);
        CHECK(rep.discriminant() == -23);
        CHECK(std::gcd(rep.a, int64_t(23 * 13 * 2)) == 1);
        CHECK(rep.reduced() == f);
    }

    Zp R(13, 8);
    // principal class, representative the order itself: N = 1/c
    CHECK(class_norm_padic(R, 1, 1).residue() == 1);
    // c = 1, norm-2 class of disc -23
    CHECK(class_norm_padic(R, 2, 1).eq_at_precision(R.make(2)));
    CHECK(idele_norm_padic(R, 2).eq_at_precision(R.from_rational(1, 2)));
    CHECK_THROWS_AS(class_norm_padic(R, 13, 1), representative_not_coprime);
}

TEST_CASE("square root of -D_K") {
    Zp R5(5, 6);
    Padic r = sqrt_minus_dk(R5, 11);
    CHECK((r * r).eq_at_precision(R5.make(-11, 6)));
    CHECK((r.residue() % 5 == 2 || r.residue() % 5 == 3));

    Zp R13(13, 6);
    Padic r2 = sqrt_minus_dk(R13, 23);
    CHECK((r2 * r2).eq_at_precision(R13.make(-23, 6)));

    CHECK_THROWS_AS(sqrt_minus_dk(R5, 23), config_error);   // 5 inert for D_K = 23
}

TEST_CASE("class norm of the principal class with trivial representative is 1/c") {
    Zp R(5, 8);
    for (int64_t c : {1, 3, 6}) {
        Padic n = class_norm_padic(R, 1, c);
        CHECK((n * R.make(c)).eq_at_precision(R.one()));
    }
}
