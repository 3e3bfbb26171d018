#pragma once

#include <stdexcept>
#include <string>

namespace stlf {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_a_unit : error {
    explicit not_a_unit(const std::string& what = "p-adic inverse of a non-unit")
        : error(what) {}
};

struct not_principal_unit : error {
    explicit not_principal_unit(const std::string& what = "argument is not in 1+pZp")
        : error(what) {}
};

struct denominator_divisible_by_p : error {
    explicit denominator_divisible_by_p(const std::string& what = "denominator divisible by p")
        : error(what) {}
};

struct insufficient_precision : error {
    explicit insufficient_precision(const std::string& what = "insufficient working precision")
        : error(what) {}
};

struct bad_discriminant : error {
    explicit bad_discriminant(const std::string& what = "discriminant must be negative and 0,1 mod 4")
        : error(what) {}
};

struct discriminant_mismatch : error {
    explicit discriminant_mismatch(const std::string& what = "forms have different discriminants")
        : error(what) {}
};

struct representative_not_coprime : error {
    explicit representative_not_coprime(const std::string& what = "class representative shares a factor with c*p*D_K")
        : error(what) {}
};

struct star_condition_violated : error {
    explicit star_condition_violated(const std::string& what = "character sums are not divisible by p^(m-1)")
        : error(what) {}
};

struct inconsistent_family : error {
    explicit inconsistent_family(const std::string& what = "character family values disagree across levels")
        : error(what) {}
};

struct weight_class_mismatch : error {
    explicit weight_class_mismatch(const std::string& what = "weight k is not congruent to k0 mod 2(p-1)")
        : error(what) {}
};

struct config_error : error {
    using error::error;
};

} // namespace stlf
