#pragma once

#include <cstdint>
#include <vector>

#include "stlf/zp.hpp"

namespace stlf {

/// Primitive positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadraticForm {
    int64_t a = 1, b = 0, c = 0;

    int64_t discriminant() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
    bool is_reduced() const;

    /// Equivalent reduced form (Gauss reduction).
    QuadraticForm reduced() const;
    /// Inverse class: (a, -b, c) reduced.
    QuadraticForm inverse() const;

    bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadraticForm& o) const;
};

/// The identity class (1, b0, ·) of the given discriminant.
QuadraticForm principal_form(int64_t disc);

/// Gauss composition followed by reduction; matches the ideal-class product.
/// Throws discriminant_mismatch on distinct discriminants.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);

/// Complete duplicate-free list of reduced primitive forms of discriminant
/// disc < 0, disc = 0 or 1 mod 4; identity first, then sorted.
std::vector<QuadraticForm> reduced_forms(int64_t disc);

/// Pic(O_c) as reduced forms of discriminant -c^2 D_K with the composition table.
class ClassGroup {
public:
    explicit ClassGroup(int64_t disc);

    int64_t discriminant() const { return disc_; }
    size_t order() const { return forms_.size(); }
    const std::vector<QuadraticForm>& forms() const { return forms_; }
    size_t index_of(const QuadraticForm& reduced_form) const;
    size_t compose_indices(size_t i, size_t j) const { return table_[i * order() + j]; }
    size_t inverse_index(size_t i) const;

private:
    int64_t disc_;
    std::vector<QuadraticForm> forms_;
    std::vector<size_t> table_;
};

enum class SplittingType { Split, Inert, Ramified };

/// Kronecker symbol (-D_K | ell): +1 split, -1 inert, 0 ramified.
SplittingType splitting_type(int64_t ell, int64_t DK);

/// An equivalent form whose leading coefficient is coprime to `modulus`;
/// the leading coefficient is the index of the stored representative ideal.
QuadraticForm coprime_representative(const QuadraticForm& f, int64_t modulus);

/// N(a) = c^-1 #(O_c/a) for the stored representative of index rep_index,
/// as a p-adic unit (errors when the representative shares a factor with p).
Padic class_norm_padic(const Zp& R, int64_t rep_index, int64_t c);

/// The idele norm N_K(a) = (c N(a))^-1 = #(O_c/a)^-1 as a p-adic unit.
Padic idele_norm_padic(const Zp& R, int64_t rep_index);

/// Square root of -D_K in Z_p (requires p split in K; error otherwise).
Padic sqrt_minus_dk(const Zp& R, int64_t DK);

} // namespace stlf
