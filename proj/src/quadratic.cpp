#include "stlf/quadratic.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace stlf {

namespace {

int64_t gcd3(int64_t a, int64_t b, int64_t c) {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

// g = gcd(a,b) with u*a + v*b = g
int64_t xgcd(int64_t a, int64_t b, int64_t& u, int64_t& v) {
    int64_t old_r = a, r = b;
    int64_t old_u = 1, uu = 0;
    int64_t old_v = 0, vv = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * uu; old_u = uu; uu = t;
        t = old_v - q * vv; old_v = vv; vv = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    u = old_u;
    v = old_v;
    return old_r;
}

int64_t mod_pos(int64_t x, int64_t m) {
    int64_t r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace

bool QuadraticForm::is_primitive() const { return gcd3(a, b, c) == 1; }

bool QuadraticForm::is_reduced() const {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

QuadraticForm QuadraticForm::reduced() const {
    QuadraticForm f = *this;
    int64_t disc = f.discriminant();
    assert(disc < 0 && f.a > 0);
    while (true) {
        // normalize: b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            int64_t r = mod_pos(f.b, 2 * f.a);
            if (r > f.a) r -= 2 * f.a;
            f.b = r;
            f.c = (f.b * f.b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.a == f.c || std::abs(f.b) == f.a) && f.b < 0) f.b = -f.b;
    return f;
}

QuadraticForm QuadraticForm::inverse() const {
    QuadraticForm f = {a, -b, c};
    return f.reduced();
}

bool QuadraticForm::operator<(const QuadraticForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

QuadraticForm principal_form(int64_t disc) {
    int64_t b0 = mod_pos(disc, 2);
    return {1, b0, (b0 * b0 - disc) / 4};
}

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
    if (f.discriminant() != g.discriminant())
        throw discriminant_mismatch();
    // Gauss composition in the classical arrangement
    int64_t a1 = f.a, b1 = f.b, c1 = f.c;
    int64_t a2 = g.a, b2 = g.b, c2 = g.c;
    if (a1 > a2) { std::swap(a1, a2); std::swap(b1, b2); std::swap(c1, c2); }
    int64_t s = (b1 + b2) / 2;
    int64_t n = b2 - s;             // (b2 - b1)/2
    int64_t u, v;
    int64_t d = xgcd(a2, a1, u, v);     // u a2 + v a1 = d
    int64_t y1 = u;
    int64_t d1 = xgcd(s, d, u, v);      // u s + v d = d1
    int64_t x2 = u;
    int64_t y2 = -v;
    int64_t v1 = a1 / d1;
    int64_t v2 = a2 / d1;
    int64_t r = mod_pos(y1 * y2 * n - x2 * c2, v1);
    QuadraticForm h;
    h.a = v1 * v2;
    h.b = b2 + 2 * v2 * r;
    h.c = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    return h.reduced();
}

std::vector<QuadraticForm> reduced_forms(int64_t disc) {
    if (disc >= 0 || (mod_pos(disc, 4) != 0 && mod_pos(disc, 4) != 1))
        throw bad_discriminant();
    std::vector<QuadraticForm> out;
    for (int64_t a = 1; 3 * a * a <= -disc; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            int64_t c = num / (4 * a);
            if (c < a) continue;
            QuadraticForm f{a, b, c};
            if (!f.is_primitive() || !f.is_reduced()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    // identity first
    QuadraticForm id = principal_form(disc);
    auto it = std::find(out.begin(), out.end(), id);
    assert(it != out.end());
    std::rotate(out.begin(), it, it + 1);
    std::sort(out.begin() + 1, out.end());
    return out;
}

ClassGroup::ClassGroup(int64_t disc) : disc_(disc), forms_(reduced_forms(disc)) {
    size_t h = forms_.size();
    table_.resize(h * h);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j)
            table_[i * h + j] = index_of(compose(forms_[i], forms_[j]));
}

size_t ClassGroup::index_of(const QuadraticForm& f) const {
    for (size_t i = 0; i < forms_.size(); ++i)
        if (forms_[i] == f) return i;
    throw error("form is not in the class group listing");
}

size_t ClassGroup::inverse_index(size_t i) const {
    return index_of(forms_[i].inverse());
}

SplittingType splitting_type(int64_t ell, int64_t DK) {
    assert(ell >= 2 && DK > 0);
    if (DK % ell == 0) return SplittingType::Ramified;
    if (ell == 2) {
        // Kronecker (-DK | 2) by -DK mod 8
        int64_t r = mod_pos(-DK, 8);
        if (r == 1) return SplittingType::Split;
        if (r == 5) return SplittingType::Inert;
        return SplittingType::Ramified;
    }
    // Euler's criterion for (-DK | ell)
    int64_t a = mod_pos(-DK, ell);
    int64_t r = 1, base = a, e = (ell - 1) / 2;
    while (e) {
        if (e & 1) r = (r * base) % ell;
        base = (base * base) % ell;
        e >>= 1;
    }
    return r == 1 ? SplittingType::Split : SplittingType::Inert;
}

QuadraticForm coprime_representative(const QuadraticForm& f, int64_t modulus) {
    assert(modulus > 0);
    for (int64_t bound = 1; bound <= 64; ++bound) {
        for (int64_t x = -bound; x <= bound; ++x) {
            for (int64_t y = -bound; y <= bound; ++y) {
                if (std::max(std::abs(x), std::abs(y)) != bound && bound > 1) continue;
                if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
                int64_t v = f.a * x * x + f.b * x * y + f.c * y * y;
                if (v <= 0 || std::gcd(v, modulus) != 1) continue;
                // complete (x, y) to a unimodular matrix [[x, r], [y, s]]
                int64_t r, s;
                if (xgcd(x, y, s, r) != 1) continue;
                r = -r;
                // now x*s - r*y = 1; transformed form (v, b', c')
                int64_t bp = 2 * (f.a * x * r + f.c * y * s) + f.b * (x * s + r * y);
                int64_t cp = f.a * r * r + f.b * r * s + f.c * s * s;
                QuadraticForm rep{v, bp, cp};
                assert(rep.discriminant() == f.discriminant());
                return rep;
            }
        }
    }
    throw representative_not_coprime("no small coprime representative found");
}

Padic class_norm_padic(const Zp& R, int64_t rep_index, int64_t c) {
    if (rep_index % int64_t(R.prime()) == 0)
        throw representative_not_coprime();
    return R.from_rational(rep_index, c);
}

Padic idele_norm_padic(const Zp& R, int64_t rep_index) {
    if (rep_index % int64_t(R.prime()) == 0)
        throw representative_not_coprime();
    return R.from_rational(1, rep_index);
}

Padic sqrt_minus_dk(const Zp& R, int64_t DK) {
    if (splitting_type(int64_t(R.prime()), DK) != SplittingType::Split)
        throw config_error("p is not split in K: -D_K has no square root in Z_p");
    auto root = unit_sqrt(R.make(-DK));
    if (!root)
        throw config_error("-D_K is a non-residue mod p");
    return *root;
}

} // namespace stlf
