#pragma once
// Coefficient fields for the exact core: the rationals (GMP) and real
// quadratic extensions Q(sqrt(D)).

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace pnforge {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into lowest terms.
/// Throws Error(InvalidInput) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline double to_double(const Rational& r) { return r.get_d(); }
inline std::size_t bit_size(const Rational& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}
inline Integer denominator_lcm(const Rational& r) { return r.get_den(); }
inline Rational rational_part(const Rational& r) { return r; }
inline bool is_rational(const Rational&) { return true; }

/// Exact rational approximation p/q with |x - p/q| <= tol * max(1, |x|),
/// found by continued fractions.
Rational rationalize(double x, double tol);

/// a + b*sqrt(D) with rational a, b. D must be a positive non-square.
template <int D>
class QuadraticNumber {
    static_assert(D > 1, "radicand must exceed one");

public:
    QuadraticNumber() = default;
    QuadraticNumber(int a) : a_(a) {}
    QuadraticNumber(const Rational& a) : a_(a) {}
    QuadraticNumber(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadraticNumber root() { return {Rational(0), Rational(1)}; }

    const Rational& rational() const { return a_; }
    const Rational& surd() const { return b_; }

    QuadraticNumber& operator+=(const QuadraticNumber& o) { a_ += o.a_; b_ += o.b_; return *this; }
    QuadraticNumber& operator-=(const QuadraticNumber& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    QuadraticNumber& operator*=(const QuadraticNumber& o) {
        Rational a = a_ * o.a_ + Rational(D) * b_ * o.b_;
        Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    QuadraticNumber& operator/=(const QuadraticNumber& o) {
        // multiply by the conjugate; the norm vanishes only for zero
        Rational norm = o.a_ * o.a_ - Rational(D) * o.b_ * o.b_;
        *this *= QuadraticNumber(o.a_, -o.b_);
        a_ /= norm;
        b_ /= norm;
        return *this;
    }

    friend QuadraticNumber operator+(QuadraticNumber l, const QuadraticNumber& r) { return l += r; }
    friend QuadraticNumber operator-(QuadraticNumber l, const QuadraticNumber& r) { return l -= r; }
    friend QuadraticNumber operator*(QuadraticNumber l, const QuadraticNumber& r) { return l *= r; }
    friend QuadraticNumber operator/(QuadraticNumber l, const QuadraticNumber& r) { return l /= r; }
    friend QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a_, -x.b_}; }
    friend bool operator==(const QuadraticNumber& l, const QuadraticNumber& r) {
        return l.a_ == r.a_ && l.b_ == r.b_;
    }
    friend bool operator!=(const QuadraticNumber& l, const QuadraticNumber& r) { return !(l == r); }

private:
    Rational a_{0};
    Rational b_{0};
};

using QSqrt2 = QuadraticNumber<2>;

template <int D>
bool is_zero(const QuadraticNumber<D>& x) {
    return sgn(x.rational()) == 0 && sgn(x.surd()) == 0;
}
template <int D>
double to_double(const QuadraticNumber<D>& x) {
    static const double root = std::sqrt(static_cast<double>(D));
    return x.rational().get_d() + root * x.surd().get_d();
}
template <int D>
std::size_t bit_size(const QuadraticNumber<D>& x) {
    return bit_size(x.rational()) + bit_size(x.surd());
}
template <int D>
Integer denominator_lcm(const QuadraticNumber<D>& x) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), x.rational().get_den_mpz_t(), x.surd().get_den_mpz_t());
    return l;
}
template <int D>
bool is_rational(const QuadraticNumber<D>& x) { return sgn(x.surd()) == 0; }
template <int D>
Rational rational_part(const QuadraticNumber<D>& x) { return x.rational(); }

template <int D>
std::string to_string(const QuadraticNumber<D>& x) {
    if (sgn(x.surd()) == 0) return to_string(x.rational());
    std::string s;
    if (sgn(x.rational()) != 0) s = to_string(x.rational()) + (sgn(x.surd()) > 0 ? "+" : "");
    return s + to_string(x.surd()) + "*sqrt" + std::to_string(D);
}

/// Integer content of the numerators after clearing denominators.
Integer integer_content(const Rational& r);
template <int D>
Integer integer_content(const QuadraticNumber<D>& x) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.rational().get_num_mpz_t(), x.surd().get_num_mpz_t());
    return g;
}

/// Sign used for canonical orientation: the sign of the real value.
int real_sign(const Rational& r);
template <int D>
int real_sign(const QuadraticNumber<D>& x) {
    // sign of a + b sqrt(D) without floating point
    int sa = sgn(x.rational()), sb = sgn(x.surd());
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    Rational a2 = x.rational() * x.rational();
    Rational b2d = x.surd() * x.surd() * Rational(D);
    return a2 > b2d ? sa : sb;
}

/// Scales a nonzero vector to primitive integer form (all components with
/// integral rational and surd parts, content one) with a positive first
/// nonzero entry. No-op on the zero vector.
template <class K>
void make_primitive(std::vector<K>& vec) {
    std::size_t first = 0;
    while (first < vec.size() && is_zero(vec[first])) ++first;
    if (first == vec.size()) return;
    if constexpr (!std::is_same_v<K, Rational>) {
        // in an extension, pin the first entry to one before clearing denominators
        if (!is_rational(vec[first])) {
            K inv = K(1) / vec[first];
            for (auto& x : vec) x *= inv;
        }
    }
    Integer l = 1;
    for (const auto& x : vec) {
        Integer d = denominator_lcm(x);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    Integer g = 0;
    for (const auto& x : vec) {
        K scaled = x * K(Rational(l));
        Integer c = integer_content(scaled);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    Rational factor(l, g);
    factor.canonicalize();
    if (real_sign(vec[first]) < 0) factor = -factor;
    for (auto& x : vec) x *= K(factor);
}

}  // namespace pnforge
