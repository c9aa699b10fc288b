#include "pnforge/field.hpp"

#include "pnforge/error.hpp"

#include <cctype>

namespace pnforge {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string_view::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw Error(ErrorKind::InvalidInput, "bad rational '" + std::string(text) + "'");
        Integer d(std::string(den), 10);
        if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
        r = Rational(Integer(std::string(num), 10), d);
    } else if (dot != std::string_view::npos) {
        auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            throw Error(ErrorKind::InvalidInput, "bad decimal '" + std::string(text) + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        r = Rational(num, scale);
    } else {
        if (!all_digits(s)) throw Error(ErrorKind::InvalidInput, "bad rational '" + std::string(text) + "'");
        r = Rational(Integer(std::string(s), 10));
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "cannot rationalize a non-finite value");
    if (x < 0) return -rationalize(-x, tol);
    double bound = tol * std::max(1.0, x);
    // continued-fraction convergents h/k
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        Integer ai(a);
        Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Rational c(h1, k1);
        c.canonicalize();
        if (std::fabs(c.get_d() - x) <= bound) return c;
        double f = y - a;
        if (f == 0.0) return c;
        y = 1.0 / f;
    }
    Rational exact(x);
    return exact;
}

Integer integer_content(const Rational& r) { return abs(r.get_num()); }

int real_sign(const Rational& r) { return sgn(r); }

}  // namespace pnforge
