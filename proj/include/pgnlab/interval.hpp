#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace pgn {

using Integer = mpz_class;
using Rational = mpq_class;

// Closed interval with exact rational endpoints. All arithmetic is
// outward: the result contains the exact image of every point pair.
struct RationalInterval {
    Rational lo;
    Rational hi;

    RationalInterval() = default;
    RationalInterval(Rational l, Rational h);
    static RationalInterval point(const Rational& v) { return {v, v}; }

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool subset_of(const RationalInterval& o) const { return o.lo <= lo && hi <= o.hi; }
    bool disjoint(const RationalInterval& o) const { return hi < o.lo || o.hi < lo; }
    Rational width() const { return hi - lo; }
    Rational mid() const;

    // Endpoints rounded outward to doubles.
    double lo_down() const;
    double hi_up() const;
    double mid_double() const;
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const Rational& k, const RationalInterval& a);
bool operator==(const RationalInterval& a, const RationalInterval& b);

RationalInterval abs(const RationalInterval& a);
RationalInterval max(const RationalInterval& a, const RationalInterval& b);
RationalInterval min(const RationalInterval& a, const RationalInterval& b);
RationalInterval hull(const RationalInterval& a, const RationalInterval& b);
// Requires 0 not in a.
RationalInterval reciprocal(const RationalInterval& a);
RationalInterval pow(const RationalInterval& a, unsigned e);

// Rounds endpoints outward onto a grid with `bits` significant bits, which
// keeps numerator/denominator sizes bounded during long products.
RationalInterval round_out(const RationalInterval& a, int bits);
Rational round_down(const Rational& v, int bits);
Rational round_up(const Rational& v, int bits);

// floor(log2|v|) for v != 0.
long ilog2(const Rational& v);

double to_double_down(const Rational& v);
double to_double_up(const Rational& v);

// Exact text "p/q" (or "p").
std::string to_string(const Rational& v);
std::string to_string(const RationalInterval& v);
// Decimal rendering with `digits` significant digits (rounded to nearest).
std::string to_decimal(const Rational& v, int digits = 17);

// Parses "p/q", "p" or a plain decimal literal such as "-1.25" or "1e4".
Rational parse_rational(const std::string& text);

std::ostream& operator<<(std::ostream& os, const RationalInterval& v);

} // namespace pgn
