#include "pgnlab/interval.hpp"
#include "pgnlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace pgn {

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    lo.canonicalize();
    hi.canonicalize();
    if (hi < lo) throw InvalidParameter("interval with lo > hi");
}

Rational RationalInterval::mid() const {
    Rational m = (lo + hi) / 2;
    return m;
}

double RationalInterval::lo_down() const { return to_double_down(lo); }
double RationalInterval::hi_up() const { return to_double_up(hi); }
double RationalInterval::mid_double() const { return mid().get_d(); }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    RationalInterval r;
    r.lo = a.lo + b.lo;
    r.hi = a.hi + b.hi;
    return r;
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    RationalInterval r;
    r.lo = a.lo - b.hi;
    r.hi = a.hi - b.lo;
    return r;
}

RationalInterval operator-(const RationalInterval& a) {
    RationalInterval r;
    r.lo = -a.hi;
    r.hi = -a.lo;
    return r;
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    if (a.is_point() && b.is_point()) return RationalInterval::point(a.lo * b.lo);
    if (sgn(a.lo) >= 0 && sgn(b.lo) >= 0) {
        RationalInterval r;
        r.lo = a.lo * b.lo;
        r.hi = a.hi * b.hi;
        return r;
    }
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    RationalInterval r;
    r.lo = *std::min_element(p, p + 4);
    r.hi = *std::max_element(p, p + 4);
    return r;
}

RationalInterval operator*(const Rational& k, const RationalInterval& a) {
    RationalInterval r;
    if (sgn(k) >= 0) {
        r.lo = k * a.lo;
        r.hi = k * a.hi;
    } else {
        r.lo = k * a.hi;
        r.hi = k * a.lo;
    }
    return r;
}

bool operator==(const RationalInterval& a, const RationalInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

RationalInterval abs(const RationalInterval& a) {
    if (sgn(a.lo) >= 0) return a;
    if (sgn(a.hi) <= 0) return -a;
    RationalInterval r;
    r.lo = 0;
    r.hi = std::max(Rational(-a.lo), a.hi);
    return r;
}

RationalInterval max(const RationalInterval& a, const RationalInterval& b) {
    RationalInterval r;
    r.lo = std::max(a.lo, b.lo);
    r.hi = std::max(a.hi, b.hi);
    return r;
}

RationalInterval min(const RationalInterval& a, const RationalInterval& b) {
    RationalInterval r;
    r.lo = std::min(a.lo, b.lo);
    r.hi = std::min(a.hi, b.hi);
    return r;
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
    RationalInterval r;
    r.lo = std::min(a.lo, b.lo);
    r.hi = std::max(a.hi, b.hi);
    return r;
}

RationalInterval reciprocal(const RationalInterval& a) {
    if (a.contains_zero()) throw InvalidParameter("reciprocal of interval containing zero");
    RationalInterval r;
    r.lo = 1 / a.hi;
    r.hi = 1 / a.lo;
    return r;
}

RationalInterval pow(const RationalInterval& a, unsigned e) {
    RationalInterval r = RationalInterval::point(1);
    for (unsigned i = 0; i < e; ++i) r = r * a;
    if (e % 2 == 0 && a.contains_zero()) r.lo = 0;
    return r;
}

long ilog2(const Rational& v) {
    // |num| in [2^(a-1), 2^a), den in [2^(b-1), 2^b)  =>  log2 in (a-1-b, a-b+1)
    long a = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2));
    long b = static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2));
    long e = a - b;
    // pin down floor(log2 |v|) exactly
    Rational av = ::abs(v);
    Rational p;
    if (e >= 0) {
        Integer t = 1;
        t <<= static_cast<mp_bitcnt_t>(e);
        p = t;
    } else {
        Integer t = 1;
        t <<= static_cast<mp_bitcnt_t>(-e);
        p = Rational(1, 1) / Rational(t);
    }
    while (av < p) {
        p /= 2;
        --e;
    }
    while (av >= p * 2) {
        p *= 2;
        ++e;
    }
    return e;
}

namespace {

// floor(v * 2^k) for possibly negative k
Integer floor_scaled(const Rational& v, long k) {
    Integer num = v.get_num();
    Integer den = v.get_den();
    if (k >= 0)
        num <<= static_cast<mp_bitcnt_t>(k);
    else
        den <<= static_cast<mp_bitcnt_t>(-k);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Rational scale_down(const Integer& m, long k) {
    Rational r(m);
    if (k >= 0) {
        Integer d = 1;
        d <<= static_cast<mp_bitcnt_t>(k);
        r /= Rational(d);
    } else {
        Integer d = 1;
        d <<= static_cast<mp_bitcnt_t>(-k);
        r *= Rational(d);
    }
    r.canonicalize();
    return r;
}

} // namespace

Rational round_down(const Rational& v, int bits) {
    if (sgn(v) == 0) return v;
    // keep numbers whose denominators are already small
    if (mpz_sizeinbase(v.get_den_mpz_t(), 2) <= static_cast<size_t>(bits) &&
        mpz_sizeinbase(v.get_num_mpz_t(), 2) <= static_cast<size_t>(2 * bits))
        return v;
    long k = bits - ilog2(v);
    return scale_down(floor_scaled(v, k), k);
}

Rational round_up(const Rational& v, int bits) { return -round_down(-v, bits); }

RationalInterval round_out(const RationalInterval& a, int bits) {
    if (a.is_point() && mpz_sizeinbase(a.lo.get_den_mpz_t(), 2) <= static_cast<size_t>(bits)) return a;
    RationalInterval r;
    r.lo = round_down(a.lo, bits);
    r.hi = round_up(a.hi, bits);
    return r;
}

double to_double_down(const Rational& v) {
    double d = v.get_d();
    if (std::isinf(d)) return d;
    if (Rational(d) > v) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double to_double_up(const Rational& v) {
    double d = v.get_d();
    if (std::isinf(d)) return d;
    if (Rational(d) < v) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

std::string to_string(const Rational& v) { return v.get_str(); }

std::string to_string(const RationalInterval& v) {
    return "[" + to_string(v.lo) + ", " + to_string(v.hi) + "]";
}

std::string to_decimal(const Rational& v, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << v.get_d();
    return os.str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError(0, "empty number");
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r;
        Integer p, q;
        if (p.set_str(text.substr(0, slash), 10) != 0) throw ParseError(0, "bad numerator '" + text.substr(0, slash) + "'");
        if (q.set_str(text.substr(slash + 1), 10) != 0)
            throw ParseError(slash + 1, "bad denominator '" + text.substr(slash + 1) + "'");
        if (q == 0) throw ParseError(slash + 1, "zero denominator");
        r = Rational(p, q);
        r.canonicalize();
        return r;
    }
    // decimal with optional exponent
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    bool any = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            any = true;
            if (seen_dot) ++frac;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw ParseError(i, "expected digits");
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t start = ++i;
        std::string e;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) e.push_back(text[i++]);
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') e.push_back(text[i++]);
        if (e.empty() || e == "+" || e == "-") throw ParseError(start, "bad exponent");
        exp10 = std::stol(e);
    }
    if (i != text.size()) throw ParseError(i, std::string("unexpected character '") + text[i] + "'");
    Integer m(digits, 10);
    long shift = exp10 - frac;
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    Rational r = shift >= 0 ? Rational(m * p10) : Rational(m, p10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::ostream& operator<<(std::ostream& os, const RationalInterval& v) { return os << to_string(v); }

} // namespace pgn
