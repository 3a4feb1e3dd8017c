#pragma once

#include "pgnlab/interval.hpp"
#include "pgnlab/poly.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pgn {

enum class TargetKind { Rational, Algebraic, Lacunary, Decimal };

// A real number zeta together with a precision oracle returning nested
// rational enclosures of width <= 2^-p.
//
// Supported presentations:
//   rational p/q, algebraic (primitive minimal polynomial + isolating
//   interval), lacunary series sum_{l>=1} b^{-l!}, and decimal literals
//   (which denote the exact terminating decimal).
//
// Copies share one refinement cache; the cache is guarded internally and
// does not change any observable result.
class RealTarget {
public:
    static RealTarget rational(const Rational& value);
    static RealTarget decimal(const std::string& literal);
    // Throws InvalidParameter unless `interval` isolates exactly one real
    // root of `poly` and `poly` has no rational root (degree >= 2).
    static RealTarget algebraic(const IntPoly& poly, const RationalInterval& interval);
    static RealTarget lacunary_factorial(unsigned base);

    TargetKind kind() const;
    // Canonical spec string, e.g. "alg:-2,0,1@[1,2]".
    const std::string& id() const;
    // Exact algebraic degree when known (1 for rationals and decimals).
    std::optional<int> degree_bound() const;
    bool is_rational() const;
    const Rational& rational_value() const;  // requires is_rational()
    // Primitive minimal polynomial for rational/algebraic kinds.
    std::optional<IntPoly> minimal_polynomial() const;

    // Enclosure of width <= 2^-p, nested in p.
    RationalInterval approximate(int p) const;
    // Enclosures of zeta^0 .. zeta^max_power, each with relative width
    // about 2^-bits. Cached per (max_power, bits).
    std::vector<RationalInterval> powers(int max_power, int bits) const;
    double approx_double() const;

    struct Impl;

private:
    explicit RealTarget(std::shared_ptr<Impl> impl);
    std::shared_ptr<Impl> impl_;
};

// Parses the target mini-language:
//   rat:p/q                      rational number
//   alg:c0,c1,...,ck@[lo,hi]     root of c0 + c1 x + ... + ck x^k in [lo,hi]
//   lac:b,factorial              sum_{l>=1} b^(-l!)
//   dec:0.12345                  exact terminating decimal
// lo/hi accept "p/q", integers, or decimals. ParseError carries the
// offending character offset.
RealTarget parse_target(const std::string& spec);

// Certified enclosure of sum_j c_j zeta^j of width <= 2^-p (1 + sum |c_j|).
RationalInterval eval_form(const std::vector<Rational>& coeffs, const RealTarget& target, int p);

enum class Ordering { Less, Greater, Equal, Undecided };
std::string to_string(Ordering o);

// A real number presented through refinable enclosures; calling it with a
// larger precision must return a subset.
using LazyInterval = std::function<RationalInterval(int bits)>;

constexpr int kDefaultPMax = 4096;
constexpr int kDefaultPStart = 64;

// Refines both operands, doubling the precision from p_start, until they
// separate or both collapse to the same rational point.
Ordering certified_compare(const LazyInterval& a, const LazyInterval& b, int p_max = kDefaultPMax,
                           int p_start = kDefaultPStart);

// Compares A(zeta) with B(zeta) for rational polynomials A, B. Exact
// equality is decided by remainder arithmetic modulo the minimal polynomial
// (algebraic targets) or exact evaluation (rational targets); otherwise
// falls back to interval refinement.
Ordering certified_compare_poly(const RealTarget& target, const RatPoly& a, const RatPoly& b,
                                int p_max = kDefaultPMax);

// True when P(zeta) == 0 exactly. Uses the minimal polynomial when known;
// for lacunary targets (transcendental) only the zero polynomial vanishes.
bool is_exact_root(const RealTarget& target, const RatPoly& p);

LazyInterval lazy_constant(const Rational& v);
LazyInterval lazy_target(const RealTarget& t);

} // namespace pgn
