#pragma once

#include "pgnlab/interval.hpp"

#include <vector>

namespace pgn {

// Dense univariate polynomials, constant term first.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

int degree(const IntPoly& p);
int degree(const RatPoly& p);
void trim(IntPoly& p);
void trim(RatPoly& p);

RatPoly to_rational(const IntPoly& p);
// Clears denominators and removes the content; sign normalised so that the
// leading coefficient is positive.
IntPoly primitive_part(const RatPoly& p);
IntPoly primitive_part(const IntPoly& p);
Integer content(const IntPoly& p);
Integer height(const IntPoly& p);

Rational eval(const RatPoly& p, const Rational& x);
Rational eval(const IntPoly& p, const Rational& x);
int sign_at(const IntPoly& p, const Rational& x);
// Horner evaluation with outward rounding to `bits` significant bits.
RationalInterval eval(const RatPoly& p, const RationalInterval& x, int bits);

IntPoly derivative(const IntPoly& p);
RatPoly derivative(const RatPoly& p);
RatPoly add(const RatPoly& a, const RatPoly& b);
RatPoly sub(const RatPoly& a, const RatPoly& b);
RatPoly mul(const RatPoly& a, const RatPoly& b);
// Euclidean division; divisor must be nonzero.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly rem(const RatPoly& a, const RatPoly& b);
RatPoly gcd(const RatPoly& a, const RatPoly& b);
// p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);

// Sturm chain of a squarefree polynomial.
std::vector<RatPoly> sturm_chain(const IntPoly& p);
// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b);
// Cauchy bound: every root has |x| < bound.
Rational root_bound(const IntPoly& p);

// Disjoint isolating intervals, one per distinct real root, sorted
// ascending. Point intervals denote exact rational roots.
std::vector<RationalInterval> isolate_real_roots(const IntPoly& p);
// Shrinks an isolating interval of a squarefree p until width <= 2^-bits.
RationalInterval refine_root(const IntPoly& p, RationalInterval iv, int bits);

// All rational roots (rational root theorem), ascending, without repeats.
std::vector<Rational> rational_roots(const IntPoly& p);
// Number of real roots counted with multiplicity.
int real_root_count_with_multiplicity(const IntPoly& p);

std::string to_string(const IntPoly& p);

} // namespace pgn
