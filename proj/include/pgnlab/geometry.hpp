#pragma once

#include "pgnlab/realnum.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgn {

using IVec = std::vector<long long>;

// Enclosure of base^(a/b) with relative width <= 2^-bits. base > 0.
RationalInterval rational_power(const Rational& base, const Rational& exponent, int bits);

// Parameter Q > 1 kept symbolically as base^exponent, so that Q^e for any
// rational e is base^(exponent*e) and can be enclosed exactly on demand.
struct QParam {
    Rational base = 10;
    Rational exponent = 1;

    static QParam exact(const Rational& q);
    static QParam power(const Rational& base, const Rational& exponent);
    // "100", "1e4", "3/2", "10^(7/2)", "10^3.5"
    static QParam parse(const std::string& text);

    RationalInterval pow(const Rational& e, int bits) const;
    long double pow_ld(const Rational& e) const;
    double ln() const;
    double log10() const { return ln() / 2.302585092994045684; }
    std::string to_string() const;
};

bool operator<(const QParam& a, const QParam& b);

// Q-grid 10^(k/den) for k in [k_lo, k_hi].
std::vector<QParam> q_grid(int k_lo, int k_hi, int den = 10);

// bound = factor * Q^q_exp
struct Bound {
    Rational factor = 1;
    Rational q_exp = 0;
    RationalInterval value(const QParam& q, int bits) const;
    RationalInterval inverse(const QParam& q, int bits) const;
    long double value_ld(const QParam& q) const;
    bool operator==(const Bound& o) const { return factor == o.factor && q_exp == o.q_exp; }
};

// |sum_i coeffs[i](zeta) * z_i| <= bound, over ambient coordinates z.
struct Form {
    std::vector<RatPoly> coeffs;
    Bound bound;
    std::string label;
};

enum class BodyFamily { Primal, LinearForm, Compressed, ChiA, ChiB, ChiC, Intersection };
std::string to_string(BodyFamily f);

struct BodySpec {
    BodyFamily family;
    int n;
    QParam Q;
    RealTarget target;
    Rational param;  // c for Compressed, R for ChiB
    std::vector<Form> forms;
    bool bounded;

    int dim() const { return n + 1; }
};

// Primal lives in the coordinates of the Lambda embedding, all other
// families in (x, y_1, ..., y_n).
BodySpec make_body(BodyFamily family, int n, const QParam& Q, const RealTarget& target,
                   const Rational& param = 0);
BodySpec intersect(const BodySpec& a, const BodySpec& b);

enum class LatticeTag { Lambda, LambdaStar, LambdaPlus };
std::string to_string(LatticeTag t);

struct Lattice {
    LatticeTag tag;
    RealTarget target;
    int n;

    // E with embed(v) = E v; entries are polynomials in zeta.
    std::vector<std::vector<RatPoly>> matrix() const;
};

// The lattice a family is measured against.
Lattice natural_lattice(const BodySpec& body);

std::vector<RationalInterval> embed(const Lattice& lattice, const IVec& coeffs, int bits = 128);
// Exact determinant of the embedding matrix as a polynomial in zeta.
RatPoly embedding_determinant(const Lattice& lattice);

// Fast and certified evaluation of the gauge of lattice points.
class GaugeEvaluator {
public:
    GaugeEvaluator(const BodySpec& body, const Lattice& lattice);

    int dim() const { return dim_; }
    int num_forms() const { return static_cast<int>(polys_.size()); }
    const BodySpec& body() const { return body_; }

    // Row i: values of form i on the unit vectors, divided by bound i.
    const std::vector<std::vector<long double>>& scaled_matrix() const { return F_; }

    long double gauge_ld(const IVec& v) const;
    // Upper bound on |gauge_ld(v) - gauge(v)|.
    long double gauge_error(const IVec& v) const;

    // sum_k v_k P_{i,k} as a polynomial in zeta.
    RatPoly form_poly(int i, const IVec& v) const;
    RationalInterval form_value(int i, const IVec& v, int bits) const;
    RationalInterval gauge(const IVec& v, int bits) const;
    LazyInterval lazy_gauge(const IVec& v) const;

    // Certified comparison of gauges; exact ties are detected symbolically
    // when both maxima are attained by forms with the same bound.
    Ordering compare(const IVec& a, const IVec& b, int p_max = kDefaultPMax) const;

    // Gauge as (bound of an attaining form, its value as a polynomial in zeta
    // reduced modulo the minimal polynomial). Equal keys mean equal gauges.
    struct ExactKey {
        Bound bound;
        RatPoly value;
        bool operator==(const ExactKey& o) const { return bound == o.bound && value == o.value; }
    };
    std::optional<ExactKey> exact_key(const IVec& v, int bits = 160) const;

private:
    RationalInterval inv_bound(int i, int bits) const;
    int unique_argmax(const IVec& v, int bits) const;

    BodySpec body_;
    int dim_;
    std::vector<std::vector<RatPoly>> polys_;  // polys_[i][k]
    std::vector<std::vector<long double>> F_;
    std::vector<long double> abs_row_max_;
    // inverse bounds at the precisions the comparison ladder uses
    static constexpr std::array<int, 5> kCachedBits{64, 128, 160, 256, 512};
    std::vector<std::vector<RationalInterval>> inv_cache_;
};

RationalInterval gauge(const BodySpec& body, const Lattice& lattice, const IVec& v, int bits = 128);

// Membership chain z in K* => z in K^v => z in (n+1) K*, where K = K(Q) is
// the Primal box, K* its polar (tested against the vertices of K) and K^v
// the box with reciprocal half-widths.
struct SandwichResult {
    Ordering polar;         // sum over vertex pairing vs 1
    Ordering box;           // reciprocal box gauge vs 1
    Ordering scaled_polar;  // polar pairing vs n+1
    bool consistent;        // no certified break of the chain
};
SandwichResult sandwich_check(const BodySpec& primal, const std::vector<RationalInterval>& z, int bits = 128);

// Forms as exact rationals plus symbolic Q exponents.
std::string body_to_json(const BodySpec& body);

} // namespace pgn
