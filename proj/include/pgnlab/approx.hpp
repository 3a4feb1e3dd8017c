#pragma once

#include "pgnlab/transfer.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pgn {

struct PolynomialRecord {
    IntPoly coeffs;              // constant term first
    Integer height;              // max |coefficient|
    RationalInterval value;      // |P(zeta)|
    RationalInterval derivative; // |P'(zeta)|
    RationalInterval ratio;      // |P(zeta) / P'(zeta)|
};

// Enclosures at `bits` precision. Throws TargetIsAlgebraicOfLowHeight when
// P(zeta) = 0 and InvalidParameter when P'(zeta) = 0, both decided exactly.
PolynomialRecord polynomial_record(const IntPoly& p, const RealTarget& target, int bits = 128);

// ((2H+1)^(n+1) - 1) / 2
Integer polynomial_count(int n, long H);

// Every nonzero integer polynomial of degree <= n and height <= H, one per
// +-pair (leading coefficient positive). Throws BudgetExceeded when
// (2H+1)^(n+1) exceeds `cap`.
void for_each_polynomial(int n, long H, const std::function<void(const IntPoly&)>& fn, double cap = 1e9);
std::vector<IntPoly> enumerate_polynomials(int n, long H, double cap = 1e9);

struct ApproxOptions {
    double budget = 1e9;  // max (2H+1)^n scanned coefficient tuples
    int threads = 0;      // 0 = default_threads()
    int bits = 128;
    int p_max = kDefaultPMax;
};

struct BestRatio {
    long H = 0;
    int n = 1;
    PolynomialRecord poly;  // content-primitive
    double wstar = 0;       // -log(ratio)/log H - 1
    double wstar_lo = 0, wstar_hi = 0;
    std::size_t scanned = 0;            // coefficient tuples visited
    std::size_t derivative_vanishes = 0;  // candidates skipped for P'(zeta) = 0
};

// Polynomial of degree <= n and height <= H minimising |P(zeta)/P'(zeta)|.
// For fixed higher coefficients the ratio is minimised by the constant term
// nearest -sum a_k zeta^k, so only (2H+1)^n tuples are scanned. Exact ties go
// to the lexicographically smaller coefficient vector.
BestRatio best_ratio(const RealTarget& target, int n, long H, const ApproxOptions& opt = {});

struct AlgebraicWitness {
    PolynomialRecord poly;
    RationalInterval root;      // isolates exactly one real root alpha of P
    RationalInterval distance;  // |zeta - alpha|
    IntPoly minimal;            // factor of P carrying alpha
    Integer height;             // H(alpha) = height(minimal)
    bool height_exact = true;   // false: reducible part of degree >= 4 not split
};

// Real root of P nearest to zeta, ties toward the smaller root. Throws
// NoRealRoot and InvalidParameter for constant P.
AlgebraicWitness nearest_root(const IntPoly& p, const RealTarget& target, int bits = 128);

// |zeta - alpha| <= deg(P) |P(zeta)/P'(zeta)| for the nearest real root.
// A breach is Inconclusive when P has non-real roots, which may be nearer.
Verdict acc_check(const IntPoly& p, const RealTarget& target, int bits = 128);

struct WStarRow {
    long H = 0;
    std::string error;  // nonempty when the cell could not be computed
    BestRatio best;
    double running_max = 0;
    bool ok() const { return error.empty(); }
};

struct WStarTable {
    int n = 1;
    std::string target_id;
    std::vector<WStarRow> rows;
    bool algebraic_low_height = false;  // some P(zeta) = 0: w* is infinite

    struct Evidence {
        double sup = 0, inf = 0;  // over the tail window of log H
        int rows = 0;
    };
    // Tail window log H >= f log H_max. Throws InsufficientData when empty.
    Evidence evidence(double window_fraction = 0.5) const;
};

// H must be strictly increasing and >= 2.
WStarTable wstar_profile(const RealTarget& target, int n, const std::vector<long>& H_grid,
                         const ApproxOptions& opt = {});
// 10^(k/den) rounded, k in [k_lo, k_hi], duplicates dropped.
std::vector<long> h_grid(int k_lo, int k_hi, int den = 2);

struct ConsistencyReport {
    int n = 1;
    std::string target_id;
    double wstar_sup = 0, wstar_inf = 0;
    double w_last_hat = 0;        // hat w_{n,n+1}
    double bugeaud_laurent = 0;
    std::vector<Verdict> verdicts;
};

// Checks w* >= w_{n,n+1}, w* >= 1/hat w'_n, hat w* >= 1/w'_n, w* <= w_n,
// w* >= (w_n+1)/2 and the Khinchin relation on measured estimates.
ConsistencyReport theorem_consistency_report(const ExponentReport& exponents, const WStarTable& wstar,
                                             const TransferOptions& opt = {});
// Computes the profiles and the w* table first.
ConsistencyReport theorem_consistency_report(const RealTarget& target, int n, const std::vector<QParam>& q_grid,
                                             const std::vector<long>& H_grid, const TransferOptions& topt = {},
                                             const ApproxOptions& aopt = {});

std::string record_to_json(const PolynomialRecord& r);
std::string witness_to_json(const AlgebraicWitness& w);
std::string wstar_to_json(const WStarTable& t);
std::string wstar_to_text(const WStarTable& t);
std::string consistency_to_json(const ConsistencyReport& r);
std::string consistency_to_text(const ConsistencyReport& r);

} // namespace pgn
