#pragma once

#include "pgnlab/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pgn {

// {u in [-1,1]^n : |b.u| <= rho}
struct SlabCubeInstance {
    std::vector<RationalInterval> b;
    RationalInterval rho;

    static SlabCubeInstance exact(const std::vector<Rational>& b, const Rational& rho);
};

// Exact volume for rational data.
Rational slab_cube_volume(const std::vector<Rational>& b, const Rational& rho);
// Enclosure for interval data. The volume is nondecreasing in rho and
// nonincreasing in every |b_t|, so the endpoints are exact volumes.
RationalInterval slab_cube_volume(const SlabCubeInstance& inst);

// Slab normal in cube coordinates, b_t = t zeta^(t-1).
std::vector<RationalInterval> derivative_normal(int n, const RealTarget& target, int bits = 200);

// Volume of K+(Q) cut by |P'(zeta)| <= c Q^(1/n). Independent of Q.
RationalInterval compressed_volume(int n, const QParam& Q, const RealTarget& target, const Rational& c,
                                   int bits = 200);

struct CompressionSolution {
    QParam Q;
    RationalInterval c;
    Rational target_volume;  // 2^(n+1) / (2 (n+1)!)
    RationalInterval residual;
    int iterations = 0;
};

CompressionSolution solve_compression(int n, const QParam& Q, const RealTarget& target);

struct LemmaRatio {
    QParam Q;
    Rational R;
    RationalInterval rho;    // R Q^(-1/n)
    RationalInterval vol;    // vol(chi_A(Q) & chi_B(R) & chi_C(Q))
    RationalInterval ratio;  // vol Q^(1/n) / R
    bool saturated = false;
};

LemmaRatio lemma_ratio(int n, const QParam& Q, const Rational& R, const RealTarget& target);

struct LemmaSweep {
    int n = 2;
    std::string target_id;
    std::vector<LemmaRatio> rows;
    double E = 0;  // max ratio over non-saturated rows
    double F = 0;  // min ratio
    double B = 0;  // 2^(n+1) / (2 (n+1)! E)
};

// R is chosen per Q so that rho runs over `rhos` (approximately; the exact
// rho of every row is recorded).
LemmaSweep lemma_sweep(int n, const RealTarget& target, const std::vector<QParam>& grid,
                       const std::vector<double>& rhos, int threads = 1);
std::vector<double> log_spaced(double lo, double hi, int count);
std::string sweep_to_csv(const LemmaSweep& s);

struct MonteCarloEstimate {
    double estimate = 0;
    double sigma = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
};

MonteCarloEstimate monte_carlo_volume(const std::vector<double>& b, double rho, std::uint64_t samples,
                                      std::uint64_t seed);

} // namespace pgn
