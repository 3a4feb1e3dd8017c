#pragma once

#include "pgnlab/geometry.hpp"

#include <string>
#include <vector>

namespace pgn {

enum class EnumStrategy {
    Auto,          // Window when its visit count is small, ReducedBasis otherwise
    Window,        // coordinate windows around round(zeta^t x) / round(-L(y))
    ReducedBasis,  // LLL-reduced basis + Fincke-Pohst ball enumeration
};

struct EnumOptions {
    EnumStrategy strategy = EnumStrategy::Auto;
    double budget = 1e8;           // max visited nodes
    double window_threshold = 1e5; // Auto picks Window below this estimate
};

// All nonzero lattice points with gauge <= cap, one per +-pair (first
// nonzero coordinate positive). May contain a few points whose gauge
// exceeds cap by less than the floating filter's error bound.
std::vector<IVec> enumerate_candidates(const BodySpec& body, const Lattice& lattice, double cap,
                                       const EnumOptions& opt = {});

struct MinimaRecord {
    int j = 0;
    RationalInterval lambda;
    double psi_lo = 0, psi_hi = 0;  // log_Q(lambda)
    IVec witness;

    double lambda_mid() const { return lambda.mid_double(); }
    double psi() const { return 0.5 * (psi_lo + psi_hi); }
};

struct MinimaOptions {
    EnumOptions enumeration;
    int bits = 128;             // enclosure precision of reported lambdas
    int p_max = kDefaultPMax;   // tie resolution
    bool compress_lines = true; // keep one point per line along the shortest basis vector
};

// First `count` successive minima by greedy selection over a complete
// candidate set; the cap starts at 1 and doubles.
std::vector<MinimaRecord> successive_minima(const BodySpec& body, const Lattice& lattice, int count,
                                            const MinimaOptions& opt = {});

struct ProfileRow {
    QParam Q;
    std::vector<MinimaRecord> minima;
    std::string error;  // nonempty when the row could not be computed

    bool ok() const { return error.empty(); }
};

struct ProfileTable {
    BodyFamily family = BodyFamily::Primal;
    int n = 1;
    std::string target_id;
    std::string grid_spec;
    std::vector<ProfileRow> rows;

    // psi midpoints of row r, j = 1..n+1
    double psi(std::size_t r, int j) const { return rows[r].minima[j - 1].psi(); }
    double log_q(std::size_t r) const { return rows[r].Q.ln(); }
};

// Worker count from PGNLAB_THREADS, else hardware concurrency.
int default_threads();

ProfileTable psi_profile(const RealTarget& target, int n, BodyFamily family, const std::vector<QParam>& grid,
                         const MinimaOptions& opt = {}, int threads = 0);

struct MinkowskiVerdict {
    RationalInterval product;
    Rational lower;        // 1/(n+1)!
    double log_sum_log_q;  // |sum_j nu*_j| log Q
};

// Certifies 1/(n+1)! <= prod_j lambda_j <= 1 for a full LinearForm row.
MinkowskiVerdict minkowski_check(const ProfileRow& row, int n);

std::string profile_to_csv(const ProfileTable& t);
std::string profile_to_json(const ProfileTable& t);
ProfileTable profile_from_csv(const std::string& text);

// Exact rank of integer vectors.
int integer_rank(const std::vector<IVec>& vs);

} // namespace pgn
