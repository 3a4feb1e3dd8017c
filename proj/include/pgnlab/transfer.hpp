#pragma once

#include "pgnlab/minima.hpp"

#include <limits>
#include <string>
#include <vector>

namespace pgn {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

struct Verdict {
    std::string name;
    std::string statement;  // the relation being tested, in words
    Status status = Status::Inconclusive;
    double lhs = 0, rhs = 0, tol = 0;
    std::string detail;
};

// Worst status wins: Fail > Inconclusive > Pass.
Status combine(const std::vector<Verdict>& vs);

struct LimitEstimate {
    int j = 0;
    double underline = 0;  // tail minimum
    double overline = 0;   // tail maximum
    double log10_q_lo = 0, log10_q_hi = 0;
    int rows = 0;
    double envelope_c = 0;     // least squares |psi| ~ C / log Q over the tail
    double envelope_at_max = 0;  // C / log Q_max
    // max |psi| log Q over the tail, divided by log Q at the window start:
    // how far the tail extremes may still sit from the limits
    double spread = 0;
    bool converged = false;
};

struct TransferOptions {
    double window_fraction = 0.5;  // tail window [Q_max^f, Q_max]
    double convergence = 0.05;     // envelope threshold
    double rel_tol = 0.05;         // identity checks
    double mixing_slack = 0.02;
    double mahler_lo = 1e-3, mahler_hi = 1e3;
    double mahler_trend = 0.1;     // max |slope| of log product against log Q
};

std::vector<LimitEstimate> estimate_limits(const ProfileTable& profile, double window_fraction = 0.5,
                                           double convergence = 0.05);

// (1 + w')(1 + psi) = (n+1)/n; psi = -1 gives +inf.
double exponent_from_psi(double psi, int n);
double psi_from_exponent(double w, int n);
// (w + 1)(1/n + nu) = (n+1)/n; nu = -1/n gives +inf.
double exponent_from_nu(double nu, int n);
double nu_from_exponent(double w, int n);
// Exact rational versions of the four maps.
Rational exponent_from_psi(const Rational& psi, int n);
Rational psi_from_exponent(const Rational& w, int n);
Rational exponent_from_nu(const Rational& nu, int n);
Rational nu_from_exponent(const Rational& w, int n);

struct PrimalExponents {
    std::vector<double> w_prime, w_prime_hat;  // index j-1
};
struct DualExponents {
    std::vector<double> w, w_hat;
};
PrimalExponents exponents_from_psi(const std::vector<LimitEstimate>& est, int n);
DualExponents exponents_from_nu(const std::vector<LimitEstimate>& est, int n);

// limsup over the tail of -log max_i |zeta^i x - y_i| / log |x| for the first
// minimum's witnesses of a Primal profile.
double direct_w_prime(const ProfileTable& primal, const RealTarget& target, double window_fraction = 0.5);

// a * b against 1, with inf * 0 = 1. Misses within rel_tol + uncertainty are
// inconclusive rather than failures.
Verdict reciprocal_pair(const std::string& name, double a, double b, double rel_tol, bool converged,
                        double uncertainty = 0);

struct ExponentReport {
    int n = 1;
    std::string target_id;
    bool refused = false;
    std::string refusal;
    std::vector<LimitEstimate> psi, nu;
    std::vector<double> w_prime, w_prime_hat, w, w_hat;  // index j-1
    double w_prime_direct = 0;
    std::vector<Verdict> verdicts;

    bool primal_converged() const;
    bool dual_converged() const;
};

// Algebraic targets of degree <= n are refused.
bool refuse_target(const RealTarget& target, int n, std::string* why = nullptr);

ExponentReport exponent_report(const RealTarget& target, int n, const ProfileTable& primal, const ProfileTable& dual,
                               const TransferOptions& opt = {});

std::vector<Verdict> reciprocal_identity_check(const ExponentReport& r, double rel_tol = 0.05);
std::vector<Verdict> mahler_check(const ProfileTable& primal, const ProfileTable& dual, const TransferOptions& opt = {});
// Contact events of psi_j and psi_{j+1}, plus the liminf/limsup consequence.
std::vector<Verdict> mixing_check(const ProfileTable& profile, const TransferOptions& opt = {});
std::vector<Verdict> minkowski_verdicts(const ProfileTable& dual);

struct MixingContacts {
    std::vector<int> count;  // index j-1, j = 1..n
    double resolution = 0;   // allowed |log lambda_{j+1} - log lambda_j|
};
MixingContacts mixing_contacts(const ProfileTable& profile);

struct UniformBound {
    int n = 2;
    RationalInterval value;  // (n+1+sqrt(n^2+10n-7))/4
    double deviation = 0;    // value - (n/2 + 3/2)
    double crossing = 0;     // w_{n,n+1} where the two lower bounds meet
};
UniformBound uniform_lower_bound(int n);
struct UniformTable {
    std::vector<UniformBound> rows;
    std::vector<Verdict> verdicts;  // |deviation| decreasing, |deviation| at n_hi, (n+1)/2 floor
};
// Rows n = n_lo..n_hi, n_lo >= 2.
UniformTable uniform_table(int n_lo = 2, int n_hi = 50);
std::string uniform_table_to_json(const UniformTable& t);
std::string uniform_table_to_text(const UniformTable& t);
// (n+1)/2 / (1 - 2/(n-1) (n-w)/(w+1)), the Wirsing-based bound in terms of w = w_{n,n+1}.
double wirsing_branch(int n, double w);

struct Floors {
    double wirsing = 0;          // (w_n + 1)/2
    double generic = 0;          // (n+1)/2
    double psi_star_last = 0;    // (n - w_{n,n+1}) / (n (w_{n,n+1} + 1))
    double bugeaud_laurent = 0;  // max{w_n/(w_n - n + 1), hat w_{n,n+1}}
    double khinchin = 0;         // (n-1) w'_n + n - 2
    double half_degree = 0;      // ceil(n/2)
    std::vector<Verdict> verdicts;
};
Floors classical_floors(int n, const ExponentReport& r, const TransferOptions& opt = {});

std::string report_to_json(const ExponentReport& r);
std::string report_to_text(const ExponentReport& r);
std::string verdicts_to_json(const std::vector<Verdict>& vs);
std::string verdicts_to_text(const std::vector<Verdict>& vs);

} // namespace pgn
