// Acceptance battery: one PASS/FAIL line per criterion. Oracles are
// independent of the library: MPFR (via Boost.Multiprecision) for targets
// and gauges, Eigen companion matrices for polynomial roots, and a plain
// Monte Carlo sampler for slab volumes.
//
// Usage: acceptance [criterion ...]   (default: all)

#include "pgnlab/approx.hpp"
#include "pgnlab/errors.hpp"
#include "pgnlab/transfer.hpp"
#include "pgnlab/volume.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pgn;
using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<180>>;

namespace {

const char* const kPhi = "alg:-1,-1,1@[1,2]";
const char* const kSqrt2 = "alg:-2,0,1@[1,2]";
const char* const kCbrt2 = "alg:-2,0,0,1@[1,2]";
const char* const kLiouville = "lac:10,factorial";
const std::vector<std::string> kTargets{kPhi, kSqrt2, kCbrt2, kLiouville};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- oracles

// zeta to about 600 bits from closed forms. The lacunary tail beyond l = 5
// is below 10^-700.
Big oracle_zeta(const std::string& spec) {
    if (spec == kPhi) return (1 + sqrt(Big(5))) / 2;
    if (spec == kSqrt2) return sqrt(Big(2));
    if (spec == kCbrt2) return cbrt(Big(2));
    if (spec == kLiouville) {
        Big s = 0;
        long f = 1;
        for (int l = 1; l <= 5; ++l) {
            f *= l;
            s += pow(Big(10), -f);
        }
        return s;
    }
    throw std::runtime_error("no oracle for " + spec);
}

Big to_big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

// Q = 10^(k/10)
Big oracle_q(int k) { return pow(Big(10), Big(k) / 10); }

int exact_rank(std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::vector<std::vector<Integer>> m;
    for (auto& r : rows) {
        std::vector<Integer> v;
        for (auto x : r) v.push_back(Integer(static_cast<long>(x)));
        m.push_back(v);
    }
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        int p = -1;
        for (std::size_t i = rank; i < m.size(); ++i)
            if (m[i][c] != 0) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            Integer a = m[rank][c], b = m[i][c];
            for (std::size_t k = 0; k < cols; ++k) m[i][k] = a * m[i][k] - b * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Successive minima by a naive scan. Primal: gauge of (x, y) is
// max(|x|/Q, |zeta^i x - y_i| Q^(1/n)); LinearForm: max(|y_t|/Q^(1/n),
// |x + sum y_t zeta^t| Q). Candidates come from a long double filter with a
// generous margin and are ordered by their 600-bit gauges.
std::vector<Big> naive_minima(BodyFamily fam, int n, const Big& zeta, const Big& Q) {
    long double Ql = static_cast<long double>(Q);
    long double s = std::pow(Ql, 1.0L / n);
    Big sQ = pow(Q, Big(1) / n);
    std::vector<Big> zp{Big(1)};
    for (int t = 1; t <= n; ++t) zp.push_back(zp.back() * zeta);
    std::vector<long double> zpl;
    for (auto& z : zp) zpl.push_back(static_cast<long double>(z));

    auto gauge = [&](const std::vector<long long>& v) {
        Big g = 0;
        if (fam == BodyFamily::Primal) {
            g = abs(Big(v[0])) / Q;
            for (int i = 1; i <= n; ++i) g = std::max(g, Big(abs(zp[i] * v[0] - v[i]) * sQ));
        } else {
            Big L = v[0];
            for (int t = 1; t <= n; ++t) {
                g = std::max(g, Big(abs(Big(v[t])) / sQ));
                L += v[t] * zp[t];
            }
            g = std::max(g, Big(abs(L) * Q));
        }
        return g;
    };

    for (double cap = 1;; cap *= 2) {
        std::vector<std::vector<long long>> cands;
        long double margin = cap * (1 + 1e-9L);
        auto keep = [&](const std::vector<long long>& v) {
            bool zero = std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; });
            if (!zero) cands.push_back(v);
        };
        if (fam == BodyFamily::Primal) {
            long long X = static_cast<long long>(std::floor(margin * Ql));
            for (long long x = 0; x <= X; ++x) {
                std::vector<long long> lo(n + 1), hi(n + 1);
                for (int i = 1; i <= n; ++i) {
                    lo[i] = static_cast<long long>(std::ceil(zpl[i] * x - margin / s));
                    hi[i] = static_cast<long long>(std::floor(zpl[i] * x + margin / s));
                }
                std::vector<long long> v(n + 1);
                v[0] = x;
                std::function<void(int)> rec = [&](int i) {
                    if (i > n) {
                        keep(v);
                        return;
                    }
                    for (long long y = lo[i]; y <= hi[i]; ++y) {
                        v[i] = y;
                        rec(i + 1);
                    }
                };
                rec(1);
            }
        } else {
            long long Y = static_cast<long long>(std::floor(margin * s));
            std::vector<long long> v(n + 1);
            std::function<void(int)> rec = [&](int t) {
                if (t > n) {
                    long double L = 0;
                    for (int k = 1; k <= n; ++k) L += v[k] * zpl[k];
                    long long x0 = static_cast<long long>(std::ceil(-L - margin / Ql));
                    long long x1 = static_cast<long long>(std::floor(-L + margin / Ql));
                    for (long long x = x0; x <= x1; ++x) {
                        v[0] = x;
                        keep(v);
                    }
                    return;
                }
                for (long long y = -Y; y <= Y; ++y) {
                    v[t] = y;
                    rec(t + 1);
                }
            };
            rec(1);
        }
        std::vector<std::pair<Big, std::vector<long long>>> pts;
        for (auto& v : cands) {
            Big g = gauge(v);
            if (g <= cap) pts.emplace_back(g, v);
        }
        std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::vector<long long>> basis;
        std::vector<Big> lambda;
        for (auto& p : pts) {
            basis.push_back(p.second);
            if (exact_rank(basis) == static_cast<int>(basis.size())) {
                lambda.push_back(p.first);
                if (static_cast<int>(lambda.size()) == n + 1) return lambda;
            } else {
                basis.pop_back();
            }
        }
        if (cap > 1e6) throw std::runtime_error("naive scan did not find n+1 minima");
    }
}

// Engine enclosure contains the oracle value (to the oracle's 2^-500
// relative accuracy) and is itself narrow.
bool certified_equal(const RationalInterval& engine, const Big& oracle) {
    Big lo = to_big(engine.lo), hi = to_big(engine.hi);
    Big slack = abs(oracle) * pow(Big(2), -500);
    bool contains = lo - slack <= oracle && oracle <= hi + slack;
    bool narrow = (hi - lo) <= abs(oracle) * pow(Big(2), -100);
    return contains && narrow;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// -------------------------------------------------------------- criteria

// 1. 1/(n+1)! <= prod eta*_j <= 1 certified on every row.
Outcome minkowski_bounds() {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    int rows = 0, certified = 0;
    auto grid = q_grid(10, 50, 10);
    for (const auto& spec : kTargets) {
        auto t = parse_target(spec);
        for (int n = 1; n <= 3; ++n) {
            auto prof = psi_profile(t, n, BodyFamily::LinearForm, grid);
            Rational lower(1, 1);
            for (int k = 2; k <= n + 1; ++k) lower /= k;
            for (const auto& row : prof.rows) {
                ++rows;
                if (!row.ok() || static_cast<int>(row.minima.size()) != n + 1) continue;
                // product of the enclosures, recomputed here
                RationalInterval p = RationalInterval::point(1);
                for (const auto& m : row.minima) p = p * m.lambda;
                if (p.lo >= lower && p.hi <= 1) ++certified;
            }
        }
    }
    double secs = seconds_since(t0);
    o.pass = certified == rows && rows == 4 * 3 * 41 && secs <= 600;
    o.detail = fmt("%d/%d rows certified, %.1f s (limit 600 s)", certified, rows, secs);
    return o;
}

// 2. lambda_{n,j} equal to a naive scan, n <= 2, Q <= 10^3.
Outcome naive_oracle() {
    Outcome o;
    int rows = 0, matched = 0;
    std::string first_bad;
    auto grid = q_grid(10, 30, 10);
    for (const auto& spec : kTargets) {
        auto t = parse_target(spec);
        Big zeta = oracle_zeta(spec);
        for (int n = 1; n <= 2; ++n)
            for (auto fam : {BodyFamily::Primal, BodyFamily::LinearForm}) {
                auto prof = psi_profile(t, n, fam, grid);
                for (std::size_t r = 0; r < prof.rows.size(); ++r) {
                    ++rows;
                    const auto& row = prof.rows[r];
                    auto naive = naive_minima(fam, n, zeta, oracle_q(static_cast<int>(r) + 10));
                    bool ok = row.ok() && row.minima.size() == naive.size();
                    for (std::size_t j = 0; ok && j < naive.size(); ++j)
                        ok = certified_equal(row.minima[j].lambda, naive[j]);
                    if (ok)
                        ++matched;
                    else if (first_bad.empty())
                        first_bad = fmt("; first mismatch %s n=%d %s Q=%s", spec.c_str(), n, to_string(fam).c_str(),
                                        row.Q.to_string().c_str());
                }
            }
    }
    o.pass = matched == rows;
    o.detail = fmt("%d/%d rows equal (4 targets, n = 1, 2, both families, 21 Q values)", matched, rows) + first_bad;
    return o;
}

// 3. Golden ratio, n = 1, Q up to 10^6.
Outcome golden_ratio() {
    Outcome o;
    auto t = parse_target(kPhi);
    auto grid = q_grid(10, 60, 10);
    auto primal = psi_profile(t, 1, BodyFamily::Primal, grid);
    auto dual = psi_profile(t, 1, BodyFamily::LinearForm, grid);
    long double zeta = static_cast<long double>(oracle_zeta(kPhi));

    // envelope: C_j = max |psi_j| ln Q must not grow from Q < 10^3 to Q >= 10^3
    double c_head[2] = {0, 0}, c_tail[2] = {0, 0};
    double psi_under[2] = {1e9, 1e9}, nu_over[2] = {-1e9, -1e9}, w_direct = -1e9;
    for (std::size_t r = 0; r < primal.rows.size(); ++r) {
        double lq = primal.log_q(r);
        bool tail = primal.rows[r].Q.log10() >= 3 - 1e-9;
        for (int j = 1; j <= 2; ++j) {
            double c = std::fabs(primal.psi(r, j)) * lq;
            double& slot = tail ? c_tail[j - 1] : c_head[j - 1];
            slot = std::max(slot, c);
            if (tail) {
                psi_under[j - 1] = std::min(psi_under[j - 1], primal.psi(r, j));
                nu_over[j - 1] = std::max(nu_over[j - 1], dual.psi(r, j));
            }
        }
        if (tail) {
            const auto& w = primal.rows[r].minima[0].witness;
            long double x = std::fabs(static_cast<long double>(w[0]));
            long double err = std::fabs(zeta * w[0] - w[1]);
            if (x > 1 && err > 0) w_direct = std::max(w_direct, static_cast<double>(-std::log(err) / std::log(x)));
        }
    }
    bool env = std::isfinite(c_head[0]) && std::isfinite(c_head[1]) && c_tail[0] <= 1.1 * c_head[0] &&
               c_tail[1] <= 1.1 * c_head[1];
    double transfer = (1 + w_direct) * (1 + psi_under[0]);
    bool tr = std::fabs(transfer / 2 - 1) <= 0.05;
    // w'_{1,2} from liminf psi_2, hat w_{1,1} from limsup nu*_1
    double wp2 = 2 / (1 + psi_under[1]) - 1;
    double wh1 = 2 / (1 + nu_over[0]) - 1;
    double recip = wp2 * wh1;
    bool rc = std::fabs(recip - 1) <= 0.10;
    o.pass = env && tr && rc;
    o.detail = fmt("C = %.3g, %.3g (tail %.3g, %.3g) %s; (1+w')(1+psi_1) = %.4f with w' = %.4f %s; "
                   "w'_{1,2} hat w_{1,1} = %.4f %s",
                   c_head[0], c_head[1], c_tail[0], c_tail[1], env ? "ok" : "GROWS", transfer, w_direct,
                   tr ? "ok" : "OFF", recip, rc ? "ok" : "OFF");
    return o;
}

// 4. Mixing: a contact per adjacent pair, and liminf psi_{j+1} <= limsup psi_j + 0.02.
Outcome mixing() {
    Outcome o;
    auto grid = q_grid(10, 50, 10);
    int pairs = 0, good = 0;
    std::string bad;
    for (const auto& spec : kTargets) {
        auto t = parse_target(spec);
        for (int n = 1; n <= 3; ++n) {
            if (refuse_target(t, n)) continue;
            for (auto fam : {BodyFamily::Primal, BodyFamily::LinearForm}) {
                auto prof = psi_profile(t, n, fam, grid);
                double res = (1 + 1.0 / n) * (std::log(10.0) / 10) / 2;
                for (int j = 1; j <= n; ++j) {
                    ++pairs;
                    int contacts = 0;
                    double under_next = 1e9, over_this = -1e9;
                    for (std::size_t r = 0; r < prof.rows.size(); ++r) {
                        const auto& m = prof.rows[r].minima;
                        double gap = std::log(m[j].lambda.hi_up()) - std::log(m[j - 1].lambda.lo_down());
                        if (gap <= res) ++contacts;
                        if (prof.rows[r].Q.log10() >= 2.5 - 1e-9) {
                            under_next = std::min(under_next, prof.psi(r, j + 1));
                            over_this = std::max(over_this, prof.psi(r, j));
                        }
                    }
                    bool ok = contacts >= 1 && under_next <= over_this + 0.02;
                    if (ok)
                        ++good;
                    else
                        bad += fmt("; %s n=%d %s j=%d: %d contacts, %.4f vs %.4f", spec.c_str(), n,
                                   to_string(fam).c_str(), j, contacts, under_next, over_this);
                }
            }
        }
    }
    o.pass = good == pairs;
    o.detail = fmt("%d/%d adjacent pairs (targets outside the refusal policy, n <= 3, both families)", good, pairs) +
               bad;
    return o;
}

// 5. Exact slab volume against Monte Carlo.
Outcome volume_kernel() {
    Outcome o;
    std::mt19937_64 gen(20240601);
    int instances = 0, within = 0;
    double worst = 0;
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k < 50; ++k) {
            std::vector<Rational> b;
            std::vector<double> bd;
            std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
            double norm = 0;
            for (int i = 0; i < n; ++i) {
                int p = num(gen);
                if (p == 0) p = 1;
                Rational q(p, den(gen));
                q.canonicalize();
                b.push_back(q);
                bd.push_back(q.get_d());
                norm += std::fabs(q.get_d());
            }
            std::uniform_int_distribution<int> rn(1, 200);
            Rational rho(Rational(static_cast<long>(rn(gen))) * Rational(norm) / 200);
            rho.canonicalize();
            double exact = slab_cube_volume(b, rho).get_d();
            double r = rho.get_d();
            std::uniform_real_distribution<double> U(-1, 1);
            const long samples = 1000000;
            long hits = 0;
            for (long s = 0; s < samples; ++s) {
                double dot = 0;
                for (double x : bd) dot += x * U(gen);
                if (std::fabs(dot) <= r) ++hits;
            }
            double p = static_cast<double>(hits) / samples, scale = std::ldexp(1.0, n);
            double est = scale * p, sigma = scale * std::sqrt(p * (1 - p) / samples);
            double z = sigma > 0 ? std::fabs(est - exact) / sigma : (est == exact ? 0 : 1e9);
            worst = std::max(worst, z);
            ++instances;
            if (z <= 4) ++within;
        }
    bool a1 = slab_cube_volume({Rational(1), Rational(2)}, Rational(1)) == 2;
    bool a2 = true, a3 = true;
    for (int n = 1; n <= 6; ++n) {
        std::vector<Rational> b(n, Rational(1));
        a2 = a2 && slab_cube_volume(b, Rational(n)) == Rational(1 << n);
        a3 = a3 && slab_cube_volume(b, Rational(0)) == 0;
    }
    o.pass = within == instances && a1 && a2 && a3;
    o.detail = fmt("%d/%d instances within 4 sigma (worst %.2f sigma, 10^6 samples each); V((1,2),1)=2 %s, "
                   "saturation %s, V(.,0)=0 %s",
                   within, instances, worst, a1 ? "exact" : "WRONG", a2 ? "exact" : "WRONG", a3 ? "exact" : "WRONG");
    return o;
}

// 6. Compression constant: residual, Q-independence, lemma band.
Outcome compression() {
    Outcome o;
    auto grid = q_grid(10, 50, 10);
    double worst_res = 0, worst_logq = 0;
    bool identical = true, band = true, mc_ok = true;
    std::string info;
    for (const auto& spec : {std::string(kPhi), std::string(kCbrt2), std::string(kLiouville)})
        for (int n = 2; n <= 3; ++n) {
            auto t = parse_target(spec);
            CompressionSolution first;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                auto s = solve_compression(n, grid[i], t);
                double res = std::max(std::fabs(s.residual.lo.get_d()), std::fabs(s.residual.hi.get_d()));
                worst_res = std::max(worst_res, res);
                if (i == 0) {
                    first = s;
                    continue;
                }
                if (!(s.c.lo == first.c.lo && s.c.hi == first.c.hi)) identical = false;
                double lq = std::fabs(std::log(s.c.mid_double() / first.c.mid_double())) / grid[i].ln();
                worst_logq = std::max(worst_logq, lq);
            }
            // the slab |sum t zeta^(t-1) u_t| <= c holds half the target volume of the cube
            std::vector<double> b;
            Big zeta = oracle_zeta(spec);
            for (int k = 1; k <= n; ++k) b.push_back(static_cast<double>(k * pow(zeta, k - 1)));
            std::mt19937_64 gen(1000 + n);
            std::uniform_real_distribution<double> U(-1, 1);
            const long samples = 1000000;
            long hits = 0;
            double c = first.c.mid_double();
            for (long k = 0; k < samples; ++k) {
                double dot = 0;
                for (double x : b) dot += x * U(gen);
                if (std::fabs(dot) <= c) ++hits;
            }
            double pr = static_cast<double>(hits) / samples, scale = std::ldexp(1.0, n);
            double z = std::fabs(scale * pr - first.target_volume.get_d() / 2) /
                       (scale * std::sqrt(pr * (1 - pr) / samples));
            mc_ok = mc_ok && z <= 4;
            auto sw = lemma_sweep(n, t, grid, log_spaced(1e-3, 1, 7), default_threads());
            bool ok = sw.F > 0 && sw.E >= sw.F && std::isfinite(sw.E) && sw.B > 0;
            band = band && ok;
            info += fmt("; %s n=%d c=%.6g E=%.4g F=%.4g B=%.4g", spec.c_str(), n, first.c.mid_double(), sw.E, sw.F,
                        sw.B);
        }
    bool res_ok = worst_res < std::ldexp(1.0, -50);
    o.pass = res_ok && identical && band && mc_ok && worst_logq <= 1e-15;
    o.detail = fmt("max residual %.3g (< 2^-50 %s), c identical over 41 Q %s, max |log_Q c(Q)/c(Q0)| %.2g, "
                   "Monte Carlo volume at c within 4 sigma %s, lemma band %s",
                   worst_res, res_ok ? "ok" : "NO", identical ? "yes" : "NO", worst_logq, mc_ok ? "yes" : "NO",
                   band ? "finite" : "BROKEN") +
               info;
    return o;
}

// 7. Root proximity on random polynomials whose nearest root is real.
Outcome root_proximity() {
    Outcome o;
    std::mt19937_64 gen(77);
    std::uniform_int_distribution<int> coeff(-20, 20), deg(1, 5), zn(-300, 300), zd(1, 97);
    int cases = 0, violations = 0, uncertified = 0, oracle_disagree = 0;
    while (cases < 1000) {
        int d = deg(gen);
        IntPoly p;
        for (int i = 0; i <= d; ++i) p.push_back(Integer(coeff(gen)));
        if (p.back() == 0) p.back() = 1;
        Rational z(zn(gen), zd(gen));
        z.canonicalize();
        // roots by the companion matrix
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) C(0, i) = -p[d - 1 - i].get_d() / p[d].get_d();
        for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
        Eigen::VectorXcd roots = C.eigenvalues();
        double zd_ = z.get_d(), best = 1e300;
        std::complex<double> nearest;
        for (int i = 0; i < d; ++i)
            if (std::abs(roots[i] - zd_) < best) best = std::abs(roots[i] - zd_), nearest = roots[i];
        if (std::fabs(nearest.imag()) > 1e-6 * std::max(1.0, std::abs(nearest))) continue;
        double pv = 0, dv = 0;
        for (int i = d; i >= 0; --i) pv = pv * zd_ + p[i].get_d();
        for (int i = d; i >= 1; --i) dv = dv * zd_ + i * p[i].get_d();
        if (pv == 0 || dv == 0) continue;  // exact roots and critical points carry no ratio
        auto t = RealTarget::rational(z);
        Verdict v;
        try {
            v = acc_check(p, t);
        } catch (const Error&) {
            continue;
        }
        ++cases;
        if (v.status == Status::Fail) ++violations;
        if (v.status != Status::Pass) ++uncertified;
        if (best > d * std::fabs(pv / dv) * (1 + 1e-9)) ++oracle_disagree;
    }
    // linear: |zeta - alpha| = |P(zeta)/P'(zeta)|
    int linear = 0, linear_ok = 0;
    for (int k = 0; k < 200; ++k) {
        int a = coeff(gen), b = coeff(gen);
        if (a == 0) a = 7;
        IntPoly p{Integer(b), Integer(a)};
        for (const auto& spec : {std::string(kSqrt2), std::string(kCbrt2), std::string(kLiouville)}) {
            auto t = parse_target(spec);
            auto w = nearest_root(p, t);
            auto r = polynomial_record(p, t);
            double dist = w.distance.mid_double(), ratio = r.ratio.mid_double();
            ++linear;
            if (std::fabs(dist - ratio) <= 1e-10 * ratio) ++linear_ok;
        }
    }
    o.pass = violations == 0 && uncertified == 0 && oracle_disagree == 0 && linear_ok == linear;
    o.detail = fmt("%d cases: %d certified violations, %d not certified, %d floating-oracle violations; linear "
                   "equality to 10 digits %d/%d",
                   cases, violations, uncertified, oracle_disagree, linear_ok, linear);
    return o;
}

// 8. w*(sqrt 2, H).
Outcome wstar_sqrt2() {
    Outcome o;
    auto t = parse_target(kSqrt2);
    Big zeta = oracle_zeta(kSqrt2);
    // the full scan of the 12 pairs +-P of height <= 2 and degree <= 1
    int scanned = 0;
    Big best = -1;
    for (int a1 = 0; a1 <= 2; ++a1)
        for (int a0 = -2; a0 <= 2; ++a0) {
            if (a1 == 0 && a0 <= 0) continue;
            ++scanned;
            if (a1 == 0) continue;  // P' = 0, no ratio
            Big ratio = abs((a0 + a1 * zeta) / a1);
            if (best < 0 || ratio < best) best = ratio;
        }
    double oracle = static_cast<double>(-log(best) / log(Big(2)) - 1);
    double engine = best_ratio(t, 1, 2).wstar;
    bool agree = std::fabs(oracle - engine) <= 1e-12;
    bool value = std::fabs(engine - 2.543) <= 0.001;

    auto table = wstar_profile(t, 1, h_grid(1, 8, 2));
    auto ev = table.evidence(0.5);
    bool tail = ev.inf >= 0.8 && ev.sup <= 1.3;
    o.pass = agree && value && tail;
    o.detail = fmt("H=2: engine %.6f, %d-candidate oracle %.6f (%s), expected 2.543 +- 0.001: %s; tail H in "
                   "[10^2, 10^4] (%d rows) spans [%.4f, %.4f] within [0.8, 1.3]: %s",
                   engine, scanned, oracle, agree ? "agree" : "DISAGREE", value ? "yes" : "NO", ev.rows, ev.inf,
                   ev.sup, tail ? "yes" : "NO");
    return o;
}

// 9. U(n) table.
Outcome uniform() {
    Outcome o;
    Big u2 = (3 + sqrt(Big(17))) / 4, u3 = 1 + sqrt(Big(2));
    auto a = uniform_lower_bound(2), b = uniform_lower_bound(3);
    double e2 = static_cast<double>(abs(to_big(a.value.lo) - u2) / u2);
    double e3 = static_cast<double>(abs(to_big(b.value.lo) - u3) / u3);
    bool digits = e2 <= 1e-12 && e3 <= 1e-12 && to_big(a.value.lo) <= u2 && u2 <= to_big(a.value.hi) &&
                  to_big(b.value.lo) <= u3 && u3 <= to_big(b.value.hi);
    bool dec = true, floor = true;
    double prev = 1e9, last = 0;
    for (int n = 2; n <= 50; ++n) {
        Big un = (n + 1 + sqrt(Big(n * n + 10 * n - 7))) / 4;
        auto u = uniform_lower_bound(n);
        double dev = std::fabs(static_cast<double>(to_big(u.value.lo) - (Big(n) / 2 + Big(3) / 2)));
        if (!(dev < prev)) dec = false;
        prev = dev;
        last = dev;
        if (!(to_big(u.value.lo) >= Big(n + 1) / 2)) floor = false;
        if (!(to_big(u.value.lo) <= un && un <= to_big(u.value.hi))) digits = false;
    }
    o.pass = digits && dec && floor && last < 0.1;
    o.detail = fmt("U(2), U(3) to 12 digits %s (rel err %.1e, %.1e); |U(n) - (n/2+3/2)| decreasing on 2..50 %s, "
                   "%.4f at n=50 (< 0.1 %s); U(n) >= (n+1)/2 %s",
                   digits ? "yes" : "NO", e2, e3, dec ? "yes" : "NO", last, last < 0.1 ? "yes" : "NO",
                   floor ? "yes" : "NO");
    return o;
}

// 10. Theorem consistency and the Liouville regime.
Outcome consistency() {
    Outcome o;
    auto grid = q_grid(10, 50, 10);
    auto hs = h_grid(1, 6, 2);
    int fails = 0, total = 0;
    std::string info;
    for (const auto& spec : {std::string(kSqrt2), std::string(kCbrt2)}) {
        auto t = parse_target(spec);
        auto r = theorem_consistency_report(t, 2, grid, hs);
        int f = 0, inc = 0;
        for (const auto& v : r.verdicts) {
            ++total;
            if (v.status == Status::Fail) ++f;
            if (v.status == Status::Inconclusive) ++inc;
        }
        fails += f;
        info += fmt("; %s: %zu verdicts, %d fail, %d inconclusive", spec.c_str(), r.verdicts.size(), f, inc);
    }
    auto t = parse_target(kLiouville);
    auto primal = psi_profile(t, 2, BodyFamily::Primal, grid);
    auto dual = psi_profile(t, 2, BodyFamily::LinearForm, grid);
    auto rep = exponent_report(t, 2, primal, dual);
    auto fl = classical_floors(2, rep);
    double what = rep.w_hat[2], bl = fl.bugeaud_laurent;
    bool weak = std::fabs(what) <= 0.1 && std::fabs(bl - 1) <= 0.05;
    o.pass = fails == 0 && weak;
    o.detail = fmt("%d hard failures over %d verdicts", fails, total) + info +
               fmt("; Liouville n=2: hat w_{2,3} = %.4f (expected about 0), Bugeaud-Laurent term = %.4f (expected "
                   "1): %s",
                   what, bl, weak ? "reproduced" : "NOT reproduced at Q <= 10^5");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        Outcome (*run)();
    };
    const std::vector<Criterion> all{
        {1, "Minkowski bounds on every row", minkowski_bounds},
        {2, "minima equal a naive scan", naive_oracle},
        {3, "golden ratio transference", golden_ratio},
        {4, "mixing of consecutive minima", mixing},
        {5, "slab volume against Monte Carlo", volume_kernel},
        {6, "compression constant", compression},
        {7, "root proximity", root_proximity},
        {8, "w*(sqrt 2, H)", wstar_sqrt2},
        {9, "U(n) table", uniform},
        {10, "theorem consistency battery", consistency},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
