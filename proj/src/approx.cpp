#include "pgnlab/approx.hpp"
#include "pgnlab/errors.hpp"
#include "report_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace pgn {

namespace {

using json = nlohmann::json;
using namespace detail;

long double to_ld(const Rational& r) {
    double d = r.get_d();
    if (!std::isfinite(d)) return d;
    Rational rest = r - Rational(d);
    return static_cast<long double>(d) + static_cast<long double>(rest.get_d());
}

// Nonzero enclosure of sum c_j zeta^j; nullopt when the value is exactly 0.
std::optional<RationalInterval> nonzero_value(const RatPoly& p, const RealTarget& target, int bits) {
    for (int b = bits; b <= kDefaultPMax; b *= 2) {
        RationalInterval v = eval_form(p, target, b);
        if (!v.contains_zero()) return v;
        if (is_exact_root(target, p)) return std::nullopt;
    }
    throw NonConvergent("cannot separate a polynomial value from zero");
}

enum class RecordStatus { Ok, ValueZero, DerivativeZero };

RecordStatus try_record(const IntPoly& p, const RealTarget& target, int bits, PolynomialRecord& out) {
    RatPoly rp = to_rational(p);
    auto v = nonzero_value(rp, target, bits);
    if (!v) return RecordStatus::ValueZero;
    RatPoly dp = derivative(rp);
    trim(dp);
    if (dp.empty()) return RecordStatus::DerivativeZero;
    auto d = nonzero_value(dp, target, bits);
    if (!d) return RecordStatus::DerivativeZero;
    out.coeffs = p;
    out.height = height(p);
    out.value = abs(*v);
    out.derivative = abs(*d);
    out.ratio = out.value * reciprocal(out.derivative);
    return RecordStatus::Ok;
}

int sign_of(const RationalInterval& v) { return sgn(v.lo) > 0 ? 1 : -1; }

// ratio(a) vs ratio(b), exact when the enclosures overlap:
// |A||B'| vs |B||A'| as polynomials in zeta.
Ordering compare_ratios(const PolynomialRecord& a, const PolynomialRecord& b, const RealTarget& target, int p_max) {
    if (a.ratio.hi < b.ratio.lo) return Ordering::Less;
    if (b.ratio.hi < a.ratio.lo) return Ordering::Greater;
    RatPoly A = to_rational(a.coeffs), B = to_rational(b.coeffs);
    RatPoly dA = derivative(A), dB = derivative(B);
    int bits = 128;
    int sA = sign_of(eval_form(A, target, bits)) * sign_of(eval_form(dB, target, bits));
    int sB = sign_of(eval_form(B, target, bits)) * sign_of(eval_form(dA, target, bits));
    RatPoly l = mul(A, dB), r = mul(B, dA);
    if (sA < 0)
        for (auto& c : l) c = -c;
    if (sB < 0)
        for (auto& c : r) c = -c;
    return certified_compare_poly(target, l, r, p_max);
}

bool lex_less(const IntPoly& a, const IntPoly& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = n; i-- > 0;) {
        Integer x = i < a.size() ? a[i] : Integer(0);
        Integer y = i < b.size() ? b[i] : Integer(0);
        if (x != y) return x < y;
    }
    return false;
}

struct Candidate {
    std::vector<long long> c;  // a_0 .. a_n
    long double lo, hi;        // float enclosure of the ratio
};

struct ScanResult {
    std::vector<Candidate> cands;
    long double best_hi = INFINITY;
    std::size_t scanned = 0;
};

struct Scanner {
    int n;
    long H;
    std::vector<long double> zp;  // zeta^k
    long double err_s, err_d;

    void keep(ScanResult& r, const std::vector<long long>& a, long double s, long double d) const {
        long double t = -s;
        long double f = std::floor(t);
        long long opts[2] = {static_cast<long long>(f), static_cast<long long>(f) + 1};
        long double ad = std::fabs(d);
        for (long long a0 : opts) {
            a0 = std::clamp<long long>(a0, -H, H);
            long double num = std::fabs(static_cast<long double>(a0) + s);
            long double lo = std::max<long double>(0, num - err_s) / (ad + err_d);
            long double hi = ad > err_d ? (num + err_s) / (ad - err_d) : INFINITY;
            if (lo > r.best_hi) continue;
            r.best_hi = std::min(r.best_hi, hi);
            Candidate c{a, lo, hi};
            c.c[0] = a0;
            if (!r.cands.empty() && r.cands.back().c == c.c) continue;
            r.cands.push_back(std::move(c));
        }
        if (r.cands.size() > 4096) prune(r);
    }

    static void prune(ScanResult& r) {
        std::erase_if(r.cands, [&](const Candidate& c) { return c.lo > r.best_hi; });
    }

    // All tuples with top coefficient a_m = lead, a_{m+1..n} = 0.
    void block(int m, long lead, ScanResult& r) const {
        std::vector<long long> a(static_cast<std::size_t>(n + 1), 0);
        a[m] = lead;
        // odometer over a_1 .. a_{m-1}
        for (int k = 1; k < m; ++k) a[k] = -H;
        while (true) {
            long double s = 0, d = 0;
            for (int k = m; k >= 1; --k) {
                s += static_cast<long double>(a[k]) * zp[k];
                d += static_cast<long double>(k) * static_cast<long double>(a[k]) * zp[k - 1];
            }
            ++r.scanned;
            keep(r, a, s, d);
            int k = 1;
            while (k < m && a[k] == H) a[k++] = -H;
            if (k >= m) break;
            ++a[k];
        }
    }
};

} // namespace

PolynomialRecord polynomial_record(const IntPoly& p, const RealTarget& target, int bits) {
    PolynomialRecord r;
    switch (try_record(p, target, bits, r)) {
    case RecordStatus::ValueZero:
        throw TargetIsAlgebraicOfLowHeight("target " + target.id() + " is a root of " + to_string(p));
    case RecordStatus::DerivativeZero:
        throw InvalidParameter("derivative of " + to_string(p) + " vanishes at the target");
    case RecordStatus::Ok:
        break;
    }
    return r;
}

Integer polynomial_count(int n, long H) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(2 * H + 1), static_cast<unsigned long>(n + 1));
    return (t - 1) / 2;
}

void for_each_polynomial(int n, long H, const std::function<void(const IntPoly&)>& fn, double cap) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    if (H < 1) throw InvalidParameter("H must be >= 1");
    if (std::pow(2.0 * H + 1, n + 1) > cap)
        throw BudgetExceeded("(2H+1)^(n+1) = " + fmt(std::pow(2.0 * H + 1, n + 1)) + " exceeds the cap " + fmt(cap));
    std::vector<long> a(static_cast<std::size_t>(n + 1), -H);
    IntPoly p(static_cast<std::size_t>(n + 1));
    while (true) {
        int top = n;
        while (top >= 0 && a[top] == 0) --top;
        if (top >= 0 && a[top] > 0) {
            for (int k = 0; k <= n; ++k) p[k] = a[k];
            IntPoly q(p.begin(), p.begin() + top + 1);
            fn(q);
        }
        int k = 0;
        while (k <= n && a[k] == H) a[k++] = -H;
        if (k > n) break;
        ++a[k];
    }
}

std::vector<IntPoly> enumerate_polynomials(int n, long H, double cap) {
    std::vector<IntPoly> out;
    for_each_polynomial(n, H, [&](const IntPoly& p) { out.push_back(p); }, cap);
    return out;
}

BestRatio best_ratio(const RealTarget& target, int n, long H, const ApproxOptions& opt) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    if (H < 2) throw InvalidParameter("H must be >= 2: the exponent uses log H");
    double tuples = std::pow(2.0 * H + 1, n);
    if (tuples > opt.budget)
        throw BudgetExceeded("(2H+1)^n = " + fmt(tuples) + " exceeds the budget " + fmt(opt.budget));

    Scanner sc;
    sc.n = n;
    sc.H = H;
    auto pw = target.powers(n, 96);
    long double M = 1, Md = 1;
    for (int k = 0; k <= n; ++k) {
        sc.zp.push_back(to_ld(pw[k].mid()));
        M = std::max(M, std::fabs(sc.zp.back()));
        if (k < n) Md = std::max(Md, (k + 1) * std::fabs(sc.zp.back()));
    }
    const long double eps = std::ldexp(1.0L, -60);
    sc.err_s = 4.0L * (n + 2) * (n + 2) * H * M * eps;
    sc.err_d = 4.0L * (n + 2) * (n + 2) * H * Md * eps;

    std::vector<std::pair<int, long>> blocks;
    for (int m = 1; m <= n; ++m)
        for (long lead = 1; lead <= H; ++lead) blocks.push_back({m, lead});
    std::vector<ScanResult> results(blocks.size());
    int nt = std::max(1, opt.threads > 0 ? opt.threads : default_threads());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        ScanResult local;
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= blocks.size()) break;
            // carry the running bound across blocks; the final prune is global
            ScanResult& r = results[i];
            r.best_hi = local.best_hi;
            sc.block(blocks[i].first, blocks[i].second, r);
            local.best_hi = std::min(local.best_hi, r.best_hi);
        }
    };
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    ScanResult all;
    for (auto& r : results) {
        all.best_hi = std::min(all.best_hi, r.best_hi);
        all.scanned += r.scanned;
    }
    for (auto& r : results)
        for (auto& c : r.cands)
            if (c.lo <= all.best_hi) all.cands.push_back(std::move(c));

    // certified selection over primitive representatives
    std::set<IntPoly, decltype(&lex_less)> seen(&lex_less);
    BestRatio out;
    out.H = H;
    out.n = n;
    out.scanned = all.scanned;
    bool have = false;
    std::sort(all.cands.begin(), all.cands.end(), [](const Candidate& a, const Candidate& b) { return a.lo < b.lo; });
    for (const auto& c : all.cands) {
        IntPoly p;
        for (long long x : c.c) p.push_back(Integer(static_cast<long>(x)));
        trim(p);
        p = primitive_part(p);
        if (!seen.insert(p).second) continue;
        PolynomialRecord rec;
        auto st = try_record(p, target, opt.bits, rec);
        if (st == RecordStatus::ValueZero)
            throw TargetIsAlgebraicOfLowHeight("target " + target.id() + " is a root of " + to_string(p));
        if (st == RecordStatus::DerivativeZero) {
            ++out.derivative_vanishes;
            continue;
        }
        if (!have) {
            out.poly = rec;
            have = true;
            continue;
        }
        Ordering o = compare_ratios(rec, out.poly, target, opt.p_max);
        if (o == Ordering::Less || (o != Ordering::Greater && lex_less(rec.coeffs, out.poly.coeffs))) out.poly = rec;
    }
    if (!have) throw CertificationFailed("no polynomial with a nonvanishing derivative survived");
    double lh = std::log(static_cast<double>(H));
    double mid = out.poly.ratio.mid_double();
    out.wstar = -std::log(mid) / lh - 1;
    out.wstar_lo = -std::log(out.poly.ratio.hi_up()) / lh - 1;
    out.wstar_hi = -std::log(out.poly.ratio.lo_down()) / lh - 1;
    return out;
}

AlgebraicWitness nearest_root(const IntPoly& p0, const RealTarget& target, int bits) {
    IntPoly p = p0;
    trim(p);
    if (degree(p) < 1) throw InvalidParameter("polynomial must be nonconstant");
    IntPoly s = squarefree_part(p);
    auto roots = isolate_real_roots(s);
    if (roots.empty()) throw NoRealRoot(to_string(p) + " has no real root");
    for (const Rational& r : rational_roots(s))
        for (auto& iv : roots)
            if (iv.contains(r)) iv = RationalInterval::point(r);

    auto dist = [&](const RationalInterval& iv) -> LazyInterval {
        return [&, iv](int b) {
            RationalInterval r = iv.is_point() ? iv : refine_root(s, iv, b);
            return abs(r - target.approximate(b));
        };
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        // ties and near-ties below 2^-512 go to the smaller root
        Ordering o = certified_compare(dist(roots[i]), dist(roots[best]), 512, 64);
        if (o == Ordering::Less) best = i;
    }
    AlgebraicWitness w;
    w.root = roots[best].is_point() ? roots[best] : refine_root(s, roots[best], bits);
    w.distance = abs(w.root - target.approximate(bits));
    try {
        w.poly = polynomial_record(p, target, bits);
    } catch (const InvalidParameter&) {
        // P'(zeta) = 0: keep value, no ratio
        w.poly.coeffs = p;
        w.poly.height = height(p);
    }

    if (w.root.is_point()) {
        RatPoly lin{-w.root.lo, Rational(1)};
        w.minimal = primitive_part(lin);
        w.height = height(w.minimal);
        return w;
    }
    // strip rational roots; a remainder of degree <= 3 without rational
    // roots is irreducible
    RatPoly rest = to_rational(s);
    for (const Rational& r : rational_roots(s)) {
        RatPoly q, rem_;
        divmod(rest, RatPoly{-r, Rational(1)}, q, rem_);
        rest = q;
    }
    w.minimal = primitive_part(rest);
    w.height = height(w.minimal);
    w.height_exact = degree(w.minimal) <= 3;
    return w;
}

Verdict acc_check(const IntPoly& p0, const RealTarget& target, int bits) {
    IntPoly p = p0;
    trim(p);
    int deg = degree(p);
    PolynomialRecord rec = polynomial_record(p, target, bits);
    AlgebraicWitness w = nearest_root(p, target, bits);
    Verdict v = make("root proximity", "|zeta - alpha| <= deg(P) |P(zeta)/P'(zeta)|", w.distance.mid_double(),
                     deg * rec.ratio.mid_double(), 0);
    if (deg == 1) {
        // |zeta + a0/a1| on both sides
        v.status = Status::Pass;
        v.detail = "linear: equality";
        return v;
    }
    IntPoly s = squarefree_part(p);
    RatPoly rp = to_rational(p), dp = derivative(rp);
    RationalInterval root0 = w.root;
    LazyInterval lhs = [&](int b) {
        RationalInterval r = root0.is_point() ? root0 : refine_root(s, root0, b);
        return abs(r - target.approximate(b));
    };
    LazyInterval rhs = [&](int b) {
        RationalInterval num = abs(eval_form(rp, target, b)), den = abs(eval_form(dp, target, b));
        if (den.contains_zero()) return RationalInterval(Rational(0), Rational(1) << 30);
        return Rational(deg) * (num * reciprocal(den));
    };
    Ordering o = certified_compare(lhs, rhs, 1024, bits);
    bool complex_roots = real_root_count_with_multiplicity(p) < deg;
    if (o == Ordering::Less || o == Ordering::Equal) {
        v.status = Status::Pass;
    } else if (o == Ordering::Undecided) {
        v.status = Status::Inconclusive;
        v.detail = "undecided at 1024 bits";
    } else if (complex_roots) {
        v.status = Status::Inconclusive;
        v.detail = "nearest real root breaches the bound; a non-real root is nearer";
    } else {
        v.status = Status::Fail;
        v.detail = "certified breach with all roots real";
    }
    return v;
}

WStarTable::Evidence WStarTable::evidence(double window_fraction) const {
    Evidence e;
    if (algebraic_low_height) {
        e.sup = e.inf = kInf;
        return e;
    }
    double lmax = 0;
    for (const auto& r : rows)
        if (r.ok()) lmax = std::max(lmax, std::log(static_cast<double>(r.H)));
    e.sup = -kInf;
    e.inf = kInf;
    for (const auto& r : rows) {
        if (!r.ok() || std::log(static_cast<double>(r.H)) < window_fraction * lmax * (1 - 1e-12)) continue;
        e.sup = std::max(e.sup, r.best.wstar);
        e.inf = std::min(e.inf, r.best.wstar);
        ++e.rows;
    }
    if (e.rows == 0) throw InsufficientData("no computed w* rows in the tail window");
    return e;
}

WStarTable wstar_profile(const RealTarget& target, int n, const std::vector<long>& H_grid, const ApproxOptions& opt) {
    if (H_grid.empty()) throw InvalidParameter("empty H grid");
    for (std::size_t i = 0; i < H_grid.size(); ++i) {
        if (H_grid[i] < 2) throw InvalidParameter("H must be >= 2");
        if (i > 0 && H_grid[i] <= H_grid[i - 1]) throw InvalidParameter("H grid must be strictly increasing");
    }
    WStarTable t;
    t.n = n;
    t.target_id = target.id();
    double run = -kInf;
    for (long H : H_grid) {
        WStarRow row;
        row.H = H;
        if (t.algebraic_low_height) {
            row.error = "target is algebraic of low height";
        } else {
            try {
                row.best = best_ratio(target, n, H, opt);
                run = std::max(run, row.best.wstar);
            } catch (const TargetIsAlgebraicOfLowHeight& e) {
                row.error = e.what();
                t.algebraic_low_height = true;
            } catch (const BudgetExceeded& e) {
                row.error = e.what();
            }
        }
        row.running_max = t.algebraic_low_height ? kInf : run;
        t.rows.push_back(row);
    }
    return t;
}

std::vector<long> h_grid(int k_lo, int k_hi, int den) {
    if (den < 1 || k_hi < k_lo) throw InvalidParameter("bad H grid");
    std::vector<long> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        long h = std::lround(std::pow(10.0, static_cast<double>(k) / den));
        if (out.empty() || h > out.back()) out.push_back(h);
    }
    return out;
}

namespace {

// lhs >= rhs - tol; misses within the uncertainty, or on unconverged
// estimates, are inconclusive.
Verdict geq(const std::string& name, const std::string& statement, double lhs, double rhs, double tol, double unc,
            bool converged) {
    Verdict v = make(name, statement, lhs, rhs, tol);
    if (std::isnan(lhs) || std::isnan(rhs)) {
        v.status = Status::Inconclusive;
        v.detail = "undefined estimate";
    } else if (lhs >= rhs - tol) {
        v.status = Status::Pass;
    } else if (std::isinf(rhs)) {
        v.status = Status::Inconclusive;
        v.detail = "an infinite exponent is not witnessed at finite height";
    } else if (!converged) {
        v.status = Status::Inconclusive;
        v.detail = "estimates not converged";
    } else if (lhs >= rhs - tol - unc) {
        v.status = Status::Inconclusive;
        v.detail = "within the tail uncertainty " + fmt(unc);
    } else {
        v.status = Status::Fail;
    }
    return v;
}

double inv(double x) {
    if (std::isinf(x)) return 0;
    if (x == 0) return kInf;
    return 1 / x;
}

// Half width of an exponent when its nu* limit moves by the tail spread.
double nu_uncertainty(const LimitEstimate& e, bool lower, int n) {
    double x = lower ? e.underline : e.overline;
    double a = exponent_from_nu(x - e.spread, n), b = exponent_from_nu(x + e.spread, n);
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::fabs(a - b) / 2;
}

double psi_uncertainty(const LimitEstimate& e, bool lower, int n) {
    double x = lower ? e.underline : e.overline;
    double a = exponent_from_psi(x - e.spread, n), b = exponent_from_psi(x + e.spread, n);
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::fabs(a - b) / 2;
}

} // namespace

ConsistencyReport theorem_consistency_report(const ExponentReport& r, const WStarTable& wstar,
                                             const TransferOptions& opt) {
    ConsistencyReport c;
    c.n = r.n;
    c.target_id = r.target_id;
    const std::vector<std::pair<std::string, std::string>> names = {
        {"theorem 1", "w*_n >= w_{n,n+1}"},
        {"theorem 2", "w*_n hat w'_n >= 1"},
        {"theorem 2 uniform", "hat w*_n w'_n >= 1"},
        {"upper bound", "w*_n <= w_n"},
        {"wirsing", "w*_n >= (w_n + 1)/2"},
        {"khinchin", "(n-1) w'_n + n - 2 <= w_n"},
    };
    auto all_inconclusive = [&](const std::string& why) {
        for (const auto& [name, st] : names) {
            Verdict v = make(name, st, 0, 0, 0);
            v.status = Status::Inconclusive;
            v.detail = why;
            c.verdicts.push_back(v);
        }
    };
    if (r.refused) {
        all_inconclusive(r.refusal);
        return c;
    }
    int n = r.n;
    WStarTable::Evidence ev;
    try {
        ev = wstar.evidence(opt.window_fraction);
    } catch (const InsufficientData& e) {
        all_inconclusive(e.what());
        return c;
    }
    c.wstar_sup = ev.sup;
    c.wstar_inf = ev.inf;
    c.w_last_hat = r.w_hat[n];
    Floors f = classical_floors(n, r, opt);
    c.bugeaud_laurent = f.bugeaud_laurent;
    bool conv = r.primal_converged() && r.dual_converged();
    double unc_w = std::isfinite(ev.sup - ev.inf) ? ev.sup - ev.inf : 0;
    auto tol = [&](double rhs) { return opt.rel_tol * std::max(1.0, std::isfinite(rhs) ? std::fabs(rhs) : 1.0); };

    double w_last = r.w[n];
    c.verdicts.push_back(geq(names[0].first, names[0].second, ev.sup, w_last, tol(w_last),
                             unc_w + nu_uncertainty(r.nu[n], true, n), conv));
    double t2 = inv(r.w_prime_hat[0]);
    c.verdicts.push_back(geq(names[1].first, names[1].second, ev.sup, t2, tol(t2),
                             unc_w + psi_uncertainty(r.psi[0], false, n) * t2 * t2, conv));
    double t2u = inv(r.w_prime[0]);
    c.verdicts.push_back(geq(names[2].first, names[2].second, ev.inf, t2u, tol(t2u),
                             unc_w + psi_uncertainty(r.psi[0], true, n) * t2u * t2u, conv));
    double wn = r.w[0];
    // w* <= w_n, written as w_n >= w*
    Verdict ub = geq(names[3].first, names[3].second, wn, ev.sup, tol(ev.sup), unc_w + nu_uncertainty(r.nu[0], true, n),
                     conv);
    std::swap(ub.lhs, ub.rhs);
    c.verdicts.push_back(ub);
    c.verdicts.push_back(geq(names[4].first, names[4].second, ev.sup, f.wirsing, tol(f.wirsing),
                             unc_w + nu_uncertainty(r.nu[0], true, n) / 2, conv));
    for (const auto& v : f.verdicts)
        if (v.name == "khinchin") c.verdicts.push_back(v);
    return c;
}

ConsistencyReport theorem_consistency_report(const RealTarget& target, int n, const std::vector<QParam>& q_grid,
                                             const std::vector<long>& H_grid, const TransferOptions& topt,
                                             const ApproxOptions& aopt) {
    ExponentReport r;
    if (refuse_target(target, n)) {
        ProfileTable empty;
        r = exponent_report(target, n, empty, empty, topt);
    } else {
        MinimaOptions mo;
        auto primal = psi_profile(target, n, BodyFamily::Primal, q_grid, mo, aopt.threads);
        auto dual = psi_profile(target, n, BodyFamily::LinearForm, q_grid, mo, aopt.threads);
        r = exponent_report(target, n, primal, dual, topt);
    }
    auto w = wstar_profile(target, n, H_grid, aopt);
    return theorem_consistency_report(r, w, topt);
}

namespace {

json interval_json(const RationalInterval& v) {
    return {{"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}, {"mid", v.mid_double()}};
}

json record_json(const PolynomialRecord& r) {
    json c = json::array();
    for (const auto& x : r.coeffs) c.push_back(x.get_str());
    return {{"coeffs", c},
            {"height", r.height.get_str()},
            {"value", interval_json(r.value)},
            {"derivative", interval_json(r.derivative)},
            {"ratio", interval_json(r.ratio)}};
}

} // namespace

std::string record_to_json(const PolynomialRecord& r) { return record_json(r).dump(2); }

std::string witness_to_json(const AlgebraicWitness& w) {
    json m = json::array();
    for (const auto& x : w.minimal) m.push_back(x.get_str());
    json j = {{"polynomial", record_json(w.poly)},
              {"root", interval_json(w.root)},
              {"distance", interval_json(w.distance)},
              {"minimal_polynomial", m},
              {"height", w.height.get_str()},
              {"height_exact", w.height_exact}};
    return j.dump(2);
}

std::string wstar_to_json(const WStarTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json o = {{"H", r.H}, {"running_max", num(r.running_max)}};
        if (r.ok()) {
            o["polynomial"] = record_json(r.best.poly);
            o["wstar"] = num(r.best.wstar);
            o["wstar_enclosure"] = {num(r.best.wstar_lo), num(r.best.wstar_hi)};
            o["scanned"] = r.best.scanned;
        } else {
            o["error"] = r.error;
        }
        rows.push_back(o);
    }
    json j = {{"n", t.n}, {"target", t.target_id}, {"algebraic_low_height", t.algebraic_low_height}, {"rows", rows}};
    try {
        auto e = t.evidence();
        j["tail"] = {{"sup", num(e.sup)}, {"inf", num(e.inf)}, {"rows", e.rows}};
    } catch (const InsufficientData&) {
    }
    return j.dump(2);
}

std::string wstar_to_text(const WStarTable& t) {
    std::ostringstream os;
    os << "target " << t.target_id << ", n = " << t.n << "\n";
    os << "H          w*         running max  polynomial\n";
    for (const auto& r : t.rows) {
        char buf[96];
        if (r.ok()) {
            std::snprintf(buf, sizeof buf, "%-10ld %-10s %-12s ", r.H, fmt(r.best.wstar).c_str(),
                          fmt(r.running_max).c_str());
            os << buf << to_string(r.best.poly.coeffs) << "\n";
        } else {
            std::snprintf(buf, sizeof buf, "%-10ld ", r.H);
            os << buf << r.error << "\n";
        }
    }
    return os.str();
}

std::string consistency_to_json(const ConsistencyReport& r) {
    json j = {{"n", r.n},
              {"target", r.target_id},
              {"wstar_sup", num(r.wstar_sup)},
              {"wstar_inf", num(r.wstar_inf)},
              {"w_last_hat", num(r.w_last_hat)},
              {"bugeaud_laurent", num(r.bugeaud_laurent)},
              {"verdicts", json::parse(verdicts_to_json(r.verdicts))},
              {"status", to_string(combine(r.verdicts))}};
    return j.dump(2);
}

std::string consistency_to_text(const ConsistencyReport& r) {
    std::ostringstream os;
    os << "target " << r.target_id << ", n = " << r.n << "\n";
    os << "w* tail: sup " << fmt(r.wstar_sup) << ", inf " << fmt(r.wstar_inf) << "\n";
    os << "hat w_{n,n+1} " << fmt(r.w_last_hat) << ", Bugeaud-Laurent term " << fmt(r.bugeaud_laurent) << "\n";
    os << verdicts_to_text(r.verdicts);
    return os.str();
}

} // namespace pgn
