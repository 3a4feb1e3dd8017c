#include "pgnlab/transfer.hpp"
#include "pgnlab/errors.hpp"
#include "report_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace pgn {

namespace {

using json = nlohmann::json;
using namespace detail;

std::vector<const ProfileRow*> ok_rows(const ProfileTable& t) {
    std::vector<const ProfileRow*> out;
    for (const auto& r : t.rows)
        if (r.ok() && static_cast<int>(r.minima.size()) == t.n + 1) out.push_back(&r);
    return out;
}

double slope_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    return sxx > 0 ? sxy / sxx : 0;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0 ? sxy / sxx : 0;
}

bool all_converged(const std::vector<LimitEstimate>& e) {
    return !e.empty() && std::all_of(e.begin(), e.end(), [](const LimitEstimate& x) { return x.converged; });
}

} // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

Status combine(const std::vector<Verdict>& vs) {
    Status s = Status::Pass;
    for (const auto& v : vs) {
        if (v.status == Status::Fail) return Status::Fail;
        if (v.status == Status::Inconclusive) s = Status::Inconclusive;
    }
    return s;
}

std::vector<LimitEstimate> estimate_limits(const ProfileTable& profile, double window_fraction, double convergence) {
    if (!(window_fraction > 0 && window_fraction <= 1)) throw InvalidParameter("window fraction must be in (0, 1]");
    auto rows = ok_rows(profile);
    if (rows.empty()) throw InsufficientData("profile has no complete rows");
    double lmax = 0;
    for (auto* r : rows) lmax = std::max(lmax, r->Q.ln());
    std::vector<const ProfileRow*> tail;
    for (auto* r : rows)
        if (r->Q.ln() >= window_fraction * lmax * (1 - 1e-12)) tail.push_back(r);
    if (tail.size() < 5)
        throw InsufficientData("tail window holds " + std::to_string(tail.size()) + " rows, need 5");
    std::vector<LimitEstimate> out;
    for (int j = 1; j <= profile.n + 1; ++j) {
        LimitEstimate e;
        e.j = j;
        e.rows = static_cast<int>(tail.size());
        e.underline = kInf;
        e.overline = -kInf;
        e.log10_q_lo = kInf;
        e.log10_q_hi = -kInf;
        std::vector<double> x, y;
        double csup = 0, lmin = kInf;
        for (auto* r : tail) {
            double p = r->minima[j - 1].psi();
            csup = std::max(csup, std::fabs(p) * r->Q.ln());
            lmin = std::min(lmin, r->Q.ln());
            e.underline = std::min(e.underline, p);
            e.overline = std::max(e.overline, p);
            e.log10_q_lo = std::min(e.log10_q_lo, r->Q.log10());
            e.log10_q_hi = std::max(e.log10_q_hi, r->Q.log10());
            x.push_back(1 / r->Q.ln());
            y.push_back(std::fabs(p));
        }
        e.envelope_c = slope_through_origin(x, y);
        e.envelope_at_max = e.envelope_c / lmax;
        e.spread = csup / lmin;
        e.converged = e.envelope_at_max < convergence;
        out.push_back(e);
    }
    return out;
}

double exponent_from_psi(double psi, int n) {
    double d = n * (1 + psi);
    if (d <= 0) return kInf;
    return (n + 1) / d - 1;
}

double psi_from_exponent(double w, int n) {
    if (std::isinf(w)) return -1;
    return (n + 1) / (n * (1 + w)) - 1;
}

double exponent_from_nu(double nu, int n) {
    double d = 1 + n * nu;
    if (d <= 0) return kInf;
    return (n + 1) / d - 1;
}

double nu_from_exponent(double w, int n) {
    if (std::isinf(w)) return -1.0 / n;
    return (n - w) / (n * (w + 1));
}

Rational exponent_from_psi(const Rational& psi, int n) {
    Rational d = n * (1 + psi);
    if (sgn(d) <= 0) throw InvalidParameter("exponent is infinite");
    Rational r = Rational(n + 1) / d - 1;
    r.canonicalize();
    return r;
}

Rational psi_from_exponent(const Rational& w, int n) {
    Rational r = Rational(n + 1) / (n * (1 + w)) - 1;
    r.canonicalize();
    return r;
}

Rational exponent_from_nu(const Rational& nu, int n) {
    Rational d = 1 + n * nu;
    if (sgn(d) <= 0) throw InvalidParameter("exponent is infinite");
    Rational r = Rational(n + 1) / d - 1;
    r.canonicalize();
    return r;
}

Rational nu_from_exponent(const Rational& w, int n) {
    Rational r = (n - w) / (n * (w + 1));
    r.canonicalize();
    return r;
}

PrimalExponents exponents_from_psi(const std::vector<LimitEstimate>& est, int n) {
    PrimalExponents p;
    for (const auto& e : est) {
        p.w_prime.push_back(exponent_from_psi(e.underline, n));
        p.w_prime_hat.push_back(exponent_from_psi(e.overline, n));
    }
    return p;
}

DualExponents exponents_from_nu(const std::vector<LimitEstimate>& est, int n) {
    DualExponents d;
    for (const auto& e : est) {
        d.w.push_back(exponent_from_nu(e.underline, n));
        d.w_hat.push_back(exponent_from_nu(e.overline, n));
    }
    return d;
}

double direct_w_prime(const ProfileTable& primal, const RealTarget& target, double window_fraction) {
    if (primal.family != BodyFamily::Primal) throw InvalidParameter("direct estimate needs a Primal profile");
    auto rows = ok_rows(primal);
    double lmax = 0;
    for (auto* r : rows) lmax = std::max(lmax, r->Q.ln());
    Lattice lat{LatticeTag::Lambda, target, primal.n};
    double best = std::nan("");
    for (auto* r : rows) {
        if (r->Q.ln() < window_fraction * lmax * (1 - 1e-12)) continue;
        auto z = embed(lat, r->minima[0].witness, 128);
        double x = std::fabs(z[0].mid_double());
        if (x <= 1) continue;
        double err = 0;
        for (std::size_t i = 1; i < z.size(); ++i) err = std::max(err, std::fabs(z[i].mid_double()));
        double v = err == 0 ? kInf : -std::log(err) / std::log(x);
        best = std::isnan(best) ? v : std::max(best, v);
    }
    return best;
}

Verdict reciprocal_pair(const std::string& name, double a, double b, double rel_tol, bool converged,
                        double uncertainty) {
    Verdict v = make(name, "product of reciprocal exponents equals 1", a, b, rel_tol);
    if (std::isnan(a) || std::isnan(b)) {
        v.status = Status::Inconclusive;
        v.detail = "undefined estimate";
        return v;
    }
    double prod;
    if ((std::isinf(a) && b == 0) || (std::isinf(b) && a == 0))
        prod = 1;
    else
        prod = a * b;
    v.detail = "product " + fmt(prod);
    if (finite(prod) && std::fabs(prod - 1) <= rel_tol) {
        v.status = Status::Pass;
    } else if (finite(prod) && std::fabs(prod - 1) <= rel_tol + uncertainty) {
        v.status = Status::Inconclusive;
        v.detail += "; within the envelope uncertainty " + fmt(uncertainty);
    } else {
        v.status = converged ? Status::Fail : Status::Inconclusive;
        if (!converged) v.detail += "; estimates not converged";
    }
    return v;
}

namespace {

// Relative spread of an exponent when its limit moves by the envelope.
double rel_spread(double (*map)(double, int), double x, double env, int n) {
    double a = map(x - env, n), b = map(x + env, n), w = map(x, n);
    if (!finite(a) || !finite(b) || !finite(w) || w == 0) return kInf;
    return std::fabs(a - b) / 2 / std::fabs(w);
}

} // namespace

bool ExponentReport::primal_converged() const { return all_converged(psi); }
bool ExponentReport::dual_converged() const { return all_converged(nu); }

bool refuse_target(const RealTarget& target, int n, std::string* why) {
    auto d = target.degree_bound();
    if (d && *d <= n) {
        if (why)
            *why = "target " + target.id() + " is algebraic of degree " + std::to_string(*d) + " <= n = " +
                   std::to_string(n) + "; the exponent relations assume otherwise";
        return true;
    }
    return false;
}

std::vector<Verdict> reciprocal_identity_check(const ExponentReport& r, double rel_tol) {
    std::vector<Verdict> out;
    int n = r.n;
    if (static_cast<int>(r.w_prime.size()) != n + 1 || static_cast<int>(r.w.size()) != n + 1) return out;
    bool conv = r.primal_converged() && r.dual_converged();
    double (*fp)(double, int) = exponent_from_psi;
    double (*fn)(double, int) = exponent_from_nu;
    for (int j = 1; j <= n + 1; ++j) {
        int k = n + 2 - j;
        const auto& p = r.psi[k - 1];
        const auto& q = r.nu[j - 1];
        double u1 = rel_spread(fp, p.underline, p.spread, n) + rel_spread(fn, q.overline, q.spread, n);
        double u2 = rel_spread(fp, p.overline, p.spread, n) + rel_spread(fn, q.underline, q.spread, n);
        out.push_back(reciprocal_pair("reciprocal w'_" + std::to_string(k) + " * what_" + std::to_string(j),
                                      r.w_prime[k - 1], r.w_hat[j - 1], rel_tol, conv, u1));
        out.push_back(reciprocal_pair("reciprocal w'hat_" + std::to_string(k) + " * w_" + std::to_string(j),
                                      r.w_prime_hat[k - 1], r.w[j - 1], rel_tol, conv, u2));
    }
    return out;
}

std::vector<Verdict> mahler_check(const ProfileTable& primal, const ProfileTable& dual, const TransferOptions& opt) {
    std::vector<Verdict> out;
    Verdict pre = make("mahler inputs", "primal and dual profiles share target, n and grid", 0, 0, 0);
    std::string why;
    if (primal.target_id != dual.target_id) why = "targets differ: " + primal.target_id + " vs " + dual.target_id;
    else if (primal.n != dual.n) why = "n differs";
    else if (primal.family != BodyFamily::Primal || dual.family != BodyFamily::LinearForm) why = "wrong families";
    std::map<std::string, const ProfileRow*> drows;
    for (auto* r : ok_rows(dual)) drows[r->Q.to_string()] = r;
    std::vector<std::pair<const ProfileRow*, const ProfileRow*>> pairs;
    for (auto* r : ok_rows(primal)) {
        auto it = drows.find(r->Q.to_string());
        if (it != drows.end()) pairs.push_back({r, it->second});
    }
    if (why.empty() && pairs.empty()) why = "no common grid points";
    if (!why.empty()) {
        pre.status = Status::Fail;
        pre.detail = why;
        out.push_back(pre);
        return out;
    }
    pre.status = Status::Pass;
    out.push_back(pre);
    int n = primal.n;
    for (int j = 1; j <= n + 1; ++j) {
        int k = n + 2 - j;
        std::vector<double> x, y;
        double lo = kInf, hi = -kInf;
        for (auto& p : pairs) {
            double prod = p.first->minima[j - 1].lambda_mid() * p.second->minima[k - 1].lambda_mid();
            lo = std::min(lo, prod);
            hi = std::max(hi, prod);
            x.push_back(p.first->Q.ln());
            y.push_back(std::log(prod));
        }
        Verdict band = make("mahler band j=" + std::to_string(j),
                            "lambda_j * eta*_{n+2-j} stays in a fixed band", lo, hi, 0);
        band.status = (lo >= opt.mahler_lo && hi <= opt.mahler_hi) ? Status::Pass : Status::Fail;
        band.detail = "band [" + fmt(opt.mahler_lo) + ", " + fmt(opt.mahler_hi) + "]";
        out.push_back(band);
        Verdict trend = make("mahler trend j=" + std::to_string(j), "log of the product has no trend in log Q", 0, 0,
                             opt.mahler_trend);
        if (pairs.size() < 3) {
            trend.status = Status::Inconclusive;
            trend.detail = "fewer than 3 rows";
        } else {
            trend.lhs = ls_slope(x, y);
            trend.status = std::fabs(trend.lhs) <= opt.mahler_trend ? Status::Pass : Status::Fail;
            trend.detail = "slope " + fmt(trend.lhs);
        }
        out.push_back(trend);
    }
    return out;
}

MixingContacts mixing_contacts(const ProfileTable& profile) {
    auto rows = ok_rows(profile);
    MixingContacts m;
    m.count.assign(profile.n, 0);
    double step = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) step = std::max(step, rows[i]->Q.ln() - rows[i - 1]->Q.ln());
    // log lambda_j is piecewise linear in log Q with slopes in [-1, 1/n]
    m.resolution = (1 + 1.0 / profile.n) * step / 2;
    for (auto* r : rows)
        for (int j = 1; j <= profile.n; ++j) {
            const auto& a = r->minima[j - 1].lambda;
            const auto& b = r->minima[j].lambda;
            double gap = std::log(b.hi_up()) - std::log(a.lo_down());
            if (gap <= m.resolution) ++m.count[j - 1];
        }
    return m;
}

std::vector<Verdict> mixing_check(const ProfileTable& profile, const TransferOptions& opt) {
    std::vector<Verdict> out;
    auto rows = ok_rows(profile);
    auto mc = mixing_contacts(profile);
    std::vector<LimitEstimate> est;
    try {
        est = estimate_limits(profile, opt.window_fraction, opt.convergence);
    } catch (const InsufficientData&) {
    }
    for (int j = 1; j <= profile.n; ++j) {
        std::string js = std::to_string(j);
        Verdict c = make("contact " + js + "," + std::to_string(j + 1), "psi_j and psi_{j+1} meet on the grid",
                         mc.count[j - 1], 1, mc.resolution);
        if (rows.size() < 20) {
            c.status = Status::Inconclusive;
            c.detail = "fewer than 20 rows";
        } else {
            c.status = mc.count[j - 1] >= 1 ? Status::Pass : Status::Fail;
            c.detail = std::to_string(mc.count[j - 1]) + " contact rows";
        }
        out.push_back(c);
        if (!est.empty())
            out.push_back(leq("mixing limits " + js, "liminf psi_{j+1} <= limsup psi_j", est[j].underline,
                              est[j - 1].overline, opt.mixing_slack, true));
    }
    return out;
}

std::vector<Verdict> minkowski_verdicts(const ProfileTable& dual) {
    std::vector<Verdict> out;
    int bad = 0, total = 0;
    std::string first;
    for (const auto& r : dual.rows) {
        if (!r.ok()) continue;
        ++total;
        try {
            minkowski_check(r, dual.n);
        } catch (const CertificationFailed& e) {
            if (bad++ == 0) first = e.what();
        }
    }
    Verdict v = make("minkowski", "1/(n+1)! <= prod eta*_j <= 1 on every row", bad, total, 0);
    v.status = total == 0 ? Status::Inconclusive : (bad == 0 ? Status::Pass : Status::Fail);
    v.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " rows certified" +
               (first.empty() ? "" : "; " + first);
    out.push_back(v);
    return out;
}

UniformBound uniform_lower_bound(int n) {
    if (n < 2) throw InvalidParameter("the uniform bound needs n >= 2");
    UniformBound u;
    u.n = n;
    Integer m = Integer(n) * n + 10 * n - 7;
    const int k = 160;
    Integer scaled = m << (2 * k);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational den(Integer(1) << k);
    RationalInterval s(Rational(root) / den, Rational(root + 1) / den);
    if (root * root == scaled) s = RationalInterval::point(Rational(root) / den);
    u.value = Rational(1, 4) * (RationalInterval::point(n + 1) + s);
    u.value.lo.canonicalize();
    u.value.hi.canonicalize();
    u.deviation = u.value.mid_double() - (n / 2.0 + 1.5);
    // the Wirsing branch falls from +inf at w = 1 and is below w at w = n
    double lo = 1 + 1e-12, hi = n;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (wirsing_branch(n, mid) > mid)
            lo = mid;
        else
            hi = mid;
    }
    u.crossing = 0.5 * (lo + hi);
    return u;
}

UniformTable uniform_table(int n_lo, int n_hi) {
    if (n_lo < 2 || n_hi < n_lo) throw InvalidParameter("uniform table needs 2 <= n_lo <= n_hi");
    UniformTable t;
    for (int n = n_lo; n <= n_hi; ++n) t.rows.push_back(uniform_lower_bound(n));
    double worst_step = -kInf, floor_gap = kInf;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& u = t.rows[i];
        floor_gap = std::min(floor_gap, u.value.lo.get_d() - (u.n + 1) / 2.0);
        if (i) worst_step = std::max(worst_step, std::fabs(u.deviation) - std::fabs(t.rows[i - 1].deviation));
    }
    if (t.rows.size() > 1)
        t.verdicts.push_back(leq("uniform deviation decreasing",
                                 "|U(n) - (n/2 + 3/2)| strictly decreasing in n", worst_step, 0, -1e-15, true));
    t.verdicts.push_back(leq("uniform deviation at " + std::to_string(n_hi), "|U(n) - (n/2 + 3/2)| < 0.1",
                             std::fabs(t.rows.back().deviation), 0.1, 0, true));
    t.verdicts.push_back(leq("uniform floor", "(n+1)/2 <= U(n) for every n in the table", 0, floor_gap, 0, true));
    return t;
}

std::string uniform_table_to_json(const UniformTable& t) {
    json rows = json::array();
    for (const auto& u : t.rows)
        rows.push_back({{"n", u.n},
                        {"value", u.value.mid_double()},
                        {"value_lo", u.value.lo.get_str()},
                        {"value_hi", u.value.hi.get_str()},
                        {"deviation", u.deviation},
                        {"crossing", num(u.crossing)}});
    return json({{"rows", rows}, {"verdicts", json::parse(verdicts_to_json(t.verdicts))}}).dump(2);
}

std::string uniform_table_to_text(const UniformTable& t) {
    std::ostringstream os;
    os << "n    U(n)               U(n)-(n/2+3/2)  crossing\n";
    for (const auto& u : t.rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-4d %-18.15g %-15.6g %s\n", u.n, u.value.mid_double(), u.deviation,
                      fmt(u.crossing).c_str());
        os << buf;
    }
    os << verdicts_to_text(t.verdicts);
    return os.str();
}

double wirsing_branch(int n, double w) {
    if (std::isinf(w)) return (n + 1) / 2.0 / (1 + 2.0 / (n - 1));
    double d = 1 - 2.0 / (n - 1) * (n - w) / (w + 1);
    return d <= 0 ? kInf : (n + 1) / 2.0 / d;
}

Floors classical_floors(int n, const ExponentReport& r, const TransferOptions& opt) {
    Floors f;
    f.generic = (n + 1) / 2.0;
    f.half_degree = std::ceil(n / 2.0);
    if (r.refused || static_cast<int>(r.w.size()) != n + 1) return f;
    bool dual = r.dual_converged(), primal = r.primal_converged();
    double wn = r.w[0], wlast = r.w[n], whatlast = r.w_hat[n];
    f.wirsing = std::isinf(wn) ? kInf : (wn + 1) / 2;
    f.psi_star_last = std::isinf(wlast) ? -1.0 / n : (n - wlast) / (n * (wlast + 1));
    double bl = std::isinf(wn) ? 1.0 : (wn - n + 1 > 0 ? wn / (wn - n + 1) : std::nan(""));
    f.bugeaud_laurent = std::isnan(bl) ? bl : std::max(bl, whatlast);
    f.khinchin = n == 1 ? -1.0 : (std::isinf(r.w_prime[0]) ? kInf : (n - 1) * r.w_prime[0] + n - 2);

    f.verdicts.push_back(leq("dirichlet", "n <= what_n", n, r.w_hat[0], opt.rel_tol * n, dual));
    f.verdicts.push_back(leq("dirichlet order", "what_n <= w_n", r.w_hat[0], wn, opt.rel_tol * std::max(1.0, wn), dual));
    f.verdicts.push_back(
        leq("khinchin", "(n-1) w'_n + n - 2 <= w_n", f.khinchin, wn, opt.rel_tol * std::max(1.0, wn), dual && primal));
    f.verdicts.push_back(leq("generic floor", "(n+1)/2 <= (w_n+1)/2", f.generic, f.wirsing, opt.rel_tol, dual));
    if (n >= 2) {
        double a = r.nu[0].underline, b = r.nu[n].underline;
        f.verdicts.push_back(leq("dual proposition", "liminf nu*_1 <= -2/(n-1) liminf nu*_{n+1}", a,
                                 -2.0 / (n - 1) * b, opt.mixing_slack, dual));
        f.verdicts.push_back(leq("half degree", "what'_n <= 1/ceil(n/2)", r.w_prime_hat[0], 1 / f.half_degree,
                                 opt.rel_tol, primal));
        auto u = uniform_lower_bound(n);
        f.verdicts.push_back(leq("uniform bound", "(n+1)/2 <= U(n)", f.generic, u.value.lo.get_d(), 0, true));
    }
    return f;
}

ExponentReport exponent_report(const RealTarget& target, int n, const ProfileTable& primal, const ProfileTable& dual,
                               const TransferOptions& opt) {
    ExponentReport r;
    r.n = n;
    r.target_id = target.id();
    std::string why;
    if (refuse_target(target, n, &why)) {
        r.refused = true;
        r.refusal = why;
        Verdict v = make("refusal", "target is not algebraic of degree <= n", 0, 0, 0);
        v.status = Status::Inconclusive;
        v.detail = why;
        r.verdicts.push_back(v);
        return r;
    }
    if (primal.n != n || dual.n != n) throw InvalidParameter("profile dimension does not match n");
    r.psi = estimate_limits(primal, opt.window_fraction, opt.convergence);
    r.nu = estimate_limits(dual, opt.window_fraction, opt.convergence);
    auto pe = exponents_from_psi(r.psi, n);
    auto de = exponents_from_nu(r.nu, n);
    r.w_prime = pe.w_prime;
    r.w_prime_hat = pe.w_prime_hat;
    r.w = de.w;
    r.w_hat = de.w_hat;
    r.w_prime_direct = direct_w_prime(primal, target, opt.window_fraction);

    bool pc = r.primal_converged();
    Verdict t = make("primal transference", "(1 + w'_n)(1 + liminf psi_1) = (n+1)/n, w'_n measured directly",
                     (1 + r.w_prime_direct) * (1 + r.psi[0].underline), (n + 1.0) / n, opt.rel_tol);
    if (std::isnan(t.lhs)) {
        t.status = Status::Inconclusive;
        t.detail = "no usable witnesses";
    } else if (std::fabs(t.lhs / t.rhs - 1) <= opt.rel_tol) {
        t.status = Status::Pass;
    } else {
        t.status = pc ? Status::Fail : Status::Inconclusive;
    }
    r.verdicts.push_back(t);
    for (int j = 1; j <= n + 1; ++j) {
        const auto& e = r.psi[j - 1];
        r.verdicts.push_back(leq("psi range " + std::to_string(j), "-1 <= psi_j <= 1/n", -1, e.underline, 1e-9, true));
        r.verdicts.push_back(leq("psi range top " + std::to_string(j), "psi_j <= 1/n", e.overline, 1.0 / n, 1e-9, true));
        if (j <= n) {
            r.verdicts.push_back(leq("psi order " + std::to_string(j), "liminf psi_j <= liminf psi_{j+1}",
                                     e.underline, r.psi[j].underline, 1e-12, true));
            r.verdicts.push_back(leq("nu order " + std::to_string(j), "liminf nu*_j <= liminf nu*_{j+1}",
                                     r.nu[j - 1].underline, r.nu[j].underline, 1e-12, true));
        }
    }
    for (auto& v : reciprocal_identity_check(r, opt.rel_tol)) r.verdicts.push_back(v);
    for (auto& v : mahler_check(primal, dual, opt)) r.verdicts.push_back(v);
    for (auto& v : mixing_check(primal, opt)) r.verdicts.push_back(v);
    for (auto& v : mixing_check(dual, opt)) {
        v.name = "dual " + v.name;
        r.verdicts.push_back(v);
    }
    for (auto& v : minkowski_verdicts(dual)) r.verdicts.push_back(v);
    for (auto& v : classical_floors(n, r, opt).verdicts) r.verdicts.push_back(v);
    return r;
}

std::string verdicts_to_json(const std::vector<Verdict>& vs) {
    json a = json::array();
    for (const auto& v : vs)
        a.push_back({{"name", v.name},
                     {"statement", v.statement},
                     {"status", to_string(v.status)},
                     {"lhs", num(v.lhs)},
                     {"rhs", num(v.rhs)},
                     {"tol", num(v.tol)},
                     {"detail", v.detail}});
    return a.dump(2);
}

std::string verdicts_to_text(const std::vector<Verdict>& vs) {
    std::ostringstream os;
    for (const auto& v : vs) {
        std::string tag = to_string(v.status);
        for (auto& c : tag) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        os << "[" << tag << "] " << v.name << ": " << v.statement << " | lhs=" << fmt(v.lhs) << " rhs=" << fmt(v.rhs)
           << " tol=" << fmt(v.tol);
        if (!v.detail.empty()) os << " | " << v.detail;
        os << "\n";
    }
    return os.str();
}

std::string report_to_json(const ExponentReport& r) {
    json j;
    j["n"] = r.n;
    j["target"] = r.target_id;
    j["refused"] = r.refused;
    if (r.refused) j["refusal"] = r.refusal;
    auto lims = [](const std::vector<LimitEstimate>& es) {
        json a = json::array();
        for (const auto& e : es)
            a.push_back({{"j", e.j},
                         {"underline", num(e.underline)},
                         {"overline", num(e.overline)},
                         {"log10_q_window", {e.log10_q_lo, e.log10_q_hi}},
                         {"rows", e.rows},
                         {"envelope_c", num(e.envelope_c)},
                         {"envelope_at_qmax", num(e.envelope_at_max)},
                         {"spread", num(e.spread)},
                         {"converged", e.converged}});
        return a;
    };
    auto vec = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(num(x));
        return a;
    };
    j["psi"] = lims(r.psi);
    j["nu_star"] = lims(r.nu);
    j["w_prime"] = vec(r.w_prime);
    j["w_prime_hat"] = vec(r.w_prime_hat);
    j["w"] = vec(r.w);
    j["w_hat"] = vec(r.w_hat);
    j["w_prime_direct"] = num(r.w_prime_direct);
    j["verdicts"] = json::parse(verdicts_to_json(r.verdicts));
    j["status"] = to_string(combine(r.verdicts));
    return j.dump(2);
}

std::string report_to_text(const ExponentReport& r) {
    std::ostringstream os;
    os << "target " << r.target_id << ", n = " << r.n << "\n";
    if (r.refused) {
        os << "refused: " << r.refusal << "\n";
        return os.str();
    }
    os << " j   liminf psi  limsup psi  w'        w'hat     liminf nu*  limsup nu*  w         what\n";
    for (int j = 1; j <= r.n + 1; ++j) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%2d  %10s  %10s  %-8s  %-8s  %10s  %10s  %-8s  %-8s\n", j,
                      fmt(r.psi[j - 1].underline).c_str(), fmt(r.psi[j - 1].overline).c_str(),
                      fmt(r.w_prime[j - 1]).c_str(), fmt(r.w_prime_hat[j - 1]).c_str(),
                      fmt(r.nu[j - 1].underline).c_str(), fmt(r.nu[j - 1].overline).c_str(), fmt(r.w[j - 1]).c_str(),
                      fmt(r.w_hat[j - 1]).c_str());
        os << buf;
    }
    os << "direct w'_n estimate " << fmt(r.w_prime_direct) << "\n";
    os << verdicts_to_text(r.verdicts);
    return os.str();
}

} // namespace pgn
