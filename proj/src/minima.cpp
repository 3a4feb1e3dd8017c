#include "pgnlab/minima.hpp"
#include "pgnlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace pgn {

namespace {

long double to_ld(const Rational& r) {
    double d = r.get_d();
    Rational rest = r - Rational(d);
    return static_cast<long double>(d) + static_cast<long double>(rest.get_d());
}

bool canonical_sign(IVec& v) {
    for (auto c : v) {
        if (c > 0) return true;
        if (c < 0) {
            for (auto& x : v) x = -x;
            return true;
        }
    }
    return false;  // zero vector
}

// Visits counted against the budget.
struct Counter {
    double budget;
    double visits = 0;
    void add(double k) {
        visits += k;
        if (visits > budget)
            throw BudgetExceeded("enumeration visited more than " + std::to_string(static_cast<long long>(budget)) +
                                 " points");
    }
};

long double safe_floor_count(long double x) { return std::floor(x * (1 + 1e-12L) + 1e-12L); }

// ---- coordinate windows -------------------------------------------------

std::vector<long double> zeta_powers_ld(const RealTarget& target, int n) {
    auto pw = target.powers(n, 96);
    std::vector<long double> z;
    for (const auto& p : pw) z.push_back(to_ld(p.mid()));
    return z;
}

double window_estimate(const GaugeEvaluator& ev, const Lattice& lat, double cap) {
    const BodySpec& b = ev.body();
    int n = b.n;
    if (b.family == BodyFamily::Primal && lat.tag == LatticeTag::Lambda) {
        long double X = cap * b.Q.pow_ld(1);
        long double delta = std::ceil(cap * b.Q.pow_ld(Rational(-1, n))) + 1;
        return static_cast<double>((X + 1) * std::pow(2 * delta + 1, n));
    }
    if ((b.family == BodyFamily::LinearForm || b.family == BodyFamily::Compressed) &&
        lat.tag == LatticeTag::LambdaPlus) {
        long double Y = cap * b.Q.pow_ld(Rational(1, n));
        long double delta = std::ceil(cap * b.Q.pow_ld(-1)) + 1;
        return static_cast<double>(std::pow(2 * Y + 1, n) / 2 * (2 * delta + 1));
    }
    return std::numeric_limits<double>::infinity();
}

void accept(const GaugeEvaluator& ev, const IVec& v, double cap, std::vector<IVec>& out) {
    long double g = ev.gauge_ld(v);
    if (g - ev.gauge_error(v) > cap * (1 + 1e-12L)) return;
    IVec w = v;
    canonical_sign(w);
    out.push_back(std::move(w));
}

// Lambda: |x| <= cap Q and |zeta^t x - y_t| <= r := cap Q^(-1/n). Since
// |round(zeta^t x) - zeta^t x| <= 1/2, every admissible y_t lies within
// ceil(r) + 1 of round(zeta^t x).
void window_primal(const GaugeEvaluator& ev, double cap, Counter& cnt, std::vector<IVec>& out) {
    const BodySpec& b = ev.body();
    int n = b.n;
    auto z = zeta_powers_ld(b.target, n);
    long double r = cap * b.Q.pow_ld(Rational(-1, n));
    long long X = static_cast<long long>(safe_floor_count(cap * b.Q.pow_ld(1)));
    long long delta = static_cast<long long>(std::ceil(r)) + 1;
    std::vector<std::vector<long long>> choices(static_cast<std::size_t>(n + 1));
    IVec v(static_cast<std::size_t>(n + 1));
    for (long long x = 0; x <= X; ++x) {
        bool empty = false;
        for (int t = 1; t <= n; ++t) {
            choices[t].clear();
            long double zx = z[t] * static_cast<long double>(x);
            long long c = std::llround(zx);
            long double slack = r * 1e-12L + std::fabs(zx) * 0x1p-52L + 1e-15L;
            for (long long y = c - delta; y <= c + delta; ++y)
                if (std::fabs(zx - static_cast<long double>(y)) <= r + slack) choices[t].push_back(y);
            cnt.add(static_cast<double>(2 * delta + 1));
            if (choices[t].empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> idx(static_cast<std::size_t>(n + 1), 0);
        while (true) {
            v[0] = x;
            for (int t = 1; t <= n; ++t) v[t] = choices[t][idx[t]];
            IVec w = v;
            if (canonical_sign(w) && w == v) accept(ev, v, cap, out);
            int t = n;
            while (t >= 1 && ++idx[t] == choices[t].size()) idx[t--] = 0;
            if (t < 1) break;
        }
    }
}

// LambdaPlus: |y_t| <= cap Q^(1/n) and |x + L(y)| <= cap / Q with
// L(y) = sum zeta^t y_t. As |round(-L) + L| <= 1/2, x lies within
// ceil(cap/Q) + 1 of round(-L(y)).
void window_linear(const GaugeEvaluator& ev, double cap, Counter& cnt, std::vector<IVec>& out) {
    const BodySpec& b = ev.body();
    int n = b.n;
    auto z = zeta_powers_ld(b.target, n);
    long long Y = static_cast<long long>(safe_floor_count(cap * b.Q.pow_ld(Rational(1, n))));
    long double e = cap * b.Q.pow_ld(-1);
    long long delta = static_cast<long long>(std::ceil(e)) + 1;
    IVec y(static_cast<std::size_t>(n + 1), -Y);
    y[0] = 0;
    IVec v(static_cast<std::size_t>(n + 1));
    while (true) {
        int first = 0;
        for (int t = 1; t <= n; ++t)
            if (y[t] != 0) {
                first = t;
                break;
            }
        if (first == 0 || y[first] > 0) {
            long double L = 0;
            for (int t = 1; t <= n; ++t) L += z[t] * static_cast<long double>(y[t]);
            long long c = std::llround(-L);
            cnt.add(static_cast<double>(2 * delta + 1));
            for (long long x = c - delta; x <= c + delta; ++x) {
                if (first == 0 && x <= 0) continue;
                v[0] = x;
                for (int t = 1; t <= n; ++t) v[t] = y[t];
                accept(ev, v, cap, out);
            }
        }
        int t = n;
        while (t >= 1 && y[t] == Y) y[t--] = -Y;
        if (t < 1) break;
        ++y[t];
    }
}

// ---- reduced basis ----------------------------------------------------

struct Reduced {
    int d = 0, m = 0;
    std::vector<IVec> U;                        // U[k]: basis vector k in lattice coordinates
    std::vector<std::vector<long double>> b;    // images under the scaled form matrix
    std::vector<std::vector<long double>> mu;
    std::vector<long double> r;                 // |b*_k|^2
};

void image(const GaugeEvaluator& ev, const IVec& u, std::vector<long double>& out) {
    const auto& F = ev.scaled_matrix();
    out.assign(F.size(), 0);
    for (std::size_t i = 0; i < F.size(); ++i) {
        long double s = 0;
        for (std::size_t k = 0; k < u.size(); ++k) s += F[i][k] * static_cast<long double>(u[k]);
        out[i] = s;
    }
}

void gso(Reduced& R) {
    int d = R.d;
    std::vector<std::vector<long double>> bs(static_cast<std::size_t>(d));
    R.mu.assign(static_cast<std::size_t>(d), std::vector<long double>(static_cast<std::size_t>(d), 0));
    R.r.assign(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        bs[i] = R.b[i];
        for (int j = 0; j < i; ++j) {
            long double dot = 0;
            for (int k = 0; k < R.m; ++k) dot += R.b[i][k] * bs[j][k];
            R.mu[i][j] = dot / R.r[j];
            for (int k = 0; k < R.m; ++k) bs[i][k] -= R.mu[i][j] * bs[j][k];
        }
        long double nn = 0;
        for (int k = 0; k < R.m; ++k) nn += bs[i][k] * bs[i][k];
        R.r[i] = nn;
    }
}

long long checked_axpy(long long a, long long q, long long b) {
    __int128 t = static_cast<__int128>(a) - static_cast<__int128>(q) * b;
    if (t > (static_cast<__int128>(1) << 62) || t < -(static_cast<__int128>(1) << 62))
        throw BudgetExceeded("basis reduction overflowed 64-bit coordinates");
    return static_cast<long long>(t);
}

Reduced lll(const GaugeEvaluator& ev) {
    Reduced R;
    R.d = ev.dim();
    R.m = ev.num_forms();
    for (int k = 0; k < R.d; ++k) {
        IVec u(static_cast<std::size_t>(R.d), 0);
        u[k] = 1;
        R.U.push_back(u);
    }
    R.b.resize(static_cast<std::size_t>(R.d));
    for (int k = 0; k < R.d; ++k) image(ev, R.U[k], R.b[k]);
    gso(R);
    const long double delta = 0.99L;
    int k = 1;
    for (int iter = 0; k < R.d && iter < 100000; ++iter) {
        for (int j = k - 1; j >= 0; --j) {
            long double q = std::round(R.mu[k][j]);
            if (q == 0) continue;
            long long qi = static_cast<long long>(q);
            for (int c = 0; c < R.d; ++c) R.U[k][c] = checked_axpy(R.U[k][c], qi, R.U[j][c]);
            image(ev, R.U[k], R.b[k]);
            gso(R);
        }
        if (R.r[k] >= (delta - R.mu[k][k - 1] * R.mu[k][k - 1]) * R.r[k - 1]) {
            ++k;
        } else {
            std::swap(R.U[k], R.U[k - 1]);
            std::swap(R.b[k], R.b[k - 1]);
            gso(R);
            k = std::max(k - 1, 1);
        }
    }
    return R;
}

struct LineSolver {
    const GaugeEvaluator& ev;
    const IVec& u0;
    std::vector<long double> bu;  // scaled form values of u0
    std::vector<long double> absu;

    LineSolver(const GaugeEvaluator& e, const IVec& u) : ev(e), u0(u) {
        image(ev, u0, bu);
        const auto& F = ev.scaled_matrix();
        for (const auto& row : F) {
            long double s = 0;
            for (std::size_t k = 0; k < u0.size(); ++k) s += std::fabs(row[k]) * std::fabs((long double)u0[k]);
            absu.push_back(s);
        }
    }

    // integer c in [lo, hi] with |a_i + c b_i| <= T_i for all forms
    bool feasible(const std::vector<long double>& a, const std::vector<long double>& T, long long& lo,
                  long long& hi) const {
        long double L = static_cast<long double>(lo), H = static_cast<long double>(hi);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (bu[i] == 0) {
                if (std::fabs(a[i]) > T[i]) return false;
                continue;
            }
            long double p = (-T[i] - a[i]) / bu[i], q = (T[i] - a[i]) / bu[i];
            if (p > q) std::swap(p, q);
            L = std::max(L, std::ceil(p - 1e-9L));
            H = std::min(H, std::floor(q + 1e-9L));
            if (L > H) return false;
        }
        lo = static_cast<long long>(L);
        hi = static_cast<long long>(H);
        return true;
    }

    long double value(const std::vector<long double>& a, long long c) const {
        long double g = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            g = std::max(g, std::fabs(a[i] + static_cast<long double>(c) * bu[i]));
        return g;
    }
};

struct FPEnumerator {
    const GaugeEvaluator& ev;
    Reduced R;
    double cap;
    bool compress;
    Counter& cnt;
    std::vector<IVec>& out;
    long double R2;
    std::vector<long long> c;
    std::vector<long double> partial;

    FPEnumerator(const GaugeEvaluator& e, double cp, bool comp, Counter& ct, std::vector<IVec>& o)
        : ev(e), R(lll(e)), cap(cp), compress(comp), cnt(ct), out(o) {
        // gauge <= cap implies |image|_2^2 <= m cap^2
        R2 = static_cast<long double>(R.m) * cap * cap * (1 + 1e-9L) + 1e-300L;
        c.assign(static_cast<std::size_t>(R.d), 0);
        partial.assign(static_cast<std::size_t>(R.d + 1), 0);
    }

    IVec combine(int from) const {
        IVec v(static_cast<std::size_t>(R.d), 0);
        for (int k = from; k < R.d; ++k)
            if (c[k] != 0)
                for (int i = 0; i < R.d; ++i) v[i] = checked_axpy(v[i], -c[k], R.U[k][i]);
        return v;
    }

    void run() { rec(R.d - 1, true); }

    void rec(int k, bool zero_above) {
        long double center = 0;
        for (int i = k + 1; i < R.d; ++i) center -= static_cast<long double>(c[i]) * R.mu[i][k];
        long double room = R2 - partial[k + 1];
        if (room < 0) return;
        long double s = std::sqrt(room / R.r[k]) * (1 + 1e-9L) + 1e-9L;
        long long lo = static_cast<long long>(std::ceil(center - s));
        long long hi = static_cast<long long>(std::floor(center + s));
        if (zero_above) lo = std::max(lo, 0LL);
        if (lo > hi) return;
        if (k == 0) {
            leaf(lo, hi, zero_above);
            return;
        }
        cnt.add(static_cast<double>(hi - lo + 1));
        for (long long x = lo; x <= hi; ++x) {
            c[k] = x;
            long double y = static_cast<long double>(x) - center;
            partial[k] = partial[k + 1] + y * y * R.r[k];
            rec(k - 1, zero_above && x == 0);
        }
        c[k] = 0;
    }

    void emit(IVec v) {
        if (!canonical_sign(v)) return;
        out.push_back(std::move(v));
    }

    void leaf(long long lo, long long hi, bool zero_above) {
        IVec w = combine(1);
        const IVec& u0 = R.U[0];
        if (zero_above) {
            lo = std::max(lo, 1LL);
            if (compress) hi = std::min(hi, 1LL);
        }
        if (lo > hi) return;
        auto point = [&](long long x) {
            IVec v = w;
            for (int i = 0; i < R.d; ++i) v[i] = checked_axpy(v[i], -x, u0[i]);
            return v;
        };
        if (!compress || hi - lo < 64 || zero_above) {
            cnt.add(static_cast<double>(hi - lo + 1));
            for (long long x = lo; x <= hi; ++x) {
                IVec v = point(x);
                long double g = ev.gauge_ld(v);
                if (g - ev.gauge_error(v) <= cap * (1 + 1e-12L)) emit(std::move(v));
            }
            return;
        }
        // Along the line w + x u0 the gauge is convex in x. Points whose gauge
        // is at least gauge(u0) and at least the line minimum are spanned by
        // u0 and the minimiser, both of smaller gauge, so they never change
        // the successive minima; only the rest is kept.
        cnt.add(64);
        LineSolver ls(ev, u0);
        std::vector<long double> a;
        image(ev, w, a);
        const auto& F = ev.scaled_matrix();
        long double cmax = static_cast<long double>(std::max(std::llabs(lo), std::llabs(hi)));
        std::vector<long double> err(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            long double s = 0;
            for (int k = 0; k < R.d; ++k) s += std::fabs(F[i][k]) * std::fabs((long double)w[k]);
            err[i] = (s + cmax * ls.absu[i]) * 0x1p-48L + 1e-300L;
        }
        std::vector<long double> T(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) T[i] = cap * (1 + 1e-12L) + err[i];
        long long L = lo, H = hi;
        if (!ls.feasible(a, T, L, H)) return;
        std::vector<long long> keep;
        // near-minimisers
        long long p = L, q = H;
        while (q - p > 2) {
            long long m1 = p + (q - p) / 3, m2 = q - (q - p) / 3;
            long double f1 = ls.value(a, m1), f2 = ls.value(a, m2);
            if (f1 < f2)
                q = m2 - 1;
            else if (f1 > f2)
                p = m1 + 1;
            else {
                p = m1;
                q = m2;
            }
        }
        long long best = p;
        for (long long x = p; x <= q; ++x)
            if (ls.value(a, x) < ls.value(a, best)) best = x;
        long double gmin = ls.value(a, best);
        long double emax = *std::max_element(err.begin(), err.end());
        for (std::size_t i = 0; i < a.size(); ++i) T[i] = gmin + 4 * emax;
        long long P = L, Qh = H;
        if (ls.feasible(a, T, P, Qh)) {
            if (Qh - P <= 64) {
                for (long long x = P; x <= Qh; ++x) keep.push_back(x);
            } else {
                keep.push_back(P);
                keep.push_back(Qh);
            }
        }
        keep.push_back(best);
        // points possibly below gauge(u0)
        long double g0 = ev.gauge_ld(u0) + ev.gauge_error(u0);
        for (std::size_t i = 0; i < a.size(); ++i) T[i] = g0 + 2 * err[i];
        P = L;
        Qh = H;
        if (ls.feasible(a, T, P, Qh)) {
            cnt.add(static_cast<double>(Qh - P + 1));
            for (long long x = P; x <= Qh; ++x) keep.push_back(x);
        }
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        for (long long x : keep) {
            if (x < L || x > H) continue;
            IVec v = point(x);
            if (ev.gauge_ld(v) - ev.gauge_error(v) <= cap * (1 + 1e-12L)) emit(std::move(v));
        }
    }
};

std::vector<IVec> enumerate_impl(const GaugeEvaluator& ev, const Lattice& lat, double cap, const EnumOptions& opt,
                                 bool compress) {
    if (!(cap > 0)) throw InvalidParameter("cap must be > 0");
    if (!ev.body().bounded) throw InvalidParameter("body is unbounded; enumeration needs spanning forms");
    Counter cnt{opt.budget};
    std::vector<IVec> out;
    EnumStrategy s = opt.strategy;
    double est = window_estimate(ev, lat, cap);
    if (s == EnumStrategy::Auto) s = est <= opt.window_threshold ? EnumStrategy::Window : EnumStrategy::ReducedBasis;
    if (s == EnumStrategy::Window) {
        if (!std::isfinite(est)) throw InvalidParameter("window enumeration unsupported for this body/lattice pair");
        if (est > opt.budget) throw BudgetExceeded("window enumeration needs about " + std::to_string(est) + " visits");
        if (ev.body().family == BodyFamily::Primal)
            window_primal(ev, cap, cnt, out);
        else
            window_linear(ev, cap, cnt, out);
        return out;
    }
    FPEnumerator fp(ev, cap, compress, cnt, out);
    fp.run();
    return out;
}

// ---- exact independence -------------------------------------------------

class Span {
public:
    explicit Span(int d) : d_(d) { refresh_normals(); }

    // Adds v if independent; returns whether it was added.
    bool add_if_independent(const IVec& v) {
        if (!independent(v)) return false;
        std::vector<Rational> w(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) w[i] = Rational(static_cast<long>(v[i]));
        rows_.push_back(w);
        refresh_normals();
        return true;
    }

    // v is dependent iff it is orthogonal to every normal of the span.
    bool independent(const IVec& v) const {
        for (std::size_t k = 0; k < normals_.size(); ++k) {
            if (small_[k]) {
                bool fits = true;
                __int128 s = 0;
                for (int i = 0; i < d_ && fits; ++i) {
                    if (v[i] > (1LL << 62) || v[i] < -(1LL << 62)) fits = false;
                    s += static_cast<__int128>(normals_ll_[k][i]) * v[i];
                }
                if (fits) {
                    if (s != 0) return true;
                    continue;
                }
            }
            Integer s = 0;
            for (int i = 0; i < d_; ++i) s += normals_[k][i] * Integer(static_cast<long>(v[i]));
            if (s != 0) return true;
        }
        return false;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    // Integer basis of the orthogonal complement, from the reduced row
    // echelon form of the current rows.
    void refresh_normals() {
        std::vector<std::vector<Rational>> m = rows_;
        std::vector<int> pivcol;
        int r = 0;
        for (int c = 0; c < d_ && r < static_cast<int>(m.size()); ++c) {
            int p = -1;
            for (int i = r; i < static_cast<int>(m.size()); ++i)
                if (m[i][c] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            std::swap(m[p], m[r]);
            Rational inv = 1 / m[r][c];
            for (int k = 0; k < d_; ++k) m[r][k] *= inv;
            for (int i = 0; i < static_cast<int>(m.size()); ++i) {
                if (i == r || m[i][c] == 0) continue;
                Rational f = m[i][c];
                for (int k = 0; k < d_; ++k) m[i][k] -= f * m[r][k];
            }
            pivcol.push_back(c);
            ++r;
        }
        std::vector<bool> is_piv(static_cast<std::size_t>(d_), false);
        for (int c : pivcol) is_piv[c] = true;
        normals_.clear();
        normals_ll_.clear();
        small_.clear();
        for (int f = 0; f < d_; ++f) {
            if (is_piv[f]) continue;
            std::vector<Rational> x(static_cast<std::size_t>(d_), 0);
            x[f] = 1;
            for (int i = 0; i < r; ++i) x[pivcol[i]] = -m[i][f];
            Integer l = 1;
            for (auto& q : x) l = lcm(l, q.get_den());
            std::vector<Integer> z(static_cast<std::size_t>(d_));
            Integer g = 0;
            for (int i = 0; i < d_; ++i) {
                z[i] = x[i].get_num() * (l / x[i].get_den());
                g = gcd(g, z[i]);
            }
            bool small = true;
            std::vector<long long> zl(static_cast<std::size_t>(d_));
            for (int i = 0; i < d_; ++i) {
                z[i] /= g;
                if (::abs(z[i]) >= Integer(1L << 30)) small = false;
                zl[i] = small ? z[i].get_si() : 0;
            }
            normals_.push_back(z);
            normals_ll_.push_back(zl);
            small_.push_back(small);
        }
    }

    int d_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::vector<Integer>> normals_;
    std::vector<std::vector<long long>> normals_ll_;
    std::vector<bool> small_;
};

void psi_bounds(const RationalInterval& lam, double lnq, double& lo, double& hi) {
    double a = std::log(lam.lo_down()) / lnq;
    double b = std::log(lam.hi_up()) / lnq;
    lo = a - 4e-16 * (std::fabs(a) + 1);
    hi = b + 4e-16 * (std::fabs(b) + 1);
}

} // namespace

std::vector<IVec> enumerate_candidates(const BodySpec& body, const Lattice& lattice, double cap,
                                       const EnumOptions& opt) {
    GaugeEvaluator ev(body, lattice);
    return enumerate_impl(ev, lattice, cap, opt, false);
}

int integer_rank(const std::vector<IVec>& vs) {
    if (vs.empty()) return 0;
    Span s(static_cast<int>(vs[0].size()));
    for (const auto& v : vs) s.add_if_independent(v);
    return s.rank();
}

std::vector<MinimaRecord> successive_minima(const BodySpec& body, const Lattice& lattice, int count,
                                            const MinimaOptions& opt) {
    int d = body.n + 1;
    if (count < 1 || count > d) throw InvalidParameter("count must be in [1, n+1]");
    GaugeEvaluator ev(body, lattice);
    double lnq = body.Q.ln();
    double cap = 1;
    for (int iter = 0; iter < 200; ++iter, cap *= 2) {
        auto cands = enumerate_impl(ev, lattice, cap, opt.enumeration, opt.compress_lines);
        std::size_t N = cands.size();
        std::vector<long double> g(N), e(N);
        for (std::size_t i = 0; i < N; ++i) {
            g[i] = ev.gauge_ld(cands[i]);
            e[i] = ev.gauge_error(cands[i]);
        }
        std::vector<std::size_t> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (g[a] != g[b]) return g[a] < g[b];
            return cands[a] < cands[b];
        });
        Span span(d);
        std::vector<IVec> chosen;
        std::size_t pos = 0;
        while (pos < N && static_cast<int>(chosen.size()) < count) {
            std::size_t end = pos + 1;
            long double top = g[order[pos]] + e[order[pos]];
            while (end < N && g[order[end]] - e[order[end]] <= top) {
                top = std::max(top, g[order[end]] + e[order[end]]);
                ++end;
            }
            std::vector<std::size_t> run;
            for (std::size_t k = pos; k < end; ++k)
                if (span.independent(cands[order[k]])) run.push_back(order[k]);
            // repeated minimum selection over the near-tie cluster of the run;
            // only up to d picks are ever needed, and exact keys settle the
            // common case of exact ties cheaply
            std::map<std::size_t, std::optional<GaugeEvaluator::ExactKey>> keys;
            auto key = [&](std::size_t c) -> const std::optional<GaugeEvaluator::ExactKey>& {
                auto it = keys.find(c);
                if (it == keys.end()) it = keys.emplace(c, ev.exact_key(cands[c])).first;
                return it->second;
            };
            while (!run.empty() && static_cast<int>(chosen.size()) < count) {
                long double low_top = g[run[0]] + e[run[0]];
                for (std::size_t c : run) low_top = std::min(low_top, g[c] + e[c]);
                std::vector<std::size_t> cluster;
                for (std::size_t c : run)
                    if (g[c] - e[c] <= low_top) cluster.push_back(c);
                std::size_t best = cluster[0];
                for (std::size_t k = 1; k < cluster.size(); ++k) {
                    std::size_t c = cluster[k];
                    const IVec& a = cands[c];
                    const IVec& b = cands[best];
                    Ordering o;
                    const auto& ka = key(c);
                    const auto& kb = key(best);
                    o = ka && kb && *ka == *kb ? Ordering::Equal : ev.compare(a, b, opt.p_max);
                    if (o == Ordering::Less || (o != Ordering::Greater && a < b)) best = c;
                }
                std::erase(run, best);
                if (!span.add_if_independent(cands[best])) continue;
                chosen.push_back(cands[best]);
                std::erase_if(run, [&](std::size_t c) { return !span.independent(cands[c]); });
            }
            pos = end;
        }
        if (static_cast<int>(chosen.size()) < count) continue;
        RationalInterval last = ev.gauge(chosen.back(), opt.bits);
        if (last.hi > Rational(cap)) continue;  // beyond the complete range
        std::vector<MinimaRecord> out;
        for (int j = 0; j < count; ++j) {
            MinimaRecord rec;
            rec.j = j + 1;
            rec.witness = chosen[j];
            rec.lambda = j + 1 == count ? last : ev.gauge(chosen[j], opt.bits);
            psi_bounds(rec.lambda, lnq, rec.psi_lo, rec.psi_hi);
            out.push_back(rec);
        }
        return out;
    }
    throw NonConvergent("successive minima: cap doubling did not terminate");
}

int default_threads() {
    if (const char* s = std::getenv("PGNLAB_THREADS")) {
        int t = std::atoi(s);
        if (t > 0) return t;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

ProfileTable psi_profile(const RealTarget& target, int n, BodyFamily family, const std::vector<QParam>& grid,
                         const MinimaOptions& opt, int threads) {
    if (family != BodyFamily::Primal && family != BodyFamily::LinearForm)
        throw InvalidParameter("profiles are defined for the Primal and LinearForm families");
    if (grid.empty()) throw InvalidParameter("empty Q-grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1] < grid[i])) throw InvalidParameter("Q-grid must be strictly increasing");
    ProfileTable t;
    t.family = family;
    t.n = n;
    t.target_id = target.id();
    t.grid_spec = grid.front().to_string() + ".." + grid.back().to_string() + " (" + std::to_string(grid.size()) +
                  " points)";
    t.rows.resize(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            ProfileRow& row = t.rows[i];
            row.Q = grid[i];
            try {
                BodySpec body = make_body(family, n, grid[i], target);
                row.minima = successive_minima(body, natural_lattice(body), n + 1, opt);
            } catch (const Error& e) {
                row.minima.clear();
                row.error = e.what();
            }
        }
    };
    int nt = threads > 0 ? threads : default_threads();
    nt = std::max(1, std::min<int>(nt, static_cast<int>(grid.size())));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < nt; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return t;
}

MinkowskiVerdict minkowski_check(const ProfileRow& row, int n) {
    if (!row.ok() || static_cast<int>(row.minima.size()) != n + 1)
        throw InvalidParameter("Minkowski check needs a complete row");
    MinkowskiVerdict v;
    v.product = RationalInterval::point(1);
    for (const auto& m : row.minima) v.product = v.product * m.lambda;
    Integer f = 1;
    for (int k = 2; k <= n + 1; ++k) f *= k;
    v.lower = Rational(Integer(1), f);
    double s = 0;
    for (const auto& m : row.minima) s += std::log(m.lambda_mid());
    v.log_sum_log_q = std::fabs(s);
    if (v.product.lo < v.lower || v.product.hi > 1)
        throw CertificationFailed("product of minima " + to_string(v.product) + " not inside [" + v.lower.get_str() +
                                  ", 1] at Q = " + row.Q.to_string());
    return v;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const IVec& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string csv_escape(const std::string& s) {
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

BodyFamily family_from(const std::string& s) {
    if (s == "Primal") return BodyFamily::Primal;
    if (s == "LinearForm") return BodyFamily::LinearForm;
    throw ParseError(0, "unknown family '" + s + "'");
}

} // namespace

std::string profile_to_csv(const ProfileTable& t) {
    std::ostringstream os;
    os << "# family=" << to_string(t.family) << " n=" << t.n << " target=" << t.target_id << "\n";
    os << "Q,Q_exact,log10Q,j,lambda,lambda_lo,lambda_hi,psi,psi_lo,psi_hi,witness,error\n";
    for (const auto& row : t.rows) {
        std::string qd = fmt(std::exp(row.Q.ln()));
        if (!row.ok()) {
            os << qd << ',' << row.Q.to_string() << ',' << fmt(row.Q.log10()) << ",0,,,,,,,," << csv_escape(row.error)
               << "\n";
            continue;
        }
        for (const auto& m : row.minima)
            os << qd << ',' << row.Q.to_string() << ',' << fmt(row.Q.log10()) << ',' << m.j << ','
               << fmt(m.lambda_mid()) << ',' << fmt(m.lambda.lo_down()) << ',' << fmt(m.lambda.hi_up()) << ','
               << fmt(m.psi()) << ',' << fmt(m.psi_lo) << ',' << fmt(m.psi_hi) << ',' << join(m.witness, ' ') << ",\n";
    }
    return os.str();
}

std::string profile_to_json(const ProfileTable& t) {
    nlohmann::json j;
    j["family"] = to_string(t.family);
    j["n"] = t.n;
    j["target"] = t.target_id;
    j["grid"] = t.grid_spec;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r;
        r["Q"] = row.Q.to_string();
        r["log10Q"] = row.Q.log10();
        if (!row.ok()) r["error"] = row.error;
        nlohmann::json ms = nlohmann::json::array();
        for (const auto& m : row.minima)
            ms.push_back({{"j", m.j},
                          {"lambda_lo", m.lambda.lo.get_str()},
                          {"lambda_hi", m.lambda.hi.get_str()},
                          {"psi_lo", m.psi_lo},
                          {"psi_hi", m.psi_hi},
                          {"witness", m.witness}});
        r["minima"] = ms;
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(1);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

ProfileTable profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    ProfileTable t;
    bool have_meta = false, have_header = false;
    std::size_t lineno = 0;
    std::map<std::string, std::size_t> row_of;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ms(line.substr(1));
            std::string kv;
            while (ms >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "family") t.family = family_from(v);
                if (k == "n") t.n = std::stoi(v);
                if (k == "target") t.target_id = v;
            }
            have_meta = true;
            continue;
        }
        if (!have_header) {
            if (line.rfind("Q,", 0) != 0) throw ParseError(lineno, "missing CSV header");
            have_header = true;
            continue;
        }
        auto f = split_csv(line);
        if (f.size() < 12) throw ParseError(lineno, "expected 12 columns");
        auto it = row_of.find(f[1]);
        if (it == row_of.end()) {
            ProfileRow r;
            r.Q = QParam::parse(f[1]);
            t.rows.push_back(r);
            it = row_of.emplace(f[1], t.rows.size() - 1).first;
        }
        ProfileRow& row = t.rows[it->second];
        int j = std::stoi(f[3]);
        if (j == 0) {
            row.error = f[11].empty() ? "unknown error" : f[11];
            continue;
        }
        MinimaRecord m;
        m.j = j;
        m.lambda = RationalInterval(Rational(std::stod(f[5])), Rational(std::stod(f[6])));
        m.psi_lo = std::stod(f[8]);
        m.psi_hi = std::stod(f[9]);
        std::istringstream ws(f[10]);
        long long c;
        while (ws >> c) m.witness.push_back(c);
        row.minima.push_back(m);
    }
    if (!have_meta || !have_header || t.rows.empty()) throw ParseError(0, "profile CSV is empty or lacks metadata");
    return t;
}

} // namespace pgn
