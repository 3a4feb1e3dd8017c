#include "pgnlab/volume.hpp"
#include "pgnlab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

namespace pgn {

namespace {

constexpr int kMaxDim = 24;

Rational pow2(int k) { return Rational(Integer(1) << k); }

Rational rpow(const Rational& x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

Integer factorial(int k) {
    Integer f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// vol{s in [0,1]^m : a.s <= t} for all a > 0, via signed subset sums.
struct SimplexCut {
    std::vector<Rational> sums;
    std::vector<int> signs;
    Rational denom;
    int m;

    explicit SimplexCut(const std::vector<Rational>& a) : m(static_cast<int>(a.size())) {
        std::size_t N = std::size_t(1) << m;
        sums.resize(N);
        signs.resize(N);
        sums[0] = 0;
        signs[0] = 1;
        for (std::size_t mask = 1; mask < N; ++mask) {
            int low = __builtin_ctzll(mask);
            sums[mask] = sums[mask & (mask - 1)] + a[low];
            signs[mask] = -signs[mask & (mask - 1)];
        }
        denom = Rational(factorial(m));
        for (const auto& x : a) denom *= x;
    }

    Rational operator()(const Rational& t) const {
        if (sgn(t) <= 0) return 0;
        Rational s = 0;
        for (std::size_t k = 0; k < sums.size(); ++k) {
            Rational d = t - sums[k];
            if (sgn(d) <= 0) continue;
            if (signs[k] > 0)
                s += rpow(d, m);
            else
                s -= rpow(d, m);
        }
        return s / denom;
    }
};

Rational exact_volume(const std::vector<Rational>& absb, const Rational& rho) {
    int n = static_cast<int>(absb.size());
    std::vector<Rational> a;
    int zeros = 0;
    for (const auto& x : absb)
        if (sgn(x) == 0)
            ++zeros;
        else
            a.push_back(x);
    if (a.empty()) throw DegenerateNormal("slab normal is zero");
    Rational A = 0;
    for (const auto& x : a) A += x;
    if (rho >= A) return pow2(n);
    if (sgn(rho) <= 0) return 0;
    int m = static_cast<int>(a.size());
    SimplexCut G(a);
    Rational v = G((A + rho) / 2) - G((A - rho) / 2);
    v *= pow2(m + zeros);
    v.canonicalize();
    return v;
}

void check_dim(std::size_t n) {
    if (n == 0) throw InvalidParameter("empty slab normal");
    if (n > kMaxDim) throw InvalidParameter("slab dimension above " + std::to_string(kMaxDim));
}

} // namespace

SlabCubeInstance SlabCubeInstance::exact(const std::vector<Rational>& b, const Rational& rho) {
    SlabCubeInstance s;
    for (const auto& x : b) s.b.push_back(RationalInterval::point(x));
    s.rho = RationalInterval::point(rho);
    return s;
}

Rational slab_cube_volume(const std::vector<Rational>& b, const Rational& rho) {
    check_dim(b.size());
    if (sgn(rho) < 0) throw InvalidParameter("negative slab half-width");
    std::vector<Rational> a;
    for (const auto& x : b) a.push_back(::abs(x));
    return exact_volume(a, rho);
}

RationalInterval slab_cube_volume(const SlabCubeInstance& inst) {
    check_dim(inst.b.size());
    if (sgn(inst.rho.lo) < 0) throw InvalidParameter("negative slab half-width");
    int n = static_cast<int>(inst.b.size());
    std::vector<Rational> big, small;
    bool all_zero_hi = true, all_zero_lo = true;
    for (const auto& x : inst.b) {
        auto ax = abs(x);
        big.push_back(ax.hi);
        small.push_back(ax.lo);
        if (sgn(ax.hi) != 0) all_zero_hi = false;
        if (sgn(ax.lo) != 0) all_zero_lo = false;
    }
    if (all_zero_hi) throw DegenerateNormal("slab normal is zero");
    Rational lo = exact_volume(big, inst.rho.lo);
    Rational hi;
    if (all_zero_lo)
        hi = sgn(inst.rho.hi) > 0 ? pow2(n) : Rational(0);
    else
        hi = exact_volume(small, inst.rho.hi);
    return {lo, hi};
}

std::vector<RationalInterval> derivative_normal(int n, const RealTarget& target, int bits) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    auto pw = target.powers(n - 1, bits);
    std::vector<RationalInterval> b;
    for (int t = 1; t <= n; ++t) b.push_back(Rational(t) * pw[t - 1]);
    return b;
}

RationalInterval compressed_volume(int n, const QParam& Q, const RealTarget& target, const Rational& c, int bits) {
    (void)Q;  // the substitution to cube coordinates removes Q
    if (sgn(c) < 0) throw InvalidParameter("compression factor must be >= 0");
    SlabCubeInstance inst{derivative_normal(n, target, bits), RationalInterval::point(c)};
    return Rational(2) * slab_cube_volume(inst);
}

CompressionSolution solve_compression(int n, const QParam& Q, const RealTarget& target) {
    auto b = derivative_normal(n, target, 200);
    CompressionSolution sol;
    sol.Q = Q;
    sol.target_volume = pow2(n + 1) / Rational(2 * factorial(n + 1));
    sol.target_volume.canonicalize();
    Rational half = sol.target_volume / 2;
    Rational sum = 0;
    for (const auto& x : b) sum += abs(x).hi;
    Rational lo = 0, hi = round_up(sum, 64);
    Rational eps = Rational(Integer(1), Integer(1) << 53);
    SlabCubeInstance inst{b, {}};
    while (hi - lo > eps * hi) {
        Rational mid = (lo + hi) / 2;
        mid.canonicalize();
        inst.rho = RationalInterval::point(mid);
        auto v = slab_cube_volume(inst);
        ++sol.iterations;
        if (v.hi < half)
            lo = mid;
        else if (v.lo > half)
            hi = mid;
        else
            break;  // the enclosure of b cannot separate mid from the root
    }
    sol.c = {lo, hi};
    inst.rho = RationalInterval::point(lo);
    Rational r_lo = 2 * slab_cube_volume(inst).lo - sol.target_volume;
    inst.rho = RationalInterval::point(hi);
    Rational r_hi = 2 * slab_cube_volume(inst).hi - sol.target_volume;
    sol.residual = {r_lo, r_hi};
    return sol;
}

LemmaRatio lemma_ratio(int n, const QParam& Q, const Rational& R, const RealTarget& target) {
    if (n < 2) throw InvalidParameter("the volume lemma needs n >= 2");
    if (sgn(R) <= 0) throw InvalidParameter("R must be positive");
    auto b = derivative_normal(n, target, 200);
    LemmaRatio out;
    out.Q = Q;
    out.R = R;
    out.rho = round_out(R * Q.pow(Rational(-1, n), 200), 200);
    Rational sum = 0;
    for (const auto& x : b) sum += abs(x).lo;
    out.saturated = !(out.rho.hi < sum);
    out.vol = Rational(2) * slab_cube_volume(SlabCubeInstance{b, out.rho});
    out.ratio = round_out(out.vol * reciprocal(out.rho), 128);
    return out;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (count < 1 || !(lo > 0) || !(hi >= lo)) throw InvalidParameter("bad log-spaced range");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
    }
    return out;
}

LemmaSweep lemma_sweep(int n, const RealTarget& target, const std::vector<QParam>& grid,
                       const std::vector<double>& rhos, int threads) {
    if (grid.empty() || rhos.empty()) throw InvalidParameter("empty sweep");
    LemmaSweep s;
    s.n = n;
    s.target_id = target.id();
    s.rows.resize(grid.size() * rhos.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= s.rows.size()) return;
            const QParam& Q = grid[i / rhos.size()];
            double rho = rhos[i % rhos.size()];
            Rational R(static_cast<double>(rho * Q.pow_ld(Rational(1, n))));
            s.rows[i] = lemma_ratio(n, Q, R, target);
        }
    };
    int nt = std::max(1, std::min<int>(threads, static_cast<int>(s.rows.size())));
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < nt; ++k) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    bool any = false;
    for (const auto& r : s.rows) {
        if (r.saturated) continue;
        double hi = r.ratio.hi_up(), lo = r.ratio.lo_down();
        s.E = any ? std::max(s.E, hi) : hi;
        s.F = any ? std::min(s.F, lo) : lo;
        any = true;
    }
    if (!any) throw InvalidParameter("every sweep row is saturated");
    double fact = 1;
    for (int k = 2; k <= n + 1; ++k) fact *= k;
    s.B = std::ldexp(1.0, n + 1) / (2 * fact * s.E);
    return s;
}

std::string sweep_to_csv(const LemmaSweep& s) {
    std::ostringstream os;
    os << "# n=" << s.n << " target=" << s.target_id << " E=" << s.E << " F=" << s.F << " B=" << s.B << "\n";
    os << "Q,R,rho,vol_lo,vol_hi,ratio,ratio_lo,ratio_hi,saturated\n";
    char buf[64];
    auto f = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const auto& r : s.rows)
        os << r.Q.to_string() << ',' << f(r.R.get_d()) << ',' << f(r.rho.mid_double()) << ',' << f(r.vol.lo_down())
           << ',' << f(r.vol.hi_up()) << ',' << f(r.ratio.mid_double()) << ',' << f(r.ratio.lo_down()) << ','
           << f(r.ratio.hi_up()) << ',' << (r.saturated ? 1 : 0) << "\n";
    return os.str();
}

MonteCarloEstimate monte_carlo_volume(const std::vector<double>& b, double rho, std::uint64_t samples,
                                      std::uint64_t seed) {
    check_dim(b.size());
    if (samples < 10000) throw InvalidParameter("Monte Carlo needs at least 10^4 samples");
    if (std::all_of(b.begin(), b.end(), [](double x) { return x == 0; }))
        throw DegenerateNormal("slab normal is zero");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    MonteCarloEstimate e;
    e.samples = samples;
    for (std::uint64_t k = 0; k < samples; ++k) {
        double s = 0;
        for (double x : b) s += x * U(gen);
        if (std::fabs(s) <= rho) ++e.hits;
    }
    double p = static_cast<double>(e.hits) / static_cast<double>(samples);
    double scale = std::ldexp(1.0, static_cast<int>(b.size()));
    e.estimate = scale * p;
    e.sigma = scale * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    return e;
}

} // namespace pgn
