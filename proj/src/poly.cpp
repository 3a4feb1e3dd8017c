#include "pgnlab/poly.hpp"
#include "pgnlab/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pgn {

int degree(const IntPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

int degree(const RatPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void trim(IntPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }
void trim(RatPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }

RatPoly to_rational(const IntPoly& p) {
    RatPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
    return r;
}

Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    IntPoly r = p;
    trim(r);
    if (r.empty()) return r;
    Integer g = content(r);
    if (r.back() < 0) g = -g;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

IntPoly primitive_part(const RatPoly& p) {
    Integer l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational t = p[i] * l;
        r[i] = t.get_num();
    }
    return primitive_part(r);
}

Integer height(const IntPoly& p) {
    Integer h = 0;
    for (const auto& c : p) h = std::max(h, Integer(::abs(c)));
    return h;
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

Rational eval(const IntPoly& p, const Rational& x) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + Rational(p[i]);
    return r;
}

int sign_at(const IntPoly& p, const Rational& x) { return sgn(eval(p, x)); }

RationalInterval eval(const RatPoly& p, const RationalInterval& x, int bits) {
    RationalInterval r = RationalInterval::point(0);
    for (std::size_t i = p.size(); i-- > 0;) {
        r = r * x + RationalInterval::point(p[i]);
        r = round_out(r, bits);
    }
    return r;
}

IntPoly derivative(const IntPoly& p) {
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

RatPoly add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    int db = degree(b);
    if (db < 0) throw InvalidParameter("polynomial division by zero");
    r = a;
    trim(r);
    int dr = degree(r);
    q.assign(static_cast<std::size_t>(std::max(dr - db + 1, 0)), Rational(0));
    while (dr >= db) {
        Rational f = r[dr] / b[db];
        q[dr - db] = f;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
        r[dr] = 0;
        trim(r);
        dr = degree(r);
    }
    trim(q);
}

RatPoly rem(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return r;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        RatPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        Rational lead = x.back();
        for (auto& c : x) c /= lead;
    }
    return x;
}

IntPoly squarefree_part(const IntPoly& p) {
    RatPoly rp = to_rational(p);
    trim(rp);
    if (degree(rp) <= 0) return primitive_part(p);
    RatPoly g = gcd(rp, derivative(rp));
    RatPoly q, r;
    divmod(rp, g, q, r);
    return primitive_part(q);
}

std::vector<RatPoly> sturm_chain(const IntPoly& p) {
    std::vector<RatPoly> chain;
    RatPoly a = to_rational(p);
    trim(a);
    chain.push_back(a);
    RatPoly b = derivative(a);
    while (!b.empty()) {
        chain.push_back(b);
        RatPoly r = rem(chain[chain.size() - 2], b);
        for (auto& c : r) c = -c;
        b = std::move(r);
    }
    return chain;
}

namespace {

int sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& f : chain) {
        int s = sgn(eval(f, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

} // namespace

int count_roots(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

Rational root_bound(const IntPoly& p) {
    int d = degree(p);
    if (d < 1) return 1;
    Rational m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, Rational(Rational(::abs(p[i])) / Rational(::abs(p[d]))));
    return m + 1;
}

std::vector<RationalInterval> isolate_real_roots(const IntPoly& p) {
    IntPoly s = squarefree_part(p);
    std::vector<RationalInterval> out;
    if (degree(s) < 1) return out;
    auto chain = sturm_chain(s);
    Rational bound = root_bound(s);

    std::function<void(const Rational&, const Rational&, int)> rec = [&](const Rational& a, const Rational& b,
                                                                         int count) {
        // invariant: s(a) != 0, s(b) != 0, count = roots in (a, b)
        if (count == 0) return;
        if (count == 1) {
            out.emplace_back(a, b);
            return;
        }
        Rational m = (a + b) / 2;
        if (sign_at(s, m) == 0) {
            out.emplace_back(m, m);
            Rational d = (b - a) / 4;
            while (count_roots(chain, m - d, m) != 1 || count_roots(chain, m, m + d) != 0 ||
                   sign_at(s, m - d) == 0 || sign_at(s, m + d) == 0)
                d /= 2;
            int left = count_roots(chain, a, m - d);
            rec(a, m - d, left);
            rec(m + d, b, count - 1 - left);
            return;
        }
        int left = count_roots(chain, a, m);
        rec(a, m, left);
        rec(m, b, count - left);
    };
    rec(-bound, bound, count_roots(chain, -bound, bound));
    std::sort(out.begin(), out.end(), [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    return out;
}

RationalInterval refine_root(const IntPoly& p, RationalInterval iv, int bits) {
    if (iv.is_point()) return iv;
    Rational target = 1;
    target /= Rational(Integer(1) << static_cast<mp_bitcnt_t>(std::max(bits, 0)));
    int slo = sign_at(p, iv.lo);
    if (slo == 0) return RationalInterval::point(iv.lo);
    if (sign_at(p, iv.hi) == 0) return RationalInterval::point(iv.hi);
    while (iv.width() > target) {
        Rational m = iv.mid();
        int sm = sign_at(p, m);
        if (sm == 0) return RationalInterval::point(m);
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

namespace {

std::vector<Integer> divisors(Integer n) {
    n = ::abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace

std::vector<Rational> rational_roots(const IntPoly& p0) {
    IntPoly p = primitive_part(p0);
    std::vector<Rational> roots;
    if (degree(p) < 1) return roots;
    std::size_t shift = 0;
    while (shift < p.size() && p[shift] == 0) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        p.erase(p.begin(), p.begin() + static_cast<long>(shift));
    }
    if (degree(p) >= 1) {
        auto num = divisors(p.front());
        auto den = divisors(p.back());
        for (const auto& a : num)
            for (const auto& b : den)
                for (int s : {-1, 1}) {
                    Rational r(Integer(s * a), b);
                    r.canonicalize();
                    if (sign_at(p, r) == 0) roots.push_back(r);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

int real_root_count_with_multiplicity(const IntPoly& p) {
    RatPoly g = to_rational(p);
    trim(g);
    int total = 0;
    while (degree(g) > 0) {
        IntPoly s = squarefree_part(primitive_part(g));
        auto chain = sturm_chain(s);
        Rational b = root_bound(s);
        total += count_roots(chain, -b, b);
        RatPoly q, r;
        divmod(g, to_rational(s), q, r);
        g = q;
    }
    return total;
}

std::string to_string(const IntPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        if (p[i] == 0) continue;
        Integer c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Integer a = ::abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace pgn
