#include "pgnlab/realnum.hpp"
#include "pgnlab/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pgn {

struct RealTarget::Impl {
    TargetKind kind = TargetKind::Rational;
    std::string id;
    std::optional<Rational> exact;  // set for rational-valued targets
    IntPoly minpoly;                // algebraic kind
    RationalInterval isolating;     // algebraic kind
    unsigned base = 10;             // lacunary kind

    mutable std::mutex mu;
    mutable std::vector<RationalInterval> levels;  // algebraic bisection levels
    mutable std::map<std::pair<int, int>, std::vector<RationalInterval>> power_cache;

    RationalInterval bisection_level(std::size_t k) const {
        std::lock_guard<std::mutex> lock(mu);
        if (levels.empty()) levels.push_back(isolating);
        int slo = sign_at(minpoly, isolating.lo);
        while (levels.size() <= k) {
            RationalInterval iv = levels.back();
            Rational m = iv.mid();
            int sm = sign_at(minpoly, m);
            if (sm == slo)
                iv.lo = m;
            else
                iv.hi = m;
            levels.push_back(iv);
        }
        return levels[k];
    }
};

namespace {

Rational two_pow_neg(int p) {
    Integer d = 1;
    d <<= static_cast<mp_bitcnt_t>(p);
    return Rational(Integer(1), d);
}

Integer ipow(unsigned long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

unsigned long factorial(unsigned long k) {
    unsigned long f = 1;
    for (unsigned long i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string poly_id(const IntPoly& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
    return os.str();
}

} // namespace

RealTarget::RealTarget(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

RealTarget RealTarget::rational(const Rational& value) {
    auto impl = std::make_shared<Impl>();
    impl->kind = TargetKind::Rational;
    Rational v = value;
    v.canonicalize();
    impl->exact = v;
    impl->id = "rat:" + v.get_str();
    return RealTarget(impl);
}

RealTarget RealTarget::decimal(const std::string& literal) {
    auto impl = std::make_shared<Impl>();
    impl->kind = TargetKind::Decimal;
    impl->exact = parse_rational(literal);
    impl->id = "dec:" + literal;
    return RealTarget(impl);
}

RealTarget RealTarget::algebraic(const IntPoly& poly, const RationalInterval& interval) {
    IntPoly p = primitive_part(poly);
    int d = degree(p);
    if (d < 1) throw InvalidParameter("minimal polynomial must be nonconstant");
    auto impl = std::make_shared<Impl>();
    impl->kind = TargetKind::Algebraic;
    impl->id = "alg:" + poly_id(p) + "@[" + interval.lo.get_str() + "," + interval.hi.get_str() + "]";
    impl->minpoly = p;
    impl->isolating = interval;
    if (d == 1) {
        Rational r(-p[0], p[1]);
        r.canonicalize();
        if (!interval.contains(r)) throw InvalidParameter("isolating interval does not contain the root");
        impl->exact = r;
        return RealTarget(impl);
    }
    if (!rational_roots(p).empty())
        throw InvalidParameter("polynomial has a rational root, so it is not a minimal polynomial");
    if (degree(squarefree_part(p)) != d) throw InvalidParameter("polynomial is not squarefree");
    auto chain = sturm_chain(p);
    int roots = count_roots(chain, interval.lo, interval.hi);
    if (roots != 1)
        throw InvalidParameter("interval " + to_string(interval) + " contains " + std::to_string(roots) +
                               " real roots, expected exactly one");
    return RealTarget(impl);
}

RealTarget RealTarget::lacunary_factorial(unsigned base) {
    if (base < 2) throw InvalidParameter("lacunary base must be >= 2");
    auto impl = std::make_shared<Impl>();
    impl->kind = TargetKind::Lacunary;
    impl->base = base;
    impl->id = "lac:" + std::to_string(base) + ",factorial";
    return RealTarget(impl);
}

TargetKind RealTarget::kind() const { return impl_->kind; }
const std::string& RealTarget::id() const { return impl_->id; }

std::optional<int> RealTarget::degree_bound() const {
    if (impl_->exact) return 1;
    if (impl_->kind == TargetKind::Algebraic) return degree(impl_->minpoly);
    return std::nullopt;
}

bool RealTarget::is_rational() const { return impl_->exact.has_value(); }

const Rational& RealTarget::rational_value() const {
    if (!impl_->exact) throw InvalidParameter("target is not rational");
    return *impl_->exact;
}

std::optional<IntPoly> RealTarget::minimal_polynomial() const {
    if (impl_->exact) {
        const Rational& r = *impl_->exact;
        return IntPoly{Integer(-r.get_num()), Integer(r.get_den())};
    }
    if (impl_->kind == TargetKind::Algebraic) return impl_->minpoly;
    return std::nullopt;
}

RationalInterval RealTarget::approximate(int p) const {
    if (p < 1) throw InvalidParameter("precision must be >= 1");
    if (impl_->exact) return RationalInterval::point(*impl_->exact);
    Rational target = two_pow_neg(p);
    if (impl_->kind == TargetKind::Algebraic) {
        Rational w0 = impl_->isolating.width();
        std::size_t k = 0;
        while (w0 > target) {
            w0 /= 2;
            ++k;
        }
        return impl_->bisection_level(k);
    }
    // lacunary: tail after L terms is below 2 b^{-(L+1)!}
    unsigned long log2b = 0;
    for (unsigned b = impl_->base; b > 1; b >>= 1) ++log2b;
    unsigned long L = 1;
    while (factorial(L + 1) * log2b < static_cast<unsigned long>(p) + 1) {
        ++L;
        if (L > 12) throw NonConvergent("lacunary truncation exceeds supported depth");
    }
    Rational sum = 0;
    for (unsigned long l = 1; l <= L; ++l) sum += Rational(Integer(1), ipow(impl_->base, factorial(l)));
    Rational tail = Rational(Integer(2), ipow(impl_->base, factorial(L + 1)));
    return {sum, sum + tail};
}

std::vector<RationalInterval> RealTarget::powers(int max_power, int bits) const {
    auto key = std::make_pair(max_power, bits);
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->power_cache.find(key);
        if (it != impl_->power_cache.end()) return it->second;
    }
    std::vector<RationalInterval> out;
    Rational eps = two_pow_neg(bits);
    for (int guard = 8 + 2 * max_power;; guard += 32) {
        if (guard > 64 * bits + 4096) throw NonConvergent("power enclosure did not converge");
        RationalInterval z = approximate(bits + guard);
        out.assign(1, RationalInterval::point(1));
        bool ok = true;
        for (int t = 1; t <= max_power; ++t) {
            RationalInterval next = round_out(out.back() * z, bits + guard);
            Rational mag = std::max(Rational(::abs(next.lo)), Rational(::abs(next.hi)));
            if (next.width() > eps * std::max(mag, eps)) ok = false;
            out.push_back(next);
        }
        if (ok) break;
    }
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->power_cache.emplace(key, out);
    return out;
}

double RealTarget::approx_double() const { return approximate(80).mid_double(); }

RealTarget parse_target(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError(0, "expected '<kind>:' prefix (rat, alg, lac, dec)");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);
    std::size_t off = colon + 1;
    auto rethrow = [&](const ParseError& e, std::size_t base) -> ParseError {
        std::string msg = e.what();
        auto pos = msg.find(": ");
        return ParseError(base + e.position(), pos == std::string::npos ? msg : msg.substr(pos + 2));
    };
    if (kind == "rat") {
        try {
            return RealTarget::rational(parse_rational(body));
        } catch (const ParseError& e) {
            throw rethrow(e, off);
        }
    }
    if (kind == "dec") {
        if (body.find('/') != std::string::npos) throw ParseError(off + body.find('/'), "decimal literal expected");
        try {
            parse_rational(body);
        } catch (const ParseError& e) {
            throw rethrow(e, off);
        }
        return RealTarget::decimal(body);
    }
    if (kind == "lac") {
        auto comma = body.find(',');
        if (comma == std::string::npos) throw ParseError(off + body.size(), "expected ',factorial'");
        std::string b = body.substr(0, comma);
        std::string seq = body.substr(comma + 1);
        if (b.empty() || b.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(off, "lacunary base must be a positive integer");
        if (seq != "factorial") throw ParseError(off + comma + 1, "only the 'factorial' exponent sequence is supported");
        unsigned long base = std::stoul(b);
        if (base < 2 || base > 1000000) throw ParseError(off, "lacunary base out of range [2, 10^6]");
        return RealTarget::lacunary_factorial(static_cast<unsigned>(base));
    }
    if (kind == "alg") {
        auto at = body.find('@');
        if (at == std::string::npos) throw ParseError(off + body.size(), "expected '@[lo,hi]'");
        IntPoly poly;
        std::size_t start = 0;
        std::string coeffs = body.substr(0, at);
        while (true) {
            auto comma = coeffs.find(',', start);
            std::string tok = coeffs.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            Integer c;
            if (tok.empty() || c.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
                throw ParseError(off + start, "bad integer coefficient '" + tok + "'");
            poly.push_back(c);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        std::string iv = body.substr(at + 1);
        std::size_t ivoff = off + at + 1;
        if (iv.size() < 2 || iv.front() != '[' || iv.back() != ']') throw ParseError(ivoff, "expected '[lo,hi]'");
        auto comma = iv.find(',');
        if (comma == std::string::npos) throw ParseError(ivoff + 1, "expected ',' in interval");
        Rational lo, hi;
        try {
            lo = parse_rational(iv.substr(1, comma - 1));
        } catch (const ParseError& e) {
            throw rethrow(e, ivoff + 1);
        }
        try {
            hi = parse_rational(iv.substr(comma + 1, iv.size() - comma - 2));
        } catch (const ParseError& e) {
            throw rethrow(e, ivoff + comma + 1);
        }
        if (hi < lo) throw ParseError(ivoff, "interval has lo > hi");
        try {
            return RealTarget::algebraic(poly, RationalInterval(lo, hi));
        } catch (const InvalidParameter& e) {
            throw ParseError(off, e.what());
        }
    }
    throw ParseError(0, "unknown target kind '" + kind + "'");
}

RationalInterval eval_form(const std::vector<Rational>& coeffs, const RealTarget& target, int p) {
    if (p < 1) throw InvalidParameter("precision must be >= 1");
    Rational l1 = 1;
    int deg = -1;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        l1 += ::abs(coeffs[j]);
        if (coeffs[j] != 0) deg = static_cast<int>(j);
    }
    if (deg < 0) return RationalInterval::point(0);
    if (deg == 0) return RationalInterval::point(coeffs[0]);
    Rational allowed = two_pow_neg(p) * l1;
    for (int guard = 8; guard < 64 * p + 8192; guard += 32) {
        auto pw = target.powers(deg, p + guard);
        RationalInterval s = RationalInterval::point(0);
        for (int j = 0; j <= deg; ++j)
            if (coeffs[j] != 0) s = s + coeffs[j] * pw[j];
        if (s.width() <= allowed) return s;
        s = round_out(s, p + guard);
        if (s.width() <= allowed) return s;
    }
    throw NonConvergent("eval_form did not reach requested width");
}

std::string to_string(Ordering o) {
    switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Greater: return "Greater";
    case Ordering::Equal: return "Equal";
    case Ordering::Undecided: return "Undecided";
    }
    return "?";
}

Ordering certified_compare(const LazyInterval& a, const LazyInterval& b, int p_max, int p_start) {
    int bits = std::max(1, std::min(p_start, p_max));
    while (true) {
        RationalInterval x = a(bits);
        RationalInterval y = b(bits);
        if (x.hi < y.lo) return Ordering::Less;
        if (y.hi < x.lo) return Ordering::Greater;
        if (x.is_point() && y.is_point() && x.lo == y.lo) return Ordering::Equal;
        if (bits >= p_max) return Ordering::Undecided;
        bits = std::min(2 * bits, p_max);
    }
}

bool is_exact_root(const RealTarget& target, const RatPoly& p) {
    RatPoly q = p;
    trim(q);
    if (q.empty()) return true;
    if (target.is_rational()) return eval(q, target.rational_value()) == 0;
    if (auto m = target.minimal_polynomial()) return rem(q, to_rational(*m)).empty();
    return false;  // lacunary factorial series are Liouville numbers
}

Ordering certified_compare_poly(const RealTarget& target, const RatPoly& a, const RatPoly& b, int p_max) {
    if (target.is_rational()) {
        Rational x = eval(a, target.rational_value());
        Rational y = eval(b, target.rational_value());
        return x < y ? Ordering::Less : (y < x ? Ordering::Greater : Ordering::Equal);
    }
    RatPoly d = sub(a, b);
    if (is_exact_root(target, d)) return Ordering::Equal;
    return certified_compare([&](int bits) { return eval_form(a, target, bits); },
                             [&](int bits) { return eval_form(b, target, bits); }, p_max);
}

LazyInterval lazy_constant(const Rational& v) {
    return [v](int) { return RationalInterval::point(v); };
}

LazyInterval lazy_target(const RealTarget& t) {
    return [t](int bits) { return t.approximate(bits); };
}

} // namespace pgn
