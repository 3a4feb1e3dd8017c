#include "pgnlab/geometry.hpp"
#include "pgnlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace pgn {

namespace {

long double to_ld(const Rational& r) {
    double d = r.get_d();
    if (!std::isfinite(d)) return d;
    Rational rest = r - Rational(d);
    return static_cast<long double>(d) + static_cast<long double>(rest.get_d());
}

Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

RatPoly monomial(int k, const Rational& c = 1) {
    RatPoly p(static_cast<std::size_t>(k + 1), Rational(0));
    p[k] = c;
    return p;
}

Ordering compare_to(const RationalInterval& a, const Rational& v) {
    if (a.hi < v) return Ordering::Less;
    if (a.lo > v) return Ordering::Greater;
    if (a.is_point() && a.lo == v) return Ordering::Equal;
    return Ordering::Undecided;
}

} // namespace

RationalInterval rational_power(const Rational& base, const Rational& exponent, int bits) {
    if (sgn(base) <= 0) throw InvalidParameter("power of nonpositive base");
    const Integer& a = exponent.get_num();
    const Integer& b = exponent.get_den();
    if (!a.fits_slong_p() || !b.fits_ulong_p()) throw InvalidParameter("exponent too large");
    long ae = a.get_si();
    unsigned long be = b.get_ui();
    unsigned long am = static_cast<unsigned long>(ae < 0 ? -ae : ae);
    Integer N = pow_int(base.get_num(), am);
    Integer D = pow_int(base.get_den(), am);
    RationalInterval r;
    if (be == 1) {
        r = RationalInterval::point(Rational(N, D));
    } else {
        // (N/D)^(1/b) = (N D^(b-1))^(1/b) / D, scaled by 2^k before the root
        Integer M0 = N * pow_int(D, be - 1);
        long lv = ilog2(Rational(N, D)) / static_cast<long>(be);
        long ld = static_cast<long>(mpz_sizeinbase(D.get_mpz_t(), 2));
        long k = std::max(0L, bits + 4 - lv - ld);
        Integer lim = 1;
        lim <<= static_cast<mp_bitcnt_t>(bits + 1);
        while (true) {
            Integer M = M0;
            M <<= static_cast<mp_bitcnt_t>(k * static_cast<long>(be));
            Integer root;
            int exact = mpz_root(root.get_mpz_t(), M.get_mpz_t(), be);
            if (!exact && root < lim) {
                k += bits + 8;
                continue;
            }
            Integer den = D;
            den <<= static_cast<mp_bitcnt_t>(k);
            if (exact)
                r = RationalInterval::point(Rational(root, den));
            else
                r = RationalInterval(Rational(root, den), Rational(root + 1, den));
            break;
        }
    }
    if (ae < 0) r = reciprocal(r);
    return r;
}

QParam QParam::exact(const Rational& q) {
    if (q <= 1) throw InvalidParameter("Q must be > 1, got " + q.get_str());
    QParam p;
    p.base = q;
    p.exponent = 1;
    return p;
}

QParam QParam::power(const Rational& base, const Rational& exponent) {
    if (sgn(base) <= 0 || base == 1 || sgn(exponent) == 0 || ((base > 1) != (sgn(exponent) > 0)))
        throw InvalidParameter("Q = " + base.get_str() + "^(" + exponent.get_str() + ") is not > 1");
    QParam p;
    p.base = base;
    p.exponent = exponent;
    p.base.canonicalize();
    p.exponent.canonicalize();
    if (p.exponent.get_den() == 1 && p.exponent.get_num() > 0 && p.exponent.get_num() <= 64) {
        // collapse integer powers so equal values print alike
        Rational b = 1;
        for (long k = 0; k < p.exponent.get_num().get_si(); ++k) b *= p.base;
        p.base = b;
        p.exponent = 1;
    }
    return p;
}

QParam QParam::parse(const std::string& text) {
    auto caret = text.find('^');
    if (caret == std::string::npos) return exact(parse_rational(text));
    std::string b = text.substr(0, caret);
    std::string e = text.substr(caret + 1);
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    return power(parse_rational(b), parse_rational(e));
}

RationalInterval QParam::pow(const Rational& e, int bits) const {
    Rational t = exponent * e;
    t.canonicalize();
    if (sgn(t) == 0) return RationalInterval::point(1);
    return rational_power(base, t, bits);
}

long double QParam::pow_ld(const Rational& e) const {
    long double t = to_ld(exponent * e);
    return std::exp(t * std::log(to_ld(base)));
}

double QParam::ln() const { return static_cast<double>(to_ld(exponent) * std::log(to_ld(base))); }

std::string QParam::to_string() const {
    if (exponent == 1) return base.get_str();
    return base.get_str() + "^(" + exponent.get_str() + ")";
}

bool operator<(const QParam& a, const QParam& b) {
    if (a.base == b.base) return a.exponent < b.exponent ? a.base > 1 : (a.exponent > b.exponent ? a.base < 1 : false);
    return a.ln() < b.ln();
}

std::vector<QParam> q_grid(int k_lo, int k_hi, int den) {
    if (den <= 0 || k_lo > k_hi || k_lo <= 0) throw InvalidParameter("bad Q-grid");
    std::vector<QParam> out;
    for (int k = k_lo; k <= k_hi; ++k) out.push_back(QParam::power(10, Rational(k, den)));
    return out;
}

RationalInterval Bound::value(const QParam& q, int bits) const { return factor * q.pow(q_exp, bits); }

RationalInterval Bound::inverse(const QParam& q, int bits) const {
    Rational f = 1 / factor;
    return f * q.pow(-q_exp, bits);
}

long double Bound::value_ld(const QParam& q) const { return to_ld(factor) * q.pow_ld(q_exp); }

std::string to_string(BodyFamily f) {
    switch (f) {
    case BodyFamily::Primal: return "Primal";
    case BodyFamily::LinearForm: return "LinearForm";
    case BodyFamily::Compressed: return "Compressed";
    case BodyFamily::ChiA: return "ChiA";
    case BodyFamily::ChiB: return "ChiB";
    case BodyFamily::ChiC: return "ChiC";
    case BodyFamily::Intersection: return "Intersection";
    }
    return "?";
}

std::string to_string(LatticeTag t) {
    switch (t) {
    case LatticeTag::Lambda: return "Lambda";
    case LatticeTag::LambdaStar: return "LambdaStar";
    case LatticeTag::LambdaPlus: return "LambdaPlus";
    }
    return "?";
}

namespace {

Form unit_form(int dim, int i, Bound b, std::string label) {
    Form f;
    f.coeffs.assign(static_cast<std::size_t>(dim), RatPoly{});
    f.coeffs[i] = RatPoly{Rational(1)};
    f.bound = b;
    f.label = std::move(label);
    return f;
}

Form value_form(int n, const QParam&) {
    Form f;
    for (int k = 0; k <= n; ++k) f.coeffs.push_back(monomial(k));
    f.bound = {1, -1};
    f.label = "P(zeta)";
    return f;
}

Form derivative_form(int n, const Rational& factor, const Rational& q_exp) {
    Form f;
    f.coeffs.push_back(RatPoly{});
    for (int t = 1; t <= n; ++t) f.coeffs.push_back(monomial(t - 1, t));
    f.bound = {factor, q_exp};
    f.label = "P'(zeta)";
    return f;
}

bool forms_span(const std::vector<Form>& forms, int dim, const RealTarget& target) {
    // rank over Q at a rational point of a tight enclosure of zeta
    Rational z = target.approximate(64).mid();
    std::vector<std::vector<Rational>> rows;
    for (const auto& f : forms) {
        std::vector<Rational> r(static_cast<std::size_t>(dim), Rational(0));
        for (int k = 0; k < dim && k < static_cast<int>(f.coeffs.size()); ++k) r[k] = eval(f.coeffs[k], z);
        rows.push_back(r);
    }
    int rank = 0;
    for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            Rational f = rows[r][col] / rows[rank][col];
            for (int c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank == dim;
}

} // namespace

BodySpec make_body(BodyFamily family, int n, const QParam& Q, const RealTarget& target, const Rational& param) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    if (Q.ln() <= 0) throw InvalidParameter("Q must be > 1");
    BodySpec b{family, n, Q, target, param, {}, true};
    int dim = n + 1;
    Rational inv_n(1, n);
    switch (family) {
    case BodyFamily::Primal:
        b.forms.push_back(unit_form(dim, 0, {1, 1}, "z1"));
        for (int i = 1; i <= n; ++i) b.forms.push_back(unit_form(dim, i, {1, -inv_n}, "z" + std::to_string(i + 1)));
        break;
    case BodyFamily::LinearForm:
    case BodyFamily::Compressed:
        for (int t = 1; t <= n; ++t) b.forms.push_back(unit_form(dim, t, {1, inv_n}, "y" + std::to_string(t)));
        b.forms.push_back(value_form(n, Q));
        if (family == BodyFamily::Compressed) {
            if (sgn(param) <= 0) throw InvalidParameter("compression factor c must be > 0");
            b.forms.push_back(derivative_form(n, param, inv_n));
        }
        break;
    case BodyFamily::ChiA:
        b.forms.push_back(value_form(n, Q));
        b.bounded = false;
        break;
    case BodyFamily::ChiB:
        if (sgn(param) <= 0) throw InvalidParameter("R must be > 0");
        b.forms.push_back(derivative_form(n, param, 0));
        b.bounded = false;
        break;
    case BodyFamily::ChiC:
        for (int t = 1; t <= n; ++t) b.forms.push_back(unit_form(dim, t, {1, inv_n}, "y" + std::to_string(t)));
        b.bounded = false;
        break;
    case BodyFamily::Intersection:
        throw InvalidParameter("use intersect() to build intersections");
    }
    return b;
}

BodySpec intersect(const BodySpec& a, const BodySpec& b) {
    if (a.n != b.n || a.target.id() != b.target.id() || a.Q.ln() != b.Q.ln())
        throw InvalidParameter("intersection of bodies with different (n, Q, target)");
    if ((a.family == BodyFamily::Primal) != (b.family == BodyFamily::Primal))
        throw InvalidParameter("bodies live in different coordinate systems");
    BodySpec r = a;
    r.family = BodyFamily::Intersection;
    r.forms.insert(r.forms.end(), b.forms.begin(), b.forms.end());
    r.bounded = forms_span(r.forms, r.dim(), r.target);
    return r;
}

std::vector<std::vector<RatPoly>> Lattice::matrix() const {
    int dim = n + 1;
    std::vector<std::vector<RatPoly>> E(static_cast<std::size_t>(dim),
                                        std::vector<RatPoly>(static_cast<std::size_t>(dim)));
    switch (tag) {
    case LatticeTag::Lambda:
        E[0][0] = RatPoly{Rational(1)};
        for (int i = 1; i <= n; ++i) {
            E[i][0] = monomial(i);
            E[i][i] = RatPoly{Rational(-1)};
        }
        break;
    case LatticeTag::LambdaStar:
        for (int k = 0; k <= n; ++k) E[0][k] = monomial(k);
        for (int t = 1; t <= n; ++t) E[t][t] = RatPoly{Rational(1)};
        break;
    case LatticeTag::LambdaPlus:
        for (int k = 0; k <= n; ++k) E[k][k] = RatPoly{Rational(1)};
        break;
    }
    return E;
}

Lattice natural_lattice(const BodySpec& body) {
    LatticeTag tag = body.family == BodyFamily::Primal ? LatticeTag::Lambda : LatticeTag::LambdaPlus;
    return Lattice{tag, body.target, body.n};
}

std::vector<RationalInterval> embed(const Lattice& lattice, const IVec& coeffs, int bits) {
    int dim = lattice.n + 1;
    if (static_cast<int>(coeffs.size()) != dim) throw InvalidParameter("coefficient vector has wrong length");
    auto E = lattice.matrix();
    std::vector<RationalInterval> out;
    for (int i = 0; i < dim; ++i) {
        RatPoly row;
        for (int k = 0; k < dim; ++k) row = add(row, mul(E[i][k], RatPoly{Rational(static_cast<long>(coeffs[k]))}));
        out.push_back(eval_form(row, lattice.target, bits));
    }
    return out;
}

RatPoly embedding_determinant(const Lattice& lattice) {
    auto E = lattice.matrix();
    int dim = lattice.n + 1;
    std::vector<int> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), 0);
    RatPoly det;
    do {
        int inversions = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                if (perm[i] > perm[j]) ++inversions;
        RatPoly term{Rational(inversions % 2 ? -1 : 1)};
        for (int i = 0; i < dim && !term.empty(); ++i) term = mul(term, E[i][perm[i]]);
        det = add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

GaugeEvaluator::GaugeEvaluator(const BodySpec& body, const Lattice& lattice) : body_(body), dim_(body.n + 1) {
    if (lattice.n != body.n) throw InvalidParameter("lattice and body dimensions differ");
    auto E = lattice.matrix();
    for (const auto& f : body.forms) {
        std::vector<RatPoly> row(static_cast<std::size_t>(dim_));
        for (int k = 0; k < dim_; ++k)
            for (int j = 0; j < dim_ && j < static_cast<int>(f.coeffs.size()); ++j)
                row[k] = add(row[k], mul(f.coeffs[j], E[j][k]));
        polys_.push_back(row);
    }
    for (int i = 0; i < num_forms(); ++i) {
        RationalInterval ib = body_.forms[i].bound.inverse(body_.Q, 160);
        std::vector<long double> r;
        long double m = 0;
        for (int k = 0; k < dim_; ++k) {
            RationalInterval v = eval_form(polys_[i][k], body_.target, 160) * ib;
            long double x = to_ld(v.mid());
            r.push_back(x);
            m = std::max(m, std::fabs(x));
        }
        F_.push_back(r);
        abs_row_max_.push_back(m);
        std::vector<RationalInterval> cache;
        for (int bits : kCachedBits) cache.push_back(body_.forms[i].bound.inverse(body_.Q, bits));
        inv_cache_.push_back(std::move(cache));
    }
}

long double GaugeEvaluator::gauge_ld(const IVec& v) const {
    long double g = 0;
    for (const auto& row : F_) {
        long double s = 0;
        for (int k = 0; k < dim_; ++k) s += row[k] * static_cast<long double>(v[k]);
        g = std::max(g, std::fabs(s));
    }
    return g;
}

long double GaugeEvaluator::gauge_error(const IVec& v) const {
    long double e = 0;
    for (const auto& row : F_) {
        long double s = 0;
        for (int k = 0; k < dim_; ++k) s += std::fabs(row[k]) * std::fabs(static_cast<long double>(v[k]));
        e = std::max(e, s);
    }
    return e * 0x1p-50L + 0x1p-1000L;
}

RatPoly GaugeEvaluator::form_poly(int i, const IVec& v) const {
    RatPoly p;
    for (int k = 0; k < dim_; ++k)
        if (v[k] != 0) {
            RatPoly t = polys_[i][k];
            for (auto& c : t) c *= Rational(static_cast<long>(v[k]));
            p = add(p, t);
        }
    return p;
}

RationalInterval GaugeEvaluator::form_value(int i, const IVec& v, int bits) const {
    return eval_form(form_poly(i, v), body_.target, bits);
}

RationalInterval GaugeEvaluator::inv_bound(int i, int bits) const {
    for (std::size_t l = 0; l < kCachedBits.size(); ++l)
        if (kCachedBits[l] == bits) return inv_cache_[static_cast<std::size_t>(i)][l];
    return body_.forms[i].bound.inverse(body_.Q, bits);
}

RationalInterval GaugeEvaluator::gauge(const IVec& v, int bits) const {
    RationalInterval g = RationalInterval::point(0);
    for (int i = 0; i < num_forms(); ++i) g = max(g, abs(form_value(i, v, bits)) * inv_bound(i, bits));
    return g;
}

LazyInterval GaugeEvaluator::lazy_gauge(const IVec& v) const {
    return [this, v](int bits) { return gauge(v, bits); };
}

int GaugeEvaluator::unique_argmax(const IVec& v, int bits) const {
    std::vector<RationalInterval> raw, vals;
    for (int i = 0; i < num_forms(); ++i) {
        raw.push_back(form_value(i, v, bits));
        vals.push_back(abs(raw.back()) * inv_bound(i, bits));
    }
    int best = 0;
    for (int i = 1; i < num_forms(); ++i)
        if (vals[i].hi > vals[best].hi) best = i;
    // forms that may tie with the best must attain the same value exactly
    RatPoly pb;
    for (int i = 0; i < num_forms(); ++i) {
        if (i == best || vals[i].hi < vals[best].lo) continue;
        if (!(body_.forms[i].bound == body_.forms[best].bound)) return -1;
        if (raw[i].contains_zero() || raw[best].contains_zero()) return -1;
        if (pb.empty()) pb = form_poly(best, v);
        RatPoly pi = form_poly(i, v);
        if ((sgn(raw[i].lo) < 0) != (sgn(raw[best].lo) < 0))
            for (auto& c : pi) c = -c;
        if (!is_exact_root(body_.target, sub(pi, pb))) return -1;
    }
    return best;
}

std::optional<GaugeEvaluator::ExactKey> GaugeEvaluator::exact_key(const IVec& v, int bits) const {
    int i = unique_argmax(v, bits);
    if (i < 0) return std::nullopt;
    RationalInterval val = form_value(i, v, bits);
    if (val.contains_zero()) return std::nullopt;
    RatPoly p = form_poly(i, v);
    if (sgn(val.lo) < 0)
        for (auto& c : p) c = -c;
    if (body_.target.is_rational())
        p = RatPoly{eval(p, body_.target.rational_value())};
    else if (auto m = body_.target.minimal_polynomial())
        p = rem(p, to_rational(*m));
    trim(p);
    return ExactKey{body_.forms[i].bound, p};
}

Ordering GaugeEvaluator::compare(const IVec& a, const IVec& b, int p_max) const {
    if (a == b) return Ordering::Equal;
    long double ga = gauge_ld(a), gb = gauge_ld(b);
    long double ea = gauge_error(a), eb = gauge_error(b);
    if (ga + ea < gb - eb) return Ordering::Less;
    if (gb + eb < ga - ea) return Ordering::Greater;
    for (int bits : {64, 160, 512}) {
        if (bits > p_max) break;
        int ia = unique_argmax(a, bits);
        int ib = unique_argmax(b, bits);
        if (ia < 0 || ib < 0) continue;
        if (!(body_.forms[ia].bound == body_.forms[ib].bound)) break;
        RationalInterval va = form_value(ia, a, bits), vb = form_value(ib, b, bits);
        if (va.contains_zero() || vb.contains_zero()) continue;
        RatPoly pa = form_poly(ia, a), pb = form_poly(ib, b);
        if (sgn(va.lo) < 0)
            for (auto& c : pa) c = -c;
        if (sgn(vb.lo) < 0)
            for (auto& c : pb) c = -c;
        return certified_compare_poly(body_.target, pa, pb, p_max);
    }
    return certified_compare(lazy_gauge(a), lazy_gauge(b), p_max);
}

RationalInterval gauge(const BodySpec& body, const Lattice& lattice, const IVec& v, int bits) {
    GaugeEvaluator ev(body, lattice);
    return ev.gauge(v, bits);
}

SandwichResult sandwich_check(const BodySpec& primal, const std::vector<RationalInterval>& z, int bits) {
    if (primal.family != BodyFamily::Primal) throw InvalidParameter("sandwich check needs the Primal body");
    int dim = primal.dim();
    if (static_cast<int>(z.size()) != dim) throw InvalidParameter("point has wrong length");
    std::vector<RationalInterval> half;
    for (const auto& f : primal.forms) half.push_back(f.bound.value(primal.Q, bits));
    // polar pairing: max over the 2^(n+1) vertices of K
    RationalInterval pairing;
    bool first = true;
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        RationalInterval s = RationalInterval::point(0);
        for (int i = 0; i < dim; ++i) {
            RationalInterval t = half[i] * z[i];
            s = s + ((mask >> i) & 1u ? -t : t);
        }
        pairing = first ? s : max(pairing, s);
        first = false;
    }
    RationalInterval box = RationalInterval::point(0);
    for (int i = 0; i < dim; ++i) box = max(box, abs(z[i]) * half[i]);
    SandwichResult r;
    r.polar = compare_to(pairing, 1);
    r.box = compare_to(box, 1);
    r.scaled_polar = compare_to(pairing, dim);
    bool in_polar = r.polar == Ordering::Less || r.polar == Ordering::Equal;
    bool in_box = r.box == Ordering::Less || r.box == Ordering::Equal;
    r.consistent = !(in_polar && r.box == Ordering::Greater) && !(in_box && r.scaled_polar == Ordering::Greater);
    return r;
}

std::string body_to_json(const BodySpec& body) {
    nlohmann::json j;
    j["family"] = to_string(body.family);
    j["n"] = body.n;
    j["Q"] = {{"base", body.Q.base.get_str()}, {"exponent", body.Q.exponent.get_str()}};
    j["target"] = body.target.id();
    j["param"] = body.param.get_str();
    j["bounded"] = body.bounded;
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : body.forms) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& p : f.coeffs) {
            nlohmann::json pj = nlohmann::json::array();
            for (const auto& c : p) pj.push_back(c.get_str());
            coeffs.push_back(pj);
        }
        forms.push_back({{"label", f.label},
                         {"coeffs_in_zeta", coeffs},
                         {"bound", {{"factor", f.bound.factor.get_str()}, {"q_exponent", f.bound.q_exp.get_str()}}}});
    }
    j["forms"] = forms;
    return j.dump(2);
}

} // namespace pgn
