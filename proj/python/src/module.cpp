// Python bindings. Exact quantities cross the boundary as fractions.Fraction,
// reports as plain dicts decoded from the library's JSON.

#include "pgnlab/approx.hpp"
#include "pgnlab/errors.hpp"
#include "pgnlab/plot.hpp"
#include "pgnlab/transfer.hpp"
#include "pgnlab/volume.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using namespace pgn;

namespace {

py::object loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

py::object fraction(const Rational& q) {
    return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

Rational to_rational(const py::handle& h) {
    if (py::isinstance<py::float_>(h)) return Rational(h.cast<double>());
    std::string s = py::str(h);
    Rational q;
    if (q.set_str(s, 10) != 0) throw InvalidParameter("not a rational number: '" + s + "'");
    q.canonicalize();
    return q;
}

std::vector<Rational> to_rationals(const py::iterable& xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.push_back(to_rational(x));
    return out;
}

QParam to_q(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return QParam::parse(h.cast<std::string>());
    return QParam::exact(to_rational(h));
}

std::vector<QParam> to_grid(const py::iterable& xs) {
    std::vector<QParam> out;
    for (auto x : xs) out.push_back(to_q(x));
    return out;
}

IntPoly to_poly(const std::vector<long long>& cs) {
    IntPoly p;
    for (auto c : cs) p.push_back(Integer(static_cast<long>(c)));
    return p;
}

BodyFamily to_family(const std::string& s) {
    if (s == "primal") return BodyFamily::Primal;
    if (s == "linear") return BodyFamily::LinearForm;
    throw InvalidParameter("family must be 'primal' or 'linear'");
}

py::tuple interval(const RationalInterval& v) { return py::make_tuple(fraction(v.lo), fraction(v.hi)); }

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["name"] = v.name;
    d["statement"] = v.statement;
    d["status"] = to_string(v.status);
    d["lhs"] = v.lhs;
    d["rhs"] = v.rhs;
    d["tol"] = v.tol;
    d["detail"] = v.detail;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Successive minima profiles, exponent transference and polynomial approximation";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<NonConvergent>(m, "NonConvergent", base);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
    py::register_exception<CertificationFailed>(m, "CertificationFailed", base);
    py::register_exception<DegenerateNormal>(m, "DegenerateNormal", base);
    py::register_exception<TargetIsAlgebraicOfLowHeight>(m, "TargetIsAlgebraicOfLowHeight", base);
    py::register_exception<NoRealRoot>(m, "NoRealRoot", base);
    py::register_exception<InsufficientData>(m, "InsufficientData", base);

    py::class_<RealTarget>(m, "Target")
        .def(py::init([](const std::string& spec) { return parse_target(spec); }), py::arg("spec"))
        .def_property_readonly("id", &RealTarget::id)
        .def_property_readonly("degree", &RealTarget::degree_bound)
        .def("__float__", &RealTarget::approx_double)
        .def(
            "enclosure", [](const RealTarget& t, int bits) { return interval(t.approximate(bits)); },
            py::arg("bits") = 64, "(lo, hi) as Fractions with hi - lo <= 2^-bits")
        .def("__repr__", [](const RealTarget& t) { return "Target('" + t.id() + "')"; });

    m.def(
        "q_grid",
        [](int lo, int hi, int den) {
            std::vector<std::string> out;
            for (const auto& q : q_grid(lo, hi, den)) out.push_back(q.to_string());
            return out;
        },
        py::arg("k_lo"), py::arg("k_hi"), py::arg("den") = 10, "Q = 10^(k/den) as exact strings");

    m.def(
        "refuse_target",
        [](const RealTarget& t, int n) {
            std::string why;
            bool r = refuse_target(t, n, &why);
            return py::make_tuple(r, why);
        },
        py::arg("target"), py::arg("n"));

    py::class_<ProfileTable>(m, "Profile")
        .def_readonly("n", &ProfileTable::n)
        .def_readonly("target_id", &ProfileTable::target_id)
        .def_property_readonly("family", [](const ProfileTable& t) { return to_string(t.family); })
        .def("__len__", [](const ProfileTable& t) { return t.rows.size(); })
        .def("log10_q", [](const ProfileTable& t) {
            std::vector<double> out;
            for (const auto& r : t.rows) out.push_back(r.Q.log10());
            return out;
        })
        .def(
            "psi",
            [](const ProfileTable& t, int j) {
                if (j < 1 || j > t.n + 1) throw InvalidParameter("j must be in 1..n+1");
                std::vector<double> out;
                for (const auto& r : t.rows)
                    out.push_back(r.ok() ? r.minima[j - 1].psi() : std::numeric_limits<double>::quiet_NaN());
                return out;
            },
            py::arg("j"), "psi_j midpoints per row (nan where the row failed)")
        .def(
            "lambdas",
            [](const ProfileTable& t, std::size_t r) {
                if (r >= t.rows.size()) throw py::index_error();
                py::list out;
                for (const auto& mm : t.rows[r].minima) out.append(interval(mm.lambda));
                return out;
            },
            py::arg("row"))
        .def("to_csv", &profile_to_csv)
        .def("to_json", [](const ProfileTable& t) { return loads(profile_to_json(t)); })
        .def_static("from_csv", &profile_from_csv, py::arg("text"));

    m.def(
        "psi_profile",
        [](const RealTarget& t, int n, const std::string& family, const py::iterable& grid, double budget,
           int threads) {
            MinimaOptions o;
            o.enumeration.budget = budget;
            auto g = to_grid(grid);
            py::gil_scoped_release release;
            return psi_profile(t, n, to_family(family), g, o, threads);
        },
        py::arg("target"), py::arg("n"), py::arg("family"), py::arg("grid"), py::arg("budget") = 1e8,
        py::arg("threads") = 0, "Successive minima of the primal or linear-form family over a Q grid");

    m.def(
        "minkowski_check",
        [](const ProfileTable& t) {
            py::list out;
            for (const auto& r : t.rows) {
                auto v = minkowski_check(r, t.n);
                py::dict d;
                d["Q"] = r.Q.to_string();
                d["product"] = interval(v.product);
                d["lower"] = fraction(v.lower);
                out.append(d);
            }
            return out;
        },
        py::arg("linear_profile"));

    m.def(
        "exponent_report",
        [](const RealTarget& t, int n, const ProfileTable& primal, const ProfileTable& dual, double tol) {
            TransferOptions o;
            o.rel_tol = tol;
            return loads(report_to_json(exponent_report(t, n, primal, dual, o)));
        },
        py::arg("target"), py::arg("n"), py::arg("primal"), py::arg("linear"), py::arg("tol") = 0.05);

    m.def(
        "exponent_from_psi", [](double psi, int n) { return exponent_from_psi(psi, n); }, py::arg("psi"),
        py::arg("n"));
    m.def(
        "exponent_from_nu", [](double nu, int n) { return exponent_from_nu(nu, n); }, py::arg("nu"), py::arg("n"));

    m.def(
        "slab_cube_volume",
        [](const py::iterable& b, const py::handle& rho) {
            return fraction(slab_cube_volume(to_rationals(b), to_rational(rho)));
        },
        py::arg("b"), py::arg("rho"), "Exact volume of {u in [-1,1]^n : |b.u| <= rho}");

    m.def(
        "monte_carlo_volume",
        [](const std::vector<double>& b, double rho, std::uint64_t samples, std::uint64_t seed) {
            auto e = monte_carlo_volume(b, rho, samples, seed);
            return py::make_tuple(e.estimate, e.sigma);
        },
        py::arg("b"), py::arg("rho"), py::arg("samples"), py::arg("seed"), "(estimate, sigma)");

    m.def(
        "solve_compression",
        [](int n, const py::handle& Q, const RealTarget& t) {
            auto s = solve_compression(n, to_q(Q), t);
            py::dict d;
            d["Q"] = s.Q.to_string();
            d["c"] = interval(s.c);
            d["target_volume"] = fraction(s.target_volume);
            d["residual"] = interval(s.residual);
            d["iterations"] = s.iterations;
            return d;
        },
        py::arg("n"), py::arg("Q"), py::arg("target"));

    m.def(
        "lemma_sweep",
        [](int n, const RealTarget& t, const py::iterable& grid, const std::vector<double>& rhos) {
            auto s = lemma_sweep(n, t, to_grid(grid), rhos, default_threads());
            py::dict d;
            d["E"] = s.E;
            d["F"] = s.F;
            d["B"] = s.B;
            d["rows"] = s.rows.size();
            d["csv"] = sweep_to_csv(s);
            return d;
        },
        py::arg("n"), py::arg("target"), py::arg("grid"), py::arg("rhos"));

    m.def(
        "best_ratio",
        [](const RealTarget& t, int n, long H, double budget) {
            ApproxOptions o;
            o.budget = budget;
            BestRatio b;
            {
                py::gil_scoped_release release;
                b = best_ratio(t, n, H, o);
            }
            py::dict d;
            py::list coeffs;
            for (const auto& c : b.poly.coeffs) coeffs.append(py::int_(py::str(c.get_str())));
            d["H"] = b.H;
            d["n"] = b.n;
            d["coeffs"] = coeffs;
            d["ratio"] = interval(b.poly.ratio);
            d["wstar"] = b.wstar;
            d["wstar_enclosure"] = py::make_tuple(b.wstar_lo, b.wstar_hi);
            d["scanned"] = b.scanned;
            return d;
        },
        py::arg("target"), py::arg("n"), py::arg("H"), py::arg("budget") = 1e9,
        "Polynomial of degree <= n, height <= H minimising |P(zeta)/P'(zeta)|; coeffs constant term first");

    m.def(
        "nearest_root",
        [](const std::vector<long long>& p, const RealTarget& t) {
            return loads(witness_to_json(nearest_root(to_poly(p), t)));
        },
        py::arg("coeffs"), py::arg("target"));

    m.def(
        "acc_check",
        [](const std::vector<long long>& p, const RealTarget& t) { return verdict_dict(acc_check(to_poly(p), t)); },
        py::arg("coeffs"), py::arg("target"));

    m.def(
        "wstar_profile",
        [](const RealTarget& t, int n, const std::vector<long>& hs, double budget) {
            ApproxOptions o;
            o.budget = budget;
            WStarTable w;
            {
                py::gil_scoped_release release;
                w = wstar_profile(t, n, hs, o);
            }
            return loads(wstar_to_json(w));
        },
        py::arg("target"), py::arg("n"), py::arg("H_grid"), py::arg("budget") = 1e9);

    m.def("h_grid", &h_grid, py::arg("k_lo"), py::arg("k_hi"), py::arg("den") = 2);

    m.def(
        "theorem_consistency",
        [](const RealTarget& t, int n, const py::iterable& grid, const std::vector<long>& hs, double tol) {
            TransferOptions o;
            o.rel_tol = tol;
            auto g = to_grid(grid);
            ConsistencyReport r;
            {
                py::gil_scoped_release release;
                r = theorem_consistency_report(t, n, g, hs, o);
            }
            return loads(consistency_to_json(r));
        },
        py::arg("target"), py::arg("n"), py::arg("grid"), py::arg("H_grid"), py::arg("tol") = 0.05);

    m.def(
        "uniform_lower_bound",
        [](int n) {
            auto u = uniform_lower_bound(n);
            py::dict d;
            d["n"] = u.n;
            d["value"] = interval(u.value);
            d["deviation"] = u.deviation;
            d["crossing"] = u.crossing;
            return d;
        },
        py::arg("n"), "(n+1+sqrt(n^2+10n-7))/4 as a Fraction enclosure");

    m.def(
        "uniform_table", [](int lo, int hi) { return loads(uniform_table_to_json(uniform_table(lo, hi))); },
        py::arg("n_lo") = 2, py::arg("n_hi") = 50);

    m.def(
        "profile_svg",
        [](const std::vector<ProfileTable>& ts) { return profile_svg(ts); }, py::arg("profiles"),
        "Joint diagram: psi_j solid, -nu*_j dashed");
}
