// pgnlab: profiles, exponent reports, volume sweeps, polynomial approximation
// and the verification battery from the command line.

#include "pgnlab/approx.hpp"
#include "pgnlab/errors.hpp"
#include "pgnlab/plot.hpp"
#include "pgnlab/transfer.hpp"
#include "pgnlab/volume.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pgn;
using nlohmann::json;

namespace {

// Exit codes beyond the verdict contract.
constexpr int kExitInput = 3;    // bad target, grid or file content
constexpr int kExitCompute = 4;  // budget, convergence or certification failure
constexpr int kExitIo = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string target;
    int n = 1;
    std::string qmin = "10", qmax = "1e5";
    int qpoints = 0;  // 0: ten per decade
    std::string format;
    std::string out;
    double tol = 0.05;
    double budget = 1e8;
    std::uint64_t seed = 1;

    // profile
    std::string family = "both";
    std::string svg;
    bool force = false;
    bool dump_body = false;
    // approx and verify
    long H = 0;
    std::string h_grid;
    // volume
    int rho_points = 7;
    double rho_min = 1e-3, rho_max = 1;
    std::uint64_t mc_samples = 0;
    // verify
    std::string mode = "battery";
    int uniform_max = 50;
    // plot
    std::vector<std::string> inputs;
};

int exit_code(Status s) {
    switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    default: return 2;
    }
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// log10 Q exactly, for Q a rational power of 10.
Rational exact_log10(const QParam& q, const std::string& flag) {
    Rational b = q.base;
    b.canonicalize();
    if (b.get_den() != 1 || b <= 1) throw InvalidParameter(flag + " must be a power of 10 greater than 1");
    Integer m = b.get_num();
    long k = 0;
    while (m % 10 == 0) {
        m /= 10;
        ++k;
    }
    if (m != 1) throw InvalidParameter(flag + " must be a power of 10, got " + q.to_string());
    Rational e = q.exponent * k;
    e.canonicalize();
    return e;
}

// Qpoints values 10^e with e equally spaced between log10 Qmin and log10 Qmax.
std::vector<QParam> make_q_grid(const Config& c) {
    Rational lo = exact_log10(QParam::parse(c.qmin), "--Qmin");
    Rational hi = exact_log10(QParam::parse(c.qmax), "--Qmax");
    if (hi < lo) throw InvalidParameter("--Qmax must be >= --Qmin");
    int points = c.qpoints;
    if (points == 0) points = static_cast<int>(std::lround(10 * Rational(hi - lo).get_d())) + 1;
    if (points < 1) throw InvalidParameter("--Qpoints must be positive");
    if (lo == hi) points = 1;
    std::vector<QParam> grid;
    for (int i = 0; i < points; ++i) {
        Rational e = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        e.canonicalize();
        grid.push_back(QParam::power(10, e));
    }
    return grid;
}

// "2,5,10" lists H values; "a:b" or "a:b:d" means round(10^(k/d)), k = a..b, d = 2 by default.
std::vector<long> make_h_grid(const Config& c, const std::string& fallback) {
    if (c.H != 0 && !c.h_grid.empty()) throw InvalidParameter("--H and --H-grid are exclusive");
    if (c.H != 0) return {c.H};
    std::string spec = c.h_grid.empty() ? fallback : c.h_grid;
    std::vector<std::string> parts;
    char sep = spec.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
    try {
        if (sep == ':') {
            if (parts.size() < 2 || parts.size() > 3) throw InvalidParameter("--H-grid range is k_lo:k_hi[:den]");
            return h_grid(std::stoi(parts[0]), std::stoi(parts[1]), parts.size() == 3 ? std::stoi(parts[2]) : 2);
        }
        std::vector<long> hs;
        for (const auto& p : parts) hs.push_back(std::stol(p));
        return hs;
    } catch (const std::logic_error&) {
        throw InvalidParameter("cannot parse --H-grid '" + spec + "'");
    }
}

MinimaOptions minima_options(const Config& c) {
    MinimaOptions o;
    o.enumeration.budget = c.budget;
    return o;
}

TransferOptions transfer_options(const Config& c) {
    TransferOptions o;
    o.rel_tol = c.tol;
    return o;
}

Verdict refusal_verdict(const std::string& why) {
    Verdict v;
    v.name = "refusal";
    v.statement = "target is not algebraic of degree <= n";
    v.status = Status::Inconclusive;
    v.detail = why;
    return v;
}

json config_json(const Config& c, const char* sub) {
    return {{"subcommand", sub}, {"target", c.target}, {"n", c.n}, {"Qmin", c.qmin},
            {"Qmax", c.qmax},    {"Qpoints", c.qpoints}, {"tol", c.tol}, {"budget", c.budget}};
}

// Splits a file holding one or more profile CSV tables, each starting at a
// "# family=" line.
std::vector<ProfileTable> read_profiles(const std::string& text) {
    std::vector<std::string> chunks;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("# family=", 0) == 0 || chunks.empty()) chunks.emplace_back();
        chunks.back() += line + "\n";
    }
    std::vector<ProfileTable> out;
    for (const auto& c : chunks) out.push_back(profile_from_csv(c));
    if (out.empty()) throw ParseError(0, "profile CSV is empty");
    return out;
}

std::vector<BodyFamily> families(const Config& c) {
    if (c.family == "primal") return {BodyFamily::Primal};
    if (c.family == "linear") return {BodyFamily::LinearForm};
    return {BodyFamily::Primal, BodyFamily::LinearForm};
}

int run_profile(const Config& c) {
    auto target = parse_target(c.target);
    auto grid = make_q_grid(c);
    std::string why;
    if (refuse_target(target, c.n, &why) && !c.force && !c.dump_body) {
        std::cerr << "pgnlab: refused: " << why << " (use --force to compute the profile anyway)\n";
        emit(c.out, verdicts_to_json({refusal_verdict(why)}));
        return 2;
    }
    if (c.dump_body) {
        json a = json::array();
        for (auto f : families(c)) a.push_back(json::parse(body_to_json(make_body(f, c.n, grid.front(), target))));
        emit(c.out, a.dump(2));
        return 0;
    }
    std::vector<ProfileTable> tables;
    for (auto f : families(c)) tables.push_back(psi_profile(target, c.n, f, grid, minima_options(c)));

    std::string fmt = c.format.empty() ? "csv" : c.format;
    if (fmt == "csv") {
        std::string s;
        for (std::size_t i = 0; i < tables.size(); ++i) s += (i ? "\n" : "") + profile_to_csv(tables[i]);
        emit(c.out, s);
    } else if (fmt == "json") {
        json j = json::object();
        for (const auto& t : tables)
            j[t.family == BodyFamily::Primal ? "primal" : "linear"] = json::parse(profile_to_json(t));
        emit(c.out, j.dump(1));
    } else if (fmt == "svg") {
        emit(c.out, profile_svg(tables));
    } else {
        throw InvalidParameter("profile supports --format csv, json or svg");
    }
    if (!c.svg.empty()) emit(c.svg, profile_svg(tables));

    int failed = 0;
    for (const auto& t : tables)
        for (const auto& r : t.rows)
            if (!r.ok()) ++failed;
    if (failed) {
        std::cerr << "pgnlab: " << failed << " row(s) could not be computed\n";
        return 2;
    }
    return 0;
}

int run_exponents(const Config& c) {
    auto target = parse_target(c.target);
    auto grid = make_q_grid(c);
    ExponentReport r;
    ProfileTable empty;
    empty.n = c.n;
    if (refuse_target(target, c.n))
        r = exponent_report(target, c.n, empty, empty, transfer_options(c));
    else
        r = exponent_report(target, c.n, psi_profile(target, c.n, BodyFamily::Primal, grid, minima_options(c)),
                            psi_profile(target, c.n, BodyFamily::LinearForm, grid, minima_options(c)),
                            transfer_options(c));
    std::string fmt = c.format.empty() ? "json" : c.format;
    if (fmt == "json")
        emit(c.out, report_to_json(r));
    else if (fmt == "text")
        emit(c.out, report_to_text(r));
    else
        throw InvalidParameter("exponents supports --format json or text");
    return exit_code(combine(r.verdicts));
}

struct VolumeResult {
    json j;
    std::string csv, text;
    std::vector<Verdict> verdicts;
};

VolumeResult volume_run(const Config& c) {
    auto target = parse_target(c.target);
    auto grid = make_q_grid(c);
    if (c.rho_points < 1 || !(c.rho_min > 0) || c.rho_max < c.rho_min)
        throw InvalidParameter("need --rho-points >= 1 and 0 < --rho-min <= --rho-max");
    VolumeResult out;

    json sols = json::array();
    bool identical = true;
    double worst_residual = 0;
    CompressionSolution first;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto s = solve_compression(c.n, grid[i], target);
        if (i == 0)
            first = s;
        else if (!(s.c.lo == first.c.lo && s.c.hi == first.c.hi))
            identical = false;
        double res = std::max(std::fabs(s.residual.lo.get_d()), std::fabs(s.residual.hi.get_d()));
        worst_residual = std::max(worst_residual, res);
        sols.push_back({{"Q", s.Q.to_string()},
                        {"c_lo", s.c.lo.get_str()},
                        {"c_hi", s.c.hi.get_str()},
                        {"c", s.c.mid_double()},
                        {"residual", res},
                        {"iterations", s.iterations}});
    }
    Verdict v;
    v.name = "compression residual";
    v.statement = "|vol(c) - 2^(n+1)/(2 (n+1)!)| < 2^-50";
    v.lhs = worst_residual;
    v.rhs = std::ldexp(1.0, -50);
    v.status = worst_residual < v.rhs ? Status::Pass : Status::Fail;
    out.verdicts.push_back(v);
    v = Verdict{};
    v.name = "compression Q-independence";
    v.statement = "c(Q) is the same enclosure at every Q";
    v.status = identical ? Status::Pass : Status::Fail;
    out.verdicts.push_back(v);

    auto sweep = lemma_sweep(c.n, target, grid, log_spaced(c.rho_min, c.rho_max, c.rho_points), default_threads());
    v = Verdict{};
    v.name = "lemma band";
    v.statement = "0 < min ratio <= max ratio < inf over the sweep";
    v.lhs = sweep.F;
    v.rhs = sweep.E;
    v.status = (sweep.F > 0 && sweep.F <= sweep.E && std::isfinite(sweep.E) && sweep.B > 0) ? Status::Pass
                                                                                            : Status::Fail;
    out.verdicts.push_back(v);

    json mc;
    if (c.mc_samples > 0) {
        auto b = derivative_normal(c.n, target);
        std::vector<double> bd;
        for (const auto& x : b) bd.push_back(x.mid_double());
        auto e = monte_carlo_volume(bd, first.c.mid_double(), c.mc_samples, c.seed);
        double half = first.target_volume.get_d() / 2;
        v = Verdict{};
        v.name = "compression Monte Carlo";
        v.statement = "sampled slab volume at c within 4 sigma of half the target volume";
        v.lhs = std::fabs(e.estimate - half);
        v.rhs = 4 * e.sigma;
        v.status = v.lhs <= v.rhs ? Status::Pass : Status::Fail;
        out.verdicts.push_back(v);
        mc = {{"samples", e.samples}, {"seed", c.seed}, {"estimate", e.estimate}, {"sigma", e.sigma}};
    }

    out.j = {{"n", c.n},
             {"target", target.id()},
             {"target_volume", first.target_volume.get_str()},
             {"solutions", sols},
             {"c_identical", identical},
             {"lemma", {{"E", sweep.E}, {"F", sweep.F}, {"B", sweep.B}, {"rows", sweep.rows.size()}}},
             {"verdicts", json::parse(verdicts_to_json(out.verdicts))}};
    if (!mc.is_null()) out.j["monte_carlo"] = mc;
    out.csv = sweep_to_csv(sweep);
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "target %s, n = %d\nc = %.17g (identical over %zu Q values: %s)\n",
                  target.id().c_str(), c.n, first.c.mid_double(), grid.size(), identical ? "yes" : "no");
    os << buf;
    std::snprintf(buf, sizeof buf, "E = %.6g\nF = %.6g\nB = %.6g\n", sweep.E, sweep.F, sweep.B);
    os << buf << verdicts_to_text(out.verdicts);
    out.text = os.str();
    return out;
}

int run_volume(const Config& c) {
    auto r = volume_run(c);
    std::string fmt = c.format.empty() ? "json" : c.format;
    if (fmt == "json")
        emit(c.out, r.j.dump(2));
    else if (fmt == "csv")
        emit(c.out, r.csv);
    else if (fmt == "text")
        emit(c.out, r.text);
    else
        throw InvalidParameter("volume supports --format json, csv or text");
    return exit_code(combine(r.verdicts));
}

int run_approx(const Config& c) {
    auto target = parse_target(c.target);
    auto hs = make_h_grid(c, "1:4:2");
    ApproxOptions opt;
    opt.budget = c.budget;
    std::string fmt = c.format.empty() ? "json" : c.format;
    if (fmt != "json" && fmt != "text") throw InvalidParameter("approx supports --report json or text");

    std::string why;
    if (refuse_target(target, c.n, &why)) {
        std::cerr << "pgnlab: refused: " << why << "\n";
        std::vector<Verdict> vs{refusal_verdict(why)};
        emit(c.out, fmt == "json" ? verdicts_to_json(vs) : verdicts_to_text(vs));
        return 2;
    }
    auto table = wstar_profile(target, c.n, hs, opt);
    std::vector<Verdict> verdicts;
    json witnesses = json::array();
    std::ostringstream wt;
    for (const auto& row : table.rows) {
        if (!row.ok()) continue;
        const auto& p = row.best.poly.coeffs;
        json w = {{"H", row.H}};
        try {
            auto wit = nearest_root(p, target);
            w["witness"] = json::parse(witness_to_json(wit));
        } catch (const NoRealRoot&) {
            w["witness"] = nullptr;
        }
        auto v = acc_check(p, target);
        v.name += " H=" + std::to_string(row.H);
        w["root_proximity"] = to_string(v.status);
        verdicts.push_back(v);
        witnesses.push_back(w);
    }
    if (fmt == "json") {
        json j = json::parse(wstar_to_json(table));
        j["witnesses"] = witnesses;
        j["verdicts"] = json::parse(verdicts_to_json(verdicts));
        emit(c.out, j.dump(2));
    } else {
        emit(c.out, wstar_to_text(table) + verdicts_to_text(verdicts));
    }
    for (const auto& row : table.rows)
        if (!row.ok()) return 2;
    return exit_code(combine(verdicts));
}

int run_verify(const Config& c) {
    std::string fmt = c.format.empty() ? "json" : c.format;
    if (fmt != "json" && fmt != "text") throw InvalidParameter("verify supports --format json or text");
    if (c.mode == "uniform") {
        auto t = uniform_table(2, c.uniform_max);
        emit(c.out, fmt == "json" ? uniform_table_to_json(t) : uniform_table_to_text(t));
        return exit_code(combine(t.verdicts));
    }
    if (c.mode == "lemma") {
        auto r = volume_run(c);
        emit(c.out, fmt == "json" ? r.j.dump(2) : r.text);
        return exit_code(combine(r.verdicts));
    }

    auto target = parse_target(c.target);
    auto grid = make_q_grid(c);
    auto topt = transfer_options(c);
    ApproxOptions aopt;
    aopt.budget = std::max(c.budget, 1e9);
    std::vector<Verdict> all;
    json j = {{"config", config_json(c, "verify")}, {"target", target.id()}, {"n", c.n}};

    // Minkowski's bounds hold for every target, so they are checked even when
    // the exponent relations are refused.
    auto dual = psi_profile(target, c.n, BodyFamily::LinearForm, grid, minima_options(c));
    bool refused = refuse_target(target, c.n);
    ExponentReport rep;
    ConsistencyReport cons;
    if (refused) {
        ProfileTable empty;
        empty.n = c.n;
        rep = exponent_report(target, c.n, empty, empty, topt);
        for (auto& v : minkowski_verdicts(dual)) all.push_back(v);
        WStarTable none;
        none.n = c.n;
        none.target_id = target.id();
        cons = theorem_consistency_report(rep, none, topt);
    } else {
        auto primal = psi_profile(target, c.n, BodyFamily::Primal, grid, minima_options(c));
        rep = exponent_report(target, c.n, primal, dual, topt);
        auto wt = wstar_profile(target, c.n, make_h_grid(c, "1:6:2"), aopt);
        cons = theorem_consistency_report(rep, wt, topt);
        j["wstar"] = json::parse(wstar_to_json(wt));
    }
    for (auto& v : rep.verdicts) all.push_back(v);
    for (auto& v : cons.verdicts) all.push_back(v);
    UniformTable ut;
    if (c.uniform_max >= 2) {
        ut = uniform_table(2, c.uniform_max);
        for (auto& v : ut.verdicts) all.push_back(v);
        j["uniform"] = json::parse(uniform_table_to_json(ut));
    }
    Status s = combine(all);
    j["exponents"] = json::parse(report_to_json(rep));
    j["consistency"] = json::parse(consistency_to_json(cons));
    j["verdicts"] = json::parse(verdicts_to_json(all));
    j["status"] = to_string(s);
    if (fmt == "json") {
        emit(c.out, j.dump(2));
    } else {
        std::string text = report_to_text(rep) + consistency_to_text(cons);
        if (c.uniform_max >= 2) text += uniform_table_to_text(ut);
        text += "overall: " + to_string(s) + "\n";
        emit(c.out, text);
    }
    return exit_code(s);
}

int run_plot(const Config& c) {
    std::vector<ProfileTable> tables;
    for (const auto& path : c.inputs)
        for (auto& t : read_profiles(slurp(path))) tables.push_back(std::move(t));
    emit(c.out, profile_svg(tables));
    return 0;
}

void add_grid(CLI::App* s, Config& c) {
    s->add_option("--Qmin", c.qmin, "smallest Q, a power of 10 (10, 1e2, 10^(3/2))")->capture_default_str();
    s->add_option("--Qmax", c.qmax, "largest Q, a power of 10")->capture_default_str();
    s->add_option("--Qpoints", c.qpoints, "grid points, equally spaced in log Q (0: ten per decade)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

void add_target(CLI::App* s, Config& c) {
    s->add_option("--target", c.target, "rat:p/q | alg:c0,...,ck@[lo,hi] | lac:b,factorial | dec:0.123")
        ->required();
    s->add_option("--n", c.n, "dimension")->check(CLI::Range(1, 8))->capture_default_str();
}

void add_out(CLI::App* s, Config& c, const std::string& formats) {
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember(CLI::detail::split(formats, ',')));
    s->add_option("--out", c.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pgnlab: parametric geometry of numbers laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file");
    bool print_config = false;
    app.add_flag("--print-config", print_config, "print the given options as a --config file and exit")
        ->configurable(false);
    Config c;

    auto* profile = app.add_subcommand("profile", "successive minima profiles and the joint psi diagram");
    add_target(profile, c);
    add_grid(profile, c);
    add_out(profile, c, "csv,json,svg");
    profile->add_option("--family", c.family, "primal, linear or both")
        ->check(CLI::IsMember({"primal", "linear", "both"}))
        ->capture_default_str();
    profile->add_option("--svg", c.svg, "also write the diagram to this file");
    profile->add_option("--budget", c.budget, "enumeration node budget per row")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    profile->add_flag("--force", c.force, "compute even when the exponent relations refuse the target");
    profile->add_flag("--dump-body", c.dump_body, "print the bodies at Qmin as JSON and exit");

    auto* exponents = app.add_subcommand("exponents", "limit estimates, exponents and transference verdicts");
    add_target(exponents, c);
    add_grid(exponents, c);
    add_out(exponents, c, "json,text");
    exponents->add_option("--tol", c.tol, "relative tolerance of identity checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    exponents->add_option("--budget", c.budget, "enumeration node budget per row")->check(CLI::PositiveNumber);

    auto add_volume_opts = [&](CLI::App* s) {
        s->add_option("--rho-points", c.rho_points, "slab widths per Q in the lemma sweep")->capture_default_str();
        s->add_option("--rho-min", c.rho_min, "smallest slab width")->capture_default_str();
        s->add_option("--rho-max", c.rho_max, "largest slab width")->capture_default_str();
        s->add_option("--mc-samples", c.mc_samples, "Monte Carlo cross-check of the compression (0: off)");
        s->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
    };
    auto* volume = app.add_subcommand("volume", "compression solve and lemma sweep");
    add_target(volume, c);
    add_grid(volume, c);
    add_out(volume, c, "json,csv,text");
    add_volume_opts(volume);

    auto* approx = app.add_subcommand("approx", "best polynomial approximations and w* profile");
    add_target(approx, c);
    approx->add_option("--H", c.H, "single height")->check(CLI::Range(2L, 1L << 40));
    approx->add_option("--H-grid", c.h_grid, "heights: '2,5,10' or k_lo:k_hi[:den] for 10^(k/den)");
    approx->add_option("--report,--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    approx->add_option("--out", c.out, "output file (default stdout)");
    approx->add_option("--budget", c.budget, "max coefficient tuples per height")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "full verdict battery");
    verify->add_option("mode", c.mode, "battery, lemma or uniform")
        ->check(CLI::IsMember({"battery", "lemma", "uniform"}))
        ->capture_default_str();
    verify->add_option("--target", c.target, "target (required except in uniform mode)");
    verify->add_option("--n", c.n, "dimension")->check(CLI::Range(1, 8))->capture_default_str();
    add_grid(verify, c);
    add_out(verify, c, "json,text");
    verify->add_option("--tol", c.tol, "relative tolerance of identity checks")->capture_default_str();
    verify->add_option("--H,--H-max", c.H, "single height for w*")->check(CLI::Range(2L, 1L << 40));
    verify->add_option("--H-grid", c.h_grid, "heights for w* (default 1:6:2, H <= 10^3)");
    verify->add_option("--budget", c.budget, "enumeration node budget per row")->check(CLI::PositiveNumber);
    verify->add_option("--uniform-max", c.uniform_max, "largest n of the U(n) table (< 2: skip)")
        ->capture_default_str();
    add_volume_opts(verify);

    auto* plot = app.add_subcommand("plot", "re-render the diagram from saved profile CSV files");
    plot->add_option("csv", c.inputs, "profile CSV files written by 'profile'")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", c.out, "SVG file (default stdout)");

    for (auto* s : {profile, exponents, volume, approx, verify, plot}) s->configurable();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (print_config) {
        std::cout << app.config_to_str(false, true);
        return 0;
    }

    try {
        if (*profile) return run_profile(c);
        if (*exponents) return run_exponents(c);
        if (*volume) return run_volume(c);
        if (*approx) return run_approx(c);
        if (*verify) {
            if (c.mode != "uniform" && c.target.empty()) throw InvalidParameter("verify needs --target");
            return run_verify(c);
        }
        if (*plot) return run_plot(c);
    } catch (const ParseError& e) {
        std::cerr << "pgnlab: parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InvalidParameter& e) {
        std::cerr << "pgnlab: invalid parameter: " << e.what() << "\n";
        return kExitInput;
    } catch (const InsufficientData& e) {
        std::cerr << "pgnlab: insufficient data: " << e.what() << "\n";
        return kExitInput;
    } catch (const IoError& e) {
        std::cerr << "pgnlab: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "pgnlab: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitInput;
}
