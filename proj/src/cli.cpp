#include "slabio/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "slabio/commutators.hpp"
#include "slabio/green.hpp"
#include "slabio/kernels.hpp"
#include "slabio/parallel.hpp"
#include "slabio/sampler.hpp"
#include "slabio/thermal.hpp"

namespace slabio {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s) {
    double v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;
    const auto [p, ec] = std::from_chars(b, e, v);
    if (s.empty() || ec != std::errc() || p != e || !std::isfinite(v))
        throw UsageError("not a finite number: '" + s + "'");
    return v;
}

// Shortest round-trip text, so tables are byte-stable.
std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

void add_complex(std::vector<std::string>& cols, const std::string& name) {
    cols.push_back(name + "_re");
    cols.push_back(name + "_im");
}

void push(Row& r, cplx v) {
    r.emplace_back(v.real());
    r.emplace_back(v.imag());
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = "slabio-json";
        j["version"] = 1;
        j["command"] = t.command;
        for (const auto& [k, v] : t.meta) j[k] = v;
        j["columns"] = t.columns;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : t.rows) {
            auto a = nlohmann::ordered_json::array();
            for (const auto& c : r) {
                if (const double* d = std::get_if<double>(&c))
                    a.push_back(*d);
                else if (const std::int64_t* n = std::get_if<std::int64_t>(&c))
                    a.push_back(*n);
                else
                    a.push_back(std::get<std::string>(c));
            }
            rows.push_back(a);
        }
        j["rows"] = rows;
        os << j.dump(1) << '\n';
        return os.str();
    }
    os << "# slabio-csv v1 command=" << t.command;
    for (const auto& [k, v] : t.meta) os << ' ' << k << '=' << v;
    os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            if (const double* d = std::get_if<double>(&r[i]))
                os << num(*d);
            else if (const std::int64_t* n = std::get_if<std::int64_t>(&r[i]))
                os << *n;
            else
                os << std::get<std::string>(r[i]);
        }
        os << '\n';
    }
    return os.str();
}

struct Common {
    std::string stack, omega, omega_unit = "rad/s", k = "0", k_unit = "1/m", pol = "both", format = "csv", out;
    double temp = 300.0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* c, Common& o, bool with_k = true) {
    c->add_option("--stack", o.stack, "Stack JSON file")->required();
    c->add_option("--omega", o.omega, "Frequency grid: a,b,c or lin:start:stop:count")->required();
    c->add_option("--omega-unit", o.omega_unit, "rad/s, eV, or um (vacuum wavelength)")
        ->check(CLI::IsMember({"rad/s", "eV", "um"}));
    if (with_k) {
        c->add_option("--k", o.k, "Transverse wavenumber grid, same syntax as --omega");
    }
    c->add_option("--k-unit", o.k_unit, "1/m, 1/um, ratio (of omega/c), or deg (vacuum angle)")
        ->check(CLI::IsMember({"1/m", "1/um", "ratio", "deg"}));
    c->add_option("--pol", o.pol, "s, p, or both")->check(CLI::IsMember({"s", "p", "both"}));
    c->add_option("--temp", o.temp, "Temperature in K")->check(CLI::NonNegativeNumber);
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--out", o.out, "Output file (default stdout)");
}

struct Point {
    double omega, k;
};

std::vector<double> omegas(const Common& o) {
    std::vector<double> w;
    for (double v : parse_grid(o.omega)) w.push_back(omega_from(v, o.omega_unit));
    return w;
}

std::vector<Point> points(const Common& o) {
    const auto ks = parse_grid(o.k);
    std::vector<Point> pts;
    for (double w : omegas(o))
        for (double k : ks) pts.push_back({w, k_from(k, o.k_unit, w)});
    return pts;
}

std::vector<Pol> pols(const Common& o) {
    if (o.pol == "s") return {Pol::s};
    if (o.pol == "p") return {Pol::p};
    return {Pol::s, Pol::p};
}

std::string where(const Point& p, const std::string& pol) {
    return "omega=" + num(p.omega) + " k=" + num(p.k) + " pol=" + pol;
}

// Runs f over the grid on the worker pool and concatenates per-point rows in
// grid order. Warnings go to err in the same order.
Table sweep(Table t, const std::vector<Point>& pts, std::ostream& err,
            const std::function<std::vector<Row>(const Point&, std::vector<std::string>&)>& f) {
    std::vector<std::vector<Row>> rows(pts.size());
    std::vector<std::vector<std::string>> warn(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { rows[i] = f(pts[i], warn[i]); });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (const auto& w : warn[i]) err << "warning: " << w << '\n';
        for (auto& r : rows[i]) t.rows.push_back(std::move(r));
    }
    return t;
}

Table cmd_coeffs(const Stack& st, const Common& o, std::ostream& err) {
    Table t;
    t.command = "coeffs";
    t.columns = {"omega", "k", "pol"};
    for (const char* c : {"r0n", "t0n", "tn0", "rn0"}) add_complex(t.columns, c);
    for (int j = 1; j < st.n(); ++j)
        for (const char* c : {"D", "phi0p", "phi0m", "phinp", "phinm"}) add_complex(t.columns, c + std::to_string(j));
    const auto qs = pols(o);
    return sweep(std::move(t), points(o), err, [&](const Point& p, std::vector<std::string>& warn) {
        const ModeContext ctx = make_context(st, p.omega, p.k);
        std::vector<Row> out;
        for (Pol q : qs) {
            const ScatterSet ss = scatter_set(ctx, st, q);
            const IOMatrix io = io_matrix(ss);
            for (const auto& w : io.warnings) warn.push_back(where(p, name(q)) + ": " + w);
            Row r{p.omega, p.k, std::string(name(q))};
            push(r, ss.r0n);
            push(r, ss.t0n);
            push(r, ss.tn0);
            push(r, ss.rn0);
            for (int j = 1; j < st.n(); ++j) {
                const auto u = static_cast<std::size_t>(j);
                const Mat2& f = io.phi[u - 1];
                push(r, ss.D[u]);
                push(r, f(0, 0));
                push(r, f(0, 1));
                push(r, f(1, 0));
                push(r, f(1, 1));
            }
            out.push_back(std::move(r));
        }
        return out;
    });
}

Table cmd_thermal(const Stack& st, const Common& o, std::ostream& err) {
    Table t;
    t.command = "thermal";
    t.meta = {{"T", num(o.temp)}};
    t.columns = {"omega", "k", "pol", "n_bose", "regime0", "regimen", "w0", "wn"};
    const auto qs = pols(o);
    return sweep(std::move(t), points(o), err, [&](const Point& p, std::vector<std::string>&) {
        const ModeContext ctx = make_context(st, p.omega, p.k);
        std::vector<Row> out;
        for (Pol q : qs) {
            const CommutatorSet cs = commutator_set(ctx, st, q);
            out.push_back({p.omega, p.k, std::string(name(q)), bose(p.omega, o.temp), std::string(name(regime(ctx, 0))),
                           std::string(name(regime(ctx, ctx.n()))), emission_w(cs, o.temp, Side::zero),
                           emission_w(cs, o.temp, Side::n)});
        }
        return out;
    });
}

struct SampleOpts {
    std::size_t realizations = 10000;
    int nodes = 64;
    std::string side = "both";
};

Table cmd_sample(const Stack& st, const Common& o, const SampleOpts& so, std::ostream& err) {
    Table t;
    t.command = "sample";
    t.meta = {{"T", num(o.temp)}, {"seed", std::to_string(o.seed)}};
    t.columns = {"omega", "k", "pol", "side", "nodes", "realizations", "w_est", "se", "w_exact"};
    std::vector<Side> sides;
    if (so.side != "n") sides.push_back(Side::zero);
    if (so.side != "0") sides.push_back(Side::n);
    // The sampler parallelizes over realizations, so grid points run in order.
    for (const Point& p : points(o)) {
        const ModeContext ctx = make_context(st, p.omega, p.k);
        for (Pol q : pols(o)) {
            const CommutatorSet cs = commutator_set(ctx, st, q);
            for (Side side : sides) {
                SamplePlan plan;
                plan.omega = p.omega;
                plan.k = p.k;
                plan.q = q;
                plan.T = o.temp;
                plan.nodes = {so.nodes};
                plan.realizations = so.realizations;
                plan.seed = o.seed;
                const SampleEstimate e = sample_emission(plan, st, side);
                for (const auto& w : e.warnings) err << "warning: " << where(p, name(q)) << ": " << w << '\n';
                t.rows.push_back({p.omega, p.k, std::string(name(q)), std::string(side == Side::zero ? "0" : "n"),
                                  std::int64_t{so.nodes}, static_cast<std::int64_t>(so.realizations), e.w, e.se,
                                  emission_w(cs, o.temp, side)});
            }
        }
    }
    return t;
}

struct KernelOpts {
    std::string kind = "R0n", window = "gaussian", kw, rho, rho_unit = "m";
    int layer = 0;
};

Table cmd_kernels(const Stack& st, const Common& o, const KernelOpts& ko) {
    const KernelKind kind = parse_kernel_kind(ko.kind);
    const double rscale = ko.rho_unit == "um" ? 1e-6 : ko.rho_unit == "nm" ? 1e-9 : 1.0;
    std::vector<double> rho;
    for (double r : parse_grid(ko.rho)) rho.push_back(r * rscale);
    const double kw_raw = parse_number(ko.kw);
    Table t;
    t.command = "kernels";
    t.meta = {{"kind", name(kind)}, {"layer", std::to_string(ko.layer)}, {"window", ko.window}};
    t.columns = {"omega", "kw", "rho"};
    for (const char* c : {"I", "Q", "C", "D", "E"}) add_complex(t.columns, c);
    for (double w : omegas(o)) {
        Window win;
        win.shape = ko.window == "exponential" ? Window::Shape::exponential : Window::Shape::gaussian;
        win.kw = k_from(kw_raw, o.k_unit, w);
        const KernelField f = kernel_radial(st, w, kind, ko.layer, win, rho);
        for (const auto& s : f.samples) {
            Row r{w, win.kw, s.rho};
            for (cplx v : {s.I, s.Q, s.C, s.D, s.E}) push(r, v);
            t.rows.push_back(std::move(r));
        }
    }
    return t;
}

double default_tolerance(const std::string& suite) {
    if (suite == "commutators") return 1e-10;
    if (suite == "unitarity") return 1e-12;
    if (suite == "kirchhoff") return 1e-8;
    return 1e-6;
}

struct Check {
    std::string pol;
    double residual = 0;
    bool skipped = false;
};

std::vector<Check> check_commutators(const ModeContext& ctx, const Stack& st, Pol q) {
    const CommutatorSet cs = commutator_set(ctx, st, q);
    double res = std::max({closure_error(cs, Side::zero), closure_error(cs, Side::n), cross_closure_error(cs)});
    for (const auto& L : cs.layers) {
        const double tr = L.C_far.trace().real();
        const Eigen::SelfAdjointEigenSolver<Mat2> eig(L.C_far, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-14 * std::max(tr, 0.0)) res = std::max(res, 1.0);
        const Mat2 back = L.tau_far * L.tau_far.adjoint();
        const double scale = L.C_far.cwiseAbs().maxCoeff();
        const double diff = (back - L.C_far).cwiseAbs().maxCoeff();
        res = std::max(res, scale > 0 ? diff / scale : diff);
    }
    return {{name(q), res, false}};
}

std::vector<Check> check_unitarity(const ModeContext& ctx, const Stack& st, Pol q) {
    const CommutatorSet cs = commutator_set(ctx, st, q);
    BosonizedSet b;
    try {
        b = bosonize(cs);
    } catch (const RegimeError&) {
        return {{name(q), 0.0, true}};
    }
    // Absorbing outer media correlate the two outputs; the off-diagonal is then
    // the normalized cross commutator rather than zero.
    Mat2 expected = Mat2::Identity();
    const cplx x = cs.c_cross / std::sqrt(cs.c_out0.real() * cs.c_outn.real());
    expected(0, 1) = x;
    expected(1, 0) = std::conj(x);
    return {{name(q), (bosonic_gram(b) - expected).cwiseAbs().maxCoeff(), false}};
}

std::vector<Check> check_kirchhoff(const ModeContext& ctx, const Stack& st, Pol q, double T) {
    if (regime(ctx, 0) != Regime::propagating || regime(ctx, ctx.n()) != Regime::propagating)
        return {{name(q), 0.0, true}};
    return {{name(q), kirchhoff_residual(ctx, st, q, T), false}};
}

double region_probe(const Stack& st, int j) { return j == 0 || j == st.n() ? 0.0 : 0.5 * st.thickness(j); }

std::vector<Check> check_green(const Stack& st, const Point& p, int nodes) {
    const ModeSolution m = solve_mode(st, p.omega, p.k);
    QuadratureSpec spec;
    spec.nodes_per_layer = nodes;
    double res = 0.0;
    for (int j = 0; j <= st.n(); ++j)
        for (int jp = 0; jp <= st.n(); ++jp)
            res = std::max(res,
                           verify_green_identity(m, st, j, jp, region_probe(st, j), region_probe(st, jp), spec).residual);
    return {{"sp", res, false}};
}

struct VerifyOpts {
    std::string suite;
    double tol = -1;
    int nodes = 200;
};

int cmd_verify(const Stack& st, const Common& o, const VerifyOpts& vo, Table& t, std::ostream& err) {
    const double tol = vo.tol > 0 ? vo.tol : default_tolerance(vo.suite);
    const auto qs = pols(o);
    const auto pts = points(o);
    if (vo.suite == "green") {
        const int n = st.n();
        if (!(epsilon(st, 0, pts.front().omega).imag() > 0) || !(epsilon(st, n, pts.front().omega).imag() > 0))
            throw PreconditionError("the green suite needs Im eps > 0 in both outer media");
    }
    std::vector<std::vector<Check>> res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const Point& p = pts[i];
        if (vo.suite == "green") {
            res[i] = check_green(st, p, vo.nodes);
            return;
        }
        const ModeContext ctx = make_context(st, p.omega, p.k);
        for (Pol q : qs) {
            std::vector<Check> c;
            if (vo.suite == "commutators")
                c = check_commutators(ctx, st, q);
            else if (vo.suite == "unitarity")
                c = check_unitarity(ctx, st, q);
            else
                c = check_kirchhoff(ctx, st, q, o.temp);
            res[i].insert(res[i].end(), c.begin(), c.end());
        }
    });

    std::size_t checked = 0, skipped = 0, failed = 0;
    double worst = 0.0;
    Row worst_row;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (const auto& c : res[i]) {
            if (c.skipped) {
                ++skipped;
                continue;
            }
            ++checked;
            const bool ok = c.residual <= tol;
            Row r{pts[i].omega, pts[i].k, c.pol, c.residual, std::string(ok ? "worst" : "fail")};
            if (!ok) {
                ++failed;
                t.rows.push_back(r);
            }
            if (!(c.residual <= worst) || worst_row.empty()) {
                worst = c.residual;
                worst_row = r;
            }
        }
    }
    if (failed == 0 && !worst_row.empty()) t.rows.push_back(worst_row);
    const bool pass = failed == 0 && checked > 0;
    t.command = "verify";
    t.meta = {{"suite", vo.suite},       {"tolerance", num(tol)},          {"checked", std::to_string(checked)},
              {"skipped", std::to_string(skipped)}, {"max_residual", num(worst)}, {"result", pass ? "pass" : "fail"}};
    t.columns = {"omega", "k", "pol", "residual", "status"};
    err << "verify " << vo.suite << ": " << checked << " checked, " << skipped << " skipped, max residual "
        << num(worst) << " (tolerance " << num(tol) << "): " << (pass ? "PASS" : "FAIL") << '\n';
    if (checked == 0) err << "no grid point was checked\n";
    return pass ? 0 : 1;
}

struct GreenOpts {
    int j = 0, jp = 0, nodes = 200;
    double z = 0, zp = 0, tol = 1e-6;
    std::string rule = "simpson";
};

int cmd_green_check(const Stack& st, const Common& o, const GreenOpts& go, Table& t, std::ostream& err) {
    const auto pts = points(o);
    if (pts.size() != 1) throw UsageError("green-check takes a single (omega, k) point");
    const ModeSolution m = solve_mode(st, pts[0].omega, pts[0].k);
    t.command = "green-check";
    t.meta = {{"j", std::to_string(go.j)}, {"jp", std::to_string(go.jp)}, {"z", num(go.z)},
              {"zp", num(go.zp)},          {"rule", go.rule}};
    t.columns = {"omega", "k", "nodes", "residual", "observed_order"};
    double first = 0.0, prev = 0.0;
    for (int level = 0; level < 3; ++level) {
        QuadratureSpec spec;
        spec.nodes_per_layer = go.nodes << level;
        spec.rule = go.rule == "trapezoid" ? Rule::trapezoid : Rule::simpson;
        const double r = verify_green_identity(m, st, go.j, go.jp, go.z, go.zp, spec).residual;
        const double order = level == 0 || r <= 0 ? std::nan("") : std::log2(prev / r);
        t.rows.push_back({pts[0].omega, pts[0].k, std::int64_t{spec.nodes_per_layer}, r, order});
        if (level == 0) first = r;
        prev = r;
    }
    const bool pass = first <= go.tol;
    err << "green-check: residual " << num(first) << " at " << go.nodes << " nodes/layer (tolerance " << num(go.tol)
        << "): " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

void emit(const Table& t, const Common& o, std::ostream& out) {
    const std::string body = render(t, o.format);
    if (o.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + o.out + "' for writing");
    f << body;
    if (!f) throw UsageError("failed writing '" + o.out + "'");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.rfind("lin:", 0) == 0) {
        const auto parts = split(spec.substr(4), ':');
        if (parts.size() != 3) throw UsageError("linspace grid is lin:start:stop:count, got '" + spec + "'");
        const double a = parse_number(parts[0]), b = parse_number(parts[1]);
        int n = 0;
        const auto [p, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
        if (ec != std::errc() || p != parts[2].data() + parts[2].size() || n < 1)
            throw UsageError("grid count must be a positive integer, got '" + parts[2] + "'");
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * (double(i) / (n - 1));
        if (n > 1) v.back() = b;
        return v;
    }
    std::vector<double> v;
    for (const auto& s : split(spec, ',')) v.push_back(parse_number(s));
    return v;
}

double omega_from(double v, const std::string& unit) {
    double w = 0;
    if (unit == "rad/s")
        w = v;
    else if (unit == "eV")
        w = v * kElementaryCharge / si().hbar;
    else if (unit == "um")
        w = 2.0 * pi * si().c / (v * 1e-6);
    else
        throw UsageError("unknown frequency unit '" + unit + "' (rad/s, eV, um)");
    if (!(w > 0) || !std::isfinite(w)) throw UsageError("frequency must be positive, got " + num(v) + " " + unit);
    return w;
}

double k_from(double v, const std::string& unit, double omega) {
    double k = 0;
    const double k0 = omega / si().c;
    if (unit == "1/m")
        k = v;
    else if (unit == "1/um")
        k = v * 1e6;
    else if (unit == "ratio")
        k = v * k0;
    else if (unit == "deg")
        k = k0 * std::sin(v * pi / 180.0);
    else
        throw UsageError("unknown wavenumber unit '" + unit + "' (1/m, 1/um, ratio, deg)");
    if (!(k >= 0) || !std::isfinite(k)) throw UsageError("transverse wavenumber must be non-negative, got " + num(v));
    return k;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Input-output relations and thermal emission of planar multilayer stacks"};
    app.name("slabio");
    app.require_subcommand(1);

    Common o;
    auto* coeffs = app.add_subcommand("coeffs", "Scattering coefficients and noise couplings per grid point");
    add_common(coeffs, o);
    auto* thermal = app.add_subcommand("thermal", "Thermal output intensity on both sides");
    add_common(thermal, o);

    auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of the thermal output intensity");
    add_common(sample, o);
    SampleOpts so;
    sample->add_option("--realizations", so.realizations, "Number of realizations")->check(CLI::PositiveNumber);
    sample->add_option("--nodes", so.nodes, "Midpoint cells per layer")->check(CLI::Range(2, 1 << 20));
    sample->add_option("--side", so.side, "0, n, or both")->check(CLI::IsMember({"0", "n", "both"}));

    auto* kernels = app.add_subcommand("kernels", "Windowed radial kernel profiles");
    add_common(kernels, o, false);
    KernelOpts ko;
    kernels->add_option("--kind", ko.kind, "R0n, Rn0, T0n, Tn0, Phi0+, Phi0-, Phin+, Phin-");
    kernels->add_option("--layer", ko.layer, "Layer index for the Phi kinds");
    kernels->add_option("--window", ko.window, "gaussian or exponential")
        ->check(CLI::IsMember({"gaussian", "exponential"}));
    kernels->add_option("--kw", ko.kw, "Window scale, in --k-unit")->required();
    kernels->add_option("--rho", ko.rho, "Radial grid, same syntax as --omega")->required();
    kernels->add_option("--rho-unit", ko.rho_unit, "m, um, or nm")->check(CLI::IsMember({"m", "um", "nm"}));

    auto* verify = app.add_subcommand("verify", "Run an identity suite over the grid");
    add_common(verify, o);
    VerifyOpts vo;
    verify->add_option("--suite", vo.suite, "commutators, unitarity, kirchhoff, or green")
        ->required()
        ->check(CLI::IsMember({"commutators", "unitarity", "kirchhoff", "green"}));
    verify->add_option("--tol", vo.tol, "Override the suite tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--nodes", vo.nodes, "Quadrature intervals per layer (green suite)")->check(CLI::Range(2, 1 << 20));

    auto* green = app.add_subcommand("green-check", "Green identity at one point with a refinement study");
    add_common(green, o);
    GreenOpts go;
    green->add_option("--j", go.j, "Region of z");
    green->add_option("--jp", go.jp, "Region of z'");
    green->add_option("--z", go.z, "z in m, local to region j");
    green->add_option("--zp", go.zp, "z' in m, local to region jp");
    green->add_option("--nodes", go.nodes, "Quadrature intervals per layer")->check(CLI::Range(2, 1 << 20));
    green->add_option("--rule", go.rule, "simpson or trapezoid")->check(CLI::IsMember({"simpson", "trapezoid"}));
    green->add_option("--tol", go.tol, "Residual tolerance")->check(CLI::PositiveNumber);

    std::vector<const char*> argv{"slabio"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Stack st = load_stack_file(o.stack);
        Table t;
        int code = 0;
        if (*coeffs)
            t = cmd_coeffs(st, o, err);
        else if (*thermal)
            t = cmd_thermal(st, o, err);
        else if (*sample)
            t = cmd_sample(st, o, so, err);
        else if (*kernels)
            t = cmd_kernels(st, o, ko);
        else if (*verify)
            code = cmd_verify(st, o, vo, t, err);
        else
            code = cmd_green_check(st, o, go, t, err);
        emit(t, o, out);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const PassivityError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace slabio
