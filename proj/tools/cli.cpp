#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "lhyp/errors.hpp"
#include "lhyp/expr.hpp"
#include "lhyp/reconstruction.hpp"
#include "lhyp/verification.hpp"

namespace lhyp::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string input;
    std::string family;
    std::optional<double> r0;
    int grid = 10;
    double extent = 0.5;
    std::string center = "0,0";
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
    std::vector<std::string> tol;
    double from = -3.0;
    double to = 3.0;
    int samples = 61;
};

// ---------------------------------------------------------------------------
// Parsing helpers

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        while (end && *end == ' ') ++end;
        if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v))
            throw InputError(what + ": bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.size() != count)
        throw InputError(what + ": expected " + std::to_string(count) + " comma-separated numbers, got \"" + text +
                         "\"");
    return out;
}

cplx json_complex(const json& j, const std::string& what)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError(what + ": expected a number or [re, im]");
}

ExtComplex json_ext(const json& j, const std::string& what)
{
    if (j.is_string() && (j == "inf" || j == "infinity")) return ExtComplex::infinity();
    return json_complex(j, what);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ExtComplex& z)
{
    if (z.is_infinite()) return "inf";
    return to_json(z.value());
}

const json& member(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing \"" + std::string(key) + "\"");
    return j.at(key);
}

json load_input(const std::string& src)
{
    if (src.empty()) throw InputError("--input is required");
    std::string text = src;
    const auto first = src.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (src[first] != '{' && src[first] != '[')) {
        std::ifstream f(src);
        if (!f) throw InputError("cannot read input file '" + src + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON input: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Congruence input

struct CongruenceInput {
    enum Kind { family, rank2, general } kind = family;
    MaximalFamily fam;
    Congruence congruence = Congruence::analytic({});
    std::optional<Rank2Graph> graph;
    json echo;
};

CongruenceInput read_congruence(const Config& cfg)
{
    CongruenceInput in;
    if (!cfg.family.empty()) {
        const auto v = parse_numbers(cfg.family, 4, "--family");
        in.fam = MaximalFamily::from_lambdas({v[0], v[1]}, {v[2], v[3]}, cfg.r0.value_or(0.0));
        in.echo = {{"family", {{"lam1", {v[0], v[1]}}, {"lam2", {v[2], v[3]}}, {"r0", in.fam.r0}}}};
    } else {
        const json j = load_input(cfg.input);
        in.echo = j;
        if (j.contains("family")) {
            const json& f = j["family"];
            double r0 = f.contains("r0") ? f["r0"].get<double>() : 0.0;
            if (cfg.r0) r0 = *cfg.r0;
            if (f.contains("lam1") || f.contains("lam2"))
                in.fam = MaximalFamily::from_lambdas(json_complex(member(f, "lam1", "family"), "lam1"),
                                                     json_complex(member(f, "lam2", "family"), "lam2"), r0);
            else
                in.fam = MaximalFamily::from_triple(json_complex(member(f, "a", "family"), "a"),
                                                    json_complex(member(f, "b", "family"), "b"),
                                                    json_complex(member(f, "c", "family"), "c"), r0);
        } else if (j.contains("graph")) {
            const json& g = j["graph"];
            in.kind = CongruenceInput::rank2;
            if (g.contains("mu2")) {
                const Expr e = Expr::parse(g["mu2"].get<std::string>());
                in.graph = Rank2Graph{[e](const Jet2& m) { return e(m); }};
            } else {
                const Expr e = Expr::parse(member(g, "mu2bar", "graph").get<std::string>());
                in.graph = Rank2Graph::from_mu2bar([e](const Jet2& m) { return e(m); });
            }
            in.congruence = in.graph->congruence();
        } else if (j.contains("congruence")) {
            const json& c = j["congruence"];
            in.kind = CongruenceInput::general;
            const Expr e1 = Expr::parse(member(c, "mu1", "congruence").get<std::string>());
            const Expr e2 = Expr::parse(member(c, "mu2", "congruence").get<std::string>());
            in.congruence = Congruence::analytic([e1, e2](const Jet2& nu) { return std::array<Jet2, 2>{e1(nu), e2(nu)}; });
        } else {
            throw InputError("input needs one of \"family\", \"graph\" or \"congruence\"");
        }
    }
    if (in.kind == CongruenceInput::family) {
        if (in.fam.degenerate()) throw InputError("family is degenerate (ac = b^2)");
        in.graph = maximal_family_graph(in.fam);
        in.congruence = in.graph->congruence();
    }
    return in;
}

ParamGrid read_grid(const Config& cfg)
{
    if (cfg.grid < 2) throw InputError("--grid must be at least 2");
    if (!(cfg.extent > 0.0) || !std::isfinite(cfg.extent)) throw InputError("--extent must be positive");
    const auto c = parse_numbers(cfg.center, 2, "--center");
    return {cplx(c[0], c[1]), cfg.extent, cfg.grid};
}

// finite singular points of a family inside the square widened by margin
std::vector<cplx> singular_in_square(const MaximalFamily& f, const ParamGrid& g, double margin)
{
    std::vector<cplx> out;
    for (const ExtComplex& p : f.singular_points()) {
        if (p.is_infinite()) continue;
        const cplx d = p.value() - g.center;
        if (std::max(std::abs(d.real()), std::abs(d.imag())) <= g.extent + margin) out.push_back(p.value());
    }
    return out;
}

std::string list_points(const std::vector<cplx>& pts)
{
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? " " : "") << pts[k].real() << "," << pts[k].imag();
    return os.str();
}

// ---------------------------------------------------------------------------
// Output

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

    void write(const std::string& text)
    {
        if (path_.empty()) {
            fallback_ << text;
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw IoError("cannot write '" + path_ + "'");
        f << text;
        if (!f) throw IoError("write failed for '" + path_ + "'");
    }

private:
    std::string path_;
    std::ostream& fallback_;
};

std::string format_or(const Config& cfg, const std::string& fallback, std::initializer_list<const char*> allowed,
                      const char* command)
{
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw InputError(std::string(command) + " does not support --format " + f);
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const Config& cfg, std::ostream& out, std::ostream& err)
{
    const std::string fmt = format_or(cfg, "json", {"json", "csv"}, "analyze");
    const CongruenceInput in = read_congruence(cfg);
    const ParamGrid grid = read_grid(cfg);
    const double r_const = cfg.r0.value_or(0.0);
    const double margin = 0.25 * grid.spacing();

    json points = json::array(), excluded = json::array();
    std::ostringstream csv;
    csv << "nu_re,nu_im,r,rho_re,rho_im,sigma_re,sigma_im,sigma_abs,delta,rank,lagrangian_defect,class\n";
    const std::vector<cplx> chart = chart_singular_nodes(in.congruence, grid);
    for (int jj = 0; jj < grid.n; ++jj)
        for (int ii = 0; ii < grid.n; ++ii) {
            const cplx nu = grid.at(ii, jj);
            std::string reason;
            if (std::find(chart.begin(), chart.end(), nu) != chart.end())
                reason = "outside the Phi chart";
            else if (in.kind == CongruenceInput::family && in.fam.singular_distance(nu) < margin)
                reason = "within the exclusion margin of a singular point";
            if (reason.empty()) {
                try {
                    const LocalJet j = in.congruence.jet(nu);
                    const double r = in.kind == CongruenceInput::family && in.fam.has_lambda_chart()
                                         ? r_closed_form_family(in.fam, nu)
                                         : r_const;
                    const OpticalData o = optical_scalars(j, r);
                    const RankResult rk = rank(j);
                    const double lag = lagrangian_defect(j);
                    const char* cls = to_string(classify_metric(j));
                    points.push_back({{"nu", to_json(nu)},
                                      {"r", r},
                                      {"rho", to_json(o.rho)},
                                      {"sigma", to_json(o.sigma)},
                                      {"sigma_abs", std::abs(o.sigma)},
                                      {"delta", o.delta},
                                      {"theta", o.theta},
                                      {"lambda", o.lambda},
                                      {"rank", rk.rank},
                                      {"rank_indeterminate", rk.indeterminate},
                                      {"lagrangian_defect", lag},
                                      {"class", cls}});
                    csv << num(nu.real()) << ',' << num(nu.imag()) << ',' << num(r) << ',' << num(o.rho.real()) << ','
                        << num(o.rho.imag()) << ',' << num(o.sigma.real()) << ',' << num(o.sigma.imag()) << ','
                        << num(std::abs(o.sigma)) << ',' << num(o.delta) << ',' << rk.rank << ',' << num(lag) << ','
                        << cls << '\n';
                    continue;
                } catch (const CausticError& e) {
                    reason = e.what();
                } catch (const ChartError& e) {
                    reason = e.what();
                }
            }
            excluded.push_back({{"nu", to_json(nu)}, {"reason", reason}});
        }

    if (points.empty()) {
        std::vector<cplx> pts;
        for (const json& e : excluded) pts.push_back(json_complex(e["nu"], "nu"));
        err << "error: every grid node is chart-singular or excluded: " << list_points(pts) << "\n";
        return kChartSingular;
    }
    if (!excluded.empty()) err << "note: " << excluded.size() << " grid node(s) excluded near singular points\n";

    Output o(cfg.out, out);
    if (fmt == "csv") {
        o.write(csv.str());
    } else {
        const json report = {{"command", "analyze"},
                             {"input", in.echo},
                             {"grid", {{"center", to_json(grid.center)}, {"extent", grid.extent}, {"n", grid.n}}},
                             {"points", points},
                             {"excluded", excluded}};
        o.write(report.dump(2) + "\n");
    }
    return kPass;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err)
{
    const std::string fmt = format_or(cfg, "json", {"json", "csv"}, "verify");
    SuiteOptions opt;
    opt.seed = cfg.seed;
    for (const std::string& t : cfg.tol) {
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--tol expects KEY=VAL, got '" + t + "'");
        opt.tolerance_overrides[t.substr(0, eq)] = parse_numbers(t.substr(eq + 1), 1, "--tol " + t)[0];
    }
    const std::vector<CheckRecord> records = run_suite(opt);
    for (const auto& [key, _] : opt.tolerance_overrides) {
        const bool known = std::any_of(records.begin(), records.end(), [&](const CheckRecord& r) { return r.id == key; });
        if (!known) throw InputError("--tol: unknown check '" + key + "'");
    }

    bool pass = true;
    for (const auto& [c, ok] : criterion_summary(records)) {
        err << c << (ok ? " pass" : " FAIL") << "\n";
        pass = pass && ok;
    }

    Output o(cfg.out, out);
    if (fmt == "csv") {
        std::vector<const CheckRecord*> order;
        for (const CheckRecord& r : records) order.push_back(&r);
        std::stable_partition(order.begin(), order.end(), [](const CheckRecord* r) { return !r->pass; });
        std::ostringstream csv;
        csv << "test,criterion,measured,comparison,tolerance,pass\n";
        for (const CheckRecord* r : order)
            csv << r->id << ',' << r->criterion << ',' << num(r->measured) << ',' << to_string(r->comparison) << ','
                << num(r->tolerance) << ',' << (r->pass ? "true" : "false") << '\n';
        o.write(csv.str());
    } else {
        o.write(report_json(records, opt.seed));
    }
    return pass ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// reconstruct

// max |m1 m2 - 1| and max |K| from fine 9 x 9 patches centred on up to 5 x 5 mesh nodes;
// the mesh spacing itself is usually too coarse for fourth-order differences
std::pair<double, double> flatness_on_patches(const Congruence& c, const RField& r)
{
    const ParamGrid& g = r.grid;
    const double half = std::min(0.02, 0.25 * g.spacing());
    const int stride = std::max(1, (g.n + 4) / 5);
    double prod = 0.0, gauss = 0.0;
    for (int j = 0; j < g.n; j += stride)
        for (int i = 0; i < g.n; i += stride) {
            const RField local = solve_r_pde(c, {g.at(i, j), half, 9}, r.at(i, j));
            const SampledSurface s = orthogonal_surface(c, local);
            for (const ShapeSample& m : shape_operator_numeric(s)) prod = std::max(prod, std::abs(m.m1 * m.m2 - 1.0));
            for (double k : gauss_curvature_numeric(s)) gauss = std::max(gauss, std::abs(k));
        }
    return {prod, gauss};
}

json check(double measured, double tol)
{
    return {{"measured", measured}, {"tolerance", tol}, {"pass", !std::isnan(measured) && measured <= tol}};
}

int cmd_reconstruct(const Config& cfg, std::ostream& out, std::ostream& err)
{
    const std::string fmt = format_or(cfg, "obj", {"obj", "csv"}, "reconstruct");
    if (cfg.out.empty()) throw InputError("reconstruct needs --out (the sidecar goes to <out>.json)");
    const CongruenceInput in = read_congruence(cfg);
    ParamGrid grid = read_grid(cfg);
    const bool is_family = in.kind == CongruenceInput::family;
    const double margin = 0.05;

    json sidecar = {{"command", "reconstruct"}, {"input", in.echo}};
    if (is_family) {
        // shrink the square until it clears the singular points
        const std::vector<cplx> sing = singular_in_square(in.fam, grid, margin);
        double allowed = grid.extent;
        for (const cplx& p : sing) {
            const cplx d = p - grid.center;
            allowed = std::min(allowed, std::max(std::abs(d.real()), std::abs(d.imag())) - margin);
        }
        if (allowed <= 0.0) {
            err << "error: grid center is within " << margin << " of singular points: " << list_points(sing) << "\n";
            return kChartSingular;
        }
        if (allowed < grid.extent) {
            err << "note: extent clipped from " << grid.extent << " to " << allowed << " to avoid singular points "
                << list_points(sing) << "\n";
            sidecar["clipped_extent"] = allowed;
            grid.extent = allowed;
        }
    }

    const int base = (grid.n - 1) / 2;
    const double rb = is_family && in.fam.has_lambda_chart() ? r_closed_form_family(in.fam, grid.at(base, base))
                                                             : cfg.r0.value_or(0.0);
    RField r;
    try {
        r = solve_r_pde(in.congruence, grid, rb);
    } catch (const IntegrabilityError& e) {
        err << "error: input is not Lagrangian; integrability defect " << num(e.max_defect()) << "\n";
        return kNotLagrangian;
    } catch (const SingularPointsError& e) {
        err << "error: chart-singular grid nodes: " << list_points(e.points()) << "\n";
        return kChartSingular;
    }
    const SampledSurface s = orthogonal_surface(in.congruence, r);

    std::ostringstream mesh;
    write_mesh(s, mesh, fmt == "csv" ? MeshFormat::csv : MeshFormat::obj);
    Output(cfg.out, out).write(mesh.str());

    sidecar["grid"] = {{"center", to_json(grid.center)}, {"extent", grid.extent}, {"n", grid.n}};
    sidecar["integrability"] = check(r.max_defect, 1e-7);
    sidecar["orthogonality"] = check(orthogonality_defect(s), 1e-7);
    bool pass = sidecar["integrability"]["pass"].get<bool>() && sidecar["orthogonality"]["pass"].get<bool>();
    {
        const auto [prod, gauss] = flatness_on_patches(in.congruence, r);
        if (is_family) {
            sidecar["flatness"] = {{"m1m2", check(prod, 1e-4)}, {"gauss_curvature", check(gauss, 1e-4)}};
            pass = pass && prod <= 1e-4 && gauss <= 1e-4;
        } else {
            sidecar["flatness"] = {{"m1m2", {{"measured", prod}}}, {"gauss_curvature", {{"measured", gauss}}}};
        }
    }
    if (is_family) {
        const EquidistantResult e = verify_equidistant(s, axis_geodesics(in.fam).first);
        sidecar["equidistance"] = check(e.defect, 1e-6);
        sidecar["equidistance"]["distance"] = e.median;
        pass = pass && e.defect <= 1e-6;
    }
    sidecar["pass"] = pass;
    Output(cfg.out + ".json", out).write(sidecar.dump(2) + "\n");
    if (!pass) err << "reconstruct: sidecar checks failed, see " << cfg.out << ".json\n";
    return pass ? kPass : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// convert and geodesic

OrientedGeodesic read_geodesic(const json& g)
{
    if (g.contains("mu1") || g.contains("mu2"))
        return OrientedGeodesic::make(json_ext(member(g, "mu1", "geodesic"), "mu1"),
                                      json_ext(member(g, "mu2", "geodesic"), "mu2"));
    if (g.contains("begin") || g.contains("end"))
        return from_endpoints(json_ext(member(g, "begin", "geodesic"), "begin"),
                              json_ext(member(g, "end", "geodesic"), "end"));
    return from_xi_eta({json_complex(member(g, "xi", "geodesic"), "xi"), json_complex(member(g, "eta", "geodesic"), "eta")});
}

json point_json(const HalfSpacePoint& p)
{
    const BallPoint b = ball_from_halfspace(p);
    return {{"halfspace", {{"z", to_json(p.z)}, {"t", p.t}}}, {"ball", {b.y[0], b.y[1], b.y[2]}}};
}

json geodesic_json(const OrientedGeodesic& g)
{
    const BoundaryEndpoints e = endpoints(g);
    json out = {{"mu1", to_json(g.mu1)}, {"mu2", to_json(g.mu2)}, {"begin", to_json(e.begin)}, {"end", to_json(e.end)}};
    if (e.begin.is_finite() && e.end.is_finite()) {
        const XiEtaChart x = xi_eta_of(g);
        out["xi"] = to_json(x.xi);
        out["eta"] = to_json(x.eta);
    }
    const OrientedGeodesic rev = reverse_orientation(g);
    out["reversed"] = {{"mu1", to_json(rev.mu1)}, {"mu2", to_json(rev.mu2)}};
    return out;
}

int cmd_convert(const Config& cfg, std::ostream& out, std::ostream&)
{
    format_or(cfg, "json", {"json"}, "convert");
    const json j = load_input(cfg.input);
    json result;
    if (j.contains("point")) {
        const json& p = j["point"];
        if (p.contains("ball")) {
            const json& y = p["ball"];
            if (!y.is_array() || y.size() != 3) throw InputError("point.ball: expected [x, y, z]");
            result["point"] = point_json(halfspace_from_ball(BallPoint::make({y[0].get<double>(), y[1].get<double>(),
                                                                               y[2].get<double>()})));
        } else {
            const json& h = member(p, "halfspace", "point");
            result["point"] = point_json(
                HalfSpacePoint::make(json_complex(member(h, "z", "halfspace"), "z"), member(h, "t", "halfspace").get<double>()));
        }
    } else if (j.contains("geodesic")) {
        result["geodesic"] = geodesic_json(read_geodesic(j["geodesic"]));
    } else {
        throw InputError("convert input needs \"point\" or \"geodesic\"");
    }
    Output(cfg.out, out).write(result.dump(2) + "\n");
    return kPass;
}

int cmd_geodesic(const Config& cfg, std::ostream& out, std::ostream&)
{
    const std::string fmt = format_or(cfg, "json", {"json", "csv"}, "geodesic");
    if (cfg.samples < 2) throw InputError("--samples must be at least 2");
    if (!(cfg.to > cfg.from)) throw InputError("--to must exceed --from");
    const json j = load_input(cfg.input);
    const OrientedGeodesic g = read_geodesic(j.contains("geodesic") ? j["geodesic"] : j);
    const GeodesicArc arc = arc_of(g);

    json samples = json::array();
    std::ostringstream csv;
    csv << "r,z_re,z_im,t,x,y,z\n";
    for (int k = 0; k < cfg.samples; ++k) {
        const double r = cfg.from + (cfg.to - cfg.from) * k / (cfg.samples - 1);
        const HalfSpacePoint p = g.in_chart() ? point_at(g, r) : arc.point(r);
        const BallPoint b = ball_from_halfspace(p);
        json s = point_json(p);
        s["r"] = r;
        samples.push_back(s);
        csv << num(r) << ',' << num(p.z.real()) << ',' << num(p.z.imag()) << ',' << num(p.t) << ',' << num(b.y[0]) << ','
            << num(b.y[1]) << ',' << num(b.y[2]) << '\n';
    }
    if (fmt == "csv")
        Output(cfg.out, out).write(csv.str());
    else
        Output(cfg.out, out).write(json({{"geodesic", geodesic_json(g)}, {"samples", samples}}).dump(2) + "\n");
    return kPass;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* app, Config& cfg)
{
    app->add_option("--input", cfg.input, "JSON file or inline JSON document");
    app->add_option("--out", cfg.out, "output path (default stdout)");
    app->add_option("--format", cfg.format, "json, csv or obj")->check(CLI::IsMember({"json", "csv", "obj"}));
}

void add_grid(CLI::App* app, Config& cfg)
{
    app->add_option("--family", cfg.family, "maximal family \"l1re,l1im,l2re,l2im\"");
    app->add_option_function<double>("--r0", [&cfg](double v) { cfg.r0 = v; }, "family offset, or constant r");
    app->add_option("--grid", cfg.grid, "grid points per side");
    app->add_option("--extent", cfg.extent, "half-width of the parameter square");
    app->add_option("--center", cfg.center, "center of the parameter square \"re,im\"");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Oriented geodesics of hyperbolic 3-space: congruences, maximal surfaces and tubes"};
    app.require_subcommand(1);
    CLI::App* analyze = app.add_subcommand("analyze", "optical scalars, rank and metric class on a grid");
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "orthogonal surface mesh and defect sidecar");
    CLI::App* convert = app.add_subcommand("convert", "convert point or geodesic representations");
    CLI::App* geodesic = app.add_subcommand("geodesic", "sample Phi along a geodesic");
    for (CLI::App* a : {analyze, verify, reconstruct, convert, geodesic}) add_common(a, cfg);
    add_grid(analyze, cfg);
    add_grid(reconstruct, cfg);
    verify->add_option("--seed", cfg.seed, "seed for the randomized checks");
    verify->add_option("--tol", cfg.tol, "tolerance override CHECK_ID=VALUE (repeatable)");
    geodesic->add_option("--from", cfg.from, "first arclength parameter");
    geodesic->add_option("--to", cfg.to, "last arclength parameter");
    geodesic->add_option("--samples", cfg.samples, "number of samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(cfg, out, err);
        if (*verify) return cmd_verify(cfg, out, err);
        if (*reconstruct) return cmd_reconstruct(cfg, out, err);
        if (*convert) return cmd_convert(cfg, out, err);
        return cmd_geodesic(cfg, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kInputError;
    } catch (const ChartError& e) {
        err << "error: " << e.what() << "\n";
        return kChartSingular;
    } catch (const Error& e) {
        // invalid geodesics, degenerate or out-of-domain values supplied by the user
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.push_back("lhyp");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lhyp::cli
