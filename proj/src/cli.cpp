#include "tmoment/cli.hpp"

#include "tmoment/consistency.hpp"
#include "tmoment/errors.hpp"
#include "tmoment/extension.hpp"
#include "tmoment/extremal.hpp"
#include "tmoment/io.hpp"
#include "tmoment/synth.hpp"
#include "tmoment/variety.hpp"

#include <CLI11.hpp>

#include <optional>

namespace tmoment::cli {

namespace {

struct Options {
    std::string file;
    std::string mode = "auto";
    std::string format = "text";
    std::string out_file;
    std::string points_file;
    TolerancePolicy pol;
    int steps = 4;
    int degree = -1;
    std::string family;
    int n = 0;
    std::string a = "1/2";
    std::string a8 = "8";
    std::string a0 = "1";
};

Json point_json(const Point& w)
{
    Json a = Json::array();
    for (const auto& c : w) a.push_back(c.to_string());
    return a;
}

Json points_json(const std::vector<Point>& pts)
{
    Json a = Json::array();
    for (const auto& w : pts) a.push_back(point_json(w));
    return a;
}

Json names(const std::vector<MultiIndex>& idx)
{
    Json a = Json::array();
    for (const auto& e : idx) a.push_back(monomial_name(e));
    return a;
}

Json measure_json(const AtomicMeasure& mu)
{
    Json a = Json::array();
    for (std::size_t k = 0; k < mu.atoms.size(); ++k)
        a.push_back(Json{{"point", point_json(mu.atoms[k])}, {"density", mu.densities[k].to_string()}});
    return a;
}

Json variety_json(const VarietyReport& v)
{
    Json j;
    j["kind"] = to_string(v.kind);
    if (v.kind == VarietyKind::Finite) j["card"] = v.card();
    if (v.kind == VarietyKind::Finite) j["points"] = points_json(v.points);
    if (v.witness) j["common_factor"] = v.witness->to_string();
    if (!v.reason.empty()) j["reason"] = v.reason;
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

Json solve_json(const SolveReport& r)
{
    Json j;
    j["outcome"] = to_string(r.outcome);
    j["reason"] = r.reason;
    j["rank"] = r.rank;
    if (r.variety_card) j["card"] = *r.variety_card;
    if (!r.basis.empty()) j["basis"] = names(r.basis);
    if (r.witness) {
        j["witness"] = r.witness->to_string();
        j["witness_value"] = r.witness_value.to_string();
    }
    if (r.measure) j["atoms"] = measure_json(*r.measure);
    if (r.residual) j["residual"] = format_double(*r.residual);
    j["exact"] = r.exact;
    return j;
}

Json input_json(const Multisequence& beta)
{
    return Json{{"d", beta.dimension()},
                {"degree", beta.degree()},
                {"moments", beta.values().size()},
                {"mode", beta.is_exact() ? "exact" : "float"}};
}

bool scalar_array(const Json& a)
{
    for (const auto& v : a)
        if (v.is_structured()) return false;
    return true;
}

std::string scalar_text(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string inline_array(const Json& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + scalar_text(a[i]);
    return s + ")";
}

void render(const Json& j, std::ostream& out, int indent);

void render_array(const Json& a, std::ostream& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& v : a) {
        if (v.is_object()) {
            out << pad << "-\n";
            render(v, out, indent + 2);
        } else if (v.is_array() && scalar_array(v)) {
            out << pad << "- " << inline_array(v) << '\n';
        } else if (v.is_array()) {
            out << pad << "-\n";
            render_array(v, out, indent + 2);
        } else {
            out << pad << "- " << scalar_text(v) << '\n';
        }
    }
}

void render(const Json& j, std::ostream& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, v] : j.items()) {
        if (v.is_object()) {
            out << pad << key << ":\n";
            render(v, out, indent + 2);
        } else if (v.is_array()) {
            if (v.empty()) out << pad << key << ": none\n";
            else if (key == "point") out << pad << key << ": " << inline_array(v) << '\n';
            else {
                out << pad << key << ":\n";
                render_array(v, out, indent + 2);
            }
        } else {
            out << pad << key << ": " << scalar_text(v) << '\n';
        }
    }
}

void emit(const Json& report, const Options& o, std::ostream& out)
{
    if (o.format == "structured") out << report.dump(2) << '\n';
    else render(report, out, 0);
}

NumberMode number_mode(const Options& o) { return parse_number_mode(o.mode); }

Multisequence load_beta(const Options& o)
{
    return read_moments(load_json(o.file), number_mode(o));
}

std::optional<std::vector<Point>> load_supplied_points(const Options& o)
{
    if (o.points_file.empty()) return std::nullopt;
    return read_points(load_json(o.points_file), number_mode(o));
}

int cmd_analyze(const Options& o, std::ostream& out)
{
    const Multisequence beta = load_beta(o);
    const auto points = load_supplied_points(o);
    const TolerancePolicy& pol = o.pol;
    Json r;
    r["input"] = input_json(beta);
    MomentMatrix m = build_moment_matrix(beta);
    PsdVerdict psd = psd_check(m, pol);
    r["psd"] = Json{{"psd", psd.psd}};
    if (!psd.psd) {
        r["psd"]["witness"] = psd.witness->to_string();
        r["psd"]["witness_value"] = psd.witness_value.to_string();
    }
    KernelReport k = rank_kernel(m, pol);
    r["rank"] = k.rank;
    Json rel = Json::array();
    for (std::size_t i = 0; i < k.kernel.size(); ++i) rel.push_back(format_relation(k.kernel[i], k.free_monomials[i]));
    r["relations"] = rel;
    r["recursive"] = recursiveness_check(m, k, pol).recursive;

    std::optional<VarietyReport> v;
    try {
        v = points ? validate_points(k.kernel, beta.dimension(), *points, pol)
                   : compute_variety(k.kernel, beta.dimension(), pol);
    } catch (const Unsupported& e) {
        VarietyReport u;
        u.dimension = beta.dimension();
        u.reason = e.what();
        v = u;
    }
    r["variety"] = variety_json(*v);
    if (psd.psd) {
        ConsistencyVerdict c = consistency_check(beta, *v, pol);
        Json cj{{"status", to_string(c.status)}};
        if (c.witness) {
            cj["witness"] = c.witness->to_string();
            cj["witness_value"] = c.witness_value.to_string();
        }
        if (!c.reason.empty()) cj["reason"] = c.reason;
        r["consistency"] = cj;
    } else {
        r["consistency"] = "skipped";
    }
    if (v->kind == VarietyKind::Finite)
        r["extremal"] = Json{{"rank", k.rank}, {"card", v->card()}, {"extremal", k.rank == v->card()}};
    else
        r["extremal"] = Json{{"rank", k.rank}, {"card", to_string(v->kind)}, {"extremal", false}};
    SolveReport s = solve_extremal(beta, pol, points);
    r["solve"] = solve_json(s);
    r["exit_code"] = s.exit_code();
    emit(r, o, out);
    if (!o.out_file.empty() && s.measure) save_json(o.out_file, measure_to_json(*s.measure));
    return s.exit_code();
}

int cmd_solve(const Options& o, std::ostream& out)
{
    const Multisequence beta = load_beta(o);
    SolveReport s = solve_extremal(beta, o.pol, load_supplied_points(o));
    Json r;
    r["input"] = input_json(beta);
    r["solve"] = solve_json(s);
    r["exit_code"] = s.exit_code();
    emit(r, o, out);
    if (!o.out_file.empty() && s.measure) save_json(o.out_file, measure_to_json(*s.measure));
    return s.exit_code();
}

int cmd_variety(const Options& o, std::ostream& out)
{
    const Multisequence beta = load_beta(o);
    KernelReport k = rank_kernel(build_moment_matrix(beta), o.pol);
    VarietyReport v;
    try {
        v = compute_variety(k.kernel, beta.dimension(), o.pol);
    } catch (const Unsupported& e) {
        v.dimension = beta.dimension();
        v.reason = e.what();
    }
    Json r;
    r["input"] = input_json(beta);
    r["rank"] = k.rank;
    r["variety"] = variety_json(v);
    const int code = v.kind == VarietyKind::Unknown ? 3 : 0;
    r["exit_code"] = code;
    emit(r, o, out);
    if (!o.out_file.empty() && v.kind == VarietyKind::Finite)
        save_json(o.out_file, points_to_json(beta.dimension(), v.points));
    return code;
}

int cmd_extend(const Options& o, std::ostream& out)
{
    const Multisequence beta = load_beta(o);
    if (o.steps < 1) throw InputError("--steps", "must be >= 1");
    SearchReport s = extension_search(beta, o.steps, o.pol);
    Json r;
    r["input"] = input_json(beta);
    Json steps = Json::array();
    for (const auto& e : s.steps) {
        Json j;
        j["from"] = "M(" + std::to_string(e.order) + ")";
        j["rank"] = e.rank_n;
        j["determined"] = e.determined.size();
        j["undetermined"] = names(e.undetermined);
        j["conflicts"] = names(e.conflicts);
        j["well_defined"] = e.well_defined;
        if (e.rank_n1) j["rank_next"] = *e.rank_n1;
        j["hankel"] = e.hankel_ok;
        j["flat"] = e.flat;
        steps.push_back(j);
    }
    r["steps"] = steps;
    r["status"] = to_string(s.status);
    r["reason"] = s.reason;
    if (s.solve) r["solve"] = solve_json(*s.solve);
    if (s.residual) r["input_residual"] = format_double(s.residual->max_residual);
    r["exit_code"] = s.exit_code();
    emit(r, o, out);
    if (!o.out_file.empty() && s.solve && s.solve->measure) save_json(o.out_file, measure_to_json(*s.solve->measure));
    return s.exit_code();
}

// The eight points on y = x^3 carrying the derivation family.
std::vector<Point> cubic_points()
{
    auto p = [](const char* x, const char* y) { return Point{Scalar::parse(x), Scalar::parse(y)}; };
    return {p("-2", "-8"),
            p("0", "0"),
            p("2", "8"),
            p("1", "1"),
            p("-1/2+1/2*sqrt(13)", "-5+2*sqrt(13)"),
            p("-1/2-1/2*sqrt(13)", "-5-2*sqrt(13)"),
            p("-1", "-1"),
            p("1/2", "1/8")};
}

Scalar option_scalar(const std::string& text, const std::string& name, NumberMode mode)
{
    return read_scalar(Json(text), name, mode == NumberMode::Float ? NumberMode::Auto : mode);
}

int cmd_synth(const Options& o, std::ostream& out)
{
    const NumberMode mode = number_mode(o);
    std::optional<Multisequence> beta;
    if (!o.family.empty()) {
        if (!o.file.empty()) throw InputError("--family", "give either a file or a family, not both");
        if (o.family == "complex-circle") {
            if (o.n < 1) throw InputError("--n", "must be >= 1");
            const Scalar a = option_scalar(o.a, "--a", mode);
            if (a.sign() <= 0 || (Scalar(1) - a).sign() <= 0) throw InputError("--a", "must lie in (0, 1)");
            beta = complex_to_real(circle_family_gamma(o.n, a), o.pol);
        } else if (o.family == "cubic-functional") {
            SignedFunctional f;
            f.d = 2;
            f.atoms = cubic_points();
            f.weights.assign(8, Scalar(1));
            f.weights[7] = option_scalar(o.a8, "--a8", mode);
            f.derivation = FunctionalDerivation{option_scalar(o.a0, "--a0", mode),
                                                Derivation{Point{Scalar::rational(1, 2), Scalar::rational(1, 8)},
                                                           {Scalar(1), Scalar::rational(3, 4)}}};
            beta = beta_from_functional(f, o.degree < 0 ? 6 : o.degree);
        } else {
            throw InputError("--family", "unknown family '" + o.family + "'");
        }
    } else {
        if (o.file.empty()) throw InputError("synth", "needs a measure or functional file, or --family");
        if (o.degree < 0 || o.degree % 2) throw InputError("--degree", "an even degree >= 0 is required");
        const Json j = load_json(o.file);
        if (j.is_object() && j.contains("weights")) {
            beta = beta_from_functional(read_functional(j, mode), o.degree);
        } else {
            const AtomicMeasure mu = read_measure(j, mode);
            beta = beta_from_atoms(mu.atoms, mu.densities, mu.d, o.degree);
        }
    }
    if (mode == NumberMode::Float) beta = beta->as_float();
    const Json j = moments_to_json(*beta);
    if (!o.out_file.empty()) save_json(o.out_file, j);
    else out << j.dump(2) << '\n';
    return 0;
}

void common_options(CLI::App* sub, Options& o)
{
    sub->add_option("--mode", o.mode, "exact, float or auto")->check(CLI::IsMember({"auto", "exact", "float"}));
    sub->add_option("--tol-rank", o.pol.rank, "relative pivot threshold");
    sub->add_option("--tol-root", o.pol.root, "root isolation width");
    sub->add_option("--tol-residual", o.pol.residual, "relative residual threshold");
    sub->add_option("--tol-merge", o.pol.merge, "distance at which float points merge");
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", o.out_file, "write the result file here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Truncated moment problem tools", "tmoment"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "full pipeline report for a moments file");
    auto* solve = app.add_subcommand("solve", "extremal solver");
    auto* variety = app.add_subcommand("variety", "real variety of the moment matrix kernel");
    auto* extend = app.add_subcommand("extend", "recursive extension search");
    auto* synth = app.add_subcommand("synth", "moments from a measure, a functional or a family");
    for (auto* sub : {analyze, solve, variety, extend}) {
        sub->add_option("file", o.file, "moments file")->required();
        common_options(sub, o);
    }
    for (auto* sub : {analyze, solve}) sub->add_option("--points", o.points_file, "supplied variety points file");
    extend->add_option("--steps", o.steps, "maximum number of extension steps");
    synth->add_option("file", o.file, "measure or functional file");
    common_options(synth, o);
    synth->add_option("--degree", o.degree, "moment degree 2n");
    synth->add_option("--family", o.family, "complex-circle or cubic-functional");
    synth->add_option("--n", o.n, "complex-circle order");
    synth->add_option("--a", o.a, "complex-circle parameter in (0, 1)");
    synth->add_option("--a8", o.a8, "cubic-functional weight of the eighth point");
    synth->add_option("--a0", o.a0, "cubic-functional derivation coefficient");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        o.pol.validate();
        if (*analyze) return cmd_analyze(o, out);
        if (*solve) return cmd_solve(o, out);
        if (*variety) return cmd_variety(o, out);
        if (*extend) return cmd_extend(o, out);
        return cmd_synth(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace tmoment::cli
