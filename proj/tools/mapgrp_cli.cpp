// mapgrp: command-line front end for the mapping-group library.
//
//   mapgrp periods      --input problem.json [--out DIR]
//   mapgrp integrate    --input problem.json [--out DIR] [--svg]
//   mapgrp multiply     --input problem.json [--out DIR]
//   mapgrp inverse      --input problem.json [--out DIR]
//   mapgrp components   --input problem.json [--out DIR]
//   mapgrp discreteness --input presentation.json [--out DIR]
//   mapgrp demo-exp-pathology [--n 2,4,6] [--radius R] [--out DIR] [--svg]
//   mapgrp verify --suite NAME
//
// Exit codes: 0 success, 1 acceptance failure, 2 input error, 3 numeric error, 4 ambiguity.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mapgrp/acceptance.hpp"
#include "mapgrp/calculus.hpp"
#include "mapgrp/errors.hpp"
#include "mapgrp/monodromy.hpp"
#include "mapgrp/pathology.hpp"
#include "mapgrp/problem.hpp"

using namespace mapgrp;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string out = ".";
    std::optional<int> steps;
    std::optional<double> period_tol;
    std::optional<double> tol_report;
    bool svg = false;
    std::string suite = "all";
    std::vector<int> n_list{2, 4, 6, 8, 10};
    double radius = 2.0;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string fmt_full(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> entry_header(std::size_t n, const std::string& prefix)
{
    std::vector<std::string> h;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h.push_back(prefix + std::to_string(i) + std::to_string(j));
    return h;
}

void append_entries(std::vector<std::string>& row, const Matrix& m)
{
    for (cplx z : m.entries())
        row.push_back(format_complex(z));
}

std::string read_text(const std::string& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw_invalid("cannot read " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// FNV-1a over the input text and the effective flags.
std::string digest(const Options& o, const std::string& text)
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix(text);
    mix(o.steps ? std::to_string(*o.steps) : "-");
    mix(o.period_tol ? fmt_full(*o.period_tol) : "-");
    mix(o.tol_report ? fmt_full(*o.tol_report) : "-");
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Problem load(const Options& o)
{
    if (o.input.empty())
        throw Error(ErrorKind::schema, "--input is required");
    Problem p = load_problem(o.input);
    if (o.steps) {
        if (*o.steps < 1)
            throw_invalid("--steps must be positive");
        p.control.steps = *o.steps;
    }
    if (o.period_tol)
        p.period_tol = *o.period_tol;
    if (o.tol_report)
        p.control.report_tol = *o.tol_report;
    return p;
}

fs::path out_file(const Options& o, const std::string& name)
{
    fs::create_directories(o.out);
    return fs::path(o.out) / name;
}

void write_text(const fs::path& file, const std::string& text)
{
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw_invalid("cannot write " + file.string());
    out << text;
}

// Sample points for the group-law commands: the listed points, else a grid over the domain.
std::vector<Point> sample_points(const Problem& p)
{
    if (!p.points.empty())
        return p.points;
    std::vector<Point> out;
    if (const auto* iv = std::get_if<IntervalDomain>(&p.domain.variant())) {
        for (int k = 0; k <= 10; ++k)
            out.emplace_back(iv->a + (iv->b - iv->a) * k / 10.0, 0.0);
    } else if (p.domain.is_circle()) {
        for (int k = 0; k < 12; ++k)
            out.emplace_back(2.0 * std::numbers::pi * k / 12.0, 0.0);
    } else if (const auto* ch = std::get_if<ChartDomain>(&p.domain.variant())) {
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j)
                out.emplace_back(ch->x0 + (ch->x1 - ch->x0) * i / 4.0, ch->y0 + (ch->y1 - ch->y0) * j / 4.0);
    } else {
        throw Error(ErrorKind::schema, "\"points\" are required on a punctured plane");
    }
    return out;
}

PeriodMap periods_of(const Problem& p, const OneForm& alpha, const LoopBasis& basis)
{
    if (!p.group.is_abelian_quotient())
        return period_vector(p.group, alpha, basis, p.control);
    PeriodMap out{p.group, basis, {}};
    for (const Path& loop : basis.loops)
        out.values.push_back(abelian_period(p.group, alpha, loop));
    return out;
}

void require_loops(const Problem& p, const char* command)
{
    if (!p.domain.is_punctured_plane() && !p.domain.is_circle())
        throw Error(ErrorKind::schema, std::string(command) + ": domain must be a punctured plane or the circle");
}

int cmd_periods(const Options& o)
{
    const Problem p = load(o);
    require_loops(p, "periods");
    const LoopBasis basis = fundamental_loops(p.domain, p.base);
    const std::size_t n = p.group.matrix_dim();
    std::vector<std::string> header{"form", "generator", "puncture"};
    for (auto& h : entry_header(n, "p"))
        header.push_back(h);
    header.push_back("distance_to_identity");
    CsvWriter csv(header);
    for (const auto& name : p.form_order) {
        const BasedMapElement e = p.element(name);
        const PeriodMap pm = periods_of(p, e.form(), basis);
        for (std::size_t j = 0; j < pm.values.size(); ++j) {
            std::vector<std::string> row{name, std::to_string(j + 1),
                                         j < basis.punctures.size() ? format_complex(basis.punctures[j]) : "circle"};
            append_entries(row, pm.values[j].matrix());
            row.push_back(fmt_full(pm.values[j].distance_to_identity()));
            csv.row(row);
        }
        const bool ok = verify_integrability(e, p.period_tol).status() == Integrability::verified;
        std::printf("%s: %s (max period distance %s, tol %s)\n", name.c_str(), ok ? "integrable" : "non-integrable",
                    fmt(pm.max_distance_to_identity()).c_str(), fmt(p.period_tol).c_str());
    }
    csv.save(out_file(o, "periods.csv"));
    return 0;
}

Path path_to(const Problem& p, const std::vector<Point>& vertices)
{
    if (std::abs(vertices.front() - p.base) > 1e-9)
        throw Error(ErrorKind::schema, "paths must start at the base point");
    return polyline(vertices);
}

std::string entry_chart(const Problem& p, const OneForm& alpha, const Path& path, const std::string& title)
{
    const EvolutionResult r = evol_dense(p.group, pullback(alpha, path), 200, p.control);
    const std::size_t n = p.group.matrix_dim();
    std::vector<double> t;
    std::vector<Series> series;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            series.push_back({"|f" + std::to_string(i) + std::to_string(j) + "|", {}});
    for (const auto& [s, g] : r.dense) {
        t.push_back(s);
        for (std::size_t k = 0; k < n * n; ++k)
            series[k].y.push_back(std::abs(g.matrix().entries()[k]));
    }
    return svg_line_chart(title, "path parameter t", t, series);
}

int cmd_integrate(const Options& o)
{
    const Problem p = load(o);
    const auto& alpha = p.section_form("integrate", "form");
    const BasedMapElement e = verify_integrability(
        BasedMapElement(p.group, alpha, p.base, Integrability::unverified, p.control), p.period_tol);
    const bool verified = e.status() == Integrability::verified;
    if (!verified && p.paths.empty())
        throw Error(ErrorKind::ambiguity,
                    "integrate: the form is not integrable on this domain and no paths were given; "
                    "values depend on the path");
    const FullMapElement f{GroupElement::identity(p.group), e};
    const std::size_t n = p.group.matrix_dim();
    std::vector<std::string> header{"source", "point"};
    for (auto& h : entry_header(n, "f"))
        header.push_back(h);
    CsvWriter csv(header);
    if (verified) {
        for (Point m : p.points) {
            std::vector<std::string> row{"point", format_complex(m)};
            append_entries(row, evaluate(f, m).matrix());
            csv.row(row);
        }
    } else if (!p.points.empty()) {
        std::printf("note: %zu point(s) skipped; only path endpoints are well defined\n", p.points.size());
    }
    for (std::size_t k = 0; k < p.paths.size(); ++k) {
        const Path path = path_to(p, p.paths[k]);
        std::vector<std::string> row{"path " + std::to_string(k + 1), format_complex(path.end())};
        append_entries(row, evaluate(f, path.end(), path).matrix());
        csv.row(row);
    }
    csv.save(out_file(o, "integrate.csv"));
    std::printf("form %s: %s; %zu value(s) written\n", alpha.text().value_or("<samples>").c_str(),
                verified ? "integrable" : "path-dependent", verified ? p.points.size() + p.paths.size() : p.paths.size());
    if (o.svg) {
        std::optional<Path> path;
        if (!p.paths.empty())
            path = path_to(p, p.paths.front());
        else if (!p.points.empty())
            path = canonical_path(p.domain, p.base, p.points.front());
        if (path)
            write_text(out_file(o, "integrate.svg"), entry_chart(p, alpha, *path, "entry magnitudes along the path"));
    }
    return 0;
}

void group_law_table(const Options& o, const Problem& p, const BasedMapElement& result,
                     const std::function<double(Point)>& residual, const std::string& file)
{
    const std::size_t n = p.group.matrix_dim();
    std::vector<std::string> header{"point"};
    for (auto& h : entry_header(n, "a"))
        header.push_back(h);
    header.push_back("residual");
    CsvWriter csv(header);
    double worst = 0.0;
    for (Point m : sample_points(p)) {
        std::vector<std::string> row{format_complex(m)};
        append_entries(row, result.form()(m, 1.0));
        const double r = residual(m);
        worst = std::max(worst, r);
        row.push_back(fmt_full(r));
        csv.row(row);
    }
    csv.save(out_file(o, file));
    std::printf("consistency residual %s over %zu point(s)\n", fmt(worst).c_str(), sample_points(p).size());
}

int cmd_multiply(const Options& o)
{
    const Problem p = load(o);
    const BasedMapElement a(p.group, p.section_form("multiply", "left"), p.base, Integrability::unverified,
                            p.control);
    const BasedMapElement b(p.group, p.section_form("multiply", "right"), p.base, Integrability::unverified,
                            p.control);
    const BasedMapElement ab = multiply(a, b);
    group_law_table(o, p, ab, [&](Point m) { return frobenius_norm(ab.evol_at(m) - a.evol_at(m) * b.evol_at(m)); },
                    "multiply.csv");
    return 0;
}

int cmd_inverse(const Options& o)
{
    const Problem p = load(o);
    const BasedMapElement a(p.group, p.section_form("inverse", "form"), p.base, Integrability::unverified, p.control);
    const BasedMapElement inv = inverse(a);
    const Matrix id = Matrix::identity(p.group.matrix_dim());
    group_law_table(o, p, inv, [&](Point m) { return frobenius_norm(inv.evol_at(m) * a.evol_at(m) - id); },
                    "inverse.csv");
    return 0;
}

int cmd_components(const Options& o)
{
    const Problem p = load(o);
    require_loops(p, "components");
    const LoopBasis basis = fundamental_loops(p.domain, p.base);
    CsvWriter csv({"form", "generator", "class"});
    std::vector<ComponentClass> classes;
    for (const auto& name : p.form_order) {
        classes.push_back(component_class(p.group, p.form(name), basis));
        const auto& c = classes.back().classes;
        std::string text;
        for (std::size_t j = 0; j < c.size(); ++j) {
            std::string cls;
            for (std::size_t k = 0; k < c[j].size(); ++k)
                cls += (k ? ";" : "") + std::to_string(c[j][k]);
            csv.row({name, std::to_string(j + 1), cls});
            text += (j ? ", (" : "(") + cls + ")";
        }
        std::printf("%s: class %s%s\n", name.c_str(), text.c_str(), classes.back().trivial() ? " (identity component)" : "");
    }
    for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = a + 1; b < classes.size(); ++b)
            std::printf("%s vs %s: %s\n", p.form_order[a].c_str(), p.form_order[b].c_str(),
                        classes[a] == classes[b] ? "same component" : "different components");
    csv.save(out_file(o, "components.csv"));
    return 0;
}

int cmd_discreteness(const Options& o)
{
    if (o.input.empty())
        throw Error(ErrorKind::schema, "--input is required");
    const PresentationFile pf = load_presentation(o.input);
    const DiscretenessReport r = discreteness_report(pf.presentation, pf.lattice);
    CsvWriter csv({"index", "invariant_factor"});
    std::string factors;
    for (std::size_t k = 0; k < r.invariant_factors.size(); ++k) {
        csv.row({std::to_string(k + 1), to_string(r.invariant_factors[k])});
        factors += (k ? " " : "") + to_string(r.invariant_factors[k]);
    }
    csv.row({"hom_rank", std::to_string(r.hom_rank)});
    csv.save(out_file(o, "discreteness.csv"));
    std::printf("invariant factors: %s\nhom_rank: %zu\nlattice rank: %zu\n%s\n",
                factors.empty() ? "(none)" : factors.c_str(), r.hom_rank, r.lattice_rank, r.verdict.c_str());
    return 0;
}

int cmd_pathology(const Options& o)
{
    const auto rows = exp_pathology(o.n_list, o.radius);
    CsvWriter csv({"n", "sup_deviation", "in_exp_image", "trace_at_n"});
    std::vector<double> x;
    Series s{"sup |h_n - 1|", {}};
    for (const auto& r : rows) {
        csv.row({std::to_string(r.n), fmt_full(r.sup_deviation), r.in_exp_image ? "true" : "false",
                 format_complex(r.trace_at_n)});
        std::printf("n=%d: sup deviation %s on |z|<=%g, h_n(n) %s the exponential image (trace %s)\n", r.n,
                    fmt(r.sup_deviation).c_str(), o.radius, r.in_exp_image ? "in" : "not in",
                    format_complex(r.trace_at_n).c_str());
        x.push_back(r.n);
        s.y.push_back(r.sup_deviation);
    }
    csv.save(out_file(o, "pathology.csv"));
    if (o.svg)
        write_text(out_file(o, "pathology.svg"), svg_line_chart("sup deviation of h_n from the identity", "n", x, {s}));
    return 0;
}

int cmd_verify(const Options& o)
{
    suite_criteria(o.suite); // unknown names raise invalid-argument before anything runs
    bool ok = true;
    for (const auto& r : run_suite(o.suite)) {
        std::printf("criterion %2d %s: %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        if (!r.pass)
            for (const auto& d : r.details)
                std::printf("    %s\n", d.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mapping groups C^inf(M,K): periods, evolutions, group law, topology reports"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool problem) {
        c->add_option("--input", o.input, problem ? "problem file (JSON)" : "presentation file (JSON)");
        c->add_option("--out", o.out, "output directory for CSV/SVG");
        if (problem) {
            c->add_option("--steps", o.steps, "integrator steps per unit parameter");
            c->add_option("--period-tol", o.period_tol, "distance-to-identity tolerance for trivial periods");
            c->add_option("--tol-report", o.tol_report, "flag evolutions whose error estimate exceeds this");
        }
    };
    struct Cmd {
        const char* name;
        const char* help;
        bool problem;
        int (*run)(const Options&);
    };
    const Cmd cmds[] = {
        {"periods", "period table and integrability verdict per form", true, cmd_periods},
        {"integrate", "evaluate the integrated map at points or along paths", true, cmd_integrate},
        {"multiply", "dressed product of two forms with consistency residual", true, cmd_multiply},
        {"inverse", "inverse of a form with consistency residual", true, cmd_inverse},
        {"components", "connected-component classes of abelian-valued maps", true, cmd_components},
        {"discreteness", "Smith form, hom rank and discreteness verdict of a presentation", false,
         cmd_discreteness},
    };
    int (*run)(const Options&) = nullptr;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        common(sub, c.problem);
        if (std::string(c.name) == "integrate")
            sub->add_flag("--svg", o.svg, "also write an SVG of entry magnitudes");
        sub->callback([&run, f = c.run] { run = f; });
    }
    CLI::App* demo = app.add_subcommand("demo-exp-pathology", "maps near the identity outside the exponential image");
    demo->add_option("--n", o.n_list, "values of n")->delimiter(',');
    demo->add_option("--radius", o.radius, "disk radius R >= 1");
    demo->add_option("--out", o.out, "output directory");
    demo->add_flag("--svg", o.svg, "also write an SVG of the sup deviation");
    demo->callback([&run] { run = cmd_pathology; });
    CLI::App* verify = app.add_subcommand("verify", "run an acceptance suite");
    verify->add_option("--suite", o.suite, "suite name");
    verify->callback([&run] { run = cmd_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        code = run(o);
    } catch (const Error& e) {
        std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.input.empty())
        std::fprintf(stderr, "%s: input digest %s, %.3f s\n", app.get_subcommands().front()->get_name().c_str(),
                     digest(o, read_text(o.input)).c_str(), secs);
    return code;
}
