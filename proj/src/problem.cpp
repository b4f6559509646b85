#include "mapgrp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mapgrp/errors.hpp"

namespace mapgrp {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::schema, "problem file: " + what); }

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        schema(where + " is missing \"" + key + "\"");
    return j.at(key);
}

double real_of(const json& j, const std::string& where)
{
    if (!j.is_number())
        schema(where + " must be a number");
    return j.get<double>();
}

cplx complex_of(const json& j, const std::string& where)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    schema(where + " must be a number or an [re, im] pair");
}

std::vector<Point> points_of(const json& j, const std::string& where)
{
    if (!j.is_array())
        schema(where + " must be a list of points");
    std::vector<Point> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(complex_of(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

std::string string_of(const json& j, const std::string& where)
{
    if (!j.is_string())
        schema(where + " must be a string");
    return j.get<std::string>();
}

GroupDescriptor parse_group(const json& g)
{
    const std::string type = string_of(need(g, "type", "group"), "group.type");
    if (type == "cstar")
        return GroupDescriptor::c_star();
    if (type == "abelian") {
        const json& lat = need(g, "lattice", "group");
        if (!lat.is_array())
            schema("group.lattice must be a list of generators");
        std::vector<std::vector<cplx>> gens;
        for (std::size_t k = 0; k < lat.size(); ++k)
            gens.push_back(points_of(lat[k], "group.lattice[" + std::to_string(k) + "]"));
        std::size_t d = g.contains("n") ? g.at("n").get<std::size_t>() : (gens.empty() ? 1 : gens.front().size());
        return GroupDescriptor::abelian(d, std::move(gens));
    }
    const json& n = need(g, "n", "group");
    if (!n.is_number_integer() || n.get<long long>() < 1)
        schema("group.n must be a positive integer");
    const std::size_t dim = n.get<std::size_t>();
    if (type == "GL") {
        const std::string field = g.contains("field") ? string_of(g.at("field"), "group.field") : "C";
        if (field != "C" && field != "R")
            schema("group.field must be \"C\" or \"R\"");
        return GroupDescriptor::general_linear(dim, field == "R" ? Field::real : Field::complex);
    }
    if (type == "SL")
        return GroupDescriptor::special_linear(dim);
    schema("unknown group type \"" + type + "\"");
}

Domain parse_domain(const json& d, std::optional<Point> base)
{
    const std::string type = string_of(need(d, "type", "domain"), "domain.type");
    if (type == "interval")
        return Domain::interval(real_of(need(d, "a", "domain"), "domain.a"), real_of(need(d, "b", "domain"), "domain.b"));
    if (type == "circle")
        return Domain::circle();
    if (type == "punctured_plane")
        return Domain::punctured_plane(points_of(need(d, "punctures", "domain"), "domain.punctures"),
                                       base.value_or(Point(0.0)));
    if (type == "chart") {
        const json& x = need(d, "x", "domain");
        const json& y = need(d, "y", "domain");
        if (!x.is_array() || x.size() != 2 || !y.is_array() || y.size() != 2)
            schema("chart domain needs \"x\": [x0, x1] and \"y\": [y0, y1]");
        return Domain::chart(real_of(x[0], "domain.x"), real_of(x[1], "domain.x"), real_of(y[0], "domain.y"),
                             real_of(y[1], "domain.y"));
    }
    schema("unknown domain type \"" + type + "\"");
}

std::string read_file(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw_invalid("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

// ---------------------------------------------------------------- Problem

const OneForm& Problem::form(const std::string& name) const
{
    const auto it = forms.find(name);
    if (it == forms.end())
        schema("no form named \"" + name + "\"");
    return it->second;
}

const OneForm& Problem::section_form(const std::string& section, const std::string& key) const
{
    if (const auto s = sections.find(section); s != sections.end())
        if (const auto k = s->second.find(key); k != s->second.end())
            return form(k->second);
    if (form_order.size() == 1)
        return form(form_order.front());
    schema("\"" + section + "\": {\"" + key + "\": ...} must name one of the forms");
}

BasedMapElement Problem::element(const std::string& name) const
{
    return BasedMapElement(group, form(name), base, Integrability::unverified, control);
}

Problem parse_problem(const std::string& json_text, const std::filesystem::path& directory)
{
    const json j = parse_json(json_text);
    if (!j.is_object())
        schema("top level must be an object");

    std::optional<Point> base;
    if (j.contains("base_point"))
        base = complex_of(j.at("base_point"), "base_point");
    const GroupDescriptor group = parse_group(need(j, "group", "problem"));
    const Domain domain = parse_domain(need(j, "domain", "problem"), base);
    Problem p{group, domain, base.value_or(domain.default_base()), {}, {}, {}, 1e-6, {}, {}, {}};
    if (!domain.contains(p.base))
        schema("base_point is not in the domain");

    if (j.contains("control")) {
        const json& c = j.at("control");
        if (c.contains("steps")) {
            if (!c.at("steps").is_number_integer() || c.at("steps").get<long long>() < 1)
                schema("control.steps must be a positive integer");
            p.control.steps = c.at("steps").get<int>();
        }
        if (c.contains("period_tol"))
            p.period_tol = real_of(c.at("period_tol"), "control.period_tol");
        if (c.contains("target_tol"))
            p.control.report_tol = real_of(c.at("target_tol"), "control.target_tol");
    }

    if (j.contains("forms")) {
        const json& fs = j.at("forms");
        if (!fs.is_object())
            schema("forms must be an object of named forms");
        for (const auto& [name, spec] : fs.items()) {
            const std::string where = "forms." + name;
            std::optional<OneForm> f;
            if (spec.contains("samples")) {
                std::filesystem::path file = string_of(spec.at("samples"), where + ".samples");
                if (file.is_relative())
                    file = directory / file;
                f = log_derivative_from_samples(load_samples(file, domain, group));
            } else if (spec.contains("dx") || spec.contains("dy")) {
                f = OneForm::parse_chart(domain, string_of(need(spec, "dx", where), where + ".dx"),
                                         string_of(need(spec, "dy", where), where + ".dy"));
            } else {
                f = OneForm::parse(domain, string_of(need(spec, "expr", where), where + ".expr"));
            }
            if (f->dim() != group.matrix_dim())
                schema(where + " has dimension " + std::to_string(f->dim()) + ", group needs " +
                       std::to_string(group.matrix_dim()));
            p.forms.emplace(name, *f);
            p.form_order.push_back(name);
        }
    }
    if (j.contains("points"))
        p.points = points_of(j.at("points"), "points");
    if (j.contains("paths")) {
        const json& ps = j.at("paths");
        if (!ps.is_array())
            schema("paths must be a list of polylines");
        for (std::size_t k = 0; k < ps.size(); ++k)
            p.paths.push_back(points_of(ps[k], "paths[" + std::to_string(k) + "]"));
    }
    for (const char* section : {"multiply", "inverse", "integrate", "periods", "components"}) {
        if (!j.contains(section))
            continue;
        for (const auto& [key, value] : j.at(section).items())
            if (value.is_string())
                p.sections[section][key] = value.get<std::string>();
    }
    return p;
}

Problem load_problem(const std::filesystem::path& file)
{
    return parse_problem(read_file(file), file.parent_path().empty() ? "." : file.parent_path());
}

PresentationFile parse_presentation(const std::string& json_text)
{
    const json j = parse_json(json_text);
    const json& n = need(j, "generators", "presentation");
    if (!n.is_number_integer() || n.get<long long>() < 0)
        schema("generators must be a non-negative integer");
    IntMatrix rel;
    if (j.contains("relations")) {
        const json& r = j.at("relations");
        if (!r.is_array())
            schema("relations must be an integer matrix");
        for (const auto& row : r) {
            if (!row.is_array())
                schema("relations must be an integer matrix");
            std::vector<BigInt> out;
            for (const auto& x : row) {
                if (!x.is_number_integer())
                    schema("relation entries must be integers");
                out.emplace_back(x.get<long long>());
            }
            rel.push_back(std::move(out));
        }
        if (!rel.empty() && rel.front().empty())
            rel.clear();
    }
    std::vector<std::vector<cplx>> gens{{cplx(0.0, 2.0 * std::numbers::pi)}};
    std::size_t dim = 1;
    if (j.contains("lattice")) {
        gens.clear();
        const json& lat = j.at("lattice");
        for (std::size_t k = 0; k < lat.size(); ++k)
            gens.push_back(points_of(lat[k], "lattice[" + std::to_string(k) + "]"));
        dim = gens.empty() ? 1 : gens.front().size();
    }
    return {AbelianPresentation(n.get<std::size_t>(), std::move(rel)), Lattice(dim, std::move(gens))};
}

PresentationFile load_presentation(const std::filesystem::path& file) { return parse_presentation(read_file(file)); }

Path polyline(const std::vector<Point>& vertices)
{
    if (vertices.size() < 2)
        throw_invalid("polyline: need at least two vertices");
    std::vector<Path> pieces;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
        pieces.push_back(Path::segment(vertices[k], vertices[k + 1]));
    return Path::concatenation(std::move(pieces));
}

// ---------------------------------------------------------------- CSV

std::string format_complex(cplx z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
    return buf;
}

cplx parse_complex(const std::string& text)
{
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty())
        throw Error(ErrorKind::parse, "empty complex number");
    if (s.back() != 'i') {
        std::size_t used = 0;
        const double re = std::stod(s, &used);
        if (used != s.size())
            throw Error(ErrorKind::parse, "malformed complex number '" + text + "'");
        return re;
    }
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    try {
        const std::string im_text = s.substr(split == std::string::npos ? 0 : split, s.size() - 1 - (split == std::string::npos ? 0 : split));
        const double re = split == std::string::npos ? 0.0 : std::stod(s.substr(0, split));
        const double im = (im_text == "+" || im_text.empty()) ? 1.0 : im_text == "-" ? -1.0 : std::stod(im_text);
        return {re, im};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::parse, "malformed complex number '" + text + "'");
    }
}

CsvWriter::CsvWriter(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void CsvWriter::row(std::vector<std::string> fields) { rows_.push_back(std::move(fields)); }

std::string CsvWriter::str() const
{
    std::string out;
    for (const auto& r : rows_) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k)
                out += ',';
            const std::string& f = r[k];
            if (f.find_first_of(",\"\r\n") != std::string::npos) {
                out += '"';
                for (char ch : f) {
                    if (ch == '"')
                        out += '"';
                    out += ch;
                }
                out += '"';
            } else {
                out += f;
            }
        }
        out += "\r\n";
    }
    return out;
}

void CsvWriter::save(const std::filesystem::path& file) const
{
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw_invalid("cannot write " + file.string());
    out << str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char ch = text[k];
        if (quoted) {
            if (ch == '"') {
                if (k + 1 < text.size() && text[k + 1] == '"') {
                    field += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && k + 1 < text.size() && text[k + 1] == '\n')
                ++k;
            if (any || !field.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (quoted)
        throw Error(ErrorKind::parse, "CSV: unterminated quoted field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

SampledMap load_samples(const std::filesystem::path& file, const Domain& domain, const GroupDescriptor& group)
{
    const auto rows = read_csv(read_file(file));
    if (rows.size() < 2)
        schema(file.string() + ": need a header and sample rows");
    const std::size_t n = group.matrix_dim();
    const std::size_t coords = domain.is_chart() ? 2 : 1;
    std::vector<std::pair<Point, Matrix>> samples;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != coords + n * n)
            schema(file.string() + ": row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                   " fields, expected " + std::to_string(coords + n * n));
        Point p = coords == 2 ? Point(std::stod(row[0]), std::stod(row[1])) : Point(std::stod(row[0]), 0.0);
        Matrix m(n);
        for (std::size_t k = 0; k < n * n; ++k)
            m.entries()[k] = parse_complex(row[coords + k]);
        samples.emplace_back(p, std::move(m));
    }
    int nx = int(samples.size()), ny = 1;
    if (coords == 2) {
        std::set<double> xs;
        for (const auto& s : samples)
            xs.insert(s.first.real());
        nx = int(xs.size());
        ny = int(samples.size()) / std::max(nx, 1);
        if (std::size_t(nx) * std::size_t(ny) != samples.size())
            schema(file.string() + ": chart samples must fill a rectangular grid");
    }
    std::size_t next = 0;
    SampledMap s = sample_map(
        domain, group,
        [&](Point node) {
            const auto& [p, m] = samples[next++];
            if (std::abs(p - node) > 1e-9 * (1.0 + std::abs(node)))
                schema(file.string() + ": sample " + std::to_string(next) + " is not on the uniform grid");
            return m;
        },
        nx, ny);
    return s;
}

// ---------------------------------------------------------------- SVG

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                           const std::vector<Series>& series)
{
    const double w = 720, h = 420, left = 70, right = 160, top = 40, bottom = 50;
    double xmin = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
    double ymin = 0.0, ymax = 0.0;
    for (const auto& s : series)
        for (double v : s.y)
            ymax = std::max(ymax, v);
    if (xmax <= xmin)
        xmax = xmin + 1;
    if (ymax <= ymin)
        ymax = ymin + 1;
    ymax *= 1.05;
    auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (w - left - right); };
    auto py = [&](double v) { return h - bottom - (v - ymin) / (ymax - ymin) * (h - top - bottom); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
                                   "#7f7f7f", "#bcbd22"};
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", w, h,
                  w, h);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">", left);
    out += buf + title + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                  left, h - bottom, w - right, h - bottom, left, top, left, h - bottom);
    out += buf;
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"middle\">%.3g</text>\n"
                      "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"end\">%.3g</text>\n",
                      px(xv), h - bottom + 16, xv, left - 6, py(yv) + 4, yv);
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">",
                  0.5 * (left + w - right), h - 12);
    out += buf + x_label + "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = colors[s % (sizeof colors / sizeof *colors)];
        out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
        out += color;
        out += "\" points=\"";
        for (std::size_t k = 0; k < x.size() && k < series[s].y.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", k ? " " : "", px(x[k]), py(series[s].y[k]));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" fill=\"%s\">",
                      w - right + 12, top + 16.0 * double(s + 1), color);
        out += buf + series[s].label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace mapgrp
