#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapgrp/calculus.hpp"
#include "mapgrp/evolution.hpp"
#include "mapgrp/forms.hpp"
#include "mapgrp/group.hpp"
#include "mapgrp/paths.hpp"
#include "mapgrp/smith.hpp"

namespace mapgrp {

/**
 * @brief A parsed problem file.
 *
 *   {"group":   {"type": "GL|SL|abelian|cstar", "n": 2, "field": "C|R", "lattice": [[[re,im], ...], ...]},
 *    "domain":  {"type": "interval", "a": 0, "b": 1}
 *             | {"type": "circle"}
 *             | {"type": "punctured_plane", "punctures": [[re,im], ...]}
 *             | {"type": "chart", "x": [x0,x1], "y": [y0,y1]},
 *    "base_point": [re,im],
 *    "forms":   {"name": {"expr": "..."} | {"dx": "...", "dy": "..."} | {"samples": "file.csv"}},
 *    "control": {"steps": 256, "period_tol": 1e-6, "target_tol": 1e-8},
 *    "points":  [[re,im], ...],
 *    "paths":   [[[re,im], ...], ...],
 *    "multiply": {"left": "a", "right": "b"}, "inverse": {"form": "a"}, "integrate": {"form": "a"}}
 *
 * Complex numbers are [re, im] pairs (a bare number is real). Relative sample
 * paths resolve against the problem file's directory.
 */
struct Problem {
    GroupDescriptor group;
    Domain domain;
    Point base;
    std::map<std::string, OneForm> forms;
    std::vector<std::string> form_order;
    EvolutionControl control;
    double period_tol = 1e-6;
    std::vector<Point> points;
    std::vector<std::vector<Point>> paths;
    std::map<std::string, std::map<std::string, std::string>> sections;

    const OneForm& form(const std::string& name) const;
    /// Form named in `section.key`, or the only form when the section is absent.
    const OneForm& section_form(const std::string& section, const std::string& key) const;
    BasedMapElement element(const std::string& name) const;
};

Problem load_problem(const std::filesystem::path& file);
Problem parse_problem(const std::string& json_text, const std::filesystem::path& directory = ".");

/// {"generators": n, "relations": [[...], ...], "lattice": [...]} with relations as an n x m integer matrix.
struct PresentationFile {
    AbelianPresentation presentation;
    Lattice lattice;
};
PresentationFile load_presentation(const std::filesystem::path& file);
PresentationFile parse_presentation(const std::string& json_text);

/// Polyline path through the given vertices.
Path polyline(const std::vector<Point>& vertices);

// ---------------------------------------------------------------- CSV / SVG

/// "re+imi" with round-trip precision.
std::string format_complex(cplx z);
cplx parse_complex(const std::string& text);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(std::vector<std::string> fields);
    /// RFC 4180: CRLF line ends, fields quoted when they contain separators or quotes.
    std::string str() const;
    void save(const std::filesystem::path& file) const;

private:
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::vector<std::string>> read_csv(const std::string& text);

/// Sampled map from CSV: header then rows "t,e00,e01,..." (interval, circle) or "x,y,e00,..." (chart).
SampledMap load_samples(const std::filesystem::path& file, const Domain& domain, const GroupDescriptor& group);

struct Series {
    std::string label;
    std::vector<double> y;
};

/// Static line chart of several series over a shared x axis.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                           const std::vector<Series>& series);

} // namespace mapgrp
