#include <doctest.h>

#include <cmath>

#include "mapgrp/errors.hpp"
#include "mapgrp/problem.hpp"

using namespace mapgrp;

TEST_CASE("complex text round-trips exactly")
{
    for (cplx z : {cplx(1.0, 0.0), cplx(-0.1, 1e-300), cplx(3.0e17, -2.5), cplx(0.0, -1.0), cplx(M_PI, M_E)}) {
        const cplx w = parse_complex(format_complex(z));
        CHECK(w.real() == z.real());
        CHECK(w.imag() == z.imag());
    }
    CHECK(format_complex({1.5, -2.0}) == "1.5-2i");
    CHECK(parse_complex("2") == cplx(2.0, 0.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1e-3+2e+2i") == cplx(1e-3, 200.0));
    CHECK_THROWS_AS(parse_complex("1+x"), Error);
}

TEST_CASE("CSV writer quotes per RFC 4180 and reads back")
{
    CsvWriter w({"a", "b"});
    w.row({"x,y", "say \"hi\""});
    w.row({"1", ""});
    const std::string s = w.str();
    CHECK(s == "a,b\r\n\"x,y\",\"say \"\"hi\"\"\"\r\n1,\r\n");
    const auto rows = read_csv(s);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "x,y");
    CHECK(rows[1][1] == "say \"hi\"");
    CHECK(rows[2].size() == 2);
    CHECK_THROWS_AS(read_csv("a,\"b"), Error);
}

TEST_CASE("problem file parses group, domain, forms and sections")
{
    const Problem p = parse_problem(R"({
        "group": {"type": "GL", "n": 2},
        "domain": {"type": "punctured_plane", "punctures": [[0, 0], [2, 0]]},
        "base_point": [1, 1],
        "forms": {"a": {"expr": "[[1/z, 0], [0, 2/z]]"}, "b": {"expr": "[[0, 1], [0, 0]]"}},
        "control": {"steps": 64, "period_tol": 1e-5},
        "points": [[3, 0], 4],
        "multiply": {"left": "b", "right": "a"}
    })");
    CHECK(p.group.matrix_dim() == 2);
    CHECK(p.domain.is_punctured_plane());
    CHECK(p.base == cplx(1.0, 1.0));
    CHECK(p.control.steps == 64);
    CHECK(p.period_tol == doctest::Approx(1e-5));
    CHECK(p.points.size() == 2);
    CHECK(p.points[1] == cplx(4.0, 0.0));
    CHECK(p.form_order.size() == 2);
    CHECK(std::abs(p.section_form("multiply", "left")(cplx(3.0, 0.0), 1.0)(0, 1) - 1.0) < 1e-15);
    CHECK_THROWS_AS(p.section_form("inverse", "form"), Error);
}

TEST_CASE("schema errors map to input exit code")
{
    auto code = [](const std::string& text) {
        try {
            parse_problem(text);
        } catch (const Error& e) {
            return exit_code_for(e.kind());
        }
        return 0;
    };
    CHECK(code("{") == 2);
    CHECK(code(R"({"domain": {"type": "circle"}})") == 2);
    CHECK(code(R"({"group": {"type": "U", "n": 2}, "domain": {"type": "circle"}})") == 2);
    CHECK(code(R"({"group": {"type": "GL", "n": 0}, "domain": {"type": "circle"}})") == 2);
    CHECK(code(R"({"group": {"type": "GL", "n": 2}, "domain": {"type": "torus"}})") == 2);
    CHECK(code(R"({"group": {"type": "GL", "n": 2}, "domain": {"type": "interval", "a": 0, "b": 1},
                   "forms": {"a": {"expr": "t"}}})") == 2);
    CHECK(code(R"({"group": {"type": "GL", "n": 1}, "domain": {"type": "punctured_plane", "punctures": [[0,0]]},
                   "base_point": [0, 0]})") == 2);
    CHECK(code(R"({"group": {"type": "cstar"}, "domain": {"type": "circle"}, "forms": {"a": {"expr": "1"}}})") == 0);
}

TEST_CASE("presentation file")
{
    const PresentationFile pf = parse_presentation(R"({"generators": 2, "relations": [[2, 0], [0, 0]]})");
    CHECK(pf.presentation.n == 2);
    CHECK(pf.presentation.relation_count() == 2);
    CHECK(hom_rank(pf.presentation) == 1);
    CHECK(pf.lattice.rank() == 1);
    CHECK(hom_rank(parse_presentation(R"({"generators": 1, "relations": [[5]]})").presentation) == 0);
    CHECK_THROWS_AS(parse_presentation(R"({"generators": 1, "relations": [[1.5]]})"), Error);
}

TEST_CASE("polyline and SVG output are deterministic")
{
    const Path p = polyline({0.0, cplx(1.0, 0.0), cplx(1.0, 1.0)});
    CHECK(std::abs(p.end() - cplx(1.0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(polyline({0.0}), Error);
    const std::string a = svg_line_chart("t", "x", {0, 1, 2}, {{"s", {1, 3, 2}}});
    CHECK(a == svg_line_chart("t", "x", {0, 1, 2}, {{"s", {1, 3, 2}}}));
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
}
