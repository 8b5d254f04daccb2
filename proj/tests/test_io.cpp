#include "planevar/io.hpp"
#include "planevar/svg.hpp"

#include <gtest/gtest.h>

using namespace planevar;
using io::Json;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::BadInput;
}

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Scalars, NumbersAndStrings) {
    EXPECT_EQ(io::rational_from(Json(3), "x"), 3);
    EXPECT_EQ(io::rational_from(Json("-6/4"), "x"), q(-3, 2));
    EXPECT_EQ(io::rational_from(Json(0.25), "x"), q(1, 4));
    EXPECT_EQ(io::rational_from(Json("0.5"), "x"), q(1, 2));
    EXPECT_EQ(io::to_json(q(4)), Json(4));
    EXPECT_EQ(io::to_json(q(-1, 3)), Json("-1/3"));
    // integers too large for a machine word stay exact as strings
    Rational big(Integer("123456789012345678901234567890"));
    EXPECT_EQ(io::rational_from(io::to_json(big), "x"), big);
    EXPECT_EQ(code_of([] { io::rational_from(Json("1/0"), "x"); }), ErrorCode::BadInputFile);
    EXPECT_EQ(code_of([] { io::rational_from(Json::array(), "x"); }), ErrorCode::BadInputFile);
}

TEST(Scalars, ComplexFormatting) {
    EXPECT_EQ(io::format_value(Complex(1.5, -2)), "1.5-2i");
    EXPECT_EQ(io::format_value(Complex(0, 0)), "0+0i");
    EXPECT_EQ(io::format_value(Complex(1.0 / 3, 2.0 / 3)), "0.333333333333+0.666666666667i");
    EXPECT_EQ(io::format_value(q(7, -14)), "-1/2");
    EXPECT_EQ(io::complex_from(Json::array({1, "1/2"}), "z"), Complex(1, 0.5));
}

TEST(RoundTrip, SampledFunctions) {
    SampledFunction<Rational> f({Point2(q(1, 3), q(-2)), Point2(0, 0)}, {q(5, 7), q(-1)});
    auto g = io::sampled_from<Rational>(Json::parse(io::to_json(f).dump()), "f");
    EXPECT_EQ(g.domain(), f.domain());
    EXPECT_EQ(g.values(), f.values());

    SampledFunction<Complex> z({Point2(0, 0), Point2(1, 0)}, {Complex(0.1, -0.7), Complex(1e-300, 3)});
    Json zj = Json::parse(io::to_json(z).dump());
    EXPECT_TRUE(io::has_complex_values(zj));
    EXPECT_EQ(io::sampled_from<Complex>(zj, "z").values(), z.values());
}

TEST(RoundTrip, OneDimensionalFilesLieOnTheAxis) {
    auto f = make_example({ExampleKind::ReciprocalOdd, 7});
    auto g = io::function1d_from<Rational>(Json::parse(io::to_json(f).dump()), "f");
    EXPECT_EQ(g.sample.points(), f.sample.points());
    EXPECT_EQ(g.values, f.values);
    // bare numbers are points on the axis
    auto h = io::function1d_from<Rational>(Json::parse(R"({"points": [2, "1/2"], "values": [1, 0]})"), "h");
    EXPECT_EQ(h.sample.points(), (std::vector<Rational>{q(1, 2), q(2)}));
}

TEST(RoundTrip, CtppPolygonPoly) {
    auto g = interpolate_grid<Rational>([](const Point2& p) -> std::optional<Rational> { return Rational(p.x * p.y / 3); },
                                        Rectangle(0, 2, q(-1, 2), 1), 3);
    auto h = io::ctpp_from<Rational>(Json::parse(io::to_json(g).dump()), "g");
    EXPECT_EQ(h.triangulation().vertices(), g.triangulation().vertices());
    EXPECT_EQ(h.triangulation().triangles(), g.triangulation().triangles());
    ASSERT_EQ(h.coeffs().size(), g.coeffs().size());
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) EXPECT_EQ(h.coeffs()[i], g.coeffs()[i]);

    Polygon p({Point2(0, 0), Point2(2, 0), Point2(1, q(1, 2)), Point2(2, 2), Point2(0, 2)});
    EXPECT_EQ(io::polygon_from(io::to_json(p), "p").vertices(), p.vertices());

    Poly2 poly(Poly2::Table{{q(1, 7), q(-1)}, {q(0), q(1, 3)}, {q(2)}});
    EXPECT_EQ(io::poly_from(Json::parse(io::to_json(poly).dump()), "poly"), poly);
}

TEST(Ctpp, VertexValuesAndComplexCoefficients) {
    Json j = Json::parse(R"({"vertices": [[0,0],[1,0],[0,1]], "triangles": [[0,1,2]], "values": [0, 1, "1/2"]})");
    auto g = io::ctpp_from<Rational>(j, "g");
    EXPECT_EQ(g.coeffs()[0], (PlanarCoeffs<Rational>{1, q(1, 2), 0}));

    Json c = Json::parse(R"({"vertices": [[0,0],[1,0],[0,1]], "triangles": [[0,1,2]], "coeffs": [[[1,2], 0, [0,-1]]]})");
    EXPECT_TRUE(io::ctpp_is_complex(c));
    auto z = io::ctpp_from<Complex>(c, "z");
    EXPECT_EQ(z.coeffs()[0].a, Complex(1, 2));
    EXPECT_EQ(z.coeffs()[0].c, Complex(0, -1));
}

TEST(Errors, NameTheLineOrField) {
    std::string text = "{\n  \"points\": [[0, 0]],\n  \"values\": [1,]\n}";
    auto msg = message_of([&] { io::parse_json(text, "f.json"); });
    EXPECT_NE(msg.find("BadInputFile"), std::string::npos);
    EXPECT_NE(msg.find("line 3"), std::string::npos);

    Json j = Json::parse(R"({"points": [[0, 0], [1, "y"]], "values": [1, 2]})");
    msg = message_of([&] { io::sampled_from<Rational>(j, "f.json"); });
    EXPECT_NE(msg.find("points[1][1]"), std::string::npos);

    EXPECT_EQ(code_of([] { io::sampled_from<Rational>(Json::parse(R"({"points": [[0, 0]]})"), "f"); }),
              ErrorCode::BadInputFile);
    EXPECT_EQ(code_of([] {
                  io::sampled_from<Rational>(Json::parse(R"({"points": [[0, 0], [0, 0]], "values": [1, 2]})"), "f");
              }),
              ErrorCode::BadInputFile);
    EXPECT_EQ(code_of([] {
                  io::sampled_from<Rational>(Json::parse(R"({"points": [[0, 0]], "values": [[1, 2]]})"), "f");
              }),
              ErrorCode::BadInputFile);
    EXPECT_EQ(code_of([] {
                  io::triangulation_from(Json::parse(R"({"vertices": [[0,0],[1,0]], "triangles": [[0,1,5]]})"), "t");
              }),
              ErrorCode::BadInputFile);
}

TEST(Csv, RowsReadBack) {
    SampledFunction<Rational> f({Point2(0, 0), Point2(1, 0), Point2(2, 0)}, {q(0), q(7, 3), q(1)});
    auto est = var_exact_small(f);
    std::string text = io::csv_line(io::kVarHeader) + io::csv_line(io::var_row(est));
    auto t = io::parse_csv(text, "var.csv");
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(io::csv_rational(t, 0, "value", "var.csv"), est.value);
    EXPECT_EQ(t.rows[0][t.column("method", "var.csv")], "ExhaustiveSmall");
    EXPECT_EQ(t.rows[0][t.column("seed", "var.csv")], "");

    auto jr = join_report(f, {Point2(0, 0), Point2(1, 0)}, {Point2(1, 0), Point2(2, 0)});
    auto jt = io::parse_csv(io::csv_line(io::kJoinHeader) + io::csv_line(io::join_row("a,b", jr)), "join.csv");
    EXPECT_EQ(jt.rows[0][0], "a,b");
    EXPECT_EQ(io::csv_rational(jt, 0, "var_union", "join.csv"), jr.var_union);
    EXPECT_EQ(jt.rows[0][jt.column("joins_convexly", "join.csv")], "verified");
}

TEST(Csv, RaggedRowNamesItsLine) {
    auto msg = message_of([] { io::parse_csv("a,b\n1,2\n3\n", "x.csv"); });
    EXPECT_NE(msg.find("line 3"), std::string::npos);
    EXPECT_EQ(code_of([] { io::parse_csv("a\n\"open\n", "x.csv"); }), ErrorCode::BadInputFile);
    auto t = io::parse_csv("a,b\r\n\"x\"\"y\",\"p\nq\"\r\n", "x.csv");
    EXPECT_EQ(t.rows[0][0], "x\"y");
    EXPECT_EQ(t.rows[0][1], "p\nq");
    EXPECT_EQ(code_of([&] { io::csv_rational(t, 0, "a", "x.csv"); }), ErrorCode::BadInputFile);
}

TEST(Svg, OnePolygonPerTriangle) {
    auto g = interpolate_grid<Rational>([](const Point2& p) -> std::optional<Rational> { return p.x; }, Rectangle::unit(), 3);
    std::string svg = render_svg(g, {{Point2(0, 0), Point2(1, 1)}});
    std::size_t polygons = 0;
    for (std::size_t at = svg.find("<polygon"); at != std::string::npos; at = svg.find("<polygon", at + 1)) ++polygons;
    EXPECT_EQ(polygons, g.triangulation().size());
    EXPECT_EQ(svg.find("<line"), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_EQ(svg, render_svg(g, {{Point2(0, 0), Point2(1, 1)}}));

    // two pieces that disagree on their shared edge
    Triangulation tri({Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)}, {{0, 1, 2}, {0, 2, 3}});
    CtppFunction<Rational> bad(tri, {{1, 0, 0}, {0, 1, 1}});
    std::string b = render_svg(bad);
    EXPECT_NE(b.find("<line"), std::string::npos);
}
