// planevar: command-line front end.
//
// Every subcommand reads JSON inputs, writes JSON/CSV/SVG outputs (to stdout
// when no output path is given) and exits 0. Validation errors print one line
//   error: <Code>: <detail>
// on stderr and exit 2.

#include "paper_suite.hpp"
#include "planevar/io.hpp"
#include "planevar/planevar.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <string>

using namespace planevar;
using io::Json;

namespace {

template <class T>
struct value_of;
template <FunctionValue V>
struct value_of<SampledFunction<V>> {
    using type = V;
};
template <class F>
using value_of_t = typename value_of<std::decay_t<F>>::type;

// Calls fn with the sampled function in `path`, rational or complex valued.
template <class Fn>
void with_function(const std::string& path, Fn&& fn) {
    Json j = io::load_json(path);
    if (io::has_complex_values(j)) fn(io::sampled_from<Complex>(j, path));
    else fn(io::sampled_from<Rational>(j, path));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else io::write_text(path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// A point list file is {"list": [...]} or a bare array.
PointList load_list(const std::string& path) {
    Json j = io::load_json(path);
    if (j.is_array()) return io::points_from(j, path);
    return io::points_from(io::field(j, "list", path), path + ": list");
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::string>& row) {
    return io::csv_line(header) + io::csv_line(row);
}

// Named C^2 test functions on the unit square, with all derivatives up to order 2.
C2Oracle named_oracle(const std::string& name) {
    using D = std::function<double(double, double)>;
    auto make = [](D f, D fx, D fy, D fxx, D fxy, D fyy) {
        return C2Oracle{from_double(f), from_double(fx), from_double(fy), from_double(fxx), from_double(fxy),
                        from_double(fyy)};
    };
    if (name == "sin_exp")
        return make([](double x, double y) { return std::sin(x) * std::exp(y); },
                    [](double x, double y) { return std::cos(x) * std::exp(y); },
                    [](double x, double y) { return std::sin(x) * std::exp(y); },
                    [](double x, double y) { return -std::sin(x) * std::exp(y); },
                    [](double x, double y) { return std::cos(x) * std::exp(y); },
                    [](double x, double y) { return std::sin(x) * std::exp(y); });
    if (name == "sin_cos")
        return make([](double x, double y) { return std::sin(x) * std::cos(y); },
                    [](double x, double y) { return std::cos(x) * std::cos(y); },
                    [](double x, double y) { return -std::sin(x) * std::sin(y); },
                    [](double x, double y) { return -std::sin(x) * std::cos(y); },
                    [](double x, double y) { return -std::cos(x) * std::sin(y); },
                    [](double x, double y) { return -std::sin(x) * std::cos(y); });
    if (name == "exp_sum") {
        D e = [](double x, double y) { return std::exp(x + y); };
        return make(e, e, e, e, e, e);
    }
    if (name == "gauss") {
        auto g = [](double x, double y) { return std::exp(-(x * x + y * y)); };
        return make(g, [g](double x, double y) { return -2 * x * g(x, y); },
                    [g](double x, double y) { return -2 * y * g(x, y); },
                    [g](double x, double y) { return (4 * x * x - 2) * g(x, y); },
                    [g](double x, double y) { return 4 * x * y * g(x, y); },
                    [g](double x, double y) { return (4 * y * y - 2) * g(x, y); });
    }
    throw Error(ErrorCode::BadInput, "unknown function '" + name + "' (sin_exp, sin_cos, exp_sum, gauss)");
}

// Exact oracles for a polynomial read from a file.
C2Oracle poly_oracle(const Poly2& p) {
    auto exact = [](Poly2 q) -> RealOracle { return [q](const Point2& x) { return q(x); }; };
    return {exact(p), exact(p.dx()), exact(p.dy()), exact(p.dx().dx()), exact(p.dx().dy()), exact(p.dy().dy())};
}

struct OracleSource {
    std::string fn;
    std::string poly;

    void add_to(CLI::App* app) {
        auto* a = app->add_option("--fn", fn, "named function: sin_exp, sin_cos, exp_sum, gauss");
        auto* b = app->add_option("--poly", poly, "polynomial file (exact oracles)");
        a->excludes(b);
    }

    C2Oracle get() const {
        if (!poly.empty()) return poly_oracle(io::poly_from(io::load_json(poly), poly));
        if (fn.empty()) throw Error(ErrorCode::BadInput, "one of --fn or --poly is required");
        return named_oracle(fn);
    }
};

std::string join_fields(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? std::string(1, sep) : "") + parts[i];
    return out;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"planevar: variation of functions on planar samples"};
    app.require_subcommand(1);

    // vf
    std::string list_path;
    auto* vf = app.add_subcommand("vf", "variation factor of a point list, with a witness line");
    vf->add_option("--list", list_path, "point list file")->required();

    // cvar
    std::string fn_path, out_path;
    auto* cv = app.add_subcommand("cvar", "cvar of a function along a point list");
    cv->add_option("--function", fn_path)->required();
    cv->add_option("--list", list_path)->required();

    // var
    std::string mode = "exact";
    std::uint64_t seed = 0;
    std::size_t iters = 20000, restarts = 8, max_len = 0;
    auto* var = app.add_subcommand("var", "variation of a sampled function");
    var->add_option("--function", fn_path)->required();
    var->add_option("--mode", mode)->check(CLI::IsMember({"exact", "search"}));
    var->add_option("--seed", seed);
    var->add_option("--iters", iters)->check(CLI::PositiveNumber);
    var->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
    var->add_option("--max-len", max_len, "longest list considered (default 6 exact, 8 search)")->check(CLI::PositiveNumber);
    var->add_option("--out", out_path, "CSV output");
    std::string witness_path;
    var->add_option("--witness-out", witness_path, "write the witness list as JSON");

    // var1d
    auto* v1 = app.add_subcommand("var1d", "variation of a function on a subset of the line");
    v1->add_option("--function", fn_path)->required();

    // iota
    std::string grid_text;
    std::size_t n = 0;
    auto* iota = app.add_subcommand("iota", "extend a 1-D function by linear interpolation");
    iota->add_option("--function", fn_path)->required();
    iota->add_option("--grid", grid_text, "extra points, comma separated");
    iota->add_option("--n", n, "n+1 evenly spaced extra points across the hull");
    iota->add_option("--out", out_path);

    // acmod
    std::string delta_text;
    std::string ac_mode = "exact";
    auto* ac = app.add_subcommand("acmod", "absolute-continuity modulus at a length budget");
    ac->add_option("--function", fn_path)->required();
    ac->add_option("--delta", delta_text)->required();
    ac->add_option("--mode", ac_mode)->check(CLI::IsMember({"exact", "auto"}));

    // ctpp
    std::string ctpp_path, polygon_path, rect_text = "0,1,0,1", point_text, svg_path;
    OracleSource interp_src;
    auto* ctpp = app.add_subcommand("ctpp", "continuous triangularly piecewise planar functions");
    ctpp->require_subcommand(1);
    auto* c_check = ctpp->add_subcommand("check", "edge agreement and the inradius gradient bound");
    c_check->add_option("--ctpp", ctpp_path)->required();
    auto* c_interp = ctpp->add_subcommand("interp", "grid interpolant of a sampled or named function");
    c_interp->add_option("--function", fn_path, "sampled function holding every grid vertex");
    interp_src.add_to(c_interp);
    c_interp->add_option("--rect", rect_text, "x_min,x_max,y_min,y_max");
    c_interp->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    c_interp->add_option("--out", out_path);
    auto* c_extend = ctpp->add_subcommand("extend", "extend to a polygon containing the domain");
    c_extend->add_option("--ctpp", ctpp_path)->required();
    c_extend->add_option("--polygon", polygon_path)->required();
    c_extend->add_option("--out", out_path);
    auto* c_class = ctpp->add_subcommand("classify", "planar, edge or vertex point");
    c_class->add_option("--ctpp", ctpp_path)->required();
    c_class->add_option("--point", point_text, "x,y")->required();

    // approx
    std::size_t degree = 12, grid = 41;
    OracleSource src;
    std::string points_path, eps_text;
    auto* approx = app.add_subcommand("approx", "polynomial and piecewise-planar approximation");
    approx->require_subcommand(1);
    auto* a_bern = approx->add_subcommand("bernstein", "Bernstein approximant on the unit square");
    src.add_to(a_bern);
    a_bern->add_option("--degree", degree)->check(CLI::PositiveNumber);
    a_bern->add_option("--out", out_path);
    auto* a_c2 = approx->add_subcommand("c2", "C^2 to polynomial construction with measured errors");
    src.add_to(a_c2);
    a_c2->add_option("--degree", degree)->check(CLI::PositiveNumber);
    a_c2->add_option("--grid", grid)->check(CLI::Range(2, 100000));
    a_c2->add_option("--out", out_path, "CSV output");
    std::string poly_out;
    a_c2->add_option("--poly-out", poly_out, "write the polynomial as JSON");
    auto* a_match = approx->add_subcommand("match", "match a CTPP function to f at chosen points");
    a_match->add_option("--function", fn_path)->required();
    a_match->add_option("--ctpp", ctpp_path)->required();
    a_match->add_option("--points", points_path)->required();
    a_match->add_option("--delta", delta_text)->required();
    a_match->add_option("--eps", eps_text);
    a_match->add_option("--out", out_path, "CSV output");

    // join
    std::string part1, part2, instance = "instance", curve_path, a_text, b_text, d1_text, d2_text;
    auto* join = app.add_subcommand("join", "joins, fills and pasting");
    join->require_subcommand(1);
    auto* j_rep = join->add_subcommand("report", "variation on a union against its two parts");
    j_rep->add_option("--function", fn_path)->required();
    j_rep->add_option("--part1", part1)->required();
    j_rep->add_option("--part2", part2)->required();
    j_rep->add_option("--name", instance);
    j_rep->add_option("--seed", seed);
    j_rep->add_option("--out", out_path, "CSV output");
    auto* j_fill = join->add_subcommand("graphfill", "extend from a convex graph to a rectangle");
    j_fill->add_option("--function", fn_path)->required();
    j_fill->add_option("--curve", curve_path, "{\"knots\": [...], \"values\": [...]}")->required();
    j_fill->add_option("--rect", rect_text)->required();
    j_fill->add_option("--n", n);
    j_fill->add_option("--out", out_path);
    auto* j_sector = join->add_subcommand("sector", "extend from the two sides of a sector");
    j_sector->add_option("--function", fn_path)->required();
    j_sector->add_option("--rect", rect_text)->required();
    j_sector->add_option("--d1", d1_text)->required();
    j_sector->add_option("--d2", d2_text)->required();
    j_sector->add_option("--n", n);
    j_sector->add_option("--out", out_path);
    auto* j_paste = join->add_subcommand("paste", "extend from an axis band by clamping");
    j_paste->add_option("--function", fn_path)->required();
    j_paste->add_option("--a", a_text)->required();
    j_paste->add_option("--b", b_text)->required();
    j_paste->add_option("--out", out_path);

    // example
    std::string kind;
    bool no_zero = false;
    auto* ex = app.add_subcommand("example", "1-D example generators");
    ex->add_option("--kind", kind, "ReciprocalAlternating, ReciprocalOdd, ReciprocalEven, CantorLevel, OneOverN")
        ->required();
    ex->add_option("--n", n, "truncation N, or the Cantor level")->required();
    ex->add_flag("--no-zero", no_zero, "leave out the point 0");
    ex->add_option("--out", out_path);

    // suite
    auto* suite = app.add_subcommand("suite", "acceptance suites");
    suite->require_subcommand(1);
    auto* s_paper = suite->add_subcommand("paper", "run every acceptance criterion");
    s_paper->add_option("--seed", seed);
    s_paper->add_option("--out", out_path, "CSV output");

    // plot
    auto* plot = app.add_subcommand("plot", "SVG of a CTPP function");
    plot->add_option("--ctpp", ctpp_path)->required();
    plot->add_option("--svg", svg_path)->required();
    std::vector<std::string> overlay;
    plot->add_option("--list", overlay, "point lists drawn as polylines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        bool sub = dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr ||
                   (dynamic_cast<const CLI::RequiredError*>(&e) && msg.find("ubcommand") != std::string::npos);
        if (sub) {
            // name the first word no subcommand at its level accepts
            const CLI::App* level = &app;
            for (int i = 1; i < argc; ++i) {
                std::string word = argv[i];
                if (word.empty() || word[0] == '-') break;
                const CLI::App* next = nullptr;
                for (const auto* c : level->get_subcommands([](const CLI::App*) { return true; }))
                    if (c->get_name() == word) next = c;
                if (!next) {
                    msg = "unknown subcommand '" + word + "'";
                    break;
                }
                level = next;
            }
        }
        std::cerr << "error: " << (sub ? "UnknownSubcommand" : "BadInput") << ": " << msg << "\n";
        return 2;
    }

    if (vf->parsed()) {
        auto s = load_list(list_path);
        auto r = vf_exact(s);
        std::cout << r.vf << "\nwitness " << r.witness << "\n";
    } else if (cv->parsed()) {
        auto s = load_list(list_path);
        with_function(fn_path, [&](const auto& f) { std::cout << io::format_value(cvar(f, s)) << "\n"; });
    } else if (var->parsed()) {
        with_function(fn_path, [&](const auto& f) {
            using V = value_of_t<decltype(f)>;
            VarEstimate<V> est;
            if (mode == "exact") {
                est = var_exact_small(f, max_len ? max_len : kExactMaxLen);
            } else {
                SearchConfig cfg;
                cfg.iters = iters;
                cfg.restarts = restarts;
                cfg.seed = seed;
                if (max_len) cfg.max_len = max_len;
                est = var_search(f, cfg);
            }
            emit(out_path, csv(io::kVarHeader, io::var_row(est)));
            if (!witness_path.empty()) io::write_text(witness_path, dump(Json{{"list", io::to_json(est.witness)}}));
        });
    } else if (v1->parsed()) {
        Json j = io::load_json(fn_path);
        if (io::has_complex_values(j)) std::cout << io::format_value(var_1d(io::function1d_from<Complex>(j, fn_path))) << "\n";
        else std::cout << io::format_value(var_1d(io::function1d_from<Rational>(j, fn_path))) << "\n";
    } else if (iota->parsed()) {
        Json j = io::load_json(fn_path);
        auto go = [&](const auto& f) {
            std::vector<Rational> g = io::parse_rational_list(grid_text);
            if (n > 0)
                for (std::size_t k = 0; k <= n; ++k)
                    g.push_back(f.sample.min() + make_rational(static_cast<long>(k), static_cast<long>(n)) *
                                                     (f.sample.max() - f.sample.min()));
            emit(out_path, dump(io::to_json(iota_extend(f, g))));
        };
        if (io::has_complex_values(j)) go(io::function1d_from<Complex>(j, fn_path));
        else go(io::function1d_from<Rational>(j, fn_path));
    } else if (ac->parsed()) {
        Json j = io::load_json(fn_path);
        Rational delta = parse_rational(delta_text);
        AcMode m = ac_mode == "auto" ? AcMode::Auto : AcMode::Exact;
        auto go = [&](const auto& f) {
            auto r = ac_modulus(f, delta, m);
            std::vector<std::string> iv;
            for (const auto& [s, t] : r.witness) iv.push_back(s.get_str() + ":" + t.get_str());
            emit("", csv({"value", "exact", "intervals"}, {io::format_value(r.value), io::format_bool(r.exact), join_fields(iv, ' ')}));
        };
        if (io::has_complex_values(j)) go(io::function1d_from<Complex>(j, fn_path));
        else go(io::function1d_from<Rational>(j, fn_path));
    } else if (ctpp->parsed()) {
        auto with_ctpp = [&](auto&& fn) {
            Json j = io::load_json(ctpp_path);
            if (io::ctpp_is_complex(j)) fn(io::ctpp_from<Complex>(j, ctpp_path));
            else fn(io::ctpp_from<Rational>(j, ctpp_path));
        };
        if (c_check->parsed()) {
            with_ctpp([&](const auto& g) {
                auto bad = validate_ctpp(g);
                auto tb = check_triangle_bound(g);
                std::cout << "triangles=" << g.triangulation().size() << "\nedge_violations=" << bad.size()
                          << "\nbound_violations=" << tb.violations << "\nbound_undecided=" << tb.undecided
                          << "\nvalid=" << io::format_bool(bad.empty()) << "\n";
            });
        } else if (c_interp->parsed()) {
            Rectangle r = io::parse_rectangle(rect_text);
            if (!fn_path.empty()) {
                with_function(fn_path, [&](const auto& f) {
                    using V = value_of_t<decltype(f)>;
                    VertexOracle<V> vo = [&](const Point2& p) -> std::optional<V> {
                        if (auto i = f.index_of(p)) return f.values()[*i];
                        return std::nullopt;
                    };
                    emit(out_path, dump(io::to_json(interpolate_grid(vo, r, n))));
                });
            } else {
                C2Oracle o = interp_src.get();
                VertexOracle<Rational> vo = [&](const Point2& p) -> std::optional<Rational> { return o.f(p); };
                emit(out_path, dump(io::to_json(interpolate_grid(vo, r, n))));
            }
        } else if (c_extend->parsed()) {
            Polygon p0 = io::polygon_from(io::load_json(polygon_path), polygon_path);
            with_ctpp([&](const auto& g) { emit(out_path, dump(io::to_json(extend_to_polygon(g, p0)))); });
        } else if (c_class->parsed()) {
            Point2 p = io::parse_point(point_text);
            with_ctpp([&](const auto& g) {
                auto c = classify_point(g, p);
                std::cout << to_string(c.tag) << " " << c.triangle_count << "\n";
            });
        }
    } else if (approx->parsed()) {
        if (a_bern->parsed()) {
            emit(out_path, dump(io::to_json(bernstein2(src.get().f, degree))));
        } else if (a_c2->parsed()) {
            auto a = c2_to_poly(src.get(), degree, grid);
            emit(out_path, csv(io::kApproxHeader, io::approx_row(a.report)));
            if (!poly_out.empty()) io::write_text(poly_out, dump(io::to_json(a.p)));
        } else if (a_match->parsed()) {
            Rational delta = parse_rational(delta_text);
            std::optional<double> eps;
            if (!eps_text.empty()) eps = parse_rational(eps_text).get_d();
            auto pts = load_list(points_path);
            with_function(fn_path, [&](const auto& f) {
                using V = value_of_t<decltype(f)>;
                Json gj = io::load_json(ctpp_path);
                CtppFunction<V> g0 = io::ctpp_from<V>(gj, ctpp_path);
                auto m = match_points(f, g0, pts, delta, eps);
                const auto& r = m.report;
                emit(out_path, csv({"n", "coef_max", "var_bound", "bv_bound", "eps", "paper_bound", "holds"},
                                   {std::to_string(r.n), io::format_value(r.coef_max), io::format_value(r.var_bound),
                                    io::format_value(r.bv_bound), r.eps ? io::format_double(*r.eps) : "na",
                                    r.paper_bound ? io::format_double(*r.paper_bound) : "na",
                                    io::format_optional_bool(r.holds)}));
            });
        }
    } else if (join->parsed()) {
        if (j_rep->parsed()) {
            auto s1 = load_list(part1), s2 = load_list(part2);
            with_function(fn_path, [&](const auto& f) {
                SearchConfig cfg;
                cfg.seed = seed;
                emit(out_path, csv(io::kJoinHeader, io::join_row(instance, join_report(f, s1, s2, cfg))));
            });
        } else if (j_fill->parsed()) {
            Json cj = io::load_json(curve_path);
            std::vector<Rational> knots, vals;
            const Json& kj = io::field(cj, "knots", curve_path);
            const Json& vj = io::field(cj, "values", curve_path);
            if (!kj.is_array() || !vj.is_array()) io::bad_file(curve_path, "knots/values", "expected arrays");
            for (std::size_t i = 0; i < kj.size(); ++i) knots.push_back(io::rational_from(kj[i], curve_path + ": " + io::index_path("knots", i)));
            for (std::size_t i = 0; i < vj.size(); ++i) vals.push_back(io::rational_from(vj[i], curve_path + ": " + io::index_path("values", i)));
            ConvexCurve phi(knots, vals);
            Rectangle r = io::parse_rectangle(rect_text);
            with_function(fn_path, [&](const auto& f) { emit(out_path, dump(io::to_json(graph_fill(f, phi, r, n).g))); });
        } else if (j_sector->parsed()) {
            SectorSpec spec{io::parse_rectangle(rect_text), io::parse_point(d1_text), io::parse_point(d2_text)};
            with_function(fn_path, [&](const auto& f) {
                emit(out_path, dump(io::to_json(sector_fill(f, spec, n ? n : 8).g)));
            });
        } else if (j_paste->parsed()) {
            Rational a = parse_rational(a_text), b = parse_rational(b_text);
            with_function(fn_path, [&](const auto& f) { emit(out_path, dump(io::to_json(pasting_extend(f, a, b).h))); });
        }
    } else if (ex->parsed()) {
        auto k = parse_example_kind(kind);
        if (!k) throw Error(ErrorCode::BadInput, "unknown example kind '" + kind + "'");
        emit(out_path, dump(io::to_json(make_example({*k, n, !no_zero}))));
    } else if (suite->parsed()) {
        auto results = suite::run_paper_suite(seed, [](const suite::CriterionResult& r) {
            std::cerr << "criterion " << r.id << " " << (r.pass ? "pass" : "fail") << "\n";
        });
        emit(out_path, suite::suite_csv(results));
        for (const auto& r : results)
            if (!r.pass) return 1;
    } else if (plot->parsed()) {
        std::vector<PointList> lines;
        for (const auto& path : overlay) lines.push_back(load_list(path));
        Json j = io::load_json(ctpp_path);
        if (io::ctpp_is_complex(j)) emit(svg_path, render_svg(io::ctpp_from<Complex>(j, ctpp_path), lines));
        else emit(svg_path, render_svg(io::ctpp_from<Rational>(j, ctpp_path), lines));
    }
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: BadInput: " << e.what() << "\n";
        return 2;
    }
}
