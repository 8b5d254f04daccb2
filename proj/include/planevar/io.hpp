#pragma once

// JSON readers and writers for the file formats, and CSV rows for reports.
// Needs nlohmann json on the include path as <json.hpp> (vendored).
//
// Numbers: integers are written as JSON numbers, other rationals as "p/q"
// strings. Readers also accept decimal literals (converted exactly) and
// complex values as [re, im].

#include "planevar/approx.hpp"
#include "planevar/ctpp.hpp"
#include "planevar/joins.hpp"
#include "planevar/onedim.hpp"
#include "planevar/sampled.hpp"
#include "planevar/variation.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace planevar::io {

using Json = nlohmann::json;

[[noreturn]] inline void bad_file(const std::string& source, const std::string& where, const std::string& msg) {
    throw Error(ErrorCode::BadInputFile, source + ": " + where + ": " + msg);
}

// Parse errors report the 1-based line and column of the offending byte.
inline Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        bad_file(source, "line " + std::to_string(line) + " column " + std::to_string(col), "malformed JSON");
    }
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_file(path, "file", "cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
    out << text;
}

inline Json load_json(const std::string& path) { return parse_json(read_text(path), path); }

// Field lookup that names the missing key.
inline const Json& field(const Json& j, const std::string& key, const std::string& source) {
    if (!j.is_object()) bad_file(source, "top level", "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad_file(source, "field '" + key + "'", "missing");
    return *it;
}

// ---------------------------------------------------------------------------
// Scalars

inline Rational rational_from(const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) {
            if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
            return Rational(Integer(std::to_string(j.get<std::int64_t>())));
        }
        if (j.is_number_float()) {
            double d = j.get<double>();
            if (!std::isfinite(d)) throw Error(ErrorCode::BadInput, "non-finite number");
            return Rational(d);
        }
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw Error(ErrorCode::BadInputFile, where + ": " + e.what());
    }
    throw Error(ErrorCode::BadInputFile, where + ": expected a number or \"p/q\" string");
}

inline Json to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_str());
}

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from(const Json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw Error(ErrorCode::BadInputFile, where + ": complex value needs [re, im]");
        return {rational_from(j[0], where + "[0]").get_d(), rational_from(j[1], where + "[1]").get_d()};
    }
    return {rational_from(j, where).get_d(), 0.0};
}

template <FunctionValue V>
V value_from(const Json& j, const std::string& where) {
    if constexpr (std::is_same_v<V, Rational>) {
        if (j.is_array()) throw Error(ErrorCode::BadInputFile, where + ": complex value where a rational is required");
        return rational_from(j, where);
    } else {
        return complex_from(j, where);
    }
}

inline std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

// A point is [x, y]; a bare number x is the point (x, 0).
inline Point2 point_from(const Json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw Error(ErrorCode::BadInputFile, where + ": point needs two coordinates");
        return {rational_from(j[0], where + "[0]"), rational_from(j[1], where + "[1]")};
    }
    return {rational_from(j, where), Rational(0)};
}

inline Json to_json(const Point2& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

inline PointList points_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error(ErrorCode::BadInputFile, where + ": expected an array of points");
    PointList out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from(j[i], index_path(where, i)));
    return out;
}

inline Json to_json(const PointList& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

// "a,b,c" or "a b c" on the command line.
inline std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(parse_rational(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ') flush();
        else cur.push_back(c);
    }
    flush();
    return out;
}

inline Point2 parse_point(const std::string& text) {
    auto v = parse_rational_list(text);
    if (v.size() != 2) throw Error(ErrorCode::BadInput, "point '" + text + "' needs two coordinates");
    return {v[0], v[1]};
}

inline Rectangle parse_rectangle(const std::string& text) {
    auto v = parse_rational_list(text);
    if (v.size() != 4) throw Error(ErrorCode::BadInput, "rectangle '" + text + "' needs x_min,x_max,y_min,y_max");
    return Rectangle(v[0], v[1], v[2], v[3]);
}

// ---------------------------------------------------------------------------
// Sampled functions: {"points": [...], "values": [...]}

inline bool has_complex_values(const Json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) return false;
    for (const auto& v : j["values"])
        if (v.is_array()) return true;
    return false;
}

template <FunctionValue V>
SampledFunction<V> sampled_from(const Json& j, const std::string& source) {
    const Json& pts = field(j, "points", source);
    const Json& vals = field(j, "values", source);
    auto domain = points_from(pts, source + ": points");
    if (!vals.is_array() || vals.size() != domain.size())
        bad_file(source, "field 'values'", "expected an array with one value per point");
    std::vector<V> values;
    for (std::size_t i = 0; i < vals.size(); ++i) values.push_back(value_from<V>(vals[i], source + ": " + index_path("values", i)));
    try {
        return SampledFunction<V>(std::move(domain), std::move(values));
    } catch (const Error& e) {
        bad_file(source, "field 'points'", e.what());
    }
}

template <FunctionValue V>
Json to_json(const SampledFunction<V>& f) {
    Json vals = Json::array();
    for (const auto& v : f.values()) vals.push_back(to_json(v));
    return Json{{"points", to_json(f.domain())}, {"values", vals}};
}

template <FunctionValue V>
Function1D<V> function1d_from(const Json& j, const std::string& source) {
    auto f = sampled_from<V>(j, source);
    try {
        return from_axis(f);
    } catch (const Error& e) {
        bad_file(source, "field 'points'", e.what());
    }
}

template <FunctionValue V>
Json to_json(const Function1D<V>& f) {
    return to_json(embed_on_axis(f));
}

// ---------------------------------------------------------------------------
// Polygons, triangulations, CTPP functions

inline Polygon polygon_from(const Json& j, const std::string& source) {
    auto v = points_from(field(j, "vertices", source), source + ": vertices");
    try {
        return Polygon(std::move(v));
    } catch (const Error& e) {
        bad_file(source, "field 'vertices'", e.what());
    }
}

inline Json to_json(const Polygon& p) { return Json{{"vertices", to_json(p.vertices())}}; }

inline Triangulation triangulation_from(const Json& j, const std::string& source) {
    auto v = points_from(field(j, "vertices", source), source + ": vertices");
    const Json& t = field(j, "triangles", source);
    if (!t.is_array()) bad_file(source, "field 'triangles'", "expected an array of index triples");
    std::vector<TriangleIndices> tris;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Json& row = t[i];
        if (!row.is_array() || row.size() != 3)
            bad_file(source, index_path("triangles", i), "expected three vertex indices");
        TriangleIndices idx{};
        for (std::size_t k = 0; k < 3; ++k) {
            if (!row[k].is_number_unsigned()) bad_file(source, index_path(index_path("triangles", i), k), "expected an index");
            idx[k] = row[k].get<std::size_t>();
        }
        tris.push_back(idx);
    }
    try {
        return Triangulation(std::move(v), std::move(tris));
    } catch (const Error& e) {
        bad_file(source, "field 'triangles'", e.what());
    }
}

inline Json to_json(const Triangulation& t) {
    Json tris = Json::array();
    for (const auto& tr : t.triangles()) tris.push_back(Json::array({tr[0], tr[1], tr[2]}));
    return Json{{"vertices", to_json(t.vertices())}, {"triangles", tris}};
}

inline bool ctpp_is_complex(const Json& j) {
    if (j.contains("values")) return has_complex_values(j);
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) return false;
    for (const auto& row : j["coeffs"])
        if (row.is_array())
            for (const auto& v : row)
                if (v.is_array()) return true;
    return false;
}

// Either per-triangle "coeffs": [[a, b, c], ...] or per-vertex "values".
template <FunctionValue V>
CtppFunction<V> ctpp_from(const Json& j, const std::string& source) {
    auto tri = triangulation_from(j, source);
    if (j.contains("values")) {
        const Json& vals = j["values"];
        if (!vals.is_array() || vals.size() != tri.vertices().size())
            bad_file(source, "field 'values'", "expected one value per vertex");
        std::vector<V> v;
        for (std::size_t i = 0; i < vals.size(); ++i) v.push_back(value_from<V>(vals[i], source + ": " + index_path("values", i)));
        return CtppFunction<V>::from_vertex_values(std::move(tri), v);
    }
    const Json& cs = field(j, "coeffs", source);
    if (!cs.is_array() || cs.size() != tri.size()) bad_file(source, "field 'coeffs'", "expected one [a, b, c] per triangle");
    std::vector<PlanarCoeffs<V>> coeffs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string where = source + ": " + index_path("coeffs", i);
        if (!cs[i].is_array() || cs[i].size() != 3) throw Error(ErrorCode::BadInputFile, where + ": expected [a, b, c]");
        coeffs.push_back({value_from<V>(cs[i][0], where + "[0]"), value_from<V>(cs[i][1], where + "[1]"),
                          value_from<V>(cs[i][2], where + "[2]")});
    }
    return CtppFunction<V>(std::move(tri), std::move(coeffs));
}

template <FunctionValue V>
Json to_json(const CtppFunction<V>& g) {
    Json j = to_json(g.triangulation());
    Json cs = Json::array();
    for (const auto& c : g.coeffs()) cs.push_back(Json::array({to_json(c.a), to_json(c.b), to_json(c.c)}));
    j["coeffs"] = cs;
    return j;
}

// ---------------------------------------------------------------------------
// Polynomials: {"coeffs": [[c00, c01, ...], [c10, ...], ...]}, c[m][n] of x^m y^n

inline Poly2 poly_from(const Json& j, const std::string& source) {
    const Json& cs = field(j, "coeffs", source);
    if (!cs.is_array()) bad_file(source, "field 'coeffs'", "expected nested arrays");
    Poly2::Table t;
    for (std::size_t m = 0; m < cs.size(); ++m) {
        if (!cs[m].is_array()) bad_file(source, index_path("coeffs", m), "expected an array");
        std::vector<Rational> row;
        for (std::size_t n = 0; n < cs[m].size(); ++n)
            row.push_back(rational_from(cs[m][n], source + ": " + index_path(index_path("coeffs", m), n)));
        t.push_back(std::move(row));
    }
    // rows may be ragged in the file; pad so the table is rectangular
    std::size_t width = 0;
    for (const auto& row : t) width = std::max(width, row.size());
    for (auto& row : t) row.resize(width);
    return Poly2(std::move(t));
}

inline Json to_json(const Poly2& p) {
    Json cs = Json::array();
    for (const auto& row : p.coeffs()) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        cs.push_back(r);
    }
    return Json{{"coeffs", cs}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
}

inline std::string format_value(const Rational& q) { return q.get_str(); }
inline std::string format_value(double d) { return format_double(d); }

inline std::string format_value(const Complex& z) {
    std::string re = format_double(z.real());
    std::string im = format_double(std::abs(z.imag()));
    return re + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

inline std::string format_optional_bool(const std::optional<bool>& b) { return b ? format_bool(*b) : "na"; }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\n";
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // source line of each row

    std::size_t column(const std::string& name, const std::string& source) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        bad_file(source, "header", "missing column '" + name + "'");
    }
};

// RFC 4180 style: quoted fields may contain commas, doubled quotes and newlines.
inline CsvTable parse_csv(const std::string& text, const std::string& source) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> starts;
    std::vector<std::string> rec;
    std::string cur;
    bool quoted = false, any = false;
    std::size_t line = 1, start = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                if (c == '\n') ++line;
                cur += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            rec.push_back(std::move(cur));
            cur.clear();
            any = true;
        } else if (c == '\n') {
            if (any || !cur.empty()) {
                rec.push_back(std::move(cur));
                records.push_back(std::move(rec));
                starts.push_back(start);
            }
            rec.clear();
            cur.clear();
            any = false;
            start = ++line;
        } else if (c != '\r') {
            cur += c;
            any = true;
        }
    }
    if (quoted) bad_file(source, "line " + std::to_string(start), "unterminated quoted field");
    if (any || !cur.empty()) {
        rec.push_back(std::move(cur));
        records.push_back(std::move(rec));
        starts.push_back(start);
    }
    if (records.empty()) bad_file(source, "line 1", "missing header");
    CsvTable t;
    t.header = records[0];
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            bad_file(source, "line " + std::to_string(starts[r]),
                     "expected " + std::to_string(t.header.size()) + " fields, found " + std::to_string(records[r].size()));
        t.rows.push_back(std::move(records[r]));
        t.lines.push_back(starts[r]);
    }
    return t;
}

inline Rational csv_rational(const CsvTable& t, std::size_t row, const std::string& name, const std::string& source) {
    const std::string& s = t.rows[row][t.column(name, source)];
    try {
        return parse_rational(s);
    } catch (const Error& e) {
        bad_file(source, "line " + std::to_string(t.lines[row]) + " field '" + name + "'", e.what());
    }
}

// VarEstimate: value,exact,method,vf,witness_len,seed
inline const std::vector<std::string> kVarHeader{"value", "exact", "method", "vf", "witness_len", "seed"};

template <FunctionValue V>
std::vector<std::string> var_row(const VarEstimate<V>& e) {
    return {format_value(e.value),
            format_bool(e.exact),
            std::string(to_string(e.method)),
            std::to_string(e.witness_vf),
            std::to_string(e.witness.size()),
            e.seed ? std::to_string(*e.seed) : std::string()};
}

// Approximation: eps_meas,sup_err,lip_err,bound,pass
inline const std::vector<std::string> kApproxHeader{"eps_meas", "sup_err", "lip_err", "bound", "pass"};

// For the C^2 pipeline lip_err is the Lipschitz-norm error (sup plus
// Lipschitz constant of f - p), compared against (4 + sqrt 13) eps.
inline std::vector<std::string> approx_row(const C2Report& r) {
    return {format_double(r.eps_meas), format_double(r.sup_err), format_double(r.lip_norm_err()),
            format_double(r.bound()), format_bool(r.pass())};
}

// For grid interpolation lip_err is the Lipschitz constant of f - g,
// compared against sqrt 2 eps.
inline std::vector<std::string> approx_row(const GridInterpolationReport& r) {
    double bound = std::sqrt(2.0) * r.eps_meas;
    bool pass = r.sup_err <= r.eps_meas && r.lip_err <= bound * 1.01;
    return {format_double(r.eps_meas), format_double(r.sup_err), format_double(r.lip_err), format_double(bound),
            format_bool(pass)};
}

// Join: instance,joins_convexly,var1,var2,var_union,lower_ok,upper_ok,exact
inline const std::vector<std::string> kJoinHeader{"instance", "joins_convexly", "var1", "var2",
                                                  "var_union", "lower_ok", "upper_ok", "exact"};

template <FunctionValue V>
std::vector<std::string> join_row(const std::string& instance, const JoinReport<V>& r) {
    return {instance,
            std::string(to_string(r.status)),
            format_value(r.var1),
            format_value(r.var2),
            format_value(r.var_union),
            format_optional_bool(r.lower_ok),
            format_optional_bool(r.upper_ok),
            format_bool(r.exact())};
}

}  // namespace planevar::io
