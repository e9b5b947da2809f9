#pragma once

// JSON encodings shared by the command-line tool and the golden tests.

#include "scissors/hypmodel.hpp"
#include "scissors/periods.hpp"
#include "scissors/qfield.hpp"
#include "scissors/scissors.hpp"
#include "scissors/simplex.hpp"
#include "scissors/tiling.hpp"

#include "json.hpp"  // vendored nlohmann::json

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace scissors {

using json = nlohmann::json;

/// Malformed or out-of-contract input document.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// 12 significant digits, the precision of every floating value the tool prints.
inline double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline double number(const json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
    return j.get<double>();
}

inline BigInt integer(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::runtime_error&) {
        }
    }
    throw ValidationError("exact coordinates need integer numerators and denominators");
}

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Field elements: [a_num, a_den, b_num, b_den], d from the enclosing document

inline json to_json(const QuadElem& x) {
    auto enc = [](const BigInt& v) -> json {
        if (v >= -(BigInt(1) << 53) && v <= (BigInt(1) << 53)) return v.convert_to<long long>();
        return v.str();
    };
    return json::array({enc(num(x.a())), enc(den(x.a())), enc(num(x.b())), enc(den(x.b()))});
}

inline QuadElem quad_from_json(const json& j, std::int64_t d) {
    if (!j.is_array() || j.size() != 4) throw ValidationError("field element must be [a_num, a_den, b_num, b_den]");
    BigInt ad = detail::integer(j[1]), bd = detail::integer(j[3]);
    if (ad == 0 || bd == 0) throw ValidationError("zero denominator");
    Rational a = make_rational(detail::integer(j[0]), ad);
    Rational b = make_rational(detail::integer(j[2]), bd);
    if (b == 0) return QuadElem(a);
    if (d == 1) throw ValidationError("irrational field element needs \"d\" in the document");
    try {
        return QuadElem(a, b, d);
    } catch (const std::domain_error& e) {
        throw ValidationError(e.what());
    }
}

// ---------------------------------------------------------------------------------------
// Points and forms

inline json to_json(const HPoint& p) {
    json c = json::array();
    for (double x : p.coords) c.push_back(round12(x));
    json out{{"model", to_string(p.model)}, {"ideal", p.ideal}, {"coords", c}};
    if (p.at_infinity) out["at_infinity"] = true;
    return out;
}

inline HPoint point_from_json(const json& j) {
    HPoint p;
    try {
        p.model = j.contains("model") ? parse_model(detail::field(j, "model").get<std::string>()) : Model::Klein;
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    p.ideal = j.value("ideal", false);
    p.at_infinity = j.value("at_infinity", false);
    if (!p.at_infinity) {
        const json& c = detail::field(j, "coords");
        if (!c.is_array()) throw ValidationError("coords must be an array");
        for (const auto& x : c) p.coords.push_back(detail::number(x, "coordinate"));
    }
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return p;
}

inline json to_json(const QuadraticForm& q) {
    std::int64_t d = 1;
    for (const auto& e : q.diag)
        if (!e.is_rational()) d = e.d();
    // the standard form is -d x0^2 + sum x_i^2
    return json{{"d", d}, {"dim", q.dim()}};
}

inline QuadraticForm form_from_json(const json& j) {
    auto d = detail::field(j, "d").get<std::int64_t>();
    int n = detail::field(j, "dim").get<int>();
    if (n < 1) throw ValidationError("form dimension must be positive");
    QuadraticForm q = QuadraticForm::standard(n);
    q.diag[0] = QuadElem(-d);
    return q;
}

// ---------------------------------------------------------------------------------------
// Simplices

inline json to_json(const Simplex& s) {
    json verts = json::array();
    for (int i = 0; i <= s.dim(); ++i) verts.push_back(to_json(s.vertex(i)));
    json out{{"dim", s.dim()}, {"vertices", verts}, {"orientation", orientation(s)}};
    if (s.exact) {
        std::int64_t d = 1;
        json ex = json::array();
        for (const auto& row : *s.exact) {
            json r = json::array();
            for (const auto& c : row) {
                if (!c.is_rational()) d = c.d();
                r.push_back(to_json(c));
            }
            ex.push_back(r);
        }
        out["d"] = d;
        out["exact"] = ex;
    }
    return out;
}

/// Accepts either "vertices" (points in any model) or "exact" (Klein rows of field elements
/// over Q(sqrt d)). A stated orientation must agree with the vertex order.
inline Simplex simplex_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("simplex must be an object");
    Simplex s;
    if (j.contains("exact")) {
        std::int64_t d = j.value("d", std::int64_t{1});
        std::vector<std::vector<QuadElem>> rows;
        for (const auto& r : j.at("exact")) {
            std::vector<QuadElem> row;
            for (const auto& c : r) row.push_back(quad_from_json(c, d));
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw ValidationError("simplex has no vertices");
        s = make_exact_simplex(rows);
    } else {
        const json& v = detail::field(j, "vertices");
        if (!v.is_array() || v.empty()) throw ValidationError("vertices must be a nonempty array");
        std::vector<HPoint> pts;
        for (const auto& p : v) pts.push_back(point_from_json(p));
        try {
            s = make_simplex(pts);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
    }
    for (const auto& row : s.y)
        if (row.size() != s.y[0].size()) throw ValidationError("vertices live in different dimensions");
    if (j.contains("dim") && j.at("dim").get<int>() != s.dim())
        throw ValidationError("\"dim\" does not match the number of vertices");
    if (j.contains("orientation")) {
        int o = j.at("orientation").get<int>();
        if (o != 1 && o != -1) throw ValidationError("orientation must be +1 or -1");
        if (s.dim() == s.ambient_dim() && orientation(s) != 0 && orientation(s) != o)
            throw ValidationError("stated orientation disagrees with the vertex order");
    }
    return s;
}

inline json to_json(const ProductSimplex& p) {
    json out = json::array();
    for (const auto& f : p.factors) out.push_back(to_json(f));
    return out;
}

inline ProductSimplex product_from_json(const json& j) {
    if (j.is_object()) return ProductSimplex({simplex_from_json(j)});
    if (!j.is_array() || j.empty()) throw ValidationError("product simplex must be a nonempty array of simplices");
    std::vector<Simplex> f;
    for (const auto& s : j) f.push_back(simplex_from_json(s));
    return ProductSimplex(std::move(f));
}

// ---------------------------------------------------------------------------------------
// Tilings

struct Tiling {
    std::vector<ProductSimplex> tiles;
    std::vector<Gluing> gluing;
    Space space = Space::Hyperbolic;
};

inline json to_json(const Tiling& t) {
    json tiles = json::array();
    for (const auto& p : t.tiles) tiles.push_back(to_json(p));
    json g = json::array();
    for (const auto& e : t.gluing) g.push_back({e[0], e[1], e[2], e[3]});
    return json{{"space", t.space == Space::Euclidean ? "euclidean" : "hyperbolic"}, {"tiles", tiles}, {"gluing", g}};
}

/// "space": "euclidean" reads vertex coordinates as plain Euclidean points (no ball check).
inline Tiling tiling_from_json(const json& j) {
    Tiling t;
    std::string sp = j.value("space", std::string("hyperbolic"));
    if (sp == "euclidean") t.space = Space::Euclidean;
    else if (sp != "hyperbolic") throw ValidationError("space must be \"euclidean\" or \"hyperbolic\"");
    const json& tiles = detail::field(j, "tiles");
    if (!tiles.is_array()) throw ValidationError("tiles must be an array");
    for (const auto& p : tiles) {
        if (t.space == Space::Euclidean) {
            // no hyperbolic validation: raw coordinate rows
            std::vector<Simplex> f;
            auto read = [&](const json& s) {
                Simplex x;
                for (const auto& v : detail::field(s, "vertices")) {
                    std::vector<double> y;
                    for (const auto& c : detail::field(v, "coords")) y.push_back(detail::number(c, "coordinate"));
                    x.y.push_back(std::move(y));
                    x.ideal.push_back(false);
                }
                if (x.y.empty()) throw ValidationError("simplex has no vertices");
                return x;
            };
            if (p.is_object()) f.push_back(read(p));
            else
                for (const auto& s : p) f.push_back(read(s));
            t.tiles.push_back(ProductSimplex(std::move(f)));
        } else {
            t.tiles.push_back(product_from_json(p));
        }
    }
    if (j.contains("gluing")) {
        for (const auto& e : j.at("gluing")) {
            if (!e.is_array() || e.size() != 4) throw ValidationError("gluing entries are [tile, facet, tile, facet]");
            Gluing g{e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()};
            const int n = static_cast<int>(t.tiles.size());
            if (g[0] < 0 || g[0] >= n || g[2] < -1 || g[2] >= n) throw ValidationError("gluing refers to a missing tile");
            t.gluing.push_back(g);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------------------
// Dehn sums and period matrices

inline json to_json(const DehnSum& d) {
    json out = json::array();
    for (const auto& t : d) out.push_back({round12(t.length), round12(t.angle)});
    return out;
}

inline DehnSum dehn_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("Dehn sum must be an array of [length, angle]");
    DehnSum d;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ValidationError("Dehn term must be [length, angle]");
        d.push_back({detail::number(e[0], "length"), detail::number(e[1], "angle")});
    }
    return d;
}

/// Entries row-major, each as [re, im].
inline json to_json(const PeriodMatrix& pm) {
    json e = json::array();
    for (int i = 0; i < pm.size(); ++i)
        for (int k = 0; k < pm.size(); ++k)
            e.push_back({round12(pm.entries(i, k).real()), round12(pm.entries(i, k).imag())});
    return json{{"size", pm.size()},
                {"weights", pm.weights},
                {"entries", e},
                {"frame", {pm.frame_top, pm.frame_bottom}}};
}

inline PeriodMatrix period_matrix_from_json(const json& j) {
    PeriodMatrix pm;
    int n = detail::field(j, "size").get<int>();
    const json& e = detail::field(j, "entries");
    if (n < 1 || !e.is_array() || static_cast<int>(e.size()) != n * n)
        throw ValidationError("entries must hold size*size [re, im] pairs");
    pm.entries.resize(n, n);
    for (int i = 0; i < n * n; ++i) {
        if (!e[i].is_array() || e[i].size() != 2) throw ValidationError("entry must be [re, im]");
        pm.entries(i / n, i % n) = cplx(detail::number(e[i][0], "re"), detail::number(e[i][1], "im"));
    }
    pm.weights = detail::field(j, "weights").get<std::vector<int>>();
    if (static_cast<int>(pm.weights.size()) != n) throw ValidationError("one weight per row");
    pm.frame_top = n - 1;
    pm.frame_bottom = 0;
    if (j.contains("frame")) {
        auto f = j.at("frame").get<std::vector<int>>();
        if (f.size() != 2 || f[0] < 0 || f[0] >= n || f[1] < 0 || f[1] >= n)
            throw ValidationError("frame must be [top_row, bottom_column]");
        pm.frame_top = f[0];
        pm.frame_bottom = f[1];
    }
    return pm;
}

}  // namespace scissors
