// scissors: command-line front end. One JSON document on stdout per run.
// Exit codes: 0 ok, 1 unknown subcommand, 2 invalid input, 3 numeric contract not met.

#include "scissors/coxeter.hpp"
#include "scissors/json_io.hpp"
#include "scissors/lfunc.hpp"
#include "scissors/periods.hpp"
#include "scissors/scissors.hpp"
#include "scissors/tiling.hpp"
#include "scissors/volume.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>

using namespace scissors;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kNumeric = 3;

struct NumericFailure : std::runtime_error {
    json doc;
    NumericFailure(const std::string& what, json d) : std::runtime_error(what), doc(std::move(d)) {}
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("SCISSORS_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw ValidationError("SCISSORS_SEED must be a non-negative integer");
        }
    }
    return 0;
}

json read_document(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------------------

json cmd_volume(const std::string& in, long long samples, std::uint64_t seed, double tol) {
    json doc = read_document(in);
    auto one = [&](const Simplex& s) -> std::pair<json, NumericVolume> {
        if (s.ambient_dim() != s.dim()) throw ValidationError("volume needs a full-dimensional simplex");
        switch (s.dim()) {
            case 1: return {"length", {length_h1(s), 0}};
            case 2: return {"angle-defect", {area_h2(s), 0}};
            case 3: return {s.num_ideal() == 4 ? "bloch-wigner" : "lobachevsky", {vol_h3(s), 0}};
            default: return {"qmc", vol_numeric(s, samples, seed)};
        }
    };
    json out;
    if (doc.is_array()) {
        auto p = product_from_json(doc);
        double v = 1, rel2 = 0;
        json methods = json::array();
        for (const auto& f : p.factors) {
            auto [m, nv] = one(f);
            methods.push_back(m);
            v *= nv.value;
            if (nv.value != 0) rel2 += (nv.err / nv.value) * (nv.err / nv.value);
        }
        out = {{"value", round12(v)}, {"method", methods}, {"err", round12(std::fabs(v) * std::sqrt(rel2))}};
    } else {
        auto [m, nv] = one(simplex_from_json(doc));
        out = {{"value", round12(nv.value)}, {"method", m}, {"err", round12(nv.err)}};
    }
    if (tol > 0 && out["err"].get<double>() > tol) throw NumericFailure("error estimate exceeds --tol", out);
    return out;
}

json cmd_dehn(const std::string& in, double tol, std::int64_t max_den) {
    json doc = read_document(in);
    ReduceOptions opt{tol, max_den};
    DehnSum raw;
    if (doc.is_object() && (doc.contains("vertices") || doc.contains("exact"))) {
        auto s = simplex_from_json(doc);
        if (s.dim() != 3 || s.ambient_dim() != 3 || s.num_ideal() > 0)
            throw ValidationError("dehn needs a finite tetrahedron in H^3");
        raw = dehn3(s);
    } else if (doc.is_array() && !doc.empty() && doc[0].is_object()) {
        // several tetrahedra, summed
        for (const auto& t : doc) {
            auto s = simplex_from_json(t);
            if (s.dim() != 3 || s.ambient_dim() != 3 || s.num_ideal() > 0)
                throw ValidationError("dehn needs finite tetrahedra in H^3");
            auto d = dehn3(s);
            if (orientation(s) < 0) d = scaled(d, -1);
            raw.insert(raw.end(), d.begin(), d.end());
        }
    } else {
        raw = dehn_from_json(doc);
    }
    auto red = reduce(raw, opt);
    return {{"terms", to_json(raw)}, {"reduced", to_json(red)}, {"is_zero", red.empty()}};
}

json cmd_excise(const std::string& in, bool pairwise) {
    auto t = tiling_from_json(read_document(in));
    if (t.tiles.empty()) throw ValidationError("no tiles");
    std::size_t nf = t.tiles[0].factors.size();
    for (const auto& p : t.tiles) {
        if (p.factors.size() != nf) throw ValidationError("tiles have different numbers of factors");
        for (std::size_t k = 0; k < nf; ++k) {
            const auto& f = p.factors[k];
            if (f.dim() != f.ambient_dim() || f.dim() != t.tiles[0].factors[k].dim())
                throw ValidationError("factors must be full-dimensional and match across tiles");
            if (f.num_ideal() > 0) throw ValidationError("excision of tiles with ideal vertices is not supported");
        }
    }
    ExcisionResult r;
    try {
        if (pairwise) {
            // the excision lemma applied once: intersection plus both relative complements
            if (t.tiles.size() != 2) throw ValidationError("--pairwise needs exactly two tiles");
            r.cells = excise_pair(product_polytope(t.tiles[0], t.space), product_polytope(t.tiles[1], t.space));
            for (const auto& c : r.cells)
                for (auto& p : triangulate(c, t.tiles[0].places)) r.tiles.push_back(std::move(p));
            r.rounds = r.round_bound = 1;
        } else {
            r = excise_all(t.tiles, t.space);
        }
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    double vol = 0;
    for (const auto& p : r.tiles) vol += product_volume(p, t.space);
    Tiling out{r.tiles, infer_gluing(r.tiles), t.space};
    json j = to_json(out);
    json ov = json::array();
    for (auto [a, b] : r.overlaps) ov.push_back({a, b});
    j["cells"] = r.cells.size();
    j["volume"] = round12(vol);
    j["rounds"] = r.rounds;
    j["overlaps"] = ov;
    return j;
}

json cmd_check_tiling(const std::string& in, long long probes, std::uint64_t seed, double tol) {
    auto t = tiling_from_json(read_document(in));
    auto rep = check_proper(t.tiles, t.gluing, probes, seed);
    json facets = json::array();
    for (const auto& f : rep.facets)
        facets.push_back({{"tile", f.tile},
                          {"facet", f.facet},
                          {"interior", f.interior},
                          {"coverage", round12(f.coverage)},
                          {"deviation", round12(f.deviation)}});
    json out{{"interior_facets", rep.interior_facets},
             {"boundary_facets", rep.boundary_facets},
             {"max_deviation", round12(rep.max_deviation)},
             {"proper", rep.max_deviation <= tol},
             {"facets", facets}};
    if (rep.max_deviation > tol) throw NumericFailure("local multiplicity deviates from 1", out);
    return out;
}

json cmd_periods(const std::string& in) {
    json doc = read_document(in);
    PeriodMatrix pm;
    if (doc.is_object() && doc.contains("entries")) {
        pm = period_matrix_from_json(doc);
    } else {
        auto s = simplex_from_json(doc);
        if (s.dim() != 3 || s.ambient_dim() != 3) throw ValidationError("periods needs a tetrahedron in H^3");
        if (s.num_ideal() > 1) throw ValidationError("at most one ideal vertex is supported");
        pm = s.num_ideal() == 1 ? period_matrix_h3_ideal(s) : period_matrix_h3(s);
    }
    json out = to_json(pm);
    out["real_period"] = round12(real_period(pm));
    if (pm.size() == 8) {
        json cp = json::array();
        for (const auto& c : coproduct_h3(pm)) cp.push_back({round12(c.length), round12(c.theta)});
        out["coproduct"] = cp;
    }
    if (!pm.cusp_angles.empty()) {
        json ca = json::array();
        for (double a : pm.cusp_angles) ca.push_back(round12(a));
        out["cusp_angles"] = ca;
    }
    return out;
}

json cmd_zeta(std::int64_t d, int n) {
    ZetaSpecial z;
    try {
        z = zeta_quad_special(d, n);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return {{"value", to_string(z.value)}, {"method", z.trivial_zero ? "trivial-zero" : "bernoulli"}};
}

json cmd_lvalue(const std::string& minpoly, double s, std::int64_t pmax, double tol) {
    IntPoly f;
    try {
        f = parse_polynomial(minpoly);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (degree(f) < 1 || !is_irreducible(f)) throw ValidationError("minimal polynomial must be irreducible over Q");
    if (!(s > 1)) throw ValidationError("--s must exceed 1");
    auto e = dedekind_euler(f, s, pmax);
    auto disc = field_discriminant(f);
    json out{{"value", round12(e.value)},
             {"method", "euler-product"},
             {"err", round12(e.tail_error * e.value)},
             {"p_max", e.p_max},
             {"flagged_primes", e.flagged_primes},
             {"degree", degree(f)},
             {"real_places", real_root_count(f)},
             {"discriminant", disc.value.str()},
             {"discriminant_uncertain_at", disc.uncertain}};
    if (tol > 0 && e.tail_error * e.value > tol) throw NumericFailure("tail error exceeds --tol", out);
    return out;
}

json cmd_covolume(const std::string& which, std::int64_t d, int m, int t, const std::string& minpoly,
                  std::int64_t pmax) {
    CovolumeParams prm;
    CovolumeCase c;
    try {
        c = parse_covolume_case(which);
        prm.d = d;
        prm.m = m;
        prm.t = t;
        prm.p_max = pmax;
        if (!minpoly.empty()) prm.minpoly_L = parse_polynomial(minpoly);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    VolumeClass v;
    try {
        v = covolume_class(c, prm);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return {{"case", which},
            {"class", v.rational_class},
            {"pi_exp", v.pi_exp},
            {"l_part", v.l_part},
            {"l_star", round12(v.l_star)},
            {"l_at_m", round12(v.l_at_m)},
            {"sqrt_disc", round12(v.sqrt_disc)},
            {"star_pi_offset", v.star_pi_offset},
            {"representative", round12(v.representative)}};
}

json cmd_bugaenko(long long samples, std::uint64_t seed, int apexes, std::int64_t pmax) {
    auto r = bugaenko_report(samples, seed, apexes, pmax);
    json gram = json::array();
    for (const auto& g : r.gram) {
        json e{{"i", g.i + 1}, {"j", g.j + 1}, {"kind", g.kind}, {"product", to_json(g.product)},
               {"cos_squared", to_json(g.cos_squared)}, {"value", round12(g.value)}};
        if (g.cos_exact) e["cos"] = to_json(*g.cos_exact);
        if (g.coxeter_order) e["order"] = *g.coxeter_order;
        gram.push_back(e);
    }
    json verts = json::array();
    for (const auto& v : r.vertices) {
        json x = json::array();
        for (const auto& c : v.x) x.push_back(to_json(c));
        json w = json::array();
        for (int i : v.walls) w.push_back(i + 1);
        verts.push_back({{"x", x}, {"walls", w}, {"interior", v.interior}});
    }
    json vols = json::array();
    for (const auto& v : r.volumes)
        vols.push_back({{"apex", v.apex}, {"value", round12(v.value)}, {"err", round12(v.err)},
                        {"pieces", v.pieces.size()}});
    json out{{"d", 5},
             {"form", to_json(r.polytope.form)},
             {"gram", gram},
             {"vertex_count", r.vertices.size()},
             {"vertices", verts},
             {"all_interior", r.all_interior},
             {"simple", r.simple},
             {"volumes", vols},
             {"l_chi_3", round12(r.l_chi_3)},
             {"d_L", r.d_L.value.str()},
             {"sqrt_disc", round12(r.sqrt_disc)},
             {"ratio", round12(r.ratio)},
             {"ratio_err", round12(r.ratio_err)},
             {"recognized", r.recognized ? json(to_string(*r.recognized)) : json(nullptr)}};
    return out;
}

json cmd_recognize(double x, std::int64_t maxden, double tol) {
    if (maxden < 1) throw ValidationError("--maxden must be positive");
    auto r = recognize_rational(x, maxden, tol);
    json out{{"rational", r ? json(to_string(*r)) : json(nullptr)}};
    if (!r) throw NumericFailure("no rational within tolerance", out);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    static const std::set<std::string> commands{"volume",  "dehn",  "excise",   "check-tiling", "periods",
                                                "zeta",    "lvalue", "covolume", "bugaenko",     "recognize"};
    CLI::App app{"Hyperbolic scissors congruence, volumes and special values"};
    app.require_subcommand(1);

    std::string in;
    long long samples = 1 << 20;
    std::optional<std::uint64_t> seed_opt;
    double tol = 0;

    auto* volume = app.add_subcommand("volume", "volume of a simplex or product simplex");
    volume->add_option("--in", in, "input JSON (default stdin)");
    volume->add_option("--samples", samples, "QMC samples for dimension > 3");
    volume->add_option("--seed", seed_opt);
    volume->add_option("--tol", tol, "fail (exit 3) if the error estimate exceeds this");

    double dehn_tol = 1e-9;
    std::int64_t max_den = 10000;
    auto* dehn = app.add_subcommand("dehn", "Dehn invariant of tetrahedra or a raw [[length, angle]...] sum");
    dehn->add_option("--in", in);
    dehn->add_option("--tol", dehn_tol);
    dehn->add_option("--maxden", max_den);

    bool pairwise = false;
    auto* excise = app.add_subcommand("excise", "excise overlapping tiles into a disjoint tiling");
    excise->add_option("--in", in);
    excise->add_flag("--pairwise", pairwise, "two tiles: emit the symmetric excision-lemma cells");

    long long probes = 100000;
    double proper_tol = 0.02;
    auto* check = app.add_subcommand("check-tiling", "local multiplicity check on facets");
    check->add_option("--in", in);
    check->add_option("--probes", probes);
    check->add_option("--seed", seed_opt);
    check->add_option("--tol", proper_tol);

    auto* periods = app.add_subcommand("periods", "period matrix of an H^3 tetrahedron");
    periods->add_option("--in", in);

    std::int64_t d = 5;
    int n = 2;
    auto* zeta = app.add_subcommand("zeta", "exact zeta_k(1-n) for k = Q(sqrt d)");
    zeta->add_option("--d", d)->required();
    zeta->add_option("--n", n)->required();

    std::string minpoly;
    double s = 3;
    std::int64_t pmax = 10000;
    auto* lvalue = app.add_subcommand("lvalue", "Dedekind zeta of Q[x]/(f) by Euler product");
    lvalue->add_option("--minpoly", minpoly)->required();
    lvalue->add_option("--s", s);
    lvalue->add_option("--pmax", pmax);
    lvalue->add_option("--tol", tol);

    std::string which;
    int m = 1;
    std::optional<int> t_opt;
    auto* covolume = app.add_subcommand("covolume", "pi-power and L-value class of an arithmetic covolume");
    covolume->add_option("--case", which, "I, II-split, II-nonsplit or III")->required();
    covolume->add_option("--d", d);
    covolume->add_option("--m", m);
    covolume->add_option("--t", t_opt, "hyperbolic factors (default 1, or 0 in case III)");
    covolume->add_option("--minpoly", minpoly);
    covolume->add_option("--pmax", pmax);

    int apexes = 2;
    long long bug_samples = 100000;
    auto* bugaenko = app.add_subcommand("bugaenko", "the compact Coxeter polytope in H^5");
    bugaenko->add_option("--samples", bug_samples, "QMC samples per simplex");
    bugaenko->add_option("--seed", seed_opt);
    bugaenko->add_option("--apexes", apexes);
    bugaenko->add_option("--pmax", pmax);

    double x = 0;
    std::int64_t maxden = 10000;
    double rtol = 1e-9;
    auto* recognize = app.add_subcommand("recognize", "rational recognition by continued fractions");
    recognize->add_option("--x", x)->required();
    recognize->add_option("--maxden", maxden);
    recognize->add_option("--tol", rtol);

    if (argc < 2 || commands.count(argv[1]) == 0) {
        std::cerr << app.help();
        return kUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        std::uint64_t seed = seed_opt ? *seed_opt : default_seed();
        json out;
        if (*volume) out = cmd_volume(in, samples, seed, tol);
        else if (*dehn) out = cmd_dehn(in, dehn_tol, max_den);
        else if (*excise) out = cmd_excise(in, pairwise);
        else if (*check) out = cmd_check_tiling(in, probes, seed, proper_tol);
        else if (*periods) out = cmd_periods(in);
        else if (*zeta) out = cmd_zeta(d, n);
        else if (*lvalue) out = cmd_lvalue(minpoly, s, pmax, tol);
        else if (*covolume) out = cmd_covolume(which, d, m, t_opt.value_or(which == "III" ? 0 : 1), minpoly, pmax);
        else if (*bugaenko) out = cmd_bugaenko(bug_samples, seed, apexes, pmax);
        else if (*recognize) out = cmd_recognize(x, maxden, rtol);
        std::cout << out.dump() << "\n";
        return kOk;
    } catch (const NumericFailure& e) {
        std::cout << e.doc.dump() << "\n";
        std::cerr << "numeric contract: " << e.what() << "\n";
        return kNumeric;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric contract: " << e.what() << "\n";
        return kNumeric;
    }
}
