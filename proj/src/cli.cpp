#include "avgroups/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avgroups/classify.hpp"
#include "avgroups/curves.hpp"
#include "avgroups/errors.hpp"
#include "avgroups/tatemod.hpp"
#include "avgroups/textio.hpp"
#include "avgroups/weil.hpp"

namespace avgroups::cli {

namespace {

using json = nlohmann::ordered_json;
using exactpoly::IntPolynomial;

std::string rat_string(const Rat& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

json group_to_json(const abgroups::GroupShape& G) {
    json arr = json::array();
    for (const auto& d : G.invariant_factors()) arr.push_back(static_cast<long long>(d));
    return arr;
}

json polygon_to_json(const polygons::ConvexPolygon& p) {
    json verts = json::array();
    for (const auto& [x, y] : p.vertices) verts.push_back(json::array({x, rat_string(y)}));
    return json{{"vertices", verts}};
}

struct Request {
    std::string format = "json";
    std::string q_text;
    std::string poly_text;
    std::string group_text;
    std::string exponents_text;
    long long ell = 0;
    int depth = -1;
    int genus = 1;
    bool crosscheck = false;

    Int q() const {
        try {
            return Int(q_text);
        } catch (const std::exception&) {
            throw std::invalid_argument("--q is not an integer");
        }
    }
};

weil::WeilPolynomial parse_weil(const Request& req) {
    return weil::validate_weil(textio::parse_polynomial(req.poly_text), req.q());
}

Int enumeration_cap() {
    if (const char* env = std::getenv("AVG_MAX_ENUM")) {
        try {
            return Int(std::string(env));
        } catch (const std::exception&) {
            throw std::invalid_argument("AVG_MAX_ENUM is not an integer");
        }
    }
    return Int(100000000);
}

void emit_validate(const Request& req, std::ostream& out) {
    bool valid = true;
    int g = 0;
    std::string reason;
    try {
        weil::WeilPolynomial W = parse_weil(req);
        g = W.g;
    } catch (const weil::weil_error& e) {
        valid = false;
        reason = e.what();
    }
    if (req.format == "csv") {
        out << "valid,g,reason\n"
            << (valid ? "true" : "false") << "," << g << "," << csv_escape(reason) << "\n";
        return;
    }
    out << json{{"valid", valid}, {"g", g}, {"reason", reason}}.dump() << "\n";
}

std::vector<std::pair<IntPolynomial, int>> shape_parts(const weil::IsogenyShape& s,
                                                       const weil::WeilPolynomial& W) {
    using weil::ShapeKind;
    switch (s.kind) {
        case ShapeKind::Separable: return {{s.P, 1}};
        case ShapeKind::PowerPair: {
            std::vector<std::pair<IntPolynomial, int>> parts{{s.P, s.r}};
            if (s.s > 0) parts.emplace_back(s.Q, s.s);
            return parts;
        }
        case ShapeKind::MixedSupersingular: return {{s.P, 1}, {s.L, s.r}};
        case ShapeKind::ThreefoldRepeated: return {{s.P, 2}};
        case ShapeKind::ThreefoldMixed2x2: return {{s.P, 2}, {s.Q, 1}};
        case ShapeKind::ThreefoldQuartic: return {{s.P, 1}, {s.L, 2}};
        case ShapeKind::Unsupported: break;
    }
    std::vector<std::pair<IntPolynomial, int>> parts;
    for (const auto& [g, e] : exactpoly::squarefree_decomposition(W.f)) parts.emplace_back(g, e);
    return parts;
}

void emit_shape(const Request& req, std::ostream& out) {
    weil::WeilPolynomial W = parse_weil(req);
    weil::IsogenyShape s = weil::detect_shape(W);
    auto parts = shape_parts(s, W);
    if (req.format == "csv") {
        out << "case,poly,mult\n";
        for (const auto& [p, mult] : parts)
            out << weil::shape_name(s.kind) << "," << csv_escape(textio::polynomial_to_string(p))
                << "," << mult << "\n";
        return;
    }
    json jparts = json::array();
    for (const auto& [p, mult] : parts)
        jparts.push_back(json{{"poly", textio::polynomial_to_string(p)}, {"mult", mult}});
    out << json{{"case", weil::shape_name(s.kind)}, {"parts", jparts}}.dump() << "\n";
}

void emit_classify(const Request& req, std::ostream& out) {
    weil::WeilPolynomial W = parse_weil(req);
    abgroups::GroupShape G(textio::parse_invariant_factors(req.group_text));
    classify::Verdict v = classify::classify_group(W, G);
    if (req.format == "csv") {
        out << "verdict,ell,case,ok,detail\n";
        for (const auto& rec : v.per_prime)
            out << classify::outcome_name(v.outcome) << "," << rec.ell << "," << rec.case_tag
                << "," << classify::outcome_name(rec.ok) << "," << csv_escape(rec.detail) << "\n";
        if (v.per_prime.empty())
            out << classify::outcome_name(v.outcome) << ",,,,\n";
        return;
    }
    json primes = json::array();
    for (const auto& rec : v.per_prime)
        primes.push_back(json{{"ell", static_cast<long long>(rec.ell)},
                              {"case", rec.case_tag},
                              {"ok", classify::outcome_name(rec.ok)},
                              {"detail", rec.detail}});
    out << json{{"verdict", classify::outcome_name(v.outcome)}, {"primes", primes}}.dump() << "\n";
}

void emit_enumerate(const Request& req, std::ostream& out) {
    weil::WeilPolynomial W = parse_weil(req);
    classify::Enumeration e = classify::enumerate_admissible(W, enumeration_cap());
    if (req.format == "csv") {
        out << "kind,group\n";
        for (const auto& G : e.yes)
            out << "yes," << csv_escape(textio::invariant_factors_to_string(G.invariant_factors()))
                << "\n";
        for (const auto& G : e.unknown)
            out << "unknown,"
                << csv_escape(textio::invariant_factors_to_string(G.invariant_factors())) << "\n";
        return;
    }
    json yes = json::array(), unknown = json::array();
    for (const auto& G : e.yes) yes.push_back(group_to_json(G));
    for (const auto& G : e.unknown) unknown.push_back(group_to_json(G));
    out << json{{"yes", yes}, {"unknown", unknown}}.dump() << "\n";
}

void emit_polygon(const Request& req, bool newton, std::ostream& out) {
    polygons::ConvexPolygon p;
    if (newton) {
        p = polygons::newton_polygon(textio::parse_polynomial(req.poly_text), Int(req.ell));
    } else {
        p = polygons::hodge_polygon(textio::parse_exponents(req.exponents_text));
    }
    if (req.format == "csv") {
        out << "x,y\n";
        for (const auto& [x, y] : p.vertices) out << x << "," << csv_escape(rat_string(y)) << "\n";
        return;
    }
    out << polygon_to_json(p).dump() << "\n";
}

void emit_oracle_lattice(const Request& req, std::ostream& out) {
    weil::WeilPolynomial W = parse_weil(req);
    Int ell(req.ell);
    int depth = req.depth >= 0 ? req.depth : tatemod::default_lattice_depth(W.f, ell);
    auto shapes = tatemod::enumerate_stable_lattices(W.f, ell, depth);
    if (req.format == "csv") {
        out << "shape,depth\n";
        for (const auto& [e, lat] : shapes) {
            std::string s;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(e[i]);
            }
            out << csv_escape(s) << "," << depth << "\n";
        }
        return;
    }
    json arr = json::array();
    for (const auto& [e, lat] : shapes) arr.push_back(e);
    out << json{{"shapes", arr}, {"depth", depth}}.dump() << "\n";
}

struct CurveRecord {
    std::string poly;
    std::string group;
    long long count;
};

struct Mismatch {
    std::string poly;
    std::string group;
    std::string reason;
};

void emit_oracle_curves(const Request& req, std::ostream& out) {
    std::vector<CurveRecord> records;
    std::vector<Mismatch> mismatches;
    Int q_big = req.q();
    if (q_big < 2 || q_big > 9) throw std::invalid_argument("oracle curves: q out of range");
    long long q = static_cast<long long>(q_big);

    if (req.genus == 1) {
        auto classes = curves::ec_scan(static_cast<int>(q));
        std::map<std::string, std::vector<const curves::EllipticClass*>> by_poly;
        for (const auto& cls : classes) {
            records.push_back({textio::polynomial_to_string(cls.W.f),
                               textio::invariant_factors_to_string(cls.G.invariant_factors()),
                               cls.count});
            by_poly[textio::polynomial_to_string(cls.W.f)].push_back(&cls);
        }
        if (req.crosscheck) {
            for (const auto& [poly, group] : by_poly) {
                const weil::WeilPolynomial& W = group.front()->W;
                classify::Enumeration adm = classify::enumerate_admissible(W, enumeration_cap());
                std::vector<abgroups::GroupShape> observed;
                for (const auto* cls : group) observed.push_back(cls->G);
                std::sort(observed.begin(), observed.end());
                for (const auto* cls : group) {
                    auto v = classify::classify_group(W, cls->G);
                    if (v.outcome != classify::Outcome::Yes)
                        mismatches.push_back(
                            {poly, textio::invariant_factors_to_string(cls->G.invariant_factors()),
                             "observed group not classified yes"});
                }
                for (const auto& G : adm.yes)
                    if (!std::binary_search(observed.begin(), observed.end(), G))
                        mismatches.push_back(
                            {poly, textio::invariant_factors_to_string(G.invariant_factors()),
                             "admissible group not observed in the scan"});
            }
        }
    } else if (req.genus == 2) {
        if (q != 3 && q != 5 && q != 7)
            throw std::invalid_argument("oracle curves: genus 2 supports q in {3, 5, 7}");
        curves::FiniteField F(static_cast<int>(q), 1);
        std::map<std::pair<std::string, std::string>, long long> agg;
        std::map<std::string, weil::WeilPolynomial> weils;
        std::map<std::pair<std::string, std::string>, abgroups::GroupShape> groups;
        for (long long model = 0; model < q * q * q * q * q; ++model) {
            long long m = model;
            curves::FieldPoly f(6, 0);
            f[5] = 1;
            for (int i = 0; i < 5; ++i) {
                f[i] = static_cast<int>(m % q);
                m /= q;
            }
            curves::Genus2Curve curve{F, f};
            if (curves::fp_deg(curves::fp_gcd(F, f, curves::fp_derivative(F, f))) != 0)
                continue;   // squarefree filter
            auto [W, G] = curves::jacobian_group(curve);
            auto key = std::make_pair(textio::polynomial_to_string(W.f),
                                      textio::invariant_factors_to_string(G.invariant_factors()));
            agg[key] += 1;
            weils.emplace(key.first, W);
            groups.emplace(key, G);
        }
        for (const auto& [key, count] : agg) {
            records.push_back({key.first, key.second, count});
            if (req.crosscheck) {
                auto v = classify::classify_group(weils.at(key.first), groups.at(key));
                if (v.outcome != classify::Outcome::Yes)
                    mismatches.push_back({key.first, key.second, "observed group not classified yes"});
            }
        }
    } else {
        throw std::invalid_argument("oracle curves: genus must be 1 or 2");
    }

    if (req.format == "csv") {
        out << "kind,poly,group,count,reason\n";
        for (const auto& r : records)
            out << "result," << csv_escape(r.poly) << "," << csv_escape(r.group) << "," << r.count
                << ",\n";
        for (const auto& m : mismatches)
            out << "mismatch," << csv_escape(m.poly) << "," << csv_escape(m.group) << ",0,"
                << csv_escape(m.reason) << "\n";
        return;
    }
    json results = json::array();
    for (const auto& r : records)
        results.push_back(json{{"poly", r.poly}, {"group", r.group}, {"count", r.count}});
    if (!req.crosscheck) {
        out << results.dump() << "\n";
        return;
    }
    json jmis = json::array();
    for (const auto& m : mismatches)
        jmis.push_back(json{{"poly", m.poly}, {"group", m.group}, {"reason", m.reason}});
    out << json{{"results", results}, {"mismatches", jmis}}.dump() << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"groups of rational points on abelian varieties in an isogeny class"};
    app.require_subcommand(1);
    Request req;
    app.add_option("--format", req.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto add_q = [&](CLI::App* cmd) {
        cmd->add_option("--q", req.q_text, "prime power q")->required();
    };
    auto add_poly = [&](CLI::App* cmd) {
        cmd->add_option("--poly", req.poly_text, "ascending comma-separated coefficients")
            ->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "check the Weil condition");
    add_q(validate);
    add_poly(validate);

    CLI::App* shape = app.add_subcommand("shape", "detect the classification shape");
    add_q(shape);
    add_poly(shape);

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify one group");
    add_q(classify_cmd);
    add_poly(classify_cmd);
    classify_cmd->add_option("--group", req.group_text,
                             "invariant factors, ascending (empty for the trivial group)")
        ->required();

    CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "enumerate admissible groups");
    add_q(enumerate_cmd);
    add_poly(enumerate_cmd);

    CLI::App* polygon = app.add_subcommand("polygon", "polygon constructions");
    polygon->require_subcommand(1);
    CLI::App* npoly = polygon->add_subcommand("newton", "Newton polygon of a polynomial at ell");
    npoly->add_option("--ell", req.ell, "prime ell")->required();
    npoly->add_option("--poly", req.poly_text, "ascending comma-separated coefficients")
        ->required();
    CLI::App* hpoly = polygon->add_subcommand("hodge", "Hodge polygon of an exponent vector");
    hpoly->add_option("--exponents", req.exponents_text, "ascending comma-separated exponents")
        ->required();

    CLI::App* oracle = app.add_subcommand("oracle", "independent brute-force oracles");
    oracle->require_subcommand(1);
    CLI::App* lattice = oracle->add_subcommand("lattice", "stable-lattice enumeration");
    add_q(lattice);
    add_poly(lattice);
    lattice->add_option("--ell", req.ell, "prime ell")->required();
    lattice->add_option("--depth", req.depth, "index exponent bound (default v_ell(f(1)) + 2)");
    CLI::App* curves_cmd = oracle->add_subcommand("curves", "exhaustive curve scans");
    add_q(curves_cmd);
    curves_cmd->add_option("--genus", req.genus, "1 or 2")->required();
    curves_cmd->add_flag("--crosscheck", req.crosscheck, "compare against the classifier");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*validate) emit_validate(req, out);
        else if (*shape) emit_shape(req, out);
        else if (*classify_cmd) emit_classify(req, out);
        else if (*enumerate_cmd) emit_enumerate(req, out);
        else if (*npoly) emit_polygon(req, true, out);
        else if (*hpoly) emit_polygon(req, false, out);
        else if (*lattice) emit_oracle_lattice(req, out);
        else if (*curves_cmd) emit_oracle_curves(req, out);
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace avgroups::cli
