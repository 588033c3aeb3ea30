#include "toprec/checks.hpp"
#include "toprec/cp1.hpp"
#include "toprec/dictionary.hpp"
#include "toprec/error.hpp"
#include "toprec/graphs.hpp"
#include "toprec/io.hpp"
#include "toprec/psi.hpp"
#include "toprec/recursion.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace toprec;

namespace {

std::string cache_path() {
    const char* dir = std::getenv("TOPREC_CACHE_DIR");
    if (!dir || !*dir) return {};
    return (std::filesystem::path(dir) / "psi_cache.txt").string();
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

int max_degree(const DxiExpansion& e) {
    int m = 0;
    for (const auto& [key, v] : e.terms)
        for (const auto& l : key) m = std::max(m, l.d);
    return m;
}

int cmd_omega(const std::string& file, int g, int n, int order, const std::string& format) {
    auto curve = parse_curve_file(file);
    auto w = tr_omega_dxi(curve, g, n);
    int TB = curve.jumps_order();
    if (TB < kExact) {
        int cap = TB - 2 * max_degree(w);
        if (cap < 0) throw InsufficientTruncation("jump truncation " + std::to_string(TB) + " too low for omega_{" + std::to_string(g) + "," + std::to_string(n) + "}");
        if (order < 0) order = cap;
        if (order > cap) {
            std::cerr << "note: --order lowered to " << cap << ", the truncation determines nothing further\n";
            order = cap;
        }
    } else if (order < 0) {
        order = 4;
    }
    auto f = evaluate(w, curve, order);
    if (format == "text") {
        std::cout << "omega_{" << g << "," << n << "} to order " << order << "\n";
        for (const auto& [bv, ms] : f.components)
            for (const auto& [e, v] : ms.entries) {
                std::cout << "  branches";
                for (int b : bv) std::cout << ' ' << b + 1;
                std::cout << "  z^(";
                for (size_t k = 0; k < e.size(); ++k) std::cout << (k ? "," : "") << e[k];
                std::cout << ")  " << v.str() << "\n";
            }
        return 0;
    }
    Json doc = form_to_json(f);
    doc["dxi"] = expansion_to_json(w);
    print(doc);
    return 0;
}

int cmd_graphsum(const std::string& file, int g, int n) {
    auto curve = parse_curve_file(file);
    Json graphs = Json::array();
    for (const auto& gr : enumerate_graphs(g, n, curve.N)) {
        auto w = curve_graph_weight(gr, curve);
        if (w.is_zero()) continue;
        Json rec;
        rec["key"] = gr.key();
        rec["aut"] = graph_aut_order(gr);
        Json legs = Json::array();
        for (const auto& l : graph_leaf_key(gr)) legs.push_back({l.branch + 1, l.d});
        rec["legs"] = legs;
        rec["weight"] = field_to_json(w);
        graphs.push_back(rec);
    }
    Json doc;
    doc["g"] = g;
    doc["n"] = n;
    doc["graphs"] = graphs;
    doc["total"] = expansion_to_json(tr_graph_sum(curve, g, n));
    print(doc);
    return 0;
}

int cmd_to_curve(const std::string& input, const std::string& out) {
    auto gd = givental_from_json(Json::parse(read_text_file(input)));
    auto curve = curve_from_R(gd);
    if (out.empty())
        std::cout << emit_curve_text(curve);
    else
        emit_curve_file(curve, out);
    return 0;
}

int cmd_from_curve(const std::string& file) {
    auto curve = parse_curve_file(file);
    auto R = R_from_curve(curve);
    Json doc = rseries_to_json(R);
    // h1 = -1/(2 sqrt(Delta))
    Json delta = Json::array();
    for (int i = 0; i < curve.N; ++i) {
        auto h1 = curve.time(i, 1);
        delta.push_back(field_to_json(field_inv(h1 * h1 * FieldElement(4))));
    }
    doc["delta"] = delta;
    print(doc);
    return 0;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad descendant index '" + tok + "'");
        }
    }
    if (out.empty()) throw ParseError("empty descendant list");
    return out;
}

int cmd_stationary(int g, const std::string& alist, bool ns_convention) {
    auto a = parse_ints(alist);
    auto r = ns_stationary(g, a, !ns_convention);
    Json doc;
    doc["g"] = g;
    doc["a"] = a;
    doc["value"] = rational_str(r.value);
    doc["degree"] = r.degree;
    doc["convention"] = ns_convention ? "ns" : "gw";
    doc["u_basis"] = expansion_to_json(r.u_basis, "U");
    print(doc);
    return 0;
}

int cmd_cp1_check() {
    std::vector<CriterionResult> rs;
    for (int id : suite_criteria("cp1")) rs.push_back(run_criterion(id));
    auto doc = report_json(rs);
    print(doc);
    return doc["passed"].get<bool>() ? 0 : 1;
}

int cmd_check(const std::string& suite) {
    std::vector<CriterionResult> rs;
    for (int id : suite_criteria(suite)) {
        rs.push_back(run_criterion(id));
        const auto& r = rs.back();
        std::cerr << (r.passed() ? "PASS" : "FAIL") << " " << r.id << " " << r.name << " (" << r.seconds << "s) " << r.detail << "\n";
    }
    auto doc = report_json(rs);
    print(doc);
    return doc["passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological recursion on local spectral curves"};
    app.require_subcommand(1);

    std::string curve_file, format = "json", input, output, suite, alist;
    int g = 0, n = 0, order = -1;
    bool ns_convention = false;

    auto* omega = app.add_subcommand("omega", "omega_{g,n} of a curve spec");
    omega->add_option("--curve", curve_file)->required();
    omega->add_option("-g", g)->required();
    omega->add_option("-n", n)->required();
    omega->add_option("--order", order, "highest regular exponent; only lowers the file's truncation");
    omega->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* gs = app.add_subcommand("graphsum", "per-graph weights of the graph sum");
    gs->add_option("--curve", curve_file)->required();
    gs->add_option("-g", g)->required();
    gs->add_option("-n", n)->required();

    auto* dict = app.add_subcommand("dictionary", "R-series and curve specs");
    dict->require_subcommand(1);
    auto* to_curve = dict->add_subcommand("to-curve", "R-series JSON to curve spec");
    to_curve->add_option("--input", input)->required();
    to_curve->add_option("--output", output);
    auto* from_curve = dict->add_subcommand("from-curve", "curve spec to R-series JSON");
    from_curve->add_option("--curve", curve_file)->required();

    auto* cp1 = app.add_subcommand("cp1", "stationary invariants of CP1");
    cp1->require_subcommand(1);
    auto* stat = cp1->add_subcommand("stationary", "<tau_{a1}(omega) ... >_g");
    stat->add_option("--g", g)->required();
    stat->add_option("--a", alist)->required();
    stat->add_flag("--ns-convention", ns_convention, "keep the (-1)^n sign of the curve residues");
    auto* cp1check = cp1->add_subcommand("check", "f-matrix, residue and oracle checks");

    auto* check = app.add_subcommand("check", "bundled check suites");
    check->add_option("suite", suite, "airy, kdv, graphsum, dictionary, cp1, properties or all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (check->parsed() && !is_suite(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }

    std::string cache = cache_path();
    if (!cache.empty() && std::filesystem::exists(cache)) {
        try {
            psi_table().load(cache);
        } catch (const Error& e) {
            std::cerr << "ignoring cache: " << e.what() << "\n";
        }
    }

    int rc = 0;
    try {
        if (omega->parsed())
            rc = cmd_omega(curve_file, g, n, order, format);
        else if (gs->parsed())
            rc = cmd_graphsum(curve_file, g, n);
        else if (to_curve->parsed())
            rc = cmd_to_curve(input, output);
        else if (from_curve->parsed())
            rc = cmd_from_curve(curve_file);
        else if (stat->parsed())
            rc = cmd_stationary(g, alist, ns_convention);
        else if (cp1check->parsed())
            rc = cmd_cp1_check();
        else if (check->parsed())
            rc = cmd_check(suite);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    if (!cache.empty()) {
        try {
            std::filesystem::create_directories(cache_path().substr(0, cache.rfind('/')));
            psi_table().save(cache);
        } catch (const std::exception& e) {
            std::cerr << "could not write cache: " << e.what() << "\n";
        }
    }
    return rc;
}
