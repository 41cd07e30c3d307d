#include "bcross/io.hpp"

#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

namespace bcross {

namespace {

using nlohmann::json;

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

int parse_int(const std::string& token, int line_no) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw error("line " + std::to_string(line_no) + ": expected integer, got '" + token + "'");
    }
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw error("line " + std::to_string(line_no) + ": " + what);
}

json rat_to_json(const std::optional<Rat>& r) {
    if (!r) return nullptr;
    if (r->denominator() == 1) return r->numerator();
    return std::to_string(r->numerator()) + "/" + std::to_string(r->denominator());
}

json opt_to_json(const std::optional<long long>& v) {
    if (!v) return nullptr;
    return *v;
}

json bundles_to_json(const BundlingPlan& p) {
    json arr = json::array();
    for (const BundledCrossing& b : p.bundles) {
        json jb;
        jb["e1"] = b.bundle1;
        jb["e2"] = b.bundle2;
        arr.push_back(jb);
    }
    return arr;
}

json drawing_to_json_obj(const CombinatorialDrawing& d, const BundlingPlan& p) {
    json doc;
    doc["n"] = d.instance.base.n;
    doc["order"] = d.instance.base.order;
    json edges = json::array();
    for (const Edge& e : d.instance.chords()) edges.push_back(json::array({e.first, e.second}));
    doc["edges"] = edges;
    json along = json::array();
    for (const auto& seq : d.along_edge) {
        json one = json::array();
        for (const CrossingId& c : seq) one.push_back(json::array({c.first, c.second}));
        along.push_back(one);
    }
    doc["along_edge"] = along;
    doc["bundles"] = bundles_to_json(p);
    return doc;
}

}  // namespace

CircularInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_n = false;
    bool have_order = false;
    CircularInstance inst;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string& kind = tokens[0];
        if (kind == "n") {
            if (have_n) fail(line_no, "duplicate n");
            if (tokens.size() != 2) fail(line_no, "n takes one value");
            inst.n = parse_int(tokens[1], line_no);
            if (inst.n < 0) fail(line_no, "negative n");
            inst.order.resize(inst.n);
            std::iota(inst.order.begin(), inst.order.end(), 0);
            have_n = true;
        } else if (kind == "order") {
            if (!have_n) fail(line_no, "order before n");
            if (have_order) fail(line_no, "duplicate order");
            if (static_cast<int>(tokens.size()) - 1 != inst.n)
                fail(line_no, "order needs exactly n vertex ids");
            for (int i = 0; i < inst.n; ++i) inst.order[i] = parse_int(tokens[i + 1], line_no);
            std::vector<bool> seen(inst.n, false);
            for (int v : inst.order) {
                if (v < 0 || v >= inst.n || seen[v]) fail(line_no, "not a permutation");
                seen[v] = true;
            }
            have_order = true;
        } else if (kind == "edge") {
            if (!have_n) fail(line_no, "edge before n");
            if (tokens.size() != 3) fail(line_no, "edge takes two vertex ids");
            const int u = parse_int(tokens[1], line_no);
            const int v = parse_int(tokens[2], line_no);
            if (u < 0 || u >= inst.n || v < 0 || v >= inst.n)
                fail(line_no, "vertex out of range");
            if (u == v) fail(line_no, "self-loop");
            for (const Edge& e : inst.edges)
                if (Edge{std::min(u, v), std::max(u, v)} ==
                    Edge{std::min(e.first, e.second), std::max(e.first, e.second)})
                    fail(line_no, "duplicate edge");
            inst.edges.push_back({u, v});
        } else {
            fail(line_no, "unknown directive '" + kind + "'");
        }
    }
    if (!have_n) fail(1, "missing n");
    inst.check();
    return inst;
}

std::string format_instance(const CircularInstance& inst) {
    std::ostringstream out;
    out << "n " << inst.n << "\n";
    bool identity = true;
    for (int i = 0; i < inst.n; ++i) identity &= inst.order[i] == i;
    if (!identity) {
        out << "order";
        for (int v : inst.order) out << " " << v;
        out << "\n";
    }
    for (const Edge& e : inst.edges) out << "edge " << e.first << " " << e.second << "\n";
    return out.str();
}

MetroInstance parse_metro(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_tree = false, have_n = false;
    int n = 0;
    std::vector<std::pair<int, int>> edges, lines;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string& kind = tokens[0];
        if (kind == "tree") {
            have_tree = true;
        } else if (kind == "n") {
            if (!have_tree) fail(line_no, "n before tree");
            if (have_n) fail(line_no, "duplicate n");
            if (tokens.size() != 2) fail(line_no, "n takes one value");
            n = parse_int(tokens[1], line_no);
            have_n = true;
        } else if (kind == "treeedge") {
            if (!have_n) fail(line_no, "treeedge before n");
            if (tokens.size() != 3) fail(line_no, "treeedge takes two vertex ids");
            edges.push_back({parse_int(tokens[1], line_no), parse_int(tokens[2], line_no)});
        } else if (kind == "line") {
            if (!have_n) fail(line_no, "line before n");
            if (tokens.size() != 3) fail(line_no, "line takes two leaf ids");
            lines.push_back({parse_int(tokens[1], line_no), parse_int(tokens[2], line_no)});
        } else {
            fail(line_no, "unknown directive '" + kind + "'");
        }
    }
    if (!have_tree) fail(1, "missing tree header");
    if (!have_n) fail(1, "missing n");
    MetroInstance mi = make_metro(n, edges, lines);
    mi.check();
    return mi;
}

std::string drawing_to_json(const CombinatorialDrawing& d, const BundlingPlan& p) {
    return drawing_to_json_obj(d, p).dump(2) + "\n";
}

std::pair<CombinatorialDrawing, BundlingPlan> drawing_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw error(std::string("invalid drawing document: ") + e.what());
    }
    try {
        CircularInstance inst;
        inst.n = doc.at("n").get<int>();
        inst.order = doc.at("order").get<std::vector<int>>();
        for (const auto& je : doc.at("edges"))
            inst.edges.push_back({je.at(0).get<int>(), je.at(1).get<int>()});
        inst.check();
        if (!inst.is_matching()) throw error("drawing instance is not a matching");

        // Relabel into position space; edge indices are unaffected.
        const std::vector<int> pos = inst.position_of();
        CombinatorialDrawing d;
        std::vector<Edge> chords;
        for (const Edge& e : inst.edges) {
            Edge c{pos[e.first], pos[e.second]};
            if (c.first > c.second) std::swap(c.first, c.second);
            chords.push_back(c);
        }
        d.instance.base = CircularInstance::identity(inst.n, chords);
        d.instance.origin_map.resize(inst.n);
        std::iota(d.instance.origin_map.begin(), d.instance.origin_map.end(), 0);

        for (const auto& jseq : doc.at("along_edge")) {
            std::vector<CrossingId> seq;
            for (const auto& jc : jseq) {
                const CrossingId c = crossing_id(jc.at(0).get<int>(), jc.at(1).get<int>());
                seq.push_back(c);
                d.crossings.insert(c);
            }
            d.along_edge.push_back(std::move(seq));
        }

        std::vector<BundledCrossing> bundles;
        for (const auto& jb : doc.at("bundles")) {
            BundledCrossing b;
            b.bundle1 = jb.at("e1").get<std::vector<int>>();
            b.bundle2 = jb.at("e2").get<std::vector<int>>();
            std::sort(b.bundle1.begin(), b.bundle1.end());
            std::sort(b.bundle2.begin(), b.bundle2.end());
            for (int e1 : b.bundle1)
                for (int e2 : b.bundle2) b.member_crossings.insert(crossing_id(e1, e2));
            bundles.push_back(std::move(b));
        }
        return {d, BundlingPlan::from_bundles(std::move(bundles))};
    } catch (const json::exception& e) {
        throw error(std::string("invalid drawing document: ") + e.what());
    }
}

std::string report_to_json(const BoundsReport& report, const std::string& algorithm,
                           const BundlingPlan* bundles, const CombinatorialDrawing* witness,
                           const BundlingPlan* witness_plan) {
    json doc;
    doc["algorithm"] = algorithm;
    doc["bundles"] = bundles ? bundles_to_json(*bundles) : json(nullptr);
    doc["genus_formula_kn"] = opt_to_json(report.genus_formula_kn);
    doc["lb_circular"] = report.lb_circular;
    doc["lb_fixed"] = report.lb_fixed;
    doc["lb_general"] = report.lb_general;
    doc["m"] = report.m;
    doc["m_simplified"] = report.m_simplified;
    doc["n"] = report.n;
    doc["ratio_fixed"] = rat_to_json(report.ratio_fixed);
    doc["ratio_free"] = rat_to_json(report.ratio_free);
    doc["ratio_general"] = rat_to_json(report.ratio_general);
    doc["ub"] = opt_to_json(report.ub);
    doc["witness"] = witness && witness_plan ? drawing_to_json_obj(*witness, *witness_plan)
                                             : json(nullptr);
    return doc.dump(2) + "\n";
}

std::string line_orders_to_json(const MetroInstance& mi, const LineOrders& lo,
                                long long lower_bound, long long surviving,
                                std::optional<long long> oracle_optimum) {
    json doc;
    doc["block_crossings"] = lo.total_block_crossings();
    json edges = json::array();
    for (std::size_t ei = 0; ei < mi.tree_edges.size(); ++ei) {
        json je;
        je["u"] = mi.tree_edges[ei].first;
        je["v"] = mi.tree_edges[ei].second;
        je["orders"] = lo.edges[ei].orders;
        json moves = json::array();
        for (const auto& mv : lo.edges[ei].moves) moves.push_back(json::array({mv[0], mv[1], mv[2]}));
        je["moves"] = moves;
        edges.push_back(je);
    }
    doc["edges"] = edges;
    doc["lower_bound"] = lower_bound;
    doc["meets_2l_bound"] = lo.total_block_crossings() <= 2 * surviving;
    doc["oracle_optimum"] = opt_to_json(oracle_optimum);
    doc["surviving_lines"] = surviving;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write file: " + path);
    out << content;
}

}  // namespace bcross
