#include "bcross/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "bcross/io.hpp"
#include "bcross/layout.hpp"
#include "bcross/oracle.hpp"
#include "bcross/simplify.hpp"
#include "bcross/svg.hpp"

namespace bcross {

namespace {

struct PipelineResult {
    MatchingInstance matching;
    SimplifyResult simplified;
    LayoutResult construction;      // over the simplified instance
    CombinatorialDrawing extended;  // over the full matching
    BundlingPlan final_plan;
    std::string algorithm;
};

PipelineResult run_pipeline(const CircularInstance& inst, bool outerplanar) {
    PipelineResult out;
    out.matching = to_matching(inst);
    out.simplified = simplify(out.matching);
    if (outerplanar) {
        const std::vector<int> estar = greedy_outerplanar_subset(out.simplified.simplified);
        out.construction = outerplanar_layout(out.simplified.simplified, estar);
        out.algorithm = out.construction.used_fallback ? "fallback" : "outerplanar";
    } else {
        out.construction = two_slope_layout(out.simplified.simplified);
        out.algorithm = "two_slope";
    }
    out.extended = extend_drawing(out.construction.drawing, out.simplified.log);
    out.final_plan = reinsert(out.construction.plan, out.simplified.log);
    const ValidationReport check = validate_bundling(out.extended, out.final_plan);
    if (!check.ok) throw error("internal: reinserted plan failed validation");
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

int cmd_layout(const std::string& file, const std::string& outerplanar,
               const std::string& svg_path, const std::string& json_path,
               const std::string& mode) {
    const CircularInstance inst = parse_instance(read_file(file));
    const PipelineResult pr = run_pipeline(inst, outerplanar == "greedy");
    const BoundsReport report = make_bounds_report(
        inst, static_cast<long long>(pr.simplified.simplified.chords().size()),
        pr.construction.bundle_count);
    emit(json_path, report_to_json(report, pr.algorithm, &pr.final_plan, &pr.extended,
                                   &pr.final_plan));
    if (!svg_path.empty()) {
        const SvgMode m = mode == "disk" ? SvgMode::Disk : SvgMode::Rectangle;
        write_file(svg_path, render_svg(pr.construction, m));
    }
    return 0;
}

int cmd_bounds(const std::string& file) {
    const CircularInstance inst = parse_instance(read_file(file));
    const PipelineResult pr = run_pipeline(inst, false);
    const BoundsReport report = make_bounds_report(
        inst, static_cast<long long>(pr.simplified.simplified.chords().size()),
        pr.construction.bundle_count);
    std::cout << report_to_json(report, pr.algorithm, &pr.final_plan, nullptr, nullptr);
    return 0;
}

int cmd_exact(const std::string& file, int max_edges, long long max_k) {
    const CircularInstance inst = parse_instance(read_file(file));
    const MatchingInstance m = to_matching(inst);

    if (max_k < 0) {
        const OracleResult r = exact_bc(m, max_edges);
        std::cout << "{\n  \"embeddings_enumerated\": " << r.stats.embeddings_enumerated
                  << ",\n  \"optimum\": " << r.optimum
                  << ",\n  \"partitions_tested\": " << r.stats.partitions_tested
                  << ",\n  \"witness\": " << drawing_to_json(r.witness_drawing, r.witness_plan)
                  << "}\n";
        return 0;
    }

    const SimplifyResult s = simplify(m);
    SearchStats stats;
    for (long long k = 0; k <= max_k; ++k) {
        const DecideResult r = decide_bc(s.simplified, k, max_edges);
        stats.embeddings_enumerated += r.stats.embeddings_enumerated;
        stats.partitions_tested += r.stats.partitions_tested;
        if (!r.feasible) continue;
        const CombinatorialDrawing witness = extend_drawing(r.witness->first, s.log);
        const BundlingPlan plan = reinsert(r.witness->second, s.log);
        std::cout << "{\n  \"embeddings_enumerated\": " << stats.embeddings_enumerated
                  << ",\n  \"optimum\": " << k
                  << ",\n  \"partitions_tested\": " << stats.partitions_tested
                  << ",\n  \"witness\": " << drawing_to_json(witness, plan) << "}\n";
        return 0;
    }
    std::cout << "{\n  \"embeddings_enumerated\": " << stats.embeddings_enumerated
              << ",\n  \"optimum\": null,\n  \"partitions_tested\": " << stats.partitions_tested
              << ",\n  \"note\": \"no solution within k budget " << max_k << "\"\n}\n";
    return 1;
}

int cmd_validate(const std::string& file) {
    const auto [drawing, plan] = drawing_from_json(read_file(file));
    try {
        const ValidationReport report = validate_bundling(drawing, plan);
        if (report.ok) {
            std::cout << "ok\n";
            return 0;
        }
        for (const Violation& v : report.violations)
            std::cout << "violation: " << v.code << " (" << v.detail << ")\n";
        return 1;
    } catch (const error& e) {
        std::cout << "invalid drawing: " << e.what() << "\n";
        return 1;
    }
}

int cmd_metro(const std::string& file, bool oracle) {
    const MetroInstance mi = parse_metro(read_file(file));
    const MetroSimplifyResult s = simplify_lines(mi);
    const long long lb = bcm_lower_bound(mi);
    const LineOrders lo = order_lines_greedy(mi);
    const MetroValidation check = validate_line_orders(mi, lo);
    if (!check.ok) throw error("internal: greedy line orders failed validation");
    std::optional<long long> oracle_opt;
    if (oracle) oracle_opt = metro_oracle(mi);
    std::cout << line_orders_to_json(mi, lo, lb,
                                     static_cast<long long>(s.surviving_lines.size()),
                                     oracle_opt);
    return 0;
}

int cmd_render(const std::string& file, const std::string& svg_path, const std::string& mode) {
    const auto [drawing, plan] = drawing_from_json(read_file(file));
    // The interchange format carries no geometry; reconstruct it when the
    // drawing is the canonical two-slope one.
    const LayoutResult canonical = two_slope_layout(drawing.instance);
    if (canonical.drawing.along_edge != drawing.along_edge) throw error("missing geometry");
    LayoutResult lr;
    lr.drawing = drawing;
    lr.drawing.geometry = canonical.drawing.geometry;
    lr.plan = plan;
    lr.bundle_count = static_cast<long long>(plan.bundles.size());
    const SvgMode m = mode == "disk" ? SvgMode::Disk : SvgMode::Rectangle;
    write_file(svg_path, render_svg(lr, m));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"bundled crossings in circular graph layouts"};
    app.require_subcommand(1);

    std::string file, svg_path, json_path, outerplanar = "none", mode = "rectangle";
    int max_edges = kDefaultOracleCap;
    long long max_k = -1;
    bool oracle = false;

    auto* layout = app.add_subcommand("layout", "compute a bundled layout and report");
    layout->add_option("file", file)->required();
    layout->add_option("--outerplanar", outerplanar)
        ->check(CLI::IsMember({"greedy", "none"}));
    layout->add_option("--svg", svg_path);
    layout->add_option("--json", json_path);
    layout->add_option("--mode", mode)->check(CLI::IsMember({"rectangle", "disk"}));

    auto* bounds = app.add_subcommand("bounds", "lower/upper bounds and certificates");
    bounds->add_option("file", file)->required();

    auto* exact = app.add_subcommand("exact", "exact optimum for tiny instances");
    exact->add_option("file", file)->required();
    exact->add_option("--max-edges", max_edges);
    exact->add_option("--max-k", max_k);

    auto* validate = app.add_subcommand("validate", "validate a drawing document");
    validate->add_option("file", file)->required();

    auto* metro = app.add_subcommand("metro", "block crossings of metro lines on a tree");
    metro->add_option("file", file)->required();
    metro->add_flag("--oracle", oracle);

    auto* render = app.add_subcommand("render", "render a drawing document to SVG");
    render->add_option("file", file)->required();
    render->add_option("--svg", svg_path)->required();
    render->add_option("--mode", mode)->check(CLI::IsMember({"rectangle", "disk"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(layout))
            return cmd_layout(file, outerplanar, svg_path, json_path, mode);
        if (app.got_subcommand(bounds)) return cmd_bounds(file);
        if (app.got_subcommand(exact)) return cmd_exact(file, max_edges, max_k);
        if (app.got_subcommand(validate)) return cmd_validate(file);
        if (app.got_subcommand(metro)) return cmd_metro(file, oracle);
        if (app.got_subcommand(render)) return cmd_render(file, svg_path, mode);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace bcross
