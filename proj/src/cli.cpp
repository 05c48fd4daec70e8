#include "canal/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "canal/bench.hpp"
#include "canal/constraints.hpp"
#include "canal/export.hpp"
#include "canal/trainer.hpp"

namespace canal::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

void write_optional(const std::optional<std::string>& path, const std::string& text) {
    if (path) write_file(*path, text);
}

int run_route(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    const ChannelSpec spec = parse_netlist(read_file(inv.input_path));
    StrategyBank bank(inv.buckets);
    if (inv.bank_path) bank = StrategyBank::parse(read_file(*inv.bank_path));

    RouterConfig cfg;
    cfg.max_rows = inv.max_rows.value_or(channel_density(spec).density + 2);
    cfg.seed = inv.seed;
    if (cfg.max_rows < 1) throw std::invalid_argument("--max-rows must be >= 1");

    const RouteResult result = route(inv.algorithm, spec, cfg, bank);
    std::vector<Violation> violations;
    if (result.ok()) violations = validate(spec, result.routed);
    const Metrics m = metrics(result.routed);

    write_optional(inv.svg_out, render_svg(spec, result.routed));
    write_optional(inv.dot_out, netlist_to_dot(spec));
    write_optional(inv.report_out, report(spec, result.routed, m, violations, to_string(inv.algorithm), result.failure));

    if (!result.ok()) {
        err << "error: " << to_string(result.failure->kind) << ": " << result.failure->message << "\n";
        return 2;
    }
    out << to_string(inv.algorithm) << ": tracks=" << m.tracks_used << " length=" << m.total_length
        << " vias=" << m.via_count << " violations=" << violations.size() << "\n";
    for (const Violation& v : violations) err << "violation: " << describe(v) << "\n";
    return violations.empty() ? 0 : 3;
}

int run_analyze(const CliInvocation& inv, std::ostream& out) {
    const ChannelSpec spec = parse_netlist(read_file(inv.input_path));
    const auto graphs = analyze_constraints(spec);
    const auto features = extract_features(spec);
    const auto cycle = find_vcg_cycle(graphs.vcg);

    nlohmann::ordered_json doc;
    doc["columns"] = spec.columns;
    doc["nets"] = graphs.hcg.node_count();
    doc["density"] = graphs.density;
    doc["density_column"] = graphs.density_column;
    doc["hcg"] = {{"nodes", graphs.hcg.node_count()}, {"edges", graphs.hcg.edge_count()}};
    doc["vcg"] = {{"nodes", graphs.vcg.node_count()}, {"edges", graphs.vcg.edge_count()}};
    doc["vcg_cycle"] = cycle ? nlohmann::ordered_json(*cycle) : nlohmann::ordered_json(nullptr);
    doc["features"] = {{"left_count", features.left_count},
                       {"right_count", features.right_count},
                       {"balance", features.balance},
                       {"net_count", features.net_count},
                       {"density", features.density}};
    const std::string text = doc.dump(2) + "\n";
    out << text;
    write_optional(inv.report_out, text);
    write_optional(inv.dot_out, netlist_to_dot(spec));
    write_optional(inv.vcg_dot_out, vcg_to_dot(graphs.vcg));
    return 0;
}

int run_train(const CliInvocation& inv, std::ostream& out) {
    if (!inv.bank_path) throw std::invalid_argument("train requires --bank <output path>");
    std::vector<InstanceFamily> families{random_family()};
    std::vector<RowSelectionPolicy> policies;
    for (PolicyKind k : all_policy_kinds()) policies.push_back({k, {}});
    const TrainReport trained = train_bank(families, policies, inv.trials, inv.seed, inv.buckets);
    write_file(*inv.bank_path, trained.bank.serialize());
    out << "trained " << inv.buckets * kDensityBands << " cells (" << trained.empty_cells.size()
        << " empty) -> " << *inv.bank_path << "\n";
    return 0;
}

int run_bench_cmd(const CliInvocation& inv, std::ostream& out) {
    BenchOptions opts;
    opts.instances = inv.instances;
    opts.seed = inv.seed;
    opts.train_trials = inv.trials;
    if (inv.bank_path) opts.bank = StrategyBank::parse(read_file(*inv.bank_path));
    const auto rows = run_bench(opts);
    const std::string table = format_bench_table(rows);
    out << table;
    write_optional(inv.report_out, table);
    return 0;
}

}  // namespace

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    try {
        switch (inv.subcommand) {
            case Subcommand::route: return run_route(inv, out, err);
            case Subcommand::analyze: return run_analyze(inv, out);
            case Subcommand::train: return run_train(inv, out);
            case Subcommand::bench: return run_bench_cmd(inv, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 1;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-layer channel router"};
    app.require_subcommand(1);

    CliInvocation inv;
    std::string algorithm = "adaptive";
    std::string bank;
    int max_rows = 0;
    std::string svg, dot, vcg_dot, report_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", inv.seed, "Seed for randomized steps");
    };

    auto* route_cmd = app.add_subcommand("route", "Route a .netlist channel");
    route_cmd->add_option("input", inv.input_path, "Input .netlist file")->required();
    route_cmd->add_option("--algorithm", algorithm, "left-edge | dogleg | adaptive")
        ->check(CLI::IsMember({"left-edge", "dogleg", "adaptive"}));
    route_cmd->add_option("--bank", bank, "Strategy bank for the adaptive router");
    route_cmd->add_option("--max-rows", max_rows, "Track rows available (default: density + 2)")
        ->check(CLI::PositiveNumber);
    route_cmd->add_option("--svg", svg, "Write an SVG rendering");
    route_cmd->add_option("--dot", dot, "Write the netlist graph in dot format");
    route_cmd->add_option("--report", report_path, "Write the JSON report");
    add_common(route_cmd);

    auto* analyze_cmd = app.add_subcommand("analyze", "Constraint graphs, density and features");
    analyze_cmd->add_option("input", inv.input_path, "Input .netlist file")->required();
    analyze_cmd->add_option("--report", report_path, "Also write the analysis to a file");
    analyze_cmd->add_option("--dot", dot, "Write the netlist graph in dot format");
    analyze_cmd->add_option("--vcg-dot", vcg_dot, "Write the vertical constraint graph in dot format");
    add_common(analyze_cmd);

    auto* train_cmd = app.add_subcommand("train", "Train a strategy bank");
    train_cmd->add_option("--bank", bank, "Output bank path")->required();
    train_cmd->add_option("--trials", inv.trials, "Instances per feature cell")->check(CLI::PositiveNumber);
    train_cmd->add_option("--buckets", inv.buckets, "Balance buckets")->check(CLI::PositiveNumber);
    add_common(train_cmd);

    auto* bench_cmd = app.add_subcommand("bench", "Compare routers on random instances");
    bench_cmd->add_option("--instances", inv.instances, "Instance count")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--bank", bank, "Bank for the adaptive router (trained on the fly if absent)");
    bench_cmd->add_option("--trials", inv.trials, "Training instances per cell when training on the fly")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--report", report_path, "Also write the table to a file");
    add_common(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (route_cmd->parsed()) inv.subcommand = Subcommand::route;
    if (analyze_cmd->parsed()) inv.subcommand = Subcommand::analyze;
    if (train_cmd->parsed()) inv.subcommand = Subcommand::train;
    if (bench_cmd->parsed()) inv.subcommand = Subcommand::bench;

    inv.algorithm = *algorithm_from_string(algorithm);
    if (!bank.empty()) inv.bank_path = bank;
    if (max_rows != 0) inv.max_rows = max_rows;
    if (!svg.empty()) inv.svg_out = svg;
    if (!dot.empty()) inv.dot_out = dot;
    if (!vcg_dot.empty()) inv.vcg_dot_out = vcg_dot;
    if (!report_path.empty()) inv.report_out = report_path;
    return run(inv, out, err);
}

}  // namespace canal::cli
