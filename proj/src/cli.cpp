#include "swipe/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "swipe/datagen.hpp"

namespace swipe::cli {

using nlohmann::json;

namespace {

json value_json(const Value& v) { return v.is_null() ? json(nullptr) : json(v.text()); }

json names_json(const AttributeSet& attrs, const Schema& schema) {
    json out = json::array();
    for (AttrIndex a : attrs) out.push_back(schema.name(a));
    return out;
}

json fds_json(const std::vector<FD>& fds, const Schema& schema) {
    json out = json::array();
    for (const auto& fd : fds) out.push_back(format_fd(fd, schema));
    return out;
}

double to_ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

CsvOptions csv_options(const std::string& null_token, const std::string& tid_column) {
    CsvOptions options;
    options.null_token = null_token;
    if (!tid_column.empty()) options.tid_column = tid_column;
    return options;
}

struct CommonInputs {
    std::string data;
    std::string fds;
    std::string null_token;
    std::string tid_column;
};

void add_inputs(CLI::App* cmd, CommonInputs& in) {
    cmd->add_option("--data", in.data, "Dirty relation (CSV with header)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--fds", in.fds, "FD file, one 'a,b -> c' per line")->required()->check(CLI::ExistingFile);
    cmd->add_option("--null-token", in.null_token, "Cell text read as NULL (default: empty)");
    cmd->add_option("--tid-column", in.tid_column, "Column holding tuple ids (default: row numbers)");
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const auto v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad list item '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

}  // namespace

json report_json(const RepairOutcome& outcome, const Schema& schema) {
    json j;
    j["seed"] = outcome.seed;
    j["duration_ms"] = to_ms(outcome.duration);
    j["cells_changed"] = outcome.change_log.size();
    j["revisions"] = outcome.total_revisions();
    j["cover"] = fds_json(outcome.cover.fds().items(), schema);
    j["non_repairable"] = names_json(outcome.non_repairable, schema);
    j["partition"] = json::array();
    for (const auto& cls : outcome.partition.classes) j["partition"].push_back(names_json(cls, schema));

    j["classes"] = json::array();
    for (std::size_t i = 0; i < outcome.classes.size(); ++i) {
        const auto& c = outcome.classes[i];
        const auto& priority = c.repair.priority;
        const PilotSplit split = pilot_fds(c.attrs, c.fds, priority);
        json cls;
        cls["index"] = i + 1;
        cls["attributes"] = names_json(c.attrs, schema);
        cls["pilot_fds"] = fds_json(split.pilot, schema);
        cls["non_pilot_fds"] = fds_json(split.non_pilot, schema);
        cls["fd_order"] = fds_json(c.repair.initial_order, schema);
        json order = json::array();
        for (AttrIndex a : priority.order) order.push_back(schema.name(a));
        json vio = json::object();
        for (const auto& [a, n] : priority.vio_sizes) vio[schema.name(a)] = n;
        cls["priority"] = {{"source", priority.source == PriorityModel::Source::kManual ? "manual" : "estimated"},
                           {"order", order},
                           {"vio_sizes", vio}};
        json fixes = json::object();
        json calls = json::object();
        for (const auto& [fd, n] : c.repair.stats.fixes_per_fd) fixes[format_fd(fd, schema)] = n;
        for (const auto& [fd, n] : c.repair.stats.fix_calls) calls[format_fd(fd, schema)] = n;
        cls["fixes"] = fixes;
        cls["fix_calls"] = calls;
        cls["revisions"] = c.repair.stats.revisions;
        cls["skipped_revisions"] = c.repair.stats.skipped_revisions;
        cls["fallback_revisions"] = c.repair.stats.fallback_revisions;
        cls["cells_changed"] = c.repair.stats.cells_changed;
        cls["duration_ms"] = to_ms(c.duration);
        j["classes"].push_back(std::move(cls));
    }

    j["changes"] = json::array();
    for (const auto& ch : outcome.change_log) {
        j["changes"].push_back({{"tid", ch.tid},
                                {"attribute", schema.name(ch.attr)},
                                {"before", value_json(ch.before)},
                                {"after", value_json(ch.after)}});
    }
    return j;
}

json quality_json(const QualityReport& q) {
    return {{"repaired_cells", q.repaired_cells}, {"correctly_repaired_cells", q.correctly_repaired_cells},
            {"erroneous_cells", q.erroneous_cells}, {"precision", q.precision},
            {"recall", q.recall},                   {"f_score", q.f_score}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Functional-dependency repair with single-path forward repairing"};
    app.require_subcommand(1);

    // repair
    CommonInputs repair_in;
    std::string repair_out;
    std::string report_path;
    std::string repair_fn = "mv";
    std::string fn_map;
    std::string priority_file;
    std::optional<std::uint64_t> seed_opt;
    bool no_skip_unary = false;
    bool null_distinct = false;
    auto* repair = app.add_subcommand("repair", "Repair a relation");
    add_inputs(repair, repair_in);
    repair->add_option("--out", repair_out, "Repaired CSV")->required();
    repair->add_option("--report", report_path, "JSON report");
    repair->add_option("--repair-fn", repair_fn, "Default repair function")
        ->check(CLI::IsMember({"mv", "wv", "max"}));
    repair->add_option("--fn-map", fn_map, "Per-attribute 'attribute=fn' overrides")->check(CLI::ExistingFile);
    repair->add_option("--priority-file", priority_file, "Manual priorities 'class: a > b'")
        ->check(CLI::ExistingFile);
    repair->add_option("--seed", seed_opt, "Tie-breaking seed (default: random, echoed in the report)");
    repair->add_flag("--no-skip-unary", no_skip_unary, "Revise unary FDs even with preservative functions");
    repair->add_flag("--null-distinct", null_distinct, "NULL never equals NULL when grouping");

    // partition
    CommonInputs part_in;
    auto* partition = app.add_subcommand("partition", "Print the induced attribute partition");
    add_inputs(partition, part_in);

    // estimate
    CommonInputs est_in;
    std::optional<std::uint64_t> est_seed;
    auto* estimate = app.add_subcommand("estimate", "Print reliability estimates and FD order per class");
    add_inputs(estimate, est_in);
    estimate->add_option("--seed", est_seed, "Tie-breaking seed");

    // evaluate
    std::string dirty_path;
    std::string repaired_path;
    std::string gold_path;
    std::string eval_null;
    std::string eval_tid;
    std::string eval_report;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Precision, recall and F against a gold standard");
    evaluate_cmd->add_option("--dirty", dirty_path, "Dirty CSV")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--repaired", repaired_path, "Repaired CSV")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--gold", gold_path, "Gold CSV")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--null-token", eval_null, "Cell text read as NULL");
    evaluate_cmd->add_option("--tid-column", eval_tid, "Column holding tuple ids in all three files");
    evaluate_cmd->add_option("--report", eval_report, "JSON report");

    // generate
    GenConfig gen;
    std::string gen_data;
    std::string gen_fds;
    auto* generate_cmd = app.add_subcommand("generate", "Synthetic relation and FD set");
    generate_cmd->add_option("--rows", gen.n_rows, "Tuples")->required();
    generate_cmd->add_option("--attrs", gen.n_attrs, "Attributes (and FDs)")->required()->check(CLI::Range(2, 100000));
    generate_cmd->add_option("--seed", gen.seed, "Seed");
    generate_cmd->add_option("--domain", gen.domain_size, "Symbols per attribute")->check(CLI::Range(2, 1000000));
    generate_cmd->add_option("--out-data", gen_data, "CSV output")->required();
    generate_cmd->add_option("--out-fds", gen_fds, "FD output")->required();

    // bench
    std::string bench_rows = "100,1000,10000";
    std::string bench_attrs = "5";
    std::size_t bench_reps = 10;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Mean repair time over generated data");
    bench->add_option("--rows", bench_rows, "Comma-separated tuple counts");
    bench->add_option("--attrs", bench_attrs, "Comma-separated attribute counts");
    bench->add_option("--reps", bench_reps, "Repetitions per cell")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "Seed");
    bench->add_option("--out", bench_out, "JSON output");

    std::vector<const char*> argv{"swipe"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*repair) {
            const CsvOptions csv = csv_options(repair_in.null_token, repair_in.tid_column);
            const Relation rel = load_csv(repair_in.data, csv);
            const FDSet fds = load_fds(repair_in.fds, rel.schema());
            SwipeOptions options;
            options.seed = seed_opt ? *seed_opt : std::random_device{}();
            options.functions = FunctionRegistry(parse_repair_function(repair_fn));
            if (!fn_map.empty()) {
                auto in = open_input(fn_map);
                load_function_map(in, rel.schema(), options.functions);
            }
            if (!priority_file.empty()) {
                auto in = open_input(priority_file);
                options.priority_overrides = parse_priority_file(in, rel.schema());
            }
            options.repair.skip_unary_revisions = !no_skip_unary;
            options.repair.nulls = null_distinct ? NullSemantics::kDistinct : NullSemantics::kEqual;

            const RepairOutcome outcome = swipe(rel, fds, options);
            save_csv(outcome.repaired, repair_out, csv);
            if (!report_path.empty()) write_json(report_json(outcome, rel.schema()), report_path);
            out << "repaired " << outcome.change_log.size() << " cells over " << outcome.partition.size()
                << " classes in " << std::fixed << std::setprecision(3) << to_ms(outcome.duration) << " ms (seed "
                << outcome.seed << ")\n";
        } else if (*partition) {
            const Relation rel = load_csv(part_in.data, csv_options(part_in.null_token, part_in.tid_column));
            const Schema& schema = rel.schema();
            const FDSet fds = load_fds(part_in.fds, schema);
            const MinimalCover cover = minimal_cover(fds);
            const Partition p = build_partition(cover, schema.arity());
            out << format_partition(p, schema);
            for (std::size_t i = 0; i < p.size(); ++i) {
                PriorityModel declared;
                declared.order = p[i].items();
                const PilotSplit split = pilot_fds(p[i], class_fds(p, i, cover.fds()), declared);
                for (const auto& fd : split.pilot) out << "  C" << i + 1 << " pilot      " << format_fd(fd, schema) << '\n';
                for (const auto& fd : split.non_pilot) {
                    out << "  C" << i + 1 << " non-pilot  " << format_fd(fd, schema) << '\n';
                }
            }
            for (AttrIndex a = 0; a < schema.arity(); ++a) {
                if (p.class_of(a) == p.size()) out << "non-repairable: " << schema.name(a) << '\n';
            }
        } else if (*estimate) {
            const Relation rel = load_csv(est_in.data, csv_options(est_in.null_token, est_in.tid_column));
            const Schema& schema = rel.schema();
            const MinimalCover cover = minimal_cover(load_fds(est_in.fds, schema));
            const Partition p = build_partition(cover, schema.arity());
            Rng rng(est_seed.value_or(0));
            for (std::size_t i = 0; i < p.size(); ++i) {
                const FDSet fds_i = class_fds(p, i, cover.fds());
                const PriorityModel model = estimate_priority(rel, p[i], fds_i, rng);
                out << "C" << i + 1 << ":";
                for (AttrIndex a : model.order) out << ' ' << schema.name(a) << "(|Vio|=" << model.vio_sizes.at(a) << ')';
                out << "\n  order:";
                const PilotSplit split = pilot_fds(p[i], fds_i, model);
                for (const auto& fd : split.pilot) out << " [" << format_fd(fd, schema) << "]";
                for (const auto& fd : split.non_pilot) out << " [" << format_fd(fd, schema) << "]";
                out << '\n';
            }
        } else if (*evaluate_cmd) {
            const CsvOptions csv = csv_options(eval_null, eval_tid);
            const QualityReport q =
                evaluate(load_csv(dirty_path, csv), load_csv(repaired_path, csv), load_csv(gold_path, csv));
            out << "repaired cells:           " << q.repaired_cells << '\n'
                << "correctly repaired cells: " << q.correctly_repaired_cells << '\n'
                << "erroneous cells:          " << q.erroneous_cells << '\n'
                << std::fixed << std::setprecision(4) << "precision: " << q.precision << "  recall: " << q.recall
                << "  F: " << q.f_score << '\n';
            if (!eval_report.empty()) write_json(quality_json(q), eval_report);
        } else if (*generate_cmd) {
            const Dataset data = generate(gen);
            save_csv(data.relation, gen_data);
            std::ofstream fds_out(gen_fds);
            if (!fds_out) throw std::runtime_error("cannot write '" + gen_fds + "'");
            write_fds(fds_out, data.fds, data.relation.schema());
            out << "generated " << data.relation.size() << " rows, " << data.fds.size() << " FDs\n";
        } else if (*bench) {
            const auto cells = run_bench(parse_list(bench_rows), parse_list(bench_attrs), bench_reps, bench_seed);
            json j = json::array();
            out << "rows,attrs,reps,mean_ms\n";
            for (const auto& c : cells) {
                out << c.rows << ',' << c.attrs << ',' << c.samples_ms.size() << ',' << std::fixed
                    << std::setprecision(3) << c.mean_ms << '\n';
                j.push_back({{"rows", c.rows}, {"attrs", c.attrs}, {"mean_ms", c.mean_ms}, {"samples_ms", c.samples_ms}});
            }
            if (!bench_out.empty()) write_json(j, bench_out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace swipe::cli
