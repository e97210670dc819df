#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "trustcf/errors.hpp"
#include "trustcf/io.hpp"
#include "trustcf/predictor.hpp"
#include "trustcf/trust_store.hpp"

namespace trustcf::cli {

namespace {

Dataset load(const RunConfig& cfg) {
    cfg.validate(true);
    std::optional<std::filesystem::path> trust;
    if (!cfg.trust.empty()) trust = cfg.trust;
    auto data = load_dataset(cfg.ratings, trust, cfg.format, cfg.scale);
    if (cfg.expect_filmtrust) check_dataset_counts(data, kFilmTrustCounts);
    return data;
}

/// Trust assets, picking up a precomputed store when one is configured.
std::unique_ptr<TrustAssets> make_assets(const RunConfig& cfg, const Dataset& data) {
    std::shared_ptr<TrustStore> full;
    std::shared_ptr<TrustStore> explicit_only;
    if (!cfg.trust_store.empty()) {
        auto store = std::make_shared<TrustStore>(TrustStore::load(cfg.trust_store));
        (store->variant() == GraphVariant::WithCommonTrustee ? full : explicit_only) = store;
    }
    return std::make_unique<TrustAssets>(data.trust, &data.ratings.users(), full, explicit_only);
}

void make_directories(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string alpha_text(const std::optional<double>& a) { return a ? format_double(*a) : "NA"; }

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const CLI::Error*>(&e)) return kExitConfig;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const RangeError*>(&e) ||
        dynamic_cast<const IntegrityError*>(&e) || dynamic_cast<const UndefinedMeanError*>(&e)) {
        return kExitData;
    }
    return kExitFailure;
}

void cmd_precompute_trust(const RunConfig& cfg, const PrecomputeOptions& options, std::ostream& out) {
    auto data = load(cfg);
    auto graph = build_trust_graph(data.trust, options.variant);
    auto store = std::make_shared<TrustStore>(
        trust_provenance(data.trust, options.variant, &data.ratings.users()), options.variant, options.formula,
        data.trust.num_users());
    TrustInferencer inferencer(graph, store);
    inferencer.precompute_all(cfg.jobs);

    auto path = cfg.trust_store.empty() ? cfg.out / "trust_store.txt" : cfg.trust_store;
    if (path.has_parent_path()) make_directories(path.parent_path());
    store->save(path);

    out << "trust store: " << path.string() << '\n'
        << "graph: " << to_string(options.variant) << ", formula: " << to_string(options.formula) << '\n'
        << "users: " << store->num_users() << ", edges: " << graph.num_edges() << '\n'
        << "explicit: " << store->count(TrustCategory::Explicit)
        << ", common-trustee: " << store->count(TrustCategory::CommonTrustee)
        << ", propagated: " << store->count(TrustCategory::Propagated)
        << ", nonzero: " << store->nonzero_entries() << '\n';
}

void cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
    auto data = load(cfg);
    auto assets = make_assets(cfg, data);
    auto plan = make_splits(data.ratings, cfg.seed, cfg.rounds, cfg.train_fraction, cfg.split_mode);

    SweepOptions options;
    options.methods = cfg.methods;
    options.ks = cfg.ks;
    options.alpha = cfg.alpha;
    options.alphas = cfg.alpha_sweep;
    options.similarity = cfg.similarity();
    options.jobs = cfg.jobs;
    auto report = sweep(data.ratings, *assets, options, plan);

    make_directories(cfg.out);
    std::ostringstream rounds, summary, manifest;
    report.write_rounds_csv(rounds);
    report.write_summary_csv(summary);
    auto effective = cfg.to_manifest();
    effective["train_fraction"] = format_double(plan.train_fraction);
    write_manifest(manifest, effective);
    write_file_atomic(cfg.out / "rounds.csv", rounds.str());
    write_file_atomic(cfg.out / "summary.csv", summary.str());
    write_file_atomic(cfg.out / "run.manifest", manifest.str());

    out << "split: " << to_string(plan.mode) << ", rounds " << plan.rounds << ", train fraction "
        << format_double(plan.train_fraction) << ", seed " << plan.seed << '\n';
    out << std::left << std::setw(12) << "method" << std::setw(5) << "K" << std::setw(7) << "alpha"
        << std::setw(12) << "mae" << "coverage\n";
    for (const auto& s : report.summary()) {
        out << std::left << std::setw(12) << to_string(s.method) << std::setw(5) << s.k << std::setw(7)
            << alpha_text(s.alpha) << std::setw(12) << std::fixed << std::setprecision(6) << s.mae
            << std::setprecision(4) << s.coverage() << (is_reconstruction(s.method) ? "  (reconstruction)" : "")
            << '\n';
        out.unsetf(std::ios::floatfield);
    }
    out << "wrote " << (cfg.out / "summary.csv").string() << '\n';
}

void cmd_predict(const RunConfig& cfg, const PredictRequest& request, std::ostream& out) {
    auto data = load(cfg);
    auto user = data.ratings.users().find(request.user);
    if (!user) throw ConfigError("unknown user '" + request.user + "'");
    auto item = data.ratings.items().find(request.item);
    if (!item) throw ConfigError("unknown item '" + request.item + "'");

    auto assets = make_assets(cfg, data);
    SimilarityModel similarity(data.ratings, cfg.similarity());
    auto method = MethodConfig::make(cfg.methods.front(), cfg.alpha);
    auto k = request.k.value_or(cfg.ks.front());
    Predictor predictor(similarity, assets.get(), method, k);
    auto audit = predictor.explain(UserId{*user}, ItemId{*item});
    const auto& p = audit.prediction;

    out << "method " << to_string(method.id) << " K " << k;
    if (method.uses_alpha()) out << " alpha " << format_double(method.alpha);
    out << '\n';
    out << "prediction " << format_double(p.value) << '\n'
        << "status " << to_string(p.status) << '\n'
        << "weights " << to_string(p.weights) << '\n'
        << "neighbors " << p.neighbors_used << '\n';
    if (auto actual = data.ratings.rating(UserId{*user}, ItemId{*item})) {
        out << "stored_rating " << format_double(*actual) << '\n';
    }
    out << "neighbor sim trust weight deviation\n";
    double total = 0.0;
    for (const auto& row : audit.rows) {
        out << data.ratings.users().external(row.user.value) << ' ' << format_double(row.sim) << ' '
            << format_double(row.trust) << ' ' << format_double(row.weight) << ' ' << format_double(row.deviation)
            << '\n';
        total += row.weight;
    }
    out << "weight_sum " << format_double(total) << '\n';
}

void cmd_stats(const RunConfig& cfg, std::ostream& out) {
    auto expect = cfg.expect_filmtrust;
    auto relaxed = cfg;
    relaxed.expect_filmtrust = false;
    auto data = load(relaxed);
    auto c = count_dataset(data);
    out << "users " << data.ratings.num_users() << '\n'
        << "rating_users " << c.rating_users << '\n'
        << "items " << c.items << '\n'
        << "ratings " << c.ratings << '\n'
        << "trust_statements " << c.trust_statements << '\n';
    if (auto g = data.ratings.global_mean()) out << "global_mean " << format_double(*g) << '\n';
    if (expect) {
        check_dataset_counts(data, kFilmTrustCounts);
        out << "filmtrust_counts ok\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trust-aware collaborative filtering: trust inference, prediction and MAE evaluation", "trustcf"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::map<std::string, std::string> overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--manifest", manifest_path, "Run manifest (key = value lines)");
        auto set = [&overrides](const std::string& key) {
            return [&overrides, key](const std::string& v) { overrides[key] = v; };
        };
        sub->add_option_function<std::string>("--ratings", set("ratings"), "Ratings file (user item rating)");
        sub->add_option_function<std::string>("--trust", set("trust"), "Trust file (trustor trustee 1)");
        sub->add_option_function<std::string>("--format", set("format"), "auto | whitespace | csv");
        sub->add_option_function<std::string>("--rating-lo", set("rating_lo"), "Lowest admissible rating");
        sub->add_option_function<std::string>("--rating-hi", set("rating_hi"), "Highest admissible rating");
        sub->add_option_function<std::string>("--methods", set("methods"), "Comma-separated method names");
        sub->add_option_function<std::string>("--k-list", set("k_list"), "Comma-separated neighbourhood sizes");
        sub->add_option_function<std::string>("--alpha", set("alpha"), "LW coefficient in [0, 1]");
        sub->add_option_function<std::string>("--alpha-sweep", set("alpha_sweep"), "Comma-separated LW coefficients");
        sub->add_option_function<std::string>("--seed", set("seed"), "Split seed");
        sub->add_option_function<std::string>("--rounds", set("rounds"), "Number of rounds (folds for kfold)");
        sub->add_option_function<std::string>("--train-fraction", set("train_fraction"), "Training share per round");
        sub->add_option_function<std::string>("--split-mode", set("split_mode"), "resample | kfold");
        sub->add_option_function<std::string>("--min-corated", set("min_corated"), "Minimum co-rated items");
        sub->add_option_function<std::string>("--trust-store", set("trust_store"), "Precomputed trust store");
        sub->add_option_function<std::string>("--out", set("out"), "Output directory");
        sub->add_option_function<std::string>("--jobs", set("jobs"), "Worker threads");
        sub->add_flag_function("--positive-only", [&overrides](std::int64_t) { overrides["positive_only"] = "true"; },
                               "Only positively correlated neighbours vote");
        sub->add_flag_function("--expect-filmtrust",
                               [&overrides](std::int64_t) { overrides["expect_filmtrust"] = "true"; },
                               "Fail unless the dataset has the published FilmTrust shape");
    };

    auto* precompute = app.add_subcommand("precompute-trust", "Precompute single-source trust tables");
    add_common(precompute);
    std::string graph_name = "common-trustee";
    std::string formula_name = "attenuated";
    precompute->add_option("--graph", graph_name, "common-trustee | explicit-only");
    precompute->add_option("--formula", formula_name, "attenuated | plain");

    auto* evaluate = app.add_subcommand("evaluate", "Run the K sweep and write CSV reports");
    add_common(evaluate);

    auto* predict = app.add_subcommand("predict", "Predict one rating and print the voting audit");
    add_common(predict);
    PredictRequest request;
    std::string method_name;
    std::size_t k = 0;
    predict->add_option("--user", request.user, "External user id")->required();
    predict->add_option("--item", request.item, "External item id")->required();
    predict->add_option("--method", method_name, "Method name (default: first configured)");
    predict->add_option("--k", k, "Neighbourhood size (default: first of --k-list)");

    auto* stats = app.add_subcommand("stats", "Print dataset counts");
    add_common(stats);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        RunConfig cfg;
        if (!manifest_path.empty()) {
            std::filesystem::path mp(manifest_path);
            cfg = RunConfig::from_manifest(load_manifest(mp), mp.parent_path());
        }
        auto merged = cfg.to_manifest();
        for (const auto& [key, value] : overrides) merged[key] = value;
        cfg = RunConfig::from_manifest(merged);

        if (precompute->parsed()) {
            cmd_precompute_trust(cfg, {parse_graph_variant(graph_name), parse_trust_formula(formula_name)}, out);
        } else if (evaluate->parsed()) {
            cmd_evaluate(cfg, out);
        } else if (predict->parsed()) {
            if (!method_name.empty()) cfg.methods = {parse_method(method_name)};
            if (k != 0) request.k = k;
            cmd_predict(cfg, request, out);
        } else if (stats->parsed()) {
            cmd_stats(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace trustcf::cli
