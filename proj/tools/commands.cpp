#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fxnet/continents.hpp"
#include "fxnet/errors.hpp"
#include "fxnet/evolution.hpp"
#include "fxnet/format.hpp"
#include "fxnet/returns.hpp"
#include "fxnet/serialization.hpp"
#include "fxnet/tail_fit.hpp"

namespace fxnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifest = "manifest.json";

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

ContinentMap load_continents(const fs::path& path) {
    if (path.empty()) return default_continents();
    auto in = open_input(path);
    return parse_continents(in);
}

// Output files are assembled in memory first; nothing touches the disk until
// every result has been computed.
using FileSet = std::map<fs::path, std::string>;

void publish(const FileSet& files, const fs::path& out_dir) {
    const fs::path staging = out_dir.string() + ".partial";
    try {
        fs::remove_all(staging);
        fs::create_directories(staging);
        for (const auto& [relative, content] : files) {
            const fs::path target = staging / relative;
            fs::create_directories(target.parent_path());
            std::ofstream file(target, std::ios::binary);
            file << content;
            if (!file) throw Error("failed to write " + target.string());
        }
        fs::create_directories(out_dir);
        // replace the outputs of any earlier run, leave unrelated files alone
        for (const auto& entry : fs::directory_iterator(staging)) {
            const fs::path destination = out_dir / entry.path().filename();
            fs::remove_all(destination);
            fs::rename(entry.path(), destination);
        }
        fs::remove_all(staging);
    } catch (...) {
        std::error_code ignored;
        fs::remove_all(staging, ignored);
        throw;
    }
}

std::string ranking_rows(const Ranking& ranking) {
    std::string text;
    for (const auto& row : ranking.rows) {
        text += ranking.period + ',' + std::to_string(row.rank) + ',' + row.currency + ',' +
                format_number(row.average_degree) + '\n';
    }
    return text;
}

std::string rankings_csv(const NetworkSeries& series, std::optional<int> year) {
    std::string text = "period,rank,currency,avg_degree\n";
    text += ranking_rows(average_degree_ranking(series));
    for (int y : years(series)) {
        if (year && *year != y) continue;
        text += ranking_rows(average_degree_ranking(series, y));
    }
    return text;
}

std::vector<std::string> all_currencies(const NetworkSeries& series) {
    std::vector<std::string> codes;
    for (const auto& entry : series.entries) {
        for (const auto& [code, degree] : entry.degrees) codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

std::string degree_rows(const NetworkSeries& series, const std::string& currency, int smoothing) {
    const DegreeSeries raw = degree_series(series, currency);
    std::string text;
    const auto s = static_cast<std::size_t>(smoothing);
    const std::optional<DegreeSeries> smoothed =
        raw.values.size() >= s ? std::optional(smooth(raw, smoothing)) : std::nullopt;
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        text += raw.dates[i] + ',' + currency + ',' + format_number(raw.values[i]) + ',';
        if (smoothed && i + 1 >= s) text += format_number(smoothed->values[i + 1 - s]);
        text += '\n';
    }
    return text;
}

std::string degree_series_csv(const NetworkSeries& series, int smoothing) {
    std::string text = "date,currency,raw,smoothed\n";
    for (const auto& code : all_currencies(series)) text += degree_rows(series, code, smoothing);
    return text;
}

std::string maxgap_csv(const NetworkSeries& series, int smoothing) {
    std::string text = "date,max,gap\n";
    if (series.entries.size() < static_cast<std::size_t>(smoothing)) return text;
    const auto [top, gap] = max_degree_gap_series(series, smoothing);
    for (std::size_t i = 0; i < top.values.size(); ++i) {
        text += top.dates[i] + ',' + format_number(top.values[i]) + ',' + format_number(gap.values[i]) + '\n';
    }
    return text;
}

std::string intrafrac_csv(const IntracontinentalDistribution& dist) {
    std::string text = "date,fraction\n";
    for (std::size_t i = 0; i < dist.samples.size(); ++i) {
        text += dist.dates[i] + ',' + format_number(dist.samples[i]) + '\n';
    }
    return text;
}

std::string kde_csv(const IntracontinentalDistribution& dist) {
    std::string text = "x,density\n";
    for (std::size_t i = 0; i < dist.density.x.size(); ++i) {
        text += format_number(dist.density.x[i]) + ',' + format_number(dist.density.density[i]) + '\n';
    }
    return text;
}

json rdc_params_json(const RdcParams& p) {
    json doc = {{"k", p.k}, {"repetitions", p.repetitions}, {"ridge", p.ridge}, {"seed", p.seed}};
    doc["scale"] = p.fixed_scale ? json(*p.fixed_scale) : json("median");
    return doc;
}

struct StoredRun {
    json manifest;
    NetworkSeries series;
    int smoothing = 30;
};

StoredRun load_run(const fs::path& run_dir) {
    const fs::path manifest_path = run_dir / kManifest;
    if (!fs::exists(manifest_path)) {
        throw InputError("no " + std::string(kManifest) + " in " + run_dir.string() +
                         "; run `fxnet evolve --out " + run_dir.string() + "` first");
    }
    StoredRun run;
    try {
        auto in = open_input(manifest_path);
        run.manifest = json::parse(in);
        run.series.window_length = run.manifest.at("config").at("window").get<int>();
        run.series.measure = parse_measure(run.manifest.at("config").at("measure").get<std::string>());
        run.smoothing = run.manifest.at("config").at("smoothing").get<int>();
    } catch (const json::exception& ex) {
        throw InputError("malformed manifest " + manifest_path.string() + ": " + ex.what());
    }
    std::vector<fs::path> tree_files;
    if (fs::exists(run_dir / "trees")) {
        for (const auto& entry : fs::directory_iterator(run_dir / "trees")) {
            if (entry.path().extension() == ".json") tree_files.push_back(entry.path());
        }
    }
    std::sort(tree_files.begin(), tree_files.end());
    for (const auto& path : tree_files) {
        auto in = open_input(path);
        try {
            run.series.entries.push_back(tree_from_json(json::parse(in)));
        } catch (const json::exception& ex) {
            throw InputError("malformed tree file " + path.string() + ": " + ex.what());
        }
    }
    if (run.series.entries.empty()) throw InputError("no trees stored in " + run_dir.string());
    return run;
}

}  // namespace

void RunConfig::validate() const {
    if (input.empty()) throw ConfigurationError("--input is required");
    if (out.empty()) throw ConfigurationError("--out is required");
    if (window < 2) throw ConfigurationError("--window must be >= 2");
    if (smoothing < 1) throw ConfigurationError("--smoothing must be >= 1");
    rdc.validate();
}

void cmd_rdc(const RdcCommand& command, std::ostream& out) {
    auto in = open_input(command.input);
    const DelimitedTable table = read_delimited(in);
    const std::size_t cx = table.column(command.x_column);
    const std::size_t cy = table.column(command.y_column);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (auto [col, dst] : {std::pair{cx, &x}, std::pair{cy, &y}}) {
            const std::string& cell = table.rows[r][col];
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) {
                throw IngestionError("unparseable number '" + cell + "'", table.lines[r], col + 1);
            }
            dst->push_back(value);
        }
    }
    const RdcResult result = rdc(x, y, command.params);
    out << "rdc " << format_number(result.value) << '\n';
    for (std::size_t i = 0; i < result.repetitions.size(); ++i) {
        out << "repetition " << (i + 1) << ' ' << format_number(result.repetitions[i]) << '\n';
    }
    if (result.degenerate) out << "degenerate constant-sample\n";
}

void cmd_evolve(const RunConfig& config, std::ostream& log) {
    config.validate();
    const ContinentMap continents = load_continents(config.continents);

    RateTable rates = [&] {
        auto in = open_input(config.input);
        return parse_rates(in, ParseOptions{0, config.source_base});
    }();
    if (config.base) rates = redenominate(rates, *config.base);
    const ReturnsMatrix returns = log_returns(rates);
    for (const auto& code : returns.currencies) {
        if (!continents.contains(code)) throw ConfigurationError("currency " + code + " has no continent in the mapping");
    }

    log << "rates: " << rates.rows() << " rows x " << rates.currencies.size() << " currencies (base "
        << rates.base << ")\n";
    const NetworkSeries series = rolling_networks(returns, config.window, config.measure, config.rdc, config.jobs);
    log << "networks: " << series.entries.size() << '\n';

    FileSet files;
    files["rankings.csv"] = rankings_csv(series, config.year);
    files["degree_series.csv"] = degree_series_csv(series, config.smoothing);
    files["maxgap.csv"] = maxgap_csv(series, config.smoothing);
    if (!series.entries.empty()) {
        const IntracontinentalDistribution dist = intracontinental_distribution(series, continents);
        files["intrafrac.csv"] = intrafrac_csv(dist);
        files["intrafrac_kde.csv"] = kde_csv(dist);
    }
    std::ostringstream edges;
    edges << "date,node_i,node_j,weight\n";
    for (const auto& entry : series.entries) {
        files[fs::path("trees") / (entry.end_date + ".json")] = tree_to_json(entry.end_date, entry.tree).dump(2) + '\n';
        write_edge_list(edges, entry.end_date, entry.tree);
    }
    files["edges.csv"] = edges.str();

    json manifest;
    manifest["tool"] = "fxnet";
    manifest["version"] = FXNET_VERSION;
    manifest["config"] = {
        {"input", config.input.string()},
        {"source_base", config.source_base},
        {"base", rates.base},
        {"measure", std::string(to_string(config.measure))},
        {"window", config.window},
        {"smoothing", config.smoothing},
        {"rdc", rdc_params_json(config.rdc)},
        {"continents", config.continents.empty() ? std::string("builtin") : config.continents.string()},
        {"year", config.year ? json(*config.year) : json(nullptr)},
    };
    manifest["seed"] = config.rdc.seed;
    manifest["currencies"] = returns.currencies;
    manifest["counts"] = {{"rate_rows", rates.rows()}, {"return_rows", returns.rows()},
                          {"networks", series.entries.size()}};
    files[kManifest] = manifest.dump(2) + '\n';

    publish(files, config.out);
    log << "wrote " << files.size() << " files to " << config.out.string() << '\n';
}

void cmd_rank(const fs::path& run_dir, std::optional<int> year, std::ostream& out) {
    const StoredRun run = load_run(run_dir);
    out << "period,rank,currency,avg_degree\n";
    out << ranking_rows(average_degree_ranking(run.series, year));
}

void cmd_plotdata(const fs::path& run_dir, const PlotSelection& selection, std::ostream& out) {
    const StoredRun run = load_run(run_dir);
    const int smoothing = selection.smoothing.value_or(run.smoothing);
    const auto& kind = selection.kind;

    if (kind == "degree") {
        if (selection.currencies.empty()) throw ConfigurationError("--currency is required for kind=degree");
        std::string rows;
        for (const auto& code : selection.currencies) rows += degree_rows(run.series, code, smoothing);
        out << "date,currency,raw,smoothed\n" << rows;
    } else if (kind == "correlation") {
        if (selection.currencies.size() != 2) {
            throw ConfigurationError("kind=correlation needs exactly two currencies (--currency A --currency B)");
        }
        const auto& a = selection.currencies[0];
        const auto& b = selection.currencies[1];
        const SeriesCorrelation c = degree_series_correlation(run.series, a, b, smoothing);
        out << "a,b,correlation,points,degenerate\n"
            << a << ',' << b << ',' << format_number(c.value) << ',' << c.points << ',' << (c.degenerate ? 1 : 0)
            << '\n';
    } else if (kind == "maxgap") {
        out << maxgap_csv(run.series, smoothing);
    } else if (kind == "intrafrac" || kind == "kde") {
        fs::path mapping = selection.continents;
        if (mapping.empty()) {
            const auto stored = run.manifest["config"].value("continents", std::string("builtin"));
            if (stored != "builtin") mapping = stored;
        }
        const auto dist = intracontinental_distribution(run.series, load_continents(mapping));
        out << (kind == "kde" ? kde_csv(dist) : intrafrac_csv(dist));
    } else if (kind == "degdist" || kind == "tailfit") {
        if (!selection.date) throw ConfigurationError("--date is required for kind=" + kind);
        const std::vector<int> deg = degrees_on(run.series, *selection.date);
        const TailFit fit = fit_degree_tail(deg);
        if (kind == "tailfit") {
            out << "date,available,alpha,xmin,tail_size,mu,sigma,ks_pl,ks_ln\n"
                << *selection.date << ',' << (fit.available ? 1 : 0) << ',' << format_number(fit.alpha) << ','
                << fit.xmin << ',' << fit.tail_size << ',' << format_number(fit.mu) << ','
                << format_number(fit.sigma) << ',' << format_number(fit.ks_pl) << ',' << format_number(fit.ks_ln)
                << '\n';
        } else {
            std::map<int, std::size_t> histogram;
            for (int d : deg) ++histogram[d];
            out << "degree,count\n";
            for (const auto& [d, n] : histogram) out << d << ',' << n << '\n';
        }
    } else {
        throw ConfigurationError("unknown plot kind '" + kind +
                                 "' (degree, correlation, maxgap, intrafrac, kde, degdist, tailfit)");
    }
}

namespace {

void add_rdc_options(CLI::App& cmd, RdcParams& params, std::optional<double>& scale) {
    cmd.add_option("--k", params.k, "random features per sample")->capture_default_str();
    cmd.add_option("--reps", params.repetitions, "independent RDC draws (median reported)")->capture_default_str();
    cmd.add_option("--ridge", params.ridge, "ridge added to within-set covariances")->capture_default_str();
    cmd.add_option("--seed", params.seed, "root random seed")->capture_default_str();
    cmd.add_option("--scale", scale, "fixed kernel width (default: median heuristic)");
}

// Subcommand-level config files are not read by CLI11, so the file's keys are
// spliced in as flags right after `evolve`; later flags then win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args) {
    const auto sub = std::find(args.begin(), args.end(), "evolve");
    if (sub == args.end()) return args;
    std::string path;
    for (auto it = sub + 1; it != args.end(); ++it) {
        if (*it == "--config" && it + 1 != args.end()) {
            path = *(it + 1);
        } else if (it->starts_with("--config=")) {
            path = it->substr(9);
        }
    }
    if (path.empty()) return args;
    std::vector<std::string> flags;
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        if (!item.parents.empty() && item.parents != std::vector<std::string>{"evolve"}) {
            throw CLI::ConversionError("config key '" + item.fullname() + "' belongs to no evolve option");
        }
        for (const auto& value : item.inputs) {
            flags.push_back("--" + item.name);
            flags.push_back(value);
        }
    }
    std::vector<std::string> out(args.begin(), sub + 1);
    out.insert(out.end(), flags.begin(), flags.end());
    out.insert(out.end(), sub + 1, args.end());
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rolling-window RDC currency networks", "fxnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(FXNET_VERSION));

    RdcCommand rdc_cmd;
    std::optional<double> rdc_scale;
    auto* rdc_app = app.add_subcommand("rdc", "RDC between two columns of a delimited file");
    rdc_app->add_option("--input", rdc_cmd.input, "delimited file with a header row")->required();
    rdc_app->add_option("--x", rdc_cmd.x_column, "first column name")->required();
    rdc_app->add_option("--y", rdc_cmd.y_column, "second column name")->required();
    add_rdc_options(*rdc_app, rdc_cmd.params, rdc_scale);

    RunConfig config;
    std::optional<double> evolve_scale;
    std::string measure_text = "rdc";
    std::string base_text;
    std::optional<int> year;
    auto* evolve = app.add_subcommand("evolve", "rolling-window networks and all derived series");
    std::string config_file;
    evolve->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    evolve->add_option("--config", config_file, "key = value file; flags override it");
    evolve->add_option("--input", config.input, "rate table: date,CCY1,CCY2,...");
    evolve->add_option("--source-base", config.source_base, "denomination of the input")->capture_default_str();
    evolve->add_option("--base", base_text, "re-denominate into this code");
    evolve->add_option("--measure", measure_text, "rdc or pearson")->capture_default_str();
    evolve->add_option("--window", config.window, "window length in rows")->capture_default_str();
    evolve->add_option("--smoothing", config.smoothing, "networks per smoothed value")->capture_default_str();
    evolve->add_option("--continents", config.continents, "CCY,Continent file (default: built-in)");
    evolve->add_option("--out", config.out, "output directory");
    evolve->add_option("--year", year, "restrict yearly rankings to one year");
    evolve->add_option("--jobs", config.jobs, "worker threads (0: all)")->capture_default_str();
    add_rdc_options(*evolve, config.rdc, evolve_scale);

    fs::path run_dir;
    auto* rank = app.add_subcommand("rank", "average-degree ranking from an evolve directory");
    rank->add_option("--out", run_dir, "directory written by evolve")->required();
    rank->add_option("--year", year, "calendar year of the networks' end dates");

    PlotSelection selection;
    std::optional<int> plot_smoothing;
    std::optional<std::string> plot_date;
    auto* plot = app.add_subcommand("plotdata", "figure data from an evolve directory");
    plot->add_option("--out", run_dir, "directory written by evolve")->required();
    plot->add_option("--kind", selection.kind, "degree|correlation|maxgap|intrafrac|kde|degdist|tailfit")
        ->capture_default_str();
    plot->add_option("--currency", selection.currencies, "currency code (repeatable)");
    plot->add_option("--date", plot_date, "network end date (degdist, tailfit)");
    plot->add_option("--smoothing", plot_smoothing, "override the run's smoothing");
    plot->add_option("--continents", selection.continents, "CCY,Continent file");

    try {
        std::vector<std::string> expanded = expand_config_file(args);
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend() - (expanded.empty() ? 0 : 1));
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*rdc_app) {
            rdc_cmd.params.fixed_scale = rdc_scale;
            cmd_rdc(rdc_cmd, out);
        } else if (*evolve) {
            config.measure = parse_measure(measure_text);
            config.rdc.fixed_scale = evolve_scale;
            config.year = year;
            if (!base_text.empty()) config.base = base_text;
            cmd_evolve(config, err);
        } else if (*rank) {
            cmd_rank(run_dir, year, out);
        } else if (*plot) {
            selection.smoothing = plot_smoothing;
            selection.date = plot_date;
            cmd_plotdata(run_dir, selection, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace fxnet::cli
