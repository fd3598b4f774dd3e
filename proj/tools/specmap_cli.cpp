// specmap: generate scenario datasets, reconstruct them with classical
// estimators, evaluate predictions and render layers.

#include "specmap/config.hpp"
#include "specmap/dataset.hpp"
#include "specmap/evaluation.hpp"
#include "specmap/metrics.hpp"
#include "specmap/pipeline.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace specmap;

/// Failure reported as `error: <kind>: <message>` on one line.
struct CliError {
    std::string kind;
    std::string message;
};

void print_manifest(const std::string& subcommand, const std::vector<std::pair<std::string, std::string>>& entries)
{
    std::cout << "subcommand=" << subcommand << '\n';
    for (const auto& [k, v] : entries) std::cout << k << '=' << v << '\n';
    std::cout.flush();
}

void write_bytes_atomic(const std::string& path, const std::string& bytes)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CliError{"io", "cannot write " + path};
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw CliError{"io", "write failed for " + path};
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CliError{"io", "cannot rename onto " + path + ": " + ec.message()};
}

struct GenerateArgs {
    std::size_t scenes = 500;
    double density = 0.05;
    std::uint64_t seed = 0;
    std::string out;
    std::string config;
    bool broadband = false;
    unsigned threads = 0;
};

void run_generate(const GenerateArgs& a)
{
    ExperimentConfig config = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
    if (a.broadband) config.scene.broadband = true;
    config.validate();

    auto entries = describe(config);
    entries.insert(entries.begin(), {{"scenes", std::to_string(a.scenes)},
                                     {"density", format_frequency(a.density)},
                                     {"seed", std::to_string(a.seed)},
                                     {"config", a.config.empty() ? "<defaults>" : a.config},
                                     {"out", a.out}});
    print_manifest("generate", entries);

    const auto records = generate_dataset(config, a.scenes, a.density, a.seed, a.threads);
    write_dataset(records, a.out);
    std::cout << "records_written=" << records.size() << '\n';
}

struct ReconstructArgs {
    std::string method;
    std::string in;
    std::string out;
    ReconstructOptions options;
    unsigned threads = 0;
};

void run_reconstruct(ReconstructArgs a)
{
    a.options.method = parse_method(a.method);
    print_manifest("reconstruct", {{"method", to_string(a.options.method)},
                                   {"in", a.in},
                                   {"out", a.out},
                                   {"side_meters", format_frequency(a.options.side_meters)},
                                   {"power", format_frequency(a.options.idw_power)},
                                   {"k", std::to_string(a.options.knn_k)},
                                   {"neighbors", std::to_string(a.options.kriging_neighbors)},
                                   {"zero_nugget", a.options.force_zero_nugget ? "true" : "false"}});
    const auto records = read_dataset(a.in);
    ReconstructDiagnostics diag;
    const auto predictions = reconstruct_dataset(records, a.options, a.threads, &diag);
    write_predictions(predictions, a.out);
    std::cout << "predictions_written=" << predictions.size() << '\n';
    if (a.options.method == Method::kriging)
        std::cout << "jittered_cells=" << diag.jittered_cells << "\ndegenerate_fits=" << diag.degenerate_fits << '\n';
}

struct EvalArgs {
    std::string truth;
    std::vector<std::string> preds;
    std::string csv;
    std::string mask = "all_cells";
};

void run_eval(const EvalArgs& a)
{
    const MaskPolicy mask = parse_mask_policy(a.mask);
    std::vector<std::pair<std::string, std::string>> manifest{{"truth", a.truth}, {"csv", a.csv}, {"mask", a.mask}};

    std::vector<LabeledPredictions> sets;
    for (const auto& spec : a.preds) {
        // label=path, or a bare path labelled by its file stem
        const auto eq = spec.find('=');
        LabeledPredictions set;
        std::string path;
        if (eq == std::string::npos) {
            path = spec;
            set.label = std::filesystem::path(spec).stem().string();
        } else {
            set.label = spec.substr(0, eq);
            path = spec.substr(eq + 1);
        }
        if (set.label.empty() || set.label.find(',') != std::string::npos)
            throw CliError{"usage", "prediction label must be nonempty and comma-free: '" + spec + "'"};
        manifest.emplace_back("pred", set.label + "=" + path);
        set.records = read_predictions(path);
        sets.push_back(std::move(set));
    }
    print_manifest("eval", manifest);

    const auto truth = read_dataset(a.truth);
    const auto rows = evaluate(truth, sets, mask);
    write_bytes_atomic(a.csv, format_eval_csv(rows));
    std::cout << "rows_written=" << rows.size() << '\n';
}

struct RenderArgs {
    std::string in;
    std::uint64_t scene = 0;
    double freq = 0.0;
    std::string out;
    double lo = -150.0;
    double hi = -20.0;
    std::string cube = "P";
};

void run_render(const RenderArgs& a)
{
    print_manifest("render", {{"in", a.in},
                              {"scene", std::to_string(a.scene)},
                              {"freq", format_frequency(a.freq)},
                              {"out", a.out},
                              {"lo", format_frequency(a.lo)},
                              {"hi", format_frequency(a.hi)},
                              {"cube", a.cube}});
    if (!(a.lo < a.hi)) throw CliError{"usage", "--lo must be below --hi"};

    const std::string magic = peek_magic(a.in);
    const FrequencySpaceCube* cube = nullptr;
    std::vector<double> freqs;
    std::vector<ScenarioRecord> records;
    std::vector<PredictionRecord> predictions;

    if (magic == "SPCM") {
        records = read_dataset(a.in);
        for (const auto& r : records) {
            if (r.scene_id != a.scene) continue;
            if (a.cube == "P") cube = &r.truth;
            else if (a.cube == "S") cube = &r.incomplete;
            else throw CliError{"usage", "--cube must be P or S"};
            freqs = r.frequencies_mhz;
        }
    } else if (magic == "SPCP") {
        predictions = read_predictions(a.in);
        for (const auto& p : predictions)
            if (p.scene_id == a.scene) cube = &p.estimate;
        // Prediction files carry no frequency table; fall back to the defaults.
        if (cube != nullptr) {
            freqs = SceneConfig{}.frequencies_mhz;
            if (static_cast<int>(freqs.size()) != cube->layers())
                throw CliError{"usage", "prediction file has " + std::to_string(cube->layers()) +
                                            " layers; cannot map --freq onto them"};
        }
    } else {
        throw CliError{"format", a.in + " is neither a scenario nor a prediction file"};
    }
    if (cube == nullptr) throw CliError{"not_found", "scene " + std::to_string(a.scene) + " not in " + a.in};

    int layer = -1;
    std::string available;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (std::abs(freqs[k] - a.freq) < 1e-3) layer = static_cast<int>(k);
        available += (k ? "," : "") + format_frequency(freqs[k]);
    }
    if (layer < 0)
        throw CliError{"not_found", "frequency " + format_frequency(a.freq) + " MHz not available (available: " +
                                        available + ")"};

    const auto bytes = render_layer(cube->layer_map(layer), a.lo, a.hi);
    write_bytes_atomic(a.out, std::string(bytes.begin(), bytes.end()));
    std::cout << "bytes_written=" << bytes.size() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectrum map toolkit: generate, reconstruct, eval, render"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Write a scenario dataset");
    g->add_option("--scenes", gen.scenes, "Number of scenes")->check(CLI::PositiveNumber)->capture_default_str();
    g->add_option("--density", gen.density, "Sampling density in (0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    g->add_option("--out", gen.out, "Output dataset path")->required();
    g->add_option("--config", gen.config, "key = value config file");
    g->add_flag("--broadband", gen.broadband, "Every transmitter emits on all frequencies");
    g->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");

    ReconstructArgs rec;
    auto* r = app.add_subcommand("reconstruct", "Reconstruct every record of a dataset");
    r->add_option("--method", rec.method, "idw, knn or kriging")->required();
    r->add_option("--in", rec.in, "Scenario dataset")->required()->check(CLI::ExistingFile);
    r->add_option("--out", rec.out, "Prediction file")->required();
    r->add_option("--power", rec.options.idw_power, "IDW exponent")->capture_default_str();
    r->add_option("--k", rec.options.knn_k, "KNN neighbour count")->capture_default_str();
    r->add_option("--neighbors", rec.options.kriging_neighbors, "Kriging neighbourhood size")->capture_default_str();
    r->add_flag("--zero-nugget", rec.options.force_zero_nugget, "Fit kriging variograms with the nugget fixed at 0");
    r->add_option("--side", rec.options.side_meters, "Area side length in meters")->capture_default_str();
    r->add_option("--threads", rec.threads, "Worker threads (0 = all cores)");

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "RMSE report for one or more prediction files");
    e->add_option("--truth", ev.truth, "Scenario dataset")->required()->check(CLI::ExistingFile);
    e->add_option("--pred", ev.preds, "Prediction file, optionally label=path (repeatable)")->required();
    e->add_option("--csv", ev.csv, "Output CSV path")->required();
    e->add_option("--mask", ev.mask, "all_cells or exclude_buildings")->capture_default_str();

    RenderArgs ren;
    auto* v = app.add_subcommand("render", "Render one layer as an 8-bit PGM");
    v->add_option("--in", ren.in, "Scenario or prediction file")->required()->check(CLI::ExistingFile);
    v->add_option("--scene", ren.scene, "Scene id")->required();
    v->add_option("--freq", ren.freq, "Layer frequency in MHz")->required();
    v->add_option("--out", ren.out, "Output .pgm path")->required();
    v->add_option("--lo", ren.lo, "dBm mapped to black")->capture_default_str();
    v->add_option("--hi", ren.hi, "dBm mapped to white")->capture_default_str();
    v->add_option("--cube", ren.cube, "For scenario files: P (truth) or S (incomplete)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        std::cerr << "error: usage: " << ex.what() << '\n';
        return 2;
    }

    try {
        if (g->parsed()) run_generate(gen);
        else if (r->parsed()) run_reconstruct(rec);
        else if (e->parsed()) run_eval(ev);
        else if (v->parsed()) run_render(ren);
    } catch (const CliError& ex) {
        std::cerr << "error: " << ex.kind << ": " << ex.message << '\n';
        return ex.kind == "usage" ? 2 : 1;
    } catch (const DatasetError& ex) {
        std::cerr << "error: format: " << ex.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: usage: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: runtime: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
