#include <catch2/catch_amalgamated.hpp>

#include "specmap/config.hpp"
#include "specmap/evaluation.hpp"
#include "specmap/pipeline.hpp"

#include <cmath>
#include <sstream>

using namespace specmap;
using Catch::Approx;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.scene.cells_per_side = 16;
    cfg.scene.side_meters = 64.0;
    cfg.scene.building_side_min_cells = 2;
    cfg.scene.building_side_max_cells = 4;
    return cfg;
}

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config files override defaults key by key", "[config]")
{
    std::istringstream in("# open area\n"
                          "buildings_min = 0\n"
                          "buildings_max = 0\n"
                          "\n"
                          "broadband = true   # every layer active\n"
                          "frequencies = 700, 900,1800\n"
                          "target_mhz = 900\n"
                          "noise_floor=-140\n");
    const ExperimentConfig c = parse_config(in);
    CHECK(c.scene.buildings_max == 0);
    CHECK(c.scene.broadband);
    CHECK(c.scene.frequencies_mhz == std::vector<double>{700, 900, 1800});
    CHECK(c.scene.target_index() == 1);
    CHECK(c.propagation.noise_floor == -140.0);
    CHECK(c.scene.cells_per_side == 64); // untouched
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config errors name the offending line", "[config]")
{
    std::istringstream unknown("side_meters = 100\nwall_loss = 3\n");
    CHECK(message_of([&] { parse_config(unknown); }).find("line 2") != std::string::npos);
    std::istringstream bad_number("cells_per_side = many\n");
    CHECK(message_of([&] { parse_config(bad_number); }).find("line 1") != std::string::npos);
    std::istringstream no_equals("broadband\n");
    CHECK_THROWS_AS(parse_config(no_equals), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/specmap.cfg"), std::invalid_argument);

    ExperimentConfig c;
    c.propagation.noise_floor = 15.0; // above the minimum transmit power
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("describe lists every key and parses back to the same config", "[config]")
{
    ExperimentConfig c = small_config();
    c.propagation.shadowing_sigma = 4.5;
    const auto kv = describe(c);
    CHECK(kv.size() == 21);
    std::ostringstream text;
    for (const auto& [k, v] : kv) text << k << " = " << v << "\n";
    std::istringstream in(text.str());
    CHECK(describe(parse_config(in)) == kv);
}

TEST_CASE("dataset generation is deterministic and thread-count independent", "[pipeline]")
{
    const ExperimentConfig cfg = small_config();
    const auto a = generate_dataset(cfg, 6, 0.2, 5, 1);
    const auto b = generate_dataset(cfg, 6, 0.2, 5, 3);
    CHECK(a == b);
    CHECK(a[3] == make_scenario_record(cfg, 5, 3, 0.2));
    CHECK_FALSE(generate_dataset(cfg, 6, 0.2, 6, 1) == a);
    for (std::size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].scene_id == r);
        CHECK(a[r].seed == scene_seed(5, r));
        CHECK(a[r].density == 0.2f);
        for (double v : a[r].truth.values()) REQUIRE(static_cast<double>(static_cast<float>(v)) == v);
    }
}

TEST_CASE("methods parse by name", "[pipeline]")
{
    CHECK(parse_method("idw") == Method::idw);
    CHECK(parse_method("kriging") == Method::kriging);
    const std::string msg = message_of([] { parse_method("gan"); });
    CHECK(msg.find("idw") != std::string::npos);
    CHECK(msg.find("knn") != std::string::npos);
    CHECK(msg.find("kriging") != std::string::npos);
}

TEST_CASE("reconstruction keeps samples and fills every layer", "[pipeline]")
{
    const auto records = generate_dataset(small_config(), 3, 0.3, 9, 1);
    for (Method m : {Method::idw, Method::knn, Method::kriging}) {
        ReconstructOptions opt;
        opt.method = m;
        opt.side_meters = 64.0;
        opt.knn_k = 1;
        opt.force_zero_nugget = true;
        ReconstructDiagnostics diag;
        const auto preds = reconstruct_dataset(records, opt, 2, &diag);
        REQUIRE(preds.size() == 3);
        CHECK(diag.max_weight_sum_error <= 1e-9);
        for (std::size_t r = 0; r < 3; ++r) {
            const auto& rec = records[r];
            CHECK(preds[r].scene_id == rec.scene_id);
            CHECK(preds[r].estimate == reconstruct_record(rec, opt));
            for (int k = 0; k < rec.layers(); ++k) {
                if (k == rec.target_index) continue;
                for (int i = 0; i < rec.size(); ++i)
                    for (int j = 0; j < rec.size(); ++j)
                        if (rec.sampling(i, j)) CHECK(std::abs(preds[r].estimate(k, i, j) - rec.truth(k, i, j)) < 1e-6);
            }
            for (double v : preds[r].estimate.values()) CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("evaluation joins by scene id and pools aggregates", "[evaluation]")
{
    const auto truth = generate_dataset(small_config(), 4, 0.25, 3, 1);
    std::vector<PredictionRecord> shifted;
    for (const auto& rec : truth) {
        auto e = rec.truth;
        for (double& v : e.values()) v += 1.0 + static_cast<double>(rec.scene_id);
        shifted.push_back({rec.scene_id, e});
    }
    std::vector<PredictionRecord> perfect;
    for (auto it = truth.rbegin(); it != truth.rend(); ++it) perfect.push_back({it->scene_id, it->truth});

    const auto rows = evaluate(truth, {{"shift", shifted}, {"exact", perfect}});
    // 4 scenes x (4 layers + all) per set, then (4 layers + all) aggregates per set.
    CHECK(rows.size() == 2 * 4 * 5 + 2 * 5);
    double expected_sq = 0;
    for (int s = 0; s < 4; ++s) expected_sq += (1.0 + s) * (1.0 + s);
    for (const auto& r : rows) {
        if (r.method == "exact") CHECK(r.rmse_db == 0.0);
        if (r.method == "shift" && r.scene_id == "2") CHECK(r.rmse_db == Approx(3.0).margin(1e-9));
        if (r.method == "shift" && r.scene_id == "aggregate")
            CHECK(r.rmse_db == Approx(std::sqrt(expected_sq / 4.0)).margin(1e-9));
    }
    const std::string csv = format_eval_csv(rows);
    CHECK(csv.rfind("scene_id,density,method,layer_freq_mhz,rmse_db\n", 0) == 0);
    CHECK(csv.find("2,0.2500,shift,1800,3.000000\n") != std::string::npos);
    CHECK(csv == format_eval_csv(evaluate(truth, {{"shift", shifted}, {"exact", perfect}})));
}

TEST_CASE("evaluation rejects unmatched predictions", "[evaluation]")
{
    const auto truth = generate_dataset(small_config(), 3, 0.25, 3, 1);
    std::vector<PredictionRecord> preds;
    for (const auto& rec : truth) preds.push_back({rec.scene_id, rec.truth});

    auto missing = preds;
    missing.pop_back();
    CHECK(message_of([&] { evaluate(truth, {{"m", missing}}); }).find("no prediction") != std::string::npos);
    auto extra = preds;
    extra.push_back({99, truth[0].truth});
    CHECK(message_of([&] { evaluate(truth, {{"m", extra}}); }).find("99") != std::string::npos);
    auto dup = preds;
    dup[1].scene_id = dup[0].scene_id;
    CHECK_THROWS_AS(evaluate(truth, {{"m", dup}}), std::invalid_argument);
    auto wrong = preds;
    wrong[0].estimate = FrequencySpaceCube(8, 4);
    CHECK(message_of([&] { evaluate(truth, {{"m", wrong}}); }).find("shape") != std::string::npos);
}
