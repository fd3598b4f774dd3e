#include <catch2/catch_amalgamated.hpp>

#include "specmap/dataset.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sys/wait.h>

using namespace specmap;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "specmap_cli_test";

struct Run {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Run cli(const std::string& args)
{
    fs::create_directories(kWork);
    const fs::path out = kWork / "stdout.txt", err = kWork / "stderr.txt";
    const std::string cmd = std::string("\"") + SPECMAP_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

std::string path(const std::string& name)
{
    return (kWork / name).string();
}

} // namespace

TEST_CASE("usage errors exit 2 with a one-line message", "[cli]")
{
    const Run zero = cli("generate --scenes 0 --out " + path("x.spcm"));
    CHECK(zero.status == 2);
    CHECK(zero.err.rfind("error: usage:", 0) == 0);

    REQUIRE(cli("generate --scenes 2 --density 0.2 --out " + path("two.spcm") + " --threads 1").status == 0);
    const Run gan = cli("reconstruct --method gan --in " + path("two.spcm") + " --out " + path("p.spcp"));
    CHECK(gan.status == 2);
    CHECK(gan.err.find("idw") != std::string::npos);
    CHECK(gan.err.find("kriging") != std::string::npos);

    const Run freq = cli("render --in " + path("two.spcm") + " --scene 0 --freq 999 --out " + path("x.pgm"));
    CHECK(freq.status != 0);
    CHECK(freq.err.find("900,1500,1800,2100") != std::string::npos);

    const Run no_sub = cli("");
    CHECK(no_sub.status == 2);
}

TEST_CASE("generate is deterministic and uses the experiment defaults", "[cli]")
{
    REQUIRE(cli("generate --scenes 3 --density 0.05 --seed 11 --out " + path("a.spcm")).status == 0);
    const Run second = cli("generate --scenes 3 --density 0.05 --seed 11 --threads 1 --out " + path("b.spcm"));
    REQUIRE(second.status == 0);
    CHECK(second.out.find("subcommand=generate") != std::string::npos);
    CHECK(second.out.find("cells_per_side=64") != std::string::npos);
    CHECK(slurp(path("a.spcm")) == slurp(path("b.spcm")));

    const auto records = read_dataset(path("a.spcm"));
    REQUIRE(records.size() == 3);
    CHECK(records[0].size() == 64);
    CHECK(records[0].layers() == 4);
    CHECK(records[0].frequencies_mhz[static_cast<std::size_t>(records[0].target_index)] == 1800.0);
    CHECK(fs::file_size(path("a.spcm")) == dataset_file_size(3, 64, 4));
}

TEST_CASE("full-density kriging on an open area reproduces the sampled layers", "[cli]")
{
    {
        std::ofstream cfg(path("open.cfg"));
        cfg << "buildings_min = 0\nbuildings_max = 0\ncells_per_side = 16\nside_meters = 64\n";
    }
    REQUIRE(cli("generate --scenes 2 --density 1.0 --config " + path("open.cfg") + " --out " + path("open.spcm"))
                .status == 0);
    REQUIRE(cli("reconstruct --method kriging --zero-nugget --side 64 --in " + path("open.spcm") + " --out " +
                path("open.spcp"))
                .status == 0);
    const auto truth = read_dataset(path("open.spcm"));
    const auto preds = read_predictions(path("open.spcp"));
    REQUIRE(preds.size() == truth.size());
    for (std::size_t r = 0; r < truth.size(); ++r)
        for (int k = 0; k < 4; ++k) {
            if (k == truth[r].target_index) continue;
            const auto e = preds[r].estimate.layer(k);
            const auto p = truth[r].truth.layer(k);
            for (std::size_t o = 0; o < e.size(); ++o) REQUIRE(std::abs(e[o] - p[o]) < 1e-6);
        }
}

TEST_CASE("reconstruct, eval and render chain together", "[cli]")
{
    REQUIRE(cli("generate --scenes 2 --density 0.2 --seed 4 --out " + path("c.spcm")).status == 0);
    REQUIRE(cli("reconstruct --method idw --in " + path("c.spcm") + " --out " + path("idw1.spcp")).status == 0);
    REQUIRE(cli("reconstruct --method idw --threads 1 --in " + path("c.spcm") + " --out " + path("idw2.spcp"))
                .status == 0);
    CHECK(slurp(path("idw1.spcp")) == slurp(path("idw2.spcp")));
    REQUIRE(cli("reconstruct --method knn --k 3 --in " + path("c.spcm") + " --out " + path("knn.spcp")).status == 0);

    const Run ev = cli("eval --truth " + path("c.spcm") + " --pred " + path("idw1.spcp") + " --pred nearest=" +
                       path("knn.spcp") + " --csv " + path("c.csv"));
    REQUIRE(ev.status == 0);
    const std::string csv = slurp(path("c.csv"));
    CHECK(csv.rfind("scene_id,density,method,layer_freq_mhz,rmse_db\n", 0) == 0);
    CHECK(csv.find(",idw1,") != std::string::npos);
    CHECK(csv.find(",nearest,") != std::string::npos);
    CHECK(csv.find("aggregate,0.2000,nearest,all,") != std::string::npos);

    // A prediction equal to the truth renders to the same bytes.
    const auto truth = read_dataset(path("c.spcm"));
    std::vector<PredictionRecord> perfect;
    for (const auto& r : truth) perfect.push_back({r.scene_id, r.truth});
    write_predictions(perfect, path("perfect.spcp"));
    REQUIRE(cli("render --in " + path("c.spcm") + " --scene 1 --freq 1500 --out " + path("t.pgm")).status == 0);
    REQUIRE(cli("render --in " + path("perfect.spcp") + " --scene 1 --freq 1500 --out " + path("e.pgm")).status == 0);
    CHECK(slurp(path("t.pgm")) == slurp(path("e.pgm")));
    CHECK(slurp(path("t.pgm")).rfind("P5\n64 64\n255\n", 0) == 0);

    const Run missing = cli("render --in " + path("c.spcm") + " --scene 7 --freq 1500 --out " + path("m.pgm"));
    CHECK(missing.status == 1);
    CHECK(missing.err.rfind("error: not_found:", 0) == 0);
}
