#include <catch2/catch_amalgamated.hpp>

#include "specmap/metrics.hpp"
#include "specmap/random.hpp"

#include <cmath>
#include <string>

using namespace specmap;
using Catch::Approx;

namespace {

FrequencySpaceCube random_cube(Rng& rng, int n, int layers)
{
    FrequencySpaceCube c(n, layers);
    for (double& v : c.values()) v = rng.uniform_real(-140.0, -20.0);
    return c;
}

} // namespace

TEST_CASE("rmse of identical and offset cubes", "[metrics]")
{
    Rng rng(1);
    const auto p = random_cube(rng, 8, 4);
    const EvalReport same = rmse(p, p);
    CHECK(same.overall_rmse == 0.0);
    for (double r : same.layer_rmse) CHECK(r == 0.0);

    auto e = p;
    for (double& v : e.values()) v += 2.0;
    const EvalReport off = rmse(e, p);
    CHECK(off.overall_rmse == Approx(2.0).margin(1e-12));
    CHECK(off.overall_cells == 256);
    for (double r : off.layer_rmse) CHECK(r == Approx(2.0).margin(1e-12));
}

TEST_CASE("rmse matches a direct double loop", "[metrics]")
{
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = random_cube(rng, 4, 2);
        const auto p = random_cube(rng, 4, 2);
        double total = 0.0;
        for (int k = 0; k < 2; ++k) {
            double layer = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const double d = e(k, i, j) - p(k, i, j);
                    layer += d * d;
                }
            CHECK(rmse(e, p).layer_rmse[static_cast<std::size_t>(k)] == Approx(std::sqrt(layer / 16.0)).margin(1e-12));
            total += layer;
        }
        const EvalReport r = rmse(e, p);
        CHECK(r.overall_rmse == Approx(std::sqrt(total / 32.0)).margin(1e-12));
        CHECK(rmse(p, e).overall_rmse == r.overall_rmse);

        auto e2 = e, p2 = p;
        for (double& v : e2.values()) v += 13.5;
        for (double& v : p2.values()) v += 13.5;
        CHECK(rmse(e2, p2).overall_rmse == Approx(r.overall_rmse).margin(1e-9));
    }
}

TEST_CASE("building mask excludes occupied cells", "[metrics]")
{
    FrequencySpaceCube p(2, 1, 0.0), e(2, 1, 0.0);
    e(0, 0, 0) = 10.0; // error only inside the building
    e(0, 1, 1) = 1.0;
    BinaryMap city(2, 0);
    city(0, 0) = 1;
    const EvalReport all = rmse(e, p, MaskPolicy::all_cells);
    CHECK(all.overall_rmse == Approx(std::sqrt(101.0 / 4.0)));
    const EvalReport outside = rmse(e, p, MaskPolicy::exclude_buildings, &city);
    CHECK(outside.overall_cells == 3);
    CHECK(outside.overall_rmse == Approx(std::sqrt(1.0 / 3.0)));
    CHECK_THROWS_AS(rmse(e, p, MaskPolicy::exclude_buildings), std::invalid_argument);
    CHECK_THROWS_AS(rmse(FrequencySpaceCube(3, 1), p), std::invalid_argument);

    CHECK(parse_mask_policy("exclude_buildings") == MaskPolicy::exclude_buildings);
    CHECK(std::string(to_string(MaskPolicy::all_cells)) == "all_cells");
    CHECK_THROWS_AS(parse_mask_policy("walls"), std::invalid_argument);
}

TEST_CASE("render maps the display range onto 0..255", "[metrics]")
{
    RealMap m(2, 0.0);
    m(0, 0) = -150.0;
    m(0, 1) = -20.0;
    m(1, 0) = -85.0;  // midpoint: 127.5 rounds to 128
    m(1, 1) = -300.0; // clamped
    const auto pgm = render_layer(m);
    const std::string header = "P5\n2 2\n255\n";
    REQUIRE(pgm.size() == header.size() + 4);
    CHECK(std::string(pgm.begin(), pgm.begin() + static_cast<long>(header.size())) == header);
    const std::uint8_t* px = pgm.data() + header.size();
    CHECK(px[0] == 0);
    CHECK(px[1] == 255);
    CHECK(px[2] == 128);
    CHECK(px[3] == 0);

    CHECK(render_layer(m) == pgm);
    CHECK_THROWS_AS(render_layer(m, -20.0, -20.0), std::invalid_argument);
    CHECK_THROWS_AS(render_layer(m, 0.0, -1.0), std::invalid_argument);
}
