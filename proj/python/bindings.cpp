// Python bindings. Cubes cross the boundary as float64 arrays of shape
// (layers, N, N); maps as (N, N) arrays.

#include "specmap/completion.hpp"
#include "specmap/config.hpp"
#include "specmap/dataset.hpp"
#include "specmap/evaluation.hpp"
#include "specmap/interpolation.hpp"
#include "specmap/kriging.hpp"
#include "specmap/metrics.hpp"
#include "specmap/observation.hpp"
#include "specmap/pipeline.hpp"
#include "specmap/propagation.hpp"
#include "specmap/scene.hpp"

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace specmap;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const FrequencySpaceCube& cube)
{
    py::array_t<double> out({cube.layers(), cube.size(), cube.size()});
    std::copy(cube.values().begin(), cube.values().end(), out.mutable_data());
    return out;
}

template <class T>
py::array_t<T> to_numpy(const Map2D<T>& map)
{
    py::array_t<T> out({map.size(), map.size()});
    std::copy(map.values().begin(), map.values().end(), out.mutable_data());
    return out;
}

FrequencySpaceCube cube_from(const DoubleArray& a)
{
    if (a.ndim() != 3 || a.shape(1) != a.shape(2)) throw std::invalid_argument("expected a (layers, N, N) array");
    FrequencySpaceCube cube(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::copy(a.data(), a.data() + a.size(), cube.values().begin());
    return cube;
}

RealMap real_map_from(const DoubleArray& a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected an (N, N) array");
    RealMap m(static_cast<int>(a.shape(0)));
    std::copy(a.data(), a.data() + a.size(), m.values().begin());
    return m;
}

BinaryMap binary_map_from(const ByteArray& a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected an (N, N) array");
    BinaryMap m(static_cast<int>(a.shape(0)));
    std::copy(a.data(), a.data() + a.size(), m.values().begin());
    return m;
}

// Samples as parallel sequences: cells [(i, j), ...] and values [...].
SampleList samples_from(const std::vector<std::pair<int, int>>& cells, const std::vector<double>& values)
{
    if (cells.size() != values.size()) throw std::invalid_argument("cells and values differ in length");
    std::vector<Sample> s;
    s.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) s.push_back({{cells[k].first, cells[k].second}, values[k]});
    return SampleList(std::move(s));
}

std::vector<std::pair<int, int>> cell_pairs(const std::vector<CellIndex>& cells)
{
    std::vector<std::pair<int, int>> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.emplace_back(c.i, c.j);
    return out;
}

} // namespace

PYBIND11_MODULE(_specmap, m)
{
    m.doc() = "Spectrum map simulation, classical reconstruction and evaluation";

    py::register_exception<DatasetError>(m, "DatasetError", PyExc_RuntimeError);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<double, int>(), py::arg("side_meters"), py::arg("cells_per_side"))
        .def_property_readonly("side_meters", &GridSpec::side_meters)
        .def_property_readonly("cells_per_side", &GridSpec::cells_per_side)
        .def_property_readonly("interval", &GridSpec::interval);
    m.def(
        "cell_center",
        [](const GridSpec& g, int i, int j) {
            const Point p = cell_center(g, i, j);
            return std::make_pair(p.x, p.y);
        },
        py::arg("grid"), py::arg("i"), py::arg("j"));

    py::enum_<FrequencyMode>(m, "FrequencyMode")
        .value("single", FrequencyMode::single)
        .value("broadband", FrequencyMode::broadband);

    py::class_<Transmitter>(m, "Transmitter")
        .def_property_readonly("cell", [](const Transmitter& t) { return std::make_pair(t.cell.i, t.cell.j); })
        .def_readonly("power_dbm", &Transmitter::power_dbm)
        .def_readonly("mode", &Transmitter::mode)
        .def_readonly("frequency_index", &Transmitter::frequency_index);

    py::class_<SceneConfig>(m, "SceneConfig")
        .def(py::init<>())
        .def_readwrite("side_meters", &SceneConfig::side_meters)
        .def_readwrite("cells_per_side", &SceneConfig::cells_per_side)
        .def_readwrite("frequencies_mhz", &SceneConfig::frequencies_mhz)
        .def_readwrite("target_mhz", &SceneConfig::target_mhz)
        .def_readwrite("buildings_min", &SceneConfig::buildings_min)
        .def_readwrite("buildings_max", &SceneConfig::buildings_max)
        .def_readwrite("building_side_min_cells", &SceneConfig::building_side_min_cells)
        .def_readwrite("building_side_max_cells", &SceneConfig::building_side_max_cells)
        .def_readwrite("transmitters_min", &SceneConfig::transmitters_min)
        .def_readwrite("transmitters_max", &SceneConfig::transmitters_max)
        .def_readwrite("power_min_dbm", &SceneConfig::power_min_dbm)
        .def_readwrite("power_max_dbm", &SceneConfig::power_max_dbm)
        .def_readwrite("broadband", &SceneConfig::broadband)
        .def_readwrite("max_layout_attempts", &SceneConfig::max_layout_attempts)
        .def("target_index", &SceneConfig::target_index)
        .def("validate", &SceneConfig::validate);

    py::class_<Scene>(m, "Scene")
        .def_property_readonly("grid", &Scene::grid)
        .def_property_readonly("buildings", [](const Scene& s) { return to_numpy(s.buildings()); })
        .def_property_readonly("transmitters", &Scene::transmitters)
        .def_property_readonly("frequencies_mhz", &Scene::frequencies_mhz)
        .def_property_readonly("target_index", &Scene::target_index)
        .def_property_readonly("seed", &Scene::seed)
        .def("free_cell_count", &Scene::free_cell_count);
    m.def("generate_scene", &generate_scene, py::arg("config"), py::arg("seed"));

    py::class_<PropagationParams>(m, "PropagationParams")
        .def(py::init<>())
        .def_readwrite("path_loss_exponent", &PropagationParams::path_loss_exponent)
        .def_readwrite("wall_loss_per_cell", &PropagationParams::wall_loss_per_cell)
        .def_readwrite("wall_loss_cap", &PropagationParams::wall_loss_cap)
        .def_readwrite("reference_distance", &PropagationParams::reference_distance)
        .def_readwrite("noise_floor", &PropagationParams::noise_floor)
        .def_readwrite("shadowing_sigma", &PropagationParams::shadowing_sigma)
        .def_readwrite("shadowing_correlation_cells", &PropagationParams::shadowing_correlation_cells)
        .def("validate", &PropagationParams::validate);
    m.def("path_loss_db", &path_loss_db, py::arg("freq_mhz"), py::arg("distance"), py::arg("walls_crossed"),
          py::arg("params") = PropagationParams{}, py::arg("min_distance") = 0.0);
    m.def(
        "count_wall_crossings",
        [](const ByteArray& buildings, std::pair<int, int> a, std::pair<int, int> b) {
            return count_wall_crossings(binary_map_from(buildings), {a.first, a.second}, {b.first, b.second});
        },
        py::arg("buildings"), py::arg("a"), py::arg("b"));
    m.def(
        "compute_ground_truth",
        [](const Scene& s, const PropagationParams& p) { return to_numpy(compute_ground_truth(s, p)); },
        py::arg("scene"), py::arg("params") = PropagationParams{});

    m.def("receiver_count", &receiver_count, py::arg("density"), py::arg("free_cells"));
    m.def(
        "place_receivers",
        [](const Scene& s, double density, std::uint64_t seed) {
            return cell_pairs(place_receivers(s, density, seed).receiver_cells);
        },
        py::arg("scene"), py::arg("density"), py::arg("seed"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("scene", &ExperimentConfig::scene)
        .def_readwrite("propagation", &ExperimentConfig::propagation)
        .def_readwrite("measurement_noise_sigma", &ExperimentConfig::measurement_noise_sigma)
        .def("validate", &ExperimentConfig::validate);
    m.def(
        "parse_config",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_config(in);
        },
        py::arg("text"));
    m.def("describe", &describe, py::arg("config"));

    py::class_<ScenarioRecord>(m, "ScenarioRecord")
        .def_readonly("scene_id", &ScenarioRecord::scene_id)
        .def_readonly("density", &ScenarioRecord::density)
        .def_readonly("seed", &ScenarioRecord::seed)
        .def_readonly("frequencies_mhz", &ScenarioRecord::frequencies_mhz)
        .def_readonly("target_index", &ScenarioRecord::target_index)
        .def_property_readonly("truth", [](const ScenarioRecord& r) { return to_numpy(r.truth); })
        .def_property_readonly("incomplete", [](const ScenarioRecord& r) { return to_numpy(r.incomplete); })
        .def_property_readonly("city", [](const ScenarioRecord& r) { return to_numpy(r.city); })
        .def_property_readonly("sampling", [](const ScenarioRecord& r) { return to_numpy(r.sampling); })
        .def("semantics_3d",
             [](const ScenarioRecord& r) {
                 const StackedSemantics st = stack_semantics_3d({r.city, r.sampling}, r.layers());
                 const std::vector<py::ssize_t> shape{st.layers, st.size, st.size};
                 return std::make_pair(py::array_t<std::uint8_t>(shape, st.city.data()),
                                       py::array_t<std::uint8_t>(shape, st.sampling.data()));
             })
        .def(py::self == py::self);

    m.def("make_scenario_record", &make_scenario_record, py::arg("config"), py::arg("master_seed"),
          py::arg("scene_index"), py::arg("density"));
    m.def("generate_dataset", &generate_dataset, py::arg("config"), py::arg("scenes"), py::arg("density"),
          py::arg("master_seed"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("write_dataset", &write_dataset, py::arg("records"), py::arg("path"));
    m.def("read_dataset", &read_dataset, py::arg("path"));
    m.def("dataset_file_size", &dataset_file_size, py::arg("records"), py::arg("n"), py::arg("layers"));
    m.def("prediction_file_size", &prediction_file_size, py::arg("records"), py::arg("n"), py::arg("layers"));

    py::class_<PredictionRecord>(m, "PredictionRecord")
        .def(py::init([](std::uint64_t id, const DoubleArray& e) { return PredictionRecord{id, cube_from(e)}; }),
             py::arg("scene_id"), py::arg("estimate"))
        .def_readonly("scene_id", &PredictionRecord::scene_id)
        .def_property_readonly("estimate", [](const PredictionRecord& r) { return to_numpy(r.estimate); });
    m.def("write_predictions", &write_predictions, py::arg("records"), py::arg("path"));
    m.def("read_predictions", &read_predictions, py::arg("path"));

    m.def(
        "idw_reconstruct",
        [](const std::vector<std::pair<int, int>>& cells, const std::vector<double>& values, const GridSpec& g,
           double power) { return to_numpy(idw_reconstruct(samples_from(cells, values), g, power)); },
        py::arg("cells"), py::arg("values"), py::arg("grid"), py::arg("power") = 2.0);
    m.def(
        "knn_reconstruct",
        [](const std::vector<std::pair<int, int>>& cells, const std::vector<double>& values, const GridSpec& g, int k) {
            return to_numpy(knn_reconstruct(samples_from(cells, values), g, k));
        },
        py::arg("cells"), py::arg("values"), py::arg("grid"), py::arg("k") = 5);

    py::class_<VariogramModel>(m, "VariogramModel")
        .def(py::init([](double c0, double c, double a) { return VariogramModel{c0, c, a}; }), py::arg("nugget"),
             py::arg("sill"), py::arg("range"))
        .def_readwrite("nugget", &VariogramModel::nugget)
        .def_readwrite("sill", &VariogramModel::sill)
        .def_readwrite("range", &VariogramModel::range)
        .def("value", &VariogramModel::value, py::arg("h"));
    py::class_<VariogramBin>(m, "VariogramBin")
        .def(py::init([](double lag, double gamma, std::size_t pairs) { return VariogramBin{lag, gamma, pairs}; }),
             py::arg("lag"), py::arg("gamma"), py::arg("pairs"))
        .def_readonly("lag", &VariogramBin::lag)
        .def_readonly("gamma", &VariogramBin::gamma)
        .def_readonly("pairs", &VariogramBin::pairs);
    py::class_<VariogramFit>(m, "VariogramFit")
        .def_readonly("model", &VariogramFit::model)
        .def_readonly("weighted_sse", &VariogramFit::weighted_sse)
        .def_readonly("degenerate", &VariogramFit::degenerate);
    m.def(
        "empirical_variogram",
        [](const std::vector<std::pair<int, int>>& cells, const std::vector<double>& values, const GridSpec& g) {
            return empirical_variogram(samples_from(cells, values), g);
        },
        py::arg("cells"), py::arg("values"), py::arg("grid"));
    m.def(
        "fit_variogram", [](const std::vector<VariogramBin>& bins, const GridSpec& g) { return fit_variogram(bins, g); },
        py::arg("bins"), py::arg("grid"));
    m.def(
        "kriging_reconstruct",
        [](const std::vector<std::pair<int, int>>& cells, const std::vector<double>& values, const GridSpec& g,
           const VariogramModel& model, int neighbors) {
            const KrigingResult r = kriging_reconstruct(samples_from(cells, values), g, model, neighbors);
            return py::make_tuple(to_numpy(r.map), r.max_weight_sum_error);
        },
        py::arg("cells"), py::arg("values"), py::arg("grid"), py::arg("model"), py::arg("neighbors") = 32);

    m.def(
        "complete_target_layer",
        [](const DoubleArray& estimates, const std::vector<double>& freqs, int target) {
            return to_numpy(complete_target_layer(cube_from(estimates), freqs, target));
        },
        py::arg("estimates"), py::arg("frequencies_mhz"), py::arg("target_index"));

    m.def(
        "reconstruct_record",
        [](const ScenarioRecord& rec, const std::string& method, double side_meters, bool zero_nugget) {
            ReconstructOptions opt;
            opt.method = parse_method(method);
            opt.side_meters = side_meters;
            opt.force_zero_nugget = zero_nugget;
            return to_numpy(reconstruct_record(rec, opt));
        },
        py::arg("record"), py::arg("method") = "kriging", py::arg("side_meters") = 256.0,
        py::arg("zero_nugget") = false);

    m.def(
        "rmse",
        [](const DoubleArray& e, const DoubleArray& p, std::optional<ByteArray> city) {
            const BinaryMap z = city ? binary_map_from(*city) : BinaryMap{};
            const EvalReport r = rmse(cube_from(e), cube_from(p),
                                      city ? MaskPolicy::exclude_buildings : MaskPolicy::all_cells, city ? &z : nullptr);
            py::dict out;
            out["layers"] = r.layer_rmse;
            out["overall"] = r.overall_rmse;
            out["cells"] = r.overall_cells;
            return out;
        },
        py::arg("estimate"), py::arg("truth"), py::arg("city") = py::none());
    m.def(
        "render_layer",
        [](const DoubleArray& map, double lo, double hi) {
            const auto bytes = render_layer(real_map_from(map), lo, hi);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("map"), py::arg("lo") = -150.0, py::arg("hi") = -20.0);

    m.def(
        "evaluate_csv",
        [](const std::vector<ScenarioRecord>& truth, const std::vector<std::pair<std::string, std::vector<PredictionRecord>>>& sets,
           const std::string& mask) {
            std::vector<LabeledPredictions> labeled;
            for (const auto& [label, records] : sets) labeled.push_back({label, records});
            return format_eval_csv(evaluate(truth, labeled, parse_mask_policy(mask)));
        },
        py::arg("truth"), py::arg("predictions"), py::arg("mask") = "all_cells");
}
