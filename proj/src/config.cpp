#include "specmap/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace specmap {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not a number: '" + v + "'");
    return out;
}

int to_int(const std::string& v)
{
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not an integer: '" + v + "'");
    return out;
}

bool to_bool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table{
        {"side_meters", [](auto& c, const auto& v) { c.scene.side_meters = to_double(v); }},
        {"cells_per_side", [](auto& c, const auto& v) { c.scene.cells_per_side = to_int(v); }},
        {"frequencies", [](auto& c, const auto& v) { c.scene.frequencies_mhz = to_list(v); }},
        {"target_mhz", [](auto& c, const auto& v) { c.scene.target_mhz = to_double(v); }},
        {"buildings_min", [](auto& c, const auto& v) { c.scene.buildings_min = to_int(v); }},
        {"buildings_max", [](auto& c, const auto& v) { c.scene.buildings_max = to_int(v); }},
        {"building_side_min_cells", [](auto& c, const auto& v) { c.scene.building_side_min_cells = to_double(v); }},
        {"building_side_max_cells", [](auto& c, const auto& v) { c.scene.building_side_max_cells = to_double(v); }},
        {"transmitters_min", [](auto& c, const auto& v) { c.scene.transmitters_min = to_int(v); }},
        {"transmitters_max", [](auto& c, const auto& v) { c.scene.transmitters_max = to_int(v); }},
        {"power_min_dbm", [](auto& c, const auto& v) { c.scene.power_min_dbm = to_double(v); }},
        {"power_max_dbm", [](auto& c, const auto& v) { c.scene.power_max_dbm = to_double(v); }},
        {"broadband", [](auto& c, const auto& v) { c.scene.broadband = to_bool(v); }},
        {"path_loss_exponent", [](auto& c, const auto& v) { c.propagation.path_loss_exponent = to_double(v); }},
        {"wall_loss_per_cell", [](auto& c, const auto& v) { c.propagation.wall_loss_per_cell = to_double(v); }},
        {"wall_loss_cap", [](auto& c, const auto& v) { c.propagation.wall_loss_cap = to_double(v); }},
        {"reference_distance", [](auto& c, const auto& v) { c.propagation.reference_distance = to_double(v); }},
        {"noise_floor", [](auto& c, const auto& v) { c.propagation.noise_floor = to_double(v); }},
        {"shadowing_sigma", [](auto& c, const auto& v) { c.propagation.shadowing_sigma = to_double(v); }},
        {"shadowing_correlation_cells",
         [](auto& c, const auto& v) { c.propagation.shadowing_correlation_cells = to_double(v); }},
        {"measurement_noise_sigma", [](auto& c, const auto& v) { c.measurement_noise_sigma = to_double(v); }},
    };
    return table;
}

} // namespace

void ExperimentConfig::validate() const
{
    scene.validate();
    propagation.validate();
    if (!(propagation.noise_floor < scene.power_min_dbm))
        throw std::invalid_argument("noise_floor must lie below the transmitter power bounds");
    if (!(measurement_noise_sigma >= 0.0)) throw std::invalid_argument("measurement_noise_sigma must be >= 0");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw std::invalid_argument("config line " + std::to_string(number) + ": unknown key '" + key + "'");
        try {
            it->second(base, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(number) + " (" + key + "): " + e.what());
        }
    }
    base.validate();
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& c)
{
    std::string freqs;
    for (std::size_t k = 0; k < c.scene.frequencies_mhz.size(); ++k)
        freqs += (k ? "," : "") + fmt(c.scene.frequencies_mhz[k]);
    return {
        {"side_meters", fmt(c.scene.side_meters)},
        {"cells_per_side", std::to_string(c.scene.cells_per_side)},
        {"frequencies", freqs},
        {"target_mhz", fmt(c.scene.target_mhz)},
        {"buildings_min", std::to_string(c.scene.buildings_min)},
        {"buildings_max", std::to_string(c.scene.buildings_max)},
        {"building_side_min_cells", fmt(c.scene.building_side_min_cells)},
        {"building_side_max_cells", fmt(c.scene.building_side_max_cells)},
        {"transmitters_min", std::to_string(c.scene.transmitters_min)},
        {"transmitters_max", std::to_string(c.scene.transmitters_max)},
        {"power_min_dbm", fmt(c.scene.power_min_dbm)},
        {"power_max_dbm", fmt(c.scene.power_max_dbm)},
        {"broadband", c.scene.broadband ? "true" : "false"},
        {"path_loss_exponent", fmt(c.propagation.path_loss_exponent)},
        {"wall_loss_per_cell", fmt(c.propagation.wall_loss_per_cell)},
        {"wall_loss_cap", fmt(c.propagation.wall_loss_cap)},
        {"reference_distance", fmt(c.propagation.reference_distance)},
        {"noise_floor", fmt(c.propagation.noise_floor)},
        {"shadowing_sigma", fmt(c.propagation.shadowing_sigma)},
        {"shadowing_correlation_cells", fmt(c.propagation.shadowing_correlation_cells)},
        {"measurement_noise_sigma", fmt(c.measurement_noise_sigma)},
    };
}

} // namespace specmap
