#pragma once

#include "specmap/cube.hpp"
#include "specmap/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace specmap {

// Scenario files ("SPCM") and prediction files ("SPCP"), all little-endian,
// no padding:
//
//   SPCM: magic[4] u8 version=1 u32 record_count u32 N u32 K_plus_1
//         f32 frequencies[K_plus_1] u8 target_index
//         per record: u64 scene_id f32 density u64 seed
//                     f32 P[K_plus_1][N][N] f32 S[K_plus_1][N][N]
//                     u8 Z[N][N] u8 M[N][N]
//
//   SPCP: magic[4] u8 version=1 u32 record_count u32 N u32 K_plus_1
//         per record: u64 scene_id f32 E[K_plus_1][N][N]

inline constexpr std::uint8_t kFormatVersion = 1;

enum class DatasetErrorKind { io, bad_magic, bad_version, truncated, shape_mismatch, not_binary, non_finite };

const char* to_string(DatasetErrorKind kind);

class DatasetError : public std::runtime_error {
public:
    DatasetError(DatasetErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }
    DatasetErrorKind kind() const { return kind_; }

private:
    DatasetErrorKind kind_;
};

/// One experiment sample. Cube and frequency values are held as doubles
/// but are f32-representable when built through make_scenario_record or
/// read from disk, so write/read round trips are bit-exact.
struct ScenarioRecord {
    std::uint64_t scene_id = 0;
    float density = 0.0f;
    std::uint64_t seed = 0;
    std::vector<double> frequencies_mhz;
    int target_index = 0;
    FrequencySpaceCube truth;      ///< P
    FrequencySpaceCube incomplete; ///< S
    BinaryMap city;                ///< Z
    BinaryMap sampling;            ///< M

    int size() const { return truth.size(); }
    int layers() const { return truth.layers(); }

    friend bool operator==(const ScenarioRecord&, const ScenarioRecord&) = default;
};

struct PredictionRecord {
    std::uint64_t scene_id = 0;
    FrequencySpaceCube estimate; ///< E

    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Rounds every value to the nearest f32.
void quantize_to_f32(FrequencySpaceCube& cube);

/// Closed-form file sizes of the two layouts.
std::uint64_t dataset_file_size(std::uint64_t records, std::uint32_t n, std::uint32_t layers);
std::uint64_t prediction_file_size(std::uint64_t records, std::uint32_t n, std::uint32_t layers);

/// Writes atomically (temporary file, then rename). Records must be
/// nonempty and agree on N, frequencies and target index; otherwise throws
/// DatasetError(shape_mismatch) before anything is written. Non-binary
/// Z/M maps and non-finite values are refused the same way. Returns the
/// number of bytes written.
std::size_t write_dataset(const std::vector<ScenarioRecord>& records, const std::filesystem::path& path);

/// Validates magic, version, shapes, Z/M binariness and finiteness.
std::vector<ScenarioRecord> read_dataset(const std::filesystem::path& path);

std::size_t write_predictions(const std::vector<PredictionRecord>& records, const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

/// Reads the four magic bytes; returns an empty string if the file is shorter.
std::string peek_magic(const std::filesystem::path& path);

} // namespace specmap
