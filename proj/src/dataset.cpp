#include "specmap/dataset.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

namespace specmap {

const char* to_string(DatasetErrorKind kind)
{
    switch (kind) {
    case DatasetErrorKind::io: return "io";
    case DatasetErrorKind::bad_magic: return "bad_magic";
    case DatasetErrorKind::bad_version: return "bad_version";
    case DatasetErrorKind::truncated: return "truncated";
    case DatasetErrorKind::shape_mismatch: return "shape_mismatch";
    case DatasetErrorKind::not_binary: return "not_binary";
    case DatasetErrorKind::non_finite: return "non_finite";
    }
    return "unknown";
}

void quantize_to_f32(FrequencySpaceCube& cube)
{
    for (auto& v : cube.values()) v = static_cast<double>(static_cast<float>(v));
}

namespace {

constexpr std::array<char, 4> kDatasetMagic{'S', 'P', 'C', 'M'};
constexpr std::array<char, 4> kPredictionMagic{'S', 'P', 'C', 'P'};
constexpr std::uint64_t kHeaderBytes = 4 + 1 + 4 + 4 + 4;

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v)
    {
        for (int b = 0; b < 4; ++b) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    void u64(std::uint64_t v)
    {
        for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
    void raw(std::span<const char> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }
    void cube(const FrequencySpaceCube& c)
    {
        for (double v : c.values()) f32(v);
    }
    void bits(const BinaryMap& m) { buf_.insert(buf_.end(), m.values().begin(), m.values().end()); }

    void flush_to(std::ofstream& out)
    {
        out.write(reinterpret_cast<const char*>(buf_.data()), static_cast<std::streamsize>(buf_.size()));
        buf_.clear();
    }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::vector<std::uint8_t> data) : data_(std::move(data)) {}

    std::size_t remaining() const { return data_.size() - pos_; }
    bool has(std::size_t n) const { return remaining() >= n; }

    std::uint8_t u8() { return data_[pos_++]; }
    std::uint32_t u32()
    {
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * b);
        return v;
    }
    std::uint64_t u64()
    {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * b);
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    std::array<char, 4> magic()
    {
        std::array<char, 4> m{};
        std::memcpy(m.data(), data_.data() + pos_, 4);
        pos_ += 4;
        return m;
    }

private:
    std::vector<std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError(DatasetErrorKind::io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Temporary sibling file renamed onto the destination on commit.
class AtomicFile {
public:
    explicit AtomicFile(std::filesystem::path target) : target_(std::move(target))
    {
        tmp_ = target_;
        tmp_ += ".tmp";
        out_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!out_) throw DatasetError(DatasetErrorKind::io, "cannot write " + tmp_.string());
    }
    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;
    ~AtomicFile()
    {
        if (!committed_) {
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

    std::ofstream& stream() { return out_; }

    void commit()
    {
        out_.close();
        if (!out_) throw DatasetError(DatasetErrorKind::io, "write failed for " + tmp_.string());
        std::error_code ec;
        std::filesystem::rename(tmp_, target_, ec);
        if (ec) throw DatasetError(DatasetErrorKind::io, "cannot rename onto " + target_.string() + ": " + ec.message());
        committed_ = true;
    }

private:
    std::filesystem::path target_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

void read_header(ByteReader& r, const std::array<char, 4>& expected, std::uint32_t& count, std::uint32_t& n,
                 std::uint32_t& layers)
{
    if (!r.has(4)) throw DatasetError(DatasetErrorKind::truncated, "file shorter than the magic");
    if (r.magic() != expected)
        throw DatasetError(DatasetErrorKind::bad_magic,
                           std::string("expected magic ") + std::string(expected.begin(), expected.end()));
    if (!r.has(kHeaderBytes - 4)) throw DatasetError(DatasetErrorKind::truncated, "incomplete header");
    const auto version = r.u8();
    if (version != kFormatVersion)
        throw DatasetError(DatasetErrorKind::bad_version, "unsupported version " + std::to_string(version));
    count = r.u32();
    n = r.u32();
    layers = r.u32();
}

void read_cube(ByteReader& r, FrequencySpaceCube& cube, std::uint64_t record)
{
    for (auto& v : cube.values()) {
        const float f = r.f32();
        if (!std::isfinite(f))
            throw DatasetError(DatasetErrorKind::non_finite, "non-finite value in record " + std::to_string(record));
        v = f;
    }
}

void read_bits(ByteReader& r, BinaryMap& map, std::uint64_t record, const char* name)
{
    for (auto& v : map.values()) {
        v = r.u8();
        if (v > 1)
            throw DatasetError(DatasetErrorKind::not_binary,
                               std::string(name) + " map of record " + std::to_string(record) + " holds value " +
                                   std::to_string(v));
    }
}

void check_shape(std::uint32_t count, std::uint32_t n, std::uint32_t layers)
{
    if (count > 0 && (n == 0 || layers == 0))
        throw DatasetError(DatasetErrorKind::shape_mismatch, "zero grid size or layer count");
}

} // namespace

std::uint64_t dataset_file_size(std::uint64_t records, std::uint32_t n, std::uint32_t layers)
{
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    return kHeaderBytes + 4ULL * layers + 1 + records * (8 + 4 + 8 + 2 * 4 * cells * layers + 2 * cells);
}

std::uint64_t prediction_file_size(std::uint64_t records, std::uint32_t n, std::uint32_t layers)
{
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    return kHeaderBytes + records * (8 + 4 * cells * layers);
}

std::size_t write_dataset(const std::vector<ScenarioRecord>& records, const std::filesystem::path& path)
{
    if (records.empty()) throw DatasetError(DatasetErrorKind::shape_mismatch, "no records to write");
    const ScenarioRecord& first = records.front();
    if (first.layers() > 255 || first.target_index < 0 || first.target_index >= first.layers())
        throw DatasetError(DatasetErrorKind::shape_mismatch, "invalid layer count or target index");
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        const bool ok = rec.truth.size() == first.size() && rec.truth.layers() == first.layers() &&
                        rec.incomplete.same_shape(rec.truth) && rec.city.size() == first.size() &&
                        rec.sampling.size() == first.size() && rec.frequencies_mhz == first.frequencies_mhz &&
                        rec.target_index == first.target_index &&
                        static_cast<int>(rec.frequencies_mhz.size()) == first.layers();
        if (!ok)
            throw DatasetError(DatasetErrorKind::shape_mismatch,
                               "record " + std::to_string(r) + " disagrees with record 0 on shape or frequencies");
        for (const auto* cube : {&rec.truth, &rec.incomplete})
            for (double v : cube->values())
                if (!std::isfinite(static_cast<float>(v)))
                    throw DatasetError(DatasetErrorKind::non_finite, "non-finite value in record " + std::to_string(r));
        for (const auto* map : {&rec.city, &rec.sampling})
            for (auto v : map->values())
                if (v > 1)
                    throw DatasetError(DatasetErrorKind::not_binary,
                                       "record " + std::to_string(r) + " has a non-binary semantic map");
    }

    AtomicFile file(path);
    ByteWriter w;
    w.raw(kDatasetMagic);
    w.u8(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(records.size()));
    w.u32(static_cast<std::uint32_t>(first.size()));
    w.u32(static_cast<std::uint32_t>(first.layers()));
    for (double f : first.frequencies_mhz) w.f32(f);
    w.u8(static_cast<std::uint8_t>(first.target_index));
    w.flush_to(file.stream());

    for (const auto& rec : records) {
        w.u64(rec.scene_id);
        w.f32(rec.density);
        w.u64(rec.seed);
        w.cube(rec.truth);
        w.cube(rec.incomplete);
        w.bits(rec.city);
        w.bits(rec.sampling);
        w.flush_to(file.stream());
    }
    file.commit();
    return dataset_file_size(records.size(), static_cast<std::uint32_t>(first.size()),
                             static_cast<std::uint32_t>(first.layers()));
}

std::vector<ScenarioRecord> read_dataset(const std::filesystem::path& path)
{
    ByteReader r(slurp(path));
    std::uint32_t count = 0, n = 0, layers = 0;
    read_header(r, kDatasetMagic, count, n, layers);
    check_shape(count, n, layers);
    if (!r.has(4ULL * layers + 1)) throw DatasetError(DatasetErrorKind::truncated, "incomplete frequency table");
    std::vector<double> freqs(layers);
    for (auto& f : freqs) {
        const float v = r.f32();
        if (!std::isfinite(v)) throw DatasetError(DatasetErrorKind::non_finite, "non-finite frequency");
        f = v;
    }
    const int target = r.u8();
    if (layers > 0 && target >= static_cast<int>(layers))
        throw DatasetError(DatasetErrorKind::shape_mismatch, "target index beyond layer count");

    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    const std::uint64_t record_bytes = 8 + 4 + 8 + 2 * 4 * cells * layers + 2 * cells;
    std::vector<ScenarioRecord> out;
    out.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        if (!r.has(record_bytes))
            throw DatasetError(DatasetErrorKind::truncated, "file ends inside record " + std::to_string(k) + " of " +
                                                                std::to_string(count));
        ScenarioRecord rec;
        rec.scene_id = r.u64();
        rec.density = r.f32();
        if (!std::isfinite(rec.density))
            throw DatasetError(DatasetErrorKind::non_finite, "non-finite density in record " + std::to_string(k));
        rec.seed = r.u64();
        rec.frequencies_mhz = freqs;
        rec.target_index = target;
        rec.truth = FrequencySpaceCube(static_cast<int>(n), static_cast<int>(layers));
        rec.incomplete = FrequencySpaceCube(static_cast<int>(n), static_cast<int>(layers));
        read_cube(r, rec.truth, k);
        read_cube(r, rec.incomplete, k);
        rec.city = BinaryMap(static_cast<int>(n));
        rec.sampling = BinaryMap(static_cast<int>(n));
        read_bits(r, rec.city, k, "city");
        read_bits(r, rec.sampling, k, "sampling");
        out.push_back(std::move(rec));
    }
    if (r.remaining() != 0)
        throw DatasetError(DatasetErrorKind::shape_mismatch,
                           std::to_string(r.remaining()) + " trailing bytes after the last record");
    return out;
}

std::size_t write_predictions(const std::vector<PredictionRecord>& records, const std::filesystem::path& path)
{
    const int n = records.empty() ? 0 : records.front().estimate.size();
    const int layers = records.empty() ? 0 : records.front().estimate.layers();
    for (std::size_t r = 0; r < records.size(); ++r)
        if (records[r].estimate.size() != n || records[r].estimate.layers() != layers)
            throw DatasetError(DatasetErrorKind::shape_mismatch,
                               "prediction " + std::to_string(r) + " disagrees with prediction 0 on shape");

    AtomicFile file(path);
    ByteWriter w;
    w.raw(kPredictionMagic);
    w.u8(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(records.size()));
    w.u32(static_cast<std::uint32_t>(n));
    w.u32(static_cast<std::uint32_t>(layers));
    w.flush_to(file.stream());
    for (const auto& rec : records) {
        w.u64(rec.scene_id);
        w.cube(rec.estimate);
        w.flush_to(file.stream());
    }
    file.commit();
    return prediction_file_size(records.size(), static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(layers));
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path)
{
    ByteReader r(slurp(path));
    std::uint32_t count = 0, n = 0, layers = 0;
    read_header(r, kPredictionMagic, count, n, layers);
    check_shape(count, n, layers);
    const std::uint64_t record_bytes = 8 + 4ULL * n * n * layers;
    std::vector<PredictionRecord> out;
    out.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        if (!r.has(record_bytes))
            throw DatasetError(DatasetErrorKind::truncated, "file ends inside prediction " + std::to_string(k) +
                                                                " of " + std::to_string(count));
        PredictionRecord rec;
        rec.scene_id = r.u64();
        rec.estimate = FrequencySpaceCube(static_cast<int>(n), static_cast<int>(layers));
        read_cube(r, rec.estimate, k);
        out.push_back(std::move(rec));
    }
    if (r.remaining() != 0)
        throw DatasetError(DatasetErrorKind::shape_mismatch,
                           std::to_string(r.remaining()) + " trailing bytes after the last prediction");
    return out;
}

std::string peek_magic(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError(DatasetErrorKind::io, "cannot open " + path.string());
    std::string magic(4, '\0');
    if (!in.read(magic.data(), 4)) return {};
    return magic;
}

} // namespace specmap
