#include "hartree3d/io.hpp"

#include <bit>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hartree3d/errors.hpp"
#include "hartree3d/kernels.hpp"
#include "hartree3d/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot container assumes a little-endian host");

namespace hartree3d::io {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in, const std::string& path) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("truncated snapshot file '" + path + "'");
    return value;
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

void write_json_report(const std::string& path, json report) {
    report["meta"] = {{"timestamp", utc_timestamp()},
                      {"version", kVersion},
                      {"threads", kernels::thread_budget()}};
    write_text_file(path, report.dump(2) + "\n");
}

std::string format_full(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    (void)ec;
    return std::string(buf, p);
}

std::string observables_csv(const std::vector<ObservableRecord>& records) {
    std::string out = "t,mass,kinetic,potential,total_energy,h1,hsc,linf\n";
    for (const ObservableRecord& r : records) {
        out += format_full(r.t);
        out += ',';
        out += format_full(r.mass);
        out += ',';
        out += format_full(r.kinetic);
        out += ',';
        out += format_full(r.potential);
        out += ',';
        out += format_full(r.total_energy);
        out += ',';
        out += format_full(r.h1);
        out += ',';
        out += format_full(r.hsc);
        out += ',';
        out += format_full(r.linf);
        out += '\n';
    }
    return out;
}

void write_observables_csv(const std::string& path,
                           const std::vector<ObservableRecord>& records) {
    write_text_file(path, observables_csv(records));
}

void write_snapshots(const std::string& path, const Grid& grid,
                     const std::vector<std::pair<double, Field>>& snaps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write("HRT3", 4);
    write_raw(out, static_cast<std::uint32_t>(1));
    write_raw(out, static_cast<std::uint32_t>(grid.m()));
    write_raw(out, static_cast<std::uint32_t>(snaps.size()));
    for (const auto& [t, field] : snaps) {
        if (field.grid() != grid) throw ValidationError("write_snapshots: grid mismatch");
        write_raw(out, t);
        for (const cplx& z : field.phys()) {
            write_raw(out, z.real());
            write_raw(out, z.imag());
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

SnapshotFile read_snapshots(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "HRT3", 4) != 0) {
        throw IoError("'" + path + "' is not a snapshot file (bad magic)");
    }
    const auto version = read_raw<std::uint32_t>(in, path);
    if (version != 1) {
        throw IoError("'" + path + "' has unsupported snapshot version " +
                      std::to_string(version));
    }
    SnapshotFile out;
    out.m = static_cast<int>(read_raw<std::uint32_t>(in, path));
    const auto count = read_raw<std::uint32_t>(in, path);
    const std::size_t points =
        static_cast<std::size_t>(out.m) * static_cast<std::size_t>(out.m) *
        static_cast<std::size_t>(out.m);
    for (std::uint32_t s = 0; s < count; ++s) {
        const double t = read_raw<double>(in, path);
        std::vector<cplx> values(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double re = read_raw<double>(in, path);
            const double im = read_raw<double>(in, path);
            values[i] = cplx(re, im);
        }
        out.snapshots.emplace_back(t, std::move(values));
    }
    return out;
}

} // namespace hartree3d::io
