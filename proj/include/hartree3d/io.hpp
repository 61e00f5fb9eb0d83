#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hartree3d/field.hpp"
#include "hartree3d/observables.hpp"

namespace hartree3d::io {

using json = nlohmann::json;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Serializes with sorted keys and shortest round-trip doubles, then inserts
// a "meta" object (timestamp, library version, thread budget). Everything
// outside "meta" is byte-deterministic for a fixed seed and thread count.
void write_json_report(const std::string& path, json report);

// Header t,mass,kinetic,potential,total_energy,h1,hsc,linf; one row per
// record; doubles printed with 17 significant digits; LF line endings.
std::string observables_csv(const std::vector<ObservableRecord>& records);
void write_observables_csv(const std::string& path, const std::vector<ObservableRecord>& records);

// Snapshot container: magic "HRT3", u32 version = 1, u32 m, u32 count, then
// per snapshot a f64 time followed by m^3 (re, im) f64 pairs, x fastest.
// Little-endian throughout.
void write_snapshots(const std::string& path, const Grid& grid,
                     const std::vector<std::pair<double, Field>>& snaps);

struct SnapshotFile {
    int m = 0;
    std::vector<std::pair<double, std::vector<cplx>>> snapshots;
};
SnapshotFile read_snapshots(const std::string& path);

// 17-significant-digit scientific form used in the CSV writer.
std::string format_full(double v);

} // namespace hartree3d::io
