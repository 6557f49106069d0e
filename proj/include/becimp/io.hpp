#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "becimp/solver.hpp"

namespace becimp {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Row-major real matrix; rows are frames, columns grid nodes.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double dz = 0.0;
    double dt_snapshot = 0.0;
    std::vector<double> data;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::vector<double> row(std::size_t r) const;
};

/// Shortest text that parses back to the same double.
std::string format_number(double v);

/// Writes through a temporary file that is renamed on success and removed on
/// failure, so a reader never sees a half-written file.
void write_file(const fs::path& path, const std::string& content);
void write_file(const fs::path& path, const std::vector<char>& bytes);

// Binary layout: 64-byte header {char magic[8] = "BECIMP01", u64 rows, u64 cols,
// f64 dz, f64 dt_snapshot, 24 zero bytes}, then rows*cols little-endian f64.
inline constexpr char kMatrixMagic[8] = {'B', 'E', 'C', 'I', 'M', 'P', '0', '1'};
inline constexpr std::size_t kMatrixHeaderBytes = 64;

void write_matrix_binary(const fs::path& path, const Matrix& m);
Matrix read_matrix_binary(const fs::path& path);
/// Comma separated, one row per line, no header.
void write_matrix_csv(const fs::path& path, const Matrix& m);
Matrix read_matrix_csv(const fs::path& path);

/// CSV table with a header line.
void write_table(const fs::path& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows);
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<double> column(const std::string& name) const;
};
Table read_table(const fs::path& path);

/// density_B / density_I of every frame as a matrix.
Matrix density_matrix(const SnapshotSeries& s, bool impurity);

/// series_header.txt plus <prefix>density_B and <prefix>density_I in both
/// encodings.  Returns the files written.
std::vector<fs::path> write_snapshot_series(const SnapshotSeries& s, const fs::path& dir,
                                            const std::string& prefix = "");

/// Derives the per-figure files from the outputs of a finished run in run_dir.
/// Throws IoError naming the first missing input.
std::vector<fs::path> emit_plot_data(const fs::path& run_dir);

/// Hex SHA-256 of a file.
std::string sha256_file(const fs::path& path);

struct ManifestInfo {
    std::string scenario;
    std::string resolved_config;  // sorted key = value text
    double wall_seconds = 0.0;
    int n_points = 0;
    double half_width = 0.0;
    long steps = 0;
    long relax_iterations = 0;
    bool converged = true;
    bool aborted = false;
    std::string abort_reason;
    int exit_code = 0;
};

/// manifest.json listing every other file under dir with its checksum.
/// Must be the last file written.
void write_manifest(const fs::path& dir, const ManifestInfo& info);

}  // namespace becimp
