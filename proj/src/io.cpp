#include "becimp/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#ifndef BECIMP_VERSION
#define BECIMP_VERSION "dev"
#endif

namespace becimp {

std::vector<double> Matrix::row(std::size_t r) const {
    return {data.begin() + static_cast<std::ptrdiff_t>(r * cols),
            data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

double parse_number(std::string_view s, const fs::path& where) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw IoError(where.string() + ": bad number '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put_u64(char* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

void put_f64(char* p, double d) { put_u64(p, std::bit_cast<std::uint64_t>(d)); }
double get_f64(const char* p) { return std::bit_cast<double>(get_u64(p)); }

}  // namespace

void write_file(const fs::path& path, const std::vector<char>& bytes) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    auto tmp = path;
    tmp += ".part";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (out) out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " into place");
    }
}

void write_file(const fs::path& path, const std::string& content) {
    write_file(path, std::vector<char>(content.begin(), content.end()));
}

void write_matrix_binary(const fs::path& path, const Matrix& m) {
    if (m.data.size() != m.rows * m.cols) throw IoError("matrix size mismatch for " + path.string());
    std::vector<char> bytes(kMatrixHeaderBytes + 8 * m.data.size(), 0);
    std::memcpy(bytes.data(), kMatrixMagic, 8);
    put_u64(bytes.data() + 8, m.rows);
    put_u64(bytes.data() + 16, m.cols);
    put_f64(bytes.data() + 24, m.dz);
    put_f64(bytes.data() + 32, m.dt_snapshot);
    char* p = bytes.data() + kMatrixHeaderBytes;
    for (double v : m.data) {
        put_f64(p, v);
        p += 8;
    }
    write_file(path, bytes);
}

Matrix read_matrix_binary(const fs::path& path) {
    const auto raw = slurp(path);
    if (raw.size() < kMatrixHeaderBytes || std::memcmp(raw.data(), kMatrixMagic, 8) != 0)
        throw IoError(path.string() + ": not a BECIMP01 matrix");
    Matrix m;
    m.rows = get_u64(raw.data() + 8);
    m.cols = get_u64(raw.data() + 16);
    m.dz = get_f64(raw.data() + 24);
    m.dt_snapshot = get_f64(raw.data() + 32);
    if (raw.size() != kMatrixHeaderBytes + 8 * m.rows * m.cols)
        throw IoError(path.string() + ": truncated matrix");
    m.data.resize(m.rows * m.cols);
    const char* p = raw.data() + kMatrixHeaderBytes;
    for (auto& v : m.data) {
        v = get_f64(p);
        p += 8;
    }
    return m;
}

void write_matrix_csv(const fs::path& path, const Matrix& m) {
    std::string out;
    out.reserve(m.data.size() * 24);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c) out += ',';
            out += format_number(m.at(r, c));
        }
        out += '\n';
    }
    write_file(path, out);
}

Matrix read_matrix_csv(const fs::path& path) {
    const auto text = slurp(path);
    Matrix m;
    std::string_view rest(text);
    while (!rest.empty()) {
        auto nl = rest.find('\n');
        auto line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (m.rows == 0) m.cols = cells.size();
        if (cells.size() != m.cols) throw IoError(path.string() + ": ragged row");
        for (auto c : cells) m.data.push_back(parse_number(c, path));
        ++m.rows;
    }
    return m;
}

void write_table(const fs::path& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw IoError("table row width mismatch: " + path.string());
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    write_file(path, out);
}

std::vector<double> Table::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw IoError("no column '" + name + "'");
    const auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
}

Table read_table(const fs::path& path) {
    const auto text = slurp(path);
    Table t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty table");
    for (auto c : split(line, ',')) t.columns.emplace_back(c);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != t.columns.size()) throw IoError(path.string() + ": ragged row");
        std::vector<double> row;
        for (auto c : cells) row.push_back(parse_number(c, path));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Matrix density_matrix(const SnapshotSeries& s, bool impurity) {
    if (s.empty()) throw std::invalid_argument("empty snapshot series");
    Matrix m;
    const auto& g = *s.frames.front().psi_B.grid;
    m.rows = s.size();
    m.cols = static_cast<std::size_t>(g.size());
    m.dz = g.dz();
    m.dt_snapshot = s.dt * s.stride;
    m.data.reserve(m.rows * m.cols);
    for (const auto& f : s.frames) {
        const auto d = impurity ? f.density_I() : f.density_B();
        m.data.insert(m.data.end(), d.begin(), d.end());
    }
    return m;
}

namespace {

std::string params_text(const ModelParams& p) {
    std::string s;
    s += "G_B = " + format_number(p.G_B) + "\n";
    s += "g_IB = " + format_number(p.g_IB) + "\n";
    s += "G_IB = " + format_number(p.G_IB()) + "\n";
    s += "G_BI = " + format_number(p.G_BI()) + "\n";
    s += "N_B = " + std::to_string(p.N_B) + "\n";
    s += "N_I = " + std::to_string(p.N_I) + "\n";
    s += "alpha = " + format_number(p.alpha) + "\n";
    s += std::string("trap_B_on = ") + (p.trap_B_on ? "true" : "false") + "\n";
    s += std::string("trap_I_on = ") + (p.trap_I_on ? "true" : "false") + "\n";
    return s;
}

}  // namespace

std::vector<fs::path> write_snapshot_series(const SnapshotSeries& s, const fs::path& dir,
                                            const std::string& prefix) {
    if (s.empty()) throw std::invalid_argument("empty snapshot series");
    const auto& g = *s.frames.front().psi_B.grid;
    std::vector<fs::path> written;
    auto track = [&](const fs::path& p) { written.push_back(p); };
    try {
        std::string h;
        h += "n_points = " + std::to_string(g.size()) + "\n";
        h += "half_width = " + format_number(g.half_width()) + "\n";
        h += "dz = " + format_number(g.dz()) + "\n";
        h += "dt = " + format_number(s.dt) + "\n";
        h += "snapshot_stride = " + std::to_string(s.stride) + "\n";
        h += "dt_snapshot = " + format_number(s.dt * s.stride) + "\n";
        h += "rows = " + std::to_string(s.size()) + "\n";
        h += "cols = " + std::to_string(g.size()) + "\n";
        h += std::string("aborted = ") + (s.aborted ? "true" : "false") + "\n";
        if (s.aborted) h += "abort_reason = " + s.abort_reason + "\n";
        h += "# parameters at t = 0\n" + params_text(s.frames.front().params);
        h += "times =";
        for (double t : s.times()) h += " " + format_number(t);
        h += "\n";
        const auto header = dir / (prefix + "series_header.txt");
        write_file(header, h);
        track(header);
        for (bool imp : {false, true}) {
            const auto m = density_matrix(s, imp);
            const std::string stem = prefix + (imp ? "density_I" : "density_B");
            write_matrix_csv(dir / (stem + ".csv"), m);
            track(dir / (stem + ".csv"));
            write_matrix_binary(dir / (stem + ".bin"), m);
            track(dir / (stem + ".bin"));
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return written;
}

namespace {

std::map<std::string, std::string> read_kv(const fs::path& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void require(const fs::path& p) {
    if (!fs::exists(p)) throw IoError("missing input for plot data: " + p.string());
}

std::vector<double> header_times(const fs::path& header) {
    const auto kv = read_kv(header);
    auto it = kv.find("times");
    if (it == kv.end()) throw IoError(header.string() + ": no times");
    std::vector<double> t;
    std::istringstream in(it->second);
    std::string tok;
    while (in >> tok) t.push_back(parse_number(tok, header));
    return t;
}

// First row: "t" then the z nodes; then one row per frame: time, values.
void write_space_time(const fs::path& out, const Matrix& m, const std::vector<double>& times,
                      double half_width) {
    if (times.size() != m.rows) throw IoError("frame count mismatch writing " + out.string());
    std::string s = "t";
    for (std::size_t c = 0; c < m.cols; ++c) s += "," + format_number(-half_width + c * m.dz);
    s += '\n';
    for (std::size_t r = 0; r < m.rows; ++r) {
        s += format_number(times[r]);
        for (std::size_t c = 0; c < m.cols; ++c) s += "," + format_number(m.at(r, c));
        s += '\n';
    }
    write_file(out, s);
}

std::vector<fs::path> space_time_set(const fs::path& dir, const std::string& fig,
                                     const std::vector<std::string>& stems) {
    require(dir / "series_header.txt");
    const auto times = header_times(dir / "series_header.txt");
    const auto kv = read_kv(dir / "series_header.txt");
    const double L = parse_number(kv.at("half_width"), dir / "series_header.txt");
    std::vector<fs::path> out;
    for (const auto& stem : stems) {
        require(dir / (stem + ".bin"));
        const auto m = read_matrix_binary(dir / (stem + ".bin"));
        const auto target = dir / (fig + "_" + stem + ".csv");
        write_space_time(target, m, times, L);
        out.push_back(target);
    }
    return out;
}

void copy_columns(const fs::path& in, const fs::path& out, const std::vector<std::string>& from,
                  const std::vector<std::string>& to) {
    require(in);
    const auto t = read_table(in);
    std::vector<std::vector<double>> cols;
    for (const auto& c : from) cols.push_back(t.column(c));
    std::vector<std::vector<double>> rows(t.rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& c : cols) rows[r].push_back(c[r]);
    write_table(out, to, rows);
}

}  // namespace

std::vector<fs::path> emit_plot_data(const fs::path& run_dir) {
    const auto cfg = run_dir / "resolved.cfg";
    require(cfg);
    const auto kv = read_kv(cfg);
    auto it = kv.find("scenario");
    if (it == kv.end()) throw IoError(cfg.string() + ": no scenario key");
    const auto& sc = it->second;

    std::vector<fs::path> out;
    if (sc == "relax") {
        out.push_back(run_dir / "fig1_density_cut.csv");
        copy_columns(run_dir / "equilibrium.csv", out.back(), {"z", "n_B", "n_I"},
                     {"z", "n_B", "n_I"});
    } else if (sc == "zeno_decay") {
        out.push_back(run_dir / "fig5_energy_trace.csv");
        copy_columns(run_dir / "energy_trace.csv", out.back(), {"tau", "E_I"}, {"itau", "E_I"});
    } else if (sc == "coupling_scan") {
        out.push_back(run_dir / "fig6_effective_mass.csv");
        copy_columns(run_dir / "coupling_scan.csv", out.back(), {"g_IB", "m_eff_ratio"},
                     {"g_IB", "m_eff_ratio"});
    } else if (sc == "tof") {
        out = space_time_set(run_dir, "fig2", {"density_B", "density_I", "depleted_B"});
    } else if (sc == "quench" && fs::exists(run_dir / "quench_scan.csv")) {
        const auto t = read_table(run_dir / "quench_scan.csv");
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            for (auto& p : space_time_set(run_dir / ("g_" + std::to_string(i)), "fig7", {"density_I"}))
                out.push_back(p);
    } else if (sc == "quench") {
        out = space_time_set(run_dir, "fig3", {"density_B", "density_I"});
        require(run_dir / "fringes.csv");
        out.push_back(run_dir / "fig7_fringe_cut.csv");
        copy_columns(run_dir / "fringes.csv", out.back(), {"z", "n_I"}, {"z", "n_I"});
    } else if (sc == "mass_scan") {
        require(run_dir / "mass_scan.csv");
        const auto t = read_table(run_dir / "mass_scan.csv");
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const auto sub = run_dir / ("alpha_" + std::to_string(i));
            for (auto& p : space_time_set(sub, "fig4", {"density_B", "density_I"})) out.push_back(p);
            out.push_back(sub / "fig4_fringe_cut.csv");
            copy_columns(sub / "fringes.csv", out.back(), {"z", "n_I"}, {"z", "n_I"});
        }
    } else if (sc == "analyze") {
        require(run_dir / "analysis.json");
    } else {
        throw IoError("unknown scenario '" + sc + "' in " + cfg.string());
    }
    return out;
}

std::string sha256_file(const fs::path& path) {
    const auto data = slurp(path);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed for " + path.string());
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

void write_manifest(const fs::path& dir, const ManifestInfo& info) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["version"] = BECIMP_VERSION;
    j["scenario"] = info.scenario;
    j["exit_code"] = info.exit_code;
    j["wall_seconds"] = info.wall_seconds;
    j["grid"] = {{"n_points", info.n_points}, {"half_width", info.half_width}};
    j["steps"] = info.steps;
    j["relax_iterations"] = info.relax_iterations;
    j["converged"] = info.converged;
    j["aborted"] = info.aborted;
    if (info.aborted) j["abort_reason"] = info.abort_reason;

    ordered_json cfg = ordered_json::object();
    std::istringstream in(info.resolved_config);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find(" = ");
        if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = cfg;

    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    ordered_json list = ordered_json::array();
    for (const auto& f : files)
        list.push_back({{"path", fs::relative(f, dir).generic_string()},
                        {"bytes", fs::file_size(f)},
                        {"sha256", sha256_file(f)}});
    j["files"] = list;
    write_file(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace becimp
