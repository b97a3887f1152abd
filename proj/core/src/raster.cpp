#include "polsar/raster.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace polsar {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr float kNaN = std::numeric_limits<float>::quiet_NaN();

template <class T>
T to_little(T v) {
    static_assert(sizeof(T) == 4);
    if constexpr (std::endian::native == std::endian::big) {
        std::uint32_t u;
        std::memcpy(&u, &v, 4);
        u = (u >> 24) | ((u >> 8) & 0xff00U) | ((u << 8) & 0xff0000U) | (u << 24);
        std::memcpy(&v, &u, 4);
    }
    return v;
}

template <class T>
void write_raw(const fs::path& file, const std::vector<T>& plane) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open " + file.string() + " for writing");
    }
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(plane.data()),
                  static_cast<std::streamsize>(plane.size() * sizeof(T)));
    } else {
        for (T v : plane) {
            const T le = to_little(v);
            out.write(reinterpret_cast<const char*>(&le), sizeof(T));
        }
    }
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + file.string());
    }
}

template <class T>
std::vector<T> read_raw(const fs::path& file, std::size_t expected) {
    std::error_code ec;
    if (!fs::exists(file, ec)) {
        throw Error(ErrorCode::MissingBand, "missing band file " + file.filename().string());
    }
    const auto bytes = fs::file_size(file, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot stat " + file.string());
    }
    if (bytes != expected * sizeof(T)) {
        std::ostringstream msg;
        msg << "band " << file.filename().string() << " has " << bytes << " bytes, expected "
            << expected * sizeof(T);
        throw Error(ErrorCode::SizeMismatch, msg.str());
    }
    std::vector<T> plane(expected);
    std::ifstream in(file, std::ios::binary);
    if (!in.read(reinterpret_cast<char*>(plane.data()), static_cast<std::streamsize>(bytes))) {
        throw Error(ErrorCode::Io, "read failed for " + file.string());
    }
    if constexpr (std::endian::native == std::endian::big) {
        for (T& v : plane) {
            v = to_little(v);
        }
    }
    return plane;
}

void write_json(const fs::path& file, const json& j) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open " + file.string() + " for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + file.string());
    }
}

json read_json(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error(ErrorCode::BadMetadata, "cannot read " + file.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadMetadata, file.filename().string() + ": " + e.what());
    }
}

std::pair<int, int> read_dims(const json& j, const fs::path& file) {
    try {
        const int rows = j.at("rows").get<int>();
        const int cols = j.at("cols").get<int>();
        if (rows <= 0 || cols <= 0) {
            throw Error(ErrorCode::BadMetadata, file.string() + ": rows and cols must be positive");
        }
        return {rows, cols};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadMetadata, file.string() + ": " + e.what());
    }
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create directory " + dir.string() + ": " + ec.message());
    }
}

std::size_t count(int rows, int cols) {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

}  // namespace

T3Raster::T3Raster(int r, int c) : rows(r), cols(c) {
    if (r < 0 || c < 0) {
        throw Error(ErrorCode::InvalidParams, "raster dimensions must be nonnegative");
    }
    for (auto& b : bands) {
        b.assign(pixels(), 0.0F);
    }
}

bool T3Raster::valid(std::size_t i) const {
    for (const auto& b : bands) {
        if (!std::isfinite(b[i])) {
            return false;
        }
    }
    return true;
}

CoherencyMatrix T3Raster::matrix(std::size_t i) const {
    auto v = [&](T3Band b) { return static_cast<double>(band(b)[i]); };
    CoherencyMatrix m;
    m.t11 = v(T3Band::T11);
    m.t22 = v(T3Band::T22);
    m.t33 = v(T3Band::T33);
    m.t12 = {v(T3Band::T12Re), v(T3Band::T12Im)};
    m.t13 = {v(T3Band::T13Re), v(T3Band::T13Im)};
    m.t23 = {v(T3Band::T23Re), v(T3Band::T23Im)};
    return m;
}

void T3Raster::set_matrix(std::size_t i, const CoherencyMatrix& m) {
    auto put = [&](T3Band b, double x) { band(b)[i] = static_cast<float>(x); };
    put(T3Band::T11, m.t11);
    put(T3Band::T22, m.t22);
    put(T3Band::T33, m.t33);
    put(T3Band::T12Re, m.t12.real());
    put(T3Band::T12Im, m.t12.imag());
    put(T3Band::T13Re, m.t13.real());
    put(T3Band::T13Im, m.t13.imag());
    put(T3Band::T23Re, m.t23.real());
    put(T3Band::T23Im, m.t23.imag());
}

T3Raster to_t3(const Grid<CoherencyMatrix>& grid) {
    T3Raster out(grid.rows, grid.cols);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.set_matrix(i, grid.data[i]);
    }
    return out;
}

void write_t3(const fs::path& dir, const T3Raster& raster) {
    make_dir(dir);
    for (std::size_t b = 0; b < kT3BandFiles.size(); ++b) {
        if (raster.bands[b].size() != raster.pixels()) {
            throw Error(ErrorCode::SizeMismatch,
                        "band " + std::string(kT3BandFiles[b]) + " does not match rows x cols");
        }
        write_raw(dir / kT3BandFiles[b], raster.bands[b]);
    }
    json meta = {{"rows", raster.rows}, {"cols", raster.cols}, {"description", raster.description}};
    meta["looks"] = raster.looks ? json(*raster.looks) : json(nullptr);
    write_json(dir / "metadata.json", meta);
}

T3Raster read_t3(const fs::path& dir) {
    const fs::path meta_file = dir / "metadata.json";
    const json meta = read_json(meta_file);
    const auto [rows, cols] = read_dims(meta, meta_file);
    T3Raster out;
    out.rows = rows;
    out.cols = cols;
    try {
        if (meta.contains("looks") && !meta.at("looks").is_null()) {
            out.looks = meta.at("looks").get<double>();
        }
        out.description = meta.value("description", std::string{});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadMetadata, meta_file.string() + ": " + e.what());
    }
    for (std::size_t b = 0; b < kT3BandFiles.size(); ++b) {
        out.bands[b] = read_raw<float>(dir / kT3BandFiles[b], out.pixels());
    }
    return out;
}

PowerRaster::PowerRaster(int r, int c, std::string method_name)
    : rows(r), cols(c), method(std::move(method_name)) {
    if (r < 0 || c < 0) {
        throw Error(ErrorCode::InvalidParams, "raster dimensions must be nonnegative");
    }
    ps.assign(pixels(), 0.0F);
    pd.assign(pixels(), 0.0F);
    pv.assign(pixels(), 0.0F);
    pc.assign(pixels(), 0.0F);
}

bool PowerRaster::valid(std::size_t i) const {
    return std::isfinite(ps[i]) && std::isfinite(pd[i]) && std::isfinite(pv[i]) && std::isfinite(pc[i]);
}

PowerComponents PowerRaster::at(std::size_t i) const {
    PowerComponents p;
    p.ps = ps[i];
    p.pd = pd[i];
    p.pv = pv[i];
    p.pc = pc[i];
    p.total = p.sum();
    return p;
}

void PowerRaster::set(std::size_t i, const PowerComponents& p) {
    ps[i] = static_cast<float>(p.ps);
    pd[i] = static_cast<float>(p.pd);
    pv[i] = static_cast<float>(p.pv);
    pc[i] = static_cast<float>(p.pc);
}

void PowerRaster::set_invalid(std::size_t i) {
    ps[i] = pd[i] = pv[i] = pc[i] = kNaN;
    if (theta0_deg) {
        (*theta0_deg)[i] = kNaN;
    }
    if (delta_h_max) {
        (*delta_h_max)[i] = kNaN;
    }
}

void write_power(const fs::path& dir, const PowerRaster& raster) {
    make_dir(dir);
    json planes = json::array({"Ps", "Pd", "Pv", "Pc"});
    write_raw(dir / "Ps.bin", raster.ps);
    write_raw(dir / "Pd.bin", raster.pd);
    write_raw(dir / "Pv.bin", raster.pv);
    write_raw(dir / "Pc.bin", raster.pc);
    if (raster.theta0_deg) {
        write_raw(dir / "theta0_deg.bin", *raster.theta0_deg);
        planes.push_back("theta0_deg");
    }
    if (raster.delta_h_max) {
        write_raw(dir / "delta_h_max.bin", *raster.delta_h_max);
        planes.push_back("delta_h_max");
    }
    write_json(dir / "metadata.json",
               {{"rows", raster.rows}, {"cols", raster.cols}, {"method", raster.method}, {"planes", planes}});
}

PowerRaster read_power(const fs::path& dir) {
    const fs::path meta_file = dir / "metadata.json";
    const json meta = read_json(meta_file);
    const auto [rows, cols] = read_dims(meta, meta_file);
    PowerRaster out;
    out.rows = rows;
    out.cols = cols;
    out.method = meta.value("method", std::string{});
    const std::size_t n = count(rows, cols);
    out.ps = read_raw<float>(dir / "Ps.bin", n);
    out.pd = read_raw<float>(dir / "Pd.bin", n);
    out.pv = read_raw<float>(dir / "Pv.bin", n);
    out.pc = read_raw<float>(dir / "Pc.bin", n);
    if (fs::exists(dir / "theta0_deg.bin")) {
        out.theta0_deg = read_raw<float>(dir / "theta0_deg.bin", n);
    }
    if (fs::exists(dir / "delta_h_max.bin")) {
        out.delta_h_max = read_raw<float>(dir / "delta_h_max.bin", n);
    }
    return out;
}

void write_angles(const fs::path& dir, const AngleRaster& raster) {
    make_dir(dir);
    write_raw(dir / "theta_deg.bin", raster.theta_deg);
    write_json(dir / "metadata.json",
               {{"rows", raster.rows}, {"cols", raster.cols}, {"method", raster.method}, {"units", "degrees"}});
}

AngleRaster read_angles(const fs::path& dir) {
    const fs::path meta_file = dir / "metadata.json";
    const json meta = read_json(meta_file);
    const auto [rows, cols] = read_dims(meta, meta_file);
    AngleRaster out;
    out.rows = rows;
    out.cols = cols;
    out.method = meta.value("method", std::string{});
    out.theta_deg = read_raw<float>(dir / "theta_deg.bin", count(rows, cols));
    return out;
}

void write_ground_truth(const fs::path& dir, const GroundTruth& truth) {
    make_dir(dir);
    write_raw(dir / "theta_true_deg.bin", truth.theta_true_deg.data);
    write_raw(dir / "class_label.bin", truth.class_label.data);
    write_json(dir / "truth.json", {{"rows", truth.theta_true_deg.rows},
                                    {"cols", truth.theta_true_deg.cols},
                                    {"classes", truth.class_names}});
}

GroundTruth read_ground_truth(const fs::path& dir) {
    const fs::path meta_file = dir / "truth.json";
    const json meta = read_json(meta_file);
    const auto [rows, cols] = read_dims(meta, meta_file);
    GroundTruth out;
    out.theta_true_deg = Grid<float>(rows, cols);
    out.class_label = Grid<std::int32_t>(rows, cols);
    out.theta_true_deg.data = read_raw<float>(dir / "theta_true_deg.bin", count(rows, cols));
    out.class_label.data = read_raw<std::int32_t>(dir / "class_label.bin", count(rows, cols));
    try {
        out.class_names = meta.value("classes", std::vector<std::string>{});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadMetadata, meta_file.string() + ": " + e.what());
    }
    return out;
}

void write_plane(const fs::path& file, const std::vector<float>& plane) {
    write_raw(file, plane);
}

std::vector<float> read_plane(const fs::path& file, std::size_t expected) {
    return read_raw<float>(file, expected);
}

}  // namespace polsar
