#include "bohmflow/output.hpp"

#include "bohmflow/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

namespace bohmflow {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
    return std::string(buf.data(), res.ptr);
}

void ensure_writable(const std::filesystem::path& path) {
    std::error_code ec;
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError(path.string(), "cannot create directory " + parent.string() + ": " + ec.message());
    }
    if (std::filesystem::is_directory(path, ec)) throw IoError(path.string(), "path is a directory");
    const bool existed = std::filesystem::exists(path, ec);
    {
        std::ofstream probe(path, std::ios::app);
        if (!probe) throw IoError(path.string(), "cannot open for writing");
    }
    if (!existed) std::filesystem::remove(path, ec);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    ensure_writable(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError(path.string(), "write failed");
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot read file");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw IoError(path.string(), "hash initialisation failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string snapshots_csv(const std::vector<ComplexField1D>& snapshots) {
    std::string s = "z,x,re_psi,im_psi,density\n";
    for (const auto& f : snapshots) {
        const std::string z = format_number(f.z());
        for (int m = 0; m < f.grid().n(); ++m) {
            const cplx v = f[m];
            s += z;
            s += ',';
            s += format_number(f.grid().x(m));
            s += ',';
            s += format_number(v.real());
            s += ',';
            s += format_number(v.imag());
            s += ',';
            s += format_number(std::norm(v));
            s += '\n';
        }
    }
    return s;
}

std::string trajectories_csv(const TrajectorySet& set) {
    std::string s = "traj_id,z,x,flag\n";
    for (size_t t = 0; t < set.positions.size(); ++t) {
        const std::string flag(to_string(set.flags[t]));
        for (size_t k = 0; k < set.z_ladder.size(); ++k) {
            const double x = set.positions[t][k];
            if (!std::isfinite(x)) break;
            s += std::to_string(t);
            s += ',';
            s += format_number(set.z_ladder[k]);
            s += ',';
            s += format_number(x);
            s += ',';
            s += flag;
            s += '\n';
        }
    }
    return s;
}

nlohmann::json build_manifest(const std::string& command, const nlohmann::json& run,
                              const std::vector<ManifestEntry>& files) {
    nlohmann::json j;
    j["engine"] = kEngineName;
    j["version"] = kEngineVersion;
    j["command"] = command;
    j["run"] = run;
    j["files"] = nlohmann::json::array();
    for (const auto& f : files) {
        j["files"].push_back({{"role", f.role},
                              {"path", f.path.generic_string()},
                              {"sha256", sha256_file(f.path)},
                              {"bytes", std::filesystem::file_size(f.path)}});
    }
    return j;
}

} // namespace bohmflow
