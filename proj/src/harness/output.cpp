#include "hslpp/harness/output.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>

namespace hslpp::harness {

std::string git_blob_sha1(const std::string& content) {
    const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("SHA-1 digest failed");
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

json run_metadata(const RunConfig& cfg) {
    const std::string c = canonical(cfg);
    return {{"schema", "v1"},
            {"config", json::parse(c)},
            {"execution", {{"out", cfg.out}, {"workers", cfg.workers}}},
            {"seed", cfg.model.seed},
            {"config_sha1", git_blob_sha1(c)}};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const RunConfig& cfg, const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# schema=v1\n# config=" << canonical(cfg) << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("csv row width mismatch in " + path_.string());
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    if (!out_) throw std::runtime_error("write failed: " + path_.string());
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path ensure_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
    return p;
}

}  // namespace hslpp::harness
