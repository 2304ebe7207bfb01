#include "ekrf/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace ekrf {

nlohmann::json RunManifest::to_json() const {
    return {{"command_line", command_line}, {"parameters", parameters},   {"tool_version", tool_version},
            {"elapsed", elapsed},           {"output", output},           {"output_sha256", output_sha256}};
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string manifest_path(const std::string& output_path) { return output_path + ".manifest.json"; }

namespace {
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
}  // namespace

void write_manifest(RunManifest manifest, const std::string& output_path) {
    manifest.output = output_path;
    manifest.output_sha256 = sha256_hex(read_file(output_path));
    std::ofstream out(manifest_path(output_path), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + manifest_path(output_path));
    out << manifest.to_json().dump(2) << "\n";
}

bool verify_manifest(const std::string& output_path) {
    try {
        const auto j = nlohmann::json::parse(read_file(manifest_path(output_path)));
        return j.at("output_sha256").get<std::string>() == sha256_hex(read_file(output_path));
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace ekrf
