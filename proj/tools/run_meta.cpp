#include "run_meta.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "placenet/error.hpp"

namespace placenet::cli {

std::string sha256_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open '" + file.string() + "'");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

void RunMeta::input(const std::string& role, const std::filesystem::path& file) {
    inputs_.push_back({{"role", role}, {"path", file.generic_string()}, {"sha256", sha256_file(file)}});
}

void RunMeta::write(const std::filesystem::path& out_dir) const {
    nlohmann::json j;
    j["subcommand"] = subcommand_;
    j["seed"] = seed_;
    j["options"] = options_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    if (!notes_.empty()) j["notes"] = notes_;
    std::ofstream out(out_dir / "run_meta.json", std::ios::binary);
    if (!out) throw DataError("cannot write '" + (out_dir / "run_meta.json").string() + "'");
    out << j.dump(2) << '\n';
}

}  // namespace placenet::cli
