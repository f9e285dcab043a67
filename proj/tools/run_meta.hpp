#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace placenet::cli {

std::string sha256_file(const std::filesystem::path& file);

// run_meta.json: subcommand, seed, options and input digests. Keys are
// sorted and no timestamps are written, so reruns produce the same bytes.
class RunMeta {
public:
    explicit RunMeta(std::string subcommand) : subcommand_(std::move(subcommand)) {}

    void seed(std::uint64_t s) { seed_ = s; }
    void option(const std::string& key, nlohmann::json value) { options_[key] = std::move(value); }
    void input(const std::string& role, const std::filesystem::path& file);
    void output(const std::string& name) { outputs_.push_back(name); }
    void note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }

    void write(const std::filesystem::path& out_dir) const;

private:
    std::string subcommand_;
    std::uint64_t seed_ = 0;
    nlohmann::json options_ = nlohmann::json::object();
    nlohmann::json inputs_ = nlohmann::json::array();
    nlohmann::json notes_ = nlohmann::json::object();
    std::vector<std::string> outputs_;
};

}  // namespace placenet::cli
