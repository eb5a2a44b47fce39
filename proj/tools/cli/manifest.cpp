#include "cli/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "cli/errors.hpp"

namespace qspacing::cli {

void RunManifest::write_header(std::ostream& out) const {
    out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
    out << "# subcommand: " << subcommand << '\n';
    out << "# seed: " << seed << '\n';
    if (!normalization.empty()) out << "# normalization: " << normalization << '\n';
    for (const auto& [key, value] : params) out << "# param " << key << ": " << value << '\n';
    for (const auto& note : notes) out << "# note: " << note << '\n';
}

void RunManifest::write_json(const std::filesystem::path& path) const {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["normalization"] = normalization;
    j["params"] = params;
    j["notes"] = notes;
    j["duration_seconds"] = duration_seconds;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
}

RunManifest RunManifest::read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read manifest " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.normalization = j.value("normalization", std::string{});
        m.params = j.at("params").get<std::map<std::string, std::string>>();
        m.notes = j.value("notes", std::vector<std::string>{});
        m.duration_seconds = j.value("duration_seconds", 0.0);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> RunManifest::replay_args() const {
    std::vector<std::string> args{subcommand};
    for (const auto& [key, value] : params) {
        args.push_back(key);
        args.push_back(value);
    }
    return args;
}

}  // namespace qspacing::cli
