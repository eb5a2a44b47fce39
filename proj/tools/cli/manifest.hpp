#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qspacing::cli {

inline constexpr const char* kToolName = "qspacing";
inline constexpr const char* kToolVersion = "1.0.0";

/// Everything needed to reproduce a run.
///
/// `params` holds every output-affecting flag in canonical `--flag value` form,
/// so a run can be repeated from the manifest alone. Notes are free-form
/// metadata lines (conventions, warnings). Duration is recorded in the JSON
/// sidecar only; data files stay byte-identical across reruns.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string normalization;
    std::vector<std::string> notes;
    double duration_seconds = 0.0;

    /// `# key: value` header block embedded at the top of data files.
    void write_header(std::ostream& out) const;
    /// JSON sidecar including the wall-clock duration.
    void write_json(const std::filesystem::path& path) const;
    static RunManifest read_json(const std::filesystem::path& path);

    /// Arguments that re-run this manifest, subcommand first.
    [[nodiscard]] std::vector<std::string> replay_args() const;
};

}  // namespace qspacing::cli
