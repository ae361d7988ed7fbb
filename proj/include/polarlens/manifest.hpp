#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace polarlens {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Reproducibility record written once per output directory. Contains only
// deterministic fields (resolved config, input digests, seeds) so reruns with
// identical inputs produce byte-identical output trees; wall-clock timing is
// reported on stderr instead.
struct RunManifest {
    std::string subcommand;
    nlohmann::ordered_json config;
    std::vector<std::pair<std::string, std::string>> input_digests; // path -> fnv1a64
    std::vector<std::uint64_t> seeds;

    std::string to_json() const;
    void write(const std::string& out_dir) const;
};

} // namespace polarlens
