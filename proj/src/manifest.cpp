#include "polarlens/manifest.hpp"

#include <filesystem>
#include <fstream>

#include "polarlens/errors.hpp"

namespace polarlens {

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["toolkit_version"] = kToolkitVersion;
    j["subcommand"] = subcommand;
    j["config"] = config;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : input_digests)
        inputs.push_back({{"path", path}, {"fnv1a64", digest}});
    j["inputs"] = inputs;
    j["seeds"] = seeds;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& out_dir) const {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/manifest.json", std::ios::binary);
    if (!f) throw DataError("cannot write manifest under '" + out_dir + "'");
    f << to_json();
}

} // namespace polarlens
