#pragma once

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hmt/arrangement.hpp"
#include "hmt/schober.hpp"

namespace hmt {

struct DatasetOptions {
    std::size_t cutoff = 3;
    std::int64_t radius = 1;
    std::size_t order = 8;
    std::uint64_t seed = 1;
    ParameterWindow window;  // face window for the schober checks; default [-3/2, 3/2]^k
};

struct DatasetSpec {
    std::string name;
    TorusDatum torus;
    ParameterLift parameter;
    DatasetOptions options;
    bool singular = false;  // parameter deliberately on a wall
    std::string note;
};

// Validates against schema "dataset/1".
DatasetSpec dataset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DatasetSpec& d);

std::vector<DatasetSpec> corpus();
std::optional<DatasetSpec> corpus_entry(const std::string& name);

// HML_THREADS, at least 1; defaults to the hardware concurrency.
std::size_t thread_budget();

namespace exit_code {
constexpr int ok = 0;
constexpr int verification_failed = 1;
constexpr int usage = 2;
constexpr int internal = 3;
}  // namespace exit_code

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmt
