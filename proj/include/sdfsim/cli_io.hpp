#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdfsim/sim_harness.hpp"

namespace sdfsim {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitRuntimeError = 3;

// FNV-1a over the scenario file bytes, as a 16-digit hex string.
std::string scenario_digest(const std::string& text);

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir);
int cmd_sweep(const std::string& scenario_path, int n_seeds,
              std::optional<std::uint64_t> base_seed, const std::string& out_dir);
int cmd_validate(const std::string& scenario_path);

}  // namespace sdfsim
