#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyperrst::cli {

enum class Command { kSample, kRst, kDsf, kAnalyze, kRender };

struct RunManifest {
  Command command = Command::kSample;
  std::string config_path = "defaults";
  std::string out_dir;  // empty: config output_path, then "."
  std::optional<std::uint64_t> seed;
  std::string experiment;  // analyze only; "all" runs every experiment
  std::string edge_style = "arc";  // render only: arc | star
  bool color = true;
  double disc_px = 400.0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// args excludes the program name. Progress and the resolved config go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hyperrst::cli
