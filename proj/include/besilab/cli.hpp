#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "besilab/certificates.hpp"

namespace besilab::cli {

struct RunConfig {
  std::string experiment;
  std::string domain = "ball4";
  int slice = 1;
  std::string fixed = "0,0";
  std::string p;       // experiment default when empty
  std::string depths;  // experiment default when empty
  int depth = 5;
  std::string eps = "2^-3..2^-8";
  std::string radii = "4,8,16,32";
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 20240601;
  double lambda = 2.0;
  std::string v;      // "x1,y1;x2,y2;x3,y3"; the third vector may be omitted
  std::string point;  // four numbers; a boundary point on the first axis when empty
  double spacing = 0.125;
  double tol = 5e-2;
  std::string kind = "perron";
  std::string out = "out";
  int threads = 0;
};

// Runs one experiment; writes report.json, report.csv and figures into config.out.
// Returns 0 when every verdict passes and 2 otherwise; errors propagate as besilab::Error.
int run(const RunConfig& config, std::ostream& log);

// Standalone figures: "perron" (family at config.depth), "triangle" (configuration of config.v),
// "degenerate" (collinear configuration for config.lambda).
std::string emit_figure(const RunConfig& config);

// Full command line: returns 0 / 2 as run(), 1 on any error.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

GammaVec parse_gamma_vec(const std::string& text);
Vec4 parse_vec4(const std::string& text);
Vec4 default_boundary_point(const LevelSetDomain& domain);

}  // namespace besilab::cli
