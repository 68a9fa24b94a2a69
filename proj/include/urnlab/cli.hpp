#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "urnlab/distribution_oracle.hpp"
#include "urnlab/serialization.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab::cli {

enum class Command { Moments, Limits, Dist, Simulate, Compare };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Moments;
  UrnSpec spec;
  std::int64_t n = 8;  // n_max for moments/compare, the time horizon otherwise
  unsigned s_max = 4;
  std::int64_t runs = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::int64_t max_terms = std::int64_t{1} << 22;
  Format format = Format::Json;
  std::string output;  // empty means standard output
  unsigned workers = 1;
  std::size_t state_cap = kDefaultStateCap;
};

// Thrown by parse_config for --help; what() is the help text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses arguments after the program name. Throws Error(UsageError).
RunConfig parse_config(const std::vector<std::string>& args);

// Builds the output document; throws library errors unchanged.
Json build_document(const RunConfig& config);
std::string render_csv(const RunConfig& config, const Json& document);

// Writes the document and returns 0, 1 on a computational error, 2 on a
// usage error. Failures are reported as {"error": {...}} on `out`.
int execute(const RunConfig& config, std::ostream& out);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urnlab::cli
