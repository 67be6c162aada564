#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ample/models/serialization.hpp"
#include "ample/spectral/spectral.hpp"

namespace ample::cli {

using models::Json;

enum class Command { validate, homology, ktheory, oracle, report };
enum class Format { text, structured };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;  // bad flags, unreadable file, command not applicable
inline constexpr int parse = 2;
inline constexpr int validation = 3;
inline constexpr int budget = 4;  // truncation or unresolved colimit
inline constexpr int guard = 5;   // hypothesis-guard refusal
}  // namespace exit_code

struct RunConfig {
  Command command = Command::homology;
  std::filesystem::path model_file;
  std::size_t max_degree = 4;
  std::size_t stab_budget = 32;
  std::vector<linalg::Integer> probe_primes = abelian::ColimitOptions::default_probe_primes();
  abelian::FgAbelianGroup coefficients = abelian::FgAbelianGroup::free(1);
  Format format = Format::text;
  bool assert_collapse_d3 = false;
};

std::string to_string(Command c);

/// Runs one command; the report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

// Report pieces, also used by tests.
Json value_to_json(const homology::HomologyValue& v);
Json homology_to_json(const homology::HomologyResult& h);
Json tail_to_json(const homology::HomologyResult& h);
Json page_to_json(const spectral::E2Page& page);
Json verdict_to_json(const spectral::KTheoryVerdict& v);
Json certificate_to_json(const spectral::HypothesisCertificate& c);

/// Human-readable rendering of a structured report.
std::string render_text(const Json& report);

}  // namespace ample::cli
