#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaitfd/model.hpp"
#include "gaitfd/solver.hpp"

namespace gaitfd::cli {

enum class Command { Solve, Table, Converge, Presets };
enum class Format { Csv, Table, Gnuplot };
enum class Manufactured { Sin, Poly3, ExpDecay };

enum ExitCode : int { kOk = 0, kBadArguments = 2, kSolverBreakdown = 3, kIoFailure = 4 };

class ArgumentError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Command command = Command::Presets;
  std::optional<PresetId> preset;
  std::optional<Manufactured> manufactured;
  std::vector<double> epsilons;
  std::optional<double> split;
  std::optional<std::size_t> n_inner;
  std::optional<std::size_t> n_outer;
  Mode mode = Mode::Decomposed;
  Coupling coupling = Coupling::Matched;
  std::optional<std::string> output_path;
  Format format = Format::Csv;
  std::size_t base_n = 32;
  std::size_t levels = 4;
};

/// Throws ArgumentError when the configuration is incomplete or inconsistent.
void validate(const RunConfig& config);

/// Parses a command line (argv[0] is the program name). Returns nullopt when
/// help was printed to `out`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes a configuration, writing the artifact to `out` unless an output
/// path is set. Diagnostics go to `err`. Returns one of ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Breakdowns during solving map to kSolverBreakdown; everything else that
/// the library rejects is an argument problem.
int exit_code_for(const Error& e);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Problem construction

SmoothFunction<double> manufactured_solution(Manufactured family);
GaitProblem<double> manufactured_problem(Manufactured family, double epsilon);
std::string_view to_string(Manufactured family);

/// Canonical tabulated order when exactly the four published values are
/// requested, ascending otherwise.
std::vector<double> table_column_order(std::vector<double> epsilons);

// ---------------------------------------------------------------------------
// Serialization

/// Shortest round-trip decimal form, padded to at least six decimals.
std::string format_number(double value);
/// Shortest round-trip decimal form, positional for ordinary magnitudes.
std::string format_shortest(double value);

struct CsvRecord {
  double t;
  double z;
  RegionKind region;
  double epsilon;
};

struct EpsilonRun {
  double epsilon;
  SolutionProfile<double> profile;
};

void write_csv(std::ostream& out, const std::vector<EpsilonRun>& runs,
               const std::vector<std::string>& preamble = {});
/// Skips `#` comments and the header; throws ArgumentError on malformed rows.
std::vector<CsvRecord> parse_csv(std::istream& in);
void write_gnuplot(std::ostream& out, const std::vector<EpsilonRun>& runs,
                   const std::vector<std::string>& preamble = {});
/// Time column plus one 4-decimal column per run, in the given run order.
void write_table(std::ostream& out, const std::vector<EpsilonRun>& runs,
                 const std::vector<std::string>& preamble = {});
void write_convergence(std::ostream& out, const ConvergenceReport& report, Format format);

}  // namespace gaitfd::cli
