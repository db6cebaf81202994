#include "gaitfd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gaitfd/reference_tables.hpp"

namespace gaitfd::cli {
namespace {

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Table: return "table";
    case Command::Converge: return "converge";
    case Command::Presets: return "presets";
  }
  return "";
}

std::string_view variant_name(Variant v) {
  return v == Variant::AsWritten ? "as-written" : "table-consistent";
}

std::string_view mode_name(Mode m) { return m == Mode::Decomposed ? "decomposed" : "monolithic"; }

GaitProblem<double> build_problem(const RunConfig& c, double eps) {
  if (c.preset) return preset<double>(*c.preset, eps);
  return manufactured_problem(*c.manufactured, eps);
}

double default_split(const RunConfig& c, const GaitProblem<double>& p) {
  if (c.split) return *c.split;
  if (c.preset) return preset_default_split(c.preset->example);
  return 0.01 * p.t_final;
}

SolutionProfile<double> solve_one(const RunConfig& c, double eps) {
  const auto p = build_problem(c, eps);
  const std::size_t n_outer = c.n_outer.value_or(kDefaultOuterIntervals);
  if (c.mode == Mode::Monolithic) return solve_monolithic(p, n_outer);
  const auto plan = build_decomposition(p, default_split(c, p),
                                        c.n_inner.value_or(kDefaultInnerIntervals), n_outer);
  return solve(p, plan, c.coupling);
}

std::vector<std::string> describe(const RunConfig& c) {
  std::ostringstream s;
  s << "gaitfd " << command_name(c.command) << ": ";
  if (c.preset)
    s << "preset " << static_cast<int>(c.preset->example) << " ("
      << variant_name(c.preset->variant) << ")";
  else
    s << "manufactured " << to_string(*c.manufactured);
  s << ", mode " << mode_name(c.mode);
  return {s.str()};
}

void write_comments(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << "# " << l << '\n';
}

std::vector<std::string> block_comments(const EpsilonRun& r) {
  std::vector<std::string> lines{"epsilon=" + format_shortest(r.epsilon)};
  for (const auto& w : r.profile.warnings) lines.push_back("warning: " + w);
  return lines;
}

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

double parse_double(std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ArgumentError("malformed number '" + std::string(field) + "'");
  return v;
}

int emit(const RunConfig& c, const std::string& artifact, std::ostream& out, std::ostream& err) {
  if (!c.output_path) {
    out << artifact;
    out.flush();
    if (!out) {
      err << "error: failed writing to standard output\n";
      return kIoFailure;
    }
    return kOk;
  }
  std::ofstream file(*c.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << *c.output_path << "' for writing\n";
    return kIoFailure;
  }
  file << artifact;
  file.flush();
  if (!file) {
    err << "error: failed writing '" << *c.output_path << "'\n";
    return kIoFailure;
  }
  return kOk;
}

void render_presets(std::ostream& out) {
  for (Example e : {Example::One, Example::Two, Example::Three}) {
    out << "preset " << static_cast<int>(e) << ": " << preset_title(e) << '\n';
    out << "  default t_p = " << format_shortest(preset_default_split(e)) << '\n';
    for (Variant v : {Variant::AsWritten, Variant::TableConsistent}) {
      const PresetId id{e, v};
      out << "  " << variant_name(v) << ": " << preset_equation(id) << '\n';
      out << "    note: " << preset_discrepancy(id) << '\n';
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Manufactured family) {
  switch (family) {
    case Manufactured::Sin: return "sin";
    case Manufactured::Poly3: return "poly3";
    case Manufactured::ExpDecay: return "exp-decay";
  }
  return "";
}

SmoothFunction<double> manufactured_solution(Manufactured family) {
  constexpr double pi = std::numbers::pi;
  switch (family) {
    case Manufactured::Sin:
      return {[](double t) { return std::sin(pi * t); },
              [](double t) { return pi * std::cos(pi * t); },
              [](double t) { return -pi * pi * std::sin(pi * t); }};
    case Manufactured::Poly3:
      return {[](double t) { return 1.0 + t - 2.0 * t * t + t * t * t; },
              [](double t) { return 1.0 - 4.0 * t + 3.0 * t * t; },
              [](double t) { return -4.0 + 6.0 * t; }};
    case Manufactured::ExpDecay:
      return {[](double t) { return std::exp(-3.0 * t); },
              [](double t) { return -3.0 * std::exp(-3.0 * t); },
              [](double t) { return 9.0 * std::exp(-3.0 * t); }};
  }
  throw ArgumentError("unknown manufactured family");
}

GaitProblem<double> manufactured_problem(Manufactured family, double epsilon) {
  return manufacture<double>(
      manufactured_solution(family), epsilon, [](double t) { return 1.0 + t; },
      [](double) { return 2.0; }, 1.0);
}

std::vector<double> table_column_order(std::vector<double> eps) {
  std::vector<double> sorted = eps;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> canonical(kTabulatedEpsilons.begin(), kTabulatedEpsilons.end());
  std::vector<double> canonical_sorted = canonical;
  std::sort(canonical_sorted.begin(), canonical_sorted.end());
  if (sorted == canonical_sorted) return canonical;
  return sorted;
}

void validate(const RunConfig& c) {
  if (c.command == Command::Presets) return;
  if (c.epsilons.empty()) throw ArgumentError("at least one --epsilon is required");
  for (double e : c.epsilons)
    if (!(e > 0.0) || !std::isfinite(e)) throw ArgumentError("every epsilon must be positive");
  if (c.preset.has_value() == c.manufactured.has_value())
    throw ArgumentError("exactly one of --preset or --manufactured is required");
  if (c.n_inner && *c.n_inner < 2) throw ArgumentError("--n-inner must be at least 2");
  if (c.n_outer && *c.n_outer < 2) throw ArgumentError("--n-outer must be at least 2");
  if (c.command == Command::Converge) {
    if (c.levels < 2) throw ArgumentError("--levels must be at least 2");
    if (c.base_n < 2) throw ArgumentError("--base-n must be at least 2");
    if (c.levels > 20) throw ArgumentError("--levels is capped at 20");
  }
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_shortest(double value) {
  char buf[64];
  const double mag = std::abs(value);
  const bool plain = mag == 0.0 || (mag >= 1e-6 && mag < 1e15);
  const auto res = plain ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed)
                         : std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_number(double value) {
  std::string s = format_shortest(value);
  if (!std::isfinite(value) || s.find_first_of("eE") != std::string::npos) return s;
  const auto dot = s.find('.');
  if (dot == std::string::npos) return s + ".000000";
  const std::size_t decimals = s.size() - dot - 1;
  if (decimals < 6) s.append(6 - decimals, '0');
  return s;
}

void write_csv(std::ostream& out, const std::vector<EpsilonRun>& runs,
               const std::vector<std::string>& preamble) {
  write_comments(out, preamble);
  out << "t,z,region,epsilon\n";
  for (const auto& r : runs) {
    write_comments(out, block_comments(r));
    const std::string eps = format_shortest(r.epsilon);
    for (const auto& s : r.profile.samples)
      out << format_number(s.t) << ',' << format_number(s.z) << ',' << to_string(s.region) << ','
          << eps << '\n';
  }
}

std::vector<CsvRecord> parse_csv(std::istream& in) {
  std::vector<CsvRecord> records;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "t,z,region,epsilon") throw ArgumentError("unexpected CSV header '" + line + "'");
      header = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 4) throw ArgumentError("CSV row needs 4 fields: '" + line + "'");
    RegionKind region;
    if (fields[2] == "inner")
      region = RegionKind::Inner;
    else if (fields[2] == "outer")
      region = RegionKind::Outer;
    else
      throw ArgumentError("unknown region '" + std::string(fields[2]) + "'");
    records.push_back(
        {parse_double(fields[0]), parse_double(fields[1]), region, parse_double(fields[3])});
  }
  if (!header) throw ArgumentError("CSV header missing");
  return records;
}

void write_gnuplot(std::ostream& out, const std::vector<EpsilonRun>& runs,
                   const std::vector<std::string>& preamble) {
  write_comments(out, preamble);
  bool first = true;
  for (const auto& r : runs) {
    if (!first) out << "\n\n";
    first = false;
    write_comments(out, block_comments(r));
    for (const auto& s : r.profile.samples)
      out << format_number(s.t) << ' ' << format_number(s.z) << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<EpsilonRun>& runs,
                 const std::vector<std::string>& preamble) {
  write_comments(out, preamble);
  if (runs.empty()) return;
  const std::size_t rows = runs.front().profile.samples.size();
  for (const auto& r : runs)
    if (r.profile.samples.size() != rows)
      throw ArgumentError("table columns were solved on different meshes");

  constexpr std::size_t width = 8;
  out << "Time\\Eps";
  for (const auto& r : runs) out << " | " << pad_left(format_shortest(r.epsilon), width);
  out << '\n' << std::string(width, '-');
  for (std::size_t c = 0; c < runs.size(); ++c) out << "-+-" << std::string(width, '-');
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << pad_left(fixed4(runs.front().profile.samples[i].t), width);
    for (const auto& r : runs) out << " | " << pad_left(fixed4(r.profile.samples[i].z), width);
    out << '\n';
  }
}

void write_convergence(std::ostream& out, const ConvergenceReport& report, Format format) {
  out << "# reference: " << report.reference << '\n';
  auto sci = [](double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(6) << v;
    return s.str();
  };
  auto order = [](const std::optional<double>& o) {
    if (!o) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *o;
    return s.str();
  };
  if (format == Format::Table) {
    out << pad_left("n", 8) << "  " << pad_left("k", 13) << "  " << pad_left("max_error", 13)
        << "  " << pad_left("observed_order", 14) << '\n';
    for (const auto& r : report.rows)
      out << pad_left(std::to_string(r.intervals), 8) << "  " << pad_left(sci(r.k), 13) << "  "
          << pad_left(sci(r.max_error), 13) << "  " << pad_left(order(r.observed_order), 14)
          << '\n';
    return;
  }
  const char sep = format == Format::Gnuplot ? ' ' : ',';
  if (format == Format::Csv) out << "n,k,max_error,observed_order\n";
  for (const auto& r : report.rows)
    out << r.intervals << sep << sci(r.k) << sep << sci(r.max_error) << sep
        << order(r.observed_order) << '\n';
}

// ---------------------------------------------------------------------------

int exit_code_for(const Error& e) {
  if (dynamic_cast<const SolverBreakdown*>(&e) || dynamic_cast<const LevelFailure*>(&e) ||
      dynamic_cast<const PivotBreakdown*>(&e) || dynamic_cast<const ZeroStiffness*>(&e))
    return kSolverBreakdown;
  return kBadArguments;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    std::ostringstream artifact;
    switch (c.command) {
      case Command::Presets:
        render_presets(artifact);
        break;
      case Command::Solve:
      case Command::Table: {
        const std::vector<double> order =
            c.command == Command::Table ? table_column_order(c.epsilons) : c.epsilons;
        std::vector<EpsilonRun> runs;
        for (double eps : order) runs.push_back({eps, solve_one(c, eps)});
        for (const auto& r : runs)
          for (const auto& w : r.profile.warnings)
            err << "warning (epsilon=" << format_shortest(r.epsilon) << "): " << w << '\n';
        const auto preamble = describe(c);
        const Format f = c.command == Command::Table ? Format::Table : c.format;
        if (f == Format::Csv)
          write_csv(artifact, runs, preamble);
        else if (f == Format::Gnuplot)
          write_gnuplot(artifact, runs, preamble);
        else
          write_table(artifact, runs, preamble);
        break;
      }
      case Command::Converge: {
        write_comments(artifact, describe(c));
        bool first = true;
        for (double eps : c.epsilons) {
          const auto p = build_problem(c, eps);
          StudyOptions<double> opt;
          opt.mode = c.mode;
          opt.coupling = c.coupling;
          opt.split = default_split(c, p);
          if (c.n_inner) opt.inner_base = *c.n_inner;
          CoefficientFn<double> exact;
          if (c.manufactured) exact = manufactured_solution(*c.manufactured).value;
          const auto report = convergence_study(p, exact, c.base_n, c.levels, opt);
          if (!first) artifact << '\n';
          first = false;
          artifact << "# epsilon=" << format_shortest(eps) << '\n';
          write_convergence(artifact, report, c.format);
        }
        break;
      }
    }
    return emit(c, artifact.str(), out, err);
  } catch (const Error& e) {
    const int code = exit_code_for(e);
    err << (code == kSolverBreakdown ? "error: solver breakdown: " : "error: ") << e.what()
        << '\n';
    return code;
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Mixed finite difference solver for singularly perturbed gait BVPs", "gaitfd"};
  app.require_subcommand(1);
  RunConfig config;

  int preset_number = 0;
  std::string variant = "table-consistent";
  std::string mode = "decomposed";
  std::string coupling = "matched";
  std::string format = "csv";
  std::string manufactured;
  std::string out_path;

  auto add_problem_flags = [&](CLI::App* sub) {
    sub->add_option("--preset", preset_number, "built-in example")
        ->check(CLI::IsMember({1, 2, 3}));
    sub->add_option("--variant", variant, "as-written | table-consistent")
        ->check(CLI::IsMember({"as-written", "table-consistent"}));
    sub->add_option("--manufactured", manufactured, "sin | poly3 | exp-decay")
        ->check(CLI::IsMember({"sin", "poly3", "exp-decay"}));
    sub->add_option("--epsilon", config.epsilons, "perturbation parameter (repeatable)")
        ->take_all();
    sub->add_option("--tp", config.split, "split point t_p");
    sub->add_option("--n-inner", config.n_inner, "inner intervals");
    sub->add_option("--n-outer", config.n_outer, "outer (or monolithic) intervals");
    sub->add_option("--mode", mode, "decomposed | monolithic")
        ->check(CLI::IsMember({"decomposed", "monolithic"}));
    sub->add_option("--coupling", coupling, "matched | reduced-seed")
        ->check(CLI::IsMember({"matched", "reduced-seed"}));
    sub->add_option("--format", format, "csv | table | gnuplot")
        ->check(CLI::IsMember({"csv", "table", "gnuplot"}));
    sub->add_option("--out", out_path, "output file (default: standard output)");
  };

  auto* solve_cmd = app.add_subcommand("solve", "solve and emit one profile per epsilon");
  auto* table_cmd = app.add_subcommand("table", "multi-epsilon table, 4 decimals");
  auto* converge_cmd = app.add_subcommand("converge", "mesh refinement study");
  auto* presets_cmd = app.add_subcommand("presets", "list built-in examples");
  add_problem_flags(solve_cmd);
  add_problem_flags(table_cmd);
  add_problem_flags(converge_cmd);
  converge_cmd->add_option("--base-n", config.base_n, "coarsest interval count");
  converge_cmd->add_option("--levels", config.levels, "number of refinement levels");
  presets_cmd->add_option("--out", out_path, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what());
  }

  if (solve_cmd->parsed()) config.command = Command::Solve;
  if (table_cmd->parsed()) config.command = Command::Table;
  if (converge_cmd->parsed()) config.command = Command::Converge;
  if (presets_cmd->parsed()) config.command = Command::Presets;

  if (preset_number != 0)
    config.preset = PresetId{static_cast<Example>(preset_number),
                             variant == "as-written" ? Variant::AsWritten
                                                     : Variant::TableConsistent};
  if (!manufactured.empty()) {
    static const std::map<std::string, Manufactured> names{
        {"sin", Manufactured::Sin}, {"poly3", Manufactured::Poly3},
        {"exp-decay", Manufactured::ExpDecay}};
    config.manufactured = names.at(manufactured);
  }
  config.mode = mode == "monolithic" ? Mode::Monolithic : Mode::Decomposed;
  config.coupling = coupling == "reduced-seed" ? Coupling::ReducedSeed : Coupling::Matched;
  config.format = format == "table" ? Format::Table
                  : format == "gnuplot" ? Format::Gnuplot
                                        : Format::Csv;
  if (!out_path.empty()) config.output_path = out_path;
  return config;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  if (!config) return kOk;
  return run(*config, out, err);
}

}  // namespace gaitfd::cli
