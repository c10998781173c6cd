#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "crossmod/corpus.hpp"
#include "crossmod/crossed_module_io.hpp"
#include "crossmod/detail/parallel.hpp"
#include "crossmod/detail/text.hpp"
#include "crossmod/kwb.hpp"
#include "crossmod/presentation.hpp"

namespace crossmod::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Reported to the user verbatim, exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FileKind { Diagram, Presentation, CrossedModule };

FileKind detect(const std::string& text, const std::string& path) {
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& t = line.tokens;
    if (t.size() == 2 && t[1].text == "v1") {
      if (t[0].text == "kwb") return FileKind::Diagram;
      if (t[0].text == "presentation") return FileKind::Presentation;
      if (t[0].text == "crossed_module") return FileKind::CrossedModule;
    }
    break;
  }
  throw InputError(path + ": unrecognized header; expected 'kwb v1', 'presentation v1' or 'crossed_module v1'");
}

/// Parse errors are reported with the file they came from.
template <class Fn>
auto parse_file(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const CrossedModuleError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const GroupTableError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Input {
  std::string identity;
  std::optional<KwbDiagram> diagram;
  std::optional<CrossedModulePresentation> presentation;
};

Input load_input(const std::string& spec) {
  if (fs::is_regular_file(spec)) {
    const std::string text = read_text_file(spec);
    switch (detect(text, spec)) {
      case FileKind::Diagram:
        return {spec, parse_file(spec, [&] { return parse_diagram(text); }), std::nullopt};
      case FileKind::Presentation:
        return {spec, std::nullopt, parse_file(spec, [&] { return parse_presentation(text); })};
      case FileKind::CrossedModule:
        throw InputError(spec + ": is a crossed module; expected a diagram or presentation");
    }
  }
  const auto& catalog = list_examples();
  if (std::any_of(catalog.begin(), catalog.end(), [&](const ExampleInfo& e) { return e.name == spec; })) {
    Example ex = parse_file(spec, [&] { return load_example(spec); });
    return {spec, std::move(ex.diagram), std::move(ex.presentation)};
  }
  throw InputError("'" + spec + "' is neither a readable file nor a corpus example");
}

FiniteCrossedModule load_coefficient(const std::string& spec) {
  if (fs::is_regular_file(spec)) {
    const std::string text = read_text_file(spec);
    if (detect(text, spec) != FileKind::CrossedModule) throw InputError(spec + ": expected a crossed module file");
    return parse_file(spec, [&] { return parse_crossed_module(text); });
  }
  try {
    return builtin_coefficient(spec);
  } catch (const UnknownExample& e) {
    throw InputError(e.what());
  }
}

struct RunReport {
  std::string input;
  std::string coefficient;
  std::string via;
  BigInt count;
  std::size_t b1 = 0;
  ExactRational invariant;
  double wall_time_ms = 0;
  unsigned workers = 1;
};

json to_json(const RunReport& r) {
  return {{"input", r.input},
          {"coefficient", r.coefficient},
          {"via", r.via},
          {"count", r.count.str()},
          {"b1", r.b1},
          {"invariant", r.invariant.to_string()},
          {"wall_time_ms", r.wall_time_ms},
          {"workers", r.workers}};
}

void print_text(std::ostream& out, const RunReport& r) {
  out << r.input << "  cm=" << r.coefficient << "  via=" << r.via << "  count=" << r.count << "  b1=" << r.b1
      << "  invariant=" << r.invariant << "  time=" << std::fixed << std::setprecision(3) << r.wall_time_ms
      << "ms  workers=" << r.workers << '\n';
}

template <class Fn>
RunReport timed(const std::string& via, Fn&& count) {
  RunReport r;
  r.via = via;
  const auto start = std::chrono::steady_clock::now();
  r.count = count();
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct InvariantArgs {
  std::string input;
  std::string cm = "A";
  std::string via;
  unsigned jobs = 1;
  std::string format = "text";
};

int cmd_invariant(const InvariantArgs& a, std::ostream& out, std::ostream& err) {
  const Input input = load_input(a.input);
  const FiniteCrossedModule cm = load_coefficient(a.cm);
  const std::string via = a.via.empty() ? (input.diagram ? "both" : "presentation") : a.via;
  if ((via == "diagram" || via == "both") && !input.diagram)
    throw InputError("--via " + via + " needs a diagram, but '" + a.input + "' is a presentation");

  const CountOptions options{a.jobs};
  const std::size_t e_order = cm.principal().order();
  std::vector<RunReport> reports;
  if (via == "diagram" || via == "both") {
    RunReport r = timed("diagram", [&] { return count_colorings(*input.diagram, cm, options); });
    r.b1 = input.diagram->circles;
    reports.push_back(std::move(r));
  }
  if (via == "presentation" || via == "both") {
    const CrossedModulePresentation pres =
        input.presentation ? *input.presentation : extract_presentation(*input.diagram).presentation;
    RunReport r = timed("presentation", [&] { return count_homs(pres, cm, options); });
    r.b1 = pres.rank_b1;
    reports.push_back(std::move(r));
  }
  for (auto& r : reports) {
    r.input = a.input;
    r.coefficient = a.cm;
    r.invariant = ExactRational(r.count, big_pow(e_order, r.b1));
    r.workers = detail::resolve_jobs(a.jobs);
  }

  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) print_text(out, r);
  }

  if (reports.size() == 2 && !(reports[0].invariant == reports[1].invariant)) {
    err << "error: diagram gives " << reports[0].invariant << " but presentation gives " << reports[1].invariant
        << '\n';
    return kPathsDisagree;
  }
  return kOk;
}

int cmd_validate(const std::string& path, const std::string& cm_spec, std::ostream& out, std::ostream& err) {
  if (!fs::is_regular_file(path)) throw InputError("cannot read '" + path + "'");
  const std::string text = read_text_file(path);
  switch (detect(text, path)) {
    case FileKind::Diagram: {
      const KwbDiagram d = parse_file(path, [&] { return parse_diagram(text); });
      out << path << ": valid diagram, " << d.circles << " circles, " << d.arcs.size() << " arcs, "
          << d.crossings.size() << " crossings, " << d.bands.size() << " bands, " << d.maximal.size()
          << " maximal circles\n";
      if (!cm_spec.empty()) {
        const ConsistencyReport report = check_consistency(d, load_coefficient(cm_spec));
        for (const auto& issue : report.issues) err << path << ": " << issue.message << '\n';
        if (!report.ok()) return kInputError;
        out << path << ": consistent with " << cm_spec << '\n';
      }
      return kOk;
    }
    case FileKind::Presentation: {
      const auto p = parse_file(path, [&] { return parse_presentation(text); });
      out << path << ": valid presentation, " << p.base_generators.size() << " base generators, "
          << p.base_relations.size() << " relations, " << p.principal_generators.size()
          << " principal generators, " << p.two_relations.size() << " 2-relations, b1 " << p.rank_b1 << '\n';
      return kOk;
    }
    case FileKind::CrossedModule: {
      const auto cm = parse_file(path, [&] { return parse_crossed_module(text); });
      out << path << ": valid crossed module, #G " << cm.base().order() << ", #E " << cm.principal().order()
          << ", #ker " << cm.kernel_size() << '\n';
      return kOk;
    }
  }
  return kOk;
}

int cmd_extract(const std::string& spec, const std::string& out_path, bool annotate, std::ostream& out) {
  const Input input = load_input(spec);
  if (!input.diagram) throw InputError("'" + spec + "' is not a diagram");
  const ExtractedPresentation x = extract_presentation(*input.diagram);
  std::string text = serialize(x.presentation);
  if (annotate) {
    const auto& names = x.presentation.base_generators;
    for (const auto& a : x.annotations) {
      const Band& band = input.diagram->bands[a.band];
      text += "# last_end " + band.name + ": d(" + band.name + "." + std::to_string(band.arc_count) +
              ") = " + format_word(a.derived, names) + " ; required " + format_word(a.expected, names) + "\n";
    }
  }
  if (out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + out_path + "'");
  file << text;
  if (!file.flush()) throw InputError("failed writing '" + out_path + "'");
  return kOk;
}

int cmd_examples(const std::string& filter, bool coefficients, const std::string& format, std::ostream& out) {
  const auto& catalog = coefficients ? list_coefficients() : list_examples();
  std::vector<ExampleInfo> shown;
  for (const auto& e : catalog)
    if (filter.empty() || e.name.find(filter) != std::string::npos) shown.push_back(e);
  if (format == "json") {
    json arr = json::array();
    for (const auto& e : shown) arr.push_back({{"name", e.name}, {"description", e.description}});
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& e : shown) out << std::left << std::setw(20) << e.name << ' ' << e.description << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crossed-module invariants of knotted surfaces from knot-with-bands diagrams", "crossmod"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Parse and validate a .kwb, .cmp or .xmod file");
  std::string validate_path, validate_cm;
  validate->add_option("path", validate_path, "File to check")->required();
  validate->add_option("--cm", validate_cm, "Also check a diagram's band ends against this coefficient");

  auto* invariant = app.add_subcommand("invariant", "Count colorings or morphisms and normalize");
  InvariantArgs inv;
  invariant->add_option("input", inv.input, "Diagram, presentation, or corpus example name")->required();
  invariant->add_option("--cm", inv.cm, "Coefficient: built-in name or .xmod file")->capture_default_str();
  invariant->add_option("--via", inv.via, "Computation path (default: both when a diagram is available)")
      ->check(CLI::IsMember({"diagram", "presentation", "both"}));
  invariant->add_option("--jobs", inv.jobs, "Worker threads, 0 for one per hardware thread")->capture_default_str();
  invariant->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* extract = app.add_subcommand("extract", "Write the presentation read off a diagram");
  std::string extract_input, extract_out;
  bool annotate = false;
  extract->add_option("input", extract_input, "Diagram file or corpus example name")->required();
  extract->add_option("--out", extract_out, "Output file (default: standard output)");
  extract->add_flag("--annotate", annotate, "Append last-end consistency notes as comments");

  auto* examples = app.add_subcommand("examples", "List corpus examples");
  std::string filter, examples_format = "text";
  bool coefficients = false;
  examples->add_option("filter", filter, "Only names containing this substring");
  examples->add_flag("--coefficients", coefficients, "List built-in coefficients instead");
  examples->add_option("--format", examples_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(validate_path, validate_cm, out, err);
    if (*invariant) return cmd_invariant(inv, out, err);
    if (*extract) return cmd_extract(extract_input, extract_out, annotate, out);
    if (*examples) return cmd_examples(filter, coefficients, examples_format, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace crossmod::cli
