#include "hypcert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypcert/corpus.hpp"
#include "hypcert/error.hpp"
#include "hypcert/minimize.hpp"
#include "hypcert/prover.hpp"

namespace hypcert {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUndetermined = 2;

struct Flags {
  std::vector<std::string> vars;
  ProverConfig config;
  std::string target_width = "1e-4";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t points = 601;
};

void add_engine_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--precision", f.config.start_precision, "starting precision in bits")
      ->capture_default_str();
  cmd->add_option("--max-precision", f.config.max_precision, "precision cap in bits")
      ->capture_default_str();
  cmd->add_option("--max-depth", f.config.max_depth, "bisection depth limit")
      ->capture_default_str();
  cmd->add_option("--leaf-budget", f.config.leaf_budget, "box budget")->capture_default_str();
  cmd->add_option("--threads", f.config.threads, "worker threads")->capture_default_str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw Error("cannot write '" + path.string() + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Box domain_of(const std::vector<std::string>& vars, Precision prec) {
  if (vars.empty()) throw Error("at least one --var name=lo:hi is required");
  std::vector<Box::Dim> dims;
  for (const auto& v : vars) dims.push_back(parse_range(v, prec));
  return Box(std::move(dims));
}

int cmd_verify(const std::string& statement, const Flags& f, std::ostream& out) {
  f.config.validate();
  const InequalityStatement stmt = parse_statement(statement, domain_of(f.vars, f.config.start_precision));
  const Certificate cert = verify_strict(stmt, f.config);
  if (!f.out.empty()) write_file(f.out, serialize(cert));
  out << stmt.text() << ": " << status_name(cert.status) << " (" << cert.leaves.size()
      << " leaves, " << cert.frontier.size() << " unresolved, " << cert.boxes_examined
      << " boxes examined)\n";
  return cert.status == Status::Proved ? kOk : kUndetermined;
}

int cmd_infimum(const std::string& expression, const Flags& f, std::ostream& out) {
  f.config.validate();
  const Expr e = parse(expression);
  const Box box = domain_of(f.vars, f.config.start_precision);
  if (box.size() != 1) throw Error("infimum takes exactly one --var");
  const Scalar width = Scalar::from_decimal(f.target_width, 64, Round::Down);
  const MinimizationResult r = certified_infimum(e, box.name(0), box[0], width, f.config);
  if (!f.out.empty()) write_file(f.out, serialize(r));
  out << "inf " << render(e) << " on " << box.name(0) << " in " << r.inf_enclosure.to_decimal(17)
      << '\n';
  for (const auto& a : r.argmin_boxes) out << "argmin within " << a.to_decimal(10) << '\n';
  if (r.budget_exhausted) out << "budget exhausted before reaching the target width\n";
  return r.budget_exhausted ? kUndetermined : kOk;
}

int cmd_scan(const std::string& expression, const Flags& f, std::ostream& out) {
  const Expr e = parse(expression);
  const Box box = domain_of(f.vars, f.config.start_precision);
  if (box.size() != 1) throw Error("scan takes exactly one --var");
  if (f.points < 2) throw Error("--points must be at least 2");
  const std::string csv =
      to_csv(scan(e, box.name(0), box[0], f.points, f.config.start_precision));
  if (f.out.empty()) {
    out << csv;
  } else {
    write_file(f.out, csv);
  }
  return kOk;
}

int cmd_corpus(const std::string& id, const Flags& f, std::ostream& out) {
  f.config.validate();
  const auto items = builtin_items();
  std::vector<const CorpusItem*> selected;
  if (id == "all") {
    for (const auto& it : items) selected.push_back(&it);
  } else {
    selected.push_back(&find_item(items, id));
  }
  if (!f.out.empty()) std::filesystem::create_directories(f.out);

  RunOptions opts;
  opts.config = f.config;
  opts.seed = f.seed;
  std::vector<std::pair<std::string, bool>> summary;
  for (const CorpusItem* it : selected) {
    out << "[" << it->id << "] " << it->anchor << '\n';
    const ItemReport rep = run_item(*it, items, opts);
    for (const auto& line : rep.lines) out << "  " << line << '\n';
    if (!f.out.empty()) {
      for (const auto& [name, text] : rep.artifacts) {
        write_file(std::filesystem::path(f.out) / name, text);
      }
    }
    summary.emplace_back(rep.id, rep.passed);
  }
  bool all = true;
  std::size_t width = 2;
  for (const auto& [name, ok] : summary) width = std::max(width, name.size());
  out << '\n';
  for (const auto& [name, ok] : summary) {
    out << name << std::string(width - name.size() + 2, ' ') << (ok ? "pass" : "FAIL") << '\n';
    all = all && ok;
  }
  return all ? kOk : kUndetermined;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const std::string text = read_file(path);
  const std::string kind = document_kind(text);
  bool valid = false;
  try {
    valid = validate_document(text);
  } catch (const Error& e) {
    out << path << ": invalid: " << e.what() << '\n';
    return kUndetermined;
  }
  out << path << ": " << (valid ? "valid" : "invalid") << " (" << kind << ")\n";
  return valid ? kOk : kUndetermined;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified interval verification of hyperbolic inequalities", "hypcert"};
  app.require_subcommand(1);
  Flags f;
  std::string positional;

  auto* verify = app.add_subcommand("verify", "prove a strict inequality on a box");
  verify->add_option("statement", positional, "\"lhs < rhs\"")->required();
  verify->add_option("--var", f.vars, "name=lo:hi (repeat for a second variable)")->required();
  verify->add_option("--out", f.out, "certificate file");
  add_engine_flags(verify, f);

  auto* corpus = app.add_subcommand("corpus", "run a built-in corpus item, or 'all'");
  corpus->add_option("id", positional, "item id or 'all'")->required();
  corpus->add_option("--out", f.out, "directory for certificates");
  corpus->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
  add_engine_flags(corpus, f);

  auto* infimum = app.add_subcommand("infimum", "certified infimum of a univariate expression");
  infimum->add_option("expression", positional)->required();
  infimum->add_option("--var", f.vars, "name=lo:hi")->required();
  infimum->add_option("--target-width", f.target_width, "stop when ub - lb is at most this")
      ->capture_default_str();
  infimum->add_option("--out", f.out, "result file");
  add_engine_flags(infimum, f);

  auto* scan_cmd = app.add_subcommand("scan", "enclosures on an evenly spaced grid, as CSV");
  scan_cmd->add_option("expression", positional)->required();
  scan_cmd->add_option("--var", f.vars, "name=lo:hi")->required();
  scan_cmd->add_option("--points", f.points, "grid size")->capture_default_str();
  scan_cmd->add_option("--precision", f.config.start_precision, "precision in bits")
      ->capture_default_str();
  scan_cmd->add_option("--out", f.out, "CSV file (default: standard output)");

  auto* validate = app.add_subcommand("validate", "re-check a certificate file");
  validate->add_option("certificate", positional)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hypcert: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(positional, f, out);
    if (*corpus) return cmd_corpus(positional, f, out);
    if (*infimum) return cmd_infimum(positional, f, out);
    if (*scan_cmd) return cmd_scan(positional, f, out);
    if (*validate) return cmd_validate(positional, out);
  } catch (const Error& e) {
    err << "hypcert: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hypcert
