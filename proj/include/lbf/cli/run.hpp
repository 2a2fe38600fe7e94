#pragma once

// lbfkit front end: argument parsing, suite dispatch, report emission.
// Exit codes: 0 all checks passed, 1 verification failure, 2 usage error,
// 3 internal (integration/classification) failure.

#include "lbf/cli/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace lbf::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  std::string subcommand;
  ModelConfig model;
  std::string format = "json";
  std::string out;  // directory; stdout when empty
  unsigned threads = 1;
  FormsOptions forms;
  TransportOptions transport;
  FillingsOptions fillings;
  ResolveOptions resolve;
  ContactOptions contact;
};

/// LBFKIT_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("LBFKIT_THREADS"); env && *env) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || v < 1) throw ConfigError("LBFKIT_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<SuiteReport> execute(const RunConfig& rc) {
  const auto& s = rc.subcommand;
  std::vector<SuiteReport> out;
  const bool all = s == "all";
  if (all || s == "verify-forms") out.push_back(verify_forms(rc.model, rc.forms, rc.threads));
  if (all || s == "transport") out.push_back(transport_suite(rc.model, rc.transport, rc.threads));
  if (all || s == "fillings") out.push_back(fillings_suite(rc.fillings));
  if (all || s == "resolve") out.push_back(resolve_suite(rc.resolve, rc.threads));
  if (all || s == "contact-check") out.push_back(contact_suite(rc.model, rc.contact, rc.threads));
  return out;
}

inline Json report_json(const SuiteReport& rep, const RunConfig& rc) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json j = {{"schema", kSchema},
            {"suite", rep.suite},
            {"config", {{"command", rc.subcommand}, {"format", rc.format}, {"model", model_json(rc.model)}, {"options", rep.options}}},
            {"passed", rep.passed()},
            {"checks", std::move(checks)}};
  for (const auto& [key, value] : rep.body.items()) j[key] = value;
  return j;
}

inline std::string report_table(const SuiteReport& rep) {
  std::string out = "== " + rep.suite + " ==\n";
  if (!rep.table.empty()) out += rep.table + (rep.table.ends_with("\n\n") ? "" : "\n");
  std::vector<std::vector<std::string>> rows;
  std::size_t passed = 0;
  for (const auto& c : rep.checks) {
    rows.push_back({c.passed ? "PASS" : "FAIL", c.name, c.detail});
    passed += c.passed;
  }
  out += text_table({"status", "check", "detail"}, rows);
  out += std::to_string(passed) + " of " + std::to_string(rep.checks.size()) + " checks passed\n";
  return out;
}

/// (file name, content) pairs for one suite in the chosen format.
inline std::vector<std::pair<std::string, std::string>> artifacts(const SuiteReport& rep, const RunConfig& rc) {
  if (rc.format == "csv") return rep.csv;
  if (rc.format == "table") return {{rep.suite + ".txt", report_table(rep)}};
  return {{rep.suite + ".json", report_json(rep, rc).dump(2) + "\n"}};
}

inline Json timing_json(const SuiteReport& rep) {
  double total = 0;
  for (const auto& [k, v] : rep.timing.items()) total += v.get<double>();
  return {{"schema", kSchema}, {"suite", rep.suite}, {"total_ms", total}, {"tasks", rep.timing}};
}

inline void emit(const std::vector<SuiteReport>& reports, const RunConfig& rc, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& rep : reports) {
    auto a = artifacts(rep, rc);
    files.insert(files.end(), a.begin(), a.end());
  }
  if (rc.out.empty()) {
    for (const auto& [name, content] : files) {
      if (files.size() > 1) out << "# " << name << "\n";
      out << content;
    }
    return;
  }
  const std::filesystem::path dir(rc.out);
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) write_atomic(dir / name, content);
  for (const auto& rep : reports) write_atomic(dir / (rep.suite + ".timing.json"), timing_json(rep).dump(2) + "\n");
}

/// One line per failed check on `err`; the exit code for the run.
inline int report_failures(const std::vector<SuiteReport>& reports, std::ostream& err) {
  int failed = 0;
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      if (c.passed) continue;
      err << "FAIL " << rep.suite << ": " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      ++failed;
    }
  }
  return failed == 0 ? kOk : kFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig rc;
  std::vector<std::string> overrides;
  std::string config_file;
  std::optional<unsigned> threads;

  CLI::App app{"lbfkit: verification reports for the Lefschetz-Bott filling computations", "lbfkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
  app.add_option("--out", rc.out, "output directory (stdout when absent)");
  app.add_option("--threads", threads, "parallelism (default LBFKIT_THREADS or hardware)")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "model override key=value, repeatable");
  app.add_option("--config", config_file, "JSON file of model overrides")->check(CLI::ExistingFile);

  std::optional<int> forms_n, fill_n, fill_k, res_k, res_dim, contact_n;
  auto* forms = app.add_subcommand("verify-forms", "exact identity checks and positivity grids");
  forms->add_option("--n", forms_n, "single n (default 2..5)")->check(CLI::Range(2, 12));

  auto* trans = app.add_subcommand("transport", "parallel transport, closed forms, monodromy profile");
  trans->add_option("--t", rc.transport.t, "label of the dumped trajectory")->capture_default_str();
  trans->add_option("--s0", rc.transport.s0, "base loop radius of the profile")->capture_default_str();
  trans->add_option("--grid", rc.transport.grid, "t grid: items x | lo:hi:count | log:lo:hi:count")->capture_default_str();

  auto* fill = app.add_subcommand("fillings", "twist words and Euler characteristics of the fillings");
  fill->add_option("--n", fill_n, "single n (default 2..6)")->check(CLI::Range(1, 30));
  fill->add_option("--k", fill_k, "single k (default 1..12)")->check(CLI::Range(1, 200));
  fill->add_flag("--include-zero", rc.fillings.include_zero, "also list the Milnor fiber (l = 0)");

  auto* res = app.add_subcommand("resolve", "blow-up resolution traces of A_k");
  res->add_option("--k", res_k, "single k (default 1..15)")->check(CLI::Range(1, 200));
  res->add_option("--dim", res_dim, "single n (default 0..4)")->check(CLI::Range(0, 30));

  auto* cont = app.add_subcommand("contact-check", "contact profile, corner curve, base profile");
  cont->add_option("--n", contact_n, "single n (default 1..6)")->check(CLI::Range(1, 30));

  app.add_subcommand("all", "every suite above with defaults");

  try {
    std::vector<const char*> args(argv, argv + argc);
    app.parse(argc, args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    rc.subcommand = app.get_subcommands().front()->get_name();
    if (!config_file.empty()) apply_config_file(rc.model, config_file);
    for (const auto& o : overrides) apply_override(rc.model, o);
    rc.model.validate();
    rc.threads = threads ? *threads : default_threads();
    if (forms_n) rc.forms.ns = {*forms_n};
    if (fill_n) rc.fillings.ns = {*fill_n};
    if (fill_k) rc.fillings.ks = {*fill_k};
    if (res_k) rc.resolve.ks = {*res_k};
    if (res_dim) rc.resolve.ns = {*res_dim};
    if (contact_n) rc.contact.ns = {*contact_n};
  } catch (const Error& e) {
    err << "lbfkit: " << e.what() << "\n";
    return kUsage;
  }

  std::vector<SuiteReport> reports;
  try {
    reports = execute(rc);
    emit(reports, rc, out);
  } catch (const ConfigError& e) {
    err << "lbfkit: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "lbfkit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "lbfkit: internal failure: " << e.what() << "\n";
    return kInternal;
  }

  return report_failures(reports, err);
}

}  // namespace lbf::cli
