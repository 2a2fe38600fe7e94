#pragma once

// Report plumbing shared by the lbfkit suites: checks, artifacts, JSON and
// CSV helpers, bounded parallel map, atomic file output.

#include "lbf/models/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lbf::cli {

using Json = nlohmann::ordered_json;
using models::ModelConfig;

inline constexpr const char* kSchema = "lbf-kit/1";

/// A classification step that could not be matched mid-resolution.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  Json options = Json::object();  // suite parameters actually used
  Json body = Json::object();
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> csv;  // file name, content
  std::string table;
  Json timing = Json::object();  // task -> ms, sidecar only

  void check(std::string name, bool passed, std::string detail = "") {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// fn(i) for i in [0, count) on up to `threads` workers; results in index order.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) slots[i].emplace(fn(i));
  };
  const auto workers = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1)));
  std::vector<std::future<void>> futures;
  for (unsigned w = 1; w < workers; ++w) futures.push_back(std::async(std::launch::async, worker));
  std::exception_ptr err;
  try {
    worker();
  } catch (...) {
    err = std::current_exception();
  }
  for (auto& f : futures) {
    try {
      f.get();
    } catch (...) {
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// formatting

/// Round-trip text for CSV cells.
inline std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

/// Short text for tables.
inline std::string short_num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_field(cells[i]);
  }
  return out + "\n";
}

/// Left-aligned columns separated by two spaces.
inline std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cell = cells[i];
      if (i + 1 < cells.size()) cell.resize(width[i], ' ');
      out += (i ? "  " : "") + cell;
    }
    out.erase(out.find_last_not_of(' ') + 1);
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

// ---------------------------------------------------------------------------
// model configuration

inline Json model_json(const ModelConfig& c) {
  return Json{{"delta", c.delta}, {"eps", c.eps},     {"eps_prime", c.eps_prime}, {"eps_dprime", c.eps_dprime},
              {"c", c.c},         {"K", c.K},         {"C0", c.C0},               {"C1", c.C1},
              {"contact_eps", c.contact_eps}};
}

inline double* model_field(ModelConfig& c, const std::string& key) {
  if (key == "delta") return &c.delta;
  if (key == "eps") return &c.eps;
  if (key == "eps_prime") return &c.eps_prime;
  if (key == "eps_dprime") return &c.eps_dprime;
  if (key == "c") return &c.c;
  if (key == "K") return &c.K;
  if (key == "C0") return &c.C0;
  if (key == "C1") return &c.C1;
  if (key == "contact_eps") return &c.contact_eps;
  return nullptr;
}

inline void set_model_key(ModelConfig& c, const std::string& key, double value) {
  double* slot = model_field(c, key);
  if (!slot) throw ConfigError("unknown config key '" + key + "'");
  *slot = value;
}

/// "key=value"
inline void apply_override(ModelConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
  set_model_key(c, key, value);
}

/// JSON object of model keys; anything else is rejected.
inline void apply_config_file(ModelConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file '" + path + "': top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw ConfigError("config key '" + key + "': not a number");
    set_model_key(c, key, value.get<double>());
  }
}

// ---------------------------------------------------------------------------
// output

/// Write via a temporary file in the same directory, then rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lbf::cli
