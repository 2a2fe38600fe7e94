#pragma once

// The lbfkit sub-suites. Each returns a SuiteReport; `all` is their union.

#include "lbf/blowup/resolution.hpp"
#include "lbf/cli/report.hpp"
#include "lbf/contact/profile.hpp"
#include "lbf/mcg/twist_word.hpp"
#include "lbf/models/identities.hpp"
#include "lbf/topo/euler.hpp"
#include "lbf/transport/transport.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace lbf::cli {

inline int ceil_half(int k) { return (k + 1) / 2; }

inline std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

inline Json int_list(const std::vector<int>& v) { return Json(v); }

// ---------------------------------------------------------------------------
// verify-forms

struct FormsOptions {
  std::vector<int> ns = range(2, 5);
  int top_power_grid = 200;
  int contact_grid = 1000;
};

inline SuiteReport verify_forms(const ModelConfig& base, const FormsOptions& opt, unsigned threads) {
  using models::IdentityId;
  SuiteReport rep;
  rep.suite = "verify-forms";
  rep.options = {{"n", int_list(opt.ns)}, {"top_power_grid", opt.top_power_grid}, {"contact_grid", opt.contact_grid}};

  struct Task {
    int n;
    IdentityId id;
  };
  std::vector<Task> tasks;
  for (int n : opt.ns) {
    for (IdentityId id : models::kAllIdentities) tasks.push_back({n, id});
  }
  struct Outcome {
    models::IdentityReport identity;
    std::optional<models::PositivityReport> positivity;
    double positivity_ms = 0;
  };
  auto outcomes = parallel_map(tasks.size(), threads, [&](std::size_t i) {
    ModelConfig cfg = base;
    cfg.n = tasks[i].n;
    Outcome out{models::verify_identity(tasks[i].id, cfg), std::nullopt, 0};
    if (tasks[i].id == IdentityId::TOP_POWER || tasks[i].id == IdentityId::CONTACT_VOLUME) {
      Stopwatch sw;
      const int res = tasks[i].id == IdentityId::TOP_POWER ? opt.top_power_grid : opt.contact_grid;
      out.positivity = models::positivity_grid(tasks[i].id, cfg, res);
      out.positivity_ms = sw.ms();
    }
    return out;
  });

  Json reports = Json::array();
  std::vector<std::vector<std::string>> rows;
  std::string csv = csv_line({"identity", "n", "verdict", "residual_text", "min_value", "argmin"});
  for (const auto& o : outcomes) {
    const auto& r = o.identity;
    const std::string name(models::identity_name(r.id));
    const std::string verdict = r.exact ? "exact" : "residual";
    Json j = {{"identity", name},
              {"n", r.n},
              {"verdict", verdict},
              {"residual_text", r.residual_text},
              {"coefficient_text", r.coefficient_text},
              {"detail", r.detail}};
    std::string min_text, arg_text;
    if (o.positivity) {
      j["min_value"] = o.positivity->min_value;
      j["argmin"] = o.positivity->argmin;
      j["grid"] = o.positivity->resolution;
      min_text = num(o.positivity->min_value);
      for (double a : o.positivity->argmin) arg_text += (arg_text.empty() ? "" : " ") + num(a);
      rep.check("n=" + std::to_string(r.n) + " " + name + " positive on grid", o.positivity->positive(),
                "min " + min_text + " at (" + arg_text + ")");
      rep.timing[name + " n=" + std::to_string(r.n) + " grid"] = o.positivity_ms;
    }
    rep.check("n=" + std::to_string(r.n) + " " + name + " exact", r.exact, r.exact ? "" : r.residual_text);
    rep.timing[name + " n=" + std::to_string(r.n)] = r.ms;
    reports.push_back(std::move(j));
    rows.push_back({name, std::to_string(r.n), verdict, o.positivity ? short_num(o.positivity->min_value) : "-"});
    csv += csv_line({name, std::to_string(r.n), verdict, r.residual_text, min_text, arg_text});
  }
  rep.body["identities"] = std::move(reports);
  rep.csv.emplace_back("verify-forms.csv", std::move(csv));
  rep.table = text_table({"identity", "n", "verdict", "grid min"}, rows);
  return rep;
}

// ---------------------------------------------------------------------------
// transport

/// Comma-separated items: a number, "lo:hi:count" (linear, inclusive) or
/// "log:lo:hi:count" (geometric, lo and hi > 0).
inline std::vector<double> parse_grid(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("grid spec '" + spec + "': bad number '" + s + "'");
    return v;
  };
  std::vector<double> out;
  std::stringstream items(spec);
  for (std::string item; std::getline(items, item, ',');) {
    std::vector<std::string> parts;
    std::stringstream ps(item);
    for (std::string p; std::getline(ps, p, ':');) parts.push_back(p);
    const bool geometric = !parts.empty() && parts[0] == "log";
    if (geometric) parts.erase(parts.begin());
    if (parts.size() == 1 && !geometric) {
      out.push_back(number(parts[0]));
      continue;
    }
    if (parts.size() != 3) throw ConfigError("grid spec '" + spec + "': bad item '" + item + "'");
    const double lo = number(parts[0]), hi = number(parts[1]);
    const double count = number(parts[2]);
    if (count < 2 || count != std::floor(count)) throw ConfigError("grid spec '" + spec + "': count must be an integer >= 2");
    if (geometric && !(lo > 0 && hi > 0)) throw ConfigError("grid spec '" + spec + "': log range needs positive ends");
    const int m = static_cast<int>(count) - 1;
    for (int i = 0; i <= m; ++i) {
      const double x = static_cast<double>(i) / m;
      out.push_back(geometric ? lo * std::pow(hi / lo, x) : lo + (hi - lo) * x);
    }
  }
  if (out.empty()) throw ConfigError("grid spec is empty");
  return out;
}

struct TransportOptions {
  double t = 0.01;
  double s0 = 1e-3;
  std::string grid = "-0.25:-0.005:50,0.005:0.995:100,log:1:100:41";
  int limit_levels = 12;
};

inline transport::IntegratorSettings transport_settings(transport::Denominator d = transport::Denominator::corrected) {
  transport::IntegratorSettings s;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-13;
  s.denominator = d;
  return s;
}

inline SuiteReport transport_suite(const ModelConfig& cfg, const TransportOptions& opt, unsigned threads) {
  using namespace transport;
  cfg.validate();
  SuiteReport rep;
  rep.suite = "transport";
  const std::vector<double> grid = parse_grid(opt.grid);
  const double s_traj = cfg.eps / 4;
  const double tol_drift = 1e-8, tol_limit = 1e-3, tol_rel = 1e-6;
  rep.options = {{"t", opt.t},
                 {"s0", opt.s0},
                 {"grid", opt.grid},
                 {"trajectory_length", s_traj},
                 {"limit_levels", opt.limit_levels},
                 {"integrator", {{"abs_tol", transport_settings().abs_tol}, {"rel_tol", transport_settings().rel_tol}}}};
  const TransportParams corrected(cfg, transport_settings());
  const TransportParams printed(cfg, transport_settings(Denominator::printed));
  monodromy_profile(corrected, opt.s0, {grid.front()});  // rejects a bad s0 or grid before any work

  // trajectory at --t under both denominators
  {
    Stopwatch sw;
    const Trajectory a = integrate(corrected, opt.t, s_traj), b = integrate(printed, opt.t, s_traj);
    auto summary = [](const Trajectory& tr) {
      return Json{{"samples", tr.samples.size()},
                  {"end", {{"s", tr.end().s}, {"r1", tr.end().r1}, {"r2", tr.end().r2}}},
                  {"max_h_drift", tr.max_h_drift},
                  {"max_mu_drift", tr.max_mu_drift}};
    };
    rep.body["trajectory"] = {{"t", opt.t}, {"corrected", summary(a)}, {"printed", summary(b)}};
    rep.check("trajectory t=" + num(opt.t) + " drifts", a.max_h_drift < tol_drift && a.max_mu_drift < tol_drift,
              "h " + num(a.max_h_drift) + ", mu " + num(a.max_mu_drift));
    rep.csv.emplace_back("transport_trajectory.csv", trajectory_csv(a));
    rep.timing["trajectory"] = sw.ms();
  }

  // drift monitors across labels, both denominators
  {
    Stopwatch sw;
    const std::vector<double> labels = {-0.24, -0.2, -0.1, -0.01, -1e-4, 1e-4, 0.01, 0.1, 1.0, 10.0, 99.0};
    auto drifts = parallel_map(labels.size() * 2, threads, [&](std::size_t i) {
      return integrate(i % 2 == 0 ? corrected : printed, labels[i / 2], s_traj);
    });
    Json rows = Json::array();
    double worst_h = 0, worst_mu = 0;
    for (std::size_t i = 0; i < drifts.size(); ++i) {
      const bool is_corrected = i % 2 == 0;
      rows.push_back({{"t", labels[i / 2]},
                      {"denominator", is_corrected ? "corrected" : "printed"},
                      {"max_h_drift", drifts[i].max_h_drift},
                      {"max_mu_drift", drifts[i].max_mu_drift}});
      if (is_corrected) {
        worst_h = std::max(worst_h, drifts[i].max_h_drift);
        worst_mu = std::max(worst_mu, drifts[i].max_mu_drift);
      }
    }
    rep.body["drifts"] = std::move(rows);
    rep.check("h drift below 1e-8", worst_h < tol_drift, "worst " + num(worst_h));
    rep.check("mu r2 - s drift below 1e-8", worst_mu < tol_drift, "worst " + num(worst_mu));
    rep.timing["drifts"] = sw.ms();
  }

  // one-sided limits of R' at t = 0
  {
    Stopwatch sw;
    const auto lgrid = limit_grid(opt.limit_levels);
    auto samples = parallel_map(lgrid.size(), threads, [&](std::size_t i) { return profile_point(corrected, opt.s0, lgrid[i]); });
    const MonodromyProfile prof{opt.s0, samples};
    const double plus = limit_at_zero(prof, +1), minus = limit_at_zero(prof, -1);
    rep.body["limits"] = {{"s0", opt.s0}, {"plus", plus}, {"minus", minus}};
    rep.check("limit of R' at 0+ is 1/2", std::abs(plus - 0.5) < tol_limit, num(plus));
    rep.check("limit of R' at 0- is -1/2", std::abs(minus + 0.5) < tol_limit, num(minus));
    rep.timing["limits"] = sw.ms();
  }

  // small-t closed form against the integrator
  {
    Stopwatch sw;
    const auto pairs = small_t_pairs(cfg, 50);
    auto ends = parallel_map(pairs.size(), threads,
                             [&](std::size_t i) { return integrate(corrected, pairs[i].second, pairs[i].first).end(); });
    double worst = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [r1, r2] = closed_form(Regime::small_t, pairs[i].first, pairs[i].second, &cfg);
      worst = std::max({worst, std::abs(ends[i].r1 - r1) / r1, std::abs(ends[i].r2 - r2) / r2});
    }
    rep.body["small_t_closed_form"] = {{"pairs", pairs.size()}, {"max_relative_error", worst}};
    rep.check("small-t closed form on " + std::to_string(pairs.size()) + " pairs", pairs.size() == 50 && worst < tol_rel,
              "max relative error " + num(worst));
    rep.timing["small_t_closed_form"] = sw.ms();
  }

  // outer closed form
  {
    Stopwatch sw;
    const std::vector<double> labels = {1.0, 5.0, 50.0};
    double worst = 0;
    for (double t : labels) {
      const auto [r1, r2] = closed_form(Regime::outer_large_t, s_traj, t, &cfg);
      const auto end = integrate(corrected, t, s_traj).end();
      worst = std::max({worst, std::abs(end.r1 - r1) / r1, std::abs(end.r2 - r2) / r2});
    }
    rep.body["outer_closed_form"] = {{"t", labels}, {"s", s_traj}, {"max_relative_error", worst}};
    rep.check("outer closed form", worst < tol_rel, "max relative error " + num(worst));
    rep.timing["outer_closed_form"] = sw.ms();
  }

  // plateau: mu = 1 keeps r2 = s0
  {
    const std::vector<double> labels = {-0.245, -0.24, -0.23};
    double worst = 0;
    for (double t : labels) worst = std::max(worst, std::abs(integrate(corrected, t, opt.s0).end().r2 - opt.s0));
    rep.body["plateau"] = {{"t", labels}, {"max_deviation", worst}};
    rep.check("r2 = s0 where mu = 1", worst < tol_rel, "max deviation " + num(worst));
  }

  // flat start, outer decay, cutoff
  {
    Stopwatch sw;
    std::vector<double> flat, outer;
    for (int i = 0; i <= 6; ++i) flat.push_back(-0.25 + 0.02 * i / 6);
    for (int i = 0; i <= 20; ++i) outer.push_back(std::pow(10.0, 2.0 * i / 20));
    const std::vector<double> ceiling = {90.0, 95.0, 99.0, 100.0};
    const double s_outer = cfg.eps / 4;
    auto flat_p = monodromy_profile(corrected, opt.s0, flat);
    auto outer_p = monodromy_profile(corrected, s_outer, outer);
    auto ceil_p = monodromy_profile(corrected, s_outer, ceiling);

    double flat_worst = 0;
    for (const auto& q : flat_p.samples) flat_worst = std::max(flat_worst, std::abs(q.dR));
    rep.check("R' flat near t = -delta^2", flat_worst < tol_rel, "max |R'| " + num(flat_worst));

    bool positive = true, decreasing = true;
    for (std::size_t i = 0; i < outer_p.samples.size(); ++i) {
      positive = positive && outer_p.samples[i].dR > 0;
      if (i) decreasing = decreasing && outer_p.samples[i].dR < outer_p.samples[i - 1].dR;
    }
    const double ratio = outer_p.samples.back().dR / outer_p.samples.front().dR;
    rep.check("outer R' positive", positive);
    rep.check("outer R' decays on [1, 100]", decreasing && ratio < 1e-3, "tail ratio " + num(ratio));

    bool cut_zero = true;
    for (const auto& q : ceil_p.samples) cut_zero = cut_zero && q.dR_cut == 0;
    rep.check("cutoff profile vanishes near c^2", cut_zero);
    rep.body["boundary_behaviour"] = {{"flat_max_abs_dR", flat_worst},
                                      {"outer_s0", s_outer},
                                      {"outer_first_dR", outer_p.samples.front().dR},
                                      {"outer_last_dR", outer_p.samples.back().dR},
                                      {"outer_positive", positive},
                                      {"outer_decreasing", decreasing},
                                      {"cutoff_zero", cut_zero}};
    rep.timing["boundary_behaviour"] = sw.ms();
  }

  // plot profile on the requested grid
  {
    Stopwatch sw;
    auto samples = parallel_map(grid.size(), threads, [&](std::size_t i) {
      return monodromy_profile(corrected, opt.s0, {grid[i]}).samples.front();
    });
    const MonodromyProfile prof{opt.s0, samples};
    Json rows = Json::array();
    for (const auto& q : samples) {
      rows.push_back({{"t", q.t}, {"R", q.R}, {"dR", q.dR}, {"dR_cut", q.dR_cut}});
    }
    rep.body["profile"] = std::move(rows);
    rep.csv.emplace_back("transport_profile.csv", profile_csv(prof));
    rep.timing["profile"] = sw.ms();
  }

  {
    // printed vs corrected denominator where mu' != 1
    const Trajectory a = integrate(corrected, -0.2, 0.05), b = integrate(printed, -0.2, 0.05);
    rep.body["denominator_comparison"] = {{"t", -0.2},
                                          {"s", 0.05},
                                          {"corrected_mu_drift", a.max_mu_drift},
                                          {"printed_mu_drift", b.max_mu_drift},
                                          {"corrected_h_drift", a.max_h_drift},
                                          {"printed_h_drift", b.max_h_drift}};
  }
  rep.body["notes"] = {
      "printed transport denominator lacks the mu' factor; both variants' drifts are reported",
      "printed small-t closed form swaps the branches against the initial conditions; the corrected assignment is used"};

  return rep;
}

// ---------------------------------------------------------------------------
// fillings

struct FillingsOptions {
  std::vector<int> ns = range(2, 6);
  std::vector<int> ks = range(1, 12);
  bool include_zero = false;
  unsigned random_substitutions = 10000;
};

inline SuiteReport fillings_suite(const FillingsOptions& opt) {
  SuiteReport rep;
  rep.suite = "fillings";
  rep.options = {{"n", int_list(opt.ns)},
                 {"k", int_list(opt.ks)},
                 {"include_zero", opt.include_zero},
                 {"random_substitutions", opt.random_substitutions}};
  Stopwatch sw;
  Json entries = Json::array();
  std::string csv = csv_line({"n", "k", "l", "word", "weight", "chi", "chi_printed", "discrepancy"});
  std::string table;
  std::vector<std::string> bad_count, bad_weight, bad_milnor, bad_affine, bad_distinct, bad_chain;
  for (int n : opt.ns) {
    for (int k : opt.ks) {
      const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
      const auto words = mcg::enumerate_fillings(k, n, opt.include_zero);
      const auto euler = topo::distinctness_report(n, k);
      const int from_l = opt.include_zero ? 0 : 1;
      const int fillings = static_cast<int>(words.size()) - (opt.include_zero ? 1 : 0);
      if (fillings != ceil_half(k)) bad_count.push_back(tag);
      Json rows = Json::array();
      std::vector<std::vector<std::string>> trows;
      for (const auto& w : words) {
        const int l = w.count_boundary();
        const auto& row = euler.rows[static_cast<std::size_t>(l)];
        if (w.weight() != k + 1) bad_weight.push_back(tag);
        rows.push_back({{"l", l},
                        {"word", w.str()},
                        {"weight", w.weight()},
                        {"chi", row.oracle},
                        {"chi_printed", row.printed},
                        {"discrepancy", row.discrepancy()}});
        csv += csv_line({std::to_string(n), std::to_string(k), std::to_string(l), w.str(), std::to_string(w.weight()),
                         std::to_string(row.oracle), std::to_string(row.printed), row.discrepancy() ? "1" : "0"});
        trows.push_back({std::to_string(l), w.str(), std::to_string(w.weight()), std::to_string(row.oracle),
                         std::to_string(row.printed), row.discrepancy() ? "differs" : ""});
      }
      const bool distinct = euler.distinct(true, from_l);
      if (!euler.milnor_agrees()) bad_milnor.push_back(tag);
      if (!euler.oracle_affine()) bad_affine.push_back(tag);
      // chi cannot separate anything when the slope vanishes (n = 1); reported only
      if (n >= 2 && !distinct) bad_distinct.push_back(tag);
      const auto chain = mcg::substitution_chain(mcg::milnor_word(k, n), mcg::enumerate_fillings(k, n).back());
      if (static_cast<int>(chain.size()) != ceil_half(k)) bad_chain.push_back(tag);

      const std::string verdict = distinct ? std::to_string(fillings) + (fillings == 1 ? " filling" : " fillings") +
                                                 ", pairwise distinct"
                                           : "not distinguished by chi";
      entries.push_back({{"n", n},
                         {"k", k},
                         {"fillings", fillings},
                         {"verdict", verdict},
                         {"words", std::move(rows)},
                         {"chi_milnor", euler.milnor},
                         {"chi_l0", euler.rows.front().oracle},
                         {"oracle_slope", euler.oracle_slope},
                         {"printed_slope", euler.printed_slope},
                         {"quadric_chi", euler.quadric_oracle},
                         {"quadric_chi_printed", euler.quadric_printed},
                         {"distinct", distinct},
                         {"affine", euler.oracle_affine()},
                         {"milnor_agrees", euler.milnor_agrees()},
                         {"chain_length", chain.size()}});
      table += "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + verdict + "\n";
      table += text_table({"l", "word", "weight", "chi", "chi_printed", "flag"}, trows) + "\n";
    }
  }
  auto joined = [](const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
    return out;
  };
  rep.check("ceil(k/2) fillings per (n,k)", bad_count.empty(), joined(bad_count));
  rep.check("all words have weight k+1", bad_weight.empty(), joined(bad_weight));
  rep.check("chi at l=0 equals 1+k(-1)^(n+1)", bad_milnor.empty(), joined(bad_milnor));
  rep.check("chi affine in l", bad_affine.empty(), joined(bad_affine));
  rep.check("chi pairwise distinct for n>=2", bad_distinct.empty(), joined(bad_distinct));
  rep.check("Milnor word to last filling in ceil(k/2) contractions", bad_chain.empty(), joined(bad_chain));
  rep.body["entries"] = std::move(entries);
  rep.timing["table"] = sw.ms();

  // relation constants
  Stopwatch rel;
  Json aa = Json::array();
  bool aa_ok = true;
  for (unsigned n = 0; n <= 10; ++n) {
    const auto v = mcg::aa_count(2, n);
    aa.push_back({{"d", 2}, {"n", n}, {"count", v}});
    aa_ok = aa_ok && v == 2;
  }
  const auto aa32 = mcg::aa_count(3, 2);
  aa.push_back({{"d", 3}, {"n", 2}, {"count", aa32}});
  rep.check("aa_count(2,n) = 2 for n in [0,10]", aa_ok);
  rep.check("aa_count(3,2) = 12", aa32 == 12, std::to_string(aa32));

  std::mt19937 rng(20241015);
  unsigned applied = 0, violations = 0;
  for (unsigned trial = 0; trial < opt.random_substitutions; ++trial) {
    const int len = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<mcg::TwistGen> letters;
    for (int i = 0; i < len; ++i) {
      letters.push_back(std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? mcg::TwistGen::boundary()
                                                                             : mcg::TwistGen::sphere());
    }
    const mcg::TwistWord w(mcg::FiberDescriptor::cotangent_sphere(2), letters);
    const auto pos = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, len - 1)(rng));
    const auto dir = std::uniform_int_distribution<int>(0, 1)(rng) ? mcg::Direction::contract : mcg::Direction::expand;
    try {
      violations += mcg::substitute(w, pos, dir).weight() != w.weight();
      ++applied;
    } catch (const mcg::SubstitutionError&) {
    }
  }
  rep.body["relations"] = {{"aa_count", std::move(aa)},
                           {"random_substitutions", {{"trials", opt.random_substitutions},
                                                     {"applied", applied},
                                                     {"weight_violations", violations}}}};
  rep.check("weight invariant under random substitutions", violations == 0,
            std::to_string(applied) + " applied, " + std::to_string(violations) + " violations");
  rep.timing["relations"] = rel.ms();

  rep.csv.emplace_back("fillings.csv", std::move(csv));
  rep.table = std::move(table);
  return rep;
}

// ---------------------------------------------------------------------------
// resolve

struct ResolveOptions {
  std::vector<int> ks = range(1, 15);
  std::vector<int> ns = range(0, 4);
};

inline SuiteReport resolve_suite(const ResolveOptions& opt, unsigned threads) {
  using blowup::SingularityVerdict;
  SuiteReport rep;
  rep.suite = "resolve";
  rep.options = {{"k", int_list(opt.ks)}, {"dim", int_list(opt.ns)}};
  Stopwatch sw;
  struct Case {
    int k, n;
  };
  std::vector<Case> cases;
  for (int k : opt.ks) {
    for (int n : opt.ns) cases.push_back({k, n});
  }
  auto traces = parallel_map(cases.size(), threads, [&](std::size_t i) { return blowup::resolve_A(cases[i].k, cases[i].n); });

  Json entries = Json::array();
  std::string csv = csv_line({"k", "n", "step", "chart", "multiplicity", "verdict", "polynomial"});
  std::string table;
  std::vector<std::string> bad_steps, bad_first, bad_types, bad_mult, bad_mirror;
  int audit_mismatches = 0;
  for (const auto& tr : traces) {
    const std::string tag = "(" + std::to_string(tr.k) + "," + std::to_string(tr.n) + ")";
    if (tr.halted) throw ClassificationError("resolve " + tag + ": " + tr.diagnostic);
    if (static_cast<int>(tr.step_count()) != ceil_half(tr.k) || !tr.resolved()) bad_steps.push_back(tag);

    // step 1 literally y0^2 + ... + y_{last-1}^2 + y_last^{k-1}
    const std::size_t nv = tr.start.nvars(), last = nv - 1;
    blowup::MultiPoly expected = blowup::MultiPoly::variable(nv, last, tr.k - 1, "y");
    for (std::size_t i = 0; i < last; ++i) expected += blowup::MultiPoly::variable(nv, i, 2, "y");
    if (tr.steps.empty() || !(tr.steps.front().poly == expected) || tr.steps.front().poly.str() != expected.str()) {
      bad_first.push_back(tag);
    }

    Json steps = Json::array();
    std::string chain_text = tr.start_verdict.str();
    for (std::size_t j = 0; j < tr.steps.size(); ++j) {
      const auto& s = tr.steps[j];
      if (j + 1 < tr.steps.size() && !(s.verdict == SingularityVerdict::a_type(tr.k - 2 * static_cast<int>(j + 1)))) {
        bad_types.push_back(tag);
      }
      if (s.multiplicity != 2) bad_mult.push_back(tag);
      steps.push_back({{"chart", s.chart}, {"polynomial", s.poly.str()}, {"multiplicity", s.multiplicity}, {"verdict", s.verdict.str()}});
      csv += csv_line({std::to_string(tr.k), std::to_string(tr.n), std::to_string(j + 1), std::to_string(s.chart),
                       std::to_string(s.multiplicity), s.verdict.str(), s.poly.str()});
      chain_text += " -> " + s.verdict.str();
    }

    const auto mirror = blowup::mirror_chain(tr);
    const auto chain = mcg::substitution_chain(mcg::milnor_word(tr.k, tr.n), mcg::enumerate_fillings(tr.k, tr.n).back());
    if (mirror != chain) bad_mirror.push_back(tag);
    Json mirror_json = Json::array();
    for (const auto& m : mirror) {
      mirror_json.push_back({{"pos", m.pos}, {"direction", mcg::direction_name(m.direction)}, {"before", m.before.str()}, {"after", m.after.str()}});
    }

    Json audit = Json::array();
    for (const auto& a : blowup::audit_charts(tr.k, tr.n)) {
      audit_mismatches += !a.match();
      audit.push_back({{"chart", a.chart}, {"computed", a.computed.str()}, {"printed", a.printed.str()}, {"match", a.match()}});
    }

    entries.push_back({{"k", tr.k},
                       {"n", tr.n},
                       {"start", tr.start.str()},
                       {"start_verdict", tr.start_verdict.str()},
                       {"steps", std::move(steps)},
                       {"step_count", tr.step_count()},
                       {"resolved", tr.resolved()},
                       {"mirror", std::move(mirror_json)},
                       {"chart_audit", std::move(audit)}});
    table += "k=" + std::to_string(tr.k) + " n=" + std::to_string(tr.n) + ": " + chain_text + " (" +
             std::to_string(tr.step_count()) + (tr.step_count() == 1 ? " step)\n" : " steps)\n");
  }
  auto joined = [](std::vector<std::string> v) {
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
    return out;
  };
  rep.check("ceil(k/2) blow-ups resolve A_k", bad_steps.empty(), joined(bad_steps));
  rep.check("first proper transform is y0^2+...+y_last^(k-1)", bad_first.empty(), joined(bad_first));
  rep.check("intermediate verdicts drop A_m to A_(m-2)", bad_types.empty(), joined(bad_types));
  rep.check("exceptional multiplicity 2", bad_mult.empty(), joined(bad_mult));
  rep.check("mirrored word chain equals substitution chain", bad_mirror.empty(), joined(bad_mirror));
  rep.body["traces"] = std::move(entries);
  rep.body["chart_audit_mismatches"] = audit_mismatches;
  rep.csv.emplace_back("resolve.csv", std::move(csv));
  rep.table = std::move(table);
  rep.timing["traces"] = sw.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// contact-check

struct ContactOptions {
  std::vector<int> ns = range(1, 6);
  int grid = 10000;
  int corner_samples = 2000;
  int plot_samples = 1000;
};

inline SuiteReport contact_suite(const ModelConfig& cfg, const ContactOptions& opt, unsigned threads) {
  cfg.validate();
  SuiteReport rep;
  rep.suite = "contact-check";
  rep.options = {{"n", int_list(opt.ns)}, {"grid", opt.grid}, {"corner_samples", opt.corner_samples}, {"plot_samples", opt.plot_samples}};
  Stopwatch sw;
  const auto profile = contact::make_profile(cfg.C0, cfg.C1, cfg.K, cfg.contact_eps);
  auto minima = parallel_map(opt.ns.size(), threads, [&](std::size_t i) { return contact::verify_profile(profile, opt.ns[i], opt.grid); });
  Json rows = Json::array();
  std::string csv = csv_line({"n", "grid", "min_value", "argmin"});
  std::vector<std::vector<std::string>> trows;
  for (std::size_t i = 0; i < minima.size(); ++i) {
    const auto& m = minima[i];
    const int n = opt.ns[i];
    rows.push_back({{"n", n}, {"min_value", m.min_value}, {"argmin", m.argmin}, {"positive", m.positive()}});
    csv += csv_line({std::to_string(n), std::to_string(opt.grid), num(m.min_value), num(m.argmin)});
    trows.push_back({std::to_string(n), short_num(m.min_value), short_num(m.argmin), m.positive() ? "PASS" : "FAIL"});
    rep.check("n=" + std::to_string(n) + " f^(n-1)(fg'-f'g) > 0", m.positive(), "min " + num(m.min_value) + " at r=" + num(m.argmin));
  }
  rep.body["determinant"] = std::move(rows);
  rep.timing["determinant"] = sw.ms();

  const contact::CornerCurve corner(cfg.contact_eps);
  const auto cr = corner.verify(opt.corner_samples);
  rep.body["corner_curve"] = {{"eps", cfg.contact_eps},
                              {"samples", cr.samples},
                              {"start", cr.start_ok},
                              {"end", cr.end_ok},
                              {"middle_signs", cr.middle_signs_ok},
                              {"monotone", cr.monotone_ok},
                              {"c1_joins", cr.c1_ok}};
  rep.check("corner curve conditions", cr.ok());

  const contact::BaseProfile base(cfg.K, cfg.contact_eps);
  bool increasing = true;
  for (int i = 1; i <= opt.corner_samples; ++i) {
    const double s = static_cast<double>(i) / opt.corner_samples;
    increasing = increasing && base.derivative(s) > 0 && base.value(s) > base.value(s - 1.0 / opt.corner_samples);
  }
  const double e = cfg.contact_eps;
  const bool ends = base.value(e / 2) == cfg.K * (e / 2) * (e / 2) && base.value(1) == cfg.K;
  rep.body["base_profile"] = {{"K", cfg.K}, {"eps", e}, {"increasing", increasing}, {"plateaus", ends}, {"H", contact::BaseProfile::H}};
  rep.check("base profile increasing with exact end pieces", increasing && ends);
  rep.body["notes"] = {"realizations are C2 rather than smooth; only first derivatives enter the checked conditions"};

  rep.csv.emplace_back("contact_minima.csv", std::move(csv));
  rep.csv.emplace_back("contact_profile.csv", contact::profile_csv(profile, opt.plot_samples));
  rep.table = text_table({"n", "min", "argmin", "status"}, trows);
  return rep;
}

}  // namespace lbf::cli
