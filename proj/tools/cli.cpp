#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "romanoff/errors.hpp"
#include "romanoff/ledger.hpp"
#include "romanoff/quadroots.hpp"
#include "romanoff/repcount.hpp"

namespace romanoff::cli {

namespace {

std::string to_str(bool v) { return v ? "true" : "false"; }
std::string to_str(u64 v) { return std::to_string(v); }
std::string to_str(i64 v) { return std::to_string(v); }
std::string to_str(unsigned v) { return std::to_string(v); }
std::string to_str(const mpq_class& q) { return q.get_str(); }

// Shortest representation that reads back to the same double.
std::string to_str(double v) {
  char buf[64];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::vector<std::pair<std::string, std::string>> config_fields(const RunConfig& cfg) {
  return {{"zero_in_N", to_str(cfg.zero_in_N)},
          {"memory_budget_bytes", to_str(u64{cfg.memory_budget_bytes})},
          {"work_budget", to_str(u64{cfg.work_budget})},
          {"precision_bits", to_str(cfg.precision_bits)},
          {"output_format", format_name(cfg.output_format)},
          {"seed", to_str(u64{cfg.seed})}};
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json json_cell(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
      s.find('-', 1) == std::string::npos && s != "-") {
    try {
      std::size_t used = 0;
      if (s[0] == '-') {
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
      } else {
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size()) return v;
      }
    } catch (const std::out_of_range&) {
    }
  }
  return s;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct GlobalFlags {
  std::string config_path;
  bool zero_in_N = true;
  u64 memory_budget = 0;
  u64 work_budget = 0;
  unsigned precision = 0;
  std::string format;
  u64 seed = 0;
};

// ---- density -------------------------------------------------------------

struct DensityArgs {
  u64 limit = 0;
  u64 base = 2;
  unsigned terms = 2;
  std::string shape = "squares";
};

int cmd_density(const DensityArgs& a, const RunConfig& cfg, std::ostream& out) {
  RepRequest req;
  req.limit = a.limit;
  req.base = a.base;
  req.terms = a.terms;
  req.shape = parse_shape(a.shape);
  req.zero_in_N = cfg.zero_in_N;
  req.memory_budget = cfg.memory_budget_bytes;
  const auto st = representation_stats(req);
  const bool cs = cs_inequality_holds(st);

  Table t{"density", {"section", "key", "value"}, {}};
  auto stat = [&](const std::string& k, const std::string& v) { t.rows.push_back({"stat", k, v}); };
  const double x = static_cast<double>(st.limit);
  stat("limit", to_str(st.limit));
  stat("base", to_str(st.base));
  stat("terms", to_str(st.terms));
  stat("shape", std::string(to_string(st.shape)));
  stat("zero_in_N", to_str(st.zero_in_N));
  stat("V", to_str(st.represented));
  stat("V_over_x", to_str(static_cast<double>(st.represented) / x));
  stat("sum_r", to_str(st.sum_r));
  stat("sum_r2", to_str(st.sum_r2));
  if (st.sum_r2 > 0) {
    const auto bound = cs_lower_bound(st);
    stat("cs_bound", to_str(bound));
    stat("cs_bound_over_x", to_str(bound.get_d() / x));
  } else {
    stat("cs_bound", "undefined");
  }
  stat("cs_holds", to_str(cs));
  if (st.terms == 2 && st.shape == ExponentShape::squares && st.limit >= 12) {
    const u64 w = sum_r_lower_witness(st.limit, st.base);
    stat("sum_r_witness", to_str(w));
    stat("sum_r_witness_holds", to_str(st.sum_r >= w));
  }
  for (const auto& [r, count] : st.histogram) t.rows.push_back({"hist", to_str(r), to_str(count)});
  write_table(out, t, cfg);
  return cs ? kExitOk : kExitFailed;
}

// ---- quadcount -----------------------------------------------------------

struct QuadArgs {
  i64 a = 0;
  u64 mod = 0;
  std::optional<u64> y;
  u64 max_list = 1000;
};

int cmd_quadcount(const QuadArgs& a, const RunConfig& cfg, std::ostream& out) {
  const CongruenceSpec spec(a.a, a.mod, a.y);
  const u64 n = count_roots(a.a, a.mod);
  const bool ok = within_sqrt_bound(n, a.mod);
  Table t{"quadcount", {"key", "value"}, {}};
  t.rows.push_back({"a", to_str(spec.residue())});
  t.rows.push_back({"mod", to_str(a.mod)});
  t.rows.push_back({"count", to_str(n)});
  t.rows.push_back({"sqrt_bound", to_str(4.0 * std::sqrt(static_cast<double>(a.mod)))});
  t.rows.push_back({"sqrt_bound_holds", to_str(ok)});
  if (n <= a.max_list) {
    std::string roots;
    for (u64 r : enumerate_roots(a.a, a.mod)) {
      if (!roots.empty()) roots += ' ';
      roots += to_str(r);
    }
    t.rows.push_back({"roots", roots});
  }
  bool window_ok = true;
  if (a.y) {
    const u64 w = count_roots_up_to(a.a, a.mod, *a.y);
    window_ok = within_window_bound(w, *a.y);
    const double yy = static_cast<double>(*a.y);
    t.rows.push_back({"y", to_str(*a.y)});
    t.rows.push_back({"window_count", to_str(w)});
    t.rows.push_back({"window_bound", to_str(4.0 * std::cbrt(yy * yy) + 1.0)});
    t.rows.push_back({"window_bound_holds", to_str(window_ok)});
  }
  write_table(out, t, cfg);
  return ok && window_ok ? kExitOk : kExitFailed;
}

// ---- sums ----------------------------------------------------------------

struct SumsArgs {
  std::string kind;
  std::vector<u64> dmax;
  std::vector<u64> y;
  std::vector<u64> m;
  bool rows = false;
};

std::vector<std::string> report_row(const SumReport& r) {
  const int digits = r.value.decimal_digits();
  return {std::string(to_string(r.kind)),
          r.dmax ? to_str(*r.dmax) : "",
          r.y ? to_str(*r.y) : "",
          r.value.to_string(digits),
          r.value.lower_string(digits),
          r.value.upper_string(digits),
          r.exact && mpz_sizeinbase(r.exact->get_den_mpz_t(), 10) <= 200 ? to_str(*r.exact) : "",
          to_str(r.term_count),
          r.residual ? r.residual->to_string(digits) : ""};
}

int cmd_sums(const SumsArgs& a, const RunConfig& cfg, std::ostream& out) {
  const unsigned prec = cfg.precision_bits;
  auto need = [](const std::vector<u64>& v, const char* flag) {
    if (v.empty()) throw DomainError(std::string("sums: ") + flag + " is required for this kind");
  };

  if (a.kind == "assembly") {
    need(a.m, "--m");
    need(a.dmax, "--dmax");
    need(a.y, "--y");
    Table t{"sums",
            {"kind", "m", "dmax", "y", "divisors", "lhs", "lhs_exchanged", "lhs_small_order",
             "lhs_large_order", "s1_part", "s2_part", "ratio", "window_hypothesis_failures"},
            {}};
    bool consistent = true;
    for (u64 m : a.m)
      for (u64 d : a.dmax)
        for (u64 y : a.y) {
          const auto r = assembly_e13(m, d, y, cfg.zero_in_N, prec, cfg.work_budget);
          consistent = consistent && r.lhs == r.lhs_exchanged;
          const int digits = r.s1_part.decimal_digits();
          t.rows.push_back({"assembly", to_str(m), to_str(d), to_str(y), to_str(r.divisors),
                            to_str(r.lhs), to_str(r.lhs_exchanged), to_str(r.lhs_small_order),
                            to_str(r.lhs_large_order), r.s1_part.to_string(digits),
                            r.s2_part.to_string(digits), r.ratio.to_string(digits),
                            to_str(r.window_hypothesis_failures)});
        }
    write_table(out, t, cfg);
    return consistent ? kExitOk : kExitFailed;
  }

  const SumKind kind = parse_sum_kind(a.kind);
  if (a.rows) {
    if (kind != SumKind::s1 && kind != SumKind::s2)
      throw DomainError("sums: --rows is available for s1 and s2");
    need(a.dmax, "--dmax");
    if (kind == SumKind::s2) need(a.y, "--y");
    Table t{"sums", {"kind", "d", "mu_sq", "p_plus", "order2", "term"}, {}};
    for (u64 d : a.dmax) {
      const auto rows = kind == SumKind::s1 ? s1_rows(d, prec) : s2_rows(d, a.y.front(), prec, cfg.work_budget);
      for (const auto& row : rows)
        t.rows.push_back({std::string(to_string(kind)), to_str(row.d), std::to_string(row.mu_sq),
                          to_str(row.p_plus), to_str(row.order2),
                          row.exact_term ? to_str(*row.exact_term) : row.term.to_string()});
    }
    write_table(out, t, cfg);
    return kExitOk;
  }

  Table t{"sums",
          {"kind", "dmax", "y", "value", "lower", "upper", "exact", "term_count", "residual"},
          {}};
  bool ok = true;
  switch (kind) {
    case SumKind::s1:
      need(a.dmax, "--dmax");
      for (u64 d : a.dmax) t.rows.push_back(report_row(s1_partial(d, prec)));
      break;
    case SumKind::s2:
      need(a.dmax, "--dmax");
      need(a.y, "--y");
      for (u64 d : a.dmax)
        for (u64 y : a.y) t.rows.push_back(report_row(s2_partial(d, y, prec, cfg.work_budget)));
      break;
    case SumKind::mertens:
      need(a.y, "--y");
      for (u64 y : a.y) t.rows.push_back(report_row(mertens_partial(y, prec)));
      break;
    case SumKind::product:
      need(a.y, "--y");
      for (u64 y : a.y) {
        const auto r = small_prime_product(y, prec);
        ok = ok && r.log_bound_holds.value_or(false);
        t.rows.push_back(report_row(r));
      }
      break;
  }
  write_table(out, t, cfg);
  return ok ? kExitOk : kExitFailed;
}

// ---- pairs ---------------------------------------------------------------

struct PairsArgs {
  u64 limit = 0;
  i64 h = 0;
};

int cmd_pairs(const PairsArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (a.h == 0) throw DomainError("pairs: h must be nonzero");
  const u64 pi2 = prime_pairs(a.limit, a.h, cfg.memory_budget_bytes);
  const auto product = singular_product(a.h);
  Table t{"pairs", {"key", "value"}, {}};
  t.rows.push_back({"limit", to_str(a.limit)});
  t.rows.push_back({"h", to_str(a.h)});
  t.rows.push_back({"pi2", to_str(pi2)});
  t.rows.push_back({"singular_product", to_str(product)});
  t.rows.push_back({"singular_product_decimal", to_str(product.get_d())});
  if (a.limit >= 3) {
    const double lx = std::log(static_cast<double>(a.limit));
    const double rhs = static_cast<double>(a.limit) / (lx * lx) * product.get_d();
    t.rows.push_back({"pair_bound_expression", to_str(rhs)});
    t.rows.push_back({"pi2_over_expression", to_str(static_cast<double>(pi2) / rhs)});
  }
  write_table(out, t, cfg);
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  u64 mmax = 0;
  u64 pmax = 100'000;
  unsigned max_exp = 32;
  u64 samples = 0;
  u64 grid_mmax = 1'000'000;
  u64 dmax = 10'000;
  unsigned exp_max = 10;
  u64 kmax = 100;
};

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> suites{"lemma12", "prop1", "prop2", "hzero", "k2count"};
  std::vector<std::string> selected;
  if (a.suite == "all")
    selected = suites;
  else if (std::find(suites.begin(), suites.end(), a.suite) != suites.end())
    selected = {a.suite};
  else
    throw DomainError("verify: unknown suite " + a.suite);

  Table t{"verify", {"suite", "status", "checked", "detail"}, {}};
  bool all_pass = true;
  auto record = [&](const std::string& name, bool pass, u64 checked, const std::string& detail) {
    all_pass = all_pass && pass;
    t.rows.push_back({name, pass ? "pass" : "fail", to_str(checked), detail});
  };
  auto oracle_detail = [](const OracleReport& r) {
    if (!r.mismatch) return "moduli=" + to_str(r.moduli);
    const auto& m = *r.mismatch;
    return "a=" + to_str(m.a) + " m=" + to_str(m.m) + " formula=" + to_str(m.formula) +
           " brute=" + to_str(m.brute);
  };

  for (const auto& s : selected) {
    err << "verify: running " << s << '\n';
    if (s == "lemma12") {
      const auto mult = verify_count_roots(a.mmax ? a.mmax : 3000);
      record("lemma12_multiplicativity", !mult.mismatch, mult.checked, oracle_detail(mult));
      const auto pp = verify_prime_power_counts(a.pmax);
      record("lemma12_prime_powers", !pp.mismatch, pp.checked, oracle_detail(pp));
    } else if (s == "prop1") {
      const auto r = verify_prop1(a.mmax ? a.mmax : 2000);
      std::string detail = "max_ratio=" + to_str(r.max_ratio) + " witness_a=" + to_str(r.witness_a) +
                           " witness_m=" + to_str(r.witness_m);
      if (r.violation)
        detail += " violation_a=" + to_str(r.violation->residue()) +
                  " violation_m=" + to_str(r.violation->modulus());
      record("prop1", !r.violation, r.checked, detail);
    } else if (s == "prop2") {
      const auto grid = random_window_grid(a.samples ? a.samples : 10'000, a.grid_mmax, cfg.seed);
      const auto r = verify_prop2(grid);
      std::string detail = "max_ratio=" + to_str(r.max_ratio) + " witness_a=" + to_str(r.witness.a) +
                           " witness_m=" + to_str(r.witness.m) + " witness_y=" + to_str(r.witness.y);
      if (r.violation)
        detail += " violation_a=" + to_str(r.violation->a) + " violation_m=" +
                  to_str(r.violation->m) + " violation_y=" + to_str(r.violation->y);
      record("prop2", !r.violation, r.checked, detail);
    } else if (s == "hzero") {
      const auto r = verify_h_zero_iff(a.max_exp);
      std::string detail = "max_exp=" + to_str(a.max_exp) + " zero_count=" + to_str(r.zero_count);
      if (r.counterexample) {
        const auto& q = *r.counterexample;
        detail += " counterexample=" + to_str(q.m1) + ":" + to_str(q.m2) + ":" + to_str(q.k1) +
                  ":" + to_str(q.k2);
      }
      record("hzero", r.holds(), r.checked, detail);
    } else if (s == "k2count") {
      const auto r = verify_k2_counts(a.samples ? a.samples : 1000, cfg.seed, a.dmax, a.exp_max,
                                      a.kmax, cfg.zero_in_N);
      std::string detail = "dmax=" + to_str(a.dmax) + " kmax=" + to_str(a.kmax);
      for (const auto* inst : {r.mismatch ? &*r.mismatch : nullptr,
                               r.bound_violation ? &*r.bound_violation : nullptr}) {
        if (!inst) continue;
        detail += " instance=" + to_str(inst->d) + ":" + to_str(inst->m1) + ":" +
                  to_str(inst->m2) + ":" + to_str(inst->k1) + " fast=" + to_str(inst->fast) +
                  " brute=" + to_str(inst->brute);
      }
      record("k2count", r.holds(), r.checked, detail);
    }
  }
  write_table(out, t, cfg);
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

void apply_config_text(const std::string& text, RunConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "zero_in_N") {
        cfg.zero_in_N = parse_bool(value);
      } else if (key == "memory_budget_bytes") {
        cfg.memory_budget_bytes = std::stoull(value);
      } else if (key == "work_budget") {
        cfg.work_budget = std::stoull(value);
      } else if (key == "precision_bits") {
        cfg.precision_bits = static_cast<unsigned>(std::stoul(value));
      } else if (key == "output_format") {
        if (value == "csv")
          cfg.output_format = OutputFormat::csv;
        else if (value == "json")
          cfg.output_format = OutputFormat::json;
        else
          throw std::invalid_argument("output_format must be csv or json");
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else {
        throw std::invalid_argument("unknown key " + key);
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void write_table(std::ostream& out, const Table& table, const RunConfig& cfg) {
  if (cfg.output_format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    nlohmann::ordered_json config;
    for (const auto& [k, v] : config_fields(cfg)) config[k] = json_cell(v);
    doc["config"] = config;
    doc["columns"] = table.columns;
    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json rec;
      for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i)
        rec[table.columns[i]] = json_cell(row[i]);
      records.push_back(rec);
    }
    doc["records"] = records;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# command=" << table.command << '\n';
  out << "# config";
  for (const auto& [k, v] : config_fields(cfg)) out << ' ' << k << '=' << v;
  out << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << csv_cell(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for prime-plus-powers representation counts", "romanoff"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  auto* zero_flag = app.add_flag("--zero-in-n,!--no-zero-in-n", g.zero_in_N,
                                 "Admit the exponent 0 (default true)");
  auto* mem_opt = app.add_option("--mem-budget", g.memory_budget, "Memory budget in bytes");
  auto* work_opt = app.add_option("--work-budget", g.work_budget, "Work budget (loop iterations)");
  auto* prec_opt = app.add_option("--precision", g.precision, "Interval precision in bits")
                       ->check(CLI::Range(16u, 1u << 16));
  auto* fmt_opt = app.add_option("--format", g.format, "Output format")
                      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for sampled verifications");
  app.add_option("--config", g.config_path, "Config file with key = value lines")
      ->check(CLI::ExistingFile);

  DensityArgs density;
  auto* density_cmd = app.add_subcommand("density", "Representation statistics V(x), sum r, sum r^2");
  density_cmd->add_option("--limit,-x", density.limit, "Upper limit x")->required();
  density_cmd->add_option("--base,-g", density.base, "Power base g")->check(CLI::Range(2, 1 << 30));
  density_cmd->add_option("--terms,-k", density.terms, "Number of power terms")
      ->check(CLI::Range(1, 8));
  density_cmd->add_option("--shape", density.shape, "Exponent shape")
      ->check(CLI::IsMember({"squares", "linear"}));

  QuadArgs quad;
  std::optional<u64> quad_y;
  auto* quad_cmd = app.add_subcommand("quadcount", "Roots of z^2 = a (mod m)");
  quad_cmd->add_option("--a", quad.a, "Residue a")->required();
  quad_cmd->add_option("--mod", quad.mod, "Modulus m")->required();
  quad_cmd->add_option("--y", quad_y, "Window bound y (2 <= y <= m)");
  quad_cmd->add_option("--max-list", quad.max_list, "List roots when at most this many");

  SumsArgs sums;
  auto* sums_cmd = app.add_subcommand("sums", "Ledger sums S1, S2, Mertens, product, assembly");
  sums_cmd->add_option("--kind", sums.kind, "s1, s2, mertens, product or assembly")
      ->required()
      ->check(CLI::IsMember({"s1", "s2", "mertens", "product", "assembly"}));
  sums_cmd->add_option("--dmax", sums.dmax, "d cutoff(s)")->delimiter(',');
  sums_cmd->add_option("--y", sums.y, "Prime cutoff(s)")->delimiter(',');
  sums_cmd->add_option("--m", sums.m, "Exponent cutoff(s) for the assembly")->delimiter(',');
  sums_cmd->add_flag("--rows", sums.rows, "Emit one row per d instead of totals");

  PairsArgs pairs;
  auto* pairs_cmd = app.add_subcommand("pairs", "Prime pairs at gap h and the singular product");
  pairs_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h / --h
  pairs_cmd->add_option("--limit,-x", pairs.limit, "Upper limit x")->required();
  pairs_cmd->add_option("--h", pairs.h, "Gap h (nonzero)")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Oracle-equivalence and bound suites");
  verify_cmd->add_option("--suite", verify.suite, "lemma12, prop1, prop2, hzero, k2count or all")
      ->check(CLI::IsMember({"lemma12", "prop1", "prop2", "hzero", "k2count", "all"}));
  verify_cmd->add_option("--mmax", verify.mmax, "Modulus scan limit");
  verify_cmd->add_option("--pmax", verify.pmax, "Prime-power limit");
  verify_cmd->add_option("--max-exp", verify.max_exp, "Exponent limit for hzero");
  verify_cmd->add_option("--samples", verify.samples, "Sample count for prop2 / k2count");
  verify_cmd->add_option("--grid-mmax", verify.grid_mmax, "Modulus limit of the prop2 grid");
  verify_cmd->add_option("--dmax", verify.dmax, "Odd d limit for k2count");
  verify_cmd->add_option("--exp-max", verify.exp_max, "Exponent limit for k2count");
  verify_cmd->add_option("--kmax", verify.kmax, "k2 range for k2count");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("romanoff");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!g.config_path.empty()) {
      std::ifstream in(g.config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      apply_config_text(buf.str(), cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (zero_flag->count()) cfg.zero_in_N = g.zero_in_N;
  if (mem_opt->count()) cfg.memory_budget_bytes = g.memory_budget;
  if (work_opt->count()) cfg.work_budget = g.work_budget;
  if (prec_opt->count()) cfg.precision_bits = g.precision;
  if (fmt_opt->count()) cfg.output_format = g.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (seed_opt->count()) cfg.seed = g.seed;
  quad.y = quad_y;

  try {
    if (*density_cmd) return cmd_density(density, cfg, out);
    if (*quad_cmd) return cmd_quadcount(quad, cfg, out);
    if (*sums_cmd) return cmd_sums(sums, cfg, out);
    if (*pairs_cmd) return cmd_pairs(pairs, cfg, out);
    if (*verify_cmd) return cmd_verify(verify, cfg, out, err);
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace romanoff::cli
