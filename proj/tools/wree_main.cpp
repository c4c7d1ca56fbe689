#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "werner_ree.h"

namespace {

// All floats are serialized through this one formatter: 15 significant
// digits, '.' decimal, no locale, so identical configs give identical bytes.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string json_num(double v) { return std::isfinite(v) ? fmt(v) : "null"; }

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

struct Options {
  std::vector<int> d{3, 10};
  std::vector<int> n{1};
  double p_start = 0.5;
  double p_stop = 1.0;
  double p_step = 0.005;
  double tol_gap = 1e-6;
  std::string format = "csv";
  std::string out;
  bool inject_fault = false;
};

std::vector<double> build_grid(const Options& opt) {
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double p = opt.p_start + i * opt.p_step;
    if (p > opt.p_stop + 1e-12) break;
    grid.push_back(std::min(p, opt.p_stop));
  }
  return grid;
}

std::string config_string(const char* cmd, const Options& opt) {
  std::ostringstream os;
  os << "command=" << cmd << ";d=";
  for (std::size_t i = 0; i < opt.d.size(); ++i) os << (i ? "," : "") << opt.d[i];
  os << ";n=";
  for (std::size_t i = 0; i < opt.n.size(); ++i) os << (i ? "," : "") << opt.n[i];
  os << ";p=" << fmt(opt.p_start) << ":" << fmt(opt.p_stop) << ":" << fmt(opt.p_step)
     << ";tol_gap=" << fmt(opt.tol_gap) << ";format=" << opt.format;
  if (opt.inject_fault) os << ";inject_fault=1";
  return os.str();
}

std::string config_hash(const char* cmd, const Options& opt) {
  return hex64(fnv1a(config_string(cmd, opt)));
}

std::string csv_preamble(const char* cmd, const Options& opt) {
  return "# version=" + std::string(wree_version()) + " config_hash=" + config_hash(cmd, opt) +
         "\n";
}

std::string json_preamble(const char* cmd, const Options& opt) {
  return "{\n  \"version\": \"" + std::string(wree_version()) + "\",\n  \"config_hash\": \"" +
         config_hash(cmd, opt) + "\",\n  \"command\": \"" + cmd + "\",\n";
}

wree_tolerances make_tolerances(const Options& opt) {
  wree_tolerances tol = wree_default_tolerances();
  tol.tol_gap = opt.tol_gap;
  return tol;
}

void parallel_for(int count, const std::function<void(int)>& job) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int nthreads = std::min(count, std::max(1, std::min(hw, 16)));
  if (nthreads <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  for (std::thread& th : pool) th.join();
}

int write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file: " << opt.out << "\n";
    return 2;
  }
  f << text;
  f.flush();
  if (!f) {
    std::cerr << "error: write failed: " << opt.out << "\n";
    return 2;
  }
  return 0;
}

int finish(const Options& opt, const std::string& text, int data_rc) {
  const int io_rc = write_output(opt, text);
  return io_rc ? io_rc : data_rc;
}

const char* kBranchNames[] = {"zero", "entropic", "linear"};

int cmd_asymptotic(const Options& opt) {
  const std::vector<double> grid = build_grid(opt);
  struct Row {
    int d = 0;
    double p = 0, value = 0;
    int branch = 0;
  };
  const int np = static_cast<int>(grid.size());
  std::vector<Row> rows(opt.d.size() * grid.size());
  parallel_for(static_cast<int>(rows.size()), [&](int idx) {
    Row& r = rows[idx];
    r.d = opt.d[idx / np];
    r.p = grid[idx % np];
    wree_asymptotic_ree(r.d, r.p, &r.value);
    wree_asymptotic_branch(r.d, r.p, &r.branch);
  });
  std::ostringstream os;
  if (opt.format == "csv") {
    os << csv_preamble("asymptotic", opt);
    for (int d : opt.d) {
      double pp = 0;
      wree_threshold(d, &pp);
      os << "# threshold d=" << d << " p=" << fmt(pp) << "\n";
    }
    os << "d,p,value,branch\n";
    for (const Row& r : rows)
      os << r.d << "," << fmt(r.p) << "," << fmt(r.value) << "," << kBranchNames[r.branch]
         << "\n";
  } else {
    os << json_preamble("asymptotic", opt) << "  \"thresholds\": [";
    for (std::size_t i = 0; i < opt.d.size(); ++i) {
      double pp = 0;
      wree_threshold(opt.d[i], &pp);
      os << (i ? ", " : "") << "{\"d\": " << opt.d[i] << ", \"p\": " << fmt(pp) << "}";
    }
    os << "],\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      os << "    {\"d\": " << r.d << ", \"p\": " << fmt(r.p) << ", \"value\": " << fmt(r.value)
         << ", \"branch\": \"" << kBranchNames[r.branch] << "\"}" << (i + 1 < rows.size() ? "," : "")
         << "\n";
    }
    os << "  ]\n}\n";
  }
  return finish(opt, os.str(), 0);
}

int cmd_finite(const Options& opt) {
  const std::vector<double> grid = build_grid(opt);
  struct Row {
    int d = 0, n = 0;
    double p = 0, value = 0, gap = 0;
    int iterations = 0;
    bool has = false;
    std::string error;
  };
  const int np = static_cast<int>(grid.size());
  const int nn = static_cast<int>(opt.n.size());
  std::vector<Row> rows(opt.d.size() * opt.n.size() * grid.size());
  const wree_tolerances tol = make_tolerances(opt);
  parallel_for(static_cast<int>(rows.size()), [&](int idx) {
    Row& r = rows[idx];
    r.d = opt.d[idx / (nn * np)];
    r.n = opt.n[(idx / np) % nn];
    r.p = grid[idx % np];
    wree_problem* prob = nullptr;
    wree_status st = wree_problem_create(r.d, r.p, r.n, &prob);
    if (st == WREE_OK) {
      wree_solution* sol = nullptr;
      st = wree_solve(prob, &tol, &sol);
      if (sol) {
        wree_solution_value(sol, &r.value);
        wree_solution_gap(sol, &r.gap);
        wree_solution_iterations(sol, &r.iterations);
        r.has = true;
        wree_solution_destroy(sol);
      }
    }
    wree_problem_destroy(prob);
    if (st != WREE_OK) r.error = wree_status_name(st);
  });
  int failures = 0;
  for (const Row& r : rows)
    if (!r.error.empty()) ++failures;
  std::ostringstream os;
  if (opt.format == "csv") {
    os << csv_preamble("finite", opt) << "d,n,p,value,gap,iterations,error\n";
    for (const Row& r : rows) {
      os << r.d << "," << r.n << "," << fmt(r.p) << ",";
      if (r.has) os << fmt(r.value) << "," << fmt(r.gap) << "," << r.iterations;
      else os << ",,";
      os << "," << r.error << "\n";
    }
  } else {
    os << json_preamble("finite", opt) << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      os << "    {\"d\": " << r.d << ", \"n\": " << r.n << ", \"p\": " << fmt(r.p);
      if (r.has)
        os << ", \"value\": " << json_num(r.value) << ", \"gap\": " << json_num(r.gap)
           << ", \"iterations\": " << r.iterations;
      else
        os << ", \"value\": null, \"gap\": null, \"iterations\": null";
      os << ", \"error\": \"" << json_escape(r.error) << "\"}" << (i + 1 < rows.size() ? "," : "")
         << "\n";
    }
    os << "  ]\n}\n";
  }
  if (failures)
    std::cerr << "finite: " << failures << " grid point(s) recorded an error\n";
  return finish(opt, os.str(), failures ? 1 : 0);
}

int cmd_certify(const Options& opt) {
  const std::vector<double> grid = build_grid(opt);
  struct Row {
    wree_certificate c{};
    wree_status rc = WREE_OK;
  };
  const int np = static_cast<int>(grid.size());
  const int nn = static_cast<int>(opt.n.size());
  std::vector<Row> rows(opt.d.size() * opt.n.size() * grid.size());
  const wree_tolerances tol = make_tolerances(opt);
  parallel_for(static_cast<int>(rows.size()), [&](int idx) {
    Row& r = rows[idx];
    const int d = opt.d[idx / (nn * np)];
    const int n = opt.n[(idx / np) % nn];
    const double p = grid[idx % np];
    r.rc = wree_certify(d, p, n, &tol, &r.c);
  });
  // Sandwich validation: any violation is a hard failure (exit 1) but every
  // row is still emitted for inspection.
  int violations = 0;
  for (const Row& r : rows) {
    const wree_certificate& c = r.c;
    bool bad = r.rc != WREE_OK;
    if (c.lower > c.upper + opt.tol_gap) bad = true;
    if (c.asymptotic < c.lower - opt.tol_gap || c.asymptotic > c.upper + opt.tol_gap) bad = true;
    if (c.has_primal && (c.primal < c.lower - opt.tol_gap || c.primal > c.upper + opt.tol_gap))
      bad = true;
    if (bad) {
      ++violations;
      std::cerr << "certify: violation at d=" << c.d << " n=" << c.n << " p=" << fmt(c.p)
                << " status=" << wree_status_name(r.rc) << "\n";
    }
  }
  std::ostringstream os;
  if (opt.format == "csv") {
    os << csv_preamble("certify", opt)
       << "d,n,p,lower,primal,upper,asymptotic,gap,log_negativity,primal_feasible,dual_feasible,"
          "trial_feasible\n";
    for (const Row& r : rows) {
      const wree_certificate& c = r.c;
      os << c.d << "," << c.n << "," << fmt(c.p) << "," << fmt(c.lower) << ",";
      if (c.has_primal) os << fmt(c.primal);
      os << "," << fmt(c.upper) << "," << fmt(c.asymptotic) << ",";
      if (c.has_primal) os << fmt(c.gap);
      os << ",";
      if (c.has_log_negativity) os << fmt(c.log_negativity);
      os << ",";
      if (c.has_primal) os << c.primal_feasible;
      os << "," << c.dual_feasible << "," << c.trial_feasible << "\n";
    }
  } else {
    os << json_preamble("certify", opt) << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const wree_certificate& c = rows[i].c;
      os << "    {\"d\": " << c.d << ", \"n\": " << c.n << ", \"p\": " << fmt(c.p)
         << ", \"lower\": " << json_num(c.lower)
         << ", \"primal\": " << (c.has_primal ? json_num(c.primal) : "null")
         << ", \"upper\": " << json_num(c.upper) << ", \"asymptotic\": " << json_num(c.asymptotic)
         << ", \"gap\": " << (c.has_primal ? json_num(c.gap) : "null") << ", \"log_negativity\": "
         << (c.has_log_negativity ? json_num(c.log_negativity) : "null")
         << ", \"primal_feasible\": " << (c.has_primal ? (c.primal_feasible ? "true" : "false") : "null")
         << ", \"dual_feasible\": " << (c.dual_feasible ? "true" : "false")
         << ", \"trial_feasible\": " << (c.trial_feasible ? "true" : "false") << "}"
         << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
  }
  return finish(opt, os.str(), violations ? 1 : 0);
}

int cmd_convexity(const Options& opt) {
  const std::vector<double> grid = build_grid(opt);
  if (grid.size() < 3) {
    std::cerr << "error: convexity needs a p-grid with at least 3 points\n";
    return 2;
  }
  // Curve list per d: n=0 denotes the asymptotic (n -> infinity) curve,
  // followed by the requested finite-n solver curves.
  struct Curve {
    int d = 0, n = 0;
    std::vector<double> values;
    std::vector<std::string> errors;
    bool usable = true;
  };
  std::vector<Curve> curves;
  for (int d : opt.d) {
    curves.push_back({d, 0, {}, {}, true});
    for (int n : opt.n) curves.push_back({d, n, {}, {}, true});
  }
  const int np = static_cast<int>(grid.size());
  for (Curve& c : curves) {
    c.values.assign(np, 0.0);
    c.errors.assign(np, "");
  }
  const wree_tolerances tol = make_tolerances(opt);
  parallel_for(static_cast<int>(curves.size()) * np, [&](int idx) {
    Curve& c = curves[idx / np];
    const int pi = idx % np;
    const double p = grid[pi];
    if (c.n == 0) {
      wree_asymptotic_ree(c.d, p, &c.values[pi]);
      return;
    }
    wree_problem* prob = nullptr;
    wree_status st = wree_problem_create(c.d, p, c.n, &prob);
    if (st == WREE_OK) {
      wree_solution* sol = nullptr;
      st = wree_solve(prob, &tol, &sol);
      if (sol) {
        wree_solution_value(sol, &c.values[pi]);
        wree_solution_destroy(sol);
      }
    }
    wree_problem_destroy(prob);
    if (st == WREE_ERR_CERTIFICATION) {
      c.errors[pi] = wree_status_name(st);  // value still usable for differences
    } else if (st != WREE_OK) {
      c.errors[pi] = wree_status_name(st);
      c.usable = false;
    }
  });
  int failures = 0;
  std::vector<std::string> error_notes;
  for (const Curve& c : curves)
    for (int i = 0; i < np; ++i)
      if (!c.errors[i].empty()) {
        ++failures;
        error_notes.push_back("d=" + std::to_string(c.d) + " n=" + std::to_string(c.n) +
                              " p=" + fmt(grid[i]) + ": " + c.errors[i]);
      }
  std::ostringstream os;
  if (opt.format == "csv") {
    os << csv_preamble("convexity", opt)
       << "# n=0 rows are the asymptotic (n->infinity) curve\nd,n,p,second_difference\n";
    for (const Curve& c : curves) {
      if (!c.usable) continue;
      for (int i = 1; i + 1 < np; ++i)
        os << c.d << "," << c.n << "," << fmt(grid[i]) << ","
           << fmt(c.values[i + 1] - 2.0 * c.values[i] + c.values[i - 1]) << "\n";
    }
    for (const Curve& c : curves) {
      if (!c.usable) continue;
      double min_sd = std::numeric_limits<double>::infinity();
      for (int i = 1; i + 1 < np; ++i)
        min_sd = std::min(min_sd, c.values[i + 1] - 2.0 * c.values[i] + c.values[i - 1]);
      os << "# min_second_difference d=" << c.d << " n=" << c.n << " value=" << fmt(min_sd)
         << "\n";
    }
    for (const std::string& e : error_notes) os << "# error " << e << "\n";
  } else {
    os << json_preamble("convexity", opt) << "  \"rows\": [\n";
    bool first = true;
    for (const Curve& c : curves) {
      if (!c.usable) continue;
      for (int i = 1; i + 1 < np; ++i) {
        if (!first) os << ",\n";
        first = false;
        os << "    {\"d\": " << c.d << ", \"n\": " << c.n << ", \"p\": " << fmt(grid[i])
           << ", \"second_difference\": "
           << json_num(c.values[i + 1] - 2.0 * c.values[i] + c.values[i - 1]) << "}";
      }
    }
    os << "\n  ],\n  \"summaries\": [\n";
    first = true;
    for (const Curve& c : curves) {
      if (!c.usable) continue;
      double min_sd = std::numeric_limits<double>::infinity();
      for (int i = 1; i + 1 < np; ++i)
        min_sd = std::min(min_sd, c.values[i + 1] - 2.0 * c.values[i] + c.values[i - 1]);
      if (!first) os << ",\n";
      first = false;
      os << "    {\"d\": " << c.d << ", \"n\": " << c.n
         << ", \"min_second_difference\": " << json_num(min_sd) << "}";
    }
    os << "\n  ],\n  \"errors\": [";
    for (std::size_t i = 0; i < error_notes.size(); ++i)
      os << (i ? ", " : "") << "\"" << json_escape(error_notes[i]) << "\"";
    os << "]\n}\n";
  }
  if (failures) std::cerr << "convexity: " << failures << " grid point(s) recorded an error\n";
  return finish(opt, os.str(), failures ? 1 : 0);
}

int cmd_oracle(const Options& opt) {
  wree_oracle_report* rep = nullptr;
  const wree_status st = wree_oracle_run(opt.inject_fault ? 1 : 0, &rep);
  if (st != WREE_OK) {
    std::cerr << "oracle: suite failed to run: " << wree_status_name(st) << "\n";
    return 1;
  }
  const int count = wree_oracle_count(rep);
  bool all_passed = true;
  std::ostringstream os;
  if (opt.format == "csv") {
    os << csv_preamble("oracle", opt) << "check,status,max_error,tolerance,detail\n";
    for (int i = 0; i < count; ++i) {
      const bool ok = wree_oracle_passed(rep, i) != 0;
      all_passed = all_passed && ok;
      os << wree_oracle_name(rep, i) << "," << (ok ? "pass" : "fail") << ","
         << fmt(wree_oracle_error(rep, i)) << "," << fmt(wree_oracle_tolerance(rep, i)) << ","
         << csv_quote(wree_oracle_detail(rep, i)) << "\n";
    }
  } else {
    os << json_preamble("oracle", opt) << "  \"rows\": [\n";
    for (int i = 0; i < count; ++i) {
      const bool ok = wree_oracle_passed(rep, i) != 0;
      all_passed = all_passed && ok;
      os << "    {\"check\": \"" << json_escape(wree_oracle_name(rep, i)) << "\", \"status\": \""
         << (ok ? "pass" : "fail") << "\", \"max_error\": " << json_num(wree_oracle_error(rep, i))
         << ", \"tolerance\": " << json_num(wree_oracle_tolerance(rep, i)) << ", \"detail\": \""
         << json_escape(wree_oracle_detail(rep, i)) << "\"}" << (i + 1 < count ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
  }
  wree_oracle_report_destroy(rep);
  return finish(opt, os.str(), all_passed ? 0 : 1);
}

int validate_options(const Options& opt, bool needs_grid) {
  for (int d : opt.d)
    if (d < 2) {
      std::cerr << "error: --d must be >= 2\n";
      return 2;
    }
  for (int n : opt.n)
    if (n < 1) {
      std::cerr << "error: --n must be >= 1\n";
      return 2;
    }
  if (needs_grid) {
    if (!(opt.p_step > 0.0)) {
      std::cerr << "error: --p-step must be positive\n";
      return 2;
    }
    if (!(opt.p_start >= 0.0 && opt.p_stop <= 1.0 && opt.p_start <= opt.p_stop)) {
      std::cerr << "error: p-grid must satisfy 0 <= p-start <= p-stop <= 1\n";
      return 2;
    }
  }
  if (!(opt.tol_gap > 0.0)) {
    std::cerr << "error: --tol-gap must be positive\n";
    return 2;
  }
  if (opt.format != "csv" && opt.format != "json") {
    std::cerr << "error: --format must be csv or json\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified relative entropy of entanglement for n-copy Werner states"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--d", opt.d, "local dimensions")->capture_default_str();
    if (with_n) sub->add_option("--n", opt.n, "copy counts")->capture_default_str();
    sub->add_option("--p-start", opt.p_start, "first grid point")->capture_default_str();
    sub->add_option("--p-stop", opt.p_stop, "last grid point")->capture_default_str();
    sub->add_option("--p-step", opt.p_step, "grid spacing")->capture_default_str();
    sub->add_option("--tol-gap", opt.tol_gap, "certified duality gap tolerance (bits)")
        ->capture_default_str();
    sub->add_option("--format", opt.format, "output format: csv|json")->capture_default_str();
    sub->add_option("--out", opt.out, "output path (default stdout)");
  };

  CLI::App* asym = app.add_subcommand("asymptotic", "closed-form asymptotic curve data");
  add_common(asym, false);
  CLI::App* fin = app.add_subcommand("finite", "certified finite-n solver values");
  add_common(fin, true);
  CLI::App* cert = app.add_subcommand("certify", "lower/primal/upper bracket per grid point");
  add_common(cert, true);
  CLI::App* conv =
      app.add_subcommand("convexity", "second differences of finite-n and asymptotic curves");
  add_common(conv, true);
  CLI::App* orac = app.add_subcommand("oracle", "dense-matrix verification suite");
  orac->add_option("--format", opt.format, "output format: csv|json")->capture_default_str();
  orac->add_option("--out", opt.out, "output path (default stdout)");
  orac->add_flag("--inject-fault", opt.inject_fault, "perturb one check (test mode)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  const bool needs_grid = !orac->parsed();
  const int vrc = validate_options(opt, needs_grid);
  if (vrc) return vrc;

  if (asym->parsed()) return cmd_asymptotic(opt);
  if (fin->parsed()) return cmd_finite(opt);
  if (cert->parsed()) return cmd_certify(opt);
  if (conv->parsed()) return cmd_convexity(opt);
  return cmd_oracle(opt);
}
