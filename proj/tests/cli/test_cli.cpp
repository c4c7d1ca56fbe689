// End-to-end checks of the command-line tool: exit codes, output formats,
// determinism.  Path to the binary arrives as argv[1].
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

int g_failures = 0;

#define CHECK(cond, what)                                             \
  do {                                                                \
    if (!(cond)) {                                                    \
      std::printf("[FAIL] %s:%d: %s\n", __FILE__, __LINE__, (what));  \
      ++g_failures;                                                   \
    }                                                                 \
  } while (0)

int run_cli(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  // ---- usage errors exit 2 ----
  CHECK(run_cli(cli + " bogus-subcommand 2>/dev/null") == 2, "unknown subcommand must exit 2");
  CHECK(run_cli(cli + " 2>/dev/null") == 2, "missing subcommand must exit 2");
  CHECK(run_cli(cli + " finite --p-step -0.1 2>/dev/null") == 2, "negative step must exit 2");
  CHECK(run_cli(cli + " finite --d 1 2>/dev/null") == 2, "d=1 must exit 2");
  CHECK(run_cli(cli + " certify --p-stop 1.5 2>/dev/null") == 2, "p out of range must exit 2");
  CHECK(run_cli(cli + " asymptotic --out /nonexistent-dir/x.csv 2>/dev/null") == 2,
        "unwritable output path must exit 2");
  CHECK(run_cli(cli + " --help >/dev/null") == 0, "--help must exit 0");

  // ---- asymptotic: success, metadata, byte determinism ----
  CHECK(run_cli(cli + " asymptotic --d 3 --d 10 --out cli_a1.csv") == 0,
        "asymptotic must exit 0");
  CHECK(run_cli(cli + " asymptotic --d 3 --d 10 --out cli_a2.csv") == 0,
        "asymptotic rerun must exit 0");
  const std::string a1 = slurp("cli_a1.csv");
  CHECK(!a1.empty(), "asymptotic output must not be empty");
  CHECK(a1 == slurp("cli_a2.csv"), "identical configs must produce identical bytes");
  {
    const std::vector<std::string> ls = lines_of(a1);
    CHECK(ls.size() >= 4, "asymptotic output too short");
    CHECK(ls[0].rfind("# version=", 0) == 0, "first line must carry version");
    CHECK(ls[0].find("config_hash=") != std::string::npos, "first line must carry config hash");
    bool th3 = false, th10 = false, header = false;
    for (const std::string& l : ls) {
      if (l.rfind("# threshold d=3 ", 0) == 0) th3 = true;
      if (l.rfind("# threshold d=10 ", 0) == 0) th10 = true;
      if (l == "d,p,value,branch") header = true;
    }
    CHECK(th3 && th10, "threshold metadata rows missing");
    CHECK(header, "column header missing");
  }
  // stdout emission matches the file byte for byte
  CHECK(run_cli(cli + " asymptotic --d 3 --d 10 > cli_a3.csv") == 0, "stdout run must exit 0");
  CHECK(slurp("cli_a3.csv") == a1, "stdout and --out must agree");

  // ---- finite: per-row error column, overall exit 1 on any error ----
  CHECK(run_cli(cli +
                " finite --d 3 --n 2 --n 35 --p-start 0.9 --p-stop 0.9 --p-step 0.1"
                " --out cli_f.csv 2>/dev/null") == 1,
        "row error must exit 1");
  {
    const std::vector<std::string> ls = lines_of(slurp("cli_f.csv"));
    CHECK(ls.size() == 4, "finite output must have preamble, header, two rows");
    CHECK(ls[1] == "d,n,p,value,gap,iterations,error", "finite header mismatch");
    const std::vector<std::string> good = split_csv(ls[2]);
    CHECK(good.size() == 7, "finite row must have 7 cells");
    CHECK(good[1] == "2" && good[6].empty(), "n=2 row must succeed");
    CHECK(!good[3].empty() && !good[4].empty(), "n=2 row must carry value and gap");
    const std::vector<std::string> bad = split_csv(ls[3]);
    CHECK(bad.size() == 7, "error row must still have 7 cells");
    CHECK(bad[1] == "35" && bad[6] == "size", "n=35 row must record a size error");
    CHECK(bad[3].empty() && bad[4].empty() && bad[5].empty(),
          "error row must leave value cells empty");
  }
  CHECK(run_cli(cli + " finite --d 3 --n 2 --p-start 0.6 --p-stop 0.9 --p-step 0.3"
                      " --out cli_f2.csv") == 0,
        "clean finite run must exit 0");

  // ---- certify: zero rows below separability, json well-formed ----
  CHECK(run_cli(cli +
                " certify --d 3 --n 2 --p-start 0.4 --p-stop 0.95 --p-step 0.11"
                " --tol-gap 1e-5 --format json --out cli_c.json") == 0,
        "certify must exit 0");
  {
    nlohmann::json doc;
    std::ifstream in("cli_c.json");
    CHECK(static_cast<bool>(in), "certify json missing");
    bool parsed = true;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error&) {
      parsed = false;
    }
    CHECK(parsed, "certify json must parse");
    if (parsed) {
      CHECK(doc["command"] == "certify", "json command field");
      CHECK(doc["version"].is_string(), "json version field");
      CHECK(doc["rows"].is_array() && doc["rows"].size() == 6, "6 grid rows expected");
      const auto& r0 = doc["rows"][0];
      CHECK(r0["p"].get<double>() == 0.4, "first grid point");
      CHECK(r0["lower"].get<double>() == 0.0 && r0["upper"].get<double>() == 0.0,
            "ppt-regime rows are exact zeros");
      CHECK(r0["primal_feasible"].get<bool>(), "ppt-regime rows are feasible");
      for (const auto& r : doc["rows"]) {
        CHECK(r["lower"].get<double>() <= r["upper"].get<double>() + 1e-9,
              "lower must not exceed upper");
        const auto& asym = r["asymptotic"];
        CHECK(asym.get<double>() <= r["upper"].get<double>() + 1e-9,
              "asymptote must respect upper bound");
        if (!r["primal"].is_null()) {
          CHECK(r["primal"].get<double>() >= r["lower"].get<double>() - 1e-9,
                "primal must respect lower bound");
          CHECK(r["gap"].get<double>() >= -1e-12, "gap must be nonnegative");
        }
      }
    }
  }
  // csv variant of the same config, spot-check the p=0.4 row shape
  CHECK(run_cli(cli +
                " certify --d 3 --n 2 --p-start 0.4 --p-stop 0.95 --p-step 0.11"
                " --tol-gap 1e-5 --out cli_c.csv") == 0,
        "certify csv must exit 0");
  {
    const std::vector<std::string> ls = lines_of(slurp("cli_c.csv"));
    CHECK(ls.size() == 8, "certify csv must have preamble, header, 6 rows");
    CHECK(ls[1] ==
              "d,n,p,lower,primal,upper,asymptotic,gap,log_negativity,primal_feasible,"
              "dual_feasible,trial_feasible",
          "certify header mismatch");
    const std::vector<std::string> r0 = split_csv(ls[2]);
    CHECK(r0.size() == 12, "certify row must have 12 cells");
    CHECK(r0[2] == "0.4" && r0[3] == "0" && r0[5] == "0", "p=0.4 row must be zero");
  }

  // ---- convexity: sentinel curve, summary comments ----
  CHECK(run_cli(cli +
                " convexity --d 3 --n 2 --p-start 0.6 --p-stop 0.7 --p-step 0.02"
                " --out cli_x.csv") == 0,
        "convexity must exit 0");
  {
    const std::vector<std::string> ls = lines_of(slurp("cli_x.csv"));
    bool sentinel_note = false, header = false, sum0 = false, sum2 = false;
    int asym_rows = 0, finite_rows = 0;
    for (const std::string& l : ls) {
      if (l.rfind("# n=0 rows", 0) == 0) sentinel_note = true;
      if (l == "d,n,p,second_difference") header = true;
      if (l.rfind("# min_second_difference d=3 n=0 ", 0) == 0) sum0 = true;
      if (l.rfind("# min_second_difference d=3 n=2 ", 0) == 0) sum2 = true;
      if (l.rfind("3,0,", 0) == 0) ++asym_rows;
      if (l.rfind("3,2,", 0) == 0) ++finite_rows;
    }
    CHECK(sentinel_note, "sentinel explanation comment missing");
    CHECK(header, "convexity header missing");
    CHECK(sum0 && sum2, "summary comments missing");
    CHECK(asym_rows == 4 && finite_rows == 4, "6-point grid must yield 4 interior rows");
  }
  CHECK(run_cli(cli + " convexity --d 3 --p-start 0.6 --p-stop 0.61 --p-step 0.01"
                      " 2>/dev/null >/dev/null") == 2,
        "grid with fewer than 3 points must exit 2");

  // ---- oracle: clean pass, injected fault detected ----
  CHECK(run_cli(cli + " oracle --out cli_o.csv") == 0, "oracle must exit 0");
  {
    const std::vector<std::string> ls = lines_of(slurp("cli_o.csv"));
    CHECK(ls.size() == 14, "oracle output must list 12 checks");
    CHECK(ls[1] == "check,status,max_error,tolerance,detail", "oracle header mismatch");
    for (std::size_t i = 2; i < ls.size(); ++i)
      CHECK(ls[i].find(",pass,") != std::string::npos, "all oracle checks must pass");
  }
  CHECK(run_cli(cli + " oracle --inject-fault --out cli_of.csv") == 1,
        "injected fault must exit 1");
  {
    const std::string text = slurp("cli_of.csv");
    CHECK(text.find("kron_reduced_vs_dense,fail,") != std::string::npos,
          "fault must surface in the report");
  }

  // ---- json format for oracle parses too ----
  CHECK(run_cli(cli + " oracle --format json --out cli_o.json") == 0, "oracle json must exit 0");
  {
    nlohmann::json doc;
    std::ifstream in("cli_o.json");
    bool parsed = true;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error&) {
      parsed = false;
    }
    CHECK(parsed, "oracle json must parse");
    if (parsed) CHECK(doc["rows"].size() == 12, "oracle json must list 12 checks");
  }

  if (g_failures) {
    std::printf("%d CLI check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all CLI checks passed\n");
  return 0;
}
