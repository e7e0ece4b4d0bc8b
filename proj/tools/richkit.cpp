// richkit command line: permutation operations, flag files and verification suites.
//
// Exit codes: 0 success, 1 failed assertion, 2 usage or parse error, 3 budget exceeded.

#include "richkit/demazure.hpp"
#include "richkit/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace richkit;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  int col = 1;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw ParseError("expected a comma-separated list of integers, got '" + text + "'", 1, col);
    out.push_back(std::stoi(tok));
    col += static_cast<int>(tok.size()) + 1;
  }
  if (out.empty()) throw ParseError("empty integer list", 1, 1);
  return out;
}

std::string format_rank_table(const RankTable& t) {
  std::string s;
  for (int a = 0; a <= t.degree(); ++a) {
    for (int b = 0; b <= t.degree(); ++b) s += (b ? " " : "") + std::to_string(t(a, b));
    s += '\n';
  }
  return s;
}

int run_perm(const std::string& op, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw CLI::ValidationError("perm " + op, "expects " + std::to_string(n) + " argument(s), got " +
                                                    std::to_string(args.size()));
  };
  if (op == "inv") {
    need(1);
    std::cout << inversions(parse_perm(args[0])) << '\n';
  } else if (op == "coinv") {
    need(1);
    std::cout << coinversions(parse_perm(args[0])) << '\n';
  } else if (op == "demazure") {
    need(2);
    std::cout << format_perm(star(parse_perm(args[0]), parse_perm(args[1]))) << '\n';
  } else if (op == "decomp") {
    need(1);
    std::cout << format_perm(decreasing_completion(parse_nest(args[0]))) << '\n';
  } else if (op == "nest") {
    need(1);
    std::cout << format_nest(nest_of_perm(parse_perm(args[0]))) << '\n';
  } else if (op == "ess") {
    need(1);
    std::string s;
    for (const auto& [a, b] : essential_set(parse_perm(args[0])))
      s += (s.empty() ? "" : " ") + ("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    std::cout << s << '\n';
  } else if (op == "bruhat") {
    need(2);
    std::cout << (bruhat_leq(parse_perm(args[0]), parse_perm(args[1])) ? "true" : "false") << '\n';
  } else if (op == "smooth") {
    need(1);
    std::cout << (ls_smooth(parse_perm(args[0])) ? "true" : "false") << '\n';
  } else if (op == "rank") {
    need(1);
    std::cout << format_rank_table(rank_table(parse_perm(args[0])));
  } else if (op == "inverse") {
    need(1);
    std::cout << format_perm(parse_perm(args[0]).inverse()) << '\n';
  } else {
    throw CLI::ValidationError("perm", "unknown operation '" + op + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schubert and Richardson loci over finite fields"};
  app.require_subcommand(1);

  auto* perm = app.add_subcommand("perm", "Permutation operations (one-line notation, 0-indexed)");
  std::string perm_op;
  std::vector<std::string> perm_args;
  perm->add_option("op", perm_op, "inv|coinv|demazure|decomp|nest|ess|bruhat|smooth|rank|inverse")->required();
  perm->add_option("args", perm_args, "Permutations or nests");

  auto* assoc = app.add_subcommand("assoc", "Relative position of two complete flags read from files");
  std::string file_p, file_q;
  assoc->add_option("p", file_p)->required();
  assoc->add_option("q", file_q)->required();

  auto* flag = app.add_subcommand("flag", "Flag constructions");
  auto* adapted = flag->add_subcommand("adapted", "A pair of flags in relative position s");
  flag->require_subcommand(1);
  std::string adapted_perm;
  int adapted_q = 2;
  std::string out_p, out_q;
  adapted->add_option("perm", adapted_perm)->required();
  adapted->add_option("--q", adapted_q, "Field size (prime)");
  adapted->add_option("--out-p", out_p, "Write P to this file");
  adapted->add_option("--out-q", out_q, "Write Q to this file");

  app.add_subcommand("suites", "List verification suites");

  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a JSON report");
  SuiteConfig cfg;
  int single_q = 0;
  std::string q_list, out, csv;
  std::uint64_t budget = 0;
  int max_d = 0;
  verify->add_option("suite", cfg.suite)->required();
  verify->add_option("--d", cfg.d, "Dimension (suite default if omitted)");
  auto* qopt = verify->add_option("--q", single_q, "Single field size");
  verify->add_option("--q-list", q_list, "Comma-separated field sizes")->excludes(qopt);
  verify->add_option("--threads", cfg.threads, "Worker cap")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Random seed");
  verify->add_option("--budget", budget, "Cap on q^dim(Fl) (overrides RICHKIT_BUDGET)");
  verify->add_option("--max-d", max_d, "Largest enumerable dimension");
  verify->add_option("--out", out, "Report path (stdout if omitted)");
  verify->add_option("--csv", csv, "Write count polynomials as CSV");
  verify->add_flag("--timing", cfg.timing, "Record elapsed_ms in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(perm)) return run_perm(perm_op, perm_args);

    if (app.got_subcommand(assoc)) {
      const Flag p = read_flag_file(file_p);
      const Flag q = read_flag_file(file_q);
      if (!p.is_complete() || !q.is_complete()) throw ParseError("assoc needs complete flags", 0, 0);
      if (p.dim() != q.dim() || p.field() != q.field())
        throw ParseError("flags live in different spaces (d or p differ)", 0, 0);
      std::cout << format_perm(assoc_perm(p, q)) << '\n';
      return kOk;
    }

    if (app.got_subcommand(flag)) {
      if (!is_prime(adapted_q)) throw CLI::ValidationError("--q", "must be prime");
      const auto [p, q] = adapted_flags(parse_perm(adapted_perm), PrimeField(adapted_q));
      if (out_p.empty() && out_q.empty()) {
        std::cout << format_flag(p) << format_flag(q);
      } else {
        if (!out_p.empty()) write_file(out_p, format_flag(p));
        if (!out_q.empty()) write_file(out_q, format_flag(q));
      }
      return kOk;
    }

    if (app.got_subcommand("suites")) {
      for (const auto& name : suite_names()) std::cout << name << '\n';
      return kOk;
    }

    cfg.budget = Budget::from_env();
    if (budget) cfg.budget.max_points = budget;
    if (max_d) cfg.budget.max_degree = max_d;
    if (single_q) cfg.q_list = {single_q};
    if (!q_list.empty()) cfg.q_list = parse_int_list(q_list);
    const SuiteReport report = run_suite(cfg);
    const std::string json = report_json(report);
    if (out.empty()) std::cout << json;
    else write_file(out, json);
    if (!csv.empty()) write_file(csv, report_csv(report));
    std::cerr << report.suite << ": " << (report.passed ? "passed" : "FAILED") << " (" << report.failures
              << " failure(s))\n";
    return report.passed ? kOk : kAssertion;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (requested " << e.requested() << ", cap " << e.cap()
              << "; raise with --budget or RICHKIT_BUDGET)\n";
    return kBudget;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
