#include "maf_cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "maf/approx3.hpp"
#include "maf/certificate.hpp"
#include "maf/exact.hpp"
#include "maf/gen.hpp"
#include "maf/newick.hpp"
#include "maf/redblue.hpp"
#include "maf/refine.hpp"
#include "maf/rng.hpp"

namespace maf::cli {

namespace {

Instance load_instance(const std::string& in1, const std::string& in2,
                       bool rho) {
  Instance inst = Instance::make(read_newick_file(in1), read_newick_file(in2));
  return rho ? inst.augment_with_rho() : inst;
}

int oracle_cap(int flag_value) {
  if (const char* env = std::getenv("MAF_ORACLE_CAP")) {
    return std::atoi(env);
  }
  return flag_value;
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r);
  return buf;
}

struct SolveArgs {
  std::string algo = "redblue";
  std::string in1, in2, cert;
  bool greedy = false;
  bool rho = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.in1, a.in2, a.rho);
  SolveResult res = a.algo == "three" ? run_three_approx(inst)
                                      : run_red_blue(inst);
  AgreementForest final_forest = res.forest;
  std::optional<AgreementForest> greedy;
  if (a.greedy) {
    greedy = greedy_merge(inst, res.forest);
    final_forest = *greedy;
  }
  if (!a.cert.empty()) {
    std::ofstream f(a.cert);
    if (!f) throw Error("cannot write certificate: " + a.cert);
    f << certificate_json(inst, res, 0, greedy ? &*greedy : nullptr);
  }
  out << "value=" << final_forest.value() << " dual=" << res.dual.objective
      << " cuts=" << res.accounting.delta_p << "\n";
  return 0;
}

struct ExactArgs {
  std::string in1, in2;
  int cap = 10;
  bool rho = false;
  bool allow_large = false;
};

int cmd_exact(const ExactArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.in1, a.in2, a.rho);
  int cap = oracle_cap(a.cap);
  if (cap > 12 && !a.allow_large) {
    throw InstanceTooLarge("cap beyond 12 requires --allow-large");
  }
  ExactResult res = exact_maf(inst, cap);
  out << "value=" << res.value << " blocks=";
  for (size_t i = 0; i < res.witness.size(); ++i) {
    if (i) out << "|";
    for (size_t j = 0; j < res.witness[i].size(); ++j) {
      if (j) out << ",";
      out << inst.label_name(res.witness[i][j]);
    }
  }
  out << "\n";
  return 0;
}

struct GenArgs {
  int n = 0;
  int spr = 0;
  std::uint64_t seed = 0;
  std::string out1, out2;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GeneratedInstance gi = make_instance(a.n, a.spr, a.seed);
  write_newick_file(gi.instance.tree(Tree::T1), a.out1);
  write_newick_file(gi.instance.tree(Tree::T2), a.out2);
  out << "wrote " << a.out1 << " " << a.out2 << " bound=" << gi.upper_bound
      << "\n";
  return 0;
}

struct VerifyArgs {
  std::string in1, in2, cert;
  bool rho = false;
  int cap = 12;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.in1, a.in2, a.rho);
  std::ifstream f(a.cert);
  if (!f) throw Error("cannot open certificate: " + a.cert);
  std::stringstream buf;
  buf << f.rdbuf();
  CertificateCheck check = verify_certificate(inst, buf.str(), a.cap);
  if (!check.ok) {
    out << "verify=failed: " << check.message << "\n";
    return 2;
  }
  out << "verify=ok\n";
  return 0;
}

struct BenchArgs {
  int runs = 0;
  int n = 0;
  int spr = 0;
  std::uint64_t seed = 0;
  std::string csv;
  bool greedy = false;
  int jobs = 1;
};

struct BenchRow {
  std::uint64_t seed = 0;
  int value = 0;
  long long dual = 0;
  double ratio = 0;
  int greedy_value = -1;
  long long millis = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.runs <= 0 || a.n <= 0 || a.jobs <= 0) {
    throw InvalidSize("bench needs positive runs, size and jobs");
  }
  std::vector<BenchRow> rows(a.runs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < a.runs; i = next.fetch_add(1)) {
      BenchRow& row = rows[i];
      row.seed = split_seed(a.seed, static_cast<std::uint64_t>(i));
      auto t0 = std::chrono::steady_clock::now();
      GeneratedInstance gi = make_instance(a.n, a.spr, row.seed);
      SolveOptions opts;
      opts.exhaustive_verify_cap = -1;  // runs are far beyond the cap anyway
      SolveResult res = run_red_blue(gi.instance, opts);
      row.value = res.forest.value();
      row.dual = res.dual.objective;
      row.ratio = static_cast<double>(row.value) /
                  static_cast<double>(std::max<long long>(row.dual, 1));
      if (a.greedy) {
        row.greedy_value = greedy_merge(gi.instance, res.forest).value();
      }
      auto t1 = std::chrono::steady_clock::now();
      row.millis =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
    }
  };
  int threads = std::min(a.jobs, a.runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "seed,n,k,value,dual,ratio,greedy_value,millis\n";
  double ratio_sum = 0, greedy_ratio_sum = 0;
  int gap0 = 0, gap1 = 0;
  long long max_dual = 0;
  for (const BenchRow& row : rows) {
    csv << row.seed << "," << a.n << "," << a.spr << "," << row.value << ","
        << row.dual << "," << format_ratio(row.ratio) << ",";
    if (row.greedy_value >= 0) csv << row.greedy_value;
    csv << "," << row.millis << "\n";
    ratio_sum += row.ratio;
    if (row.greedy_value >= 0) {
      greedy_ratio_sum += static_cast<double>(row.greedy_value) /
                          static_cast<double>(std::max<long long>(row.dual, 1));
    }
    if (row.dual == a.spr) ++gap0;
    if (a.spr - row.dual == 1) ++gap1;
    max_dual = std::max(max_dual, row.dual);
  }
  csv << "# runs=" << a.runs
      << " mean_ratio=" << format_ratio(ratio_sum / a.runs)
      << " mean_greedy_ratio="
      << (a.greedy ? format_ratio(greedy_ratio_sum / a.runs) : "n/a")
      << " dual_eq_bound_pct="
      << format_ratio(100.0 * gap0 / a.runs) << " dual_gap1_pct="
      << format_ratio(100.0 * gap1 / a.runs) << " max_dual=" << max_dual
      << "\n";
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw Error("cannot write csv: " + a.csv);
    f << csv.str();
  }
  out << csv.str();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"maf: agreement forest solvers for pairs of rooted trees"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "run an approximation algorithm");
  solve->add_option("--algo", sa.algo)
      ->check(CLI::IsMember({"redblue", "three"}));
  solve->add_option("--in1", sa.in1)->required();
  solve->add_option("--in2", sa.in2)->required();
  solve->add_option("--cert", sa.cert);
  solve->add_flag("--greedy", sa.greedy);
  solve->add_flag("--rho", sa.rho);

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "brute-force optimum");
  exact->add_option("--in1", ea.in1)->required();
  exact->add_option("--in2", ea.in2)->required();
  exact->add_option("--cap", ea.cap);
  exact->add_flag("--rho", ea.rho);
  exact->add_flag("--allow-large", ea.allow_large);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", ga.n)->required();
  gen->add_option("--spr", ga.spr)->required();
  gen->add_option("--seed", ga.seed)->required();
  gen->add_option("--out1", ga.out1)->required();
  gen->add_option("--out2", ga.out2)->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("--in1", va.in1)->required();
  verify->add_option("--in2", va.in2)->required();
  verify->add_option("--cert", va.cert)->required();
  verify->add_option("--cap", va.cap);
  verify->add_flag("--rho", va.rho);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "seeded benchmark sweep");
  bench->add_option("--runs", ba.runs)->required();
  bench->add_option("--n", ba.n)->required();
  bench->add_option("--spr", ba.spr)->required();
  bench->add_option("--seed", ba.seed)->required();
  bench->add_option("--csv", ba.csv);
  bench->add_flag("--greedy", ba.greedy);
  bench->add_option("--jobs", ba.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (solve->parsed()) return cmd_solve(sa, out);
    if (exact->parsed()) return cmd_exact(ea, out);
    if (gen->parsed()) return cmd_gen(ga, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (bench->parsed()) return cmd_bench(ba, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace maf::cli
