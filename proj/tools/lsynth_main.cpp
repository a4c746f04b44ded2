#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lsynth/cli/harness.hpp"
#include "lsynth/lvm/textio.hpp"
#include "lsynth/specir/parser.hpp"
#include "lsynth/specir/skolemize.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitBound = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct CommonOpts {
  lsynth::cegis::SolverConfig cfg;
  double timeout_s = 180.0;
  std::string strategies;
  std::string opcodes;
  std::string stats_out;
  std::string config_kv;
};

void add_common(CLI::App *cmd, CommonOpts &o) {
  cmd->add_option("--seed", o.cfg.seed, "RNG seed")->envname("LSYNTH_SEED");
  cmd->add_option("--timeout", o.timeout_s, "timeout in seconds")
      ->envname("LSYNTH_TIMEOUT");
  cmd->add_option("--target-width", o.cfg.target_width_override,
                  "verification word width (default: widest declared)")
      ->envname("LSYNTH_TARGET_WIDTH");
  cmd->add_option("--initial-width", o.cfg.initial_width,
                  "starting synthesis word width")
      ->envname("LSYNTH_INITIAL_WIDTH");
  cmd->add_option("--max-length", o.cfg.max_length_override,
                  "cap on candidate program length")
      ->envname("LSYNTH_MAX_LENGTH");
  cmd->add_option("--strategies", o.strategies,
                  "comma list from explicit,gp,symbolic")
      ->envname("LSYNTH_STRATEGIES");
  cmd->add_option("--opcodes", o.opcodes, "opcode allow-list (comma names)")
      ->envname("LSYNTH_OPCODES");
  cmd->add_option("--exhaustive-cap", o.cfg.exhaustive_cap,
                  "max domain points for exhaustive verification")
      ->envname("LSYNTH_EXHAUSTIVE_CAP");
  cmd->add_option("--samples", o.cfg.sample_count,
                  "random samples when the domain exceeds the cap")
      ->envname("LSYNTH_SAMPLES");
  cmd->add_option("--population", o.cfg.population_size, "GP population size")
      ->envname("LSYNTH_POPULATION");
  cmd->add_option("--rank-dim", o.cfg.rank_dim,
                  "lexicographic rank dimension for termination")
      ->envname("LSYNTH_RANK_DIM");
  cmd->add_option("--stats-out", o.stats_out, "append run records to a file")
      ->envname("LSYNTH_STATS_OUT");
  cmd->add_option("--config", o.config_kv,
                  "extra key=value settings, comma separated")
      ->envname("LSYNTH_CONFIG");
  cmd->add_flag("--no-canon",
                [&o](int64_t) { o.cfg.canonicalize = false; },
                "disable explicit-search canonicalization pruning");
  cmd->add_flag("--sequential",
                [&o](int64_t) { o.cfg.parallel_race = false; },
                "run strategy race rounds on one thread");
}

void finalize_cfg(CommonOpts &o) {
  o.cfg.timeout_ms = static_cast<int64_t>(o.timeout_s * 1000.0);
  if (!o.strategies.empty()) o.cfg.apply_kv("strategies", o.strategies);
  if (!o.opcodes.empty()) o.cfg.apply_kv("opcodes", o.opcodes);
  if (!o.config_kv.empty()) {
    std::string cur;
    for (char c : o.config_kv + ",") {
      if (c == ',') {
        if (!cur.empty()) {
          size_t eq = cur.find('=');
          if (eq == std::string::npos) {
            throw std::invalid_argument("--config expects key=value");
          }
          o.cfg.apply_kv(cur.substr(0, eq), cur.substr(eq + 1));
        }
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
  }
}

void write_stats(const std::string &path, const lsynth::cli::RunRecord &rec) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::app);
  out << rec.to_line() << "\n";
}

int exit_code_for(const std::string &verdict) {
  if (verdict == "SAT") return kExitSat;
  if (verdict == "UNSAT") return kExitUnsat;
  return kExitBound;
}

void print_result(const lsynth::cli::SolveOutput &out) {
  std::cout << out.record.verdict;
  if (!out.record.detail.empty()) std::cout << " (" << out.record.detail << ")";
  if (!out.result.stats.note.empty()) {
    std::cout << " [" << out.result.stats.note << "]";
  }
  std::cout << "\n";
  if (out.result.verdict == lsynth::cegis::Verdict::Sat) {
    std::cout << lsynth::cli::witness_to_text(out.result.witness,
                                              out.target_width);
  }
  std::cout << out.record.to_line() << "\n";
}

std::string read_file_or_die(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int do_check(const std::string &spec_path, const std::string &witness_path,
             CommonOpts &o) {
  using namespace lsynth;
  specir::RawSpec raw = specir::parse_spec(read_file_or_die(spec_path));
  specir::SpecProblem prob = specir::skolemize(raw);
  int witness_width = 0;
  specir::Witness wit =
      cli::witness_from_text(read_file_or_die(witness_path), &witness_width);
  if (o.cfg.target_width_override == 0 && witness_width > 0) {
    o.cfg.target_width_override = witness_width;
  }
  int target = cegis::resolve_target_width(prob, o.cfg);
  cegis::VerifOutcome v = cli::check_witness(prob, wit, target, o.cfg);
  switch (v.kind) {
    case cegis::VerifOutcome::Kind::Valid:
      std::cout << "VALID (" << v.winner << ", width " << target << ")\n";
      return kExitSat;
    case cegis::VerifOutcome::Kind::Counterexample: {
      std::cout << "INVALID counterexample:";
      for (size_t i = 0; i < prob.universals.size(); ++i) {
        std::cout << " " << prob.universals[i].first << "=" << v.cex[i];
      }
      std::cout << "\n";
      return kExitUnsat;
    }
    case cegis::VerifOutcome::Kind::Incomplete:
      std::cerr << "verification incomplete: " << v.note << "\n";
      return kExitBound;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "lsynth - counterexample-guided synthesis of loop-free bitvector "
      "programs, with safety/termination/superoptimisation frontends"};
  app.require_subcommand(1);

  CommonOpts solve_o, analyze_o, bench_o, check_o;
  std::string solve_file, check_only;
  CLI::App *solve = app.add_subcommand("solve", "decide a .spec formula");
  solve->add_option("spec", solve_file, "specification file")->required();
  solve->add_option("--check-only", check_only,
                    "re-verify this witness file instead of solving");
  add_common(solve, solve_o);

  std::string analyze_file, task_name = "auto";
  CLI::App *analyze =
      app.add_subcommand("analyze", "prove a property of a .loop system");
  analyze->add_option("loop", analyze_file, "loop system file")->required();
  analyze
      ->add_option("--task", task_name,
                   "safety | terminate | nonterminate | auto")
      ->check(CLI::IsMember({"safety", "terminate", "nonterminate", "auto"}));
  add_common(analyze, analyze_o);

  std::string bench_dir;
  int bench_jobs = 1;
  CLI::App *bench =
      app.add_subcommand("bench", "run a directory of instances");
  bench->add_option("dir", bench_dir, "corpus directory")->required();
  bench->add_option("--jobs", bench_jobs, "concurrent instances");
  add_common(bench, bench_o);

  std::string check_spec, check_witness_file;
  CLI::App *check =
      app.add_subcommand("check", "re-verify a witness against a spec");
  check->add_option("spec", check_spec, "specification file")->required();
  check->add_option("witness", check_witness_file, "witness file")->required();
  add_common(check, check_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    using namespace lsynth;
    if (solve->parsed()) {
      finalize_cfg(solve_o);
      if (!check_only.empty()) return do_check(solve_file, check_only, solve_o);
      cli::SolveOutput out = cli::run_spec_file(solve_file, solve_o.cfg);
      print_result(out);
      write_stats(solve_o.stats_out, out.record);
      return exit_code_for(out.record.verdict);
    }
    if (analyze->parsed()) {
      finalize_cfg(analyze_o);
      cli::AnalysisTask task = cli::AnalysisTask::Auto;
      if (task_name == "safety") task = cli::AnalysisTask::Safety;
      if (task_name == "terminate") task = cli::AnalysisTask::Terminate;
      if (task_name == "nonterminate") task = cli::AnalysisTask::NonTerminate;
      cli::SolveOutput out =
          cli::run_loop_file(analyze_file, task, analyze_o.cfg);
      print_result(out);
      write_stats(analyze_o.stats_out, out.record);
      return exit_code_for(out.record.verdict);
    }
    if (bench->parsed()) {
      finalize_cfg(bench_o);
      cli::BenchReport report =
          cli::run_bench(bench_dir, bench_o.cfg, bench_jobs);
      std::cout << report.table;
      if (!bench_o.stats_out.empty()) {
        std::ofstream outf(bench_o.stats_out, std::ios::app);
        for (const cli::RunRecord &r : report.records) {
          outf << r.to_line() << "\n";
        }
      } else {
        for (const cli::RunRecord &r : report.records) {
          std::cout << r.to_line() << "\n";
        }
      }
      return 0;
    }
    if (check->parsed()) {
      finalize_cfg(check_o);
      return do_check(check_spec, check_witness_file, check_o);
    }
  } catch (const lsynth::specir::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
