#include "lsynth/cli/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "lsynth/lvm/textio.hpp"
#include "lsynth/specir/parser.hpp"
#include "lsynth/specir/skolemize.hpp"

namespace lsynth::cli {

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int64_t now_ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Restricts a witness to the unknowns of a sub-problem; false when one is
// missing.
bool project_witness(const specir::Witness &full,
                     const specir::SpecProblem &prob, specir::Witness &out) {
  for (const specir::UnknownSig &sig : prob.unknowns) {
    auto it = full.find(sig.name);
    if (it == full.end()) return false;
    out.emplace(sig.name, it->second);
  }
  return true;
}

}  // namespace

Instance classify_instance(const std::string &path) {
  namespace fs = std::filesystem;
  Instance inst;
  inst.path = path;
  inst.name = fs::path(path).stem().string();
  std::string ext = fs::path(path).extension().string();
  if (ext == ".spec") {
    inst.kind = Instance::Kind::Spec;
    inst.category = "synthesis";
  } else if (ext == ".sopt") {
    inst.kind = Instance::Kind::Superopt;
    inst.category = "superopt";
  } else if (ext == ".loop") {
    inst.kind = Instance::Kind::Loop;
    frontends::LoopSystem sys = frontends::parse_loop_system(read_file(path));
    inst.category = sys.assertion ? "safety" : "termination";
  } else {
    throw std::invalid_argument("unrecognized instance extension '" + ext +
                                "'");
  }
  return inst;
}

SolveOutput run_spec_file(const std::string &path,
                          const cegis::SolverConfig &cfg) {
  SolveOutput out;
  specir::RawSpec raw = specir::parse_spec(read_file(path));
  out.problem = specir::skolemize(raw);
  out.target_width = cegis::resolve_target_width(out.problem, cfg);
  auto start = std::chrono::steady_clock::now();
  out.result = cegis::refinement_loop(out.problem, cfg);
  out.record.instance = std::filesystem::path(path).stem().string();
  out.record.category = "synthesis";
  out.record.seed = cfg.seed;
  fill_from_result(out.record, out.result, out.problem, out.target_width);
  out.record.time_total_ms = now_ms_since(start);
  return out;
}

SolveOutput run_superopt_file(const std::string &path,
                              const cegis::SolverConfig &cfg) {
  SolveOutput out;
  lvm::ParsedProgram ref = lvm::from_text(read_file(path));
  int target = cfg.target_width_override > 0 ? cfg.target_width_override
                                             : ref.width.bits;
  specir::RawSpec raw = frontends::encode_superopt(ref.program, target);
  out.problem = specir::skolemize(raw);
  out.target_width = target;
  auto start = std::chrono::steady_clock::now();
  out.result = cegis::refinement_loop(out.problem, cfg);
  out.record.instance = std::filesystem::path(path).stem().string();
  out.record.category = "superopt";
  out.record.seed = cfg.seed;
  fill_from_result(out.record, out.result, out.problem, out.target_width);
  out.record.time_total_ms = now_ms_since(start);
  return out;
}

SolveOutput run_loop_file(const std::string &path, AnalysisTask task,
                          const cegis::SolverConfig &cfg) {
  SolveOutput out;
  frontends::LoopSystem sys = frontends::parse_loop_system(read_file(path));
  specir::RawSpec raw;
  std::string category;
  switch (task) {
    case AnalysisTask::Safety:
      raw = frontends::encode_safety(sys);
      category = "safety";
      break;
    case AnalysisTask::Terminate:
      raw = frontends::encode_termination(sys, cfg.rank_dim);
      category = "termination";
      break;
    case AnalysisTask::NonTerminate:
      raw = frontends::encode_nontermination(sys);
      category = "termination";
      break;
    case AnalysisTask::Auto:
      raw = frontends::encode_termination_or_not(sys, cfg.rank_dim);
      category = "termination";
      break;
  }
  out.problem = specir::skolemize(raw);
  out.target_width = cegis::resolve_target_width(out.problem, cfg);
  auto start = std::chrono::steady_clock::now();
  out.result = cegis::refinement_loop(out.problem, cfg);
  out.record.instance = std::filesystem::path(path).stem().string();
  out.record.category = category;
  out.record.seed = cfg.seed;
  fill_from_result(out.record, out.result, out.problem, out.target_width);
  out.record.time_total_ms = now_ms_since(start);

  // For the combined task, report which disjunct the witness proves.
  if (task == AnalysisTask::Auto &&
      out.result.verdict == cegis::Verdict::Sat) {
    specir::SpecProblem term_prob =
        specir::skolemize(frontends::encode_termination(sys, cfg.rank_dim));
    specir::Witness term_wit;
    bool is_term = false;
    if (project_witness(out.result.witness, term_prob, term_wit)) {
      cegis::VerifOutcome o =
          check_witness(term_prob, term_wit, out.target_width, cfg);
      is_term = o.kind == cegis::VerifOutcome::Kind::Valid;
    }
    if (is_term) {
      out.record.detail = "terminating";
    } else {
      out.record.detail = "non-terminating";
    }
  }
  return out;
}

SolveOutput run_instance(const Instance &inst, const cegis::SolverConfig &cfg) {
  switch (inst.kind) {
    case Instance::Kind::Spec: return run_spec_file(inst.path, cfg);
    case Instance::Kind::Superopt: return run_superopt_file(inst.path, cfg);
    case Instance::Kind::Loop: {
      frontends::LoopSystem sys =
          frontends::parse_loop_system(read_file(inst.path));
      return run_loop_file(
          inst.path,
          sys.assertion ? AnalysisTask::Safety : AnalysisTask::Auto, cfg);
    }
  }
  throw std::logic_error("unreachable");
}

std::string witness_to_text(const specir::Witness &w, int width) {
  std::ostringstream os;
  for (const auto &[name, prog] : w) {
    os << "program " << name << "\n"
       << lvm::to_text(prog, lvm::WordWidth{width}) << "\n";
  }
  return os.str();
}

specir::Witness witness_from_text(const std::string &text, int *width_out) {
  specir::Witness out;
  std::istringstream is(text);
  std::string line, name, block;
  int width = 0;
  auto flush = [&] {
    if (name.empty()) return;
    lvm::ParsedProgram pp = lvm::from_text(block);
    width = pp.width.bits;
    out.emplace(name, std::move(pp.program));
    name.clear();
    block.clear();
  };
  while (std::getline(is, line)) {
    if (line.rfind("program ", 0) == 0) {
      flush();
      name = line.substr(8);
      while (!name.empty() && name.back() == ' ') name.pop_back();
    } else if (!name.empty()) {
      block += line + "\n";
    } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw std::invalid_argument("witness file must start with 'program'");
    }
  }
  flush();
  if (out.empty()) throw std::invalid_argument("empty witness file");
  if (width_out) *width_out = width;
  return out;
}

cegis::VerifOutcome check_witness(const specir::SpecProblem &prob,
                                  const specir::Witness &witness,
                                  int target_width,
                                  const cegis::SolverConfig &cfg) {
  return cegis::verif(prob, witness, lvm::WordWidth{target_width}, cfg,
                      /*sample_seed=*/cfg.seed * 2654435761u + 17);
}

BenchReport run_bench(const std::string &dir, const cegis::SolverConfig &cfg,
                      int jobs) {
  namespace fs = std::filesystem;
  std::vector<Instance> instances;
  std::vector<RunRecord> records;
  if (fs::exists(dir)) {
    std::vector<std::string> paths;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::string ext = entry.path().extension().string();
      if (ext == ".spec" || ext == ".loop" || ext == ".sopt") {
        paths.push_back(entry.path().string());
      }
    }
    std::sort(paths.begin(), paths.end());
    for (const std::string &p : paths) {
      try {
        instances.push_back(classify_instance(p));
      } catch (const std::exception &e) {
        RunRecord rec;
        rec.instance = fs::path(p).stem().string();
        rec.category = "synthesis";
        rec.verdict = "BOUND_EXHAUSTED";
        rec.note = std::string("load error: ") + e.what();
        rec.seed = cfg.seed;
        records.push_back(std::move(rec));
      }
    }
  }

  auto run_one = [&cfg](const Instance &inst) -> RunRecord {
    try {
      return run_instance(inst, cfg).record;
    } catch (const std::exception &e) {
      RunRecord rec;
      rec.instance = inst.name;
      rec.category = inst.category;
      rec.verdict = "BOUND_EXHAUSTED";
      rec.note = std::string("error: ") + e.what();
      rec.seed = cfg.seed;
      return rec;
    }
  };

  if (jobs <= 1) {
    for (const Instance &inst : instances) records.push_back(run_one(inst));
  } else {
    std::vector<std::future<RunRecord>> futs;
    size_t next = 0;
    while (next < instances.size() || !futs.empty()) {
      while (next < instances.size() &&
             futs.size() < static_cast<size_t>(jobs)) {
        const Instance &inst = instances[next++];
        futs.push_back(std::async(std::launch::async, run_one, inst));
      }
      records.push_back(futs.front().get());
      futs.erase(futs.begin());
    }
  }
  std::sort(records.begin(), records.end(),
            [](const RunRecord &a, const RunRecord &b) {
              return a.instance < b.instance;
            });

  // Table 1 shape: per-category rows plus a total, then the win and
  // phase-time breakdowns.
  BenchReport report;
  report.records = std::move(records);
  struct Row {
    int total = 0, solved = 0;
    uint64_t size_sum = 0, iter_sum = 0;
    int64_t time_sum_ms = 0, solved_time_ms = 0;
  };
  std::map<std::string, Row> rows;
  Row all;
  std::map<std::string, uint64_t> synth_wins, verif_wins;
  int64_t synth_ms = 0, verif_ms = 0, gen_ms = 0, total_ms = 0;
  for (const RunRecord &r : report.records) {
    Row &row = rows[r.category];
    ++row.total;
    ++all.total;
    row.time_sum_ms += r.time_total_ms;
    all.time_sum_ms += r.time_total_ms;
    if (r.verdict == "SAT" || r.verdict == "UNSAT") {
      ++row.solved;
      ++all.solved;
      row.size_sum += r.size;
      all.size_sum += r.size;
      row.iter_sum += r.iterations;
      all.iter_sum += r.iterations;
      row.solved_time_ms += r.time_total_ms;
      all.solved_time_ms += r.time_total_ms;
    }
    for (const auto &[k, v] : r.synth_wins) synth_wins[k] += v;
    for (const auto &[k, v] : r.verif_wins) verif_wins[k] += v;
    synth_ms += r.time_synth_ms;
    verif_ms += r.time_verif_ms;
    gen_ms += r.time_generalize_ms;
    total_ms += r.time_total_ms;
  }

  std::ostringstream os;
  os << std::left << std::setw(14) << "Category" << std::right << std::setw(12)
     << "#Benchmarks" << std::setw(9) << "#Solved" << std::setw(11)
     << "Avg. size" << std::setw(12) << "Avg. iters" << std::setw(14)
     << "Avg. time (s)" << std::setw(15) << "Total time (s)" << "\n";
  auto print_row = [&os](const std::string &name, const Row &row) {
    double avg_size = row.solved ? double(row.size_sum) / row.solved : 0.0;
    double avg_iter = row.solved ? double(row.iter_sum) / row.solved : 0.0;
    double avg_time =
        row.solved ? double(row.solved_time_ms) / row.solved / 1000.0 : 0.0;
    os << std::left << std::setw(14) << name << std::right << std::setw(12)
       << row.total << std::setw(9) << row.solved << std::setw(11)
       << std::fixed << std::setprecision(1) << avg_size << std::setw(12)
       << std::setprecision(1) << avg_iter << std::setw(14)
       << std::setprecision(2) << avg_time << std::setw(15)
       << std::setprecision(2) << double(row.time_sum_ms) / 1000.0 << "\n";
  };
  for (const auto &[name, row] : rows) print_row(name, row);
  print_row("total", all);

  os << "\nSynth wins:";
  for (const auto &[k, v] : synth_wins) os << " " << k << "=" << v;
  os << "\nVerif wins:";
  for (const auto &[k, v] : verif_wins) os << " " << k << "=" << v;
  os << "\nTime split: synth=" << synth_ms << "ms verif=" << verif_ms
     << "ms generalize=" << gen_ms << "ms total=" << total_ms << "ms\n";
  report.table = os.str();
  return report;
}

}  // namespace lsynth::cli
