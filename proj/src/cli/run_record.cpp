#include "lsynth/cli/run_record.hpp"

#include <sstream>

#include "lsynth/lvm/textio.hpp"

namespace lsynth::cli {

std::string verdict_name(cegis::Verdict v) {
  switch (v) {
    case cegis::Verdict::Sat: return "SAT";
    case cegis::Verdict::Unsat: return "UNSAT";
    case cegis::Verdict::BoundExhausted: return "BOUND_EXHAUSTED";
  }
  return "?";
}

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ';' : c);
  }
  out.push_back('"');
  return out;
}

void emit(std::ostringstream &os, const RunRecord &r, bool stable) {
  os << "instance=" << r.instance;
  os << " category=" << r.category;
  os << " verdict=" << r.verdict;
  if (!r.detail.empty()) os << " detail=" << r.detail;
  os << " size=" << r.size;
  os << " iterations=" << r.iterations;
  for (const auto &[k, v] : r.synth_wins) os << " synth_wins." << k << "=" << v;
  for (const auto &[k, v] : r.verif_wins) os << " verif_wins." << k << "=" << v;
  if (stable) {
    os << " time_synth_ms=- time_verif_ms=- time_generalize_ms=-"
       << " time_total_ms=-";
  } else {
    os << " time_synth_ms=" << r.time_synth_ms;
    os << " time_verif_ms=" << r.time_verif_ms;
    os << " time_generalize_ms=" << r.time_generalize_ms;
    os << " time_total_ms=" << r.time_total_ms;
  }
  os << " seed=" << r.seed;
  os << " trajectory=" << r.trajectory;
  if (!r.note.empty()) os << " note=" << quote(r.note);
  os << " witness=" << quote(r.witness);
}

}  // namespace

std::string RunRecord::to_line() const {
  std::ostringstream os;
  emit(os, *this, false);
  return os.str();
}

std::string RunRecord::stable_line() const {
  std::ostringstream os;
  emit(os, *this, true);
  return os.str();
}

void fill_from_result(RunRecord &rec, const cegis::SynthesisResult &res,
                      const specir::SpecProblem &, int target_width) {
  rec.verdict = verdict_name(res.verdict);
  rec.iterations = res.stats.iterations;
  rec.synth_wins = res.stats.synth_wins;
  rec.verif_wins = res.stats.verif_wins;
  rec.time_synth_ms = res.stats.synth_ms;
  rec.time_verif_ms = res.stats.verif_ms;
  rec.time_generalize_ms = res.stats.generalize_ms;
  rec.note = res.stats.note;
  std::ostringstream traj;
  for (size_t i = 0; i < res.stats.trajectory.size(); ++i) {
    if (i) traj << ";";
    traj << res.stats.trajectory[i].text();
  }
  rec.trajectory = traj.str();
  if (res.verdict == cegis::Verdict::Sat) {
    rec.size = res.minimal_length;
    std::ostringstream wit;
    for (const auto &[name, prog] : res.witness) {
      wit << "program " << name << "\n"
          << lvm::to_text(prog, lvm::WordWidth{target_width});
    }
    rec.witness = wit.str();
  }
}

}  // namespace lsynth::cli
