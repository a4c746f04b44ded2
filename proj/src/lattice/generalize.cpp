#include "lsynth/lattice/generalize.hpp"

namespace lsynth::lattice {

namespace {

// Flat view of every constant in the witness, in map order.
struct ConstRef {
  std::string program;
  size_t index;
};

std::vector<ConstRef> collect_constants(const specir::Witness &w) {
  std::vector<ConstRef> out;
  for (const auto &[name, prog] : w) {
    for (size_t i = 0; i < prog.constants.size(); ++i) out.push_back({name, i});
  }
  return out;
}

specir::Witness rewrite(const specir::Witness &base,
                        const std::vector<ConstRef> &refs,
                        const std::vector<uint64_t> &values) {
  specir::Witness out = base;
  for (size_t i = 0; i < refs.size(); ++i) {
    out.at(refs[i].program).constants[refs[i].index] = values[i];
  }
  return out;
}

}  // namespace

std::optional<specir::Witness> generalize(const cegis::Candidate &cand,
                                          lvm::WordWidth w_syn,
                                          lvm::WordWidth w_target,
                                          int combo_cap,
                                          const VerifyFn &verify) {
  std::vector<ConstRef> refs = collect_constants(cand.witness);
  if (refs.empty()) {
    // Width-independent programs run unchanged at any larger width.
    if (verify(cand.witness)) return cand.witness;
    return std::nullopt;
  }

  std::vector<uint64_t> original;
  original.reserve(refs.size());
  for (const ConstRef &r : refs) {
    original.push_back(cand.witness.at(r.program).constants[r.index]);
  }

  // Each rule applied uniformly to every constant.
  for (int rule = 1; rule <= 6; ++rule) {
    std::vector<uint64_t> values;
    values.reserve(refs.size());
    bool applicable = true;
    for (uint64_t v : original) {
      auto ext = extend_constant(v, w_syn, w_target, rule);
      if (!ext) {
        applicable = false;
        break;
      }
      values.push_back(*ext);
    }
    if (!applicable) continue;
    specir::Witness rewritten = rewrite(cand.witness, refs, values);
    if (verify(rewritten)) return rewritten;
  }

  // Per-constant Cartesian product of rules, capped.
  std::vector<int> rules(refs.size(), 1);
  int tried = 0;
  for (;;) {
    if (tried >= combo_cap) break;
    ++tried;
    std::vector<uint64_t> values;
    values.reserve(refs.size());
    bool applicable = true;
    for (size_t i = 0; i < refs.size(); ++i) {
      auto ext = extend_constant(original[i], w_syn, w_target, rules[i]);
      if (!ext) {
        applicable = false;
        break;
      }
      values.push_back(*ext);
    }
    bool uniform = refs.size() > 0;
    for (size_t i = 1; i < rules.size(); ++i) {
      if (rules[i] != rules[0]) uniform = false;
    }
    if (applicable && !uniform) {  // uniform combinations were tried above
      specir::Witness rewritten = rewrite(cand.witness, refs, values);
      if (verify(rewritten)) return rewritten;
    }
    // Advance the rule odometer, last constant fastest.
    size_t i = rules.size();
    while (i-- > 0) {
      if (++rules[i] <= 6) break;
      rules[i] = 1;
      if (i == 0) return std::nullopt;  // odometer wrapped: exhausted
    }
  }
  return std::nullopt;
}

}  // namespace lsynth::lattice
