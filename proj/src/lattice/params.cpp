#include "lsynth/lattice/params.hpp"

namespace lsynth::lattice {

std::string ParamSet::text() const {
  return "l=" + std::to_string(length) + ",c=" + std::to_string(num_consts) +
         ",w=" + std::to_string(w_syn) + "/" + std::to_string(w_target);
}

ParamSet initial_params(int w_target) {
  ParamSet p;
  p.length = 1;
  p.num_consts = 0;
  p.w_syn = w_target < 4 ? w_target : 4;
  p.w_target = w_target;
  return p;
}

std::optional<ParamSet> next_params(const ParamSet &p, SearchOutcome outcome,
                                    uint64_t max_length) {
  ParamSet q = p;
  switch (outcome) {
    case SearchOutcome::SynthFailed:
      if (q.num_consts < q.length) {
        ++q.num_consts;
        return q;
      }
      q.num_consts = 0;
      ++q.length;
      if (static_cast<uint64_t>(q.length) > max_length) {
        if (q.w_syn < q.w_target) {
          // Failure at a reduced width is not evidence about the target
          // width; widen and restart the ladder.
          ++q.w_syn;
          q.length = 1;
          return q;
        }
        return std::nullopt;  // exhausted: the unsatisfiability signal
      }
      return q;
    case SearchOutcome::VerifSmallOkGenFailed:
      if (q.w_syn < q.w_target) ++q.w_syn;
      return q;
    case SearchOutcome::VerifFailedSmallToo:
    case SearchOutcome::Done:
      return q;
  }
  return q;
}

std::optional<uint64_t> extend_constant(uint64_t v, lvm::WordWidth m,
                                        lvm::WordWidth n, int rule) {
  const uint64_t mm = m.mask();
  const uint64_t nm = n.mask();
  switch (rule) {
    case 1:
      if (v != (static_cast<uint64_t>(m.bits) & mm)) return std::nullopt;
      return static_cast<uint64_t>(n.bits) & nm;
    case 2:
      if (v != (static_cast<uint64_t>(m.bits - 1) & mm)) return std::nullopt;
      return static_cast<uint64_t>(n.bits - 1) & nm;
    case 3:
      if (v != (static_cast<uint64_t>(m.bits + 1) & mm)) return std::nullopt;
      return (static_cast<uint64_t>(n.bits) + 1) & nm;
    case 4: return v;
    case 5:  // left-justify: v followed by n-m zero bits
      if (n.bits - m.bits >= 64) return 0;
      return (v << (n.bits - m.bits)) & nm;
    case 6: {  // repeat the m-bit pattern until n bits are filled
      uint64_t out = 0;
      for (int pos = 0; pos < n.bits; pos += m.bits) {
        out |= pos >= 64 ? 0 : (v << pos);
      }
      return out & nm;
    }
    default: return std::nullopt;
  }
}

}  // namespace lsynth::lattice
