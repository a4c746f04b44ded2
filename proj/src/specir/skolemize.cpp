#include "lsynth/specir/skolemize.hpp"

#include <map>

namespace lsynth::specir {

namespace {

void substitute(SpecExpr &e, const std::map<std::string, SpecExpr> &repl) {
  if (e.kind == SpecExpr::Kind::Var) {
    auto it = repl.find(e.name);
    if (it != repl.end()) {
      e = it->second;
      return;
    }
  }
  for (SpecExpr &ch : e.children) substitute(ch, repl);
}

}  // namespace

SpecProblem skolemize(const RawSpec &s) {
  SpecProblem prob;
  prob.unknowns = s.unknowns;
  std::map<std::string, SpecExpr> repl;
  std::vector<SpecExpr> universal_args;

  for (const QuantVar &q : s.prefix) {
    if (q.quant == Quant::Forall) {
      prob.universals.emplace_back(q.name, q.width);
      prob.input_bits += q.width;
      universal_args.push_back(SpecExpr::var(q.name));
    } else {
      // Variable and unknown namespaces are disjoint at parse time, so the
      // variable's own name is fresh as an unknown name.
      prob.unknowns.push_back(
          {q.name, static_cast<uint32_t>(universal_args.size()), 1});
      SpecExpr app = SpecExpr::apply(q.name, universal_args);
      if (q.width < 64) {
        // Restrict the Skolem function's range to the declared width.
        app = SpecExpr::arith(
            ArithOp::BitAnd,
            {std::move(app),
             SpecExpr::lit((uint64_t{1} << q.width) - 1)});
      }
      repl.emplace(q.name, std::move(app));
    }
  }

  prob.body = s.body;
  substitute(prob.body, repl);
  return prob;
}

}  // namespace lsynth::specir
