#include "lsynth/frontends/loopsys.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "lsynth/specir/parser.hpp"

namespace lsynth::frontends {

namespace {

std::string strip_comments(const std::string &text) {
  std::string out;
  bool in_comment = false;
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    out.push_back(in_comment ? ' ' : c);
  }
  return out;
}

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits on commas at parenthesis depth zero (min/max arguments contain
// commas of their own).
std::vector<std::string> split_top_commas(const std::string &s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

[[noreturn]] void fail(const std::string &msg) {
  throw std::invalid_argument("loop system: " + msg);
}

}  // namespace

LoopSystem parse_loop_system(const std::string &text) {
  LoopSystem sys;
  bool saw_state = false, saw_init = false, saw_guard = false, saw_body = false;

  std::string clean = strip_comments(text);
  size_t pos = 0;
  auto next_section = [&](std::string &keyword, std::string &content) {
    while (pos < clean.size() &&
           std::isspace(static_cast<unsigned char>(clean[pos]))) {
      ++pos;
    }
    if (pos >= clean.size()) return false;
    size_t semi = clean.find(';', pos);
    if (semi == std::string::npos) fail("missing ';' after section");
    std::string stmt = clean.substr(pos, semi - pos);
    pos = semi + 1;
    size_t colon = stmt.find(':');
    size_t space = stmt.find_first_of(" \t\n");
    if (stmt.rfind("state", 0) == 0) {
      keyword = "state";
      content = trim(stmt.substr(space == std::string::npos ? 5 : space));
    } else {
      if (colon == std::string::npos) fail("expected 'keyword:' in '" + stmt + "'");
      keyword = trim(stmt.substr(0, colon));
      content = trim(stmt.substr(colon + 1));
    }
    return true;
  };

  std::vector<specir::QuantVar> plain, both;
  std::string keyword, content;
  while (next_section(keyword, content)) {
    if (keyword == "state") {
      if (saw_state) fail("duplicate state section");
      saw_state = true;
      for (const std::string &raw : split_top_commas(content)) {
        std::string decl = trim(raw);
        size_t colon = decl.find(':');
        if (colon == std::string::npos) fail("state declaration needs ':width'");
        std::string name = trim(decl.substr(0, colon));
        int width = std::stoi(trim(decl.substr(colon + 1)));
        if (name.empty() || name.back() == '\'') fail("bad state name '" + name + "'");
        if (width < 1 || width > 64) fail("width out of [1,64]");
        for (const auto &[n, w] : sys.state_vars) {
          if (n == name) fail("duplicate state variable '" + name + "'");
        }
        sys.state_vars.emplace_back(name, width);
      }
      if (sys.state_vars.empty()) fail("empty state section");
      for (const auto &[n, w] : sys.state_vars) {
        plain.push_back({specir::Quant::Forall, n, w});
        both.push_back({specir::Quant::Forall, n, w});
      }
      for (const auto &[n, w] : sys.state_vars) {
        both.push_back({specir::Quant::Forall, n + "'", w});
      }
      continue;
    }
    if (!saw_state) fail("the state section must come first");
    if (keyword == "init") {
      saw_init = true;
      sys.init = specir::parse_expr_text(content, plain, {});
    } else if (keyword == "guard") {
      saw_guard = true;
      sys.guard = specir::parse_expr_text(content, plain, {});
    } else if (keyword == "body") {
      saw_body = true;
      sys.relational = false;
      std::vector<std::optional<specir::SpecExpr>> updates(
          sys.state_vars.size());
      for (const std::string &raw : split_top_commas(content)) {
        std::string upd = trim(raw);
        size_t eq = upd.find('=');
        if (eq == std::string::npos) fail("update needs 'x\\' = expr'");
        std::string lhs = trim(upd.substr(0, eq));
        if (lhs.empty() || lhs.back() != '\'') {
          fail("update target must be a primed variable, got '" + lhs + "'");
        }
        std::string base = lhs.substr(0, lhs.size() - 1);
        size_t idx = sys.state_vars.size();
        for (size_t i = 0; i < sys.state_vars.size(); ++i) {
          if (sys.state_vars[i].first == base) idx = i;
        }
        if (idx == sys.state_vars.size()) {
          fail("update of undeclared variable '" + base + "'");
        }
        if (updates[idx]) fail("duplicate update for '" + base + "'");
        updates[idx] = specir::parse_expr_text(trim(upd.substr(eq + 1)),
                                               plain, {});
      }
      for (size_t i = 0; i < updates.size(); ++i) {
        if (!updates[i]) {
          fail("missing update for '" + sys.state_vars[i].first + "'");
        }
        sys.updates.push_back(*updates[i]);
      }
    } else if (keyword == "body-rel") {
      saw_body = true;
      sys.relational = true;
      sys.body_rel = specir::parse_expr_text(content, both, {});
    } else if (keyword == "assert") {
      sys.assertion = specir::parse_expr_text(content, plain, {});
    } else {
      fail("unknown section '" + keyword + "'");
    }
  }
  if (!saw_state) fail("missing state section");
  if (!saw_init) fail("missing init section");
  if (!saw_guard) fail("missing guard section");
  if (!saw_body) fail("missing body section");
  return sys;
}

std::string print_loop_system(const LoopSystem &sys) {
  std::ostringstream os;
  os << "state ";
  for (size_t i = 0; i < sys.state_vars.size(); ++i) {
    if (i) os << ", ";
    os << sys.state_vars[i].first << ":" << sys.state_vars[i].second;
  }
  os << ";\n";
  os << "init: " << specir::print_expr(sys.init) << ";\n";
  os << "guard: " << specir::print_expr(sys.guard) << ";\n";
  if (sys.relational) {
    os << "body-rel: " << specir::print_expr(sys.body_rel) << ";\n";
  } else {
    os << "body: ";
    for (size_t i = 0; i < sys.updates.size(); ++i) {
      if (i) os << ", ";
      os << sys.state_vars[i].first << "' = "
         << specir::print_expr(sys.updates[i]);
    }
    os << ";\n";
  }
  if (sys.assertion) {
    os << "assert: " << specir::print_expr(*sys.assertion) << ";\n";
  }
  return os.str();
}

specir::SpecExpr transition_expr(const LoopSystem &sys) {
  using specir::SpecExpr;
  if (sys.relational) return sys.body_rel;
  SpecExpr conj;
  bool first = true;
  for (size_t i = 0; i < sys.state_vars.size(); ++i) {
    SpecExpr eq = SpecExpr::compare(specir::CmpOp::Eq,
                                    SpecExpr::var(sys.state_vars[i].first + "'"),
                                    sys.updates[i]);
    if (first) {
      conj = std::move(eq);
      first = false;
    } else {
      conj = SpecExpr::boolean(specir::BoolOp::And,
                               {std::move(conj), std::move(eq)});
    }
  }
  return conj;
}

}  // namespace lsynth::frontends
