#include "lsynth/specir/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace lsynth::specir {

namespace {

struct Token {
  enum class Kind { Ident, Number, Op, End };
  Kind kind = Kind::End;
  std::string text;
  uint64_t number = 0;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(const std::string &text) : text_(text) { advance(); }

  const Token &peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  const std::string &text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;

  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(line_, col_, msg);
  }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }
  void bump() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(cur()))) {
        bump();
      }
      if (cur() == '#') {
        while (pos_ < text_.size() && cur() != '\n') bump();
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = cur();
    if (ident_start(c)) {
      std::string s;
      while (ident_char(cur())) {
        s.push_back(cur());
        bump();
      }
      while (cur() == '\'') {  // primed names from loop-system encodings
        s.push_back(cur());
        bump();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      int base = 10;
      if (c == '0' && (at(1) == 'x' || at(1) == 'X')) {
        bump();
        bump();
        base = 16;
        while (std::isxdigit(static_cast<unsigned char>(cur()))) {
          s.push_back(cur());
          bump();
        }
        if (s.empty()) fail("empty hex literal");
      } else {
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
          s.push_back(cur());
          bump();
        }
      }
      uint64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        fail("number literal out of range");
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = std::move(s);
      tok_.number = v;
      return;
    }
    static const char *multi[] = {">>u", ">>s", "<=u", "<=s", ">=u", ">=s",
                                  "->",  "&&",  "||",  "=>",  "!=",  "<u",
                                  "<s",  ">u",  ">s",  "<<",  "/u",  "%u"};
    for (const char *m : multi) {
      size_t n = std::char_traits<char>::length(m);
      bool match = true;
      for (size_t i = 0; i < n; ++i) {
        if (at(i) != m[i]) {
          match = false;
          break;
        }
      }
      if (match) {
        tok_.kind = Token::Kind::Op;
        tok_.text = m;
        for (size_t i = 0; i < n; ++i) bump();
        return;
      }
    }
    static const std::string singles = "+-*&|^~!=()[],;:.?";
    if (singles.find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Op;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

bool is_reserved(const std::string &s) {
  return s == "fun" || s == "forall" || s == "exists" || s == "min" ||
         s == "max";
}

class Parser {
 public:
  Parser(const std::string &text) : lex_(text) {}

  RawSpec parse_spec() {
    RawSpec spec;
    while (peek_ident("fun")) parse_fun_decl(spec);
    while (peek_ident("forall") || peek_ident("exists")) {
      parse_quant(spec);
    }
    index(spec.unknowns, spec.prefix);
    spec.body = parse_expr();
    if (peek_op(";")) lex_.take();
    const Token &t = lex_.peek();
    if (t.kind != Token::Kind::End) {
      throw ParseError(t.line, t.col, "trailing input after expression");
    }
    return spec;
  }

  SpecExpr parse_only_expr(const std::vector<QuantVar> &vars,
                           const std::vector<UnknownSig> &unknowns) {
    index(unknowns, vars);
    SpecExpr e = parse_expr();
    const Token &t = lex_.peek();
    if (t.kind != Token::Kind::End) {
      throw ParseError(t.line, t.col, "trailing input after expression");
    }
    return e;
  }

 private:
  Lexer lex_;
  std::map<std::string, UnknownSig> unknowns_;
  std::map<std::string, int> vars_;

  void index(const std::vector<UnknownSig> &unknowns,
             const std::vector<QuantVar> &vars) {
    for (const UnknownSig &u : unknowns) unknowns_[u.name] = u;
    for (const QuantVar &v : vars) vars_[v.name] = v.width;
  }

  [[noreturn]] void fail_at(const Token &t, const std::string &msg) {
    throw ParseError(t.line, t.col, msg);
  }

  bool peek_ident(const std::string &s) {
    const Token &t = lex_.peek();
    return t.kind == Token::Kind::Ident && t.text == s;
  }
  bool peek_op(const std::string &s) {
    const Token &t = lex_.peek();
    return t.kind == Token::Kind::Op && t.text == s;
  }
  Token expect_op(const std::string &s) {
    const Token &t = lex_.peek();
    if (t.kind != Token::Kind::Op || t.text != s) {
      fail_at(t, "expected '" + s + "'");
    }
    return lex_.take();
  }
  Token expect_ident() {
    const Token &t = lex_.peek();
    if (t.kind != Token::Kind::Ident) fail_at(t, "expected identifier");
    if (is_reserved(t.text)) fail_at(t, "'" + t.text + "' is reserved");
    return lex_.take();
  }
  Token expect_number() {
    const Token &t = lex_.peek();
    if (t.kind != Token::Kind::Number) fail_at(t, "expected number");
    return lex_.take();
  }

  void parse_fun_decl(RawSpec &spec) {
    lex_.take();  // fun
    Token name = expect_ident();
    expect_op("(");
    Token in_arity = expect_number();
    expect_op(")");
    expect_op("->");
    Token out_arity = expect_number();
    expect_op(";");
    if (out_arity.number < 1) fail_at(out_arity, "out arity must be >= 1");
    if (in_arity.number > 16) fail_at(in_arity, "in arity above limit of 16");
    for (const UnknownSig &u : spec.unknowns) {
      if (u.name == name.text) fail_at(name, "duplicate unknown '" + name.text + "'");
    }
    spec.unknowns.push_back({name.text, static_cast<uint32_t>(in_arity.number),
                             static_cast<uint32_t>(out_arity.number)});
  }

  void parse_quant(RawSpec &spec) {
    Token q = lex_.take();
    Token name = expect_ident();
    expect_op(":");
    Token width = expect_number();
    expect_op(";");
    if (width.number < 1 || width.number > 64) {
      fail_at(width, "width out of [1,64]");
    }
    for (const QuantVar &v : spec.prefix) {
      if (v.name == name.text) fail_at(name, "duplicate variable '" + name.text + "'");
    }
    for (const UnknownSig &u : spec.unknowns) {
      if (u.name == name.text) {
        fail_at(name, "'" + name.text + "' already names an unknown");
      }
    }
    spec.prefix.push_back({q.text == "forall" ? Quant::Forall : Quant::Exists,
                           name.text, static_cast<int>(width.number)});
  }

  SpecExpr parse_expr() { return parse_ternary(); }

  SpecExpr parse_ternary() {
    SpecExpr cond = parse_implies();
    if (peek_op("?")) {
      lex_.take();
      SpecExpr then_e = parse_ternary();
      expect_op(":");
      SpecExpr else_e = parse_ternary();
      return SpecExpr::ite(std::move(cond), std::move(then_e),
                           std::move(else_e));
    }
    return cond;
  }

  SpecExpr parse_implies() {
    SpecExpr lhs = parse_or();
    if (peek_op("=>")) {
      lex_.take();
      SpecExpr rhs = parse_implies();  // right associative
      return SpecExpr::boolean(BoolOp::Implies, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  SpecExpr parse_or() {
    SpecExpr e = parse_and();
    while (peek_op("||")) {
      lex_.take();
      SpecExpr rhs = parse_and();
      e = SpecExpr::boolean(BoolOp::Or, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_and() {
    SpecExpr e = parse_cmp();
    while (peek_op("&&")) {
      lex_.take();
      SpecExpr rhs = parse_cmp();
      e = SpecExpr::boolean(BoolOp::And, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_cmp() {
    SpecExpr e = parse_bitor();
    for (;;) {
      const Token &t = lex_.peek();
      if (t.kind != Token::Kind::Op) break;
      CmpOp op;
      bool swap = false;
      if (t.text == "=") {
        op = CmpOp::Eq;
      } else if (t.text == "!=") {
        op = CmpOp::Ne;
      } else if (t.text == "<u") {
        op = CmpOp::Ult;
      } else if (t.text == "<=u") {
        op = CmpOp::Ule;
      } else if (t.text == "<s") {
        op = CmpOp::Slt;
      } else if (t.text == "<=s") {
        op = CmpOp::Sle;
      } else if (t.text == ">u") {
        op = CmpOp::Ult;
        swap = true;
      } else if (t.text == ">=u") {
        op = CmpOp::Ule;
        swap = true;
      } else if (t.text == ">s") {
        op = CmpOp::Slt;
        swap = true;
      } else if (t.text == ">=s") {
        op = CmpOp::Sle;
        swap = true;
      } else {
        break;
      }
      lex_.take();
      SpecExpr rhs = parse_bitor();
      if (swap) {
        e = SpecExpr::compare(op, std::move(rhs), std::move(e));
      } else {
        e = SpecExpr::compare(op, std::move(e), std::move(rhs));
      }
    }
    return e;
  }

  SpecExpr parse_bitor() {
    SpecExpr e = parse_bitxor();
    while (peek_op("|")) {
      lex_.take();
      SpecExpr rhs = parse_bitxor();
      e = SpecExpr::arith(ArithOp::BitOr, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_bitxor() {
    SpecExpr e = parse_bitand();
    while (peek_op("^")) {
      lex_.take();
      SpecExpr rhs = parse_bitand();
      e = SpecExpr::arith(ArithOp::BitXor, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_bitand() {
    SpecExpr e = parse_shift();
    while (peek_op("&")) {
      lex_.take();
      SpecExpr rhs = parse_shift();
      e = SpecExpr::arith(ArithOp::BitAnd, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_shift() {
    SpecExpr e = parse_addsub();
    for (;;) {
      ArithOp op;
      if (peek_op("<<")) {
        op = ArithOp::Shl;
      } else if (peek_op(">>u")) {
        op = ArithOp::Lshr;
      } else if (peek_op(">>s")) {
        op = ArithOp::Ashr;
      } else {
        break;
      }
      lex_.take();
      SpecExpr rhs = parse_addsub();
      e = SpecExpr::arith(op, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_addsub() {
    SpecExpr e = parse_muldiv();
    for (;;) {
      ArithOp op;
      if (peek_op("+")) {
        op = ArithOp::Add;
      } else if (peek_op("-")) {
        op = ArithOp::Sub;
      } else {
        break;
      }
      lex_.take();
      SpecExpr rhs = parse_muldiv();
      e = SpecExpr::arith(op, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_muldiv() {
    SpecExpr e = parse_unary();
    for (;;) {
      ArithOp op;
      if (peek_op("*")) {
        op = ArithOp::Mul;
      } else if (peek_op("/u")) {
        op = ArithOp::Div;
      } else if (peek_op("%u")) {
        op = ArithOp::Mod;
      } else {
        break;
      }
      lex_.take();
      SpecExpr rhs = parse_unary();
      e = SpecExpr::arith(op, {std::move(e), std::move(rhs)});
    }
    return e;
  }

  SpecExpr parse_unary() {
    if (peek_op("-")) {
      lex_.take();
      return SpecExpr::arith(ArithOp::Neg, {parse_unary()});
    }
    if (peek_op("~")) {
      lex_.take();
      return SpecExpr::arith(ArithOp::BitNot, {parse_unary()});
    }
    if (peek_op("!")) {
      lex_.take();
      return SpecExpr::boolean(BoolOp::Not, {parse_unary()});
    }
    return parse_postfix();
  }

  SpecExpr parse_postfix() {
    SpecExpr e = parse_primary();
    if (peek_op(".")) {
      Token dot = lex_.take();
      if (e.kind != SpecExpr::Kind::Apply) {
        fail_at(dot, "result selection on a non-application");
      }
      Token idx = expect_number();
      const UnknownSig &sig = unknowns_.at(e.name);
      if (idx.number >= sig.out_arity) {
        fail_at(idx, "result index " + std::to_string(idx.number) +
                         " out of range for '" + e.name + "'");
      }
      e.result_index = static_cast<uint32_t>(idx.number);
    }
    return e;
  }

  SpecExpr parse_primary() {
    const Token &t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      return SpecExpr::lit(lex_.take().number);
    }
    if (peek_op("(")) {
      lex_.take();
      SpecExpr e = parse_expr();
      expect_op(")");
      return e;
    }
    if (peek_ident("min") || peek_ident("max")) {
      Token fn = lex_.take();
      expect_op("(");
      SpecExpr a = parse_expr();
      expect_op(",");
      SpecExpr b = parse_expr();
      expect_op(")");
      return SpecExpr::arith(fn.text == "min" ? ArithOp::Min : ArithOp::Max,
                             {std::move(a), std::move(b)});
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "forall" || t.text == "exists") {
        fail_at(t, "quantifiers are not allowed inside the matrix");
      }
      Token name = lex_.take();
      if (peek_op("(")) {
        lex_.take();
        std::vector<SpecExpr> args;
        if (!peek_op(")")) {
          args.push_back(parse_expr());
          while (peek_op(",")) {
            lex_.take();
            args.push_back(parse_expr());
          }
        }
        expect_op(")");
        auto it = unknowns_.find(name.text);
        if (it == unknowns_.end()) {
          fail_at(name, "undeclared function '" + name.text + "'");
        }
        if (args.size() != it->second.in_arity) {
          fail_at(name, "'" + name.text + "' expects " +
                            std::to_string(it->second.in_arity) +
                            " argument(s), got " + std::to_string(args.size()));
        }
        return SpecExpr::apply(name.text, std::move(args));
      }
      if (vars_.count(name.text)) return SpecExpr::var(name.text);
      if (unknowns_.count(name.text)) {
        fail_at(name, "function '" + name.text + "' used without application");
      }
      fail_at(name, "undeclared identifier '" + name.text + "'");
    }
    fail_at(t, "expected expression");
  }
};

const char *arith_op_text(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/u";
    case ArithOp::Mod: return "%u";
    case ArithOp::BitAnd: return "&";
    case ArithOp::BitOr: return "|";
    case ArithOp::BitXor: return "^";
    case ArithOp::Shl: return "<<";
    case ArithOp::Lshr: return ">>u";
    case ArithOp::Ashr: return ">>s";
    case ArithOp::BitNot: return "~";
    case ArithOp::Neg: return "-";
    case ArithOp::Min: return "min";
    case ArithOp::Max: return "max";
  }
  return "?";
}

const char *cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ult: return "<u";
    case CmpOp::Ule: return "<=u";
    case CmpOp::Slt: return "<s";
    case CmpOp::Sle: return "<=s";
  }
  return "?";
}

void print_expr_rec(const SpecExpr &e, std::ostringstream &os) {
  switch (e.kind) {
    case SpecExpr::Kind::Literal: os << e.literal; break;
    case SpecExpr::Kind::Var: os << e.name; break;
    case SpecExpr::Kind::Apply: {
      os << e.name << "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) os << ", ";
        print_expr_rec(e.children[i], os);
      }
      os << ")";
      if (e.result_index != 0) os << "." << e.result_index;
      break;
    }
    case SpecExpr::Kind::Arith: {
      ArithOp op = static_cast<ArithOp>(e.op);
      if (op == ArithOp::Min || op == ArithOp::Max) {
        os << arith_op_text(op) << "(";
        print_expr_rec(e.children[0], os);
        os << ", ";
        print_expr_rec(e.children[1], os);
        os << ")";
      } else if (e.children.size() == 1) {
        os << "(" << arith_op_text(op);
        print_expr_rec(e.children[0], os);
        os << ")";
      } else {
        os << "(";
        print_expr_rec(e.children[0], os);
        os << " " << arith_op_text(op) << " ";
        print_expr_rec(e.children[1], os);
        os << ")";
      }
      break;
    }
    case SpecExpr::Kind::Compare: {
      os << "(";
      print_expr_rec(e.children[0], os);
      os << " " << cmp_op_text(static_cast<CmpOp>(e.op)) << " ";
      print_expr_rec(e.children[1], os);
      os << ")";
      break;
    }
    case SpecExpr::Kind::Bool: {
      BoolOp op = static_cast<BoolOp>(e.op);
      if (op == BoolOp::Not) {
        os << "(!";
        print_expr_rec(e.children[0], os);
        os << ")";
      } else {
        const char *sym = op == BoolOp::And ? "&&"
                          : op == BoolOp::Or ? "||"
                                             : "=>";
        os << "(";
        print_expr_rec(e.children[0], os);
        os << " " << sym << " ";
        print_expr_rec(e.children[1], os);
        os << ")";
      }
      break;
    }
    case SpecExpr::Kind::Ite: {
      os << "(";
      print_expr_rec(e.children[0], os);
      os << " ? ";
      print_expr_rec(e.children[1], os);
      os << " : ";
      print_expr_rec(e.children[2], os);
      os << ")";
      break;
    }
  }
}

}  // namespace

RawSpec parse_spec(const std::string &text) {
  Parser p(text);
  return p.parse_spec();
}

SpecExpr parse_expr_text(const std::string &text,
                         const std::vector<QuantVar> &vars,
                         const std::vector<UnknownSig> &unknowns) {
  Parser p(text);
  return p.parse_only_expr(vars, unknowns);
}

std::string print_expr(const SpecExpr &e) {
  std::ostringstream os;
  print_expr_rec(e, os);
  return os.str();
}

std::string print_spec(const RawSpec &s) {
  std::ostringstream os;
  for (const UnknownSig &u : s.unknowns) {
    os << "fun " << u.name << "(" << u.in_arity << ")->" << u.out_arity
       << ";\n";
  }
  for (const QuantVar &q : s.prefix) {
    os << (q.quant == Quant::Forall ? "forall " : "exists ") << q.name << ":"
       << q.width << ";\n";
  }
  print_expr_rec(s.body, os);
  os << "\n";
  return os.str();
}

}  // namespace lsynth::specir
