#include "bpdmn/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace bpdmn {

std::string_view type_name(Value::Type t) {
  switch (t) {
    case Value::Type::null: return "null";
    case Value::Type::string: return "string";
    case Value::Type::number: return "number";
    case Value::Type::boolean: return "boolean";
  }
  return "?";
}

namespace {

std::string format_number(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

}  // namespace

std::string to_literal(const Value& v) {
  switch (v.type()) {
    case Value::Type::null: return "null";
    case Value::Type::string: return quote(v.as_string());
    case Value::Type::number: return format_number(v.as_number());
    case Value::Type::boolean: return v.as_boolean() ? "true" : "false";
  }
  return {};
}

ExprSyntaxError::ExprSyntaxError(std::size_t position, const std::string& message)
    : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

UnboundPathError::UnboundPathError(std::string path)
    : EvalError("unbound path '" + path + "'"), path_(std::move(path)) {}

std::string_view to_string(RelOp op) {
  switch (op) {
    case RelOp::eq: return "=";
    case RelOp::ne: return "!=";
    case RelOp::lt: return "<";
    case RelOp::le: return "<=";
    case RelOp::gt: return ">";
    case RelOp::ge: return ">=";
  }
  return "?";
}

Expression::Expression() : Expression(ExprNode{Literal{Value::boolean(true)}}) {}
Expression::Expression(ExprNode node) : node_(std::make_shared<const ExprNode>(std::move(node))) {}

Expression Expression::path(std::string text) { return Expression(ExprNode{PathRef{std::move(text)}}); }
Expression Expression::literal(Value v) { return Expression(ExprNode{Literal{std::move(v)}}); }
Expression Expression::compare(RelOp op, Expression lhs, Expression rhs) {
  return Expression(ExprNode{Compare{op, std::move(lhs), std::move(rhs)}});
}
Expression Expression::conj(Expression lhs, Expression rhs) {
  return Expression(ExprNode{And{std::move(lhs), std::move(rhs)}});
}
Expression Expression::disj(Expression lhs, Expression rhs) {
  return Expression(ExprNode{Or{std::move(lhs), std::move(rhs)}});
}
Expression Expression::negate(Expression operand) { return Expression(ExprNode{Not{std::move(operand)}}); }

bool Expression::is_path() const { return std::holds_alternative<PathRef>(node_->v); }

bool operator==(const Expression& a, const Expression& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

namespace {

void collect_paths(const Expression& e, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PathRef>) {
          out.push_back(n.text);
        } else if constexpr (std::is_same_v<T, Compare> || std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          collect_paths(n.lhs, out);
          collect_paths(n.rhs, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          collect_paths(n.operand, out);
        }
      },
      e.node().v);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_keyword(std::string_view w) {
  return w == "and" || w == "or" || w == "not" || w == "true" || w == "false";
}

struct Token {
  enum class Kind { end, path, string, number, boolean, kw_and, kw_or, kw_not, relop, lparen, rparen };
  Kind kind = Kind::end;
  std::size_t pos = 0;
  std::string text;
  double number = 0;
  bool boolean = false;
  RelOp op = RelOp::eq;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.pos = pos_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (c == '(') { ++pos_; t.kind = Token::Kind::lparen; return t; }
    if (c == ')') { ++pos_; t.kind = Token::Kind::rparen; return t; }
    if (c == '=' ) { ++pos_; t.kind = Token::Kind::relop; t.op = RelOp::eq; return t; }
    if (c == '!') {
      if (peek(1) == '=') { pos_ += 2; t.kind = Token::Kind::relop; t.op = RelOp::ne; return t; }
      throw ExprSyntaxError(pos_, "expected '=' after '!'");
    }
    if (c == '<') {
      t.kind = Token::Kind::relop;
      if (peek(1) == '=') { pos_ += 2; t.op = RelOp::le; }
      else if (peek(1) == '>') { pos_ += 2; t.op = RelOp::ne; }
      else { ++pos_; t.op = RelOp::lt; }
      return t;
    }
    if (c == '>') {
      t.kind = Token::Kind::relop;
      if (peek(1) == '=') { pos_ += 2; t.op = RelOp::ge; }
      else { ++pos_; t.op = RelOp::gt; }
      return t;
    }
    if (c == '\'') return lex_string(t);
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return lex_number(t);
    }
    if (is_ident_start(c)) return lex_word(t);
    throw ExprSyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

 private:
  char peek(std::size_t off) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

  Token lex_string(Token& t) {
    ++pos_;
    std::string s;
    while (true) {
      if (pos_ >= src_.size()) throw ExprSyntaxError(t.pos, "unterminated string literal");
      char c = src_[pos_++];
      if (c == '\'') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) throw ExprSyntaxError(t.pos, "unterminated string literal");
        char esc = src_[pos_++];
        if (esc != '\'' && esc != '\\') throw ExprSyntaxError(pos_ - 1, "unknown escape");
        s += esc;
        continue;
      }
      s += c;
    }
    t.kind = Token::Kind::string;
    t.text = std::move(s);
    return t;
  }

  Token lex_number(Token& t) {
    std::size_t start = pos_;
    if (src_[pos_] == '-') ++pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw ExprSyntaxError(pos_, "expected digit after '.'");
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw ExprSyntaxError(pos_, "expected exponent digits");
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && is_ident_char(src_[pos_])) throw ExprSyntaxError(pos_, "malformed number");
    double d = 0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, d);
    if (res.ec != std::errc() || !std::isfinite(d)) throw ExprSyntaxError(start, "number out of range");
    t.kind = Token::Kind::number;
    t.number = d;
    return t;
  }

  Token lex_word(Token& t) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    std::string_view first = src_.substr(start, pos_ - start);
    if (first == "and") { t.kind = Token::Kind::kw_and; return t; }
    if (first == "or") { t.kind = Token::Kind::kw_or; return t; }
    if (first == "not") { t.kind = Token::Kind::kw_not; return t; }
    if (first == "true" || first == "false") {
      t.kind = Token::Kind::boolean;
      t.boolean = first == "true";
      return t;
    }
    while (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      if (pos_ >= src_.size() || !is_ident_start(src_[pos_]))
        throw ExprSyntaxError(pos_, "expected identifier after '.'");
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    }
    t.kind = Token::Kind::path;
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Expression parse() {
    if (cur_.kind == Token::Kind::end) throw ExprSyntaxError(cur_.pos, "empty expression");
    Expression e = parse_or();
    if (cur_.kind != Token::Kind::end) throw ExprSyntaxError(cur_.pos, "unexpected trailing input");
    return e;
  }

 private:
  static constexpr int max_depth = 200;

  void advance() { cur_ = lex_.next(); }

  Expression parse_or() {
    Expression lhs = parse_and();
    while (cur_.kind == Token::Kind::kw_or) {
      advance();
      lhs = Expression::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Expression parse_and() {
    Expression lhs = parse_cmp();
    while (cur_.kind == Token::Kind::kw_and) {
      advance();
      lhs = Expression::conj(std::move(lhs), parse_cmp());
    }
    return lhs;
  }

  Expression parse_cmp() {
    Expression lhs = parse_term();
    if (cur_.kind == Token::Kind::relop) {
      RelOp op = cur_.op;
      advance();
      return Expression::compare(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  Expression parse_term() {
    if (++depth_ > max_depth) throw ExprSyntaxError(cur_.pos, "expression nested too deeply");
    Expression result = parse_term_inner();
    --depth_;
    return result;
  }

  Expression parse_term_inner() {
    Token t = cur_;
    switch (t.kind) {
      case Token::Kind::path: advance(); return Expression::path(std::move(t.text));
      case Token::Kind::string: advance(); return Expression::literal(Value::string(std::move(t.text)));
      case Token::Kind::number: advance(); return Expression::literal(Value::number(t.number));
      case Token::Kind::boolean: advance(); return Expression::literal(Value::boolean(t.boolean));
      case Token::Kind::kw_not: advance(); return Expression::negate(parse_term());
      case Token::Kind::lparen: {
        advance();
        Expression inner = parse_or();
        if (cur_.kind != Token::Kind::rparen) throw ExprSyntaxError(cur_.pos, "expected ')'");
        advance();
        return inner;
      }
      case Token::Kind::end: throw ExprSyntaxError(t.pos, "unexpected end of expression");
      default: throw ExprSyntaxError(t.pos, "expected a path, literal, 'not' or '('");
    }
  }

  Lexer lex_;
  Token cur_;
  int depth_ = 0;
};

// Binding strength; terms bind tightest.
int precedence(const Expression& e) {
  return std::visit(
      [](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Or>) return 1;
        else if constexpr (std::is_same_v<T, And>) return 2;
        else if constexpr (std::is_same_v<T, Compare>) return 3;
        else return 4;
      },
      e.node().v);
}

void print_into(const Expression& e, std::string& out);

void print_operand(const Expression& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print_into(e, out);
    out += ')';
  } else {
    print_into(e, out);
  }
}

void print_into(const Expression& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PathRef>) {
          out += n.text;
        } else if constexpr (std::is_same_v<T, Literal>) {
          out += to_literal(n.value);
        } else if constexpr (std::is_same_v<T, Compare>) {
          print_operand(n.lhs, 4, out);
          out += ' ';
          out += to_string(n.op);
          out += ' ';
          print_operand(n.rhs, 4, out);
        } else if constexpr (std::is_same_v<T, And>) {
          print_operand(n.lhs, 2, out);
          out += " and ";
          print_operand(n.rhs, 3, out);
        } else if constexpr (std::is_same_v<T, Or>) {
          print_operand(n.lhs, 1, out);
          out += " or ";
          print_operand(n.rhs, 2, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          out += "not ";
          print_operand(n.operand, 4, out);
        }
      },
      e.node().v);
}

bool truthy(const Value& v, std::string_view where) {
  if (v.is_null()) return false;
  if (v.type() != Value::Type::boolean)
    throw TypeError(std::string(where) + " expects a boolean, got " + std::string(type_name(v.type())));
  return v.as_boolean();
}

bool compare_values(RelOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  if (a.type() != b.type()) {
    throw TypeError("cannot compare " + std::string(type_name(a.type())) + " with " +
                    std::string(type_name(b.type())));
  }
  if (op == RelOp::eq) return a == b;
  if (op == RelOp::ne) return !(a == b);
  if (a.type() == Value::Type::boolean) throw TypeError("booleans support only = and !=");
  int c = 0;
  if (a.type() == Value::Type::number) {
    c = a.as_number() < b.as_number() ? -1 : (a.as_number() > b.as_number() ? 1 : 0);
  } else {
    c = a.as_string().compare(b.as_string());
    c = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op) {
    case RelOp::lt: return c < 0;
    case RelOp::le: return c <= 0;
    case RelOp::gt: return c > 0;
    case RelOp::ge: return c >= 0;
    default: return false;
  }
}

}  // namespace

std::vector<std::string> Expression::paths() const {
  std::vector<std::string> out;
  collect_paths(*this, out);
  return out;
}

Expression parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expression& e) {
  std::string out;
  print_into(e, out);
  return out;
}

Value eval_expr(const Expression& e, const Environment& env) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PathRef>) {
          auto it = env.find(n.text);
          if (it == env.end()) throw UnboundPathError(n.text);
          return it->second;
        } else if constexpr (std::is_same_v<T, Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Compare>) {
          Value lhs = eval_expr(n.lhs, env);
          Value rhs = eval_expr(n.rhs, env);
          return Value::boolean(compare_values(n.op, lhs, rhs));
        } else if constexpr (std::is_same_v<T, And>) {
          if (!truthy(eval_expr(n.lhs, env), "and")) return Value::boolean(false);
          return Value::boolean(truthy(eval_expr(n.rhs, env), "and"));
        } else if constexpr (std::is_same_v<T, Or>) {
          if (truthy(eval_expr(n.lhs, env), "or")) return Value::boolean(true);
          return Value::boolean(truthy(eval_expr(n.rhs, env), "or"));
        } else {
          return Value::boolean(!truthy(eval_expr(n.operand, env), "not"));
        }
      },
      e.node().v);
}

bool is_valid_path(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = 0;
  while (true) {
    std::size_t start = i;
    if (i >= text.size() || !is_ident_start(text[i])) return false;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    if (start == 0 && is_keyword(text.substr(0, i))) return false;
    if (i == text.size()) return true;
    if (text[i] != '.') return false;
    ++i;
  }
}

}  // namespace bpdmn
