#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bpdmn {

/// Runtime value of an expression. Null only arises from unbound optional inputs.
class Value {
 public:
  enum class Type { null, string, number, boolean };

  Value() = default;
  static Value string(std::string s) { return Value(Storage(std::move(s))); }
  static Value number(double d) { return Value(Storage(d)); }
  static Value boolean(bool b) { return Value(Storage(b)); }

  Type type() const { return static_cast<Type>(data_.index()); }
  bool is_null() const { return type() == Type::null; }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  double as_number() const { return std::get<double>(data_); }
  bool as_boolean() const { return std::get<bool>(data_); }

  friend bool operator==(const Value&, const Value&) = default;
  friend bool operator<(const Value& a, const Value& b) { return a.data_ < b.data_; }

 private:
  using Storage = std::variant<std::monostate, std::string, double, bool>;
  explicit Value(Storage s) : data_(std::move(s)) {}
  Storage data_;
};

std::string_view type_name(Value::Type t);

/// Renders a value in literal syntax (`'text'`, `1.5`, `true`, `null`).
std::string to_literal(const Value& v);

/// Bindings of object-qualified paths to values.
using Environment = std::map<std::string, Value, std::less<>>;

class ExprSyntaxError : public std::runtime_error {
 public:
  ExprSyntaxError(std::size_t position, const std::string& message);
  /// Zero-based byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for an unbound path; names the path.
class UnboundPathError : public EvalError {
 public:
  explicit UnboundPathError(std::string path);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class TypeError : public EvalError {
 public:
  using EvalError::EvalError;
};

enum class RelOp { eq, ne, lt, le, gt, ge };
std::string_view to_string(RelOp op);

struct ExprNode;

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  Expression();  // literal `true`
  explicit Expression(ExprNode node);

  static Expression path(std::string text);
  static Expression literal(Value v);
  static Expression compare(RelOp op, Expression lhs, Expression rhs);
  static Expression conj(Expression lhs, Expression rhs);
  static Expression disj(Expression lhs, Expression rhs);
  static Expression negate(Expression operand);

  const ExprNode& node() const { return *node_; }
  bool is_path() const;

  /// Every path referenced in the tree, in left-to-right order.
  std::vector<std::string> paths() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct PathRef {
  std::string text;
  friend bool operator==(const PathRef&, const PathRef&) = default;
};
struct Literal {
  Value value;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct Compare {
  RelOp op;
  Expression lhs, rhs;
  friend bool operator==(const Compare&, const Compare&) = default;
};
struct And {
  Expression lhs, rhs;
  friend bool operator==(const And&, const And&) = default;
};
struct Or {
  Expression lhs, rhs;
  friend bool operator==(const Or&, const Or&) = default;
};
struct Not {
  Expression operand;
  friend bool operator==(const Not&, const Not&) = default;
};

struct ExprNode {
  std::variant<PathRef, Literal, Compare, And, Or, Not> v;
  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

/// Grammar:
///   expr := or
///   or   := and ('or' and)*
///   and  := cmp ('and' cmp)*
///   cmp  := term (relop term)?
///   term := path | literal | 'not' term | '(' expr ')'
Expression parse_expr(std::string_view text);

/// Prints with the minimum parentheses needed for parse_expr to rebuild the same tree.
std::string print_expr(const Expression& e);

/// Strict evaluation; comparisons against null are false and connectives short-circuit.
Value eval_expr(const Expression& e, const Environment& env);

/// True iff `text` is a dot-qualified identifier path.
bool is_valid_path(std::string_view text);

}  // namespace bpdmn
