#include "slantmap/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "slantmap/errors.hpp"

namespace slantmap {

struct Expression::Node {
  enum Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  double value = 0.0;
  int index = 0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(const Vector& x) const {
    switch (kind) {
      case Number: return value;
      case Variable: return x[index];
      case Neg: return -a->eval(x);
      case Add: return a->eval(x) + b->eval(x);
      case Sub: return a->eval(x) - b->eval(x);
      case Mul: return a->eval(x) * b->eval(x);
      case Div: return a->eval(x) / b->eval(x);
      case Pow: return std::pow(a->eval(x), b->eval(x));
      case Call: return fn(a->eval(x));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct Function {
  const char* name;
  double (*fn)(double);
};

const Function kFunctions[] = {
    {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},   {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},   {"sqrt", [](double v) { return std::sqrt(v); }},
    {"sinh", [](double v) { return std::sinh(v); }}, {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }}, {"abs", [](double v) { return std::abs(v); }},
};

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  static NodePtr make(Expression::Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw GeometryError(ErrorKind::InvalidInput,
                        "expression '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept('+')) n = make(Expression::Node::Add, n, product());
      else if (accept('-')) n = make(Expression::Node::Sub, n, product());
      else return n;
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Expression::Node::Mul, n, unary());
      else if (accept('/')) n = make(Expression::Node::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expression::Node::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  // right associative; -a^b parses as -(a^b)
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Expression::Node::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr n = sum();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<size_t>(end - begin);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Expression::Node::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == id) {
          auto n = std::make_shared<Expression::Node>();
          n->kind = Expression::Node::Variable;
          n->index = static_cast<int>(i);
          return n;
        }
      for (const Function& f : kFunctions)
        if (id == f.name) {
          if (!accept('(')) fail("expected '(' after " + id);
          auto n = std::make_shared<Expression::Node>();
          n->kind = Expression::Node::Call;
          n->fn = f.fn;
          n->a = sum();
          if (!accept(')')) fail("expected ')'");
          return n;
        }
      if (id == "pi" || id == "e") {
        auto n = std::make_shared<Expression::Node>();
        n->kind = Expression::Node::Number;
        n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
        return n;
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected character");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& text, const std::vector<std::string>& variables)
    : text_(text), root_(Parser(text, variables).parse()) {}

double Expression::operator()(const Vector& x) const { return root_->eval(x); }

std::vector<std::string> default_variables(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace slantmap
