#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slantmap/frame_algebra.hpp"

namespace slantmap {

/// Arithmetic expression in named coordinates. Supports + - * / ^, unary
/// minus, parentheses, the constants pi and e, and sin cos tan exp log sqrt
/// sinh cosh tanh abs.
class Expression {
 public:
  /// Throws InvalidInput with the offending position on a parse error.
  Expression(const std::string& text, const std::vector<std::string>& variables);

  double operator()(const Vector& x) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// x0, x1, ..., x{n-1}
std::vector<std::string> default_variables(int n);

}  // namespace slantmap
