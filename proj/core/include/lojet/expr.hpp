#ifndef LOJET_EXPR_HPP
#define LOJET_EXPR_HPP

#include <Eigen/Core>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lojet/dual.hpp"
#include "lojet/errors.hpp"
#include "lojet/scalar_ops.hpp"

namespace lojet {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Func, Neg };
enum class FuncKind { Exp, Log, Sin, Cos, Sqrt, Flat };

struct ExprNode {
  NodeKind kind;
  double value = 0.0;                      // Constant
  int var = -1;                            // Variable (0-based)
  int exponent = 0;                        // Pow
  FuncKind func = FuncKind::Exp;           // Func
  std::shared_ptr<const ExprNode> a, b;    // children
  std::size_t pos = 0;                     // source position
};

using ExprNodePtr = std::shared_ptr<const ExprNode>;

std::string print_node(const ExprNode& node);

// Immutable parsed expression in variables x1..xn. All evaluation entry
// points are pure and thread-safe.
class Expression {
 public:
  Expression() = default;
  Expression(ExprNodePtr root, int n_vars) : root_(std::move(root)), n_vars_(n_vars) {}

  int n_vars() const { return n_vars_; }
  const ExprNodePtr& root() const { return root_; }
  bool valid() const { return root_ != nullptr; }

  // Canonical fully parenthesized form; parse(print(e)) reproduces the AST.
  std::string to_string() const { return print_node(*root_); }

  double evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

 private:
  ExprNodePtr root_;
  int n_vars_ = 0;
};

Expression parse_expression(const std::string& text, int n_vars);

// Generic evaluation over any scalar type providing the t_* interface.
template <class T>
T eval_generic(const ExprNode& node, std::span<const T> vars) {
  switch (node.kind) {
    case NodeKind::Constant:
      return constant_like(vars[0], node.value);
    case NodeKind::Variable:
      return vars[static_cast<std::size_t>(node.var)];
    case NodeKind::Neg:
      return -eval_generic(*node.a, vars);
    case NodeKind::Add:
      return eval_generic(*node.a, vars) + eval_generic(*node.b, vars);
    case NodeKind::Sub:
      return eval_generic(*node.a, vars) - eval_generic(*node.b, vars);
    case NodeKind::Mul:
      return eval_generic(*node.a, vars) * eval_generic(*node.b, vars);
    case NodeKind::Div:
      try {
        return t_div(eval_generic(*node.a, vars), eval_generic(*node.b, vars));
      } catch (EvalError& e) {
        if (e.has_node()) throw;
        throw EvalError(e.what(), print_node(node));
      }
    case NodeKind::Pow:
      return t_pow(eval_generic(*node.a, vars), node.exponent);
    case NodeKind::Func: {
      T arg = eval_generic(*node.a, vars);
      try {
        switch (node.func) {
          case FuncKind::Exp: return t_exp(arg);
          case FuncKind::Log: return t_log(arg);
          case FuncKind::Sin: return t_sin(arg);
          case FuncKind::Cos: return t_cos(arg);
          case FuncKind::Sqrt: return t_sqrt(arg);
          case FuncKind::Flat: return t_flat(arg);
        }
      } catch (EvalError& e) {
        if (e.has_node()) throw;
        throw EvalError(e.what(), print_node(node));
      }
      break;
    }
  }
  throw EvalError("corrupt expression node");
}

template <class T>
T eval_expression(const Expression& e, const std::vector<T>& vars) {
  return eval_generic<T>(*e.root(), std::span<const T>(vars));
}

}  // namespace lojet

#endif  // LOJET_EXPR_HPP
