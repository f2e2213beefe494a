#include "lojet/expr.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace lojet {

namespace {

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Sqrt: return "sqrt";
    case FuncKind::Flat: return "flat";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& text, int n_vars) : text_(text), n_(n_vars) {}

  ExprNodePtr parse() {
    ExprNodePtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprNodePtr make(NodeKind kind, ExprNodePtr a = nullptr, ExprNodePtr b = nullptr) {
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->a = std::move(a);
    node->b = std::move(b);
    node->pos = pos_;
    return node;
  }

  ExprNodePtr parse_sum() {
    ExprNodePtr lhs = parse_product();
    for (;;) {
      if (accept('+'))
        lhs = make(NodeKind::Add, lhs, parse_product());
      else if (accept('-'))
        lhs = make(NodeKind::Sub, lhs, parse_product());
      else
        return lhs;
    }
  }

  ExprNodePtr parse_product() {
    ExprNodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make(NodeKind::Mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = make(NodeKind::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  ExprNodePtr parse_unary() {
    if (accept('-')) return make(NodeKind::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  ExprNodePtr parse_power() {
    ExprNodePtr base = parse_atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      int k = 0;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected nonnegative integer exponent after '^'", at);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        k = k * 10 + (text_[pos_] - '0');
        if (k > 64) throw ParseError("exponent too large", at);
        ++pos_;
      }
      ExprNodePtr node = make(NodeKind::Pow, base);
      const_cast<ExprNode&>(*node).exponent = k;
      return node;
    }
    return base;
  }

  ExprNodePtr parse_atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", at);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprNodePtr e = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(at);
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier(at);
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  ExprNodePtr parse_number(std::size_t at) {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            text_[end] == 'e' || text_[end] == 'E' ||
            ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
             (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
      ++end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, v);
    if (ec != std::errc{} || ptr == text_.data() + pos_)
      throw ParseError("malformed number", at);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    ExprNodePtr node = make(NodeKind::Constant);
    const_cast<ExprNode&>(*node).value = v;
    return node;
  }

  ExprNodePtr parse_identifier(std::size_t at) {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end]))))
      ++end;
    const std::string name = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (name.size() >= 2 && name[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(name[1]))) {
      int idx = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
          throw ParseError("unknown identifier '" + name + "'", at);
        idx = idx * 10 + (name[i] - '0');
      }
      if (idx < 1 || idx > n_)
        throw ParseError("variable index out of range: " + name, at);
      ExprNodePtr node = make(NodeKind::Variable);
      const_cast<ExprNode&>(*node).var = idx - 1;
      return node;
    }
    FuncKind fk;
    if (name == "exp") fk = FuncKind::Exp;
    else if (name == "log") fk = FuncKind::Log;
    else if (name == "sin") fk = FuncKind::Sin;
    else if (name == "cos") fk = FuncKind::Cos;
    else if (name == "sqrt") fk = FuncKind::Sqrt;
    else if (name == "flat") fk = FuncKind::Flat;
    else throw ParseError("unknown identifier '" + name + "'", at);
    if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
    ExprNodePtr arg = parse_sum();
    if (!accept(')')) throw ParseError("expected ')'", pos_);
    ExprNodePtr node = make(NodeKind::Func, arg);
    const_cast<ExprNode&>(*node).func = fk;
    return node;
  }
};

}  // namespace

std::string print_node(const ExprNode& node) {
  std::ostringstream os;
  os.precision(17);
  switch (node.kind) {
    case NodeKind::Constant: os << node.value; break;
    case NodeKind::Variable: os << "x" << (node.var + 1); break;
    case NodeKind::Neg: os << "(-" << print_node(*node.a) << ")"; break;
    case NodeKind::Add: os << "(" << print_node(*node.a) << " + " << print_node(*node.b) << ")"; break;
    case NodeKind::Sub: os << "(" << print_node(*node.a) << " - " << print_node(*node.b) << ")"; break;
    case NodeKind::Mul: os << "(" << print_node(*node.a) << " * " << print_node(*node.b) << ")"; break;
    case NodeKind::Div: os << "(" << print_node(*node.a) << " / " << print_node(*node.b) << ")"; break;
    case NodeKind::Pow: os << "(" << print_node(*node.a) << "^" << node.exponent << ")"; break;
    case NodeKind::Func: os << func_name(node.func) << "(" << print_node(*node.a) << ")"; break;
  }
  return os.str();
}

Expression parse_expression(const std::string& text, int n_vars) {
  if (n_vars < 1) throw DimensionError("n_vars must be positive");
  Parser p(text, n_vars);
  return Expression(p.parse(), n_vars);
}

double Expression::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != n_vars()) throw DimensionError("point dimension mismatch");
  std::vector<double> vars(x.data(), x.data() + x.size());
  return eval_expression(*this, vars);
}

Eigen::VectorXd Expression::gradient(const Eigen::VectorXd& x) const {
  if (x.size() != n_vars()) throw DimensionError("point dimension mismatch");
  std::vector<Dual> vars;
  vars.reserve(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i)
    vars.push_back(Dual::variable(x[i], static_cast<int>(x.size()), i));
  return eval_expression(*this, vars).g;
}

Eigen::MatrixXd Expression::hessian(const Eigen::VectorXd& x) const {
  if (x.size() != n_vars()) throw DimensionError("point dimension mismatch");
  std::vector<Dual2> vars;
  vars.reserve(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i)
    vars.push_back(Dual2::variable(x[i], static_cast<int>(x.size()), i));
  return eval_expression(*this, vars).h;
}

}  // namespace lojet
