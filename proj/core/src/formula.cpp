#include "formulas/formula.hpp"

#include <cctype>
#include <limits>
#include <utility>
#include <vector>

namespace formulas {

struct Formula::Node {
  NodeKind kind;
  Formula left;
  Formula right;
  mpz_class value;
  std::uint64_t size;
  std::uint64_t mul_count;
};

namespace {

// Guards evaluate() of parsed pow towers; generous for everything the
// library produces (encoders stay below 2^64-ish values).
constexpr std::size_t kMaxValueBits = std::size_t(1) << 26;

const char* validation_error_name(ValidationError err) {
  switch (err) {
    case ValidationError::none: return "none";
    case ValidationError::malformed_tree: return "malformed tree";
    case ValidationError::mul_by_one: return "multiplication/exponentiation by 1";
    case ValidationError::pow_disallowed: return "exponentiation not allowed";
  }
  return "unknown";
}

mpz_class pow_value(const mpz_class& base, const mpz_class& exp) {
  if (!exp.fits_ulong_p())
    throw std::overflow_error("formula value too large: exponent does not fit a machine word");
  unsigned long e = exp.get_ui();
  std::size_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (bits * e > kMaxValueBits)
    throw std::overflow_error("formula value too large");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

Formula Formula::one() {
  static const Formula leaf{std::make_shared<const Node>(
      Node{NodeKind::leaf, {}, {}, mpz_class(1), 1, 0})};
  return leaf;
}

Formula Formula::make(NodeKind kind, const Formula& left, const Formula& right) {
  if (kind == NodeKind::leaf) return one();
  if (left.empty() || right.empty())
    throw std::invalid_argument("binary node needs two children");
  mpz_class value;
  std::uint64_t muls = left.mul_count() + right.mul_count();
  switch (kind) {
    case NodeKind::add: value = left.value() + right.value(); break;
    case NodeKind::mul:
      value = left.value() * right.value();
      ++muls;
      break;
    case NodeKind::pow: value = pow_value(left.value(), right.value()); break;
    default: throw std::invalid_argument("bad node kind");
  }
  return Formula{std::make_shared<const Node>(Node{
      kind, left, right, std::move(value), left.size() + right.size() + 1, muls})};
}

Formula Formula::add(const Formula& l, const Formula& r) { return make(NodeKind::add, l, r); }
Formula Formula::mul(const Formula& l, const Formula& r) { return make(NodeKind::mul, l, r); }
Formula Formula::pow(const Formula& l, const Formula& r) { return make(NodeKind::pow, l, r); }

NodeKind Formula::kind() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->kind;
}

const Formula& Formula::left() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->left;
}

const Formula& Formula::right() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->right;
}

const mpz_class& Formula::value() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->value;
}

std::size_t Formula::size() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->size;
}

std::size_t Formula::mul_count() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return node_->mul_count;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->kind != other.node_->kind || node_->size != other.node_->size ||
      node_->value != other.node_->value)
    return false;
  if (node_->kind == NodeKind::leaf) return true;
  return node_->left == other.node_->left && node_->right == other.node_->right;
}

namespace {

// Pre-order walk carrying the node index; returns the first violation.
ValidationResult validate_node(const Formula& f, FormulaKindSet kinds, std::size_t& index) {
  std::size_t here = index++;
  if (f.empty()) return {ValidationError::malformed_tree, here};
  switch (f.kind()) {
    case NodeKind::leaf:
      if (!f.left().empty() || !f.right().empty() || f.value() != 1)
        return {ValidationError::malformed_tree, here};
      return {};
    case NodeKind::pow:
      if (!kinds.allow_pow) return {ValidationError::pow_disallowed, here};
      [[fallthrough]];
    case NodeKind::mul:
      if (f.left().empty() || f.right().empty())
        return {ValidationError::malformed_tree, here};
      if (f.left().value() < 2 || f.right().value() < 2)
        return {ValidationError::mul_by_one, here};
      break;
    case NodeKind::add:
      if (f.left().empty() || f.right().empty())
        return {ValidationError::malformed_tree, here};
      break;
  }
  ValidationResult l = validate_node(f.left(), kinds, index);
  if (!l.ok()) return l;
  return validate_node(f.right(), kinds, index);
}

}  // namespace

ValidationResult validate(const Formula& formula, FormulaKindSet kinds) {
  std::size_t index = 0;
  return validate_node(formula, kinds, index);
}

mpz_class evaluate(const Formula& formula) {
  if (formula.empty()) throw std::logic_error("empty formula handle");
  if (formula.is_leaf()) {
    if (formula.value() != 1) throw std::logic_error("leaf value corrupted");
    return formula.value();
  }
  mpz_class l = evaluate(formula.left());
  mpz_class r = evaluate(formula.right());
  mpz_class out;
  switch (formula.kind()) {
    case NodeKind::add: out = l + r; break;
    case NodeKind::mul: out = l * r; break;
    case NodeKind::pow: out = pow_value(l, r); break;
    default: throw std::logic_error("bad node kind");
  }
  if (out != formula.value()) throw std::logic_error("cached formula value disagrees");
  return out;
}

namespace {

void infix_append(const Formula& f, std::string& out) {
  if (f.is_leaf()) {
    out += '1';
    return;
  }
  out += '(';
  infix_append(f.left(), out);
  switch (f.kind()) {
    case NodeKind::add: out += '+'; break;
    case NodeKind::mul: out += '*'; break;
    case NodeKind::pow: out += '^'; break;
    default: break;
  }
  infix_append(f.right(), out);
  out += ')';
}

void polish_append(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case NodeKind::leaf: out += '1'; return;
    case NodeKind::add: out += '+'; break;
    case NodeKind::mul: out += '*'; break;
    case NodeKind::pow: out += '^'; break;
  }
  polish_append(f.left(), out);
  polish_append(f.right(), out);
}

}  // namespace

std::string to_infix(const Formula& formula) {
  std::string out;
  out.reserve(formula.size() * 2);
  infix_append(formula, out);
  return out;
}

std::string to_polish(const Formula& formula) {
  std::string out;
  out.reserve(formula.size());
  polish_append(formula, out);
  return out;
}

std::string canonical_key(const Formula& formula) { return to_polish(formula); }

ValueConstraintViolation::ValueConstraintViolation(ValidationError err, std::size_t index)
    : std::runtime_error(std::string("parsed formula violates value constraints: ") +
                         validation_error_name(err) + " at pre-order node " +
                         std::to_string(index)),
      error(err),
      node_index(index) {}

namespace {

// Parser recursion limit; legitimate formulas are nowhere near this deep.
constexpr std::size_t kMaxParseDepth = 1 << 14;

// Shared token scanner for both parsers. Operators may be the ASCII form or
// the UTF-8 multiplication sign / logical-and sign.
struct Scanner {
  std::string_view text;
  std::size_t pos = 0;
  bool skip_ws;

  explicit Scanner(std::string_view t, bool ws) : text(t), skip_ws(ws) { skip(); }

  void skip() {
    if (!skip_ws) return;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool done() const { return pos >= text.size(); }

  char peek() const { return done() ? '\0' : text[pos]; }

  // Returns '1', '+', '*', '^', '(' or ')' for a recognized token without
  // consuming it; '\0' at end of input. Throws on anything else.
  char classify() const {
    if (done()) return '\0';
    unsigned char c = static_cast<unsigned char>(text[pos]);
    switch (c) {
      case '1': case '+': case '*': case '^': case '(': case ')':
        return static_cast<char>(c);
      case 0xC3:  // U+00D7 multiplication sign
        if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 0x97)
          return '*';
        break;
      case 0xE2:  // U+2227 logical and
        if (pos + 2 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 0x88 &&
            static_cast<unsigned char>(text[pos + 2]) == 0xA7)
          return '^';
        break;
      default: break;
    }
    throw ParseError("unexpected character", pos);
  }

  void consume() {
    unsigned char c = static_cast<unsigned char>(text[pos]);
    pos += (c == 0xC3) ? 2 : (c == 0xE2) ? 3 : 1;
    skip();
  }
};

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : scan_(text, /*ws=*/true) {}

  Formula parse() {
    Formula f = expr();
    if (!scan_.done()) throw ParseError("trailing input", scan_.pos);
    return f;
  }

 private:
  Scanner scan_;
  std::size_t depth_ = 0;

  struct DepthGuard {
    explicit DepthGuard(InfixParser& p) : parser(p) {
      if (++parser.depth_ > kMaxParseDepth)
        throw ParseError("nesting too deep", parser.scan_.pos);
    }
    ~DepthGuard() { --parser.depth_; }
    InfixParser& parser;
  };

  Formula expr() {
    DepthGuard guard(*this);
    Formula f = term();
    while (scan_.classify() == '+') {
      scan_.consume();
      f = Formula::add(f, term());
    }
    return f;
  }

  Formula term() {
    Formula f = factor();
    for (;;) {
      char t = scan_.classify();
      if (t == '*') {
        scan_.consume();
        f = Formula::mul(f, factor());
      } else if (t == '(' || t == '1') {
        // juxtaposition, as in "(1+1)(1+1)"
        f = Formula::mul(f, factor());
      } else {
        return f;
      }
    }
  }

  Formula factor() {
    DepthGuard guard(*this);
    Formula base = primary();
    if (scan_.classify() == '^') {
      scan_.consume();
      return Formula::pow(base, factor());  // right-associative
    }
    return base;
  }

  Formula primary() {
    char t = scan_.classify();
    if (t == '1') {
      scan_.consume();
      return Formula::one();
    }
    if (t == '(') {
      scan_.consume();
      Formula f = expr();
      if (scan_.classify() != ')') throw ParseError("expected ')'", scan_.pos);
      scan_.consume();
      return f;
    }
    throw ParseError("expected '1' or '('", scan_.pos);
  }
};

Formula parse_polish_node(Scanner& scan, std::size_t depth) {
  if (depth > kMaxParseDepth) throw ParseError("nesting too deep", scan.pos);
  char t = scan.classify();
  switch (t) {
    case '1': scan.consume(); return Formula::one();
    case '+': case '*': case '^': {
      scan.consume();
      Formula l = parse_polish_node(scan, depth + 1);
      Formula r = parse_polish_node(scan, depth + 1);
      return Formula::make(t == '+' ? NodeKind::add : t == '*' ? NodeKind::mul : NodeKind::pow,
                           l, r);
    }
    case '\0': throw ParseError("unexpected end of input", scan.pos);
    default: throw ParseError("unexpected character", scan.pos);
  }
}

Formula check_parsed(Formula f) {
  ValidationResult v = validate(f, exponential_kinds);
  if (!v.ok()) throw ValueConstraintViolation(v.error, v.node_index);
  return f;
}

}  // namespace

Formula parse_infix(std::string_view text) {
  InfixParser p(text);
  return check_parsed(p.parse());
}

Formula parse_polish(std::string_view text) {
  Scanner scan(text, /*ws=*/false);
  Formula f = parse_polish_node(scan, 0);
  if (!scan.done()) throw ParseError("trailing input", scan.pos);
  return check_parsed(f);
}

std::size_t count_mul_nodes(const Formula& formula) { return formula.mul_count(); }

}  // namespace formulas
