#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace formulas {

enum class NodeKind : std::uint8_t { leaf, add, mul, pow };

/// Which operator alphabet a formula is allowed to use: {1,+,*} or {1,+,*,^}.
struct FormulaKindSet {
  bool allow_pow = false;
};

inline constexpr FormulaKindSet arithmetic_kinds{false};
inline constexpr FormulaKindSet exponential_kinds{true};

/// Immutable full binary tree over {1,+,*,^} with the node value, node count
/// and multiplication count cached at construction. Copies are cheap handles
/// sharing structure; a default-constructed Formula is an empty handle.
class Formula {
 public:
  Formula() = default;

  static Formula one();
  static Formula add(const Formula& left, const Formula& right);
  static Formula mul(const Formula& left, const Formula& right);
  static Formula pow(const Formula& left, const Formula& right);
  static Formula make(NodeKind kind, const Formula& left, const Formula& right);

  bool empty() const { return node_ == nullptr; }
  NodeKind kind() const;
  bool is_leaf() const { return kind() == NodeKind::leaf; }
  const Formula& left() const;
  const Formula& right() const;

  /// Cached root value.
  const mpz_class& value() const;
  /// Node count == symbol count in infix or Polish notation.
  std::size_t size() const;
  /// Cached number of mul nodes.
  std::size_t mul_count() const;

  /// Structural equality (shared subtrees short-circuit).
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class ValidationError : std::uint8_t {
  none,
  malformed_tree,  // empty handle / missing child / leaf with children
  mul_by_one,      // a mul or pow child has value 1
  pow_disallowed,  // pow node present but kinds.allow_pow is false
};

struct ValidationResult {
  ValidationError error = ValidationError::none;
  std::size_t node_index = 0;  // pre-order index of the first violating node
  bool ok() const { return error == ValidationError::none; }
  explicit operator bool() const { return ok(); }
};

/// Checks the structural invariants of Definition-style formulas: full binary
/// tree, mul/pow children >= 2, pow only when allowed. Reports the first
/// violation in pre-order.
ValidationResult validate(const Formula& formula, FormulaKindSet kinds);

/// Recomputes the value bottom-up and cross-checks every cached node value.
/// Throws std::logic_error if a cached value disagrees (cannot happen for
/// trees built through the factories).
mpz_class evaluate(const Formula& formula);

/// Fully parenthesized infix form, e.g. "((1+1)*(1+1))".
std::string to_infix(const Formula& formula);

/// Polish (prefix) form over the one-byte alphabet {1,+,*,^}; its length
/// equals size(formula).
std::string to_polish(const Formula& formula);

/// Canonical identity of a tree: the Polish string (injective on trees).
std::string canonical_key(const Formula& formula);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at byte " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Parse failure of the value constraints (e.g. multiplication by 1) on an
/// otherwise well-formed input.
struct ValueConstraintViolation : std::runtime_error {
  ValueConstraintViolation(ValidationError err, std::size_t node_index);
  ValidationError error;
  std::size_t node_index;
};

/// Accepts '+', '*' (or U+00D7), '^' (or U+2227), '1', parentheses and
/// whitespace. Precedence ^ > * > +, left-associative + and *,
/// right-associative ^; juxtaposition "(a)(b)" means multiplication.
Formula parse_infix(std::string_view text);

/// Accepts the same operator aliases, no parentheses/whitespace.
Formula parse_polish(std::string_view text);

std::size_t count_mul_nodes(const Formula& formula);

struct PowDisallowed : std::runtime_error {
  PowDisallowed() : std::runtime_error("pow node not allowed here") {}
};

}  // namespace formulas
