#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossmod/word.hpp"

namespace crossmod {

/// Group elements are indices into the owning group's tables.
using Element = std::uint32_t;

/// Upper bound on group orders accepted by the constructors. Tables are
/// order^2 entries, so this keeps a single group under a megabyte.
inline constexpr std::size_t kMaxGroupOrder = 512;

/// Invalid multiplication table. `witness` holds the offending elements:
/// (a, b, c) for associativity, (e) for a failed identity candidate, (a) for
/// a missing inverse, (a, b) for an out-of-range product.
class GroupTableError : public std::invalid_argument {
 public:
  enum class Kind { Shape, OutOfRange, NotAssociative, NoIdentity, MissingInverse, TooLarge };

  GroupTableError(Kind kind, std::vector<Element> witness, const std::string& message)
      : std::invalid_argument(message), kind_(kind), witness_(std::move(witness)) {}

  Kind kind() const noexcept { return kind_; }
  const std::vector<Element>& witness() const noexcept { return witness_; }

 private:
  Kind kind_;
  std::vector<Element> witness_;
};

/// Finite group stored as a full multiplication table. Immutable once built;
/// every factory validates the group axioms exhaustively.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }

  Element mul(Element a, Element b) const { return product_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// a^exponent for exponent in {+1, -1}.
  Element pow(Element a, int exponent) const { return exponent < 0 ? inverse_[a] : a; }
  Element conj(Element by, Element a) const { return mul(mul(by, a), inverse_[by]); }

  bool is_abelian() const;
  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Element> find(std::string_view name) const;
  std::span<const Element> product_table() const noexcept { return product_; }

  friend FiniteGroup make_from_table(std::size_t order, std::vector<Element> product,
                                     std::vector<std::string> names);

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> product_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
};

/// Validates a row-major order x order table and derives identity and
/// inverses. Throws GroupTableError with a witness on the first violation.
/// Empty `names` defaults to "0", "1", ...
FiniteGroup make_from_table(std::size_t order, std::vector<Element> product,
                            std::vector<std::string> names = {});

/// Z_n under addition; element i is named "i".
FiniteGroup make_cyclic(std::size_t n);

/// Componentwise product; element (i, j) has index i * b.order() + j.
FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                std::size_t max_order = kMaxGroupOrder);

/// Symmetric group on n letters (n <= 5) with composition (p*q)(x) = p(q(x)).
/// Elements are ordered lexicographically by image tuple; index 0 is the
/// identity.
FiniteGroup make_symmetric(std::size_t n);

/// Folds `word` left to right under `assignment` (generator index -> element).
/// Throws std::out_of_range for a generator outside the assignment.
Element evaluate_group_word(const FiniteGroup& group, std::span<const Element> assignment,
                            const GroupWord& word);

/// A finite crossed module (G, E, boundary, action). Construction only checks
/// table shapes and index ranges; use validate_crossed_module for the axioms,
/// or make_crossed_module to get a checked instance.
class FiniteCrossedModule {
 public:
  FiniteCrossedModule(FiniteGroup base, FiniteGroup principal, std::vector<Element> boundary,
                      std::vector<Element> action);

  const FiniteGroup& base() const noexcept { return base_; }
  const FiniteGroup& principal() const noexcept { return principal_; }

  /// g ▷ e
  Element act(Element g, Element e) const { return action_[static_cast<std::size_t>(g) * principal_.order() + e]; }
  /// ∂(e)
  Element boundary(Element e) const { return boundary_[e]; }

  std::span<const Element> boundary_table() const noexcept { return boundary_; }
  std::span<const Element> action_table() const noexcept { return action_; }

  /// Elements e with ∂(e) = g, tabulated once at construction.
  std::span<const Element> fiber(Element g) const { return fibers_[g]; }
  /// #ker ∂
  std::size_t kernel_size() const { return fibers_[base_.identity()].size(); }

 private:
  FiniteGroup base_;
  FiniteGroup principal_;
  std::vector<Element> boundary_;
  std::vector<Element> action_;
  std::vector<std::vector<Element>> fibers_;
};

/// One axiom failure with the elements that exhibit it.
struct CrossedModuleViolation {
  enum class Kind {
    BoundaryNotHomomorphism,   // witness (e, f)
    ActionNotAutomorphism,     // witness (g) or (g, e, f)
    ActionNotGroupAction,      // witness (g, h, e); identity case uses (identity, e)
    Equivariance,              // CM1, witness (g, e)
    Peiffer,                   // CM2, witness (e, f)
  };

  Kind kind;
  std::vector<Element> witness;
  std::string message;
};

std::string_view to_string(CrossedModuleViolation::Kind kind);

struct ValidationReport {
  std::vector<CrossedModuleViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary(std::size_t max_lines = 10) const;
};

/// Exhaustive axiom check. The report is empty iff ∂ is a homomorphism, ▷ is
/// an action by automorphisms, and CM1/CM2 hold for all elements.
ValidationReport validate_crossed_module(const FiniteCrossedModule& cm);

class CrossedModuleError : public std::invalid_argument {
 public:
  explicit CrossedModuleError(ValidationReport report)
      : std::invalid_argument("invalid crossed module: " + report.summary(3)), report_(std::move(report)) {}
  CrossedModuleError(const std::string& message) : std::invalid_argument(message) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Builds and validates; throws CrossedModuleError on any violation.
FiniteCrossedModule make_crossed_module(FiniteGroup base, FiniteGroup principal,
                                        std::vector<Element> boundary, std::vector<Element> action);

/// (G, E, ∂ = 1, ▷). Requires E abelian, which CM2 forces when ∂ is trivial.
FiniteCrossedModule make_trivial_boundary(FiniteGroup base, FiniteGroup principal,
                                          std::vector<Element> action);

/// (G, G, id, conjugation).
FiniteCrossedModule make_conjugation(const FiniteGroup& group);

}  // namespace crossmod
