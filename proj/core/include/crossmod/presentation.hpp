#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossmod/algebra.hpp"
#include "crossmod/rational.hpp"
#include "crossmod/word.hpp"

namespace crossmod {

/// (X, m)^θ: the principal generator m acted on by the base word X, raised to
/// θ ∈ {+1, -1}.
struct PrincipalTerm {
  GroupWord conjugator;
  std::size_t generator = 0;
  int exponent = 1;

  friend bool operator==(const PrincipalTerm&, const PrincipalTerm&) = default;
};

/// Product of terms, read left to right, imposed equal to 1.
struct TwoRelation {
  std::vector<PrincipalTerm> terms;

  friend bool operator==(const TwoRelation&, const TwoRelation&) = default;
};

struct PrincipalGenerator {
  std::string name;
  GroupWord boundary;

  friend bool operator==(const PrincipalGenerator&, const PrincipalGenerator&) = default;
};

/// Crossed module presented by a map from principal generators into a
/// presented base group, with 2-relations.
///
/// `rank_b1` is the first Betti number of the 1-skeleton and is stored rather
/// than derived: presentations extracted from diagrams carry one generator per
/// arc plus redundant Wirtinger relators, so the generator count overstates it.
struct CrossedModulePresentation {
  std::vector<std::string> base_generators;
  std::vector<GroupWord> base_relations;
  std::size_t rank_b1 = 0;
  std::vector<PrincipalGenerator> principal_generators;
  std::vector<TwoRelation> two_relations;

  /// Throws ValidationError on out-of-range indices, bad exponents,
  /// duplicate or malformed names, or rank_b1 above the generator count.
  void validate() const;

  friend bool operator==(const CrossedModulePresentation&, const CrossedModulePresentation&) = default;
};

struct CountOptions {
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 1;
};

/// Some base assignment satisfying every base relation (and admitting a
/// principal assignment) sends a 2-relation to an element with nontrivial ∂.
class PresentationInconsistency : public std::runtime_error {
 public:
  PresentationInconsistency(std::size_t relation, std::vector<Element> base_assignment, const std::string& message)
      : std::runtime_error(message), relation_(relation), base_assignment_(std::move(base_assignment)) {}

  std::size_t relation() const noexcept { return relation_; }
  const std::vector<Element>& base_assignment() const noexcept { return base_assignment_; }

 private:
  std::size_t relation_;
  std::vector<Element> base_assignment_;
};

/// Number of crossed module morphisms from the presented crossed module into
/// `cm`: pairs (φ₀, ψ₀) with φ₀ satisfying the base relations,
/// ∂(ψ₀(m)) = φ(∂₀(m)) for every principal generator, and every 2-relation
/// ∏ (φ(Xᵢ) ▷ ψ₀(mᵢ))^θᵢ equal to 1.
///
/// Base generators are enumerated with relator propagation; principal
/// generators range over the fibers of ∂, and generators that occur in no
/// 2-relation contribute their fiber size without being enumerated.
BigInt count_homs(const CrossedModulePresentation& pres, const FiniteCrossedModule& cm, CountOptions options = {});

/// count_homs / (#E)^rank_b1.
ExactRational invariant(const CrossedModulePresentation& pres, const FiniteCrossedModule& cm,
                        CountOptions options = {});

/// Free product with Π₂(D², S¹): one fresh base generator c, one fresh
/// principal generator d with ∂₀(d) = c, and rank_b1 + 1.
CrossedModulePresentation stabilize(const CrossedModulePresentation& pres);

/// Disjoint union of generators and relations. Names from `second` that clash
/// with `first` get a numeric suffix.
CrossedModulePresentation free_product(const CrossedModulePresentation& first,
                                       const CrossedModulePresentation& second);

/// Canonical `.cmp` text: single spaces, declared order.
std::string serialize(const CrossedModulePresentation& pres);

/// Reads `.cmp` text. Throws ParseError with line and column.
CrossedModulePresentation parse_presentation(std::string_view text);

/// Renders a word with the presentation's base generator names ("1" if empty).
std::string format_word(const GroupWord& word, const std::vector<std::string>& names);

}  // namespace crossmod
