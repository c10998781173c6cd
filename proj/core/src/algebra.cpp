#include "crossmod/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace crossmod {

namespace {

std::string element_list(const std::vector<Element>& elements) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < elements.size(); ++i) os << (i ? ", " : "") << elements[i];
  os << ')';
  return os.str();
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<Element> FiniteGroup::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Element>(it - names_.begin());
}

FiniteGroup make_from_table(std::size_t order, std::vector<Element> product, std::vector<std::string> names) {
  using Kind = GroupTableError::Kind;
  if (order == 0) throw GroupTableError(Kind::Shape, {}, "group order must be positive");
  if (order > kMaxGroupOrder)
    throw GroupTableError(Kind::TooLarge, {},
                          "group order " + std::to_string(order) + " exceeds bound " + std::to_string(kMaxGroupOrder));
  if (product.size() != order * order)
    throw GroupTableError(Kind::Shape, {},
                          "product table has " + std::to_string(product.size()) + " entries, expected " +
                              std::to_string(order * order));
  if (!names.empty() && names.size() != order)
    throw GroupTableError(Kind::Shape, {}, "expected " + std::to_string(order) + " element names");

  for (std::size_t i = 0; i < product.size(); ++i) {
    if (product[i] >= order) {
      auto a = static_cast<Element>(i / order), b = static_cast<Element>(i % order);
      throw GroupTableError(Kind::OutOfRange, {a, b},
                            "product " + element_list({a, b}) + " = " + std::to_string(product[i]) + " out of range");
    }
  }
  auto at = [&](Element a, Element b) { return product[static_cast<std::size_t>(a) * order + b]; };

  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      for (Element c = 0; c < order; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw GroupTableError(Kind::NotAssociative, {a, b, c}, "not associative at " + element_list({a, b, c}));

  std::optional<Element> identity;
  for (Element e = 0; e < order && !identity; ++e) {
    bool two_sided = true;
    for (Element a = 0; a < order && two_sided; ++a) two_sided = at(e, a) == a && at(a, e) == a;
    if (two_sided) identity = e;
  }
  if (!identity) throw GroupTableError(Kind::NoIdentity, {}, "table has no two-sided identity");

  std::vector<Element> inverse(order);
  for (Element a = 0; a < order; ++a) {
    bool found = false;
    for (Element b = 0; b < order && !found; ++b) {
      if (at(a, b) == *identity && at(b, a) == *identity) {
        inverse[a] = b;
        found = true;
      }
    }
    if (!found) throw GroupTableError(Kind::MissingInverse, {a}, "element " + std::to_string(a) + " has no inverse");
  }

  if (names.empty()) {
    names.reserve(order);
    for (std::size_t i = 0; i < order; ++i) names.push_back(std::to_string(i));
  }

  FiniteGroup g;
  g.order_ = order;
  g.identity_ = *identity;
  g.product_ = std::move(product);
  g.inverse_ = std::move(inverse);
  g.names_ = std::move(names);
  return g;
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw GroupTableError(GroupTableError::Kind::Shape, {}, "cyclic group order must be positive");
  if (n > kMaxGroupOrder)
    throw GroupTableError(GroupTableError::Kind::TooLarge, {}, "cyclic group order " + std::to_string(n) + " too large");
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  return make_from_table(n, std::move(table));
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b, std::size_t max_order) {
  const std::size_t n = a.order() * b.order();
  if (n > max_order || n > kMaxGroupOrder)
    throw GroupTableError(GroupTableError::Kind::TooLarge, {},
                          "direct product order " + std::to_string(n) + " exceeds bound " +
                              std::to_string(std::min(max_order, kMaxGroupOrder)));
  std::vector<Element> table(n * n);
  std::vector<std::string> names(n);
  const std::size_t nb = b.order();
  for (std::size_t x = 0; x < n; ++x) {
    const auto xa = static_cast<Element>(x / nb), xb = static_cast<Element>(x % nb);
    names[x] = "(" + a.name(xa) + "," + b.name(xb) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const auto ya = static_cast<Element>(y / nb), yb = static_cast<Element>(y % nb);
      table[x * n + y] = static_cast<Element>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  return make_from_table(n, std::move(table), std::move(names));
}

FiniteGroup make_symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw GroupTableError(GroupTableError::Kind::TooLarge, {}, "symmetric group degree must be 1..5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const std::size_t order = perms.size();
  std::vector<Element> table(order * order);
  std::vector<std::string> names(order);
  for (std::size_t i = 0; i < order; ++i) {
    std::string name = "[";
    for (std::size_t k = 0; k < n; ++k) name += std::to_string(perms[i][k] + 1);
    names[i] = name + "]";
    for (std::size_t j = 0; j < order; ++j) {
      std::vector<std::size_t> composed(n);
      for (std::size_t x = 0; x < n; ++x) composed[x] = perms[i][perms[j][x]];
      auto it = std::lower_bound(perms.begin(), perms.end(), composed);
      table[i * order + j] = static_cast<Element>(it - perms.begin());
    }
  }
  return make_from_table(order, std::move(table), std::move(names));
}

Element evaluate_group_word(const FiniteGroup& group, std::span<const Element> assignment, const GroupWord& word) {
  Element acc = group.identity();
  for (const Letter& l : word.letters()) {
    if (l.generator >= assignment.size())
      throw std::out_of_range("generator index " + std::to_string(l.generator) + " outside assignment of size " +
                              std::to_string(assignment.size()));
    acc = group.mul(acc, group.pow(assignment[l.generator], l.exponent));
  }
  return acc;
}

FiniteCrossedModule::FiniteCrossedModule(FiniteGroup base, FiniteGroup principal, std::vector<Element> boundary,
                                         std::vector<Element> action)
    : base_(std::move(base)),
      principal_(std::move(principal)),
      boundary_(std::move(boundary)),
      action_(std::move(action)) {
  if (boundary_.size() != principal_.order())
    throw CrossedModuleError("boundary table has " + std::to_string(boundary_.size()) + " entries, expected " +
                             std::to_string(principal_.order()));
  if (action_.size() != base_.order() * principal_.order())
    throw CrossedModuleError("action table has " + std::to_string(action_.size()) + " entries, expected " +
                             std::to_string(base_.order() * principal_.order()));
  for (Element v : boundary_)
    if (v >= base_.order()) throw CrossedModuleError("boundary value " + std::to_string(v) + " out of range");
  for (Element v : action_)
    if (v >= principal_.order()) throw CrossedModuleError("action value " + std::to_string(v) + " out of range");

  fibers_.resize(base_.order());
  for (Element e = 0; e < principal_.order(); ++e) fibers_[boundary_[e]].push_back(e);
}

std::string_view to_string(CrossedModuleViolation::Kind kind) {
  switch (kind) {
    case CrossedModuleViolation::Kind::BoundaryNotHomomorphism: return "boundary-not-homomorphism";
    case CrossedModuleViolation::Kind::ActionNotAutomorphism: return "action-not-automorphism";
    case CrossedModuleViolation::Kind::ActionNotGroupAction: return "action-not-group-action";
    case CrossedModuleViolation::Kind::Equivariance: return "equivariance";
    case CrossedModuleViolation::Kind::Peiffer: return "peiffer";
  }
  return "unknown";
}

std::string ValidationReport::summary(std::size_t max_lines) const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < max_lines; ++i)
    os << "; " << to_string(violations[i].kind) << ' ' << element_list(violations[i].witness) << ": "
       << violations[i].message;
  if (violations.size() > max_lines) os << "; ...";
  return os.str();
}

ValidationReport validate_crossed_module(const FiniteCrossedModule& cm) {
  using Kind = CrossedModuleViolation::Kind;
  const FiniteGroup& G = cm.base();
  const FiniteGroup& E = cm.principal();
  ValidationReport report;
  auto add = [&](Kind kind, std::vector<Element> witness, std::string message) {
    report.violations.push_back({kind, std::move(witness), std::move(message)});
  };

  for (Element e = 0; e < E.order(); ++e)
    for (Element f = 0; f < E.order(); ++f)
      if (cm.boundary(E.mul(e, f)) != G.mul(cm.boundary(e), cm.boundary(f)))
        add(Kind::BoundaryNotHomomorphism, {e, f}, "∂(e·f) ≠ ∂(e)·∂(f)");

  std::vector<char> seen(E.order());
  for (Element g = 0; g < G.order(); ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    bool bijective = true;
    for (Element e = 0; e < E.order(); ++e) {
      const Element image = cm.act(g, e);
      if (seen[image]) bijective = false;
      seen[image] = 1;
    }
    if (!bijective) add(Kind::ActionNotAutomorphism, {g}, "e ↦ g▷e is not a bijection");
    for (Element e = 0; e < E.order(); ++e)
      for (Element f = 0; f < E.order(); ++f)
        if (cm.act(g, E.mul(e, f)) != E.mul(cm.act(g, e), cm.act(g, f)))
          add(Kind::ActionNotAutomorphism, {g, e, f}, "g▷(e·f) ≠ (g▷e)·(g▷f)");
  }

  for (Element e = 0; e < E.order(); ++e)
    if (cm.act(G.identity(), e) != e) add(Kind::ActionNotGroupAction, {G.identity(), e}, "1▷e ≠ e");
  for (Element g = 0; g < G.order(); ++g)
    for (Element h = 0; h < G.order(); ++h)
      for (Element e = 0; e < E.order(); ++e)
        if (cm.act(G.mul(g, h), e) != cm.act(g, cm.act(h, e)))
          add(Kind::ActionNotGroupAction, {g, h, e}, "(g·h)▷e ≠ g▷(h▷e)");

  for (Element g = 0; g < G.order(); ++g)
    for (Element e = 0; e < E.order(); ++e)
      if (cm.boundary(cm.act(g, e)) != G.conj(g, cm.boundary(e)))
        add(Kind::Equivariance, {g, e}, "∂(g▷e) ≠ g·∂(e)·g⁻¹");

  for (Element e = 0; e < E.order(); ++e)
    for (Element f = 0; f < E.order(); ++f)
      if (cm.act(cm.boundary(e), f) != E.conj(e, f)) add(Kind::Peiffer, {e, f}, "∂(e)▷f ≠ e·f·e⁻¹");

  return report;
}

FiniteCrossedModule make_crossed_module(FiniteGroup base, FiniteGroup principal, std::vector<Element> boundary,
                                        std::vector<Element> action) {
  FiniteCrossedModule cm(std::move(base), std::move(principal), std::move(boundary), std::move(action));
  ValidationReport report = validate_crossed_module(cm);
  if (!report.ok()) throw CrossedModuleError(std::move(report));
  return cm;
}

FiniteCrossedModule make_trivial_boundary(FiniteGroup base, FiniteGroup principal, std::vector<Element> action) {
  if (!principal.is_abelian())
    throw CrossedModuleError("trivial boundary requires an abelian principal group (ker ∂ is central)");
  std::vector<Element> boundary(principal.order(), base.identity());
  return make_crossed_module(std::move(base), std::move(principal), std::move(boundary), std::move(action));
}

FiniteCrossedModule make_conjugation(const FiniteGroup& group) {
  const std::size_t n = group.order();
  std::vector<Element> boundary(n);
  std::iota(boundary.begin(), boundary.end(), Element{0});
  std::vector<Element> action(n * n);
  for (Element g = 0; g < n; ++g)
    for (Element e = 0; e < n; ++e) action[g * n + e] = group.conj(g, e);
  return make_crossed_module(group, group, std::move(boundary), std::move(action));
}

}  // namespace crossmod
