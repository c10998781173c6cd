#include <algorithm>
#include <optional>

#include "crossmod/detail/parallel.hpp"
#include "crossmod/presentation.hpp"

namespace crossmod {

namespace {

/// Static schedule for assigning base generators. Each step either enumerates
/// a generator over all of G, solves one from a relator in which it is the
/// only unknown and occurs once, or checks a fully assigned relator.
struct BaseStep {
  enum class Kind { Enumerate, Solve, Check };
  Kind kind;
  std::size_t generator = 0;
  std::size_t relation = 0;
  std::size_t position = 0;  // Solve: letter index of the unknown
};

std::vector<BaseStep> plan_base(const CrossedModulePresentation& pres) {
  const std::size_t n = pres.base_generators.size();
  const auto& rels = pres.base_relations;
  std::vector<char> assigned(n, 0), handled(rels.size(), 0);
  std::vector<BaseStep> steps;

  // Returns (generator, position) when exactly one unknown remains and it
  // occurs exactly once.
  auto solvable = [&](std::size_t r, const std::vector<char>& known) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::size_t> unknown;
    std::size_t position = 0, occurrences = 0;
    const auto& letters = rels[r].letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const std::size_t g = letters[i].generator;
      if (known[g]) continue;
      if (unknown && *unknown != g) return std::nullopt;
      unknown = g;
      position = i;
      ++occurrences;
    }
    if (!unknown || occurrences != 1) return std::nullopt;
    return std::pair{*unknown, position};
  };
  auto fully_known = [&](std::size_t r, const std::vector<char>& known) {
    return std::all_of(rels[r].letters().begin(), rels[r].letters().end(),
                       [&](const Letter& l) { return known[l.generator] != 0; });
  };

  // Propagates to a fixpoint; with `emit` false it only simulates and returns
  // how many generators became known.
  auto settle = [&](std::vector<char>& known, std::vector<char>& done, bool emit) {
    std::size_t gained = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t r = 0; r < rels.size(); ++r) {
        if (done[r]) continue;
        if (fully_known(r, known)) {
          done[r] = 1;
          if (emit) steps.push_back({BaseStep::Kind::Check, 0, r, 0});
        } else if (auto s = solvable(r, known)) {
          known[s->first] = 1;
          done[r] = 1;
          ++gained;
          changed = true;
          if (emit) steps.push_back({BaseStep::Kind::Solve, s->first, r, s->second});
        }
      }
    }
    return gained;
  };

  settle(assigned, handled, true);
  while (std::find(assigned.begin(), assigned.end(), 0) != assigned.end()) {
    std::size_t best = n, best_gain = 0;
    for (std::size_t g = 0; g < n; ++g) {
      if (assigned[g]) continue;
      auto known = assigned;
      auto done = handled;
      known[g] = 1;
      const std::size_t gain = settle(known, done, false);
      if (best == n || gain > best_gain) {
        best = g;
        best_gain = gain;
      }
    }
    assigned[best] = 1;
    steps.push_back({BaseStep::Kind::Enumerate, best, 0, 0});
    settle(assigned, handled, true);
  }
  return steps;
}

class HomCounter {
 public:
  HomCounter(const CrossedModulePresentation& pres, const FiniteCrossedModule& cm)
      : pres_(pres), cm_(cm), G_(cm.base()), E_(cm.principal()), plan_(plan_base(pres)) {
    for (std::size_t i = 0; i < plan_.size(); ++i) {
      if (plan_[i].kind == BaseStep::Kind::Enumerate) {
        first_enumerate_ = i;
        break;
      }
    }

    const std::size_t np = pres.principal_generators.size();
    std::vector<std::size_t> slot(np, np);
    for (const auto& rel : pres.two_relations) {
      for (const auto& term : rel.terms) {
        if (slot[term.generator] == np) {
          slot[term.generator] = involved_.size();
          involved_.push_back(term.generator);
        }
      }
    }
    for (std::size_t m = 0; m < np; ++m)
      if (slot[m] == np) free_.push_back(m);

    checks_at_depth_.resize(involved_.size() + 1);
    for (std::size_t r = 0; r < pres.two_relations.size(); ++r) {
      std::size_t depth = 0;
      for (const auto& term : pres.two_relations[r].terms) depth = std::max(depth, slot[term.generator] + 1);
      checks_at_depth_[depth].push_back(r);
    }
  }

  /// Number of top-level work units: the values of the first enumerated
  /// generator, or a single unit if nothing is enumerated.
  std::size_t chunks() const { return first_enumerate_ ? G_.order() : 1; }

  BigInt count_chunk(std::size_t chunk) const {
    State st;
    st.phi.assign(pres_.base_generators.size(), G_.identity());
    st.psi.assign(pres_.principal_generators.size(), E_.identity());
    st.target.resize(pres_.principal_generators.size());
    st.conj.resize(pres_.two_relations.size());
    for (std::size_t r = 0; r < pres_.two_relations.size(); ++r) st.conj[r].resize(pres_.two_relations[r].terms.size());
    walk_base(st, 0, chunk);
    return st.total;
  }

 private:
  struct State {
    std::vector<Element> phi;
    std::vector<Element> psi;
    std::vector<Element> target;
    std::vector<std::vector<Element>> conj;
    BigInt total = 0;
  };

  Element eval_range(const State& st, const GroupWord& w, std::size_t begin, std::size_t end) const {
    Element acc = G_.identity();
    const auto& letters = w.letters();
    for (std::size_t i = begin; i < end; ++i) acc = G_.mul(acc, G_.pow(st.phi[letters[i].generator], letters[i].exponent));
    return acc;
  }
  Element eval(const State& st, const GroupWord& w) const { return eval_range(st, w, 0, w.size()); }

  void walk_base(State& st, std::size_t step, std::size_t chunk) const {
    if (step == plan_.size()) {
      st.total += count_principal(st);
      return;
    }
    const BaseStep& s = plan_[step];
    switch (s.kind) {
      case BaseStep::Kind::Enumerate:
        if (first_enumerate_ && step == *first_enumerate_) {
          st.phi[s.generator] = static_cast<Element>(chunk);
          walk_base(st, step + 1, chunk);
        } else {
          for (Element g = 0; g < G_.order(); ++g) {
            st.phi[s.generator] = g;
            walk_base(st, step + 1, chunk);
          }
        }
        return;
      case BaseStep::Kind::Solve: {
        // u · x^ε · v = 1  ⇒  x^ε = u⁻¹ · v⁻¹
        const GroupWord& w = pres_.base_relations[s.relation];
        const Element u = eval_range(st, w, 0, s.position);
        const Element v = eval_range(st, w, s.position + 1, w.size());
        const Element x = G_.mul(G_.inv(u), G_.inv(v));
        st.phi[s.generator] = G_.pow(x, w.letters()[s.position].exponent);
        walk_base(st, step + 1, chunk);
        return;
      }
      case BaseStep::Kind::Check:
        if (eval(st, pres_.base_relations[s.relation]) == G_.identity()) walk_base(st, step + 1, chunk);
        return;
    }
  }

  BigInt count_principal(State& st) const {
    const auto& pgens = pres_.principal_generators;
    for (std::size_t m = 0; m < pgens.size(); ++m) {
      st.target[m] = eval(st, pgens[m].boundary);
      if (cm_.fiber(st.target[m]).empty()) return 0;
    }

    for (std::size_t r = 0; r < pres_.two_relations.size(); ++r) {
      const auto& terms = pres_.two_relations[r].terms;
      Element image = G_.identity();
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const Element c = eval(st, terms[t].conjugator);
        st.conj[r][t] = c;
        image = G_.mul(image, G_.pow(G_.conj(c, st.target[terms[t].generator]), terms[t].exponent));
      }
      if (image != G_.identity()) {
        throw PresentationInconsistency(
            r, st.phi,
            "2-relation " + std::to_string(r + 1) + " has nontrivial boundary under a base assignment satisfying "
            "every base relation; the presentation is inconsistent");
      }
    }

    BigInt factor = 1;
    for (std::size_t m : free_) factor *= cm_.fiber(st.target[m]).size();
    if (involved_.empty()) return factor;
    return factor * walk_principal(st, 0);
  }

  bool relation_holds(const State& st, std::size_t r) const {
    const auto& terms = pres_.two_relations[r].terms;
    Element acc = E_.identity();
    for (std::size_t t = 0; t < terms.size(); ++t)
      acc = E_.mul(acc, E_.pow(cm_.act(st.conj[r][t], st.psi[terms[t].generator]), terms[t].exponent));
    return acc == E_.identity();
  }

  std::uint64_t walk_principal(State& st, std::size_t depth) const {
    for (std::size_t r : checks_at_depth_[depth])
      if (!relation_holds(st, r)) return 0;
    if (depth == involved_.size()) return 1;
    const std::size_t m = involved_[depth];
    std::uint64_t count = 0;
    for (Element e : cm_.fiber(st.target[m])) {
      st.psi[m] = e;
      count += walk_principal(st, depth + 1);
    }
    return count;
  }

  const CrossedModulePresentation& pres_;
  const FiniteCrossedModule& cm_;
  const FiniteGroup& G_;
  const FiniteGroup& E_;
  std::vector<BaseStep> plan_;
  std::optional<std::size_t> first_enumerate_;
  std::vector<std::size_t> involved_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<std::size_t>> checks_at_depth_;
};

}  // namespace

BigInt count_homs(const CrossedModulePresentation& pres, const FiniteCrossedModule& cm, CountOptions options) {
  pres.validate();
  HomCounter counter(pres, cm);
  return detail::parallel_sum(counter.chunks(), options.jobs,
                              [&](std::size_t chunk) { return counter.count_chunk(chunk); });
}

ExactRational invariant(const CrossedModulePresentation& pres, const FiniteCrossedModule& cm, CountOptions options) {
  return ExactRational(count_homs(pres, cm, options), big_pow(cm.principal().order(), pres.rank_b1));
}

}  // namespace crossmod
