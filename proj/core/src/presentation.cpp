#include "crossmod/presentation.hpp"

#include <set>

#include "crossmod/detail/text.hpp"
#include "crossmod/errors.hpp"

namespace crossmod {

namespace {

void check_word(const GroupWord& word, std::size_t base_count, const std::string& where) {
  for (const Letter& l : word.letters()) {
    if (l.generator >= base_count)
      throw ValidationError(where + ": base generator index " + std::to_string(l.generator) + " out of range");
    if (l.exponent != 1 && l.exponent != -1) throw ValidationError(where + ": exponent must be +1 or -1");
  }
}

std::string fresh_name(const std::set<std::string>& taken, const std::string& stem) {
  if (!taken.contains(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

std::set<std::string> all_names(const CrossedModulePresentation& pres) {
  std::set<std::string> names(pres.base_generators.begin(), pres.base_generators.end());
  for (const auto& p : pres.principal_generators) names.insert(p.name);
  return names;
}

}  // namespace

void CrossedModulePresentation::validate() const {
  std::set<std::string> seen;
  auto check_name = [&](const std::string& name) {
    if (!detail::is_identifier(name)) throw ValidationError("malformed generator name '" + name + "'");
    if (!seen.insert(name).second) throw ValidationError("duplicate generator name '" + name + "'");
  };
  for (const auto& name : base_generators) check_name(name);
  for (const auto& p : principal_generators) check_name(p.name);

  if (rank_b1 > base_generators.size())
    throw ValidationError("b1 = " + std::to_string(rank_b1) + " exceeds base generator count " +
                          std::to_string(base_generators.size()));
  const std::size_t nb = base_generators.size();
  for (std::size_t r = 0; r < base_relations.size(); ++r)
    check_word(base_relations[r], nb, "base relation " + std::to_string(r + 1));
  for (const auto& p : principal_generators) check_word(p.boundary, nb, "boundary of '" + p.name + "'");
  for (std::size_t r = 0; r < two_relations.size(); ++r) {
    const std::string where = "2-relation " + std::to_string(r + 1);
    for (const auto& term : two_relations[r].terms) {
      check_word(term.conjugator, nb, where);
      if (term.generator >= principal_generators.size())
        throw ValidationError(where + ": principal generator index " + std::to_string(term.generator) +
                              " out of range");
      if (term.exponent != 1 && term.exponent != -1) throw ValidationError(where + ": exponent must be +1 or -1");
    }
  }
}

CrossedModulePresentation stabilize(const CrossedModulePresentation& pres) {
  CrossedModulePresentation out = pres;
  auto taken = all_names(pres);
  std::string c = fresh_name(taken, "c");
  taken.insert(c);
  std::string d = fresh_name(taken, "d");
  out.base_generators.push_back(c);
  out.principal_generators.push_back({d, GroupWord::generator(out.base_generators.size() - 1)});
  out.rank_b1 += 1;
  return out;
}

CrossedModulePresentation free_product(const CrossedModulePresentation& first,
                                       const CrossedModulePresentation& second) {
  CrossedModulePresentation out = first;
  auto taken = all_names(first);
  // Names within `second` are distinct, but a renamed one could collide with a
  // later original name, so reserve the originals first.
  for (const auto& n : second.base_generators) taken.insert(n);
  for (const auto& p : second.principal_generators) taken.insert(p.name);
  const auto first_names = all_names(first);
  auto rename = [&](const std::string& name) {
    if (!first_names.contains(name)) return name;
    std::string renamed = fresh_name(taken, name + "_");
    taken.insert(renamed);
    return renamed;
  };

  const std::size_t base_offset = first.base_generators.size();
  const std::size_t principal_offset = first.principal_generators.size();
  for (const auto& n : second.base_generators) out.base_generators.push_back(rename(n));
  for (GroupWord w : second.base_relations) {
    w.shift_generators(base_offset);
    out.base_relations.push_back(std::move(w));
  }
  for (PrincipalGenerator p : second.principal_generators) {
    p.name = rename(p.name);
    p.boundary.shift_generators(base_offset);
    out.principal_generators.push_back(std::move(p));
  }
  for (TwoRelation r : second.two_relations) {
    for (auto& term : r.terms) {
      term.conjugator.shift_generators(base_offset);
      term.generator += principal_offset;
    }
    out.two_relations.push_back(std::move(r));
  }
  out.rank_b1 = first.rank_b1 + second.rank_b1;
  return out;
}

std::string format_word(const GroupWord& word, const std::vector<std::string>& names) {
  if (word.empty()) return "1";
  std::string out;
  for (const Letter& l : word.letters()) {
    if (!out.empty()) out += ' ';
    out += l.generator < names.size() ? names[l.generator] : "?" + std::to_string(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

}  // namespace crossmod
