#include <algorithm>

#include "crossmod/detail/parallel.hpp"
#include "crossmod/kwb.hpp"

namespace crossmod {

namespace {

class ColoringSearch {
 public:
  /// With `strict` false the last-end and maximal-circle constraints are not
  /// imposed, which is what the consistency check needs.
  ColoringSearch(const KwbDiagram& d, const FiniteCrossedModule& cm, bool strict)
      : d_(d), cm_(cm), G_(cm.base()), E_(cm.principal()) {
    d.validate();
    std::vector<std::size_t> remaining(d.maximal.size());
    for (std::size_t m = 0; m < d.maximal.size(); ++m) remaining[m] = d.maximal[m].terms.size();

    for (auto [b, a] : band_arc_order(d)) {
      steps_.push_back({a == 0 ? Step::Kind::Choose : Step::Kind::Derive, b, a});
      if (!strict) continue;
      if (a + 1 == d.bands[b].arc_count) steps_.push_back({Step::Kind::CheckLast, b, a});
      for (std::size_t m = 0; m < d.maximal.size(); ++m) {
        for (const auto& t : d.maximal[m].terms)
          if (t.band == b && t.arc == a) --remaining[m];
        if (remaining[m] == 0) {
          steps_.push_back({Step::Kind::CheckMaximal, m, 0});
          remaining[m] = static_cast<std::size_t>(-1);
        }
      }
    }
  }

  /// Work units for parallel runs: the value of the first thin arc.
  std::size_t chunks() const { return d_.arcs.empty() ? 1 : G_.order(); }

  template <class Visitor>
  void run_chunk(std::size_t chunk, Visitor& visit) const {
    Coloring c;
    c.thin.assign(d_.arcs.size(), G_.identity());
    c.band.resize(d_.bands.size());
    for (std::size_t b = 0; b < d_.bands.size(); ++b) c.band[b].assign(d_.bands[b].arc_count, E_.identity());
    std::vector<char> known(d_.arcs.size(), 0);
    if (!d_.arcs.empty()) {
      c.thin[0] = static_cast<Element>(chunk);
      known[0] = 1;
    }
    thin(c, known, visit);
  }

 private:
  struct Step {
    enum class Kind { Choose, Derive, CheckLast, CheckMaximal };
    Kind kind;
    std::size_t index;  // band, or maximal circle for CheckMaximal
    std::size_t arc;
  };

  /// Applies Wirtinger relations until nothing changes. Returns false if a
  /// fully colored crossing is violated.
  bool propagate(std::vector<Element>& val, std::vector<char>& known) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& x : d_.crossings) {
        if (!known[x.over]) continue;
        const Element over = G_.pow(val[x.over], x.sign);
        if (known[x.under_in] && known[x.under_out]) {
          if (val[x.under_out] != G_.conj(over, val[x.under_in])) return false;
        } else if (known[x.under_in]) {
          val[x.under_out] = G_.conj(over, val[x.under_in]);
          known[x.under_out] = 1;
          changed = true;
        } else if (known[x.under_out]) {
          val[x.under_in] = G_.conj(G_.inv(over), val[x.under_out]);
          known[x.under_in] = 1;
          changed = true;
        }
      }
    }
    return true;
  }

  /// Next arc to branch on: one on a circle with nothing colored yet if
  /// possible, else the lowest uncolored arc.
  std::optional<std::size_t> pick(const std::vector<char>& known) const {
    std::vector<char> touched(d_.circles, 0);
    for (std::size_t i = 0; i < d_.arcs.size(); ++i)
      if (known[i]) touched[d_.arcs[i].circle] = 1;
    std::optional<std::size_t> fallback;
    for (std::size_t i = 0; i < d_.arcs.size(); ++i) {
      if (known[i]) continue;
      if (!touched[d_.arcs[i].circle]) return i;
      if (!fallback) fallback = i;
    }
    return fallback;
  }

  template <class Visitor>
  void thin(Coloring& c, std::vector<char> known, Visitor& visit) const {
    std::vector<Element> saved = c.thin;
    if (propagate(c.thin, known)) {
      if (auto next = pick(known)) {
        known[*next] = 1;
        for (Element g = 0; g < G_.order(); ++g) {
          c.thin[*next] = g;
          thin(c, known, visit);
        }
      } else {
        bands(c, 0, visit);
      }
    }
    c.thin = std::move(saved);
  }

  template <class Visitor>
  void bands(Coloring& c, std::size_t i, Visitor& visit) const {
    if (i == steps_.size()) {
      visit(c);
      return;
    }
    const Step& s = steps_[i];
    switch (s.kind) {
      case Step::Kind::Choose: {
        const BandEnd& end = d_.bands[s.index].first;
        const Element target = band_end_pattern(G_, end.pattern, c.thin[end.x], c.thin[end.y]);
        for (Element e : cm_.fiber(target)) {
          c.band[s.index][0] = e;
          bands(c, i + 1, visit);
        }
        return;
      }
      case Step::Kind::Derive: {
        const BandEvent& ev = d_.bands[s.index].events[s.arc - 1];
        const Element in = c.band[s.index][s.arc - 1];
        if (ev.kind == BandEvent::Kind::UnderThin) {
          c.band[s.index][s.arc] = cm_.act(G_.pow(c.thin[ev.over_arc], ev.sign), in);
        } else {
          const Element f = E_.pow(c.band[ev.over_band][ev.over_band_arc], ev.sign);
          c.band[s.index][s.arc] = E_.conj(f, in);
        }
        bands(c, i + 1, visit);
        return;
      }
      case Step::Kind::CheckLast: {
        const BandEnd& end = d_.bands[s.index].last;
        if (cm_.boundary(c.band[s.index][s.arc]) == band_end_pattern(G_, end.pattern, c.thin[end.x], c.thin[end.y]))
          bands(c, i + 1, visit);
        return;
      }
      case Step::Kind::CheckMaximal: {
        Element acc = E_.identity();
        for (const auto& t : d_.maximal[s.index].terms) acc = E_.mul(acc, E_.pow(c.band[t.band][t.arc], t.exponent));
        if (acc == E_.identity()) bands(c, i + 1, visit);
        return;
      }
    }
  }

  const KwbDiagram& d_;
  const FiniteCrossedModule& cm_;
  const FiniteGroup& G_;
  const FiniteGroup& E_;
  std::vector<Step> steps_;
};

}  // namespace

BigInt count_colorings(const KwbDiagram& d, const FiniteCrossedModule& cm, CountOptions options) {
  const ColoringSearch search(d, cm, /*strict=*/true);
  return detail::parallel_sum(search.chunks(), options.jobs, [&](std::size_t chunk) {
    std::uint64_t n = 0;
    auto count = [&n](const Coloring&) { ++n; };
    search.run_chunk(chunk, count);
    return BigInt(n);
  });
}

ExactRational invariant_from_diagram(const KwbDiagram& d, const FiniteCrossedModule& cm, CountOptions options) {
  return ExactRational(count_colorings(d, cm, options), big_pow(cm.principal().order(), d.circles));
}

void for_each_coloring(const KwbDiagram& d, const FiniteCrossedModule& cm,
                       const std::function<void(const Coloring&)>& visit) {
  const ColoringSearch search(d, cm, /*strict=*/true);
  for (std::size_t chunk = 0; chunk < search.chunks(); ++chunk) search.run_chunk(chunk, visit);
}

ConsistencyReport check_consistency(const KwbDiagram& d, const FiniteCrossedModule& cm) {
  const ColoringSearch search(d, cm, /*strict=*/false);
  const FiniteGroup& G = cm.base();
  const FiniteGroup& E = cm.principal();
  std::vector<char> band_flagged(d.bands.size(), 0), maximal_flagged(d.maximal.size(), 0);
  ConsistencyReport report;

  auto visit = [&](const Coloring& c) {
    for (std::size_t b = 0; b < d.bands.size(); ++b) {
      if (band_flagged[b]) continue;
      const BandEnd& end = d.bands[b].last;
      const Element expected = band_end_pattern(G, end.pattern, c.thin[end.x], c.thin[end.y]);
      const Element actual = cm.boundary(c.band[b].back());
      if (actual != expected) {
        band_flagged[b] = 1;
        report.issues.push_back({ConsistencyIssue::Kind::LastEnd, b, c,
                                 "band '" + d.bands[b].name + "': last arc has boundary " + G.name(actual) +
                                     " but the last end requires " + G.name(expected)});
      }
    }
    for (std::size_t m = 0; m < d.maximal.size(); ++m) {
      if (maximal_flagged[m]) continue;
      Element acc = E.identity();
      for (const auto& t : d.maximal[m].terms) acc = E.mul(acc, E.pow(c.band[t.band][t.arc], t.exponent));
      if (cm.boundary(acc) != G.identity()) {
        maximal_flagged[m] = 1;
        report.issues.push_back({ConsistencyIssue::Kind::MaximalBoundary, m, c,
                                 "maximal circle '" + d.maximal[m].name + "': product has boundary " +
                                     G.name(cm.boundary(acc)) + ", not the identity"});
      }
    }
  };
  for (std::size_t chunk = 0; chunk < search.chunks(); ++chunk) search.run_chunk(chunk, visit);

  std::stable_sort(report.issues.begin(), report.issues.end(), [](const auto& a, const auto& b) {
    return std::pair(a.kind, a.index) < std::pair(b.kind, b.index);
  });
  return report;
}

}  // namespace crossmod
