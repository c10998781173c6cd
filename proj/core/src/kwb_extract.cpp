#include "crossmod/kwb.hpp"

namespace crossmod {

namespace {

GroupWord pattern_word(const BandEnd& end) {
  const GroupWord x = GroupWord::generator(end.x), y = GroupWord::generator(end.y);
  switch (end.pattern) {
    case 1: return y.inverse() * x;
    case 2: return x.inverse() * y;
    case 3: return y * x.inverse();
    case 4: return x * y.inverse();
  }
  throw std::invalid_argument("band end case must be 1..4");
}

}  // namespace

ExtractedPresentation extract_presentation(const KwbDiagram& d) {
  d.validate();
  ExtractedPresentation out;
  CrossedModulePresentation& p = out.presentation;

  for (const auto& a : d.arcs) p.base_generators.push_back(a.name);
  p.rank_b1 = d.circles;
  for (const auto& x : d.crossings) {
    const GroupWord over = GroupWord::generator(x.over, x.sign);
    p.base_relations.push_back(over * GroupWord::generator(x.under_in) * over.inverse() *
                               GroupWord::generator(x.under_out, -1));
  }
  for (const auto& band : d.bands) p.principal_generators.push_back({band.name, pattern_word(band.first)});

  // Every band arc equals w ▷ e for its band's generator e; store w.
  std::vector<std::vector<GroupWord>> conj(d.bands.size());
  for (std::size_t b = 0; b < d.bands.size(); ++b) conj[b].resize(d.bands[b].arc_count);
  for (auto [b, a] : band_arc_order(d)) {
    if (a == 0) continue;
    const BandEvent& ev = d.bands[b].events[a - 1];
    GroupWord acting;
    if (ev.kind == BandEvent::Kind::UnderThin) {
      acting = GroupWord::generator(ev.over_arc, ev.sign);
    } else {
      // f·x·f⁻¹ = ∂(f) ▷ x, and ∂(w ▷ e) = w ∂₀(e) w⁻¹.
      const GroupWord& w = conj[ev.over_band][ev.over_band_arc];
      acting = w * p.principal_generators[ev.over_band].boundary.power(ev.sign) * w.inverse();
    }
    conj[b][a] = (acting * conj[b][a - 1]).reduced();
  }

  for (const auto& m : d.maximal) {
    TwoRelation r;
    for (const auto& t : m.terms) r.terms.push_back({conj[t.band][t.arc], t.band, t.exponent});
    p.two_relations.push_back(std::move(r));
  }

  for (std::size_t b = 0; b < d.bands.size(); ++b) {
    const GroupWord& w = conj[b].back();
    out.annotations.push_back(
        {b, (w * p.principal_generators[b].boundary * w.inverse()).reduced(), pattern_word(d.bands[b].last).reduced()});
  }
  return out;
}

}  // namespace crossmod
