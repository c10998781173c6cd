#include <algorithm>
#include <set>
#include <sstream>

#include "crossmod/detail/text.hpp"
#include "crossmod/kwb.hpp"

namespace crossmod {

namespace {

bool is_sign(int s) { return s == 1 || s == -1; }

std::string arc_label(const KwbDiagram& d, std::size_t band, std::size_t arc) {
  return d.bands[band].name + "." + std::to_string(arc + 1);
}

}  // namespace

std::optional<std::size_t> KwbDiagram::find_arc(std::string_view name) const {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> KwbDiagram::find_band(std::string_view name) const {
  for (std::size_t i = 0; i < bands.size(); ++i)
    if (bands[i].name == name) return i;
  return std::nullopt;
}

void KwbDiagram::validate() const {
  std::set<std::string> names;
  std::vector<char> circle_used(circles, 0);
  for (const auto& a : arcs) {
    if (!detail::is_identifier(a.name)) throw DiagramError("malformed arc name '" + a.name + "'");
    if (!names.insert(a.name).second) throw DiagramError("name '" + a.name + "' declared twice");
    if (a.circle >= circles)
      throw DiagramError("arc '" + a.name + "' on circle " + std::to_string(a.circle) + " but there are " +
                         std::to_string(circles) + " circles");
    circle_used[a.circle] = 1;
  }
  for (std::size_t c = 0; c < circles; ++c)
    if (!circle_used[c]) throw DiagramError("circle " + std::to_string(c) + " has no arcs");

  for (const auto& x : crossings) {
    if (x.over >= arcs.size() || x.under_in >= arcs.size() || x.under_out >= arcs.size())
      throw DiagramError("crossing references an undefined arc");
    if (!is_sign(x.sign)) throw DiagramError("crossing sign must be +1 or -1");
    if (arcs[x.under_in].circle != arcs[x.under_out].circle)
      throw DiagramError("crossing under '" + arcs[x.over].name + "': arcs '" + arcs[x.under_in].name + "' and '" +
                         arcs[x.under_out].name + "' lie on different circles");
  }

  for (std::size_t b = 0; b < bands.size(); ++b) {
    const Band& band = bands[b];
    if (!detail::is_identifier(band.name)) throw DiagramError("malformed band name '" + band.name + "'", b);
    if (!names.insert(band.name).second) throw DiagramError("name '" + band.name + "' declared twice", b);
    if (band.arc_count == 0) throw DiagramError("band '" + band.name + "' has no arcs", b);
    for (const BandEnd* end : {&band.first, &band.last}) {
      if (end->pattern < 1 || end->pattern > 4)
        throw DiagramError("band '" + band.name + "': end case must be 1..4", b);
      if (end->x >= arcs.size() || end->y >= arcs.size())
        throw DiagramError("band '" + band.name + "': end references an undefined arc", b);
    }
    if (band.events.size() != band.arc_count - 1)
      throw DiagramError("band '" + band.name + "' has " + std::to_string(band.arc_count) + " arcs but " +
                             std::to_string(band.events.size()) + " events; expected one per transition",
                         b);
    for (std::size_t i = 0; i < band.events.size(); ++i) {
      const BandEvent& ev = band.events[i];
      if (ev.step != i)
        throw DiagramError("band '" + band.name + "': missing event for step " + std::to_string(i + 1), b);
      if (!is_sign(ev.sign)) throw DiagramError("band '" + band.name + "': event sign must be +1 or -1", b);
      if (ev.kind == BandEvent::Kind::UnderThin) {
        if (ev.over_arc >= arcs.size())
          throw DiagramError("band '" + band.name + "': event passes under an undefined arc", b);
      } else if (ev.over_band >= bands.size() || ev.over_band_arc >= bands[ev.over_band].arc_count) {
        throw DiagramError("band '" + band.name + "': event passes under an undefined band arc", b);
      }
    }
  }

  std::set<std::string> maximal_names;
  for (const auto& m : maximal) {
    if (!detail::is_identifier(m.name)) throw DiagramError("malformed maximal circle name '" + m.name + "'");
    if (!maximal_names.insert(m.name).second) throw DiagramError("maximal circle '" + m.name + "' declared twice");
    if (m.terms.empty()) throw DiagramError("maximal circle '" + m.name + "' has no terms");
    for (const auto& t : m.terms) {
      if (t.band >= bands.size() || t.arc >= bands[t.band].arc_count)
        throw DiagramError("maximal circle '" + m.name + "' references an undefined band arc");
      if (!is_sign(t.exponent)) throw DiagramError("maximal circle '" + m.name + "': exponent must be +1 or -1");
    }
  }

  band_arc_order(*this);
}

std::vector<std::pair<std::size_t, std::size_t>> band_arc_order(const KwbDiagram& d) {
  enum : char { Unseen, Active, Done };
  std::vector<std::vector<char>> state(d.bands.size());
  for (std::size_t b = 0; b < d.bands.size(); ++b) state[b].assign(d.bands[b].arc_count, Unseen);
  std::vector<std::pair<std::size_t, std::size_t>> order;

  // Depth is bounded by the total number of band arcs, which is small.
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t b, std::size_t a) {
    if (state[b][a] == Done) return;
    if (state[b][a] == Active)
      throw DiagramError("band arc " + arc_label(d, b, a) + " depends on itself through under_band events", b);
    state[b][a] = Active;
    if (a > 0) {
      const BandEvent& ev = d.bands[b].events[a - 1];
      visit(b, a - 1);
      if (ev.kind == BandEvent::Kind::UnderBand) visit(ev.over_band, ev.over_band_arc);
    }
    state[b][a] = Done;
    order.emplace_back(b, a);
  };
  for (std::size_t b = 0; b < d.bands.size(); ++b)
    for (std::size_t a = 0; a < d.bands[b].arc_count; ++a) visit(b, a);
  return order;
}

Element band_end_pattern(const FiniteGroup& group, int pattern, Element x, Element y) {
  switch (pattern) {
    case 1: return group.mul(group.inv(y), x);
    case 2: return group.mul(group.inv(x), y);
    case 3: return group.mul(y, group.inv(x));
    case 4: return group.mul(x, group.inv(y));
  }
  throw std::invalid_argument("band end case must be 1..4");
}

bool is_coloring(const KwbDiagram& d, const FiniteCrossedModule& cm, const Coloring& c) {
  const FiniteGroup& G = cm.base();
  const FiniteGroup& E = cm.principal();
  if (c.thin.size() != d.arcs.size() || c.band.size() != d.bands.size()) return false;
  for (Element g : c.thin)
    if (g >= G.order()) return false;
  for (std::size_t b = 0; b < d.bands.size(); ++b) {
    if (c.band[b].size() != d.bands[b].arc_count) return false;
    for (Element e : c.band[b])
      if (e >= E.order()) return false;
  }

  for (const auto& x : d.crossings) {
    const Element over = G.pow(c.thin[x.over], x.sign);
    if (c.thin[x.under_out] != G.conj(over, c.thin[x.under_in])) return false;
  }
  for (std::size_t b = 0; b < d.bands.size(); ++b) {
    const Band& band = d.bands[b];
    const auto& col = c.band[b];
    auto end_ok = [&](const BandEnd& end, Element e) {
      return cm.boundary(e) == band_end_pattern(G, end.pattern, c.thin[end.x], c.thin[end.y]);
    };
    if (!end_ok(band.first, col.front()) || !end_ok(band.last, col.back())) return false;
    for (const auto& ev : band.events) {
      const Element in = col[ev.step];
      Element expected;
      if (ev.kind == BandEvent::Kind::UnderThin) {
        expected = cm.act(G.pow(c.thin[ev.over_arc], ev.sign), in);
      } else {
        const Element f = E.pow(c.band[ev.over_band][ev.over_band_arc], ev.sign);
        expected = E.conj(f, in);
      }
      if (col[ev.step + 1] != expected) return false;
    }
  }
  for (const auto& m : d.maximal) {
    Element acc = E.identity();
    for (const auto& t : m.terms) acc = E.mul(acc, E.pow(c.band[t.band][t.arc], t.exponent));
    if (acc != E.identity()) return false;
  }
  return true;
}

std::string serialize(const KwbDiagram& d) {
  auto sign = [](int s) { return s < 0 ? "-" : "+"; };
  auto exponent = [](int s) { return s < 0 ? "-1" : "+1"; };
  std::ostringstream out;
  out << "kwb v1\n";
  out << "circles " << d.circles << '\n';
  for (const auto& a : d.arcs) out << "arc " << a.name << " circle " << a.circle << '\n';
  for (const auto& x : d.crossings)
    out << "crossing over=" << d.arcs[x.over].name << " under_in=" << d.arcs[x.under_in].name
        << " under_out=" << d.arcs[x.under_out].name << " sign=" << sign(x.sign) << '\n';
  for (std::size_t b = 0; b < d.bands.size(); ++b) {
    const Band& band = d.bands[b];
    out << "band " << band.name << " arcs " << band.arc_count << '\n';
    auto end = [&](const char* which, const BandEnd& e) {
      out << "end " << band.name << ' ' << which << " case=" << e.pattern << " x=" << d.arcs[e.x].name
          << " y=" << d.arcs[e.y].name << '\n';
    };
    end("first", band.first);
    end("last", band.last);
    for (const auto& ev : band.events) {
      if (ev.kind == BandEvent::Kind::UnderThin) {
        out << "under_thin band=" << band.name << " step=" << ev.step + 1 << " over=" << d.arcs[ev.over_arc].name;
      } else {
        out << "under_band band=" << band.name << " step=" << ev.step + 1
            << " over=" << arc_label(d, ev.over_band, ev.over_band_arc);
      }
      out << " sign=" << sign(ev.sign) << '\n';
    }
  }
  for (const auto& m : d.maximal) {
    out << "maximal " << m.name;
    for (const auto& t : m.terms) out << ' ' << arc_label(d, t.band, t.arc) << ':' << exponent(t.exponent);
    out << '\n';
  }
  return out.str();
}

}  // namespace crossmod
