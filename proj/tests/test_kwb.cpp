#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "crossmod/corpus.hpp"
#include "crossmod/errors.hpp"
#include "crossmod/kwb.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

using namespace crossmod;

namespace {

constexpr double kOracleBudget = 3e6;

std::vector<Example> corpus() {
  std::vector<Example> out;
  for (const auto& info : list_examples()) out.push_back(load_example(info.name));
  return out;
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_diagram(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

std::string parse_error_message(const std::string& text) {
  try {
    parse_diagram(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {};
}

const std::string kOneBand =
    "kwb v1\n"
    "circles 1\n"
    "arc X circle 0\n"
    "band f arcs 2\n"
    "end f first case=4 x=X y=X\n"
    "end f last case=4 x=X y=X\n"
    "under_thin band=f step=1 over=X sign=-\n";

std::vector<Coloring> colorings(const KwbDiagram& d, const FiniteCrossedModule& cm) {
  std::vector<Coloring> out;
  for_each_coloring(d, cm, [&](const Coloring& c) { out.push_back(c); });
  return out;
}

/// Splices "under `over` with sign s, then under `over` with sign -s" into
/// band `b` right after its arc `at` (0-based).
KwbDiagram insert_cancelling_pair(KwbDiagram d, std::size_t b, std::size_t at, std::size_t over, int sign) {
  auto shift = [&](std::size_t band, std::size_t& arc) {
    if (band == b && arc > at) arc += 2;
  };
  for (auto& band : d.bands)
    for (auto& ev : band.events)
      if (ev.kind == BandEvent::Kind::UnderBand) shift(ev.over_band, ev.over_band_arc);
  for (auto& m : d.maximal)
    for (auto& t : m.terms) shift(t.band, t.arc);
  Band& band = d.bands[b];
  BandEvent first{BandEvent::Kind::UnderThin, 0, over, 0, 0, sign};
  BandEvent second = first;
  second.sign = -sign;
  band.events.insert(band.events.begin() + static_cast<std::ptrdiff_t>(at), {first, second});
  band.arc_count += 2;
  for (std::size_t i = 0; i < band.events.size(); ++i) band.events[i].step = i;
  return d;
}

}  // namespace

TEST(KwbParse, SpunTrefoilShape) {
  const auto d = load_example("spun_trefoil").diagram;
  EXPECT_EQ(d.circles, 2u);
  EXPECT_EQ(d.bands.size(), 2u);
  EXPECT_EQ(d.arcs.size(), 7u);
  EXPECT_EQ(d.bands[1].arc_count, 4u);
  EXPECT_EQ(d.maximal.size(), 2u);
}

TEST(KwbParse, TrivialSphereK3Shape) {
  const auto d = load_example("trivial_sphere_K3").diagram;
  EXPECT_EQ(d.circles, 2u);
  EXPECT_EQ(d.bands.size(), 1u);
  EXPECT_TRUE(d.maximal.empty());
}

TEST(KwbParse, RoundTripCorpus) {
  for (const auto& ex : corpus()) {
    EXPECT_EQ(parse_diagram(serialize(ex.diagram)), ex.diagram) << ex.name;
  }
}

TEST(KwbParse, ForwardReferencesAllowed) {
  const auto d = parse_diagram(
      "kwb v1\n"
      "under_band band=e step=1 over=f.1 sign=+\n"
      "band e arcs 2\nband f arcs 1\n"
      "end e first case=2 x=X y=X\nend e last case=2 x=X y=X\n"
      "end f first case=2 x=X y=X\nend f last case=2 x=X y=X\n"
      "arc X circle 0\ncircles 1\n");
  EXPECT_EQ(d.bands[0].events[0].kind, BandEvent::Kind::UnderBand);
  EXPECT_EQ(d.bands[0].events[0].over_band, 1u);
}

TEST(KwbParse, UndefinedArcIsNamed) {
  const std::string text = kOneBand + "crossing over=Q under_in=X under_out=X sign=+\n";
  EXPECT_NE(parse_error_message(text).find("undefined arc 'Q'"), std::string::npos);
  EXPECT_EQ(parse_error_line(text), 8u);
}

TEST(KwbParse, ArcOnTwoCircles) {
  const std::string text = "kwb v1\ncircles 2\narc X circle 0\narc X circle 1\n";
  EXPECT_NE(parse_error_message(text).find("circles 0 and 1"), std::string::npos);
  EXPECT_EQ(parse_error_line(text), 4u);
}

TEST(KwbParse, EventChainGap) {
  const std::string text =
      "kwb v1\ncircles 1\narc X circle 0\nband f arcs 3\n"
      "end f first case=4 x=X y=X\nend f last case=4 x=X y=X\n"
      "under_thin band=f step=2 over=X sign=-\n";
  EXPECT_NE(parse_error_message(text).find("no event for step 1"), std::string::npos);
  EXPECT_EQ(parse_error_line(text), 4u);
}

TEST(KwbParse, StructuralErrors) {
  // Under arcs on different circles.
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 2\narc X circle 0\narc Y circle 1\n"
                             "crossing over=X under_in=X under_out=Y sign=+\n"),
            5u);
  // Circle index out of range.
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 1\narc X circle 1\n"), 3u);
  // Step beyond the band.
  EXPECT_EQ(parse_error_line(kOneBand + "under_thin band=f step=2 over=X sign=+\n"), 8u);
  // Two events for one step.
  EXPECT_EQ(parse_error_line(kOneBand + "under_thin band=f step=1 over=X sign=+\n"), 8u);
  // Bad sign and bad case.
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 1\narc X circle 0\ncrossing over=X under_in=X under_out=X sign=*\n"), 4u);
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 1\narc X circle 0\nband e arcs 1\nend e first case=5 x=X y=X\n"), 5u);
  // Missing last end.
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 1\narc X circle 0\nband e arcs 1\nend e first case=2 x=X y=X\n"), 4u);
  // Maximal term on a nonexistent band arc.
  EXPECT_EQ(parse_error_line(kOneBand + "maximal m f.3:+1\n"), 8u);
  EXPECT_EQ(parse_error_line(kOneBand + "maximal m f.2:+2\n"), 8u);
  // Circle without arcs, empty input, bad header, unknown directive.
  EXPECT_THROW(parse_diagram("kwb v1\ncircles 2\narc X circle 0\n"), ParseError);
  EXPECT_THROW(parse_diagram(""), ParseError);
  EXPECT_THROW(parse_diagram("kwb v2\n"), ParseError);
  EXPECT_EQ(parse_error_line("kwb v1\ncircles 1\narc X circle 0\nribbon r\n"), 4u);
}

TEST(KwbParse, DependencyCycleRejected) {
  const std::string text =
      "kwb v1\ncircles 1\narc X circle 0\n"
      "band e arcs 2\nend e first case=2 x=X y=X\nend e last case=2 x=X y=X\n"
      "under_band band=e step=1 over=e.2 sign=+\n";
  EXPECT_NE(parse_error_message(text).find("depends on itself"), std::string::npos);
}

TEST(KwbValidate, InMemoryErrors) {
  auto d = load_example("spun_hopf").diagram;
  d.crossings[0].over = 99;
  EXPECT_THROW(d.validate(), DiagramError);
  d = load_example("spun_hopf").diagram;
  d.bands[2].events.pop_back();
  EXPECT_THROW(d.validate(), DiagramError);
  EXPECT_THROW(count_colorings(d, coefficient_A()), DiagramError);
}

TEST(Coloring, TrivialCoefficientGivesOne) {
  const auto trivial = builtin_coefficient("trivial");
  for (const auto& ex : corpus()) EXPECT_EQ(count_colorings(ex.diagram, trivial), 1) << ex.name;
}

TEST(Coloring, AgreesWithBruteForce) {
  int compared = 0;
  for (const auto& ex : corpus()) {
    for (const auto& [name, cm] : testdata::coefficients()) {
      if (oracle::diagram_space(ex.diagram, cm) > kOracleBudget) continue;
      EXPECT_EQ(count_colorings(ex.diagram, cm), oracle::count_diagram(ex.diagram, cm)) << ex.name << " / " << name;
      ++compared;
    }
  }
  EXPECT_GT(compared, 25);
}

TEST(Coloring, EnumeratedColoringsAreValidAndDistinct) {
  for (const auto& ex : corpus()) {
    for (const auto& [name, cm] : testdata::coefficients()) {
      const auto all = colorings(ex.diagram, cm);
      EXPECT_EQ(BigInt(all.size()), count_colorings(ex.diagram, cm));
      std::set<std::pair<std::vector<Element>, std::vector<std::vector<Element>>>> seen;
      for (const auto& c : all) {
        ASSERT_TRUE(is_coloring(ex.diagram, cm, c)) << ex.name << " / " << name;
        seen.insert({c.thin, c.band});
      }
      EXPECT_EQ(seen.size(), all.size());
    }
  }
}

TEST(Coloring, IsColoringRejectsPerturbation) {
  const auto d = load_example("spun_trefoil").diagram;
  const auto cm = builtin_coefficient("s3_a3");
  const auto all = colorings(d, cm);
  ASSERT_FALSE(all.empty());
  auto c = all.front();
  c.thin[2] = cm.base().mul(c.thin[2], 1);
  EXPECT_FALSE(is_coloring(d, cm, c));
}

TEST(Coloring, GlobalConjugationPermutesColorings) {
  for (const auto& ex : corpus()) {
    for (const auto& [name, cm] : testdata::coefficients()) {
      const auto all = colorings(ex.diagram, cm);
      std::set<std::pair<std::vector<Element>, std::vector<std::vector<Element>>>> original;
      for (const auto& c : all) original.insert({c.thin, c.band});
      const auto& G = cm.base();
      for (Element h = 0; h < G.order(); ++h) {
        std::set<std::pair<std::vector<Element>, std::vector<std::vector<Element>>>> image;
        for (auto c : all) {
          for (auto& g : c.thin) g = G.conj(h, g);
          for (auto& band : c.band)
            for (auto& e : band) e = cm.act(h, e);
          ASSERT_TRUE(is_coloring(ex.diagram, cm, c)) << ex.name << " / " << name;
          image.insert({c.thin, c.band});
        }
        EXPECT_EQ(image, original) << ex.name << " / " << name;
      }
    }
  }
}

TEST(Coloring, CyclicPermutationOfMaximalTerms) {
  for (const auto& ex : corpus()) {
    for (std::size_t m = 0; m < ex.diagram.maximal.size(); ++m) {
      for (std::size_t shift = 1; shift < ex.diagram.maximal[m].terms.size(); ++shift) {
        auto d = ex.diagram;
        auto& terms = d.maximal[m].terms;
        std::rotate(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(shift), terms.end());
        for (const auto& [name, cm] : testdata::coefficients())
          EXPECT_EQ(count_colorings(d, cm), count_colorings(ex.diagram, cm)) << ex.name << " / " << name;
      }
    }
  }
}

TEST(Coloring, CancellingPairOnBand) {
  for (const auto& ex : corpus()) {
    const auto& d = ex.diagram;
    for (std::size_t b = 0; b < d.bands.size(); ++b) {
      for (std::size_t at = 0; at < d.bands[b].arc_count; ++at) {
        for (int sign : {1, -1}) {
          const auto mutated = insert_cancelling_pair(d, b, at, (b + at) % d.arcs.size(), sign);
          ASSERT_NO_THROW(mutated.validate());
          for (const auto& [name, cm] : testdata::coefficients()) {
            EXPECT_EQ(count_colorings(mutated, cm), count_colorings(d, cm)) << ex.name << " / " << name;
            EXPECT_EQ(invariant(extract_presentation(mutated).presentation, cm), invariant_from_diagram(d, cm));
          }
        }
      }
    }
  }
}

TEST(Coloring, BandlessDiagram) {
  const auto d = parse_diagram("kwb v1\ncircles 1\narc X circle 0\n");
  for (const auto& [name, cm] : testdata::coefficients()) {
    EXPECT_EQ(count_colorings(d, cm), cm.base().order());
    EXPECT_EQ(invariant_from_diagram(d, cm), ExactRational(BigInt(cm.base().order()), BigInt(cm.principal().order())));
    EXPECT_TRUE(check_consistency(d, cm).ok());
  }
  const auto x = extract_presentation(d);
  EXPECT_TRUE(x.presentation.principal_generators.empty());
  EXPECT_EQ(x.presentation.rank_b1, 1u);
}

TEST(Coloring, JobsDoNotChangeCounts) {
  for (const auto& ex : corpus())
    for (const auto& [name, cm] : testdata::coefficients()) {
      const BigInt serial = count_colorings(ex.diagram, cm, {1});
      for (unsigned jobs : {0u, 3u, 4u, 16u}) EXPECT_EQ(count_colorings(ex.diagram, cm, {jobs}), serial);
    }
}

TEST(DualPath, DiagramMatchesExtractedAndCorpusPresentations) {
  for (const auto& ex : corpus()) {
    const auto extracted = extract_presentation(ex.diagram).presentation;
    for (const auto& [name, cm] : testdata::coefficients()) {
      const auto diagram = invariant_from_diagram(ex.diagram, cm);
      EXPECT_EQ(invariant(extracted, cm), diagram) << ex.name << " / " << name;
      EXPECT_EQ(invariant(ex.presentation, cm), diagram) << ex.name << " / " << name;
    }
  }
}

TEST(Extract, ShapeOfSpunTrefoil) {
  const auto d = load_example("spun_trefoil").diagram;
  const auto x = extract_presentation(d);
  const auto& p = x.presentation;
  ASSERT_EQ(p.principal_generators.size(), 2u);
  EXPECT_EQ(p.principal_generators[0].name, "e");
  EXPECT_EQ(p.principal_generators[1].name, "f");
  EXPECT_EQ(p.base_relations.size(), d.crossings.size());
  EXPECT_EQ(p.rank_b1, 2u);
  ASSERT_EQ(p.two_relations.size(), 2u);
  const auto& names = p.base_generators;
  const auto& r1 = p.two_relations[0].terms;
  ASSERT_EQ(r1.size(), 3u);
  EXPECT_EQ(format_word(r1[0].conjugator, names), "X^-1");
  EXPECT_EQ(format_word(r1[1].conjugator, names), "Y^-1 X^-1");
  EXPECT_EQ(format_word(r1[2].conjugator, names), "X^-1 Y^-1 X^-1");
  EXPECT_EQ(r1[1].exponent, -1);
}

TEST(Extract, SpunTrefoilBoundaryAfterSubstitution) {
  // In every S3 assignment satisfying the Wirtinger relators, ∂₀(e) evaluates
  // to A⁻¹X with A = X Y X Y X⁻¹ Y⁻¹ X⁻¹, and ∂₀(f) to 1.
  const auto d = load_example("spun_trefoil").diagram;
  const auto p = extract_presentation(d).presentation;
  const auto S3 = make_symmetric(3);
  const GroupWord a({{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, -1}, {1, -1}, {0, -1}});
  const GroupWord expected = a.inverse() * GroupWord::generator(0);
  const std::size_t n = p.base_generators.size();
  std::vector<Element> phi(n, 0);
  int checked = 0;
  while (true) {
    bool ok = true;
    for (const auto& r : p.base_relations) ok = ok && evaluate_group_word(S3, phi, r) == S3.identity();
    if (ok) {
      const std::vector<Element> xy{phi[*d.find_arc("X")], phi[*d.find_arc("Y")]};
      EXPECT_EQ(evaluate_group_word(S3, phi, p.principal_generators[0].boundary), evaluate_group_word(S3, xy, expected));
      EXPECT_EQ(evaluate_group_word(S3, phi, p.principal_generators[1].boundary), S3.identity());
      ++checked;
    }
    std::size_t i = 0;
    while (i < n && ++phi[i] == S3.order()) phi[i++] = 0;
    if (i == n) break;
  }
  EXPECT_GT(checked, 0);
}

TEST(Extract, TrivialSpheres) {
  const auto k1 = extract_presentation(load_example("trivial_sphere_K1").diagram).presentation;
  ASSERT_EQ(k1.principal_generators.size(), 1u);
  EXPECT_EQ(format_word(k1.principal_generators[0].boundary, k1.base_generators), "X X^-1");
  ASSERT_EQ(k1.two_relations.size(), 1u);
  ASSERT_EQ(k1.two_relations[0].terms.size(), 1u);
  EXPECT_EQ(format_word(k1.two_relations[0].terms[0].conjugator, k1.base_generators), "X^-1");

  const auto k3 = extract_presentation(load_example("trivial_sphere_K3").diagram).presentation;
  EXPECT_TRUE(k3.two_relations.empty());
  EXPECT_EQ(format_word(k3.principal_generators[0].boundary, k3.base_generators), "X^-1 Y");
}

TEST(Extract, UnderBandBecomesAction) {
  const auto x = extract_presentation(load_example("trivial_torus").diagram).presentation;
  // e.2 = f e f⁻¹ = ∂(f) ▷ e with ∂₀(f) = X⁻¹X, reduced to the identity.
  const auto& terms = x.two_relations.at(0).terms;
  ASSERT_EQ(terms.size(), 4u);
  EXPECT_TRUE(terms[2].conjugator.empty());
}

TEST(Extract, OutputRoundTrips) {
  for (const auto& ex : corpus()) {
    const auto p = extract_presentation(ex.diagram).presentation;
    EXPECT_EQ(parse_presentation(serialize(p)), p) << ex.name;
  }
}

TEST(Consistency, CorpusIsClean) {
  for (const auto& ex : corpus())
    for (const auto& [name, cm] : testdata::coefficients())
      EXPECT_TRUE(check_consistency(ex.diagram, cm).ok()) << ex.name << " / " << name;
}

TEST(Consistency, WrongLastEndIsReported) {
  auto d = load_example("spun_hopf").diagram;
  d.bands[0].last.pattern = 2;  // e: X Y⁻¹ pattern replaced by X⁻¹ Y
  const auto cm = builtin_coefficient("conj_S3");
  const auto report = check_consistency(d, cm);
  ASSERT_FALSE(report.ok());
  const auto& issue = report.issues.front();
  EXPECT_EQ(issue.kind, ConsistencyIssue::Kind::LastEnd);
  EXPECT_EQ(issue.index, 0u);
  const auto& G = cm.base();
  const auto& w = issue.witness;
  const auto& band = d.bands[0];
  EXPECT_EQ(cm.boundary(w.band[0].front()), band_end_pattern(G, band.first.pattern, w.thin[band.first.x], w.thin[band.first.y]));
  EXPECT_NE(cm.boundary(w.band[0].back()), band_end_pattern(G, band.last.pattern, w.thin[band.last.x], w.thin[band.last.y]));
}

TEST(Consistency, WrongSignOnBandIsReported) {
  auto d = load_example("spun_trefoil").diagram;
  d.bands[0].last = {4, d.bands[0].last.x, d.bands[0].last.y};
  EXPECT_FALSE(check_consistency(d, builtin_coefficient("s3_a3")).ok());
}

TEST(Consistency, MaximalWithNontrivialBoundaryIsReported) {
  const auto d = parse_diagram(
      "kwb v1\ncircles 2\narc X circle 0\narc Y circle 1\n"
      "band e arcs 1\nend e first case=2 x=X y=Y\nend e last case=2 x=X y=Y\n"
      "maximal m e.1:+1\n");
  const auto report = check_consistency(d, builtin_coefficient("conj_S3"));
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].kind, ConsistencyIssue::Kind::MaximalBoundary);
}
