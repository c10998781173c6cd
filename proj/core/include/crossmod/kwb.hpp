#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossmod/algebra.hpp"
#include "crossmod/errors.hpp"
#include "crossmod/presentation.hpp"
#include "crossmod/rational.hpp"
#include "crossmod/word.hpp"

namespace crossmod {

// Signs and exponents are stored as +1 / -1 throughout. Indices are 0-based in
// memory; band arcs and event steps are 1-based only in the text format.

struct ThinArc {
  std::string name;
  std::size_t circle = 0;

  friend bool operator==(const ThinArc&, const ThinArc&) = default;
};

/// under_out = over^sign · under_in · over^-sign
struct ThinCrossing {
  std::size_t over = 0;
  std::size_t under_in = 0;
  std::size_t under_out = 0;
  int sign = 1;

  friend bool operator==(const ThinCrossing&, const ThinCrossing&) = default;
};

/// Where a band end meets the pre-knot. The adjacent band arc e satisfies
/// ∂(e) = pattern(X, Y) with X, Y the colors of arcs x, y:
/// case 1: Y⁻¹X, case 2: X⁻¹Y, case 3: YX⁻¹, case 4: XY⁻¹.
struct BandEnd {
  int pattern = 1;
  std::size_t x = 0;
  std::size_t y = 0;

  friend bool operator==(const BandEnd&, const BandEnd&) = default;
};

/// Transition from band arc `step` to `step + 1` (0-based).
/// UnderThin: out = over^sign ▷ in.
/// UnderBand: out = f^sign · in · f^-sign with f the color of the over band arc.
struct BandEvent {
  enum class Kind { UnderThin, UnderBand };

  Kind kind = Kind::UnderThin;
  std::size_t step = 0;
  std::size_t over_arc = 0;   // UnderThin
  std::size_t over_band = 0;  // UnderBand
  std::size_t over_band_arc = 0;
  int sign = 1;

  friend bool operator==(const BandEvent&, const BandEvent&) = default;
};

struct Band {
  std::string name;
  std::size_t arc_count = 1;
  BandEnd first;
  BandEnd last;
  /// Ordered by step; exactly one per transition.
  std::vector<BandEvent> events;

  friend bool operator==(const Band&, const Band&) = default;
};

struct MaximalTerm {
  std::size_t band = 0;
  std::size_t arc = 0;
  int exponent = 1;

  friend bool operator==(const MaximalTerm&, const MaximalTerm&) = default;
};

/// A post-knot circle: the left-to-right product of its terms must be 1.
struct MaximalCircle {
  std::string name;
  std::vector<MaximalTerm> terms;

  friend bool operator==(const MaximalCircle&, const MaximalCircle&) = default;
};

struct KwbDiagram {
  std::size_t circles = 0;
  std::vector<ThinArc> arcs;
  std::vector<ThinCrossing> crossings;
  std::vector<Band> bands;
  std::vector<MaximalCircle> maximal;

  std::optional<std::size_t> find_arc(std::string_view name) const;
  std::optional<std::size_t> find_band(std::string_view name) const;

  /// Throws DiagramError on dangling indices, event-chain gaps, crossings
  /// whose under arcs lie on different circles, duplicate names, or cyclic
  /// dependencies between band arcs.
  void validate() const;

  friend bool operator==(const KwbDiagram&, const KwbDiagram&) = default;
};

/// Validation failure; `band` is set when a single band is at fault.
class DiagramError : public ValidationError {
 public:
  explicit DiagramError(const std::string& message, std::optional<std::size_t> band = std::nullopt)
      : ValidationError(message), band_(band) {}

  std::optional<std::size_t> band() const noexcept { return band_; }

 private:
  std::optional<std::size_t> band_;
};

/// Reads `.kwb` text and validates it. Throws ParseError with line and column.
KwbDiagram parse_diagram(std::string_view text);

/// Canonical `.kwb` text; parse_diagram(serialize(d)) == d.
std::string serialize(const KwbDiagram& d);

/// Band-arc order in which every arc's inputs come before it. Arc 1 of each
/// band has no inputs. Throws DiagramError on a cycle.
std::vector<std::pair<std::size_t, std::size_t>> band_arc_order(const KwbDiagram& d);

struct Coloring {
  std::vector<Element> thin;
  std::vector<std::vector<Element>> band;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// pattern(case; X, Y) evaluated in `group`.
Element band_end_pattern(const FiniteGroup& group, int pattern, Element x, Element y);

/// Checks every coloring constraint, both band ends included.
bool is_coloring(const KwbDiagram& d, const FiniteCrossedModule& cm, const Coloring& c);

/// Number of colorings. Thin arcs are searched one circle at a time with
/// Wirtinger propagation; band arcs other than arc 1 are derived from events.
BigInt count_colorings(const KwbDiagram& d, const FiniteCrossedModule& cm, CountOptions options = {});

/// count_colorings / (#E)^circles.
ExactRational invariant_from_diagram(const KwbDiagram& d, const FiniteCrossedModule& cm, CountOptions options = {});

/// Visits every coloring in search order. Single-threaded.
void for_each_coloring(const KwbDiagram& d, const FiniteCrossedModule& cm,
                       const std::function<void(const Coloring&)>& visit);

struct ConsistencyIssue {
  enum class Kind {
    LastEnd,          // `index` is a band
    MaximalBoundary,  // `index` is a maximal circle whose product has nontrivial ∂
  };

  Kind kind;
  std::size_t index;
  Coloring witness;
  std::string message;
};

struct ConsistencyReport {
  /// At most one issue per band and per maximal circle.
  std::vector<ConsistencyIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
};

/// Searches colorings that satisfy the Wirtinger relations, the first-end
/// boundaries, and the band events, ignoring last ends and maximal circles.
/// Reports any that break a last-end boundary, and any maximal circle whose
/// product is not in ker ∂.
ConsistencyReport check_consistency(const KwbDiagram& d, const FiniteCrossedModule& cm);

/// ∂ of the last band arc as derived from arc 1, against the last-end pattern,
/// both freely reduced.
/// On a well-formed diagram the two agree in every coloring.
struct LastEndAnnotation {
  std::size_t band = 0;
  GroupWord derived;
  GroupWord expected;
};

struct ExtractedPresentation {
  CrossedModulePresentation presentation;
  std::vector<LastEndAnnotation> annotations;
};

/// Base generators are the thin arcs with one Wirtinger relator per crossing;
/// each band contributes one principal generator (its arc 1) and each maximal
/// circle one 2-relation.
ExtractedPresentation extract_presentation(const KwbDiagram& d);

}  // namespace crossmod
