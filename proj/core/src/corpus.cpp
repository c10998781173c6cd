#include "crossmod/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef CROSSMOD_CORPUS_BUILD_DIR
#define CROSSMOD_CORPUS_BUILD_DIR ""
#endif
#ifndef CROSSMOD_CORPUS_INSTALL_DIR
#define CROSSMOD_CORPUS_INSTALL_DIR ""
#endif

namespace crossmod {

namespace {

bool in_catalog(const std::vector<ExampleInfo>& catalog, std::string_view name) {
  return std::any_of(catalog.begin(), catalog.end(), [&](const ExampleInfo& e) { return e.name == name; });
}

std::string names_of(const std::vector<ExampleInfo>& catalog) {
  std::string out;
  for (const auto& e : catalog) out += (out.empty() ? "" : ", ") + e.name;
  return out;
}

/// Z₂ (or any group of order 2) acting on an abelian group by inversion.
FiniteCrossedModule sign_action(FiniteGroup E) {
  FiniteGroup G = make_cyclic(2);
  std::vector<Element> action(2 * E.order());
  for (Element e = 0; e < E.order(); ++e) {
    action[e] = e;
    action[E.order() + e] = E.inv(e);
  }
  return make_trivial_boundary(std::move(G), std::move(E), std::move(action));
}

/// A₃ ⊂ S₃ with the conjugation action.
FiniteCrossedModule alternating_in_symmetric() {
  FiniteGroup S3 = make_symmetric(3);
  const Element c = *S3.find("[231]");
  const std::vector<Element> image{S3.identity(), c, S3.mul(c, c)};
  std::vector<Element> action(S3.order() * 3);
  for (Element g = 0; g < S3.order(); ++g)
    for (Element e = 0; e < 3; ++e) {
      const Element conj = S3.conj(g, image[e]);
      action[g * 3 + e] = static_cast<Element>(std::find(image.begin(), image.end(), conj) - image.begin());
    }
  return make_crossed_module(std::move(S3), make_cyclic(3), image, std::move(action));
}

}  // namespace

const std::vector<ExampleInfo>& list_examples() {
  static const std::vector<ExampleInfo> catalog{
      {"trivial_sphere_K1", "unknotted sphere, one band passing under its own circle"},
      {"trivial_sphere_K2", "unknotted sphere, one band on a kinked circle"},
      {"trivial_sphere_K3", "unknotted sphere, one band joining two circles"},
      {"spun_trefoil", "spun trefoil knot"},
      {"spun_hopf", "spun Hopf link, a pair of tori"},
      {"sigma_prime", "torus and sphere with the spun Hopf link's fundamental group"},
      {"trivial_torus", "unknotted torus"},
      {"trivial_torus_pair", "two split unknotted tori"},
  };
  return catalog;
}

const std::vector<ExampleInfo>& list_coefficients() {
  static const std::vector<ExampleInfo> catalog{
      {"A", "(Z2, Z3, trivial boundary, sign action)"},
      {"conj_S3", "(S3, S3, identity, conjugation)"},
      {"z2_z4_sign", "(Z2, Z4, trivial boundary, sign action)"},
      {"trivial", "trivial crossed module"},
      {"z2_z4_mod2", "(Z2, Z4, reduction mod 2, trivial action)"},
      {"s3_a3", "(S3, A3, inclusion, conjugation)"},
  };
  return catalog;
}

std::filesystem::path corpus_directory() {
  if (const char* env = std::getenv("CROSSMOD_CORPUS"); env && *env) return env;
  const std::filesystem::path build = CROSSMOD_CORPUS_BUILD_DIR;
  std::error_code ec;
  if (!build.empty() && std::filesystem::is_directory(build, ec)) return build;
  return CROSSMOD_CORPUS_INSTALL_DIR;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Example load_example(std::string_view name, const std::filesystem::path& dir) {
  if (!in_catalog(list_examples(), name))
    throw UnknownExample("unknown example '" + std::string(name) + "'; known: " + names_of(list_examples()));
  auto load = [&](const char* ext, auto parse) {
    const auto path = dir / (std::string(name) + ext);
    try {
      return parse(read_text_file(path));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), path.string() + ": " + e.detail());
    }
  };
  return {std::string(name), load(".kwb", [](const std::string& t) { return parse_diagram(t); }),
          load(".cmp", [](const std::string& t) { return parse_presentation(t); })};
}

FiniteCrossedModule coefficient_A() { return sign_action(make_cyclic(3)); }

FiniteCrossedModule builtin_coefficient(std::string_view name) {
  if (name == "A") return coefficient_A();
  if (name == "conj_S3") return make_conjugation(make_symmetric(3));
  if (name == "z2_z4_sign") return sign_action(make_cyclic(4));
  if (name == "trivial") return make_trivial_boundary(make_cyclic(1), make_cyclic(1), {0});
  if (name == "z2_z4_mod2") {
    std::vector<Element> boundary{0, 1, 0, 1};
    std::vector<Element> action{0, 1, 2, 3, 0, 1, 2, 3};
    return make_crossed_module(make_cyclic(2), make_cyclic(4), std::move(boundary), std::move(action));
  }
  if (name == "s3_a3") return alternating_in_symmetric();
  throw UnknownExample("unknown coefficient '" + std::string(name) + "'; known: " + names_of(list_coefficients()));
}

}  // namespace crossmod
