#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>

#include "crossmod/corpus.hpp"
#include "crossmod/crossed_module_io.hpp"
#include "crossmod/errors.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

using namespace crossmod;

namespace {

ExactRational ratio(std::size_t num, std::size_t den) { return ExactRational(BigInt(num), BigInt(den)); }

/// ((#G)(#ker ∂)² / #E)²
ExactRational torus_pair_value(const FiniteCrossedModule& cm) {
  const auto one = ratio(cm.base().order() * cm.kernel_size() * cm.kernel_size(), cm.principal().order());
  return one * one;
}

std::vector<Element> to_vector(std::span<const Element> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Catalog, ListsEveryExample) {
  const auto& examples = list_examples();
  ASSERT_GE(examples.size(), 8u);
  for (const auto& info : examples) {
    EXPECT_FALSE(info.description.empty()) << info.name;
    EXPECT_TRUE(std::filesystem::exists(corpus_directory() / (info.name + ".kwb"))) << info.name;
    EXPECT_TRUE(std::filesystem::exists(corpus_directory() / (info.name + ".cmp"))) << info.name;
  }
}

TEST(Catalog, LoadsEveryExample) {
  for (const auto& info : list_examples()) {
    const auto ex = load_example(info.name);
    EXPECT_EQ(ex.name, info.name);
    EXPECT_NO_THROW(ex.diagram.validate());
    EXPECT_NO_THROW(ex.presentation.validate());
    EXPECT_EQ(ex.presentation.rank_b1, ex.diagram.circles) << info.name;
  }
}

TEST(Catalog, UnknownNamesThrow) {
  EXPECT_THROW(load_example("spun_figure_eight"), UnknownExample);
  EXPECT_THROW(builtin_coefficient("Z7"), UnknownExample);
}

TEST(Catalog, ParseErrorsNameTheFile) {
  const auto dir = std::filesystem::temp_directory_path() / "crossmod_corpus_broken";
  std::filesystem::create_directories(dir);
  for (const auto& entry : std::filesystem::directory_iterator(corpus_directory()))
    if (entry.is_regular_file()) std::filesystem::copy_file(entry.path(), dir / entry.path().filename(),
                                                            std::filesystem::copy_options::overwrite_existing);
  std::ofstream(dir / "spun_hopf.kwb") << "kwb v1\ncircles 1\narc X circle 3\n";
  try {
    load_example("spun_hopf", dir);
    ADD_FAILURE() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("spun_hopf.kwb"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

TEST(Catalog, EnvironmentOverridesCorpusDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "crossmod_corpus_env";
  ::setenv("CROSSMOD_CORPUS", dir.c_str(), 1);
  EXPECT_EQ(corpus_directory(), dir);
  ::unsetenv("CROSSMOD_CORPUS");
  EXPECT_NE(corpus_directory(), dir);
}

TEST(Coefficients, BuiltinsSatisfyAxioms) {
  for (const auto& [name, cm] : testdata::coefficients()) {
    EXPECT_TRUE(oracle::crossed_module_axioms(cm)) << name;
    EXPECT_TRUE(validate_crossed_module(cm).ok()) << name;
  }
}

TEST(Coefficients, ShippedFilesMatchBuiltins) {
  for (const auto& info : list_coefficients()) {
    const auto path = corpus_directory() / "coefficients" / (info.name + ".xmod");
    const auto parsed = parse_crossed_module(read_text_file(path));
    const auto builtin = builtin_coefficient(info.name);
    EXPECT_EQ(to_vector(parsed.base().product_table()), to_vector(builtin.base().product_table())) << info.name;
    EXPECT_EQ(to_vector(parsed.principal().product_table()), to_vector(builtin.principal().product_table())) << info.name;
    EXPECT_EQ(to_vector(parsed.boundary_table()), to_vector(builtin.boundary_table())) << info.name;
    EXPECT_EQ(to_vector(parsed.action_table()), to_vector(builtin.action_table())) << info.name;
  }
}

TEST(KnownValues, SpunTrefoil) {
  const auto ex = load_example("spun_trefoil");
  const auto A = coefficient_A();
  EXPECT_EQ(invariant_from_diagram(ex.diagram, A), ratio(4, 3));
  EXPECT_EQ(invariant(ex.presentation, A), ratio(4, 3));
}

TEST(KnownValues, TrivialSpheres) {
  for (const char* name : {"trivial_sphere_K1", "trivial_sphere_K2", "trivial_sphere_K3"}) {
    const auto ex = load_example(name);
    for (const auto& [cm_name, cm] : testdata::coefficients()) {
      const auto expected = ratio(cm.base().order(), cm.principal().order());
      EXPECT_EQ(invariant_from_diagram(ex.diagram, cm), expected) << name << " / " << cm_name;
      EXPECT_EQ(invariant(ex.presentation, cm), expected) << name << " / " << cm_name;
    }
  }
  EXPECT_EQ(invariant(load_example("trivial_sphere_K2").presentation, coefficient_A()), ratio(2, 3));
}

TEST(KnownValues, SpunHopfAndSigmaPrime) {
  const auto A = coefficient_A();
  const auto hopf = load_example("spun_hopf");
  const auto sigma = load_example("sigma_prime");
  EXPECT_EQ(invariant_from_diagram(hopf.diagram, A), ratio(18, 1));
  EXPECT_EQ(invariant(hopf.presentation, A), ratio(18, 1));
  EXPECT_EQ(invariant_from_diagram(sigma.diagram, A), ratio(24, 1));
  EXPECT_EQ(invariant(sigma.presentation, A), ratio(24, 1));
}

TEST(KnownValues, TrivialTorusPair) {
  const auto ex = load_example("trivial_torus_pair");
  const auto single = load_example("trivial_torus");
  for (const auto& [name, cm] : testdata::coefficients()) {
    const auto expected = torus_pair_value(cm);
    EXPECT_EQ(invariant_from_diagram(ex.diagram, cm), expected) << name;
    EXPECT_EQ(invariant(ex.presentation, cm), expected) << name;
    const auto one = invariant(single.presentation, cm);
    EXPECT_EQ(one * one, expected) << name;
  }
  EXPECT_EQ(torus_pair_value(coefficient_A()), ratio(36, 1));
}

TEST(Consistency, EveryDiagramAgainstEveryCoefficient) {
  for (const auto& info : list_examples()) {
    const auto ex = load_example(info.name);
    for (const auto& [name, cm] : testdata::coefficients()) {
      const auto report = check_consistency(ex.diagram, cm);
      EXPECT_TRUE(report.ok()) << info.name << " / " << name << ": "
                               << (report.ok() ? "" : report.issues.front().message);
    }
  }
}
