#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossmod/algebra.hpp"
#include "crossmod/kwb.hpp"
#include "crossmod/presentation.hpp"

namespace crossmod {

class UnknownExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExampleInfo {
  std::string name;
  std::string description;
};

/// The checked-in surfaces, in catalog order. Each has `<name>.kwb` and
/// `<name>.cmp` under the corpus directory.
const std::vector<ExampleInfo>& list_examples();

/// Named coefficient crossed modules, built in code. The corpus also carries
/// each as `coefficients/<name>.xmod`.
const std::vector<ExampleInfo>& list_coefficients();

/// $CROSSMOD_CORPUS if set, else the source tree's corpus when it exists,
/// else the installed copy.
std::filesystem::path corpus_directory();

struct Example {
  std::string name;
  KwbDiagram diagram;
  CrossedModulePresentation presentation;
};

/// Throws UnknownExample for a name outside the catalog; parse errors from
/// the files propagate.
Example load_example(std::string_view name, const std::filesystem::path& dir = corpus_directory());

/// Built-in coefficient by name; throws UnknownExample.
FiniteCrossedModule builtin_coefficient(std::string_view name);

/// (Z₂, Z₃, trivial ∂, Z₂ acting on Z₃ by sign).
FiniteCrossedModule coefficient_A();

std::string read_text_file(const std::filesystem::path& path);

}  // namespace crossmod
