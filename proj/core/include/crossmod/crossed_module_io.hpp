#pragma once

#include <string>
#include <string_view>

#include "crossmod/algebra.hpp"

namespace crossmod {

/// Reads the `crossed_module v1` text format:
///
///     crossed_module v1
///     group base cyclic 2
///     group principal cyclic 3
///     boundary 0 0 0
///     action
///     0 1 2
///     0 2 1
///
/// Group specs are `cyclic <n>`, `product <spec> <spec>` or
/// `table <n>` followed by n*n row-major entries. `boundary` lists ∂(e) for
/// each principal element; `action` lists g▷e row-major over G x E. Numbers
/// may wrap across lines. The result is validated; axiom failures raise
/// CrossedModuleError, syntax errors ParseError.
FiniteCrossedModule parse_crossed_module(std::string_view text);

/// Writes both groups as explicit tables so the output is self-contained.
std::string serialize_crossed_module(const FiniteCrossedModule& cm);

}  // namespace crossmod
