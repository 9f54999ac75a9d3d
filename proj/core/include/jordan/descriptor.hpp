#pragma once

#include <string>
#include <string_view>

#include "jordan/algebra.hpp"

namespace jordan {

/// Parses `matrix:<n> | spin:<k> | fn:<k> | sum:<desc>+<desc>[+<desc>...]`.
/// Summands fold to the left. Throws ParseError with the offending byte offset.
AlgebraPtr parse_algebra(std::string_view descriptor);

/// Descriptor that parses back to an algebra with the same structure tensor.
/// Custom algebras have no descriptor and raise UnsupportedAlgebra.
std::string to_descriptor(const Algebra& algebra);

}  // namespace jordan
