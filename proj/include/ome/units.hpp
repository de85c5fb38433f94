#pragma once

#include <string>
#include <string_view>

namespace ome::units {

enum class Dimension { dimensionless, angular_rate, time, mass, length, temperature, other };

std::string_view dimension_name(Dimension d);

/// Parses "<number>[ ]<unit>" into SI base units. A bare number is taken as
/// SI. Frequencies in Hz are converted to angular rates (times 2 pi) when
/// the expected dimension is an angular rate. Throws ConfigError on a
/// malformed number, an unknown unit or a unit of the wrong dimension.
double parse_quantity(std::string_view text, Dimension expected);

/// Dimension of a physical parameter or constant, by config name.
Dimension dimension_of(std::string_view name);

}  // namespace ome::units
