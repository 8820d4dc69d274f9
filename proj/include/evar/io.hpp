#pragma once

#include "evar/distribution.hpp"

#include <iosfwd>
#include <string>

namespace evar {

enum class InputFormat { samples, weighted };

// Reads a distribution from CSV text: one numeric value per line (samples) or
// "value,weight" rows (weighted). Lines starting with '#' and blank lines are
// skipped. Malformed rows raise std::runtime_error carrying the 1-based line
// number.
DiscreteDistribution read_distribution_csv(std::istream& in, InputFormat format);
DiscreteDistribution read_distribution_file(const std::string& path, InputFormat format);

// Shortest decimal string that parses back to exactly the same double.
// Deterministic, so byte-stable output for fixed inputs.
std::string format_double(double x);

}  // namespace evar
