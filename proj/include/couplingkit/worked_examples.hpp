#pragma once

#include <string>
#include <vector>

#include "couplingkit/distribution.hpp"

namespace couplingkit::fixtures {

// One-dimensional worked example: P_X = (0.1, 0.2, 0.3, 0.4), P_Y uniform.
Pmf single_px();
Pmf single_py();
// Hand-built coupling that is neither independent nor maximal.
RatMatrix single_alternate();

// Two-dimensional worked example on {1,2,3}^2.
Pmf2 pairs_px();
Pmf2 pairs_py();

struct Fixture {
  std::string file_name;
  std::string content;  // canonical JSON text
};

/// Regenerates the six golden tables from first principles, in a fixed order:
/// single_independent/maximal/alternate, then pairs_maximal/constrained/independent.
std::vector<Fixture> generate();

struct CellDiff {
  std::string path;  // JSON pointer, e.g. "/matrix/3/0"
  std::string expected;
  std::string actual;
};

/// Structural comparison of two fixture texts. Empty iff byte-identical.
std::vector<CellDiff> diff(const std::string& expected, const std::string& actual);

}  // namespace couplingkit::fixtures
