#pragma once

// Named presets exercised by the verification suites and the CLI.

#include <vector>

#include "cusplink/monodromy.hpp"

namespace cusplink {

struct MoriPreset {
  long m;
  std::vector<long> k;
};

const std::vector<Triple>& catalog_triples();
const std::vector<BCycle>& catalog_cycles();
const std::vector<MoriPreset>& catalog_mori();

}  // namespace cusplink
