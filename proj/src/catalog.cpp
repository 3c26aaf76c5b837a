#include "cusplink/catalog.hpp"

namespace cusplink {

const std::vector<Triple>& catalog_triples() {
  static const std::vector<Triple> triples = {
      Triple::make(2, 3, 7), Triple::make(2, 3, 8),  Triple::make(2, 4, 5),
      Triple::make(3, 3, 4), Triple::make(4, 4, 4),  Triple::make(2, 3, 100)};
  return triples;
}

const std::vector<BCycle>& catalog_cycles() {
  static const std::vector<BCycle> cycles = {BCycle({3}), BCycle({3, 4}), BCycle({4, 2, 5}),
                                             BCycle({3, 2, 2, 2})};
  return cycles;
}

const std::vector<MoriPreset>& catalog_mori() {
  static const std::vector<MoriPreset> presets = {
      {1, {1}}, {2, {1, 2}}, {3, {1, 2, 3}}};
  return presets;
}

}  // namespace cusplink
