#pragma once

#include <json.hpp>

#include <cstdint>

namespace itphi::selftest {

struct Result {
  nlohmann::json report;
  bool ok = true;
};

/// Small seeded corpus run: phi against the division oracle, stable
/// isomorphism against projective padding, decomposition reassembly, and the
/// fixture phi-dimensions. Entries are ordered by algebra digest.
Result run(std::uint64_t seed);

}  // namespace itphi::selftest
