#pragma once

#include <string>
#include <vector>

namespace fracvar {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Self-contained property suites over randomized inputs with fixed seeds:
//   ops     - closed-form operator identities, inversions, linearity,
//             semigroup, order-one reduction, grid agreement, quadrature
//             exactness
//   lemma   - the fundamental-lemma pairing in both directions
//   byparts - fractional integration by parts on constructed pairs
//   all     - everything above
// Throws DomainError for an unknown suite name.
std::vector<PropertyResult> run_suite(const std::string& suite);

}  // namespace fracvar
