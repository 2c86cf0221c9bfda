#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cutt {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double seconds = 0;
    std::string firstFailure;
    std::string detail;

    bool passed = false;
};

// interval equality against exhaustive evaluation in the 4-element de Morgan algebra
SuiteResult dm4Suite(uint64_t seed, int pairs = 1000);
// face lattice against 3-state assignments, and the forall adjunction
SuiteResult faceSuite();
// extension, cap and end contracts of compose and fill on random problems
SuiteResult compositionSuite(uint64_t seed, int problems = 500);
// compose commutes with direction substitutions
SuiteResult uniformitySuite(uint64_t seed, int problems = 200);
// idJ on refl computes to the base
SuiteResult idJSuite(uint64_t seed, int instances = 50);
// strict restriction of Glue and unglue of glue
SuiteResult glueSuite(uint64_t seed, int instances = 100);
// composition in Glue agrees with the partial type where the face holds along the line
SuiteResult adaptationSuite(uint64_t seed, int instances = 50);
// prelude checks and coercion along glued lines
SuiteResult univalenceSuite();

// runs every suite, printing one line each
std::vector<SuiteResult> runSelftest(uint64_t seed, std::ostream& out);
std::string formatResult(const SuiteResult& r);

}  // namespace cutt
