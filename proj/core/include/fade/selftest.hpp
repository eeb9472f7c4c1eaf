#ifndef FADE_SELFTEST_HPP
#define FADE_SELFTEST_HPP

#include <iosfwd>

namespace fade {

/// Runs the built-in property suites (gamma accuracy, L1 weight
/// identities, PI moment identities and exactness, Bernstein basis
/// identities, assembly cross-check, manufactured-forcing residuals)
/// and writes one [ok]/[FAIL] line per suite.  Returns true iff all
/// suites pass.
bool run_selftest(std::ostream& out);

} // namespace fade

#endif
