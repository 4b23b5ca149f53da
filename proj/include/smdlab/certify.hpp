#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smdlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, expectations, tolerances
};
using CheckList = std::vector<CheckResult>;

enum class CertifyKind { moments, korovkin, voronovskaya, gruss, quantitative, bounds };

CertifyKind parse_certify_kind(const std::string& s);
std::string to_string(CertifyKind k);

// Assertion suites with pinned tolerances; each CheckResult carries the
// measured numbers in its detail string.
CheckList certify_moments();
CheckList certify_korovkin();
CheckList certify_voronovskaya();
CheckList certify_gruss();
CheckList certify_quantitative();
CheckList certify_bounds();

CheckList certify_checks(CertifyKind k);

// Prints one [PASS]/[FAIL] line per check (details on failure or when
// verbose) plus a summary; returns true iff every check passed.
bool print_certify(CertifyKind k, bool verbose, std::ostream& os);

}  // namespace smdlab
