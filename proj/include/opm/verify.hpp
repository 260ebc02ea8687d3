#pragma once

#include "opm/classify.hpp"
#include "opm/decompose.hpp"
#include "opm/families.hpp"
#include "opm/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace opm {

struct VerifyEntry {
  std::string id;      // stable machine name of the claim
  std::string anchor;  // one-line statement of the claim being checked
  std::string method;  // exact-exhaustive | exact-sampled | approx-sampled
  long samples = 0;
  bool pass = true;
  std::vector<std::string> notes;  // witnesses / counterexamples on failure
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int requested_samples = 0;
  std::vector<VerifyEntry> entries;

  bool all_pass() const;
};

// Product table of the deformation-family chains for one letter: products,
// transposes and the identity land in the asserted family sets, on exact
// rational conic samples.
VerifyEntry verify_group_chain(FamilyLetter letter, int n_samples, std::uint64_t seed);

// The exact 1/5-entry member times the sqrt(2)/3-entry member: orthogonal
// but not permutative, matching the printed product entrywise.
VerifyEntry verify_nonclosure_example();

// Members of the three prefixed index-3 families are polynomials in one
// 4-cycle permutation matrix; samples reconstruct exactly and commute.
VerifyEntry verify_commutative_remark(int n_samples, std::uint64_t seed);

// Every verification in fixed order; deterministic for a fixed seed.
SuiteReport run_all(std::uint64_t seed, int n_samples = 200);

Json suite_report_to_json(const SuiteReport& report);
std::string suite_report_table(const SuiteReport& report);

// Deterministic pool of exact orthogonal span members used by the
// classification gate checks: family members, permuted direct sums,
// conjugated-block members and permuted copies of the irreducible closing
// example, in a fixed mix.
std::vector<Mat> gate_sample_pool(int count, std::uint64_t seed);

// The closing example: orthogonal, in the span, neither permutative nor
// reducible by any permutation pair or conjugated permutation pair.
Mat closing_example();

}  // namespace opm
