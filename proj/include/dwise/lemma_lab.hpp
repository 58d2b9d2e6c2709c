#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dwise/family.hpp"
#include "dwise/search.hpp"

namespace dwise {

enum class CheckStatus { Pass, Counterexample, BoundaryReport, HypothesesUnmet, Inconclusive };
enum class Severity { Assert, Report };

std::string_view to_string(CheckStatus s);
std::string_view to_string(Severity s);

/// Sets (1-based) that reproduce a verdict, with an optional measured value
/// such as a core degree or an intersection size.
struct Witness {
  std::vector<std::vector<int>> sets;
  std::optional<long long> value;
};

struct CheckReport {
  std::string check_id;
  CheckStatus status = CheckStatus::Pass;
  Severity severity = Severity::Assert;
  std::string message;
  std::vector<Witness> witnesses;
  std::optional<SearchReport> search;

  /// Counterexample at assert severity.
  bool failed() const { return status == CheckStatus::Counterexample && severity == Severity::Assert; }
  std::string to_json() const;
};

/// Checks, in order: m-wise intersection bound (2 <= m <= d), core degree of
/// (d-1)-sets below k, every large-core d-set meets every member in d-1
/// points, and S_d is (d-1)-intersecting. The last three run at report
/// severity when d = 2. Throws PreconditionError unless F is non-trivial
/// and d-wise intersecting.
std::vector<CheckReport> run_lemma_suite(const Family& f, int d, int tau, unsigned threads = 1);

/// d > k: no family; d = k: unique class K_{k+1}; d < k: maximum against
/// max(|H|, |A|) plus the stability clause. Budget overrun is inconclusive.
CheckReport verify_small_cases(int n, int k, int d, const SearchOptions& budget = {});

/// Star or complete shape of S_d(F) (threshold k) and the size bound or
/// embedding that shape forces.
CheckReport structure_bound_check(const Family& f, int d);

/// Extremal classes against {H, A}; always report severity.
/// Requires n >= ceil(kd / (d - 1)) and d < k.
CheckReport conjecture_probe(int n, int k, int d, const SearchOptions& budget = {});

/// 0 pass, 2 assert-severity counterexample, 3 inconclusive.
int exit_code(const std::vector<CheckReport>& reports);

}  // namespace dwise
