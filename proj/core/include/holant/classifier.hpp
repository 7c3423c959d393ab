#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holant/grid.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"
#include "holant/solvers.hpp"

namespace holant {

/// Parameters that put f into one tractable case's normal form.
///   1: f = scale·u^{⊗3}, u = (1,t) or (0,1)
///   2: f = [a,0,0,b]
///   3: f = a·pattern(family)
///   4: f = [a,b,sign·b,sign·a]
///   5: f = [3a+b, -a-b, -a+b, 3a-b]
struct CaseParams {
  int tractable_case = 0;
  Vec u;
  Scalar scale;
  Scalar a, b;
  int sign = 1;
  AffineFamily family = AffineFamily::EvenPlus;
};

struct Verdict {
  Vec f;
  std::vector<int> cases;   // every tractable case that matches, ascending
  bool planar_fp = false;   // some case matches
  bool general_fp = false;  // case 1, 2 or 3 matches
  std::optional<CaseParams> params;  // of the lowest matching case
  std::vector<CaseParams> all_params;
  // Normalization trace: f = scale·g with g0 = 1, after reversing when flipped.
  std::optional<Normalized> normalized;
  // Hard side only; diagnostics, not a proof.
  std::optional<WorksReport> g1, g2;
  int primary() const { return cases.empty() ? 0 : cases.front(); }
};

bool is_case1(const Vec& f);
bool is_case2(const Vec& f);
std::optional<AffineFamily> affine_family_of(const Vec& f);
bool is_case4(const Vec& f);
bool is_case5(const Vec& f);

/// Dichotomy for a ternary symmetric signature. Never throws on a four-entry input.
Verdict classify(const Vec& f);

struct BinaryVerdict {
  bool tractable = false;
  std::string reason;  // "generalized-equality", "ab=1", "a=1,b=-1", "a=-1,b=1", "a=b" or "hard"
};
BinaryVerdict classify_binary(const Vec& g);

/// Throws InconsistentCase when f is not in `tractable_case`.
CaseParams extract_params(const Vec& f, int tractable_case);
Vec rebuild(const CaseParams& p);

struct SolveResult {
  Scalar value;
  int tractable_case = 0;
  CaseParams params;
};
/// Classifies the grid's left signature and runs the solver of the lowest
/// matching case, or `force_case` when given. Throws HardSignature on hard f and
/// InconsistentCase when the forced case does not apply.
SolveResult solve(const SignatureGrid& grid, std::optional<int> force_case = std::nullopt);

}  // namespace holant
