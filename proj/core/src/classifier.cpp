#include "holant/classifier.hpp"

#include "holant/error.hpp"

namespace holant {

namespace {

void require_ternary(const Vec& f) {
  require(f.size() == 4, ErrorKind::MalformedInput, "expected a ternary signature [f0,f1,f2,f3]");
}

const AffineFamily kFamilies[] = {AffineFamily::EvenPlus,   AffineFamily::EvenMinus,   AffineFamily::OddPlus,
                                  AffineFamily::OddMinus,   AffineFamily::Alternating, AffineFamily::HalfSign};

Scalar affine_scale(const Vec& f, AffineFamily family) {
  return affine_pattern(family)[0].is_zero() ? f[1] : f[0];
}

}  // namespace

bool is_case1(const Vec& f) {
  require_ternary(f);
  // All 2x2 minors of [[f0,f1,f2],[f1,f2,f3]] vanish.
  return f[0] * f[2] == f[1] * f[1] && f[1] * f[3] == f[2] * f[2] && f[0] * f[3] == f[1] * f[2];
}

bool is_case2(const Vec& f) {
  require_ternary(f);
  return f[1].is_zero() && f[2].is_zero();
}

std::optional<AffineFamily> affine_family_of(const Vec& f) {
  require_ternary(f);
  for (AffineFamily family : kFamilies) {
    Scalar a = affine_scale(f, family);
    if (a.is_zero()) continue;
    Vec p = affine_pattern(family);
    bool match = true;
    for (int k = 0; k < 4; ++k) match &= f[k] == a * p[k];
    if (match) return family;
  }
  return std::nullopt;
}

bool is_case4(const Vec& f) {
  require_ternary(f);
  return (f[0] == f[3] && f[1] == f[2]) || (f[0] == -f[3] && f[1] == -f[2]);
}

bool is_case5(const Vec& f) {
  require_ternary(f);
  return f[2] == -f[0] - 2 * f[1] && f[3] == 2 * f[0] + 3 * f[1];
}

CaseParams extract_params(const Vec& f, int tractable_case) {
  require_ternary(f);
  CaseParams p;
  p.tractable_case = tractable_case;
  switch (tractable_case) {
    case 1:
      if (!f[0].is_zero()) {
        p.scale = f[0];
        p.u = {1, f[1] / f[0]};
      } else if (!f[3].is_zero()) {
        p.scale = f[3];
        p.u = {0, 1};
      } else {
        p.scale = 0;
        p.u = {1, 0};
      }
      break;
    case 2:
      p.a = f[0];
      p.b = f[3];
      break;
    case 3: {
      auto family = affine_family_of(f);
      if (!family) fail(ErrorKind::InconsistentCase, signature_str(f) + " is not affine");
      p.family = *family;
      p.a = affine_scale(f, *family);
      break;
    }
    case 4:
      p.a = f[0];
      p.b = f[1];
      p.sign = (f[0] == f[3] && f[1] == f[2]) ? 1 : -1;
      break;
    case 5:
      p.a = (f[0] + f[3]) / 6;
      p.b = (f[0] - f[3]) / 2;
      break;
    default:
      fail(ErrorKind::InconsistentCase, "no tractable case " + std::to_string(tractable_case));
  }
  require(rebuild(p) == f, ErrorKind::InconsistentCase,
          signature_str(f) + " is not in case " + std::to_string(tractable_case));
  return p;
}

Vec rebuild(const CaseParams& p) {
  switch (p.tractable_case) {
    case 1: {
      Vec f;
      for (int k = 0; k < 4; ++k) f.push_back(p.scale * p.u[0].pow(3 - k) * p.u[1].pow(k));
      return f;
    }
    case 2: return {p.a, 0, 0, p.b};
    case 3: {
      Vec f;
      for (const Scalar& x : affine_pattern(p.family)) f.push_back(p.a * x);
      return f;
    }
    case 4: return {p.a, p.b, p.sign * p.b, p.sign * p.a};
    case 5: return {3 * p.a + p.b, -p.a - p.b, -p.a + p.b, 3 * p.a - p.b};
  }
  fail(ErrorKind::InconsistentCase, "no tractable case " + std::to_string(p.tractable_case));
}

Verdict classify(const Vec& f) {
  require_ternary(f);
  Verdict v;
  v.f = f;
  const bool hits[5] = {is_case1(f), is_case2(f), affine_family_of(f).has_value(), is_case4(f), is_case5(f)};
  for (int c = 1; c <= 5; ++c)
    if (hits[c - 1]) {
      v.cases.push_back(c);
      v.all_params.push_back(extract_params(f, c));
    }
  v.planar_fp = !v.cases.empty();
  v.general_fp = hits[0] || hits[1] || hits[2];
  if (v.planar_fp) v.params = v.all_params.front();
  v.normalized = normalize_f0(f);
  if (!v.planar_fp) {
    v.g1 = works_report(gadget_G1(f));
    v.g2 = works_report(gadget_G2(f));
  }
  return v;
}

BinaryVerdict classify_binary(const Vec& g) {
  require(g.size() == 3, ErrorKind::MalformedInput, "expected a binary signature [b0,b1,b2]");
  if (g[1].is_zero()) return {true, "generalized-equality"};
  const Scalar a = g[0] / g[1], b = g[2] / g[1];
  if ((a * b).is_one()) return {true, "ab=1"};
  if (a == Scalar(1) && b == Scalar(-1)) return {true, "a=1,b=-1"};
  if (a == Scalar(-1) && b == Scalar(1)) return {true, "a=-1,b=1"};
  if (a == b) return {true, "a=b"};
  return {false, "hard"};
}

SolveResult solve(const SignatureGrid& grid, std::optional<int> force_case) {
  BipartiteInstance in = analyse_instance(grid);
  if (in.left.empty()) return {eval(grid), 0, {}};
  Verdict v = classify(in.f);
  if (!v.planar_fp) fail(ErrorKind::HardSignature, signature_str(in.f) + " is #P-hard on planar grids");
  SolveResult r;
  r.tractable_case = force_case.value_or(v.primary());
  r.params = extract_params(in.f, r.tractable_case);
  const CaseParams& p = r.params;
  switch (r.tractable_case) {
    case 1: r.value = solve_degenerate(grid, p.u, p.scale); break;
    case 2: r.value = solve_geneq(grid, p.a, p.b); break;
    case 3: r.value = solve_affine(grid, p.family); break;
    case 4: r.value = solve_matchgate(grid, p.a, p.b, p.sign); break;
    case 5: r.value = solve_case5(grid, p.a, p.b); break;
  }
  return r;
}

}  // namespace holant
