/*
 * Copyright 2026 The mvhe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mvhe/scheme.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

constexpr std::size_t kTailAttemptsPerPointSet = 16;

std::string Str(std::size_t v) { return std::to_string(v); }

// Fills the structural dimensions. Returns false (with a violation recorded)
// when they cannot be computed.
bool ComputeDims(const SchemeParams& params, ParamReport& report) {
  auto fail = [&](std::string field, std::string message) {
    report.violations.push_back({std::move(field), std::move(message)});
    return false;
  };
  if (params.ell < 1) return fail("ell", "must be >= 1");
  if (params.r < 1) return fail("r", "must be >= 1");
  if (params.ideal.ell() != params.ell) {
    return fail("ideal", "generators use " + std::to_string(params.ideal.ell()) +
                             " variables, ell = " + std::to_string(params.ell));
  }
  if (params.ideal.context().modulus() != params.q) {
    return fail("ideal", "generators live in a different field");
  }
  if (params.ideal.MaxDegree() > params.r) {
    return fail("ideal", "generator degree " +
                             std::to_string(params.ideal.MaxDegree()) +
                             " exceeds r = " + std::to_string(params.r));
  }
  SchemeDims& d = report.dims;
  d.monomials_r = MonomialCount(params.ell, params.r);
  d.monomials_2r = MonomialCount(params.ell, 2 * params.r);
  d.dim_r = IdealTruncatedBasis(params.ideal, params.r).rows();
  d.dim_2r = IdealTruncatedBasis(params.ideal, 2 * params.r).rows();
  d.orth_dim =
      params.mode == SchemeMode::kMultDepth1 ? d.dim_2r : d.dim_r;
  d.tail_len = params.n > d.orth_dim ? params.n - d.orth_dim : 0;
  if (params.mode == SchemeMode::kMultDepth1 && params.literal_mult_noise) {
    d.noise_support = params.n > d.dim_r ? params.n - d.dim_r : 0;
  } else {
    d.noise_support = d.tail_len;
  }
  return true;
}

std::vector<FieldVector> SamplePoints(const SchemeParams& params,
                                      const FieldContext& ctx,
                                      RandomStream& stream) {
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<FieldVector> points;
  points.reserve(params.n);
  while (points.size() < params.n) {
    FieldVector z = SampleUniformVector(stream, ctx, params.ell);
    std::vector<std::uint64_t> key(z.values().begin(), z.values().end());
    if (seen.insert(key).second) points.push_back(std::move(z));
  }
  return points;
}

FieldVector SampleTernaryTail(const FieldContext& ctx, std::size_t len,
                              RandomStream& stream) {
  FieldVector tail(ctx, len);
  do {
    for (std::size_t i = 0; i < len; ++i) {
      tail.Set(i, static_cast<std::int64_t>(stream.UniformBelow(3)) - 1);
    }
  } while (tail.IsZero());
  return tail;
}

double TailNorm(const FieldVector& tail) {
  double acc = 0.0;
  for (std::int64_t v : tail.Balanced()) acc += static_cast<double>(v) * v;
  return std::sqrt(acc);
}

// Smallest p with sigma * p > threshold and headroom * sigma * p <= q/2.
std::optional<std::uint64_t> ChooseScale(std::int64_t sigma, double threshold,
                                         const SchemeParams& params) {
  const std::uint64_t half_q = params.q / 2;
  const std::uint64_t cap = half_q / static_cast<std::uint64_t>(params.headroom);
  double p_real = std::floor(threshold / static_cast<double>(sigma)) + 1.0;
  if (p_real < 1.0) p_real = 1.0;
  if (p_real >= static_cast<double>(params.q)) return std::nullopt;
  auto p = static_cast<std::uint64_t>(p_real);
  // Guard against floor() landing exactly on the threshold.
  while (static_cast<double>(sigma) * static_cast<double>(p) <= threshold) ++p;
  if (static_cast<std::uint64_t>(sigma) * p > cap || p >= params.q) {
    return std::nullopt;
  }
  return p;
}

}  // namespace

std::string ModeName(SchemeMode mode) {
  return mode == SchemeMode::kMultDepth1 ? "mult_depth_1" : "additive_only";
}

SchemeMode ParseMode(std::string_view name) {
  if (name == "additive_only") return SchemeMode::kAdditiveOnly;
  if (name == "mult_depth_1") return SchemeMode::kMultDepth1;
  throw ArgumentError("unknown mode '" + std::string(name) +
                      "' (expected additive_only or mult_depth_1)");
}

Decimal Decimal::Parse(std::string_view text) {
  bool seen_digit = false;
  bool seen_point = false;
  bool digit_after_point = false;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      seen_digit = true;
      if (seen_point) digit_after_point = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      seen_digit = false;
      break;
    }
  }
  if (!seen_digit || (seen_point && !digit_after_point) || text.front() == '.') {
    throw ArgumentError("'" + std::string(text) +
                        "' is not a plain non-negative decimal");
  }
  Decimal d;
  d.text_ = std::string(text);
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), d.value_);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ArgumentError("'" + std::string(text) + "' does not parse");
  }
  return d;
}

SchemeParams ToyParams(SchemeMode mode, std::string_view alpha) {
  const std::uint64_t q = 10007;
  FieldContext ctx(q);
  IndexPtr index = MonomialIndex::Create(2, 2);
  Polynomial circle = Polynomial::FromTerms(
      index, ctx, {{1, {2, 0}}, {1, {0, 2}}, {q - 1, {0, 0}}});
  Polynomial hyperbola =
      Polynomial::FromTerms(index, ctx, {{1, {1, 1}}, {q - 3, {0, 0}}});
  IdealSpec ideal({circle, hyperbola});
  const std::size_t d = mode == SchemeMode::kMultDepth1
                            ? IdealTruncatedBasis(ideal, 4).rows()
                            : IdealTruncatedBasis(ideal, 2).rows();
  return SchemeParams{
      .lambda = 16,
      .q = q,
      .ell = 2,
      .r = 2,
      .n = d + (mode == SchemeMode::kMultDepth1 ? 4 : 3),
      .alpha = Decimal::Parse(alpha),
      .epsilon = Decimal::Parse("0.01"),
      .mode = mode,
      .headroom = 2,
      .ideal = std::move(ideal),
  };
}

double Eta(double s2_norm, int headroom, double epsilon) {
  return 2.0 * s2_norm * headroom / std::sqrt(epsilon);
}

ParamReport CheckParams(const SchemeParams& params) {
  ParamReport report;
  auto add = [&](std::string field, std::string message) {
    report.violations.push_back({std::move(field), std::move(message)});
  };
  try {
    FieldContext ctx(params.q);
  } catch (const ArgumentError& e) {
    add("q", e.what());
    return report;
  }
  if (!ComputeDims(params, report)) return report;
  const SchemeDims& d = report.dims;

  if (params.mode == SchemeMode::kAdditiveOnly) {
    if (!(d.dim_r < params.n && params.n <= d.monomials_r)) {
      add("n", "requires d_r < n <= N, got d_r = " + Str(d.dim_r) +
                   ", n = " + Str(params.n) + ", N = " + Str(d.monomials_r));
    }
  } else {
    if (!(d.dim_2r < params.n && params.n <= d.monomials_2r)) {
      add("n", "requires d_2r < n <= C(ell+2r, 2r), got d_2r = " +
                   Str(d.dim_2r) + ", n = " + Str(params.n) +
                   ", C(ell+2r, 2r) = " + Str(d.monomials_2r));
    }
  }
  if (params.n >= params.q) add("n", "must be smaller than q");
  const double eps = params.epsilon.value();
  if (!(eps > 0.0 && eps < 1.0)) add("epsilon", "must lie in (0, 1)");
  if (params.headroom < 1) {
    add("headroom", "must be >= 1");
    return report;
  }
  report.sigma_p_upper =
      (params.q / 2) / static_cast<std::uint64_t>(params.headroom);
  if (eps > 0.0) {
    report.sigma_p_lower = Eta(1.0, params.headroom, eps) * params.noise_std();
    if (std::floor(report.sigma_p_lower) + 1.0 >
        static_cast<double>(report.sigma_p_upper)) {
      add("alpha", "no sigma_s * p fits: need > " +
                       std::to_string(report.sigma_p_lower) + " and <= " +
                       std::to_string(report.sigma_p_upper));
    }
  }
  return report;
}

SchemeDims ValidateParams(const SchemeParams& params) {
  ParamReport report = CheckParams(params);
  if (!report.ok()) {
    throw ValidationError(report.violations.front().field,
                          report.violations.front().message);
  }
  return report.dims;
}

SecretKey SecretKey::Assemble(const SchemeParams& params,
                              std::vector<FieldVector> points, FieldVector s,
                              std::uint64_t p) {
  SchemeDims dims = ValidateParams(params);
  const FieldContext ctx = params.context();
  SecretKey key(params, ctx);
  key.dims_ = dims;

  if (points.size() != params.n) {
    throw ValidationError("points", "expected " + Str(params.n) +
                                        " points, got " + Str(points.size()));
  }
  std::set<std::vector<std::uint64_t>> distinct;
  for (const FieldVector& z : points) {
    if (z.context() != ctx || z.size() != static_cast<std::size_t>(params.ell)) {
      throw ValidationError("points", "each point needs ell coordinates in F_q");
    }
    distinct.insert(std::vector<std::uint64_t>(z.values().begin(),
                                               z.values().end()));
  }
  if (distinct.size() != points.size()) {
    throw ValidationError("points", "points are not distinct");
  }
  key.points_ = std::move(points);

  IndexPtr index_r = MonomialIndex::Create(params.ell, params.r);
  IndexPtr index_2r = MonomialIndex::Create(params.ell, 2 * params.r);
  key.g_ = EvaluationMatrix(*index_r, key.points_);
  key.g_2r_ = EvaluationMatrix(*index_2r, key.points_);
  key.basis_r_ = IdealTruncatedBasis(params.ideal, params.r);
  key.basis_2r_ = IdealTruncatedBasis(params.ideal, 2 * params.r);
  key.encryption_span_ = key.basis_r_.Multiply(key.g_.Transpose());

  const bool mult = params.mode == SchemeMode::kMultDepth1;
  const MatrixFq& g_mode = mult ? key.g_2r_ : key.g_;
  key.orth_constraints_ =
      mult ? key.basis_2r_.Multiply(key.g_2r_.Transpose()) : key.encryption_span_;

  if (Rank(g_mode) != params.n) {
    throw ValidationError("points", "condition 1 fails: evaluation matrix rank " +
                                        Str(Rank(g_mode)) + " != n = " +
                                        Str(params.n));
  }
  if (Rank(key.orth_constraints_.ColumnBlock(0, dims.orth_dim)) !=
      dims.orth_dim) {
    throw ValidationError("points",
                          "condition 2 fails: ideal basis evaluated at the "
                          "first " + Str(dims.orth_dim) +
                              " points is singular");
  }

  if (s.context() != ctx || s.size() != params.n) {
    throw ValidationError("s", "expected a vector of length " + Str(params.n));
  }
  if (!key.orth_constraints_.Apply(s).IsZero()) {
    throw ValidationError("s", "not orthogonal to the evaluated ideal span");
  }
  key.s_ = std::move(s);
  if (key.s_tail().IsZero()) throw ValidationError("s", "tail s_2 is zero");

  key.sigma_s_ = ctx.Balanced(key.s_.Sum());
  if (key.sigma_s_ <= 0) {
    throw ValidationError("s", "sigma_s must be positive as a balanced integer");
  }
  if (p < 1 || p >= params.q) throw ValidationError("p", "must lie in [1, q)");
  key.p_ = p;
  const std::uint64_t scaled = static_cast<std::uint64_t>(key.sigma_s_) * p;
  const std::uint64_t cap =
      (params.q / 2) / static_cast<std::uint64_t>(params.headroom);
  if (scaled > cap) {
    throw ValidationError("p", "sigma_s * p = " + std::to_string(scaled) +
                                   " exceeds floor(q/2)/h = " +
                                   std::to_string(cap));
  }
  const double threshold =
      Eta(key.s_tail_norm(), params.headroom, params.epsilon.value()) *
      params.noise_std();
  if (!(static_cast<double>(scaled) > threshold)) {
    throw ValidationError("p", "sigma_s * p = " + std::to_string(scaled) +
                                   " does not exceed eta * alpha * q = " +
                                   std::to_string(threshold));
  }
  return key;
}

FieldVector SecretKey::s_tail() const {
  return s_.Slice(params_.n - dims_.tail_len, dims_.tail_len);
}

double SecretKey::s_tail_norm() const { return TailNorm(s_tail()); }

NoiseSpec SecretKey::noise_spec() const {
  return NoiseSpec(params_.alpha.value(), params_.q, dims_.noise_support);
}

EvalKey EvalKey::FromSecretKey(const SecretKey& sk) {
  if (sk.mode() != SchemeMode::kMultDepth1) {
    throw UnsupportedOperationError(
        "additive-only keys do not support multiplication");
  }
  return EvalKey(sk.params().q, sk.n(), sk.context().Inv(sk.p()));
}

EvalKey::EvalKey(std::uint64_t q, std::size_t n, std::uint64_t p_inverse)
    : ctx_(q), n_(n), p_inverse_(p_inverse) {
  if (p_inverse == 0 || p_inverse >= q) {
    throw ValidationError("p_inverse", "must be a unit in [1, q)");
  }
}

Ciphertext::Ciphertext(FieldVector c, int adds, int mults)
    : c(std::move(c)), adds(adds), mults(mults) {
  if (adds < 0 || mults < 0) {
    throw ArgumentError("ciphertext counters must be nonnegative");
  }
}

SecretKey KeyGen(const SchemeParams& params, RandomStream& stream) {
  ParamReport report = CheckParams(params);
  if (!report.ok()) {
    const ParamViolation& v = report.violations.front();
    std::string message = "parameters rejected: " + v.field + ": " + v.message;
    if (v.field == "alpha") throw ParameterInfeasibleError(message);
    throw KeygenError(message);
  }
  const SchemeDims& dims = report.dims;
  const FieldContext ctx = params.context();
  const bool mult = params.mode == SchemeMode::kMultDepth1;
  IndexPtr index_r = MonomialIndex::Create(params.ell, params.r);
  IndexPtr index_2r = MonomialIndex::Create(params.ell, 2 * params.r);
  const MatrixFq basis =
      IdealTruncatedBasis(params.ideal, mult ? 2 * params.r : params.r);
  const std::size_t head_len = dims.orth_dim;

  std::size_t cond1_failures = 0, cond2_failures = 0, no_solution = 0,
              sigma_zero = 0, no_scale = 0;
  const std::size_t budget = 64 * params.n;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    std::vector<FieldVector> points = SamplePoints(params, ctx, stream);
    MatrixFq g_mode = EvaluationMatrix(mult ? *index_2r : *index_r, points);
    if (Rank(g_mode) != params.n) {
      ++cond1_failures;
      continue;
    }
    MatrixFq constraints = basis.Multiply(g_mode.Transpose());
    if (Rank(constraints.ColumnBlock(0, head_len)) != head_len) {
      ++cond2_failures;
      continue;
    }
    for (std::size_t t = 0; t < kTailAttemptsPerPointSet; ++t) {
      FieldVector tail(ctx, dims.tail_len);
      if (!mult && t == 0) {
        tail.Set(dims.tail_len - 1, 1);
      } else {
        tail = SampleTernaryTail(ctx, dims.tail_len, stream);
      }
      std::optional<FieldVector> s =
          SolveHeadForOrthogonality(constraints, tail, head_len);
      if (!s) {
        ++no_solution;
        continue;
      }
      std::int64_t sigma = ctx.Balanced(s->Sum());
      if (sigma == 0) {
        ++sigma_zero;
        continue;
      }
      if (sigma < 0) {
        *s = -*s;
        sigma = -sigma;
      }
      const double threshold =
          Eta(TailNorm(tail), params.headroom, params.epsilon.value()) *
          params.noise_std();
      std::optional<std::uint64_t> p = ChooseScale(sigma, threshold, params);
      if (!p) {
        ++no_scale;
        continue;
      }
      return SecretKey::Assemble(params, std::move(points), std::move(*s), *p);
    }
  }
  std::ostringstream diag;
  diag << "retry budget of " << budget << " point sets exhausted ("
       << "condition 1 failures: " << cond1_failures
       << ", condition 2 failures: " << cond2_failures
       << ", inconsistent head solves: " << no_solution
       << ", sigma_s = 0: " << sigma_zero
       << ", no admissible p: " << no_scale << ")";
  if (no_scale > 0 && cond1_failures == 0 && cond2_failures == 0 &&
      no_solution == 0) {
    throw ParameterInfeasibleError(diag.str());
  }
  throw KeygenError(diag.str());
}

Polynomial SampleIdealPolynomial(const SecretKey& sk, RandomStream& stream) {
  const MatrixFq& basis = sk.basis_r();
  FieldVector weights = SampleUniformVector(stream, sk.context(), basis.rows());
  return Polynomial(MonomialIndex::Create(sk.params().ell, sk.params().r),
                    basis.CombineRows(weights));
}

FieldVector SampleEncryptionNoise(const SecretKey& sk, RandomStream& stream) {
  return SampleNoiseVector(stream, sk.noise_spec(), sk.context(), sk.n());
}

Ciphertext EncryptWith(const SecretKey& sk, int m, const Polynomial& f,
                       const FieldVector& e) {
  if (m != 0 && m != 1) throw ArgumentError("plaintext must be 0 or 1");
  if (f.index()->ell() != sk.params().ell ||
      f.index()->degree_bound() != sk.params().r) {
    throw ArgumentError("f must be indexed by MonomialIndex(ell, r)");
  }
  if (e.size() != sk.n()) throw ArgumentError("noise vector length != n");
  const FieldContext& ctx = sk.context();
  FieldVector c = sk.g().Apply(f.coeffs());
  c += e;
  if (m == 1) c += FieldVector::Constant(ctx, sk.n(), sk.p() % ctx.modulus());
  return Ciphertext(std::move(c));
}

EncryptionTrace EncryptTraced(const SecretKey& sk, int m,
                              RandomStream& stream) {
  if (m != 0 && m != 1) throw ArgumentError("plaintext must be 0 or 1");
  Polynomial f = SampleIdealPolynomial(sk, stream);
  FieldVector e = SampleEncryptionNoise(sk, stream);
  Ciphertext ct = EncryptWith(sk, m, f, e);
  return EncryptionTrace{std::move(ct), std::move(f), std::move(e)};
}

Ciphertext Encrypt(const SecretKey& sk, int m, RandomStream& stream) {
  return EncryptTraced(sk, m, stream).ciphertext;
}

int Decrypt(const SecretKey& sk, const Ciphertext& ct) {
  if (ct.c.size() != sk.n()) throw ArgumentError("ciphertext length != n");
  CheckSameContext(ct.c.context(), sk.context());
  const std::int64_t t = sk.context().Balanced(sk.s().Dot(ct.c));
  const std::int64_t rounded = RoundNearest(t, sk.scaled_sigma());
  return static_cast<int>(((rounded % 2) + 2) % 2);
}

Ciphertext HomAdd(const Ciphertext& a, const Ciphertext& b) {
  if (a.c.size() != b.c.size()) {
    throw ArgumentError("ciphertext lengths differ");
  }
  CheckSameContext(a.c.context(), b.c.context());
  return Ciphertext(a.c + b.c, std::max(a.adds, b.adds) + 1,
                    std::max(a.mults, b.mults));
}

Ciphertext HomMult(const Ciphertext& a, const Ciphertext& b,
                   const EvalKey& ek) {
  if (a.c.size() != ek.n() || b.c.size() != ek.n()) {
    throw ArgumentError("ciphertext length does not match evaluation key");
  }
  CheckSameContext(a.c.context(), ek.context());
  CheckSameContext(b.c.context(), ek.context());
  if (a.mults > 0 || b.mults > 0) {
    throw DepthError("only depth-1 multiplication is supported");
  }
  return Ciphertext(a.c.Hadamard(b.c).Scaled(ek.p_inverse()),
                    std::max(a.adds, b.adds), 1);
}

std::int64_t NoiseMeasure(const SecretKey& sk, const Ciphertext& ct,
                          std::int64_t m) {
  if (ct.c.size() != sk.n()) throw ArgumentError("ciphertext length != n");
  const FieldContext& ctx = sk.context();
  const std::uint64_t inner = sk.s().Dot(ct.c);
  const std::uint64_t encoded =
      ctx.Mul(ctx.Reduce(m), ctx.ReduceUnsigned(
                                 static_cast<std::uint64_t>(sk.scaled_sigma())));
  return ctx.Balanced(ctx.Sub(inner, encoded));
}

NoiseBudget ComputeNoiseBudget(const SecretKey& sk) {
  const SchemeParams& params = sk.params();
  const double noise = params.noise_std();
  const double norm = sk.s_tail_norm();
  NoiseBudget budget;
  budget.epsilon = params.epsilon.value();
  budget.eta = Eta(norm, params.headroom, budget.epsilon);
  budget.k = noise > 0.0 ? static_cast<double>(sk.scaled_sigma()) /
                               (2.0 * norm * noise)
                         : std::numeric_limits<double>::infinity();
  budget.predicted_std_fresh = norm * noise;
  budget.predicted_std_add = std::sqrt(2.0) * norm * noise;
  budget.predicted_std_mult =
      std::sqrt(2.0) * noise +
      noise * noise / std::sqrt(static_cast<double>(sk.p()));
  budget.decision_radius = sk.scaled_sigma() / 2;
  return budget;
}

}  // namespace mvhe
