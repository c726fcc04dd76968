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

#ifndef MVHE_SCHEME_H_
#define MVHE_SCHEME_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mvhe/field.h"
#include "mvhe/matrix.h"
#include "mvhe/polynomial.h"
#include "mvhe/random.h"

namespace mvhe {

enum class SchemeMode { kAdditiveOnly, kMultDepth1 };

std::string ModeName(SchemeMode mode);
// Accepts "additive_only" and "mult_depth_1". Throws ArgumentError otherwise.
SchemeMode ParseMode(std::string_view name);

// A non-negative decimal carried as its source text so that serialized
// parameters survive round trips without floating-point drift.
class Decimal {
 public:
  Decimal() : text_("0"), value_(0.0) {}
  // Plain decimal notation only ("0.0008", "8", "1e-3" is rejected).
  static Decimal Parse(std::string_view text);

  const std::string& text() const { return text_; }
  double value() const { return value_; }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.text_ == b.text_;
  }

 private:
  std::string text_;
  double value_;
};

struct SchemeParams {
  std::uint64_t lambda = 0;  // informational
  std::uint64_t q = 0;
  int ell = 0;
  int r = 0;
  std::size_t n = 0;
  Decimal alpha;
  Decimal epsilon;
  SchemeMode mode = SchemeMode::kAdditiveOnly;
  int headroom = 2;
  IdealSpec ideal;
  // In mult mode, put noise on the last n - d_r coordinates instead of the
  // last n - d_2r. Decryption is not expected to work with this set.
  bool literal_mult_noise = false;

  FieldContext context() const { return FieldContext(q); }
  double noise_std() const { return alpha.value() * static_cast<double>(q); }
};

// The toy parameter set used across tests: q = 10007, ell = r = 2,
// I = <x1^2 + x2^2 - 1, x1 x2 - 3>, epsilon = 0.01, alpha * q ~ 8, with
// n = d_r + 3 (additive) or d_2r + 4 (mult).
SchemeParams ToyParams(SchemeMode mode, std::string_view alpha = "0.0008");

struct SchemeDims {
  std::size_t monomials_r = 0;   // N = C(ell + r, r)
  std::size_t monomials_2r = 0;  // C(ell + 2r, 2r)
  std::size_t dim_r = 0;         // d_r
  std::size_t dim_2r = 0;        // d_2r
  std::size_t orth_dim = 0;      // d_r or d_2r, by mode
  std::size_t tail_len = 0;      // length of s_2: n - orth_dim
  std::size_t noise_support = 0;
};

struct ParamViolation {
  std::string field;
  std::string message;
};

struct ParamReport {
  SchemeDims dims;
  // eta * alpha * q for |s_2| = 1: sigma_s * p must exceed this.
  double sigma_p_lower = 0.0;
  // floor(q/2) / headroom: sigma_s * p may not exceed this.
  std::uint64_t sigma_p_upper = 0;
  std::vector<ParamViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Never throws on invariant violations; they are listed in the report.
ParamReport CheckParams(const SchemeParams& params);
// Throws ValidationError naming the first violated invariant.
SchemeDims ValidateParams(const SchemeParams& params);

// eta = 2 |s_2|_2 h / sqrt(eps).
double Eta(double s2_norm, int headroom, double epsilon);

class SecretKey {
 public:
  // Rebuilds G, the ideal bases and sigma_s from the parts and checks every
  // key invariant. Throws ValidationError naming the offending field.
  static SecretKey Assemble(const SchemeParams& params,
                            std::vector<FieldVector> points, FieldVector s,
                            std::uint64_t p);

  const SchemeParams& params() const { return params_; }
  const FieldContext& context() const { return ctx_; }
  SchemeMode mode() const { return params_.mode; }
  std::size_t n() const { return params_.n; }
  const SchemeDims& dims() const { return dims_; }

  const std::vector<FieldVector>& points() const { return points_; }
  // n x N evaluation of degree <= r monomials.
  const MatrixFq& g() const { return g_; }
  // n x C(ell+2r, 2r) evaluation of degree <= 2r monomials.
  const MatrixFq& g_2r() const { return g_2r_; }
  const MatrixFq& basis_r() const { return basis_r_; }
  const MatrixFq& basis_2r() const { return basis_2r_; }
  // Rows span the evaluated subspace s must annihilate (V_{I<=r} or
  // V_{I<=2r}, by mode).
  const MatrixFq& orth_constraints() const { return orth_constraints_; }
  // V_{I<=r}: the span encryptions of zero are noisy members of.
  const MatrixFq& encryption_span() const { return encryption_span_; }

  const FieldVector& s() const { return s_; }
  FieldVector s_tail() const;
  double s_tail_norm() const;
  std::uint64_t p() const { return p_; }
  // Balanced representative of sum(s), always positive.
  std::int64_t sigma_s() const { return sigma_s_; }
  std::int64_t scaled_sigma() const { return sigma_s_ * static_cast<std::int64_t>(p_); }
  NoiseSpec noise_spec() const;

 private:
  SecretKey(SchemeParams params, FieldContext ctx)
      : params_(std::move(params)),
        ctx_(ctx),
        g_(ctx, 0, 0),
        g_2r_(ctx, 0, 0),
        basis_r_(ctx, 0, 0),
        basis_2r_(ctx, 0, 0),
        orth_constraints_(ctx, 0, 0),
        encryption_span_(ctx, 0, 0),
        s_(ctx, 0) {}

  SchemeParams params_;
  FieldContext ctx_;
  SchemeDims dims_;
  std::vector<FieldVector> points_;
  MatrixFq g_;
  MatrixFq g_2r_;
  MatrixFq basis_r_;
  MatrixFq basis_2r_;
  MatrixFq orth_constraints_;
  MatrixFq encryption_span_;
  FieldVector s_;
  std::uint64_t p_ = 0;
  std::int64_t sigma_s_ = 0;
};

// What a third party needs to multiply ciphertexts.
class EvalKey {
 public:
  // Throws UnsupportedOperationError for an additive-only key.
  static EvalKey FromSecretKey(const SecretKey& sk);
  // Throws ValidationError unless p_inverse is a unit.
  EvalKey(std::uint64_t q, std::size_t n, std::uint64_t p_inverse);

  const FieldContext& context() const { return ctx_; }
  std::size_t n() const { return n_; }
  std::uint64_t p_inverse() const { return p_inverse_; }

  friend bool operator==(const EvalKey&, const EvalKey&) = default;

 private:
  FieldContext ctx_;
  std::size_t n_;
  std::uint64_t p_inverse_;
};

struct Ciphertext {
  explicit Ciphertext(FieldVector c, int adds = 0, int mults = 0);

  FieldVector c;
  int adds;
  int mults;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct NoiseBudget {
  double epsilon = 0.0;
  // Chebyshev multiplier sigma_s p / (2 |s_2| alpha q); +inf when alpha = 0.
  double k = 0.0;
  double eta = 0.0;
  double predicted_std_fresh = 0.0;
  double predicted_std_add = 0.0;
  // sqrt(2) alpha q + (alpha q)^2 / sqrt(p), as published; assumes real
  // division by p.
  double predicted_std_mult = 0.0;
  std::int64_t decision_radius = 0;  // floor(sigma_s p / 2)
};

// Throws KeygenError (or ParameterInfeasibleError) with a diagnostic.
SecretKey KeyGen(const SchemeParams& params, RandomStream& stream);

// A uniformly random member of the computed I_{<=r}.
Polynomial SampleIdealPolynomial(const SecretKey& sk, RandomStream& stream);

// Noise vector for the key's mode.
FieldVector SampleEncryptionNoise(const SecretKey& sk, RandomStream& stream);

struct EncryptionTrace {
  Ciphertext ciphertext;
  Polynomial f;
  FieldVector e;
};

// c = m p 1 + G f + e. f is a polynomial over MonomialIndex(ell, r); it is
// not checked for ideal membership. m must be 0 or 1.
Ciphertext EncryptWith(const SecretKey& sk, int m, const Polynomial& f,
                       const FieldVector& e);
EncryptionTrace EncryptTraced(const SecretKey& sk, int m,
                              RandomStream& stream);
Ciphertext Encrypt(const SecretKey& sk, int m, RandomStream& stream);

int Decrypt(const SecretKey& sk, const Ciphertext& ct);

Ciphertext HomAdd(const Ciphertext& a, const Ciphertext& b);
// p^{-1} (a (.) b). Depth 1 only.
Ciphertext HomMult(const Ciphertext& a, const Ciphertext& b,
                   const EvalKey& ek);

// balanced(<s, c> - m sigma_s p). `m` is the integer the ciphertext encodes
// before the parity reduction (m1 + m2 for a sum).
std::int64_t NoiseMeasure(const SecretKey& sk, const Ciphertext& ct,
                          std::int64_t m);

NoiseBudget ComputeNoiseBudget(const SecretKey& sk);

}  // namespace mvhe

#endif  // MVHE_SCHEME_H_
