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

#include "mvhe/games.h"

#include <cmath>
#include <string>
#include <utility>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

void CheckMessages(int m0, int m1) {
  const bool bits = (m0 == 0 || m0 == 1) && (m1 == 0 || m1 == 1);
  if (!bits || (m0 != 0 && m1 != 0)) {
    throw ProtocolViolationError(
        "left-right messages must be bits with at least one of them 0");
  }
}

double TrapdoorNoiseNorm(const FieldVector& t, std::size_t support) {
  double acc = 0.0;
  std::vector<std::int64_t> bal = t.Balanced();
  for (std::size_t i = bal.size() - support; i < bal.size(); ++i) {
    acc += static_cast<double>(bal[i]) * static_cast<double>(bal[i]);
  }
  return std::sqrt(acc);
}

int KnownSecretDecision(const OutOfBand& oob, const FieldVector& v) {
  if (!oob.trapdoor) {
    throw ArgumentError("known-secret adversary needs an out-of-band trapdoor");
  }
  const std::int64_t t = v.context().Balanced(oob.trapdoor->Dot(v));
  return (t < 0 ? -t : t) < oob.threshold ? 1 : 0;
}

class SubspaceHsmOracle : public HsmOracle {
 public:
  SubspaceHsmOracle(const SubspaceInstance& instance, int beta,
                    RandomStream stream, const GameOptions& options)
      : instance_(instance),
        beta_(beta),
        stream_(stream),
        transcript_(options.transcript) {
    info_.n = instance.n();
    info_.q = instance.context().modulus();
    info_.sample_cap = options.sample_cap;
    info_.plaintext_scale = instance.plaintext_scale;
  }

  const HsmPublicInfo& info() const override { return info_; }

  FieldVector Sample() override {
    if (samples_ >= info_.sample_cap) {
      throw ProtocolViolationError("sample cap of " +
                                   std::to_string(info_.sample_cap) +
                                   " reached");
    }
    ++samples_;
    auto [member, noisy] = NoisyMember();
    if (transcript_ != nullptr) transcript_->samples.push_back(noisy);
    return noisy;
  }

  FieldVector Challenge() override {
    if (challenged_) throw ProtocolViolationError("challenge already issued");
    challenged_ = true;
    FieldVector out(instance_.context(), 0);
    if (beta_ == 0) {
      out = SampleUniformVector(stream_, instance_.context(), instance_.n());
    } else {
      auto [member, noisy] = NoisyMember();
      if (transcript_ != nullptr) transcript_->challenge_member = member;
      out = std::move(noisy);
    }
    if (transcript_ != nullptr) transcript_->challenge = out;
    return out;
  }

  const OutOfBand& out_of_band() const override {
    return instance_.out_of_band;
  }

 private:
  std::pair<FieldVector, FieldVector> NoisyMember() {
    const FieldContext& ctx = instance_.context();
    FieldVector weights = SampleUniformVector(stream_, ctx, instance_.dim());
    FieldVector member = instance_.basis().CombineRows(weights);
    FieldVector noisy =
        member + SampleNoiseVector(stream_, instance_.noise(), ctx,
                                   instance_.n());
    return {std::move(member), std::move(noisy)};
  }

  const SubspaceInstance& instance_;
  int beta_;
  RandomStream stream_;
  GameTranscript* transcript_;
  HsmPublicInfo info_;
  std::size_t samples_ = 0;
  bool challenged_ = false;
};

class LweDlweOracle : public DlweOracle {
 public:
  LweDlweOracle(const DlweSetup& setup, const FieldContext& ctx, int beta,
                RandomStream stream, const GameOptions& options)
      : ctx_(ctx),
        noise_(setup.alpha, setup.q, 1),
        beta_(beta),
        stream_(stream),
        secret_(SampleUniformVector(stream_, ctx, setup.n)),
        transcript_(options.transcript) {
    info_.n = setup.n;
    info_.q = setup.q;
    info_.sample_cap = options.sample_cap;
    FieldVector t = Concat(-secret_, FieldVector(ctx, {1}));
    oob_.trapdoor = std::move(t);
    oob_.threshold = NoiseThreshold(noise_.StdDev());
  }

  const DlwePublicInfo& info() const override { return info_; }

  DlwePair Sample() override {
    if (samples_ >= info_.sample_cap) {
      throw ProtocolViolationError("sample cap of " +
                                   std::to_string(info_.sample_cap) +
                                   " reached");
    }
    ++samples_;
    auto [exact, noisy] = Lwe();
    Record(noisy, false);
    return noisy;
  }

  DlwePair Challenge() override {
    if (challenged_) throw ProtocolViolationError("challenge already issued");
    challenged_ = true;
    if (beta_ == 0) {
      DlwePair out{SampleUniformVector(stream_, ctx_, info_.n),
                   SampleUniformFq(stream_, ctx_).value()};
      Record(out, true);
      return out;
    }
    auto [exact, noisy] = Lwe();
    if (transcript_ != nullptr) transcript_->challenge_member = exact;
    Record(noisy, true);
    return noisy;
  }

  const OutOfBand& out_of_band() const override { return oob_; }

 private:
  static FieldVector Flatten(const DlwePair& pair) {
    return Concat(pair.a, FieldVector(pair.a.context(),
                                      std::vector<std::uint64_t>{pair.b}));
  }

  // Returns (a, <a, s>) flattened and the noisy pair.
  std::pair<FieldVector, DlwePair> Lwe() {
    FieldVector a = SampleUniformVector(stream_, ctx_, info_.n);
    const std::uint64_t exact = a.Dot(secret_);
    const std::uint64_t e = SampleDiscreteGaussian(stream_, noise_, ctx_).value();
    DlwePair exact_pair{a, exact};
    FieldVector flat = Flatten(exact_pair);
    return {std::move(flat), DlwePair{std::move(a), ctx_.Add(exact, e)}};
  }

  void Record(const DlwePair& pair, bool challenge) {
    if (transcript_ == nullptr) return;
    if (challenge) {
      transcript_->challenge = Flatten(pair);
    } else {
      transcript_->samples.push_back(Flatten(pair));
    }
  }

  FieldContext ctx_;
  NoiseSpec noise_;
  int beta_;
  RandomStream stream_;
  FieldVector secret_;
  GameTranscript* transcript_;
  DlwePublicInfo info_;
  OutOfBand oob_;
  std::size_t samples_ = 0;
  bool challenged_ = false;
};

class SchemeIndCpaOracle : public IndCpaOracle {
 public:
  SchemeIndCpaOracle(std::shared_ptr<const SecretKey> key, int beta,
                     RandomStream stream, const GameOptions& options)
      : key_(std::move(key)),
        beta_(beta),
        stream_(stream),
        transcript_(options.transcript) {
    info_.n = key_->n();
    info_.q = key_->params().q;
    info_.query_cap = options.sample_cap;
    oob_.trapdoor = key_->s();
    oob_.threshold = key_->scaled_sigma() / 2;
    oob_.key = key_;
  }

  const IndCpaPublicInfo& info() const override { return info_; }

  FieldVector EncryptZero() override {
    if (queries_ >= info_.query_cap) {
      throw ProtocolViolationError("encryption query cap reached");
    }
    ++queries_;
    FieldVector c = Encrypt(*key_, 0, stream_).c;
    if (transcript_ != nullptr) transcript_->samples.push_back(c);
    return c;
  }

  FieldVector LeftRight(int m0, int m1) override {
    CheckMessages(m0, m1);
    if (challenged_) throw ProtocolViolationError("challenge already issued");
    challenged_ = true;
    FieldVector c = Encrypt(*key_, beta_ == 0 ? m0 : m1, stream_).c;
    if (transcript_ != nullptr) transcript_->challenge = c;
    return c;
  }

  const OutOfBand& out_of_band() const override { return oob_; }

 private:
  std::shared_ptr<const SecretKey> key_;
  int beta_;
  RandomStream stream_;
  GameTranscript* transcript_;
  IndCpaPublicInfo info_;
  OutOfBand oob_;
  std::size_t queries_ = 0;
  bool challenged_ = false;
};

// The HSM view of a DLWE oracle.
class DlweBackedHsmOracle : public HsmOracle {
 public:
  DlweBackedHsmOracle(DlweOracle& inner, const Lemma1Adapter::Observer& observer)
      : inner_(inner), observer_(observer) {
    info_.n = inner.info().n + 1;
    info_.q = inner.info().q;
    info_.sample_cap = inner.info().sample_cap;
    const OutOfBand& src = inner.out_of_band();
    oob_.threshold = src.threshold;
    if (src.trapdoor) {
      const std::size_t n = inner.info().n;
      oob_.trapdoor = Concat(-src.trapdoor->Slice(0, n),
                             src.trapdoor->Slice(n, 1));
    }
  }

  const HsmPublicInfo& info() const override { return info_; }
  FieldVector Sample() override { return Forward(inner_.Sample()); }
  FieldVector Challenge() override { return Forward(inner_.Challenge()); }
  const OutOfBand& out_of_band() const override { return oob_; }

 private:
  FieldVector Forward(const DlwePair& pair) {
    const FieldContext& ctx = pair.a.context();
    FieldVector v = Concat(
        pair.a, FieldVector(ctx, std::vector<std::uint64_t>{ctx.Neg(pair.b)}));
    if (observer_) observer_(pair, v);
    return v;
  }

  DlweOracle& inner_;
  const Lemma1Adapter::Observer& observer_;
  HsmPublicInfo info_;
  OutOfBand oob_;
};

// The IND-CPA view of an HSM oracle.
class HsmBackedIndCpaOracle : public IndCpaOracle {
 public:
  HsmBackedIndCpaOracle(HsmOracle& inner, int gamma, std::uint64_t p,
                        const Theorem1Adapter::Observer& observer)
      : inner_(inner), gamma_(gamma), p_(p), observer_(observer) {
    info_.n = inner.info().n;
    info_.q = inner.info().q;
    info_.query_cap = inner.info().sample_cap;
  }

  const IndCpaPublicInfo& info() const override { return info_; }

  FieldVector EncryptZero() override {
    FieldVector v = inner_.Sample();
    if (observer_) observer_(Theorem1Event{false, 0, v, v});
    return v;
  }

  FieldVector LeftRight(int m0, int m1) override {
    CheckMessages(m0, m1);
    const int m = gamma_ == 0 ? m0 : m1;
    FieldVector v = inner_.Challenge();
    const FieldContext& ctx = v.context();
    FieldVector c =
        v + FieldVector::Constant(ctx, v.size(),
                                  ctx.ReduceUnsigned(p_ * static_cast<std::uint64_t>(m)));
    if (observer_) observer_(Theorem1Event{true, m, v, c});
    return c;
  }

  const OutOfBand& out_of_band() const override {
    return inner_.out_of_band();
  }

 private:
  HsmOracle& inner_;
  int gamma_;
  std::uint64_t p_;
  const Theorem1Adapter::Observer& observer_;
  IndCpaPublicInfo info_;
};

int DrawBeta(RandomStream& game, const GameOptions& options) {
  if (options.forced_beta) {
    if (*options.forced_beta != 0 && *options.forced_beta != 1) {
      throw ArgumentError("forced beta must be 0 or 1");
    }
    return *options.forced_beta;
  }
  return game.Bit();
}

bool Finalize(int beta, int guess, const GameOptions& options) {
  const bool won = guess == beta;
  if (options.transcript != nullptr) {
    options.transcript->beta = beta;
    options.transcript->guess = guess;
    options.transcript->won = won;
  }
  return won;
}

void ResetTranscript(const GameOptions& options) {
  if (options.transcript != nullptr) *options.transcript = GameTranscript{};
}

}  // namespace

SubspaceInstance::SubspaceInstance(MatrixFq basis, NoiseSpec noise)
    : basis_(std::move(basis)), noise_(noise) {
  if (basis_.rows() < 1 || basis_.rows() >= basis_.cols()) {
    throw ArgumentError("subspace dimension must satisfy 1 <= l < n");
  }
  if (Rank(basis_) != basis_.rows()) {
    throw ArgumentError("subspace basis rows are dependent");
  }
  if (noise_.support_len() > basis_.cols()) {
    throw ArgumentError("noise support exceeds n");
  }
  if (noise_.q() != basis_.context().modulus()) {
    throw ArgumentError("noise modulus differs from the subspace field");
  }
}

std::int64_t NoiseThreshold(double std_dev) {
  const double t = std::ceil(4.0 * std_dev);
  return t < 1.0 ? 1 : static_cast<std::int64_t>(t);
}

SubspaceInstance RandomSubspaceInstance(const FieldContext& ctx, std::size_t n,
                                        std::size_t dim, double alpha,
                                        std::size_t noise_support,
                                        RandomStream& stream) {
  if (dim < 1 || dim >= n) {
    throw ArgumentError("subspace dimension must satisfy 1 <= l < n");
  }
  MatrixFq basis(ctx, 0, 0);
  do {
    std::vector<FieldVector> rows;
    for (std::size_t i = 0; i < dim; ++i) {
      rows.push_back(SampleUniformVector(stream, ctx, n));
    }
    basis = MatrixFq::FromRows(ctx, n, rows);
  } while (Rank(basis) != dim);
  basis = RowSpaceBasis(basis);
  NoiseSpec noise(alpha, ctx.modulus(), noise_support);
  SubspaceInstance instance(basis, noise);
  FieldVector t = NullspaceBasis(basis).Row(0);
  instance.out_of_band.threshold =
      NoiseThreshold(noise.StdDev() * TrapdoorNoiseNorm(t, noise_support));
  instance.out_of_band.trapdoor = std::move(t);
  return instance;
}

SubspaceInstance SecretLineInstance(const FieldVector& s, double alpha) {
  const FieldContext& ctx = s.context();
  const std::size_t n = s.size();
  MatrixFq basis(ctx, n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    basis.Set(i, i, 1);
    basis.Set(i, n, ctx.Neg(s[i]));
  }
  NoiseSpec noise(alpha, ctx.modulus(), 1);
  SubspaceInstance instance(std::move(basis), noise);
  instance.out_of_band.trapdoor = Concat(s, FieldVector(ctx, {1}));
  instance.out_of_band.threshold = NoiseThreshold(noise.StdDev());
  return instance;
}

SubspaceInstance SchemeInducedInstance(std::shared_ptr<const SecretKey> key) {
  SubspaceInstance instance(RowSpaceBasis(key->encryption_span()),
                            key->noise_spec());
  instance.plaintext_scale = key->p();
  instance.out_of_band.trapdoor = key->s();
  instance.out_of_band.threshold = key->scaled_sigma() / 2;
  instance.out_of_band.key = std::move(key);
  return instance;
}

bool PlayHsm(const InstanceSampler& sampler, HsmAdversary& adversary,
             RandomStream& stream, const GameOptions& options) {
  ResetTranscript(options);
  RandomStream setup = stream.Derive(2);
  const SubspaceInstance instance = sampler(setup);
  RandomStream game = stream.Derive(0);
  RandomStream coins = stream.Derive(1);
  const int beta = DrawBeta(game, options);
  SubspaceHsmOracle oracle(instance, beta, game, options);
  return Finalize(beta, adversary.Run(oracle, coins), options);
}

bool PlayHsm(const SubspaceInstance& instance, HsmAdversary& adversary,
             RandomStream& stream, const GameOptions& options) {
  ResetTranscript(options);
  RandomStream game = stream.Derive(0);
  RandomStream coins = stream.Derive(1);
  const int beta = DrawBeta(game, options);
  SubspaceHsmOracle oracle(instance, beta, game, options);
  return Finalize(beta, adversary.Run(oracle, coins), options);
}

bool PlayDlwe(const DlweSetup& setup, DlweAdversary& adversary,
              RandomStream& stream, const GameOptions& options) {
  if (setup.n < 1) throw ArgumentError("DLWE dimension must be >= 1");
  ResetTranscript(options);
  const FieldContext ctx(setup.q);
  RandomStream game = stream.Derive(0);
  RandomStream coins = stream.Derive(1);
  const int beta = DrawBeta(game, options);
  LweDlweOracle oracle(setup, ctx, beta, game, options);
  return Finalize(beta, adversary.Run(oracle, coins), options);
}

bool PlayIndCpa(const SchemeParams& params, IndCpaAdversary& adversary,
                RandomStream& stream, const GameOptions& options) {
  ResetTranscript(options);
  RandomStream setup = stream.Derive(2);
  auto key = std::make_shared<const SecretKey>(KeyGen(params, setup));
  RandomStream game = stream.Derive(0);
  RandomStream coins = stream.Derive(1);
  const int beta = DrawBeta(game, options);
  SchemeIndCpaOracle oracle(std::move(key), beta, game, options);
  return Finalize(beta, adversary.Run(oracle, coins), options);
}

int RandomHsmAdversary::Run(HsmOracle&, RandomStream& coins) {
  return coins.Bit();
}

int RankHsmAdversary::Run(HsmOracle& oracle, RandomStream&) {
  const std::size_t n = oracle.info().n;
  const std::size_t count = std::min(n, oracle.info().sample_cap);
  const FieldContext ctx(oracle.info().q);
  std::vector<FieldVector> rows;
  for (std::size_t i = 0; i < count; ++i) rows.push_back(oracle.Sample());
  RrefResult echelon = Rref(MatrixFq::FromRows(ctx, n, rows));
  return RowSpaceContains(echelon, oracle.Challenge()) ? 1 : 0;
}

int KnownSecretHsmAdversary::Run(HsmOracle& oracle, RandomStream&) {
  return KnownSecretDecision(oracle.out_of_band(), oracle.Challenge());
}

int RandomDlweAdversary::Run(DlweOracle&, RandomStream& coins) {
  return coins.Bit();
}

int EliminationDlweAdversary::Run(DlweOracle& oracle, RandomStream& coins) {
  const std::size_t n = oracle.info().n;
  const std::size_t count = std::min(n + 8, oracle.info().sample_cap);
  const FieldContext ctx(oracle.info().q);
  std::vector<FieldVector> rows;
  FieldVector b(ctx, count);
  for (std::size_t i = 0; i < count; ++i) {
    DlwePair pair = oracle.Sample();
    rows.push_back(pair.a);
    b.SetCanonical(i, pair.b);
  }
  std::optional<FieldVector> s = SolveLinear(MatrixFq::FromRows(ctx, n, rows), b);
  DlwePair challenge = oracle.Challenge();
  if (!s) return coins.Bit();
  return ctx.Sub(challenge.b, challenge.a.Dot(*s)) == 0 ? 1 : 0;
}

int KnownSecretDlweAdversary::Run(DlweOracle& oracle, RandomStream&) {
  DlwePair c = oracle.Challenge();
  const FieldContext& ctx = c.a.context();
  FieldVector flat = Concat(c.a, FieldVector(ctx, std::vector<std::uint64_t>{c.b}));
  return KnownSecretDecision(oracle.out_of_band(), flat);
}

int RandomIndCpaAdversary::Run(IndCpaOracle& oracle, RandomStream& coins) {
  oracle.LeftRight(0, 1);
  return coins.Bit();
}

int RankIndCpaAdversary::Run(IndCpaOracle& oracle, RandomStream&) {
  const std::size_t n = oracle.info().n;
  const std::size_t count = std::min(n, oracle.info().query_cap);
  const FieldContext ctx(oracle.info().q);
  std::vector<FieldVector> rows;
  for (std::size_t i = 0; i < count; ++i) rows.push_back(oracle.EncryptZero());
  RrefResult echelon = Rref(MatrixFq::FromRows(ctx, n, rows));
  return RowSpaceContains(echelon, oracle.LeftRight(0, 1)) ? 0 : 1;
}

int KeyLeakIndCpaAdversary::Run(IndCpaOracle& oracle, RandomStream&) {
  const auto& key = oracle.out_of_band().key;
  if (!key) throw ArgumentError("key-leaking adversary needs the secret key");
  return Decrypt(*key, Ciphertext(oracle.LeftRight(0, 1)));
}

int Lemma1Adapter::Run(DlweOracle& oracle, RandomStream& coins) {
  DlweBackedHsmOracle view(oracle, observer_);
  return inner_.Run(view, coins);
}

int Theorem1Adapter::Run(HsmOracle& oracle, RandomStream& coins) {
  if (!oracle.info().plaintext_scale) {
    throw ArgumentError("the HSM instance does not publish a plaintext scale");
  }
  const int gamma = coins.Bit();
  RandomStream inner_coins = coins.Derive(1);
  HsmBackedIndCpaOracle view(oracle, gamma, *oracle.info().plaintext_scale,
                             observer_);
  return inner_.Run(view, inner_coins) == gamma ? 1 : 0;
}

double CiHalfwidth(std::size_t trials) {
  return 1.96 * std::sqrt(0.25 / static_cast<double>(trials));
}

double JointHalfwidth(const AdvantageEstimate& a, const AdvantageEstimate& b) {
  return std::sqrt(a.ci_halfwidth * a.ci_halfwidth +
                   b.ci_halfwidth * b.ci_halfwidth);
}

AdvantageEstimate EstimateAdvantage(const GameRunner& play, std::size_t trials,
                                    const RandomStream& stream) {
  if (trials < 100) {
    throw ArgumentError("advantage estimation needs at least 100 trials");
  }
  AdvantageEstimate est;
  est.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    RandomStream game = stream.Derive(i);
    if (play(game)) ++est.wins;
  }
  est.advantage = std::fabs(est.win_rate() - 0.5);
  est.ci_halfwidth = CiHalfwidth(trials);
  return est;
}

}  // namespace mvhe
