//
// Copyright 2026 The DialAug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dialaug/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dialaug {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long ParseInt(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) {
    throw std::invalid_argument("config key " + key + ": not an integer: " +
                                value);
  }
  return v;
}

std::uint64_t ParseSeed(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    if (!value.empty() && value[0] != '-') v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) {
    throw std::invalid_argument("config key " + key + ": not a seed: " + value);
  }
  return v;
}

double ParseReal(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) {
    throw std::invalid_argument("config key " + key + ": not a number: " +
                                value);
  }
  return v;
}

std::string FormatReal(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void CheckFinite(const StepLoss& step, const EncoderParams& grads, int epoch,
                 int batch) {
  if (std::isfinite(step.total) && grads.AllFinite()) return;
  std::ostringstream msg;
  msg << "non-finite loss at epoch " << epoch << " batch " << batch
      << ": total=" << step.total << " ranking=" << step.ranking
      << " contrastive=" << step.contrastive
      << (grads.AllFinite() ? "" : " (non-finite gradients)");
  throw std::runtime_error(msg.str());
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size < 2) throw std::invalid_argument("batch_size must be >= 2");
  adam.Validate();
  augmentation.Validate();
  loss.Validate();
  if (max_ctx != 0 && max_ctx < 3) throw std::invalid_argument("max_ctx must be >= 3");
  if (max_resp != 0 && max_resp < 3) {
    throw std::invalid_argument("max_resp must be >= 3");
  }
  if (!(length_percentile > 0.0 && length_percentile <= 1.0)) {
    throw std::invalid_argument("length_percentile must be in (0, 1]");
  }
  if (min_freq < 1) throw std::invalid_argument("min_freq must be >= 1");
  EncoderConfig probe = encoder;
  if (probe.vocab_size == 0) probe.vocab_size = kNumReserved;
  if (probe.max_len == 0) probe.max_len = 3;
  probe.Validate();
}

TrainConfig ParseTrainConfig(std::istream& in) {
  TrainConfig c;
  c.encoder.vocab_size = 0;
  c.encoder.max_len = 0;
  std::string aug_kind = AugKindName(c.augmentation.kind);
  bool have_aug_rate = false, have_aug_seed = false, have_enc_seed = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto int_field = [](int& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = static_cast<int>(ParseInt(k, v));
    };
  };
  auto real_field = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = ParseReal(k, v);
    };
  };
  auto seed_field = [](std::uint64_t& field, bool* seen) -> Setter {
    return [&field, seen](const std::string& k, const std::string& v) {
      field = ParseSeed(k, v);
      if (seen != nullptr) *seen = true;
    };
  };
  const std::map<std::string, Setter> setters = {
      {"epochs", int_field(c.epochs)},
      {"batch_size", int_field(c.batch_size)},
      {"learning_rate", real_field(c.adam.learning_rate)},
      {"beta1", real_field(c.adam.beta1)},
      {"beta2", real_field(c.adam.beta2)},
      {"epsilon", real_field(c.adam.epsilon)},
      {"seed", seed_field(c.seed, nullptr)},
      {"aug_kind", [&](const std::string&, const std::string& v) {
         aug_kind = v;
       }},
      {"aug_rate", [&](const std::string& k, const std::string& v) {
         c.augmentation.rate = ParseReal(k, v);
         have_aug_rate = true;
       }},
      {"aug_seed", seed_field(c.augmentation.seed, &have_aug_seed)},
      {"tau", real_field(c.loss.tau)},
      {"lambda_cl", real_field(c.loss.lambda_cl)},
      {"vocab_size", int_field(c.encoder.vocab_size)},
      {"d_model", int_field(c.encoder.d_model)},
      {"n_layers", int_field(c.encoder.n_layers)},
      {"n_heads", int_field(c.encoder.n_heads)},
      {"d_ffn", int_field(c.encoder.d_ffn)},
      {"max_len", int_field(c.encoder.max_len)},
      {"dropout", real_field(c.encoder.dropout)},
      {"proj_dim", int_field(c.encoder.proj_dim)},
      {"encoder_seed", seed_field(c.encoder.seed, &have_enc_seed)},
      {"max_ctx", int_field(c.max_ctx)},
      {"max_resp", int_field(c.max_resp)},
      {"length_percentile", real_field(c.length_percentile)},
      {"min_freq", int_field(c.min_freq)},
      {"checkpoint", [&](const std::string&, const std::string& v) {
         c.checkpoint = v;
       }},
  };

  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown config key: " + key);
    }
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate config key: " + key);
    }
    it->second(key, value);
  }
  c.augmentation.kind = ParseAugKind(aug_kind);
  if (!have_aug_rate) {
    c.augmentation.rate = AugmentationSpec::DefaultRate(c.augmentation.kind);
  }
  if (!have_aug_seed) c.augmentation.seed = c.seed;
  if (!have_enc_seed) c.encoder.seed = c.seed;
  c.Validate();
  return c;
}

TrainConfig ReadTrainConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ParseTrainConfig(in);
}

std::string FormatTrainConfig(const TrainConfig& c) {
  std::ostringstream out;
  out << "epochs = " << c.epochs << '\n'
      << "batch_size = " << c.batch_size << '\n'
      << "learning_rate = " << FormatReal(c.adam.learning_rate) << '\n'
      << "beta1 = " << FormatReal(c.adam.beta1) << '\n'
      << "beta2 = " << FormatReal(c.adam.beta2) << '\n'
      << "epsilon = " << FormatReal(c.adam.epsilon) << '\n'
      << "seed = " << c.seed << '\n'
      << "aug_kind = " << AugKindName(c.augmentation.kind) << '\n'
      << "aug_rate = " << FormatReal(c.augmentation.rate) << '\n'
      << "aug_seed = " << c.augmentation.seed << '\n'
      << "tau = " << FormatReal(c.loss.tau) << '\n'
      << "lambda_cl = " << FormatReal(c.loss.lambda_cl) << '\n'
      << "vocab_size = " << c.encoder.vocab_size << '\n'
      << "d_model = " << c.encoder.d_model << '\n'
      << "n_layers = " << c.encoder.n_layers << '\n'
      << "n_heads = " << c.encoder.n_heads << '\n'
      << "d_ffn = " << c.encoder.d_ffn << '\n'
      << "max_len = " << c.encoder.max_len << '\n'
      << "dropout = " << FormatReal(c.encoder.dropout) << '\n'
      << "proj_dim = " << c.encoder.proj_dim << '\n'
      << "encoder_seed = " << c.encoder.seed << '\n'
      << "max_ctx = " << c.max_ctx << '\n'
      << "max_resp = " << c.max_resp << '\n'
      << "length_percentile = " << FormatReal(c.length_percentile) << '\n'
      << "min_freq = " << c.min_freq << '\n';
  if (!c.checkpoint.empty()) out << "checkpoint = " << c.checkpoint << '\n';
  return out.str();
}

Checkpoint::Checkpoint(Vocab vocab, EncoderParams params, int max_ctx,
                       int max_resp)
    : vocab_(std::move(vocab)),
      params_(std::move(params)),
      max_ctx_(max_ctx),
      max_resp_(max_resp) {
  if (params_.config().vocab_size != vocab_.Size()) {
    throw std::invalid_argument("checkpoint vocab size does not match encoder");
  }
  if (max_ctx_ < 3 || max_resp_ < 3 ||
      std::max(max_ctx_, max_resp_) > params_.config().max_len) {
    throw std::invalid_argument("checkpoint sequence caps exceed encoder max_len");
  }
}

TokenSequence Checkpoint::EncodeContextIds(
    const std::vector<std::string>& turns) const {
  return TokenizeContext(turns, vocab_, max_ctx_);
}

TokenSequence Checkpoint::EncodeResponseIds(const std::string& text) const {
  return TokenizeResponse(text, vocab_, max_resp_);
}

Vector Checkpoint::ContextVector(const std::vector<std::string>& turns) const {
  return Encode(EncodeContextIds(turns), params_, false);
}

Vector Checkpoint::ResponseVector(const std::string& text) const {
  return Encode(EncodeResponseIds(text), params_, false);
}

std::string Checkpoint::Serialize() const {
  nlohmann::ordered_json j;
  j["format"] = "dialaug-checkpoint";
  j["version"] = 1;
  j["max_ctx"] = max_ctx_;
  j["max_resp"] = max_resp_;
  j["vocab"] = vocab_.Tokens();
  j["encoder"] = params_.ToJson();
  return j.dump();
}

Checkpoint Checkpoint::Deserialize(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "dialaug-checkpoint") {
    throw std::runtime_error("not a dialaug checkpoint");
  }
  if (j.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported checkpoint version");
  }
  return Checkpoint(
      Vocab::FromTokens(j.at("vocab").get<std::vector<std::string>>()),
      EncoderParams::FromJson(j.at("encoder")), j.at("max_ctx").get<int>(),
      j.at("max_resp").get<int>());
}

void Checkpoint::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << Serialize() << '\n';
}

Checkpoint Checkpoint::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Deserialize(buf.str());
}

Checkpoint InitCheckpoint(const std::vector<Dialogue>& dataset,
                          const TrainConfig& config) {
  config.Validate();
  Vocab vocab = BuildVocab(dataset, config.min_freq);
  int max_ctx = config.max_ctx;
  int max_resp = config.max_resp;
  if (max_ctx == 0 || max_resp == 0) {
    std::vector<int> ctx_lens, resp_lens;
    for (const Dialogue& d : dataset) {
      ctx_lens.push_back(ContextLength(d.turns));
      resp_lens.push_back(ResponseLength(d.response));
    }
    if (max_ctx == 0) {
      max_ctx = std::max(3, PercentileMaxLen(ctx_lens, config.length_percentile));
    }
    if (max_resp == 0) {
      max_resp =
          std::max(3, PercentileMaxLen(resp_lens, config.length_percentile));
    }
  }
  EncoderConfig enc = config.encoder;
  if (enc.vocab_size == 0) {
    enc.vocab_size = vocab.Size();
  } else if (enc.vocab_size != vocab.Size()) {
    throw std::invalid_argument("configured vocab_size " +
                                std::to_string(enc.vocab_size) +
                                " differs from the built vocabulary (" +
                                std::to_string(vocab.Size()) + ")");
  }
  if (enc.max_len == 0) enc.max_len = std::max(max_ctx, max_resp);
  return Checkpoint(std::move(vocab), InitParams(enc), max_ctx, max_resp);
}

StepLoss BatchLossAndGradients(const EncoderParams& params, const Batch& batch,
                               const LossConfig& loss, bool train_mode,
                               Rng* dropout_rng, bool shared_aug_view,
                               EncoderParams* grads) {
  const int b = batch.Size();
  if (b < 2) throw std::invalid_argument("batch needs at least 2 rows");
  if (static_cast<int>(batch.responses.size()) != b ||
      (!shared_aug_view && static_cast<int>(batch.aug_contexts.size()) != b)) {
    throw std::invalid_argument("batch views have different sizes");
  }
  const EncoderConfig& config = params.config();
  const bool use_projection = loss.lambda_cl > 0.0;

  std::vector<EncodeCache> ctx_cache(b), aug_cache(b), resp_cache(b);
  std::vector<ProjectCache> ctx_proj(b), aug_proj(b), resp_proj(b);
  BatchEmbeddings e;
  e.ctx.resize(b, config.d_model);
  e.aug.resize(b, config.d_model);
  e.resp.resize(b, config.d_model);
  e.z_ctx = Matrix::Zero(b, config.proj_dim);
  e.z_aug = Matrix::Zero(b, config.proj_dim);
  e.z_resp = Matrix::Zero(b, config.proj_dim);
  for (int i = 0; i < b; ++i) {
    e.ctx.row(i) = Encode(batch.contexts[i], params, train_mode, dropout_rng,
                          &ctx_cache[i]);
    if (!shared_aug_view) {
      e.aug.row(i) = Encode(batch.aug_contexts[i], params, train_mode,
                            dropout_rng, &aug_cache[i]);
    }
    e.resp.row(i) = Encode(batch.responses[i], params, train_mode, dropout_rng,
                           &resp_cache[i]);
  }
  if (shared_aug_view) e.aug = e.ctx;
  if (use_projection) {
    for (int i = 0; i < b; ++i) {
      e.z_ctx.row(i) = Project(e.ctx.row(i).transpose(), params, &ctx_proj[i]);
      if (!shared_aug_view) {
        e.z_aug.row(i) = Project(e.aug.row(i).transpose(), params, &aug_proj[i]);
      }
      e.z_resp.row(i) =
          Project(e.resp.row(i).transpose(), params, &resp_proj[i]);
    }
    if (shared_aug_view) e.z_aug = e.z_ctx;
  }

  const LossValue value = TotalLoss(e, loss);
  Matrix d_ctx = value.grads.ctx;
  Matrix d_aug = value.grads.aug;
  Matrix d_resp = value.grads.resp;
  grads->SetZero();
  if (use_projection) {
    for (int i = 0; i < b; ++i) {
      if (shared_aug_view) {
        const Vector dz = (value.grads.z_ctx.row(i) + value.grads.z_aug.row(i))
                              .transpose();
        d_ctx.row(i) += ProjectBackward(dz, ctx_proj[i], params, grads);
      } else {
        d_ctx.row(i) += ProjectBackward(value.grads.z_ctx.row(i).transpose(),
                                        ctx_proj[i], params, grads);
        d_aug.row(i) += ProjectBackward(value.grads.z_aug.row(i).transpose(),
                                        aug_proj[i], params, grads);
      }
      d_resp.row(i) += ProjectBackward(value.grads.z_resp.row(i).transpose(),
                                       resp_proj[i], params, grads);
    }
  }
  if (shared_aug_view) d_ctx += d_aug;
  for (int i = 0; i < b; ++i) {
    EncodeBackward(d_ctx.row(i).transpose(), ctx_cache[i], params, grads);
    if (!shared_aug_view) {
      EncodeBackward(d_aug.row(i).transpose(), aug_cache[i], params, grads);
    }
    EncodeBackward(d_resp.row(i).transpose(), resp_cache[i], params, grads);
  }
  return {value.total, value.ranking, value.contrastive};
}

void TrainFrom(Checkpoint& checkpoint, const std::vector<Dialogue>& dataset,
               const TrainConfig& config, TrainHistory* history,
               const EpochCallback& on_epoch) {
  config.Validate();
  EncoderParams& params = checkpoint.mutable_params();
  EncoderParams grads(params.config());
  AdamState state(params.NumValues());
  const bool shared_view = config.augmentation.kind == AugKind::kNone;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto e = static_cast<std::uint64_t>(epoch);
    std::vector<Batch> batches =
        MakeBatches(dataset, checkpoint.vocab(), config.batch_size,
                    checkpoint.max_ctx(), checkpoint.max_resp(),
                    DeriveSeed(config.seed, 2 * e));
    Rng dropout_rng(DeriveSeed(config.seed, 2 * e + 1));
    const std::uint64_t aug_seed = DeriveSeed(config.augmentation.seed, e);
    double sum = 0.0;
    for (std::size_t k = 0; k < batches.size(); ++k) {
      const Batch batch = AugmentBatch(batches[k], config.augmentation,
                                       checkpoint.vocab(),
                                       DeriveSeed(aug_seed, k));
      const StepLoss step =
          BatchLossAndGradients(params, batch, config.loss, true, &dropout_rng,
                                shared_view, &grads);
      CheckFinite(step, grads, epoch, static_cast<int>(k));
      AdamStep(params.values(), grads.values(), state, config.adam);
      sum += step.total;
      if (history != nullptr) history->step_loss.push_back(step.total);
    }
    const double mean = sum / static_cast<double>(batches.size());
    if (history != nullptr) history->epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
}

Checkpoint Train(const std::vector<Dialogue>& dataset,
                 const TrainConfig& config, TrainHistory* history,
                 const EpochCallback& on_epoch) {
  Checkpoint checkpoint = InitCheckpoint(dataset, config);
  TrainFrom(checkpoint, dataset, config, history, on_epoch);
  if (!config.checkpoint.empty()) checkpoint.Save(config.checkpoint);
  return checkpoint;
}

std::vector<double> RankCandidates(const std::vector<std::string>& context,
                                   const std::vector<std::string>& candidates,
                                   const Checkpoint& checkpoint) {
  if (candidates.size() < 2) {
    throw std::invalid_argument("ranking needs at least 2 candidates");
  }
  const int d = checkpoint.params().config().d_model;
  Matrix ctx(1, d);
  ctx.row(0) = checkpoint.ContextVector(context).transpose();
  Matrix resp(static_cast<Eigen::Index>(candidates.size()), d);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    resp.row(static_cast<Eigen::Index>(k)) =
        checkpoint.ResponseVector(candidates[k]).transpose();
  }
  const Matrix scores = ScoreMatrix(ctx, resp);
  return std::vector<double>(scores.data(), scores.data() + scores.size());
}

}  // namespace dialaug
