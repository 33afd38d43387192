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

#include "dialaug/encoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dialaug {
namespace {

constexpr double kLayerNormEps = 1e-5;

Matrix DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate,
                   Rng& rng) {
  Matrix mask(rows, cols);
  const double keep = 1.0 - rate;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      mask(r, c) = rng.Bernoulli(keep) ? 1.0 / keep : 0.0;
    }
  }
  return mask;
}

// Row-wise LayerNorm; keeps the normalized input and 1/std for backward.
Matrix LayerNorm(const Matrix& x, ConstMatrixMap gain, ConstMatrixMap bias,
                 Matrix* hat, Vector* inv_std) {
  const auto n = x.cols();
  hat->resize(x.rows(), n);
  inv_std->resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var =
        (x.row(r).array() - mean).square().sum() / static_cast<double>(n);
    const double s = 1.0 / std::sqrt(var + kLayerNormEps);
    (*inv_std)(r) = s;
    hat->row(r) = (x.row(r).array() - mean) * s;
  }
  Matrix y = hat->array().rowwise() * gain.row(0).array();
  y.rowwise() += bias.row(0);
  return y;
}

Matrix LayerNormBackward(const Matrix& dy, const Matrix& hat,
                         const Vector& inv_std, ConstMatrixMap gain,
                         MatrixMap d_gain, MatrixMap d_bias) {
  d_gain.row(0) += (dy.array() * hat.array()).colwise().sum().matrix();
  d_bias.row(0) += dy.colwise().sum();
  const Matrix d_hat = dy.array().rowwise() * gain.row(0).array();
  const double n = static_cast<double>(dy.cols());
  Matrix dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double mean_d = d_hat.row(r).sum() / n;
    const double mean_dh = d_hat.row(r).dot(hat.row(r)) / n;
    dx.row(r) = inv_std(r) * (d_hat.row(r).array() - mean_d -
                              hat.row(r).array() * mean_dh);
  }
  return dx;
}

constexpr double kGeluC = 0.7978845608028654;  // sqrt(2 / pi)

double Gelu(double x) {
  return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + 0.044715 * x * x * x)));
}

double GeluGrad(double x) {
  const double t = std::tanh(kGeluC * (x + 0.044715 * x * x * x));
  return 0.5 * (1.0 + t) +
         0.5 * x * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * 0.044715 * x * x);
}

// X * W + b with b stored as a 1 x n tensor.
Matrix Affine(const Matrix& x, ConstMatrixMap w, ConstMatrixMap b) {
  Matrix y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

void AffineBackward(const Matrix& x, const Matrix& dy, MatrixMap d_w,
                    MatrixMap d_b) {
  d_w.noalias() += x.transpose() * dy;
  d_b.row(0) += dy.colwise().sum();
}

}  // namespace

void EncoderConfig::Validate() const {
  if (vocab_size < 1) throw std::invalid_argument("vocab_size must be >= 1");
  if (d_model < 1) throw std::invalid_argument("d_model must be >= 1");
  if (n_layers < 0) throw std::invalid_argument("n_layers must be >= 0");
  if (n_heads < 1) throw std::invalid_argument("n_heads must be >= 1");
  if (d_ffn < 1) throw std::invalid_argument("d_ffn must be >= 1");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (proj_dim < 1) throw std::invalid_argument("proj_dim must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw std::invalid_argument("dropout must be in [0, 1)");
  }
  if (d_model % n_heads != 0) {
    throw std::invalid_argument("d_model divisible by n_heads violated: " +
                                std::to_string(d_model) + " % " +
                                std::to_string(n_heads) + " != 0");
  }
}

nlohmann::ordered_json ConfigToJson(const EncoderConfig& c) {
  nlohmann::ordered_json j;
  j["vocab_size"] = c.vocab_size;
  j["d_model"] = c.d_model;
  j["n_layers"] = c.n_layers;
  j["n_heads"] = c.n_heads;
  j["d_ffn"] = c.d_ffn;
  j["max_len"] = c.max_len;
  j["dropout"] = c.dropout;
  j["proj_dim"] = c.proj_dim;
  j["seed"] = c.seed;
  return j;
}

EncoderConfig ConfigFromJson(const nlohmann::json& j) {
  EncoderConfig c;
  c.vocab_size = j.at("vocab_size").get<int>();
  c.d_model = j.at("d_model").get<int>();
  c.n_layers = j.at("n_layers").get<int>();
  c.n_heads = j.at("n_heads").get<int>();
  c.d_ffn = j.at("d_ffn").get<int>();
  c.max_len = j.at("max_len").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.proj_dim = j.at("proj_dim").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.Validate();
  return c;
}

EncoderParams::EncoderParams(const EncoderConfig& config) : config_(config) {
  config_.Validate();
  const int d = config_.d_model;
  const int f = config_.d_ffn;
  token_embedding_ = Add("token_embedding", config_.vocab_size, d);
  position_embedding_ = Add("position_embedding", config_.max_len, d);
  for (int l = 0; l < config_.n_layers; ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    Block b{};
    b.wq = Add(p + "attention.query.weight", d, d);
    b.bq = Add(p + "attention.query.bias", 1, d);
    b.wk = Add(p + "attention.key.weight", d, d);
    b.bk = Add(p + "attention.key.bias", 1, d);
    b.wv = Add(p + "attention.value.weight", d, d);
    b.bv = Add(p + "attention.value.bias", 1, d);
    b.wo = Add(p + "attention.output.weight", d, d);
    b.bo = Add(p + "attention.output.bias", 1, d);
    b.ln1_gain = Add(p + "attention.layer_norm.gain", 1, d);
    b.ln1_bias = Add(p + "attention.layer_norm.bias", 1, d);
    b.w1 = Add(p + "ffn.dense1.weight", d, f);
    b.b1 = Add(p + "ffn.dense1.bias", 1, f);
    b.w2 = Add(p + "ffn.dense2.weight", f, d);
    b.b2 = Add(p + "ffn.dense2.bias", 1, d);
    b.ln2_gain = Add(p + "ffn.layer_norm.gain", 1, d);
    b.ln2_bias = Add(p + "ffn.layer_norm.bias", 1, d);
    blocks_.push_back(b);
  }
  proj_w1_ = Add("projection.dense1.weight", d, d);
  proj_b1_ = Add("projection.dense1.bias", 1, d);
  proj_w2_ = Add("projection.dense2.weight", d, config_.proj_dim);
  proj_b2_ = Add("projection.dense2.bias", 1, config_.proj_dim);
  values_.assign(tensors_.empty() ? 0 : tensors_.back().offset +
                                            tensors_.back().Size(),
                 0.0);
}

int EncoderParams::Add(const std::string& name, int rows, int cols) {
  TensorSpec t;
  t.name = name;
  t.rows = rows;
  t.cols = cols;
  t.offset = tensors_.empty() ? 0 : tensors_.back().offset + tensors_.back().Size();
  tensors_.push_back(t);
  return static_cast<int>(tensors_.size()) - 1;
}

int EncoderParams::FindTensor(const std::string& name) const {
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    if (tensors_[i].name == name) return static_cast<int>(i);
  }
  throw std::out_of_range("no tensor named " + name);
}

MatrixMap EncoderParams::Tensor(int index) {
  const TensorSpec& t = tensors_.at(index);
  return MatrixMap(values_.data() + t.offset, t.rows, t.cols);
}

ConstMatrixMap EncoderParams::Tensor(int index) const {
  const TensorSpec& t = tensors_.at(index);
  return ConstMatrixMap(values_.data() + t.offset, t.rows, t.cols);
}

void EncoderParams::SetZero() { std::fill(values_.begin(), values_.end(), 0.0); }

bool EncoderParams::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

nlohmann::ordered_json EncoderParams::ToJson() const {
  nlohmann::ordered_json j;
  j["config"] = ConfigToJson(config_);
  nlohmann::ordered_json tensors = nlohmann::ordered_json::array();
  for (const TensorSpec& t : tensors_) {
    nlohmann::ordered_json entry;
    entry["name"] = t.name;
    entry["shape"] = {t.rows, t.cols};
    entry["data"] = std::vector<double>(values_.begin() + t.offset,
                                        values_.begin() + t.offset + t.Size());
    tensors.push_back(std::move(entry));
  }
  j["tensors"] = std::move(tensors);
  return j;
}

EncoderParams EncoderParams::FromJson(const nlohmann::json& j) {
  EncoderParams params(ConfigFromJson(j.at("config")));
  const auto& tensors = j.at("tensors");
  if (tensors.size() != params.tensors_.size()) {
    throw std::runtime_error("checkpoint has " +
                             std::to_string(tensors.size()) +
                             " tensors, config implies " +
                             std::to_string(params.tensors_.size()));
  }
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const TensorSpec& t = params.tensors_[i];
    const auto& entry = tensors[i];
    const std::string name = entry.at("name").get<std::string>();
    const auto shape = entry.at("shape").get<std::vector<int>>();
    const auto data = entry.at("data").get<std::vector<double>>();
    if (name != t.name || shape.size() != 2 || shape[0] != t.rows ||
        shape[1] != t.cols || data.size() != t.Size()) {
      throw std::runtime_error("checkpoint tensor " + name +
                               " does not match expected " + t.name + " [" +
                               std::to_string(t.rows) + ", " +
                               std::to_string(t.cols) + "]");
    }
    std::copy(data.begin(), data.end(), params.values_.begin() + t.offset);
  }
  return params;
}

EncoderParams InitParams(const EncoderConfig& config) {
  EncoderParams params(config);
  Rng rng(config.seed);
  for (int i = 0; i < static_cast<int>(params.tensors().size()); ++i) {
    const TensorSpec& t = params.tensors()[i];
    MatrixMap m = params.Tensor(i);
    const bool is_gain = t.name.ends_with(".gain");
    const bool is_bias = t.name.ends_with(".bias");
    if (is_gain) {
      m.setOnes();
    } else if (is_bias) {
      m.setZero();
    } else {
      const bool embedding = t.name.ends_with("_embedding");
      const double fan_in = embedding ? config.d_model : t.rows;
      const double scale = 1.0 / std::sqrt(fan_in);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          m(r, c) = scale * rng.Normal();
        }
      }
    }
  }
  return params;
}

Vector Encode(const TokenSequence& seq, const EncoderParams& params,
              bool train_mode, Rng* rng, EncodeCache* cache) {
  const EncoderConfig& config = params.config();
  if (seq.Length() > config.max_len) {
    throw std::invalid_argument("sequence longer than encoder max_len");
  }
  if (seq.ids.empty()) throw std::invalid_argument("empty sequence");
  int len = 0;
  for (int p = 0; p < seq.Length(); ++p) {
    const int id = seq.ids[p];
    if (id < 0 || id >= config.vocab_size) {
      throw std::invalid_argument("token id " + std::to_string(id) +
                                  " out of range");
    }
    if (id != kPadId) len = p + 1;
  }
  len = std::max(len, 1);
  const bool dropout = train_mode && config.dropout > 0.0;
  if (dropout && rng == nullptr) {
    throw std::invalid_argument("train-mode dropout needs a generator");
  }

  EncodeCache local;
  EncodeCache& c = cache != nullptr ? *cache : local;
  c = EncodeCache();
  c.ids.assign(seq.ids.begin(), seq.ids.begin() + len);
  c.key_valid.resize(len);
  for (int p = 0; p < len; ++p) c.key_valid[p] = c.ids[p] != kPadId;

  const int d = config.d_model;
  const ConstMatrixMap tok = params.Tensor(params.token_embedding());
  const ConstMatrixMap pos = params.Tensor(params.position_embedding());
  Matrix x(len, d);
  for (int p = 0; p < len; ++p) x.row(p) = tok.row(c.ids[p]) + pos.row(p);
  if (dropout) {
    c.embed_dropout = DropoutMask(len, d, config.dropout, *rng);
    x.array() *= c.embed_dropout.array();
  }

  const int heads = config.n_heads;
  const int dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  for (const EncoderParams::Block& b : params.blocks()) {
    EncodeCache::LayerCache lc;
    lc.x_in = x;
    lc.q = Affine(x, params.Tensor(b.wq), params.Tensor(b.bq));
    lc.k = Affine(x, params.Tensor(b.wk), params.Tensor(b.bk));
    lc.v = Affine(x, params.Tensor(b.wv), params.Tensor(b.bv));
    lc.heads.resize(len, d);
    for (int h = 0; h < heads; ++h) {
      Matrix s = lc.q.middleCols(h * dh, dh) *
                 lc.k.middleCols(h * dh, dh).transpose() * scale;
      for (int r = 0; r < len; ++r) {
        double m = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < len; ++k) {
          if (c.key_valid[k]) m = std::max(m, s(r, k));
        }
        double sum = 0.0;
        for (int k = 0; k < len; ++k) {
          s(r, k) = c.key_valid[k] ? std::exp(s(r, k) - m) : 0.0;
          sum += s(r, k);
        }
        s.row(r) /= sum;
      }
      lc.heads.middleCols(h * dh, dh) = s * lc.v.middleCols(h * dh, dh);
      lc.probs.push_back(std::move(s));
    }
    Matrix attn = Affine(lc.heads, params.Tensor(b.wo), params.Tensor(b.bo));
    if (dropout) {
      lc.attn_dropout = DropoutMask(len, d, config.dropout, *rng);
      attn.array() *= lc.attn_dropout.array();
    }
    lc.h1 = LayerNorm(x + attn, params.Tensor(b.ln1_gain),
                      params.Tensor(b.ln1_bias), &lc.ln1_hat, &lc.ln1_inv_std);
    lc.ffn_pre = Affine(lc.h1, params.Tensor(b.w1), params.Tensor(b.b1));
    lc.ffn_act = lc.ffn_pre.unaryExpr([](double v) { return Gelu(v); });
    Matrix ffn = Affine(lc.ffn_act, params.Tensor(b.w2), params.Tensor(b.b2));
    if (dropout) {
      lc.ffn_dropout = DropoutMask(len, d, config.dropout, *rng);
      ffn.array() *= lc.ffn_dropout.array();
    }
    x = LayerNorm(lc.h1 + ffn, params.Tensor(b.ln2_gain),
                  params.Tensor(b.ln2_bias), &lc.ln2_hat, &lc.ln2_inv_std);
    c.layers.push_back(std::move(lc));
  }
  c.valid = true;
  return x.row(0).transpose();
}

void EncodeBackward(const Vector& d_cls, const EncodeCache& cache,
                    const EncoderParams& params, EncoderParams* grads) {
  if (!cache.valid) throw std::logic_error("backward without a forward cache");
  if (grads == nullptr || grads->NumValues() != params.NumValues()) {
    throw std::invalid_argument("gradient buffer does not match parameters");
  }
  const EncoderConfig& config = params.config();
  const int d = config.d_model;
  const int len = static_cast<int>(cache.ids.size());
  if (d_cls.size() != d) throw std::invalid_argument("d_cls width mismatch");

  Matrix dx = Matrix::Zero(len, d);
  dx.row(0) = d_cls.transpose();

  const int heads = config.n_heads;
  const int dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  for (int l = config.n_layers - 1; l >= 0; --l) {
    const EncoderParams::Block& b = params.blocks()[l];
    const EncodeCache::LayerCache& lc = cache.layers[l];

    const Matrix d_r2 = LayerNormBackward(
        dx, lc.ln2_hat, lc.ln2_inv_std, params.Tensor(b.ln2_gain),
        grads->Tensor(b.ln2_gain), grads->Tensor(b.ln2_bias));
    Matrix d_h1 = d_r2;
    Matrix d_ffn = d_r2;
    if (lc.ffn_dropout.size() > 0) d_ffn.array() *= lc.ffn_dropout.array();
    AffineBackward(lc.ffn_act, d_ffn, grads->Tensor(b.w2), grads->Tensor(b.b2));
    Matrix d_pre = d_ffn * params.Tensor(b.w2).transpose();
    d_pre.array() *=
        lc.ffn_pre.unaryExpr([](double v) { return GeluGrad(v); }).array();
    AffineBackward(lc.h1, d_pre, grads->Tensor(b.w1), grads->Tensor(b.b1));
    d_h1.noalias() += d_pre * params.Tensor(b.w1).transpose();

    const Matrix d_r1 = LayerNormBackward(
        d_h1, lc.ln1_hat, lc.ln1_inv_std, params.Tensor(b.ln1_gain),
        grads->Tensor(b.ln1_gain), grads->Tensor(b.ln1_bias));
    Matrix d_in = d_r1;
    Matrix d_attn = d_r1;
    if (lc.attn_dropout.size() > 0) d_attn.array() *= lc.attn_dropout.array();
    AffineBackward(lc.heads, d_attn, grads->Tensor(b.wo), grads->Tensor(b.bo));
    const Matrix d_heads = d_attn * params.Tensor(b.wo).transpose();

    Matrix d_q(len, d), d_k(len, d), d_v(len, d);
    for (int h = 0; h < heads; ++h) {
      const Matrix& p = lc.probs[h];
      const auto d_o = d_heads.middleCols(h * dh, dh);
      d_v.middleCols(h * dh, dh) = p.transpose() * d_o;
      const Matrix d_p = d_o * lc.v.middleCols(h * dh, dh).transpose();
      Matrix d_s = p.array() * (d_p.array().colwise() -
                                (d_p.array() * p.array()).rowwise().sum());
      d_s *= scale;
      d_q.middleCols(h * dh, dh) = d_s * lc.k.middleCols(h * dh, dh);
      d_k.middleCols(h * dh, dh) = d_s.transpose() * lc.q.middleCols(h * dh, dh);
    }
    AffineBackward(lc.x_in, d_q, grads->Tensor(b.wq), grads->Tensor(b.bq));
    AffineBackward(lc.x_in, d_k, grads->Tensor(b.wk), grads->Tensor(b.bk));
    AffineBackward(lc.x_in, d_v, grads->Tensor(b.wv), grads->Tensor(b.bv));
    d_in.noalias() += d_q * params.Tensor(b.wq).transpose();
    d_in.noalias() += d_k * params.Tensor(b.wk).transpose();
    d_in.noalias() += d_v * params.Tensor(b.wv).transpose();
    dx = std::move(d_in);
  }

  if (cache.embed_dropout.size() > 0) dx.array() *= cache.embed_dropout.array();
  MatrixMap d_tok = grads->Tensor(params.token_embedding());
  MatrixMap d_pos = grads->Tensor(params.position_embedding());
  for (int p = 0; p < len; ++p) {
    d_tok.row(cache.ids[p]) += dx.row(p);
    d_pos.row(p) += dx.row(p);
  }
}

Vector Project(const Vector& cls, const EncoderParams& params,
               ProjectCache* cache) {
  const EncoderConfig& config = params.config();
  if (cls.size() != config.d_model) {
    throw std::invalid_argument("project: input width " +
                                std::to_string(cls.size()) + " != d_model " +
                                std::to_string(config.d_model));
  }
  const Vector pre = params.Tensor(params.proj_w1()).transpose() * cls +
                     params.Tensor(params.proj_b1()).row(0).transpose();
  const Vector hidden = pre.cwiseMax(0.0);
  Vector z = params.Tensor(params.proj_w2()).transpose() * hidden +
             params.Tensor(params.proj_b2()).row(0).transpose();
  if (cache != nullptr) {
    cache->valid = true;
    cache->input = cls;
    cache->hidden_pre = pre;
  }
  return z;
}

Vector ProjectBackward(const Vector& d_z, const ProjectCache& cache,
                       const EncoderParams& params, EncoderParams* grads) {
  if (!cache.valid) throw std::logic_error("backward without a forward cache");
  const EncoderConfig& config = params.config();
  if (d_z.size() != config.proj_dim) {
    throw std::invalid_argument("project backward: width mismatch");
  }
  const Vector hidden = cache.hidden_pre.cwiseMax(0.0);
  grads->Tensor(params.proj_w2()).noalias() += hidden * d_z.transpose();
  grads->Tensor(params.proj_b2()).row(0) += d_z.transpose();
  Vector d_hidden = params.Tensor(params.proj_w2()) * d_z;
  for (Eigen::Index i = 0; i < d_hidden.size(); ++i) {
    if (cache.hidden_pre(i) <= 0.0) d_hidden(i) = 0.0;
  }
  grads->Tensor(params.proj_w1()).noalias() += cache.input * d_hidden.transpose();
  grads->Tensor(params.proj_b1()).row(0) += d_hidden.transpose();
  return params.Tensor(params.proj_w1()) * d_hidden;
}

}  // namespace dialaug
