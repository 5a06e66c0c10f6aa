#include "pds/random_models.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "pds/errors.hpp"

namespace pds {

WeightVector::WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_(i)) || w_(i) < 0.0) {
      throw InputError("weights must be finite and nonnegative (index " +
                       std::to_string(i) + ")");
    }
  }
}

double WeightVector::normk(int k) const {
  if (k < 1 || k > 12) throw InputError("norm order must be in [1, 12]");
  return w_.array().pow(static_cast<double>(k)).sum();
}

double WeightVector::max_pair_product() const {
  if (w_.size() < 2) return 0.0;
  double hi = 0.0, second = 0.0;
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    const double x = w_(i);
    if (x >= hi) {
      second = hi;
      hi = x;
    } else if (x > second) {
      second = x;
    }
  }
  return hi * second;
}

WeightVector weights_linear(int n) {
  if (n < 1) throw InputError("weights_linear needs n >= 1");
  return WeightVector(Eigen::VectorXd::LinSpaced(n, 1.0, n) / n);
}

WeightVector weights_constant(int n, double c) {
  if (n < 1) throw InputError("weights_constant needs n >= 1");
  if (!(c >= 0.0)) throw InputError("constant weight must be nonnegative");
  return WeightVector(Eigen::VectorXd::Constant(n, c));
}

WeightVector load_weights(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    double x;
    std::string rest;
    if (!(ss >> x) || (ss >> rest)) {
      throw ParseError("expected one real number per line", line_no);
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ParseError("weight must be finite and nonnegative", line_no);
    }
    values.push_back(x);
  }
  if (values.empty()) throw InputError("weight file is empty");
  return WeightVector(Eigen::Map<Eigen::VectorXd>(values.data(),
                                                  static_cast<Eigen::Index>(values.size())));
}

WeightVector load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return load_weights(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line());
  }
}

void ModelParams::validate(const WeightVector& w) const {
  if (n < 1) throw ParameterError("n must be positive");
  if (w.size() != n) {
    throw ParameterError("weight vector length " + std::to_string(w.size()) +
                         " does not match n=" + std::to_string(n));
  }
  if (!(b >= 0.0) || !(a >= b)) throw ParameterError("need a >= b >= 0");
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("r must lie in [0, 1]");
  if ((a / n) * w.max_pair_product() > 1.0) {
    throw ParameterError("edge probability (a/n) max W_i W_j exceeds 1");
  }
}

namespace {

constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(const SeedSpec& seed) {
  std::uint64_t key = splitmix_finalize(seed.master_seed + kGolden);
  key = splitmix_finalize(key ^ (seed.stream + 2 * kGolden));
  key = splitmix_finalize(key ^ (seed.replication_index + 3 * kGolden));
  for (auto& s : s_) {
    key += kGolden;
    s = splitmix_finalize(key);
  }
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

WeightVector weights_uniform(int n, double lo, double hi, const SeedSpec& seed) {
  if (n < 1) throw InputError("weights_uniform needs n >= 1");
  if (!(lo >= 0.0 && hi >= lo)) throw InputError("need 0 <= lo <= hi");
  Rng rng(seed);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = lo + (hi - lo) * rng.uniform();
  return WeightVector(std::move(w));
}

namespace {

// Pairs are visited in (i, j), i < j, lexicographic order so a stream always
// maps to the same graph.
template <typename Prob>
Graph sample_pairs(int n, Rng& rng, Prob&& prob) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < prob(i, j)) edges.emplace_back(i, j);
    }
  }
  return from_edges(n, edges);
}

}  // namespace

Graph sample_null(int n, double p0, const WeightVector& w,
                  const SeedSpec& seed) {
  if (w.size() != n) throw ParameterError("weight vector length must equal n");
  if (!(p0 >= 0.0) || p0 * w.max_pair_product() > 1.0) {
    throw ParameterError("edge probability p0 W_i W_j outside [0, 1]");
  }
  Rng rng(seed);
  const auto& W = w.values();
  return sample_pairs(n, rng, [&](int i, int j) { return p0 * W(i) * W(j); });
}

PlantedSample sample_planted(const ModelParams& params, const WeightVector& w,
                             const SeedSpec& seed) {
  params.validate(w);
  const int n = params.n;
  Rng rng(seed);
  PlantedAssignment z;
  z.z.resize(static_cast<std::size_t>(n));
  for (auto& zi : z.z) zi = rng.uniform() < params.r ? 1 : 0;
  const double inside = params.a / n;
  const double outside = params.b / n;
  const auto& W = w.values();
  Graph g = sample_pairs(n, rng, [&](int i, int j) {
    return W(i) * W(j) * ((z.z[i] && z.z[j]) ? inside : outside);
  });
  return {std::move(g), std::move(z)};
}

double expected_edge_count(const ModelParams& params, const WeightVector& w) {
  params.validate(w);
  const double s1 = w.values().sum();
  const double pair_sum = 0.5 * (s1 * s1 - w.norm2sq());
  return pair_sum * ((params.a - params.b) * params.r * params.r + params.b) /
         params.n;
}

double expected_degree(int i, double p0, const WeightVector& w) {
  const auto n = static_cast<int>(w.size());
  if (i < 1 || i > n) throw InputError("vertex index out of range [1, n]");
  const WeightVector linear = weights_linear(n);
  if (!w.values().isApprox(linear.values(), 1e-12)) {
    throw InputError("expected_degree closed form requires linear weights");
  }
  const double id = i, nd = n;
  return id * p0 / 2.0 + id * p0 / (2.0 * nd) - id * id * p0 / (nd * nd);
}

double expected_degree_by_sum(int i, double p0, const WeightVector& w) {
  const auto n = static_cast<int>(w.size());
  if (i < 1 || i > n) throw InputError("vertex index out of range [1, n]");
  const double wi = w[i - 1];
  return p0 * wi * (w.values().sum() - wi);
}

}  // namespace pds
