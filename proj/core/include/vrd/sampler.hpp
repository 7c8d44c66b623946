// Copyright 2026 The vrdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Monte Carlo realization of virtual operations. Each shot draws one term
 * of the signed mixture with probability |weight|/C, applies its channel,
 * samples a projective outcome of the observable, and reweights by
 * C * sign(weight). The shot mean is an unbiased estimator of
 * tr[M Lambda~(rho)], at the cost of a C^2 blowup in sample count.
 *
 * Randomness: a SplitMix64 stream per shot, seeded as
 * state = seed + (shot_index + 1) * 0x9E3779B97F4A7C15, so shots are
 * reproducible independently of evaluation order and thread count. The
 * final mean uses fixed-shape pairwise summation for the same reason.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vrd/states.hpp"

namespace vrd::sampler {

using qmath::DensityMatrix;
using qmath::Observable;
using qmath::QuantumChannel;

/// Signed mixture of channels with weights summing to one. The sampling
/// overhead is C = sum |weight| >= 1.
class VirtualOperation {
  public:
    struct Term {
        double weight;
        QuantumChannel channel;
    };

    explicit VirtualOperation(std::vector<Term> terms);

    const std::vector<Term> &terms() const { return terms_; }
    double lambda_plus() const { return lambda_plus_; }
    double lambda_minus() const { return lambda_minus_; }
    double overhead() const { return lambda_plus_ + lambda_minus_; }
    int input_dim() const { return terms_.front().channel.input_dim(); }
    int output_dim() const { return terms_.front().channel.output_dim(); }

  private:
    std::vector<Term> terms_;
    double lambda_plus_ = 0.0;
    double lambda_minus_ = 0.0;
};

struct SamplerConfig {
    long n_samples = 1;
    std::uint64_t seed = 0;
    double beta = 0.1;    ///< target accuracy of the Hoeffding bound
    double delta = 0.05;  ///< failure probability of the Hoeffding bound
};

struct EstimateReport {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    std::optional<double> exact;
    /// C * sqrt(ln(2/delta) / (2 n)): the two-sided Hoeffding radius at the
    /// config's delta for shot values in [-C, C].
    double hoeffding_bound = 0.0;
};

/// tr[M Lambda~(rho)] evaluated term by term; the deterministic oracle the
/// estimator is checked against.
double exact_expectation(const VirtualOperation &vop, const DensityMatrix &rho,
                         const Observable &m,
                         const std::optional<QuantumChannel> &pre_channel = std::nullopt);

/// Monte Carlo estimate of tr[M Lambda~(rho)]. Deterministic for a fixed
/// config seed; `threads` only parallelizes shot evaluation and never
/// changes the result.
EstimateReport estimate(const VirtualOperation &vop, const DensityMatrix &rho,
                        const Observable &m, const SamplerConfig &cfg,
                        const std::optional<QuantumChannel> &pre_channel = std::nullopt,
                        int threads = 1);

/// ceil(C^2 ln(2/delta) / (2 beta^2)): shots guaranteeing accuracy beta with
/// failure probability at most delta (two-sided Hoeffding convention).
long required_samples(double overhead, double beta, double delta);

/// SplitMix64; the per-shot generator documented above.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Fixed-shape pairwise sum (blocks of 64); independent of traversal order.
double pairwise_sum(const std::vector<double> &values);

}  // namespace vrd::sampler
