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

#include "vrd/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace vrd::sampler {

VirtualOperation::VirtualOperation(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("VirtualOperation: no terms");
    double sum = 0.0;
    for (const auto &t : terms_) {
        if (t.channel.input_dim() != terms_.front().channel.input_dim() ||
            t.channel.output_dim() != terms_.front().channel.output_dim())
            throw std::invalid_argument("VirtualOperation: inconsistent channel dimensions");
        sum += t.weight;
        if (t.weight >= 0.0)
            lambda_plus_ += t.weight;
        else
            lambda_minus_ -= t.weight;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("VirtualOperation: weights must sum to 1 within 1e-10");
}

double exact_expectation(const VirtualOperation &vop, const DensityMatrix &rho,
                         const Observable &m, const std::optional<QuantumChannel> &pre_channel) {
    if (vop.input_dim() != rho.dim())
        throw std::invalid_argument("exact_expectation: dimension mismatch");
    double value = 0.0;
    for (const auto &term : vop.terms()) {
        DensityMatrix out = qmath::apply_channel(term.channel, rho);
        if (pre_channel) out = qmath::apply_channel(*pre_channel, out);
        if (out.dim() != m.dim())
            throw std::invalid_argument("exact_expectation: observable dimension mismatch");
        value += term.weight * qmath::hs_inner(m.matrix(), out.matrix());
    }
    return value;
}

double pairwise_sum(const std::vector<double> &values) {
    // Fixed block decomposition; the tree shape depends only on the length.
    constexpr std::size_t kBlock = 64;
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    std::vector<double> partial;
    partial.reserve((n + kBlock - 1) / kBlock);
    for (std::size_t start = 0; start < n; start += kBlock) {
        double s = 0.0;
        const std::size_t end = std::min(n, start + kBlock);
        for (std::size_t i = start; i < end; ++i) s += values[i];
        partial.push_back(s);
    }
    while (partial.size() > 1) {
        std::vector<double> next;
        next.reserve((partial.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partial.size(); i += 2)
            next.push_back(partial[i] + partial[i + 1]);
        if (partial.size() % 2 == 1) next.push_back(partial.back());
        partial = std::move(next);
    }
    return partial.front();
}

EstimateReport estimate(const VirtualOperation &vop, const DensityMatrix &rho,
                        const Observable &m, const SamplerConfig &cfg,
                        const std::optional<QuantumChannel> &pre_channel, int threads) {
    if (cfg.n_samples < 1) throw std::invalid_argument("estimate: n_samples must be >= 1");
    if (!(cfg.beta > 0.0) || !(cfg.delta > 0.0) || !(cfg.delta < 1.0))
        throw std::invalid_argument("estimate: invalid beta/delta");
    if (vop.input_dim() != rho.dim())
        throw std::invalid_argument("estimate: dimension mismatch");

    const double overhead = vop.overhead();
    const auto &eig = m.eigensystem();
    const int d = m.dim();

    // Per-term selection probabilities |w|/C, signs, and Born distributions
    // over the observable eigenbasis. Everything shot-independent is
    // precomputed; a shot is two uniform draws.
    struct TermDist {
        double select_cum;
        double sign;
        std::vector<double> born_cum;
    };
    std::vector<TermDist> dists;
    double cum = 0.0;
    for (const auto &term : vop.terms()) {
        DensityMatrix out = qmath::apply_channel(term.channel, rho);
        if (pre_channel) out = qmath::apply_channel(*pre_channel, out);
        if (out.dim() != d) throw std::invalid_argument("estimate: observable dimension mismatch");
        TermDist td;
        cum += std::abs(term.weight) / overhead;
        td.select_cum = cum;
        td.sign = term.weight >= 0.0 ? 1.0 : -1.0;
        td.born_cum.resize(d);
        double bc = 0.0;
        for (int a = 0; a < d; ++a) {
            // Born probability <v_a| out |v_a>.
            qmath::Complex val = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    val += std::conj(eig.eigenvectors(i, a)) * out.matrix()(i, j) *
                           eig.eigenvectors(j, a);
            bc += std::max(val.real(), 0.0);
            td.born_cum[a] = bc;
        }
        // Normalize away roundoff so the last bucket always closes at 1.
        for (double &x : td.born_cum) x /= bc;
        dists.push_back(std::move(td));
    }
    dists.back().select_cum = 1.0;

    std::vector<double> values(static_cast<std::size_t>(cfg.n_samples));
    auto run_range = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            SplitMix64 rng{cfg.seed + (static_cast<std::uint64_t>(i) + 1) *
                                          0x9E3779B97F4A7C15ULL};
            const double u_term = rng.uniform();
            std::size_t t = 0;
            while (t + 1 < dists.size() && u_term >= dists[t].select_cum) ++t;
            const double u_out = rng.uniform();
            const auto &bc = dists[t].born_cum;
            std::size_t a = 0;
            while (a + 1 < bc.size() && u_out >= bc[a]) ++a;
            values[static_cast<std::size_t>(i)] =
                overhead * dists[t].sign * eig.eigenvalues[a];
        }
    };

    if (threads <= 1 || cfg.n_samples < 4096) {
        run_range(0, cfg.n_samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (cfg.n_samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min<long>(cfg.n_samples, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto &th : pool) th.join();
    }

    EstimateReport rep;
    rep.n_samples = cfg.n_samples;
    rep.mean = pairwise_sum(values) / static_cast<double>(cfg.n_samples);
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dlt = values[i] - rep.mean;
        sq[i] = dlt * dlt;
    }
    const double var =
        cfg.n_samples > 1 ? pairwise_sum(sq) / static_cast<double>(cfg.n_samples - 1) : 0.0;
    rep.std_error = std::sqrt(var / static_cast<double>(cfg.n_samples));
    rep.exact = exact_expectation(vop, rho, m, pre_channel);
    rep.hoeffding_bound =
        overhead * std::sqrt(std::log(2.0 / cfg.delta) / (2.0 * static_cast<double>(cfg.n_samples)));
    return rep;
}

long required_samples(double overhead, double beta, double delta) {
    if (overhead < 1.0) throw std::invalid_argument("required_samples: overhead must be >= 1");
    if (!(beta > 0.0) || !(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("required_samples: invalid beta/delta");
    return static_cast<long>(
        std::ceil(overhead * overhead * std::log(2.0 / delta) / (2.0 * beta * beta)));
}

}  // namespace vrd::sampler
