#include "lingam/bootstrap.hpp"

#include <algorithm>

#include "lingam/direct_lingam.hpp"
#include "lingam/parallel.hpp"
#include "lingam/rng.hpp"

namespace lingam {

namespace {

void validate(const Dataset& data, const CausalOrder& order, const BootstrapConfig& cfg) {
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0, 1)");
    if (cfg.resamples < 100) throw Error(ErrorCode::InvalidArgument, "resamples must be >= 100");
    if (cfg.max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "max_attempts must be >= 1");
    if (order.size() != data.p()) {
        throw Error(ErrorCode::InvalidPermutation, "order does not match the dataset's variable count");
    }
}

bool is_singular(ErrorCode code) {
    return code == ErrorCode::ZeroVarianceRow || code == ErrorCode::SingularDesign;
}

}  // namespace

BootstrapDistribution bootstrap_distribution(const Dataset& data, const CausalOrder& order,
                                             const BootstrapConfig& cfg, unsigned threads) {
    validate(data, order, cfg);
    const ConnectionMatrix point = estimate_strengths(data, order);

    BootstrapDistribution dist;
    for (std::size_t k = 1; k < order.size(); ++k) {
        for (std::size_t l = 0; l < k; ++l) {
            EdgeInterval edge;
            edge.i = order[k];
            edge.j = order[l];
            edge.point = point(edge.i, edge.j);
            dist.edges.push_back(edge);
        }
    }

    const auto p = static_cast<Eigen::Index>(data.p());
    const auto n = static_cast<Eigen::Index>(data.n());
    std::vector<std::vector<double>> by_resample(cfg.resamples);
    std::vector<std::size_t> redraws(cfg.resamples, 0);

    parallel_for(cfg.resamples, threads, [&](std::size_t b) {
        Rng rng(derive_seed(cfg.seed, b));
        std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
        for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
            DataMatrix resample(p, n);
            for (Eigen::Index c = 0; c < n; ++c) resample.col(c) = data.values().col(pick(rng));
            try {
                const ConnectionMatrix est = estimate_strengths(Dataset::center(std::move(resample)), order);
                auto& coefs = by_resample[b];
                coefs.reserve(dist.edges.size());
                for (const auto& edge : dist.edges) coefs.push_back(est(edge.i, edge.j));
                return;
            } catch (const Error& e) {
                if (!is_singular(e.code())) throw;
                ++redraws[b];
            }
        }
        throw Error(ErrorCode::TooManySingularResamples,
                    "resample " + std::to_string(b) + " was singular " + std::to_string(cfg.max_attempts) +
                        " times in a row");
    });

    dist.samples.assign(dist.edges.size(), std::vector<double>(cfg.resamples));
    for (std::size_t b = 0; b < cfg.resamples; ++b) {
        for (std::size_t e = 0; e < dist.edges.size(); ++e) dist.samples[e][b] = by_resample[b][e];
        dist.redraws += redraws[b];
    }
    for (auto& s : dist.samples) std::sort(s.begin(), s.end());
    return dist;
}

std::vector<EdgeInterval> percentile_intervals(const BootstrapDistribution& dist, double level) {
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0, 1)");
    const double tail = (1.0 - level) / 2.0;
    std::vector<EdgeInterval> out = dist.edges;
    for (std::size_t e = 0; e < out.size(); ++e) {
        out[e].lower = quantile_sorted(dist.samples[e], tail);
        out[e].upper = quantile_sorted(dist.samples[e], 1.0 - tail);
        out[e].significant = out[e].lower > 0.0 || out[e].upper < 0.0;
    }
    return out;
}

BootstrapResult bootstrap_cis(const Dataset& data, const CausalOrder& order, const BootstrapConfig& cfg,
                              unsigned threads) {
    const BootstrapDistribution dist = bootstrap_distribution(data, order, cfg, threads);
    return BootstrapResult{percentile_intervals(dist, cfg.level), dist.redraws};
}

}  // namespace lingam
