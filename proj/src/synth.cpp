#include "lingam/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lingam {

namespace {

void check_interval(const Interval& range, const char* name) {
    if (!(range.lo > 0.0) || !(range.lo <= range.hi)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a positive, ordered interval");
    }
}

double uniform(Rng& rng, const Interval& range) {
    return std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
}

}  // namespace

std::string_view to_string(NetworkKind kind) noexcept {
    switch (kind) {
        case NetworkKind::dense: return "dense";
        case NetworkKind::sparse: return "sparse";
        case NetworkKind::random: return "random";
    }
    return "random";
}

NetworkKind parse_network_kind(std::string_view text) {
    if (text == "dense") return NetworkKind::dense;
    if (text == "sparse") return NetworkKind::sparse;
    if (text == "random") return NetworkKind::random;
    throw Error(ErrorCode::InvalidArgument, "unknown network kind '" + std::string(text) + "'");
}

void SynthConfig::validate() const {
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
    check_interval(parent_std_range, "parent_std_range");
    check_interval(noise_std_range, "noise_std_range");
    check_interval(q_ranges[0], "q_ranges[0]");
    check_interval(q_ranges[1], "q_ranges[1]");
    if (!(min_edge_magnitude >= 0.0 && min_edge_magnitude < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "min_edge_magnitude must lie in [0, 1)");
    }
    if (!(sparse_edge_probability > 0.0 && sparse_edge_probability <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "sparse_edge_probability must lie in (0, 1]");
    }
}

ConnectionMatrix GroundTruthModel::emitted_b() const { return permute_matrix(b_true, shuffle); }

CausalOrder GroundTruthModel::emitted_order() const { return shuffle.inverse(); }

GroundTruthModel random_model(const SynthConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t p = cfg.p;
    const auto sz = static_cast<Eigen::Index>(p);

    NetworkKind kind = cfg.network;
    if (kind == NetworkKind::random) {
        kind = std::bernoulli_distribution(0.5)(rng) ? NetworkKind::dense : NetworkKind::sparse;
    }

    Matrix b = Matrix::Zero(sz, sz);
    std::bernoulli_distribution keep(cfg.sparse_edge_probability);
    std::size_t edges = 0;
    for (Eigen::Index i = 1; i < sz; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (kind == NetworkKind::dense || keep(rng)) {
                b(i, j) = 1.0;
                ++edges;
            }
        }
    }
    if (p >= 2 && edges == 0) {
        const std::size_t slots = p * (p - 1) / 2;
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, slots - 1)(rng);
        for (Eigen::Index i = 1; i < sz; ++i) {
            if (pick < static_cast<std::size_t>(i)) {
                b(i, static_cast<Eigen::Index>(pick)) = 1.0;
                break;
            }
            pick -= static_cast<std::size_t>(i);
        }
    }

    std::uniform_real_distribution<double> magnitude(cfg.min_edge_magnitude, 1.0);
    std::bernoulli_distribution negative(0.5);
    for (Eigen::Index i = 1; i < sz; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (b(i, j) != 0.0) b(i, j) = (negative(rng) ? -1.0 : 1.0) * magnitude(rng);
        }
    }

    // Rescale each row so its parent contribution has the drawn standard
    // deviation, tracking cov(x) in generation order.
    GroundTruthModel model;
    model.noise_stds.resize(sz);
    Matrix cov = Matrix::Zero(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i) {
        model.noise_stds(i) = uniform(rng, cfg.noise_std_range);
        double parent_var = 0.0;
        if (i > 0 && b.row(i).head(i).squaredNorm() > 0.0) {
            const Vector w = b.row(i).head(i).transpose();
            const double provisional = w.dot(cov.topLeftCorner(i, i) * w);
            const double target = uniform(rng, cfg.parent_std_range);
            b.row(i).head(i) *= target / std::sqrt(provisional);
            parent_var = target * target;
            const Vector cross = cov.topLeftCorner(i, i) * b.row(i).head(i).transpose();
            cov.row(i).head(i) = cross.transpose();
            cov.col(i).head(i) = cross;
        }
        cov(i, i) = parent_var + model.noise_stds(i) * model.noise_stds(i);
    }
    model.b_true = ConnectionMatrix(std::move(b));

    model.exponents.resize(sz);
    std::bernoulli_distribution second_range(0.5);
    for (Eigen::Index i = 0; i < sz; ++i) {
        model.exponents(i) = uniform(rng, cfg.q_ranges[second_range(rng) ? 1 : 0]);
    }

    std::vector<std::size_t> shuffle(p);
    std::iota(shuffle.begin(), shuffle.end(), 0);
    std::shuffle(shuffle.begin(), shuffle.end(), rng);
    model.shuffle = CausalOrder(std::move(shuffle));
    return model;
}

std::vector<double> sample_non_gaussian(std::size_t n, double q, Rng& rng) {
    if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent q must be > 0");
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> e(n);
    for (double& v : e) {
        const double z = normal(rng);
        v = std::copysign(std::pow(std::abs(z), q), z);
    }
    const double mu = mean(e);
    const double sd = std::sqrt(variance(e));
    for (double& v : e) v = (v - mu) / sd;
    return e;
}

StructuralSample sample_structural(const GroundTruthModel& model, std::size_t n, Rng& rng) {
    const auto p = static_cast<Eigen::Index>(model.b_true.size());
    const auto cols = static_cast<Eigen::Index>(n);
    StructuralSample out;
    out.noise.resize(p, cols);
    for (Eigen::Index i = 0; i < p; ++i) {
        const auto e = sample_non_gaussian(n, model.exponents(i), rng);
        for (Eigen::Index k = 0; k < cols; ++k) out.noise(i, k) = model.noise_stds(i) * e[static_cast<std::size_t>(k)];
    }
    out.observed = out.noise;
    for (Eigen::Index i = 1; i < p; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double w = model.b_true(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (w != 0.0) out.observed.row(i) += w * out.observed.row(j);
        }
    }
    return out;
}

SyntheticData generate(const SynthConfig& cfg, Rng& rng) {
    GroundTruthModel truth = random_model(cfg, rng);
    const StructuralSample sample = sample_structural(truth, cfg.n, rng);
    DataMatrix emitted(sample.observed.rows(), sample.observed.cols());
    for (std::size_t k = 0; k < cfg.p; ++k) {
        emitted.row(static_cast<Eigen::Index>(k)) = sample.observed.row(static_cast<Eigen::Index>(truth.shuffle[k]));
    }
    return SyntheticData{Dataset::center(std::move(emitted)), std::move(truth)};
}

SyntheticData generate(const SynthConfig& cfg) {
    Rng rng(cfg.seed);
    return generate(cfg, rng);
}

}  // namespace lingam
