#include "ocdma/criteria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "ocdma/rng.hpp"

namespace ocdma {

namespace {

constexpr int kCapacityChunkSamples = 2048;
constexpr int kBerChunkBlocks = 1024;
constexpr double kLseCutoff = -45.0;  // exp(-45) ~ 3e-20, below double noise vs the max term

struct MomentSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

double log2_mixture(const Constellation& c, double sigma, const double* y,
                    std::vector<double>& scratch) {
    const std::size_t count = c.size();
    scratch.resize(count);
    const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);
    double t_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = c.points.data() + i * static_cast<std::size_t>(c.m);
        double d2 = 0.0;
        for (int r = 0; r < c.m; ++r) {
            const double d = y[r] - z[r];
            d2 += d * d;
        }
        const double t = -d2 * inv_two_s2;
        scratch[i] = t;
        t_max = std::max(t_max, t);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        if (scratch[i] - t_max > kLseCutoff) acc += std::exp(scratch[i] - t_max);
    const double ln_f = t_max + std::log(acc) - c.n * std::numbers::ln2 -
                        0.5 * c.m * std::log(2.0 * std::numbers::pi * sigma * sigma);
    return ln_f / std::numbers::ln2;
}

// Samples [chunk*kCapacityChunkSamples, +count) of the log2-density stream.
MomentSums capacity_chunk(const Constellation& c, double sigma, std::uint64_t seed,
                          std::uint64_t chunk, int count, std::vector<double>& scratch,
                          std::vector<double>& y) {
    auto rng = make_rng(seed, chunk);
    std::uniform_int_distribution<std::uint64_t> pick(0, c.size() - 1);
    std::normal_distribution<double> noise(0.0, sigma);
    y.resize(static_cast<std::size_t>(c.m));
    MomentSums ms;
    for (int s = 0; s < count; ++s) {
        const auto z = c.point(pick(rng));
        for (int r = 0; r < c.m; ++r) y[r] = z[r] + noise(rng);
        const double l = log2_mixture(c, sigma, y.data(), scratch);
        ms.sum += l;
        ms.sum_sq += l * l;
    }
    return ms;
}

CriterionValue capacity_from_chunks(const SignatureMatrix& a, const CriterionSpec& spec,
                                    bool parallel) {
    if (spec.kind != Criterion::Capacity)
        throw std::invalid_argument("capacity() called with non-Capacity spec");
    if (spec.mc_samples < 1000)
        throw std::invalid_argument("capacity needs mc_samples >= 1000");
    a.validate_shape();
    const double sigma = spec.channel.resolve_sigma(a);
    const Constellation c = make_constellation(a);
    const int total = spec.mc_samples;
    const std::int64_t chunks = (total + kCapacityChunkSamples - 1) / kCapacityChunkSamples;
    std::vector<MomentSums> partial(static_cast<std::size_t>(chunks));

    if (parallel) {
#pragma omp parallel
        {
            std::vector<double> scratch, y;
#pragma omp for schedule(static)
            for (std::int64_t ch = 0; ch < chunks; ++ch) {
                const int count = static_cast<int>(
                    std::min<std::int64_t>(kCapacityChunkSamples,
                                           total - ch * kCapacityChunkSamples));
                partial[ch] = capacity_chunk(c, sigma, spec.seed,
                                             static_cast<std::uint64_t>(ch), count, scratch, y);
            }
        }
    } else {
        std::vector<double> scratch, y;
        for (std::int64_t ch = 0; ch < chunks; ++ch) {
            const int count = static_cast<int>(std::min<std::int64_t>(
                kCapacityChunkSamples, total - ch * kCapacityChunkSamples));
            partial[ch] = capacity_chunk(c, sigma, spec.seed, static_cast<std::uint64_t>(ch),
                                         count, scratch, y);
        }
    }

    MomentSums ms;  // reduce in chunk order, independent of thread count
    for (const auto& p : partial) {
        ms.sum += p.sum;
        ms.sum_sq += p.sum_sq;
    }
    const double mean = ms.sum / total;
    const double var = std::max(0.0, (ms.sum_sq - total * mean * mean) / (total - 1));
    const double se = std::sqrt(var / total);
    const double h_y = -mean;
    const double h_n =
        0.5 * a.m * std::log2(2.0 * std::numbers::pi * std::numbers::e * sigma * sigma);
    return {h_y - h_n, se, Direction::Maximize};
}

long ber_chunk(const Constellation& c, double sigma, std::uint64_t seed, std::uint64_t chunk,
               int blocks, std::vector<double>& y) {
    auto rng = make_rng(seed, chunk);
    std::uniform_int_distribution<std::uint64_t> pick(0, c.size() - 1);
    std::normal_distribution<double> noise(0.0, sigma);
    y.resize(static_cast<std::size_t>(c.m));
    long errors = 0;
    for (int b = 0; b < blocks; ++b) {
        const std::uint64_t sent = pick(rng);
        const auto z = c.point(sent);
        for (int r = 0; r < c.m; ++r) y[r] = z[r] + noise(rng);
        const std::uint64_t decoded = ml_decode_index(c, y);
        errors += std::popcount(sent ^ decoded);
    }
    return errors;
}

CriterionValue ber_from_chunks(const SignatureMatrix& a, const CriterionSpec& spec,
                               bool parallel) {
    if (spec.kind != Criterion::Ber) throw std::invalid_argument("ber() called with non-Ber spec");
    if (spec.mc_samples < 1000) throw std::invalid_argument("ber needs mc_samples >= 1000 bits");
    a.validate_shape();
    const double sigma = spec.channel.resolve_sigma(a);
    const Constellation c = make_constellation(a);
    const std::int64_t total_blocks = (spec.mc_samples + a.n - 1) / a.n;
    const std::int64_t chunks = (total_blocks + kBerChunkBlocks - 1) / kBerChunkBlocks;
    std::vector<long> partial(static_cast<std::size_t>(chunks));

    if (parallel) {
#pragma omp parallel
        {
            std::vector<double> y;
#pragma omp for schedule(static)
            for (std::int64_t ch = 0; ch < chunks; ++ch) {
                const int blocks = static_cast<int>(
                    std::min<std::int64_t>(kBerChunkBlocks, total_blocks - ch * kBerChunkBlocks));
                partial[ch] = ber_chunk(c, sigma, spec.seed, static_cast<std::uint64_t>(ch),
                                        blocks, y);
            }
        }
    } else {
        std::vector<double> y;
        for (std::int64_t ch = 0; ch < chunks; ++ch) {
            const int blocks = static_cast<int>(
                std::min<std::int64_t>(kBerChunkBlocks, total_blocks - ch * kBerChunkBlocks));
            partial[ch] = ber_chunk(c, sigma, spec.seed, static_cast<std::uint64_t>(ch), blocks, y);
        }
    }

    long errors = 0;
    for (long p : partial) errors += p;
    const double bits = static_cast<double>(total_blocks) * a.n;
    const double p = errors / bits;
    const double se = std::sqrt(p * (1.0 - p) / bits);
    return {p, se, Direction::Minimize};
}

// The pair kernels walk only the half constellation H = first 2^(n-1) points
// (negation closure pairs index i with its bitwise complement). Every unordered
// pair of the full list is one of: a pair inside H at |Z_i - Z_j| (its antipodal
// image repeats the same distance), two cross pairs at |Z_i + Z_j|, or the self
// pair (Z_i, -Z_i) at 2|Z_i|.

CriterionValue md_impl(const SignatureMatrix& a, bool parallel) {
    a.validate_shape();
    const Constellation c = make_constellation(a);
    const std::int64_t h = static_cast<std::int64_t>(c.size() / 2);
    std::vector<double> partial(static_cast<std::size_t>(h),
                                std::numeric_limits<double>::infinity());
    const int m = c.m;
    auto one_row = [&](std::int64_t i) {
        const double* zi = c.points.data() + static_cast<std::size_t>(i) * m;
        double best = std::numeric_limits<double>::infinity();
        double self_d2 = 0.0;
        for (int r = 0; r < m; ++r) {
            const double d = 2.0 * zi[r];
            self_d2 += d * d;
        }
        best = std::min(best, self_d2);
        for (std::int64_t j = i + 1; j < h; ++j) {
            const double* zj = c.points.data() + static_cast<std::size_t>(j) * m;
            double d2_minus = 0.0, d2_plus = 0.0;
            for (int r = 0; r < m; ++r) {
                const double dm = zi[r] - zj[r];
                const double dp = zi[r] + zj[r];
                d2_minus += dm * dm;
                d2_plus += dp * dp;
            }
            best = std::min({best, d2_minus, d2_plus});
        }
        partial[static_cast<std::size_t>(i)] = best;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < h; ++i) one_row(i);
    } else {
        for (std::int64_t i = 0; i < h; ++i) one_row(i);
    }
    double best = std::numeric_limits<double>::infinity();
    for (double p : partial) best = std::min(best, p);
    return {std::sqrt(best), 0.0, Direction::Maximize};
}

// Tail-sum over ordered pairs via the half walk: unordered total doubled.
template <typename TermFn>
double tail_sum(const Constellation& c, double sigma, TermFn term, bool parallel) {
    const std::int64_t h = static_cast<std::int64_t>(c.size() / 2);
    std::vector<double> partial(static_cast<std::size_t>(h), 0.0);
    const double inv2s = 1.0 / (2.0 * sigma);
    const int m = c.m;
    auto one_row = [&](std::int64_t i) {
        const double* zi = c.points.data() + static_cast<std::size_t>(i) * m;
        double acc = 0.0;
        double self_d2 = 0.0;
        for (int r = 0; r < m; ++r) {
            const double d = 2.0 * zi[r];
            self_d2 += d * d;
        }
        acc += term(std::sqrt(self_d2) * inv2s);
        for (std::int64_t j = i + 1; j < h; ++j) {
            const double* zj = c.points.data() + static_cast<std::size_t>(j) * m;
            double d2_minus = 0.0, d2_plus = 0.0;
            for (int r = 0; r < m; ++r) {
                const double dm = zi[r] - zj[r];
                const double dp = zi[r] + zj[r];
                d2_minus += dm * dm;
                d2_plus += dp * dp;
            }
            acc += 2.0 * term(std::sqrt(d2_minus) * inv2s);
            acc += 2.0 * term(std::sqrt(d2_plus) * inv2s);
        }
        partial[static_cast<std::size_t>(i)] = acc;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < h; ++i) one_row(i);
    } else {
        for (std::int64_t i = 0; i < h; ++i) one_row(i);
    }
    double unordered = 0.0;
    for (double p : partial) unordered += p;
    return 2.0 * unordered;  // each unordered pair counted twice in the ordered sum
}

double ed_term(double x) {
    const double t = (x + 1.0) / 1.6;
    return std::exp(-t * t);
}

double resolve_positive_sigma(const SignatureMatrix& a, const ChannelParams& ch) {
    const double sigma = ch.resolve_sigma(a);
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma_n must be positive");
    return sigma;
}

CriterionValue qd_impl(const SignatureMatrix& a, const ChannelParams& ch, bool parallel) {
    a.validate_shape();
    const double sigma = resolve_positive_sigma(a, ch);
    const Constellation c = make_constellation(a);
    return {tail_sum(c, sigma, gaussian_q, parallel), 0.0, Direction::Minimize};
}

CriterionValue ed_impl(const SignatureMatrix& a, const ChannelParams& ch, bool parallel) {
    a.validate_shape();
    const double sigma = resolve_positive_sigma(a, ch);
    const Constellation c = make_constellation(a);
    return {tail_sum(c, sigma, ed_term, parallel), 0.0, Direction::Minimize};
}

}  // namespace

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::Capacity: return "capacity";
        case Criterion::Ber: return "ber";
        case Criterion::Md: return "md";
        case Criterion::Qd: return "qd";
        case Criterion::Ed: return "ed";
    }
    return "?";
}

Criterion criterion_from_string(const std::string& s) {
    if (s == "capacity") return Criterion::Capacity;
    if (s == "ber") return Criterion::Ber;
    if (s == "md") return Criterion::Md;
    if (s == "qd") return Criterion::Qd;
    if (s == "ed") return Criterion::Ed;
    throw std::invalid_argument("unknown criterion: " + s);
}

Direction direction_of(Criterion c) {
    return (c == Criterion::Capacity || c == Criterion::Md) ? Direction::Maximize
                                                            : Direction::Minimize;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_approx(double x) {
    const double t = (x + 1.0) / 1.6;
    return 0.7 * std::exp(-t * t);
}

double mixture_pdf(const SignatureMatrix& a, const ChannelParams& ch, std::span<const double> y) {
    a.validate_shape();
    if (y.size() != static_cast<std::size_t>(a.m))
        throw std::invalid_argument("y length != m");
    const double sigma = resolve_positive_sigma(a, ch);
    const Constellation c = make_constellation(a);
    std::vector<double> scratch;
    return std::exp2(log2_mixture(c, sigma, y.data(), scratch));
}

double mixture_log2_pdf(const Constellation& c, double sigma, std::span<const double> y) {
    if (y.size() != static_cast<std::size_t>(c.m))
        throw std::invalid_argument("y length != m");
    std::vector<double> scratch;
    return log2_mixture(c, sigma, y.data(), scratch);
}

CriterionValue capacity(const SignatureMatrix& a, const CriterionSpec& spec) {
    return capacity_from_chunks(a, spec, true);
}

CriterionValue per_user_capacity(const SignatureMatrix& a, const CriterionSpec& spec) {
    CriterionValue v = capacity(a, spec);
    v.value /= a.n;
    v.std_error /= a.n;
    return v;
}

CriterionValue ber(const SignatureMatrix& a, const CriterionSpec& spec) {
    return ber_from_chunks(a, spec, true);
}

CriterionValue md(const SignatureMatrix& a) { return md_impl(a, true); }

CriterionValue qd(const SignatureMatrix& a, const ChannelParams& ch) {
    return qd_impl(a, ch, true);
}

CriterionValue ed(const SignatureMatrix& a, const ChannelParams& ch) {
    return ed_impl(a, ch, true);
}

CriterionValue evaluate(const SignatureMatrix& a, const CriterionSpec& spec) {
    switch (spec.kind) {
        case Criterion::Capacity: return capacity(a, spec);
        case Criterion::Ber: return ber(a, spec);
        case Criterion::Md: return md(a);
        case Criterion::Qd: return qd(a, spec.channel);
        case Criterion::Ed: return ed(a, spec.channel);
    }
    throw std::invalid_argument("unknown criterion kind");
}

namespace serial {

CriterionValue capacity(const SignatureMatrix& a, const CriterionSpec& spec) {
    return capacity_from_chunks(a, spec, false);
}

CriterionValue ber(const SignatureMatrix& a, const CriterionSpec& spec) {
    return ber_from_chunks(a, spec, false);
}

// Brute force over all unordered pairs of the full 2^n-point list.
CriterionValue md(const SignatureMatrix& a) {
    a.validate_shape();
    const Constellation c = make_constellation(a);
    const std::size_t count = c.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double* zi = c.points.data() + i * static_cast<std::size_t>(c.m);
        for (std::size_t j = i + 1; j < count; ++j) {
            const double* zj = c.points.data() + j * static_cast<std::size_t>(c.m);
            double d2 = 0.0;
            for (int r = 0; r < c.m; ++r) {
                const double d = zi[r] - zj[r];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
    }
    return {std::sqrt(best), 0.0, Direction::Maximize};
}

namespace {
template <typename TermFn>
double full_pair_sum(const SignatureMatrix& a, const ChannelParams& ch, TermFn term) {
    a.validate_shape();
    const double sigma = resolve_positive_sigma(a, ch);
    const Constellation c = make_constellation(a);
    const std::size_t count = c.size();
    const double inv2s = 1.0 / (2.0 * sigma);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double* zi = c.points.data() + i * static_cast<std::size_t>(c.m);
        for (std::size_t j = 0; j < count; ++j) {
            if (j == i) continue;
            const double* zj = c.points.data() + j * static_cast<std::size_t>(c.m);
            double d2 = 0.0;
            for (int r = 0; r < c.m; ++r) {
                const double d = zi[r] - zj[r];
                d2 += d * d;
            }
            sum += term(std::sqrt(d2) * inv2s);
        }
    }
    return sum;
}
}  // namespace

CriterionValue qd(const SignatureMatrix& a, const ChannelParams& ch) {
    return {full_pair_sum(a, ch, gaussian_q), 0.0, Direction::Minimize};
}

CriterionValue ed(const SignatureMatrix& a, const ChannelParams& ch) {
    return {full_pair_sum(a, ch, ed_term), 0.0, Direction::Minimize};
}

}  // namespace serial

}  // namespace ocdma
