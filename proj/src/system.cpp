#include "ocdma/system.hpp"

#include <cmath>
#include <limits>

namespace ocdma {

ChannelParams ChannelParams::from_sigma(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma_n must be positive");
    return ChannelParams{std::nullopt, sigma};
}

double ChannelParams::resolve_sigma(const SignatureMatrix& a) const {
    if (sigma_n) return *sigma_n;
    if (eb_n0_db) return sigma_from_ebn0(a, *eb_n0_db);
    throw std::invalid_argument("channel has neither sigma_n nor eb_n0_db");
}

double sigma_from_ebn0(const SignatureMatrix& a, double eb_n0_db) {
    if (!std::isfinite(eb_n0_db)) throw std::invalid_argument("eb_n0_db must be finite");
    const double eb = a.frobenius_sq() / a.n;
    if (eb <= 0.0) throw std::domain_error("zero matrix has no energy per bit");
    return std::sqrt(eb / (2.0 * std::pow(10.0, eb_n0_db / 10.0)));
}

InputVector input_vector_for(std::size_t index, int n) {
    InputVector x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) x[j] = (index >> j) & 1 ? 1 : -1;
    return x;
}

std::size_t index_for_input(const InputVector& x) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] > 0) i |= std::size_t{1} << j;
    return i;
}

Constellation make_constellation(const SignatureMatrix& a, int max_users) {
    if (a.n > max_users)
        throw capacity_error("constellation would need 2^" + std::to_string(a.n) +
                             " points (cap is 2^" + std::to_string(max_users) + ")");
    Constellation c;
    c.m = a.m;
    c.n = a.n;
    const std::size_t count = std::size_t{1} << a.n;
    c.points.resize(count * a.m);

    // Direct per-point dot products. Negating X negates every partial sum exactly,
    // so Z_{~i} == -Z_i holds bit-for-bit (negation closure).
    const std::int64_t total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        double* z = c.points.data() + static_cast<std::size_t>(i) * a.m;
        for (int r = 0; r < a.m; ++r) {
            double acc = 0.0;
            for (int j = 0; j < a.n; ++j) {
                const double xj = ((static_cast<std::size_t>(i) >> j) & 1) ? 1.0 : -1.0;
                acc += a.at(r, j) * xj;
            }
            z[r] = acc;
        }
    }
    return c;
}

std::vector<double> transmit(const SignatureMatrix& a, const InputVector& x, double sigma_n,
                             std::mt19937_64& rng) {
    if (static_cast<int>(x.size()) != a.n) throw std::invalid_argument("input length != n");
    if (!(sigma_n >= 0.0)) throw std::invalid_argument("sigma_n must be nonnegative");
    std::vector<double> y(static_cast<std::size_t>(a.m));
    for (int r = 0; r < a.m; ++r) {
        double acc = 0.0;
        for (int j = 0; j < a.n; ++j) acc += a.at(r, j) * x[j];
        y[r] = acc;
    }
    if (sigma_n > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma_n);
        for (int r = 0; r < a.m; ++r) y[r] += noise(rng);
    }
    return y;
}

std::vector<double> transmit(const SignatureMatrix& a, const InputVector& x,
                             const ChannelParams& ch, std::mt19937_64& rng) {
    return transmit(a, x, ch.resolve_sigma(a), rng);
}

std::size_t ml_decode_index(const Constellation& c, std::span<const double> y) {
    if (y.size() != static_cast<std::size_t>(c.m))
        throw std::invalid_argument("received vector length != m");
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    const std::size_t count = c.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = c.points.data() + i * static_cast<std::size_t>(c.m);
        double d2 = 0.0;
        for (int r = 0; r < c.m; ++r) {
            const double d = y[r] - z[r];
            d2 += d * d;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

InputVector ml_decode(const SignatureMatrix& a, std::span<const double> y) {
    const Constellation c = make_constellation(a);
    return input_vector_for(ml_decode_index(c, y), a.n);
}

}  // namespace ocdma
