#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ocdma/matrix.hpp"

namespace ocdma {

/// Thrown when a requested constellation would exceed the user cap (2^n points).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxConstellationUsers = 26;

/// Antipodal user bits, entries in {-1,+1}, length n.
using InputVector = std::vector<int>;

/// AWGN channel noise level. Either a fixed per-chip sigma_N, or an Eb/N0 point
/// in dB that resolves to sigma_N per matrix (Eb depends on the matrix norm).
struct ChannelParams {
    std::optional<double> eb_n0_db;
    std::optional<double> sigma_n;

    static ChannelParams from_ebn0_db(double db) { return ChannelParams{db, std::nullopt}; }
    static ChannelParams from_sigma(double sigma);

    double resolve_sigma(const SignatureMatrix& a) const;
};

/// sigma_N = sqrt(Eb / (2 * 10^(db/10))) with Eb = |A|_F^2 / n, the average
/// transmitted energy per user bit (antipodal signaling, noise variance N0/2 per chip).
double sigma_from_ebn0(const SignatureMatrix& a, double eb_n0_db);

/// The 2^n noiseless outputs Z_i = A * X_i, indexed by the canonical input
/// enumeration: bit j of i gives user j+1's symbol, 0 -> -1, 1 -> +1.
struct Constellation {
    int m = 0;
    int n = 0;
    std::vector<double> points;  // 2^n rows of length m, row-major

    std::size_t size() const { return std::size_t{1} << n; }
    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * static_cast<std::size_t>(m), static_cast<std::size_t>(m)};
    }
};

InputVector input_vector_for(std::size_t index, int n);
std::size_t index_for_input(const InputVector& x);

Constellation make_constellation(const SignatureMatrix& a, int max_users = kMaxConstellationUsers);

/// Y = A*X + N, with N having m i.i.d. zero-mean Gaussian entries of stddev sigma_N.
std::vector<double> transmit(const SignatureMatrix& a, const InputVector& x, double sigma_n,
                             std::mt19937_64& rng);
std::vector<double> transmit(const SignatureMatrix& a, const InputVector& x,
                             const ChannelParams& ch, std::mt19937_64& rng);

/// Index of the constellation point nearest to y; ties go to the lowest index.
std::size_t ml_decode_index(const Constellation& c, std::span<const double> y);
InputVector ml_decode(const SignatureMatrix& a, std::span<const double> y);

}  // namespace ocdma
