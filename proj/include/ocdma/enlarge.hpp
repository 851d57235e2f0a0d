#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ocdma/criteria.hpp"
#include "ocdma/matrix.hpp"
#include "ocdma/system.hpp"

namespace ocdma {

/// Small dense real matrix, used for enlargement generators.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    static RealMatrix zeros(int rows, int cols);
    static RealMatrix identity(int size);
};

/// Standard Kronecker product: block (i,j) of the result is G[i,j] * A.
RealMatrix kronecker(const RealMatrix& g, const RealMatrix& a);
SignatureMatrix kronecker(const RealMatrix& g, const SignatureMatrix& a);

RealMatrix as_real_matrix(const SignatureMatrix& a);

/// Gauss-Jordan inverse with partial pivoting; throws std::domain_error if singular.
RealMatrix invert(const RealMatrix& g);

double determinant(const RealMatrix& g);

/// Sylvester Hadamard generator of order k (a power of two), columns scaled to
/// unit norm: built recursively so hadamard_generator(2k) equals
/// kronecker((1/sqrt2)H_2, hadamard_generator(k)) bit-for-bit.
RealMatrix hadamard_generator(int k);

struct EnlargementPlan {
    SignatureMatrix base;     // m x n
    RealMatrix generator;     // k x k, invertible, unit-norm columns
    std::string generator_kind = "hadamard";
    SignatureMatrix enlarged;  // km x kn = G (x) base

    int k() const { return generator.rows; }
};

/// Plan with an arbitrary unit-norm-column generator; the generator is checked,
/// not normalized.
EnlargementPlan make_plan(const SignatureMatrix& base, RealMatrix generator,
                          std::string generator_kind = "custom");

/// Hadamard enlargement by factor k (power of two).
EnlargementPlan enlarge(const SignatureMatrix& base, int k);

/// Block decoder: Z = (G^-1 (x) I_m) Y, each m-length segment ML-decoded against
/// the base matrix, segments concatenated in order.
InputVector tensor_decode(const EnlargementPlan& plan, std::span<const double> y);

/// Numerical check of the enlargement capacity bound C(B) <= k*C(A),
/// with equality exactly when the generator is unitary.
struct EnlargementBoundReport {
    double lhs = 0.0;  // capacity of the enlarged matrix
    double lhs_std_error = 0.0;
    double rhs = 0.0;  // k times the base capacity
    double rhs_std_error = 0.0;
    double combined_std_error = 0.0;
    bool inequality_holds = false;  // lhs <= rhs + 3 * combined
};

/// Both sides estimated with independent Monte-Carlo streams at the same sigma_N.
EnlargementBoundReport verify_enlargement_bound(const SignatureMatrix& a, const RealMatrix& g,
                               const ChannelParams& ch, int mc_samples, std::uint64_t seed = 0);

enum class DecoderMode { Naive, Tensor };

/// Euclidean-distance evaluations needed to decode one received vector:
/// 2^(kn) for exhaustive ML on the enlarged matrix, k * 2^n per-block.
boost::multiprecision::cpp_int decoder_complexity(const EnlargementPlan& plan, DecoderMode mode);

}  // namespace ocdma
