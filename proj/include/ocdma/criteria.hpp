#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ocdma/matrix.hpp"
#include "ocdma/system.hpp"

namespace ocdma {

enum class Criterion { Capacity, Ber, Md, Qd, Ed };
enum class Direction { Maximize, Minimize };

const char* to_string(Criterion c);
Criterion criterion_from_string(const std::string& s);
Direction direction_of(Criterion c);

/// How a criterion is evaluated. mc_samples is the Monte-Carlo draw count for
/// Capacity and the bit budget for Ber; Md/Qd/Ed ignore it.
struct CriterionSpec {
    Criterion kind = Criterion::Ed;
    ChannelParams channel;
    int mc_samples = 20000;
    std::uint64_t seed = 0;
};

struct CriterionValue {
    double value = 0.0;
    double std_error = 0.0;  // 0 for deterministic kinds
    Direction direction = Direction::Minimize;
};

/// Gaussian tail probability Q(x) = P(N(0,1) > x), via the complementary error function.
double gaussian_q(double x);

/// Curve-fit tail approximation 0.7 * exp(-((x+1)/1.6)^2).
double q_approx(double x);

/// Mixture density of the received vector: f_Y(y) = 2^-n * sum_X N(y; A*X, sigma^2 I).
/// Evaluated in the log domain (log-sum-exp), so it never underflows to zero.
double mixture_pdf(const SignatureMatrix& a, const ChannelParams& ch, std::span<const double> y);

/// log2 f_Y(y) against a prebuilt constellation; the workhorse for entropy estimation.
double mixture_log2_pdf(const Constellation& c, double sigma, std::span<const double> y);

/// Monte-Carlo sum capacity in bits: C = h(Y) - h(N), h(Y) estimated from
/// mc_samples draws of Y = A*X + N with X uniform, h(N) = (m/2) log2(2*pi*e*sigma^2).
CriterionValue capacity(const SignatureMatrix& a, const CriterionSpec& spec);
CriterionValue per_user_capacity(const SignatureMatrix& a, const CriterionSpec& spec);

/// Simulated bit error rate of exhaustive ML decoding over ceil(mc_samples/n) blocks.
CriterionValue ber(const SignatureMatrix& a, const CriterionSpec& spec);

/// Minimum pairwise constellation distance (maximize).
CriterionValue md(const SignatureMatrix& a);

/// Union-bound surrogate: sum over ordered pairs i != j of Q(|Z_i - Z_j| / (2 sigma)).
CriterionValue qd(const SignatureMatrix& a, const ChannelParams& ch);

/// Exponential variant of qd with Q replaced by the curve fit (0.7 factor dropped).
CriterionValue ed(const SignatureMatrix& a, const ChannelParams& ch);

/// Dispatch on spec.kind.
CriterionValue evaluate(const SignatureMatrix& a, const CriterionSpec& spec);

/// One reported evaluation, the repo-wide CSV row.
struct EvaluationRecord {
    std::string matrix_id;
    Criterion criterion = Criterion::Ed;
    double ebn0_db = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Serial reference kernels, kept for testing and benchmarking the OpenMP paths.
/// capacity/ber walk the identical chunk layout and must match bit-for-bit;
/// md/qd/ed enumerate all pairs directly and act as an independent oracle.
namespace serial {
CriterionValue capacity(const SignatureMatrix& a, const CriterionSpec& spec);
CriterionValue ber(const SignatureMatrix& a, const CriterionSpec& spec);
CriterionValue md(const SignatureMatrix& a);
CriterionValue qd(const SignatureMatrix& a, const ChannelParams& ch);
CriterionValue ed(const SignatureMatrix& a, const ChannelParams& ch);
}  // namespace serial

}  // namespace ocdma
