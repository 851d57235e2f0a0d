#include "ocdma/enlarge.hpp"

#include <cmath>
#include <numbers>

namespace ocdma {

RealMatrix RealMatrix::zeros(int rows, int cols) {
    return {rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0)};
}

RealMatrix RealMatrix::identity(int size) {
    RealMatrix m = zeros(size, size);
    for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
    return m;
}

RealMatrix kronecker(const RealMatrix& g, const RealMatrix& a) {
    RealMatrix out = RealMatrix::zeros(g.rows * a.rows, g.cols * a.cols);
    for (int gi = 0; gi < g.rows; ++gi)
        for (int gj = 0; gj < g.cols; ++gj) {
            const double scale = g.at(gi, gj);
            for (int ai = 0; ai < a.rows; ++ai)
                for (int aj = 0; aj < a.cols; ++aj)
                    out.at(gi * a.rows + ai, gj * a.cols + aj) = scale * a.at(ai, aj);
        }
    return out;
}

RealMatrix as_real_matrix(const SignatureMatrix& a) { return {a.m, a.n, a.entries}; }

SignatureMatrix kronecker(const RealMatrix& g, const SignatureMatrix& a) {
    const RealMatrix out = kronecker(g, as_real_matrix(a));
    SignatureMatrix b;
    b.m = out.rows;
    b.n = out.cols;
    b.alphabet = Alphabet::Real;
    b.entries = out.data;
    return b;
}

RealMatrix invert(const RealMatrix& g) {
    if (g.rows != g.cols) throw std::invalid_argument("only square matrices invert");
    const int k = g.rows;
    RealMatrix work = g;
    RealMatrix inv = RealMatrix::identity(k);
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(work.at(r, col)) > std::abs(work.at(pivot, col))) pivot = r;
        if (std::abs(work.at(pivot, col)) < 1e-12)
            throw std::domain_error("generator matrix is singular");
        if (pivot != col) {
            for (int c = 0; c < k; ++c) {
                std::swap(work.at(pivot, c), work.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        }
        const double scale = 1.0 / work.at(col, col);
        for (int c = 0; c < k; ++c) {
            work.at(col, c) *= scale;
            inv.at(col, c) *= scale;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double factor = work.at(r, col);
            if (factor == 0.0) continue;
            for (int c = 0; c < k; ++c) {
                work.at(r, c) -= factor * work.at(col, c);
                inv.at(r, c) -= factor * inv.at(col, c);
            }
        }
    }
    return inv;
}

double determinant(const RealMatrix& g) {
    if (g.rows != g.cols) throw std::invalid_argument("determinant needs a square matrix");
    const int k = g.rows;
    RealMatrix work = g;
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(work.at(r, col)) > std::abs(work.at(pivot, col))) pivot = r;
        if (work.at(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < k; ++c) std::swap(work.at(pivot, c), work.at(col, c));
            det = -det;
        }
        det *= work.at(col, col);
        for (int r = col + 1; r < k; ++r) {
            const double factor = work.at(r, col) / work.at(col, col);
            for (int c = col; c < k; ++c) work.at(r, c) -= factor * work.at(col, c);
        }
    }
    return det;
}

namespace {

bool is_power_of_two(int k) { return k >= 1 && (k & (k - 1)) == 0; }

void check_unit_columns(const RealMatrix& g) {
    if (g.rows != g.cols) throw std::invalid_argument("generator must be square");
    for (int c = 0; c < g.cols; ++c) {
        double norm_sq = 0.0;
        for (int r = 0; r < g.rows; ++r) norm_sq += g.at(r, c) * g.at(r, c);
        if (std::abs(norm_sq - 1.0) > 1e-9)
            throw std::invalid_argument("generator columns must have unit norm");
    }
}

}  // namespace

RealMatrix hadamard_generator(int k) {
    if (!is_power_of_two(k))
        throw std::invalid_argument("Hadamard generator order must be a power of two");
    RealMatrix h{1, 1, {1.0}};
    RealMatrix step = RealMatrix::zeros(2, 2);
    const double s = 1.0 / std::numbers::sqrt2;
    step.at(0, 0) = s;
    step.at(0, 1) = s;
    step.at(1, 0) = s;
    step.at(1, 1) = -s;
    while (h.rows < k) h = kronecker(step, h);
    return h;
}

EnlargementPlan make_plan(const SignatureMatrix& base, RealMatrix generator,
                          std::string generator_kind) {
    base.validate();
    check_unit_columns(generator);
    EnlargementPlan plan;
    plan.enlarged = kronecker(generator, base);
    if (generator.rows == 1) plan.enlarged.alphabet = base.alphabet;
    plan.base = base;
    plan.generator = std::move(generator);
    plan.generator_kind = std::move(generator_kind);
    plan.enlarged.validate();
    return plan;
}

EnlargementPlan enlarge(const SignatureMatrix& base, int k) {
    if (!is_power_of_two(k))
        throw std::invalid_argument("enlargement factor must be a power of two");
    return make_plan(base, hadamard_generator(k), "hadamard");
}

InputVector tensor_decode(const EnlargementPlan& plan, std::span<const double> y) {
    const int k = plan.k();
    const int m = plan.base.m;
    const int n = plan.base.n;
    if (y.size() != static_cast<std::size_t>(k) * m)
        throw std::invalid_argument("received vector length != k*m");
    const RealMatrix g_inv = invert(plan.generator);

    // Z = (G^-1 (x) I_m) Y, segment i mixes the k input segments.
    std::vector<double> z(static_cast<std::size_t>(k) * m);
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < m; ++r) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j) acc += g_inv.at(i, j) * y[static_cast<std::size_t>(j) * m + r];
            z[static_cast<std::size_t>(i) * m + r] = acc;
        }

    const Constellation base_points = make_constellation(plan.base);
    InputVector x(static_cast<std::size_t>(k) * n);
    for (int i = 0; i < k; ++i) {
        const std::span<const double> segment{z.data() + static_cast<std::size_t>(i) * m,
                                              static_cast<std::size_t>(m)};
        const InputVector block = input_vector_for(ml_decode_index(base_points, segment), n);
        std::copy(block.begin(), block.end(), x.begin() + static_cast<std::size_t>(i) * n);
    }
    return x;
}

EnlargementBoundReport verify_enlargement_bound(const SignatureMatrix& a, const RealMatrix& g,
                               const ChannelParams& ch, int mc_samples, std::uint64_t seed) {
    check_unit_columns(g);
    const double sigma = ch.resolve_sigma(a);  // same noise level on both sides
    const SignatureMatrix b = kronecker(g, a);

    CriterionSpec lhs_spec;
    lhs_spec.kind = Criterion::Capacity;
    lhs_spec.channel = ChannelParams::from_sigma(sigma);
    lhs_spec.mc_samples = mc_samples;
    lhs_spec.seed = seed;
    const CriterionValue lhs = capacity(b, lhs_spec);

    CriterionSpec rhs_spec = lhs_spec;
    rhs_spec.seed = seed ^ 0x9e3779b97f4a7c15ULL;  // independent stream
    const CriterionValue base_cap = capacity(a, rhs_spec);

    EnlargementBoundReport report;
    report.lhs = lhs.value;
    report.lhs_std_error = lhs.std_error;
    report.rhs = g.rows * base_cap.value;
    report.rhs_std_error = g.rows * base_cap.std_error;
    report.combined_std_error = std::hypot(report.lhs_std_error, report.rhs_std_error);
    report.inequality_holds = report.lhs <= report.rhs + 3.0 * report.combined_std_error;
    return report;
}

boost::multiprecision::cpp_int decoder_complexity(const EnlargementPlan& plan, DecoderMode mode) {
    using boost::multiprecision::cpp_int;
    const int k = plan.k();
    const int n = plan.base.n;
    if (mode == DecoderMode::Naive) return cpp_int(1) << (static_cast<long>(k) * n);
    return cpp_int(k) << n;
}

}  // namespace ocdma
