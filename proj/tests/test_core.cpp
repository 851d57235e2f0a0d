#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ocdma/matrix.hpp"
#include "ocdma/registry.hpp"
#include "ocdma/rng.hpp"
#include "ocdma/system.hpp"
#include "oracle_helpers.hpp"

using namespace ocdma;

TEST_CASE("constellation of the 2x2 identity maps cube vertices to themselves") {
    const auto c = make_constellation(SignatureMatrix::identity(2));
    REQUIRE(c.size() == 4);
    // canonical order: bit j of the index is user j+1, 0 -> -1
    const double expected[4][2] = {{-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(c.point(i)[0] == expected[i][0]);
        CHECK(c.point(i)[1] == expected[i][1]);
    }
}

TEST_CASE("all-ones binary 4x5 matrix: all-plus input lands on the row sums") {
    const auto& a5 = find_registry_entry("tabIII.A5")->matrix;
    const auto c = make_constellation(a5);
    REQUIRE(c.size() == 32);
    const auto z = c.point(31);  // X = (1,1,1,1,1)
    CHECK(z[0] == 5.0);
    CHECK(z[1] == 1.0);
    CHECK(z[2] == 1.0);
    CHECK(z[3] == -1.0);
}

TEST_CASE("negation closure is exact for random matrices") {
    auto rng = make_rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_matrix(3, 5, rng);
        const auto c = make_constellation(a);
        const std::size_t count = c.size();
        for (std::size_t i = 0; i < count; ++i) {
            const auto z = c.point(i);
            const auto zneg = c.point(count - 1 - i);  // bitwise complement of i
            for (int r = 0; r < a.m; ++r) CHECK(zneg[r] == -z[r]);
        }
    }
}

TEST_CASE("constellation scaling is linear") {
    auto rng = make_rng(7);
    const auto a = oracle::random_matrix(2, 4, rng);
    SignatureMatrix half = a;
    for (auto& e : half.entries) e *= 0.5;
    const auto ca = make_constellation(a);
    const auto ch = make_constellation(half);
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (int r = 0; r < a.m; ++r) CHECK(ch.point(i)[r] == 0.5 * ca.point(i)[r]);
}

TEST_CASE("constellation user cap raises a capacity error") {
    const auto a = SignatureMatrix::filled(2, 4, 0.5);
    CHECK_THROWS_AS(make_constellation(a, 3), capacity_error);
    CHECK_NOTHROW(make_constellation(a, 4));
}

TEST_CASE("transmit: zero noise returns A*X exactly, same seed repeats") {
    auto rng = make_rng(1);
    const auto a = oracle::random_matrix(3, 4, rng);
    const InputVector x = input_vector_for(9, 4);
    auto r1 = make_rng(55);
    const auto clean = transmit(a, x, 0.0, r1);
    const auto c = make_constellation(a);
    for (int r = 0; r < a.m; ++r) CHECK(clean[r] == c.point(9)[r]);

    auto r2 = make_rng(55), r3 = make_rng(55);
    const auto y1 = transmit(a, x, 0.3, r2);
    const auto y2 = transmit(a, x, 0.3, r3);
    CHECK(y1 == y2);

    InputVector wrong(3, 1);
    CHECK_THROWS_AS(transmit(a, wrong, 0.3, r2), std::invalid_argument);
}

TEST_CASE("transmit noise variance matches sigma^2 per coordinate") {
    const auto a = SignatureMatrix::identity(2);
    const InputVector x = {1, -1};
    const double sigma = 0.7;
    const int draws = 100000;
    auto rng = make_rng(2024);
    std::vector<double> sum(2, 0.0), sum_sq(2, 0.0);
    for (int i = 0; i < draws; ++i) {
        const auto y = transmit(a, x, sigma, rng);
        const double n0 = y[0] - 1.0, n1 = y[1] + 1.0;
        sum[0] += n0;
        sum[1] += n1;
        sum_sq[0] += n0 * n0;
        sum_sq[1] += n1 * n1;
    }
    for (int r = 0; r < 2; ++r) {
        const double mean = sum[r] / draws;
        const double var = (sum_sq[r] - draws * mean * mean) / (draws - 1);
        CHECK(std::abs(var / (sigma * sigma) - 1.0) < 0.02);
    }
}

TEST_CASE("ml_decode recovers the input when noiseless and injective") {
    auto rng = make_rng(3);
    const auto a = oracle::random_matrix(3, 5, rng);
    const auto c = make_constellation(a);
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(ml_decode_index(c, c.point(i)) == i);
}

TEST_CASE("ml_decode 1x1 picks the nearer antipodal symbol") {
    SignatureMatrix a = SignatureMatrix::filled(1, 1, 1.0);
    const std::vector<double> y{0.3};
    CHECK(ml_decode(a, y) == InputVector{1});
    const std::vector<double> y2{-0.3};
    CHECK(ml_decode(a, y2) == InputVector{-1});
}

TEST_CASE("ml_decode recovers both published half-blocks of the worked example") {
    const auto& a4 = find_registry_entry("tabIII.A4")->matrix;
    const std::vector<double> y1{-1.4586, -0.5227, -0.8251, -1.3148};
    const std::vector<double> y2{0.9584, -0.1522, 3.7170, 2.0180};
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<double> z1(4), z2(4);
    for (int r = 0; r < 4; ++r) {
        z1[r] = s * (y1[r] + y2[r]);
        z2[r] = s * (y1[r] - y2[r]);
    }
    CHECK(ml_decode(a4, z1) == InputVector{1, 1, -1, -1, -1});
    CHECK(ml_decode(a4, z2) == InputVector{-1, -1, 1, 1, -1});
}

TEST_CASE("ml_decode breaks ties toward the lowest input index") {
    // all-ones 2x2: inputs (+1,-1) and (-1,+1) collide at the origin
    const auto a = SignatureMatrix::filled(2, 2, 1.0);
    const std::vector<double> y{0.0, 0.0};
    const auto c = make_constellation(a);
    CHECK(ml_decode_index(c, y) == 1);
    CHECK(ml_decode(a, y) == InputVector{1, -1});
}

TEST_CASE("transmit/ml_decode round trip is clean at sigma = 1e-3") {
    auto rng = make_rng(4);
    const auto a = oracle::random_matrix(2, 4, rng);
    const auto c = make_constellation(a);
    auto chan_rng = make_rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t i = pick(chan_rng);
        const auto y = transmit(a, input_vector_for(i, a.n), 1e-3, chan_rng);
        CHECK(ml_decode_index(c, y) == i);
    }
}

TEST_CASE("sigma_from_ebn0 formula") {
    const auto unit = SignatureMatrix::filled(1, 1, 1.0);  // Eb = 1
    CHECK(sigma_from_ebn0(unit, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // +10 dB shrinks sigma by sqrt(10)
    CHECK(sigma_from_ebn0(unit, 10.0) ==
          doctest::Approx(sigma_from_ebn0(unit, 0.0) / std::sqrt(10.0)).epsilon(1e-14));
    // all-(+-1) 4x5 matrix: Eb = 4
    const auto& a5 = find_registry_entry("tabIII.A5")->matrix;
    CHECK(sigma_from_ebn0(a5, 8.0) == doctest::Approx(0.5630085598747346).epsilon(1e-12));
    CHECK(sigma_from_ebn0(a5, 8.0) > sigma_from_ebn0(a5, 8.1));

    const auto zero = SignatureMatrix::filled(2, 2, 0.0);
    CHECK_THROWS_AS(sigma_from_ebn0(zero, 8.0), std::domain_error);
}

TEST_CASE("channel params resolve per matrix") {
    const auto& a5 = find_registry_entry("tabIII.A5")->matrix;
    CHECK(ChannelParams::from_sigma(0.4).resolve_sigma(a5) == 0.4);
    CHECK(ChannelParams::from_ebn0_db(8.0).resolve_sigma(a5) ==
          doctest::Approx(0.5630085598747346));
    CHECK_THROWS_AS(ChannelParams::from_sigma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams{}.resolve_sigma(a5), std::invalid_argument);
}

TEST_CASE("matrix JSON round trip and rejection") {
    auto rng = make_rng(6);
    const auto a = oracle::random_matrix(3, 4, rng);
    const auto back = matrix_from_json(matrix_to_json(a));
    CHECK(back == a);

    CHECK_THROWS_AS(matrix_from_json("{\"m\":2,\"n\":2,\"alphabet\":\"real\","
                                     "\"entries\":[0.1,0.2,0.3]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json("{\"m\":1,\"n\":2,\"alphabet\":\"binary\","
                                     "\"entries\":[1.0,0.5]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json("{\"m\":1,\"n\":1,\"alphabet\":\"real\","
                                     "\"entries\":[1.5]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json("{\"m\":1,\"n\":1}"), std::invalid_argument);
}

TEST_CASE("input enumeration round trips") {
    for (std::size_t i = 0; i < 32; ++i) CHECK(index_for_input(input_vector_for(i, 5)) == i);
    CHECK(input_vector_for(0, 3) == InputVector{-1, -1, -1});
    CHECK(input_vector_for(1, 3) == InputVector{1, -1, -1});  // LSB is user 1
}
