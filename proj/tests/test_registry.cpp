#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocdma/registry.hpp"

using namespace ocdma;

TEST_CASE("registry holds all twenty published matrices with valid entries") {
    const auto& reg = matrix_registry();
    CHECK(reg.size() == 20);
    for (const auto& entry : reg) {
        CHECK_NOTHROW(entry.matrix.validate());
        CHECK(entry.matrix.n > entry.matrix.m);  // all published matrices are overloaded
    }
}

TEST_CASE("spot checks against the published values") {
    const auto* a5 = find_registry_entry("tabIII.A5");
    REQUIRE(a5 != nullptr);
    CHECK(a5->matrix.m == 4);
    CHECK(a5->matrix.n == 5);
    CHECK(a5->matrix.alphabet == Alphabet::Binary);
    for (double e : a5->matrix.entries) CHECK((e == 1.0 || e == -1.0));
    CHECK(a5->matrix.at(0, 0) == 1.0);
    CHECK(a5->matrix.at(3, 4) == -1.0);

    const auto* a4 = find_registry_entry("tabIII.A4");
    REQUIRE(a4 != nullptr);
    CHECK(a4->matrix.at(0, 2) == 0.969);
    CHECK(a4->matrix.at(1, 3) == -0.871);
    CHECK(a4->matrix.at(3, 0) == 0.430);

    const auto* t4a3 = find_registry_entry("tabIV.A3");
    REQUIRE(t4a3 != nullptr);
    CHECK(t4a3->matrix.m == 4);
    CHECK(t4a3->matrix.n == 5);
    CHECK(t4a3->matrix.alphabet == Alphabet::Binary);

    const auto* a2 = find_registry_entry("tabIII.A2");
    REQUIRE(a2 != nullptr);
    CHECK(a2->provenance.design_ebn0_db == 11.0);  // the one 11 dB design point
    CHECK(find_registry_entry("tabIII.A1")->provenance.design_ebn0_db == 8.0);

    const auto* pso = find_registry_entry("tabVI.CAP34");
    REQUIRE(pso != nullptr);
    CHECK(pso->provenance.optimizer == "PSO");
    CHECK(pso->matrix.at(0, 3) == 0.3137);

    CHECK(find_registry_entry("nope") == nullptr);
}

TEST_CASE("registry ids are unique") {
    const auto& reg = matrix_registry();
    for (std::size_t i = 0; i < reg.size(); ++i)
        for (std::size_t j = i + 1; j < reg.size(); ++j) CHECK(reg[i].id != reg[j].id);
}
