#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ocdma/matrix.hpp"

namespace ocdma {

struct MatrixProvenance {
    std::string table;      // "III".."VI"
    std::string criterion;  // design criterion
    std::string optimizer;  // "GA" or "PSO"
    double design_ebn0_db = 8.0;
};

struct MatrixRegistryEntry {
    std::string id;  // e.g. "tabIII.A5"
    SignatureMatrix matrix;
    MatrixProvenance provenance;
};

/// Built-in registry of the published sub-optimum matrices, grouped by source table.
const std::vector<MatrixRegistryEntry>& matrix_registry();

/// Null if the id is unknown.
const MatrixRegistryEntry* find_registry_entry(std::string_view id);

}  // namespace ocdma
