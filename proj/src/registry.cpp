#include "ocdma/registry.hpp"

namespace ocdma {

namespace {

SignatureMatrix mat(int m, int n, Alphabet alphabet, std::vector<double> entries) {
    SignatureMatrix a;
    a.m = m;
    a.n = n;
    a.alphabet = alphabet;
    a.entries = std::move(entries);
    a.validate();
    return a;
}

std::vector<MatrixRegistryEntry> build_registry() {
    std::vector<MatrixRegistryEntry> reg;
    const auto add = [&](std::string id, SignatureMatrix a, std::string table,
                         std::string criterion, std::string optimizer, double design_db) {
        reg.push_back({std::move(id), std::move(a),
                       {std::move(table), std::move(criterion), std::move(optimizer), design_db}});
    };

    // Capacity method, GA. A2 designed for 11 dB, the rest for 8 dB.
    add("tabIII.A1",
        mat(2, 5, Alphabet::Real,
            {0.1235, 0.3177, 0.7605, 0.8739, 0.4069,
             0.3723, 0.9240, 0.5021, 0.0154, -0.2553}),
        "III", "capacity", "GA", 8.0);
    add("tabIII.A2",
        mat(2, 5, Alphabet::Real,
            {-0.3724, 0.7299, -0.0115, 1.0000, 0.5408,
             -0.5254, 0.2538, 0.9584, -0.3117, -0.7224}),
        "III", "capacity", "GA", 11.0);
    add("tabIII.A3",
        mat(3, 4, Alphabet::Real,
            {0.9764, 0.3895, 0.7448, -0.9375,
             -1.0000, 0.1711, 0.4241, 0.6451,
             0.8529, 0.6424, 0.0930, 1.0000}),
        "III", "capacity", "GA", 8.0);
    add("tabIII.A4",
        mat(4, 5, Alphabet::Real,
            {1, 1, 0.969, 0.468, 1,
             0.424, -1, 0.5, -0.871, 0.5,
             1, 0.015, -0.906, -0.75, 0.719,
             0.430, 0.995, -0.938, 0.984, 0.984}),
        "III", "capacity", "GA", 8.0);
    add("tabIII.A5",
        mat(4, 5, Alphabet::Binary,
            {1, 1, 1, 1, 1,
             1, -1, 1, -1, 1,
             1, 1, -1, -1, 1,
             1, -1, -1, 1, -1}),
        "III", "capacity", "GA", 8.0);

    // ED method, GA.
    add("tabIV.A1",
        mat(2, 5, Alphabet::Real,
            {0.0591, 0.8787, -0.6226, 0.4163, 0.2166,
             -0.9198, 0.1760, 0.1907, 0.6094, 0.8851}),
        "IV", "ed", "GA", 8.0);
    add("tabIV.A2",
        mat(3, 4, Alphabet::Real,
            {0.9572, 0.4704, 0.5922, 0.1288,
             -1.0000, 0.8393, 0.3621, 0.7090,
             0.3995, 0.6776, -0.7468, -0.1777}),
        "IV", "ed", "GA", 8.0);
    add("tabIV.A3",
        mat(4, 5, Alphabet::Binary,
            {-1, -1, 1, -1, 1,
             -1, 1, -1, 1, 1,
             1, 1, -1, -1, 1,
             -1, -1, -1, -1, -1}),
        "IV", "ed", "GA", 8.0);

    // QD, MD and BER methods, GA.
    add("tabV.QD34",
        mat(3, 4, Alphabet::Real,
            {0.4520, -0.3740, 0.9029, 0.1059,
             -0.7780, 0.3048, 0.9585, -0.6561,
             0.9163, 0.4018, 0.3265, -0.0717}),
        "V", "qd", "GA", 8.0);
    add("tabV.MD34",
        mat(3, 4, Alphabet::Real,
            {0.5924, 0.1238, 0.4630, -0.4371,
             0.0557, 0.4388, 0.6436, 0.5020,
             0.9595, 0.4137, 0.0075, 0.4325}),
        "V", "md", "GA", 8.0);
    add("tabV.BER34",
        mat(3, 4, Alphabet::Real,
            {0.2502, 0.4917, 0.1048, -0.9300,
             0.6206, 0.9009, -0.9958, 0.4022,
             0.9903, 0.2592, 0.4383, 0.9961}),
        "V", "ber", "GA", 8.0);
    add("tabV.QD25",
        mat(2, 5, Alphabet::Real,
            {0.5315, 0.9989, -0.9456, 0.5273, 0.4257,
             0.4364, 0.3203, 0.5859, -0.9514, 0.7039}),
        "V", "qd", "GA", 8.0);

    // Various methods, PSO.
    add("tabVI.CAP25",
        mat(2, 5, Alphabet::Real,
            {1.0000, 0, 1.0000, 1.0000, -0.3120,
             0.9419, 1.0000, -0.6067, 0.0812, 0.6859}),
        "VI", "capacity", "PSO", 8.0);
    add("tabVI.CAP34",
        mat(3, 4, Alphabet::Real,
            {0, 0, 1.0000, 0.3137,
             0, 1.0000, 1.0000, 0,
             1.0000, 0, 1.0000, 0}),
        "VI", "capacity", "PSO", 8.0);
    add("tabVI.ED25",
        mat(2, 5, Alphabet::Real,
            {1.0000, 1.0000, 1.0000, 0.5432, -0.0269,
             0.5206, 0.1099, -0.2031, 1.0000, 1.0000}),
        "VI", "ed", "PSO", 8.0);
    add("tabVI.ED34",
        mat(3, 4, Alphabet::Real,
            {1.0000, 0, 0.0665, 1.0000,
             0, 1.0000, 0, 1.0000,
             0, 0, 1.0000, 1.0000}),
        "VI", "ed", "PSO", 8.0);
    add("tabVI.MD25",
        mat(2, 5, Alphabet::Real,
            {0.3045, 0.6719, 1.0000, 0.2925, -0.0804,
             1.0000, 0.2708, 0.0711, -0.7045, 1.0000}),
        "VI", "md", "PSO", 8.0);
    add("tabVI.MD34",
        mat(3, 4, Alphabet::Real,
            {1.0000, 0, 1.0000, 0.0483,
             1.0000, 1.0000, 0.0574, 0,
             1.0000, 0.0701, 0, 1.0000}),
        "VI", "md", "PSO", 8.0);
    add("tabVI.BER25",
        mat(2, 5, Alphabet::Real,
            {1.0000, -0.7644, 0, 1.0000, 0.4113,
             1.0000, 1.0000, 0.5402, -0.4707, 1.0000}),
        "VI", "ber", "PSO", 8.0);
    add("tabVI.BER34",
        mat(3, 4, Alphabet::Real,
            {1.0000, 1.0000, -0.2516, -0.9898,
             1.0000, -0.1536, 1.0000, -0.0209,
             1.0000, 0, -0.6976, 1.0000}),
        "VI", "ber", "PSO", 8.0);
    return reg;
}

}  // namespace

const std::vector<MatrixRegistryEntry>& matrix_registry() {
    static const std::vector<MatrixRegistryEntry> reg = build_registry();
    return reg;
}

const MatrixRegistryEntry* find_registry_entry(std::string_view id) {
    for (const auto& entry : matrix_registry())
        if (entry.id == id) return &entry;
    return nullptr;
}

}  // namespace ocdma
