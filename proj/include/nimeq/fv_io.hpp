#ifndef NIMEQ_FV_IO_HPP
#define NIMEQ_FV_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nimeq/descriptors.hpp"

namespace nimeq {

class FormatError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Plain-text feature-vector file: a header line "T Np D layout_tag"
/// followed by one value per line at 17 significant digits, which
/// round-trips IEEE doubles exactly.
inline void write_feature_vector(const FeatureVector& fv, const std::filesystem::path& path) {
    if (fv.values.size() != fv.expected_length())
        throw FormatError("write_feature_vector: vector/shape mismatch");
    std::ofstream out(path);
    if (!out) throw FormatError("write_feature_vector: cannot open " + path.string());
    out << fv.generations << ' ' << fv.population_size << ' ' << fv.dimension << ' '
        << fv.layout << '\n';
    char buffer[64];
    for (double v : fv.values) {
        std::snprintf(buffer, sizeof buffer, "%.17g", v);
        out << buffer << '\n';
    }
    if (!out) throw FormatError("write_feature_vector: write failed for " + path.string());
}

inline FeatureVector read_feature_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("read_feature_vector: cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header))
        throw FormatError("read_feature_vector: missing header in " + path.string());
    FeatureVector fv;
    {
        std::istringstream fields(header);
        std::string extra;
        if (!(fields >> fv.generations >> fv.population_size >> fv.dimension >> fv.layout) ||
            (fields >> extra) || fv.generations < 1 || fv.population_size < 1)
            throw FormatError("read_feature_vector: malformed header in " + path.string());
    }

    fv.values.reserve(fv.expected_length());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(line, &used);
        } catch (const std::exception&) {
            throw FormatError("read_feature_vector: non-numeric line in " + path.string());
        }
        while (used < line.size() && (line[used] == ' ' || line[used] == '\r')) ++used;
        if (used != line.size())
            throw FormatError("read_feature_vector: trailing garbage in " + path.string());
        fv.values.push_back(value);
    }
    if (fv.values.size() != fv.expected_length())
        throw FormatError("read_feature_vector: expected " + std::to_string(fv.expected_length()) +
                          " values, found " + std::to_string(fv.values.size()) + " in " +
                          path.string());
    return fv;
}

/// Load for comparison against an already-loaded vector; a different layout
/// tag means element orders are incompatible, so the load is refused.
inline FeatureVector read_feature_vector_as(const std::filesystem::path& path,
                                            const std::string& expected_layout) {
    FeatureVector fv = read_feature_vector(path);
    if (fv.layout != expected_layout)
        throw FormatError("read_feature_vector_as: layout '" + fv.layout + "' in " +
                          path.string() + " does not match expected '" + expected_layout + "'");
    return fv;
}

}  // namespace nimeq

#endif
