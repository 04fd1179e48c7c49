#pragma once

#include <string>
#include <vector>

#include "qfpt/errors.hpp"

namespace qfpt {

enum class SystemKind { Chain, Lattice, Classical2 };
enum class Pipeline { Exact, Volterra, Both, LatticeSeries, LatticeInversion };

std::string to_string(SystemKind kind);
std::string to_string(Pipeline pipeline);
SystemKind system_kind_from_string(const std::string& text);
Pipeline pipeline_from_string(const std::string& text);

/// One solver run. Readable from / writable to a flat `key = value` text
/// format with `#` comments and comma-separated lists.
struct RunConfig {
    SystemKind system = SystemKind::Chain;
    int sites = 2;
    int boundary = 1;
    int start = 1;
    std::vector<double> site_energies; // empty -> all 0
    std::vector<double> couplings;     // empty -> all 1
    double rate = 1.0;                 // classical2 hop rate
    Pipeline pipeline = Pipeline::Exact;
    double t_max = 2.0;
    double step = 1e-3;
    int series_order = 12;
    int inversion_nodes = 32;
    double search_max = 50.0;
    std::string output = "solution.csv";

    /// Cross-field consistency; throws Err::InvalidConfig.
    void validate() const;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);
    std::string to_text() const;

    bool operator==(const RunConfig&) const = default;
};

} // namespace qfpt
