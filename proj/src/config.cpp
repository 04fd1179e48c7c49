#include "qfpt/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qfpt {

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Chain: return "chain";
        case SystemKind::Lattice: return "lattice";
        case SystemKind::Classical2: return "classical2";
    }
    return "chain";
}

std::string to_string(Pipeline pipeline) {
    switch (pipeline) {
        case Pipeline::Exact: return "exact";
        case Pipeline::Volterra: return "volterra";
        case Pipeline::Both: return "both";
        case Pipeline::LatticeSeries: return "lattice-series";
        case Pipeline::LatticeInversion: return "lattice-inversion";
    }
    return "exact";
}

SystemKind system_kind_from_string(const std::string& text) {
    if (text == "chain") return SystemKind::Chain;
    if (text == "lattice") return SystemKind::Lattice;
    if (text == "classical2") return SystemKind::Classical2;
    fail(Err::InvalidConfig, "unknown system kind '" + text + "'");
}

Pipeline pipeline_from_string(const std::string& text) {
    if (text == "exact") return Pipeline::Exact;
    if (text == "volterra") return Pipeline::Volterra;
    if (text == "both") return Pipeline::Both;
    if (text == "lattice-series") return Pipeline::LatticeSeries;
    if (text == "lattice-inversion") return Pipeline::LatticeInversion;
    fail(Err::InvalidConfig, "unknown pipeline '" + text + "'");
}

namespace {

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        require(pos == text.size(), Err::InvalidConfig, "trailing characters in " + key);
        return v;
    } catch (const SolverError&) {
        throw;
    } catch (...) {
        fail(Err::InvalidConfig, "cannot parse number '" + text + "' for " + key);
    }
}

int parse_int(const std::string& text, const std::string& key) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    require(ec == std::errc() && ptr == text.data() + text.size(), Err::InvalidConfig,
            "cannot parse integer '" + text + "' for " + key);
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trimmed(item);
        if (!item.empty()) values.push_back(parse_double(item, key));
    }
    return values;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

void RunConfig::validate() const {
    require(t_max > 0.0, Err::InvalidConfig, "t_max must be positive");
    require(step > 0.0 && step <= t_max, Err::InvalidConfig, "step must be in (0, t_max]");
    require(series_order >= 1 && series_order <= 20, Err::InvalidConfig,
            "series order must be in [1, 20]");
    require(inversion_nodes >= 16, Err::InvalidConfig, "inversion nodes must be >= 16");
    require(search_max > 0.0, Err::InvalidConfig, "search_max must be positive");
    require(!output.empty(), Err::InvalidConfig, "output path must not be empty");

    switch (system) {
        case SystemKind::Chain:
            require(pipeline == Pipeline::Exact || pipeline == Pipeline::Volterra ||
                        pipeline == Pipeline::Both,
                    Err::InvalidConfig, "chain systems support exact, volterra, or both");
            require(sites >= 2, Err::InvalidConfig, "chain needs at least 2 sites");
            require(boundary >= 1 && boundary < sites, Err::InvalidConfig,
                    "boundary must leave a site on each side");
            require(start >= 1 && start <= boundary, Err::InvalidConfig,
                    "start site must lie inside omega");
            require(site_energies.empty() || site_energies.size() == static_cast<std::size_t>(sites),
                    Err::InvalidConfig, "site_energies length must equal sites");
            require(couplings.empty() || couplings.size() == static_cast<std::size_t>(sites - 1),
                    Err::InvalidConfig, "couplings length must equal sites-1");
            break;
        case SystemKind::Lattice:
            require(pipeline == Pipeline::LatticeSeries || pipeline == Pipeline::LatticeInversion ||
                        pipeline == Pipeline::Volterra,
                    Err::InvalidConfig,
                    "lattice supports lattice-series, lattice-inversion, or volterra");
            break;
        case SystemKind::Classical2:
            require(pipeline == Pipeline::Volterra, Err::InvalidConfig,
                    "classical2 is solved by the volterra pipeline");
            require(rate > 0.0, Err::InvalidConfig, "rate must be positive");
            break;
    }
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig config;
    std::stringstream stream(text);
    std::string line;
    int lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, Err::InvalidConfig,
                "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));

        if (key == "system") {
            config.system = system_kind_from_string(value);
        } else if (key == "sites") {
            config.sites = parse_int(value, key);
        } else if (key == "boundary") {
            config.boundary = parse_int(value, key);
        } else if (key == "start") {
            config.start = parse_int(value, key);
        } else if (key == "site_energies") {
            config.site_energies = parse_list(value, key);
        } else if (key == "couplings") {
            config.couplings = parse_list(value, key);
        } else if (key == "rate") {
            config.rate = parse_double(value, key);
        } else if (key == "pipeline") {
            config.pipeline = pipeline_from_string(value);
        } else if (key == "t_max") {
            config.t_max = parse_double(value, key);
        } else if (key == "step") {
            config.step = parse_double(value, key);
        } else if (key == "series_order") {
            config.series_order = parse_int(value, key);
        } else if (key == "inversion_nodes") {
            config.inversion_nodes = parse_int(value, key);
        } else if (key == "search_max") {
            config.search_max = parse_double(value, key);
        } else if (key == "output") {
            config.output = value;
        } else {
            fail(Err::InvalidConfig, "unknown key '" + key + "'");
        }
    }
    return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Err::InvalidConfig, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

std::string RunConfig::to_text() const {
    std::string out;
    out += "# solver run configuration\n";
    out += "system = " + to_string(system) + "\n";
    out += "sites = " + std::to_string(sites) + "\n";
    out += "boundary = " + std::to_string(boundary) + "\n";
    out += "start = " + std::to_string(start) + "\n";
    if (!site_energies.empty()) out += "site_energies = " + format_list(site_energies) + "\n";
    if (!couplings.empty()) out += "couplings = " + format_list(couplings) + "\n";
    out += "rate = " + format_double(rate) + "\n";
    out += "pipeline = " + to_string(pipeline) + "\n";
    out += "t_max = " + format_double(t_max) + "\n";
    out += "step = " + format_double(step) + "\n";
    out += "series_order = " + std::to_string(series_order) + "\n";
    out += "inversion_nodes = " + std::to_string(inversion_nodes) + "\n";
    out += "search_max = " + format_double(search_max) + "\n";
    out += "output = " + output + "\n";
    return out;
}

} // namespace qfpt
