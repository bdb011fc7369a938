#include "vnls/config.hpp"

#include <fstream>
#include <sstream>

#include "vnls/errors.hpp"

namespace vnls {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("bad numeric value for '" + key + "': " + v);
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long out;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("bad integer value for '" + key + "': " + v);
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, block;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed block header");
            block = trim(line.substr(1, line.size() - 2));
            if (block != "params" && block != "grid" && block != "solver" && block != "output")
                throw ConfigError("unknown block [" + block + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (block.empty()) throw ConfigError("key '" + key + "' outside any [block]");

        if (block == "params") {
            if (key == "N")
                cfg.N = static_cast<int>(to_int(key, val));
            else if (key == "a")
                cfg.a = to_real(key, val);
            else if (key == "b")
                cfg.b = to_real(key, val);
            else if (key == "s")
                cfg.s = to_real(key, val);
            else if (key == "mu")
                cfg.mu = to_real(key, val);
            else
                throw ConfigError("unknown key '" + key + "' in [params]");
        } else if (block == "grid") {
            if (key == "r_min")
                cfg.r_min = to_real(key, val);
            else if (key == "r_max")
                cfg.r_max = to_real(key, val);
            else if (key == "M")
                cfg.M = static_cast<std::size_t>(to_int(key, val));
            else if (key == "spacing") {
                if (val == "uniform")
                    cfg.spacing = Spacing::uniform;
                else if (val == "graded")
                    cfg.spacing = Spacing::graded;
                else
                    throw ConfigError("spacing must be 'uniform' or 'graded', got " + val);
            } else if (key == "tensor_n")
                cfg.tensor_n = static_cast<std::size_t>(to_int(key, val));
            else if (key == "L")
                cfg.tensor_L = to_real(key, val);
            else
                throw ConfigError("unknown key '" + key + "' in [grid]");
        } else if (block == "solver") {
            if (key == "max_iters")
                cfg.solver.max_iters = static_cast<int>(to_int(key, val));
            else if (key == "tol")
                cfg.solver.tol = to_real(key, val);
            else if (key == "path_nodes")
                cfg.solver.path_nodes = static_cast<int>(to_int(key, val));
            else if (key == "seed")
                cfg.solver.seed = static_cast<std::uint64_t>(to_int(key, val));
            else
                throw ConfigError("unknown key '" + key + "' in [solver]");
        } else { // output
            if (key == "directory")
                cfg.directory = val;
            else if (key == "precision")
                cfg.precision = static_cast<int>(to_int(key, val));
            else
                throw ConfigError("unknown key '" + key + "' in [output]");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace vnls
