#include "dfie/errors.hpp"
#include "dfie/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dfie {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_real(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Config parse_config(std::istream& in) {
    Config c;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", number);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", number);
        if (c.count(key)) throw ParseError("duplicate key '" + key + "'", number);
        c[key] = value;
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file '" + path + "'");
    return parse_config(f);
}

std::vector<Vec3> parse_points(std::istream& in) {
    std::vector<Vec3> pts;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        Vec3 p;
        std::string extra;
        if (!(ss >> p(0) >> p(1) >> p(2))) throw ParseError("expected three numbers 'x y z'", number);
        if (ss >> extra) throw ParseError("unexpected trailing token '" + extra + "'", number);
        if (!p.allFinite()) throw ParseError("non-finite coordinate", number);
        pts.push_back(p);
    }
    return pts;
}

std::vector<Vec3> load_points(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open point file '" + path + "'");
    return parse_points(f);
}

}  // namespace dfie
