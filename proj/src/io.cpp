#include "circmean/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace circmean {

namespace {

double to_radians(double value, bool degrees) {
    return degrees ? value * kPi / 180.0 : value;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(context + ": malformed number '" + token + "'");
    }
}

}  // namespace

CircularMeasure load_angle_file(const std::string& path, bool degrees) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open angle file: " + path);
    std::vector<Atom> atoms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const double v = parse_real(line, path + ":" + std::to_string(lineno));
        atoms.push_back({to_radians(v, degrees), 1.0});
    }
    if (atoms.empty()) throw std::invalid_argument(path + ": no angles found");
    return CircularMeasure::from_atoms(std::move(atoms));
}

CircularMeasure load_weighted_csv(const std::string& path, bool degrees) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
    std::vector<Atom> atoms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find("angle") != std::string::npos) continue;  // header
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'angle,weight'");
        const std::string ctx = path + ":" + std::to_string(lineno);
        const double a = parse_real(strip(line.substr(0, comma)), ctx);
        const double w = parse_real(strip(line.substr(comma + 1)), ctx);
        atoms.push_back({to_radians(a, degrees), w});
    }
    if (atoms.empty()) throw std::invalid_argument(path + ": no atoms found");
    return CircularMeasure::from_atoms(std::move(atoms));
}

namespace {

CircularMeasure parse_single_density(const std::string& spec, int grid) {
    if (spec == "uniform") return CircularMeasure::uniform(grid);
    if (spec.rfind("vonmises:", 0) == 0) {
        double kappa = 1.0, mu = 0.0;
        std::stringstream ss(spec.substr(9));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("density spec: expected key=value in '" + kv + "'");
            const std::string key = strip(kv.substr(0, eq));
            const double value = parse_real(strip(kv.substr(eq + 1)), "density spec");
            if (key == "kappa") kappa = value;
            else if (key == "mu") mu = value;
            else throw std::invalid_argument("density spec: unknown parameter '" + key + "'");
        }
        return CircularMeasure::von_mises(kappa, mu, grid);
    }
    throw std::invalid_argument("unknown density spec: '" + spec + "'");
}

}  // namespace

CircularMeasure parse_density_spec(const std::string& spec, int grid) {
    if (spec.rfind("mixture:", 0) == 0) {
        std::vector<CircularMeasure> parts;
        std::vector<double> weights;
        std::stringstream ss(spec.substr(8));
        std::string comp;
        while (std::getline(ss, comp, ';')) {
            comp = strip(comp);
            double w = 1.0;
            const auto at = comp.rfind('@');
            if (at != std::string::npos) {
                w = parse_real(strip(comp.substr(at + 1)), "mixture weight");
                comp = strip(comp.substr(0, at));
            }
            parts.push_back(parse_single_density(comp, grid));
            weights.push_back(w);
        }
        if (parts.empty()) throw std::invalid_argument("mixture spec has no components");
        return CircularMeasure::mixture(parts, weights);
    }
    return parse_single_density(spec, grid);
}

}  // namespace circmean
