#ifndef KIRCHHOFF_FIELD_IO_HPP
#define KIRCHHOFF_FIELD_IO_HPP

#include "kirchhoff/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace kirchhoff {

/// %.17g round-trips an IEEE double exactly through strtod.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Field CSV: header `# mesh: dim,nx[,ny],Lx[,Ly]`, then one `x[,y],value`
/// row per interior node in storage (row-major) order, 17 significant digits.
inline std::string field_to_csv(const Field<double>& u) {
    const auto& m = u.mesh();
    std::ostringstream out;
    out << "# mesh: " << m.dimension << "," << m.nx;
    if (m.dimension == 2) out << "," << m.ny;
    out << "," << format_g17(m.Lx);
    if (m.dimension == 2) out << "," << format_g17(m.Ly);
    out << "\n";
    for (int k = 0; k < u.size(); ++k) {
        const auto p = m.point(k);
        out << format_g17(p[0]);
        if (m.dimension == 2) out << "," << format_g17(p[1]);
        out << "," << format_g17(u[k]) << "\n";
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline double parse_double(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw io_error(std::string("field csv: cannot parse ") + what + " from '" + s + "'");
    }
    if (pos != s.size())
        throw io_error(std::string("field csv: trailing characters in ") + what + " '" + s + "'");
    return v;
}

}  // namespace detail

inline Field<double> field_from_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw io_error("field csv: empty input");
    const std::string prefix = "# mesh: ";
    if (header.rfind(prefix, 0) != 0)
        throw io_error("field csv: missing '# mesh:' header");
    const auto head = detail::split_csv_line(header.substr(prefix.size()));
    if (head.size() != 3 && head.size() != 5)
        throw io_error("field csv: header must be dim,nx,Lx or dim,nx,ny,Lx,Ly");
    const int dim = static_cast<int>(detail::parse_double(head[0], "dimension"));

    Mesh<double> mesh;
    if (dim == 1 && head.size() == 3) {
        mesh = build_mesh_1d(detail::parse_double(head[2], "Lx"),
                             static_cast<int>(detail::parse_double(head[1], "nx")));
    } else if (dim == 2 && head.size() == 5) {
        mesh = build_mesh_2d(detail::parse_double(head[3], "Lx"), detail::parse_double(head[4], "Ly"),
                             static_cast<int>(detail::parse_double(head[1], "nx")),
                             static_cast<int>(detail::parse_double(head[2], "ny")));
    } else {
        throw io_error("field csv: header fields inconsistent with dimension");
    }

    Vector<double> values(mesh.size());
    std::string line;
    int k = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (k >= mesh.size()) throw io_error("field csv: more rows than interior nodes");
        const auto parts = detail::split_csv_line(line);
        if (static_cast<int>(parts.size()) != dim + 1)
            throw io_error("field csv: row " + std::to_string(k + 1) + " has wrong column count");
        const auto expect = mesh.point(k);
        const double x = detail::parse_double(parts[0], "x");
        if (std::abs(x - expect[0]) > 1e-9 * std::max(1.0, mesh.Lx))
            throw io_error("field csv: node coordinates do not match the header mesh");
        if (dim == 2) {
            const double y = detail::parse_double(parts[1], "y");
            if (std::abs(y - expect[1]) > 1e-9 * std::max(1.0, mesh.Ly))
                throw io_error("field csv: node coordinates do not match the header mesh");
        }
        values[k] = detail::parse_double(parts[dim], "value");
        ++k;
    }
    if (k != mesh.size())
        throw io_error("field csv: expected " + std::to_string(mesh.size()) + " rows, got " +
                       std::to_string(k));
    return Field<double>(mesh, std::move(values));
}

inline Field<double> read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open field csv '" + path + "'");
    return field_from_csv(in);
}

inline void write_field_csv(const std::string& path, const Field<double>& u) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write field csv '" + path + "'");
    out << field_to_csv(u);
    if (!out) throw io_error("write failed for '" + path + "'");
}

}  // namespace kirchhoff

#endif
