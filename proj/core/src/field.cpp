#include "hslab/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hslab {

Field make_field(const GridSpec& grid, double fill) {
    Field f;
    f.grid = grid;
    f.values.assign(grid.total_cells(), fill);
    return f;
}

double boundary_shell_fraction(const Field& u) {
    const GridSpec& g = u.grid;
    double max_all = 0.0, max_shell = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = std::fabs(u.values[i]);
        if (a > max_all) max_all = a;
        const auto idx = g.unflatten(i);
        bool on_shell = false;
        for (int d = 0; d < g.ndim; ++d)
            if (idx[d] == 0 || idx[d] == g.n_cells - 1) on_shell = true;
        if (on_shell && a > max_shell) max_shell = a;
    }
    return max_all > 0.0 ? max_shell / max_all : 0.0;
}

void save_field(const Field& u, const std::filesystem::path& path) {
    if (u.values.size() != u.grid.total_cells())
        throw std::invalid_argument("field value count does not match its grid");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", u.grid.L);
    out << u.grid.ndim << ' ' << u.grid.n_cells << ' ' << buf << '\n';
    for (double v : u.values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write failure on " + path.string());
}

Field load_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty field file " + path.string());
    std::istringstream hs(header);
    int ndim = 0, n_cells = 0;
    double L = 0.0;
    if (!(hs >> ndim >> n_cells >> L))
        throw std::runtime_error("malformed header in " + path.string());
    std::string trailing;
    if (hs >> trailing) throw std::runtime_error("malformed header in " + path.string());

    Field f = make_field(make_grid(ndim, n_cells, L));
    std::size_t count = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (count >= f.values.size())
            throw std::runtime_error("too many values in " + path.string());
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("unparseable value in " + path.string());
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos != line.size()) throw std::runtime_error("unparseable value in " + path.string());
        if (!std::isfinite(v)) throw std::runtime_error("non-finite value in " + path.string());
        f.values[count++] = v;
    }
    if (count != f.values.size())
        throw std::runtime_error("value count mismatch in " + path.string());
    return f;
}

}  // namespace hslab
