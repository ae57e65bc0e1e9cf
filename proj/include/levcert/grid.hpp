#pragma once

// Uniform 2-D sample grids plus the finite-difference stencils the harness
// uses for PDE-residual checks. Stencils operate on callables so closed-form
// fields are differenced without first materializing a grid.

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levcert/numerics.hpp"

namespace levcert {

struct Grid2D {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> values;  // values[j * nx + i] is the sample at (x(i), y(j))
    std::string tag;             // closed-form provenance when available

    double dx() const { return (x_hi - x_lo) / (nx - 1); }
    double dy() const { return (y_hi - y_lo) / (ny - 1); }
    double x(int i) const { return x_lo + i * dx(); }
    double y(int j) const { return y_lo + j * dy(); }
    double at(int i, int j) const { return values[static_cast<size_t>(j) * nx + i]; }
    double& at(int i, int j) { return values[static_cast<size_t>(j) * nx + i]; }

    bool contains(double px, double py) const {
        return px >= x_lo && px <= x_hi && py >= y_lo && py <= y_hi;
    }

    // Nearest grid node; ties resolve toward the lower index via rounding.
    std::pair<int, int> nearest(double px, double py) const {
        int i = static_cast<int>(std::lround((px - x_lo) / dx()));
        int j = static_cast<int>(std::lround((py - y_lo) / dy()));
        i = std::max(0, std::min(nx - 1, i));
        j = std::max(0, std::min(ny - 1, j));
        return {i, j};
    }

    double interpolate(double px, double py) const {
        if (!contains(px, py)) throw std::domain_error("grid: point outside sampled rectangle");
        const double fx = (px - x_lo) / dx();
        const double fy = (py - y_lo) / dy();
        const int i = std::min(nx - 2, static_cast<int>(fx));
        const int j = std::min(ny - 2, static_cast<int>(fy));
        const double sx = fx - i;
        const double sy = fy - j;
        return (1 - sx) * (1 - sy) * at(i, j) + sx * (1 - sy) * at(i + 1, j) +
               (1 - sx) * sy * at(i, j + 1) + sx * sy * at(i + 1, j + 1);
    }

    template <class F>
    static Grid2D sample(F&& f, double x_lo, double x_hi, double y_lo, double y_hi, int nx,
                         int ny, std::string tag = {}) {
        if (nx < 2 || ny < 2) throw std::invalid_argument("grid: need at least 2 nodes per axis");
        if (!(x_hi > x_lo) || !(y_hi > y_lo))
            throw std::invalid_argument("grid: axis ranges must be increasing");
        Grid2D g;
        g.x_lo = x_lo;
        g.x_hi = x_hi;
        g.y_lo = y_lo;
        g.y_hi = y_hi;
        g.nx = nx;
        g.ny = ny;
        g.tag = std::move(tag);
        g.values.resize(static_cast<size_t>(nx) * ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) g.at(i, j) = f(g.x(i), g.y(j));
        return g;
    }
};

// CSV layout: two header rows (axis range + node count), then one line per
// y-row of comma-separated values.
inline void write_grid_csv(const Grid2D& g, std::ostream& out) {
    out << "x," << format_sig(g.x_lo, 12) << "," << format_sig(g.x_hi, 12) << "," << g.nx << "\n";
    out << "y," << format_sig(g.y_lo, 12) << "," << format_sig(g.y_hi, 12) << "," << g.ny << "\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) out << ",";
            out << format_sig(g.at(i, j), 12);
        }
        out << "\n";
    }
}

inline void write_grid_csv(const Grid2D& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("grid: cannot open " + path + " for writing");
    write_grid_csv(g, out);
}

inline Grid2D read_grid_csv(std::istream& in) {
    auto parse_header = [](const std::string& line, char axis, double& lo, double& hi, int& n) {
        std::stringstream ss(line);
        std::string item;
        std::getline(ss, item, ',');
        if (item.size() != 1 || item[0] != axis)
            throw std::runtime_error("grid: malformed CSV header");
        std::getline(ss, item, ',');
        lo = std::stod(item);
        std::getline(ss, item, ',');
        hi = std::stod(item);
        std::getline(ss, item, ',');
        n = std::stoi(item);
    };
    Grid2D g;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("grid: empty CSV");
    parse_header(line, 'x', g.x_lo, g.x_hi, g.nx);
    if (!std::getline(in, line)) throw std::runtime_error("grid: truncated CSV");
    parse_header(line, 'y', g.y_lo, g.y_hi, g.ny);
    g.values.reserve(static_cast<size_t>(g.nx) * g.ny);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) g.values.push_back(std::stod(item));
    }
    if (g.values.size() != static_cast<size_t>(g.nx) * g.ny)
        throw std::runtime_error("grid: CSV value count does not match header");
    return g;
}

inline Grid2D read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("grid: cannot open " + path);
    return read_grid_csv(in);
}

// ---------------------------------------------------------------------------
// Centered second-order stencils on callables.

template <class F>
double laplacian_2d(F&& f, double x, double y, double g) {
    return (f(x + g, y) + f(x - g, y) + f(x, y + g) + f(x, y - g) - 4.0 * f(x, y)) / (g * g);
}

// Euler-Darboux operator u_rr + u_hh + ((n-2)/rho) u_r; rho must stay one
// step away from the axis so the stencil never crosses it.
template <class F>
double euler_darboux_residual(F&& u, double rho, double h, double g, int n) {
    if (!(rho - g > 0.0))
        throw std::domain_error("euler_darboux_residual: stencil touches the axis");
    const double c = u(rho, h);
    const double urr = (u(rho + g, h) - 2.0 * c + u(rho - g, h)) / (g * g);
    const double uhh = (u(rho, h + g) - 2.0 * c + u(rho, h - g)) / (g * g);
    const double ur = (u(rho + g, h) - u(rho - g, h)) / (2.0 * g);
    return urr + uhh + (static_cast<double>(n - 2) / rho) * ur;
}

// 3-D Laplacian in Cartesian coordinates for complex-valued fields; exact for
// polynomial fields up to rounding, which is what the lift checks rely on.
template <class F>
std::complex<double> laplacian_3d(F&& f, double x1, double x2, double h, double g) {
    const std::complex<double> c = f(x1, x2, h);
    return (f(x1 + g, x2, h) + f(x1 - g, x2, h) + f(x1, x2 + g, h) + f(x1, x2 - g, h) +
            f(x1, x2, h + g) + f(x1, x2, h - g) - 6.0 * c) /
           (g * g);
}

// Cylindrical-form 3-D Laplacian v_rr + (1/rho) v_r + (1/rho^2) v_pp + v_hh;
// O(g^2) even on polynomial fields because of the angular difference.
template <class F>
std::complex<double> laplacian_3d_cyl(F&& v, double phi, double rho, double h, double g_phi,
                                      double g, double g_h) {
    if (!(rho - g > 0.0))
        throw std::domain_error("laplacian_3d_cyl: stencil touches the axis");
    const std::complex<double> c = v(phi, rho, h);
    const std::complex<double> vrr = (v(phi, rho + g, h) - 2.0 * c + v(phi, rho - g, h)) / (g * g);
    const std::complex<double> vr = (v(phi, rho + g, h) - v(phi, rho - g, h)) / (2.0 * g);
    const std::complex<double> vpp =
        (v(phi + g_phi, rho, h) - 2.0 * c + v(phi - g_phi, rho, h)) / (g_phi * g_phi);
    const std::complex<double> vhh = (v(phi, rho, h + g_h) - 2.0 * c + v(phi, rho, h - g_h)) / (g_h * g_h);
    return vrr + vr / rho + vpp / (rho * rho) + vhh;
}

// General n-dimensional Laplacian at a cylinder point (x, y), x in R^{n-1}.
template <class F>
double laplacian_nd(F&& f, std::vector<double> x, double y, double g) {
    const double c = f(x, y);
    double acc = -2.0 * static_cast<double>(x.size() + 1) * c;
    for (size_t a = 0; a < x.size(); ++a) {
        const double saved = x[a];
        x[a] = saved + g;
        acc += f(x, y);
        x[a] = saved - g;
        acc += f(x, y);
        x[a] = saved;
    }
    acc += f(x, y + g) + f(x, y - g);
    return acc / (g * g);
}

// ---------------------------------------------------------------------------
// Richardson helpers.

// Observed convergence order between residual maxima at spacing g and g/2.
inline double richardson_order(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0))
        throw std::domain_error("richardson_order: residuals must be positive");
    return std::log2(coarse / fine);
}

// Conservative sup estimate from two nested grids: the fine value plus the
// observed refinement gain again, never below the fine value itself.
inline double richardson_sup(double coarse_sup, double fine_sup) {
    return fine_sup + std::max(0.0, fine_sup - coarse_sup);
}

}  // namespace levcert
