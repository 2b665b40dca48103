#include "ofldg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

namespace {

void check_axis(double lo, double hi, int n, const char* axis)
{
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorCode::InvalidDomain,
                    std::string("empty or non-finite interval along ") + axis);
    }
    if (n < 2) {
        throw Error(ErrorCode::TooFewCells,
                    std::string("need at least 2 cells along ") + axis + ", got " + std::to_string(n));
    }
}

} // namespace

int Mesh1D::locate(double x) const
{
    const auto j = static_cast<int>(std::floor((x - a) / h));
    return std::clamp(j, 0, n_cells - 1);
}

Mesh1D build_uniform_1d(double a, double b, int n_cells)
{
    check_axis(a, b, n_cells, "x");
    return {a, b, n_cells, (b - a) / n_cells};
}

Mesh2D build_uniform_2d(double ax, double bx, double ay, double by, int nx, int ny)
{
    check_axis(ax, bx, nx, "x");
    check_axis(ay, by, ny, "y");
    return {ax, bx, ay, by, nx, ny, (bx - ax) / nx, (by - ay) / ny};
}

CellRef neighbor_1d(const Mesh1D& mesh, int cell, Side side, const BoundaryKind& bc)
{
    const int n = mesh.n_cells;
    const int target = side == Side::Left ? cell - 1 : cell + 1;
    if (target >= 0 && target < n) {
        return target;
    }
    if (bc.is_periodic()) {
        return (target + n) % n;
    }
    return Ghost{bc.value(side)};
}

} // namespace ofldg
