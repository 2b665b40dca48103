#pragma once

#include <array>
#include <variant>

namespace ofldg {

/// Uniform partition of [a, b]. Cells are indexed 0..n_cells-1 and faces
/// 0..n_cells, face j sitting at a + j*h.
struct Mesh1D {
    double a = 0.0;
    double b = 1.0;
    int n_cells = 2;
    double h = 0.5;

    double face(int j) const { return a + j * h; }
    double cell_left(int j) const { return face(j); }
    double cell_right(int j) const { return face(j + 1); }
    double center(int j) const { return a + (j + 0.5) * h; }

    /// Cell containing x; points on a face belong to the cell on the right,
    /// except the right endpoint.
    int locate(double x) const;
};

/// Tensor-product rectangular partition. Cell (i, j) has flat index i + nx*j.
struct Mesh2D {
    double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
    int nx = 2, ny = 2;
    double hx = 0.5, hy = 0.5;

    int n_cells() const { return nx * ny; }
    int index(int i, int j) const { return i + nx * j; }
    double center_x(int i) const { return ax + (i + 0.5) * hx; }
    double center_y(int j) const { return ay + (j + 0.5) * hy; }
    /// Cell diameter used by the damping term (max of the two widths).
    double h_cell() const { return hx > hy ? hx : hy; }
    Mesh1D axis_x() const { return {ax, bx, nx, hx}; }
    Mesh1D axis_y() const { return {ay, by, ny, hy}; }
};

Mesh1D build_uniform_1d(double a, double b, int n_cells);
Mesh2D build_uniform_2d(double ax, double bx, double ay, double by, int nx, int ny);

enum class Side { Left, Right };

/// Boundary treatment along one axis. CompactSupport behaves exactly like
/// Dirichlet(0, 0).
struct BoundaryKind {
    enum class Tag { Periodic, Dirichlet, CompactSupport };

    Tag tag = Tag::Periodic;
    double left_value = 0.0;
    double right_value = 0.0;

    static BoundaryKind periodic() { return {Tag::Periodic, 0.0, 0.0}; }
    static BoundaryKind dirichlet(double left, double right) { return {Tag::Dirichlet, left, right}; }
    static BoundaryKind compact_support() { return {Tag::CompactSupport, 0.0, 0.0}; }

    bool is_periodic() const { return tag == Tag::Periodic; }
    double value(Side side) const { return side == Side::Left ? left_value : right_value; }
};

using BoundaryPair = std::array<BoundaryKind, 2>;

/// Neighbor outside a Dirichlet boundary.
struct Ghost {
    double value = 0.0;
    bool operator==(const Ghost&) const = default;
};

using CellRef = std::variant<int, Ghost>;

CellRef neighbor_1d(const Mesh1D& mesh, int cell, Side side, const BoundaryKind& bc);

} // namespace ofldg
