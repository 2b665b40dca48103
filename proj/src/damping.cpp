#include "ofldg/damping.hpp"

#include <cmath>
#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

void DampingParams::validate() const
{
    if (enabled && k < 1) {
        throw Error(ErrorCode::InvalidArgument, "damping requires k >= 1, got k = " + std::to_string(k));
    }
}

double damping_prefactor(int k, int l, double h)
{
    double factorial = 1.0;
    for (int i = 2; i <= l; ++i) {
        factorial *= i;
    }
    return 2.0 * (2 * l + 1) * std::pow(h, l) / ((2 * k - 1) * factorial);
}

double sigma_1d(const DGField1D& u, int cell, int l, const BoundaryKind& bc)
{
    const double right = jump(u, cell + 1, l, bc);
    const double left = jump(u, cell, l, bc);
    return damping_prefactor(u.degree(), l, u.mesh().h) * std::sqrt(right * right + left * left);
}

double sigma_2d(const DGField2D& u, int i, int j, int l, const BoundaryPair& bc)
{
    const Mesh2D& mesh = u.mesh();
    double total = 0.0;
    for (int ax = l; ax >= 0; --ax) {
        const int ay = l - ax;
        double sum = 0.0;
        for (int corner = 0; corner < 4; ++corner) {
            const int sx = (corner & 1) ? 1 : -1;
            const int sy = (corner & 2) ? 1 : -1;
            const double self = u.eval(i, j, sx, sy, ax, ay);
            // neighbor across the x edge, then across the y edge
            for (int dir = 0; dir < 2; ++dir) {
                int ni = dir == 0 ? i + sx : i;
                int nj = dir == 1 ? j + sy : j;
                const int n_along = dir == 0 ? mesh.nx : mesh.ny;
                int& idx = dir == 0 ? ni : nj;
                double other = 0.0;
                if (idx >= 0 && idx < n_along) {
                    other = u.eval(ni, nj, dir == 0 ? -sx : sx, dir == 1 ? -sy : sy, ax, ay);
                } else if (bc[dir].is_periodic()) {
                    idx = (idx + n_along) % n_along;
                    other = u.eval(ni, nj, dir == 0 ? -sx : sx, dir == 1 ? -sy : sy, ax, ay);
                } else if (l == 0) {
                    const int s = dir == 0 ? sx : sy;
                    other = bc[dir].value(s > 0 ? Side::Right : Side::Left);
                } else {
                    other = self;
                }
                sum += (other - self) * (other - self);
            }
        }
        total += std::sqrt(sum / 4.0);
    }
    return damping_prefactor(u.degree(), l, mesh.h_cell()) * total;
}

Damping1D::Damping1D(const Mesh1D& mesh, int k)
    : mesh_(mesh), k_(k), basis_(k, k + 2)
{
    for (int l = 0; l <= k; ++l) {
        prefactor_.push_back(damping_prefactor(k, l, mesh.h));
    }
}

std::vector<double> Damping1D::sigmas(const DGField1D& u, const BoundaryKind& bc) const
{
    const int n = mesh_.n_cells;
    const int nm = k_ + 1;
    // jumps[face * nm + l]
    std::vector<double> jumps((n + 1) * nm, 0.0);
    std::vector<double> scale(nm);
    for (int l = 0; l < nm; ++l) {
        scale[l] = std::pow(2.0 / mesh_.h, l);
    }
    const auto end_derivative = [&](int cell, bool right_end, int l) {
        const auto c = u.cell(cell);
        double s = 0.0;
        for (int m = l; m < nm; ++m) {
            s += c[m] * (right_end ? basis_.right(m, l) : basis_.left(m, l));
        }
        return s * scale[l];
    };
    for (int f = 0; f <= n; ++f) {
        for (int l = 0; l < nm; ++l) {
            double minus = 0.0;
            double plus = 0.0;
            if (f > 0 && f < n) {
                minus = end_derivative(f - 1, true, l);
                plus = end_derivative(f, false, l);
            } else if (bc.is_periodic()) {
                minus = end_derivative(n - 1, true, l);
                plus = end_derivative(0, false, l);
            } else if (f == 0) {
                plus = end_derivative(0, false, l);
                minus = l == 0 ? bc.left_value : plus;
            } else {
                minus = end_derivative(n - 1, true, l);
                plus = l == 0 ? bc.right_value : minus;
            }
            jumps[f * nm + l] = plus - minus;
        }
    }
    std::vector<double> out(n * nm);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < nm; ++l) {
            const double a = jumps[j * nm + l];
            const double b = jumps[(j + 1) * nm + l];
            out[j * nm + l] = prefactor_[l] * std::sqrt(a * a + b * b);
        }
    }
    return out;
}

void Damping1D::apply(const DGField1D& u, DGField1D& dudt, const BoundaryKind& bc) const
{
    const int nm = k_ + 1;
    const auto sigma = sigmas(u, bc);
    const double inv_h = 1.0 / mesh_.h;
    for (int j = 0; j < mesh_.n_cells; ++j) {
        const auto c = u.cell(j);
        auto r = dudt.cell(j);
        // mode m survives P^{l-1} for l <= m only when m <= max(l-1, 0)
        double cumulative = sigma[j * nm];
        for (int m = 1; m < nm; ++m) {
            cumulative += sigma[j * nm + m];
            r[m] -= cumulative * inv_h * c[m];
        }
    }
}

Damping2D::Damping2D(const Mesh2D& mesh, const ModeSet& modes)
    : mesh_(mesh), modes_(modes)
{
    const int k = modes.degree();
    for (int l = 0; l <= k; ++l) {
        for (int ax = l; ax >= 0; --ax) {
            alphas_.push_back({ax, l - ax});
            alpha_order_.push_back(l);
        }
        prefactor_.push_back(damping_prefactor(k, l, mesh.h_cell()));
    }
    const int na = static_cast<int>(alphas_.size());
    const int nm = modes.size();
    table_.resize(4 * na * nm);
    for (int corner = 0; corner < 4; ++corner) {
        const double sx = (corner & 1) ? 1.0 : -1.0;
        const double sy = (corner & 2) ? 1.0 : -1.0;
        for (int a = 0; a < na; ++a) {
            const auto [ax, ay] = alphas_[a];
            const double scale = std::pow(2.0 / mesh.hx, ax) * std::pow(2.0 / mesh.hy, ay);
            for (int m = 0; m < nm; ++m) {
                table_[(corner * na + a) * nm + m] = scale * legendre_orthonormal_derivative(modes[m][0], ax, sx) *
                                                     legendre_orthonormal_derivative(modes[m][1], ay, sy);
            }
        }
    }
}

std::vector<double> Damping2D::corner_derivatives(const DGField2D& u) const
{
    const int na = static_cast<int>(alphas_.size());
    const int nm = modes_.size();
    const int n_cells = mesh_.n_cells();
    std::vector<double> out(static_cast<std::size_t>(n_cells) * 4 * na);
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int cell = 0; cell < n_cells; ++cell) {
        const auto c = u.cell(cell);
        for (int corner = 0; corner < 4; ++corner) {
            for (int a = 0; a < na; ++a) {
                const double* row = &table_[(corner * na + a) * nm];
                double s = 0.0;
                for (int m = 0; m < nm; ++m) {
                    s += row[m] * c[m];
                }
                out[(static_cast<std::size_t>(cell) * 4 + corner) * na + a] = s;
            }
        }
    }
    return out;
}

std::vector<double> Damping2D::sigmas(const DGField2D& u, const BoundaryPair& bc) const
{
    const int k = modes_.degree();
    const int nl = k + 1;
    const int na = static_cast<int>(alphas_.size());
    const auto corner = corner_derivatives(u);
    std::vector<double> out(static_cast<std::size_t>(mesh_.n_cells()) * nl, 0.0);
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < mesh_.ny; ++j) {
        std::vector<double> sums(na);
        for (int i = 0; i < mesh_.nx; ++i) {
            const int self = mesh_.index(i, j);
            std::fill(sums.begin(), sums.end(), 0.0);
            for (int cr = 0; cr < 4; ++cr) {
                const int sx = (cr & 1) ? 1 : -1;
                const int sy = (cr & 2) ? 1 : -1;
                const double* mine = &corner[(static_cast<std::size_t>(self) * 4 + cr) * na];
                for (int dir = 0; dir < 2; ++dir) {
                    int ni = dir == 0 ? i + sx : i;
                    int nj = dir == 1 ? j + sy : j;
                    int& idx = dir == 0 ? ni : nj;
                    const int n_along = dir == 0 ? mesh_.nx : mesh_.ny;
                    const double* theirs = nullptr;
                    double ghost = 0.0;
                    if (idx < 0 || idx >= n_along) {
                        if (bc[dir].is_periodic()) {
                            idx = (idx + n_along) % n_along;
                        } else {
                            const int s = dir == 0 ? sx : sy;
                            ghost = bc[dir].value(s > 0 ? Side::Right : Side::Left);
                            idx = -1;
                        }
                    }
                    if (idx >= 0) {
                        const int other_corner = cr ^ (dir == 0 ? 1 : 2);
                        theirs = &corner[(static_cast<std::size_t>(mesh_.index(ni, nj)) * 4 + other_corner) * na];
                    }
                    for (int a = 0; a < na; ++a) {
                        double other = 0.0;
                        if (theirs != nullptr) {
                            other = theirs[a];
                        } else {
                            other = alpha_order_[a] == 0 ? ghost : mine[a];
                        }
                        const double d = other - mine[a];
                        sums[a] += d * d;
                    }
                }
            }
            double* sig = &out[static_cast<std::size_t>(self) * nl];
            for (int a = 0; a < na; ++a) {
                sig[alpha_order_[a]] += std::sqrt(0.25 * sums[a]);
            }
            for (int l = 0; l < nl; ++l) {
                sig[l] *= prefactor_[l];
            }
        }
    }
    return out;
}

void Damping2D::apply(const DGField2D& u, DGField2D& dudt, const BoundaryPair& bc) const
{
    const int nl = modes_.degree() + 1;
    const int nm = modes_.size();
    const auto sigma = sigmas(u, bc);
    const double inv_h = 1.0 / mesh_.h_cell();
    std::vector<double> cumulative(nl);
    for (int cell = 0; cell < mesh_.n_cells(); ++cell) {
        const double* sig = &sigma[static_cast<std::size_t>(cell) * nl];
        cumulative[0] = sig[0];
        for (int l = 1; l < nl; ++l) {
            cumulative[l] = cumulative[l - 1] + sig[l];
        }
        const auto c = u.cell(cell);
        auto r = dudt.cell(cell);
        for (int m = 1; m < nm; ++m) {
            r[m] -= cumulative[modes_.truncation_degree(m)] * inv_h * c[m];
        }
    }
}

void apply_damping(const DGField1D& u, DGField1D& dudt, const DampingParams& params, const BoundaryKind& bc)
{
    params.validate();
    if (!params.enabled) {
        return;
    }
    Damping1D(u.mesh(), u.degree()).apply(u, dudt, bc);
}

void apply_damping(const DGField2D& u, DGField2D& dudt, const DampingParams& params, const BoundaryPair& bc)
{
    params.validate();
    if (!params.enabled) {
        return;
    }
    Damping2D(u.mesh(), u.modes()).apply(u, dudt, bc);
}

} // namespace ofldg
