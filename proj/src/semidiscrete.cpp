#include "ofldg/semidiscrete.hpp"

#include <string>

#include "ofldg/error.hpp"

namespace ofldg {

namespace {

DampingParams checked_damping(DampingParams damping, int k)
{
    damping.k = k;
    damping.validate();
    return damping;
}

// One face of a 1D line of cells: the neighbors, or -1 for a Dirichlet ghost.
struct FacePair {
    int minus = -1;
    int plus = -1;
};

FacePair face_cells(int f, int n, bool periodic)
{
    if (f > 0 && f < n) {
        return {f - 1, f};
    }
    if (periodic) {
        return {n - 1, 0};
    }
    return f == 0 ? FacePair{-1, 0} : FacePair{n - 1, -1};
}

// Interior-penalty correction of the q trace at a Dirichlet face; n is the outward
// normal. Restores the optimal order lost by copying q into the ghost, and is
// dissipative for homogeneous data since g is nondecreasing.
constexpr double boundary_penalty = 1.0;

double penalized_flux(double r, double g_int, double g_ghost, double n, double h)
{
    return r * boundary_penalty / h * (g_int - g_ghost) * n;
}

} // namespace

// ---------------------------------------------------------------------------
// 1D

Scheme1D::Scheme1D(ProblemSpec problem, FluxConfig flux, DampingParams damping, const Mesh1D& mesh, int k)
    : problem_(std::move(problem)),
      flux_(flux),
      damping_(checked_damping(damping, k)),
      mesh_(mesh),
      k_(k),
      basis_(k, k + 2),
      damper_(mesh, k)
{
    flux_.validate();
}

void Scheme1D::evaluate(const DGField1D& u, double t, DGField1D& q, DGField1D* dudt) const
{
    const BoundaryKind bc = problem_.boundary_at(t)[0];
    const bool periodic = bc.is_periodic();
    const Coefficients& cf = problem_.coeffs[0];
    const int n = mesh_.n_cells;
    const int nm = k_ + 1;
    const int nq = basis_.n_quad();
    const auto& w = basis_.quad().weights;
    const double scale = 2.0 / mesh_.h;
    const double theta = flux_.theta_diff[0];

    std::vector<double> uq(n * nq), ul(n), ur(n);
    for (int j = 0; j < n; ++j) {
        const auto c = u.cell(j);
        double left = 0.0;
        double right = 0.0;
        for (int m = 0; m < nm; ++m) {
            left += c[m] * basis_.left(m);
            right += c[m] * basis_.right(m);
        }
        ul[j] = left;
        ur[j] = right;
        for (int p = 0; p < nq; ++p) {
            double v = 0.0;
            for (int m = 0; m < nm; ++m) {
                v += c[m] * basis_.value(p, m);
            }
            uq[j * nq + p] = v;
        }
    }

    std::vector<double> um(n + 1), up(n + 1), gm(n + 1), gp(n + 1), ratio(n + 1), hq(n + 1);
    for (int f = 0; f <= n; ++f) {
        const FacePair cells = face_cells(f, n, periodic);
        um[f] = cells.minus >= 0 ? ur[cells.minus] : bc.left_value;
        up[f] = cells.plus >= 0 ? ul[cells.plus] : bc.right_value;
        gm[f] = cf.g(um[f]);
        gp[f] = cf.g(up[f]);
        ratio[f] = degenerate_ratio(gm[f], gp[f], cf.b, um[f], up[f], flux_.jump_tol);
        if (cells.minus < 0) {
            hq[f] = -gm[f];
        } else if (cells.plus < 0) {
            hq[f] = -gp[f];
        } else {
            hq[f] = -0.5 * (gm[f] + gp[f]) + (theta - 0.5) * ratio[f] * (up[f] - um[f]);
        }
    }

    std::vector<double> gq(nq);
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < nq; ++p) {
            gq[p] = cf.g(uq[j * nq + p]);
        }
        auto out = q.cell(j);
        for (int m = 0; m < nm; ++m) {
            double s = 0.0;
            for (int p = 0; p < nq; ++p) {
                s -= w[p] * gq[p] * basis_.derivative(p, m);
            }
            s += -hq[j + 1] * basis_.right(m) + hq[j] * basis_.left(m);
            out[m] = scale * s;
        }
    }
    if (dudt == nullptr) {
        return;
    }

    std::vector<double> qq(n * nq), ql(n), qr(n);
    for (int j = 0; j < n; ++j) {
        const auto c = q.cell(j);
        double left = 0.0;
        double right = 0.0;
        for (int m = 0; m < nm; ++m) {
            left += c[m] * basis_.left(m);
            right += c[m] * basis_.right(m);
        }
        ql[j] = left;
        qr[j] = right;
        for (int p = 0; p < nq; ++p) {
            double v = 0.0;
            for (int m = 0; m < nm; ++m) {
                v += c[m] * basis_.value(p, m);
            }
            qq[j * nq + p] = v;
        }
    }

    std::vector<double> hu(n + 1);
    for (int f = 0; f <= n; ++f) {
        const FacePair cells = face_cells(f, n, periodic);
        // ghost q copies the interior trace
        const double qm = cells.minus >= 0 ? qr[cells.minus] : ql[cells.plus];
        const double qp = cells.plus >= 0 ? ql[cells.plus] : qr[cells.minus];
        const double r = ratio[f];
        hu[f] = convective_flux(flux_, cf.f, um[f], up[f]) - r * 0.5 * (qm + qp) - (theta - 0.5) * r * (qp - qm);
        if (cells.minus < 0) {
            hu[f] += penalized_flux(r, gp[f], gm[f], -1.0, mesh_.h);
        } else if (cells.plus < 0) {
            hu[f] += penalized_flux(r, gm[f], gp[f], 1.0, mesh_.h);
        }
    }

    std::vector<double> hq_vol(nq);
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < nq; ++p) {
            const double v = uq[j * nq + p];
            hq_vol[p] = cf.f(v) - cf.b(v) * qq[j * nq + p];
        }
        auto out = dudt->cell(j);
        for (int m = 0; m < nm; ++m) {
            double s = 0.0;
            for (int p = 0; p < nq; ++p) {
                s += w[p] * hq_vol[p] * basis_.derivative(p, m);
            }
            s += -hu[j + 1] * basis_.right(m) + hu[j] * basis_.left(m);
            out[m] = scale * s;
        }
    }
    if (damping_.enabled) {
        damper_.apply(u, *dudt, bc);
    }
}

DGField1D Scheme1D::solve_q(const DGField1D& u, double t) const
{
    DGField1D q(mesh_, k_);
    evaluate(u, t, q, nullptr);
    return q;
}

void Scheme1D::rhs(const DGField1D& u, double t, DGField1D& dudt, DGField1D* q_out) const
{
    DGField1D q(mesh_, k_);
    evaluate(u, t, q, &dudt);
    if (q_out != nullptr) {
        *q_out = std::move(q);
    }
}

DGField1D Scheme1D::rhs(const DGField1D& u, double t) const
{
    DGField1D dudt(mesh_, k_);
    rhs(u, t, dudt);
    return dudt;
}

// ---------------------------------------------------------------------------
// 2D

Scheme2D::Scheme2D(ProblemSpec problem, FluxConfig flux, DampingParams damping, const Mesh2D& mesh, int k,
                   Space space)
    : problem_(std::move(problem)),
      flux_(flux),
      damping_(checked_damping(damping, k)),
      mesh_(mesh),
      modes_(k, space),
      nq_(k + 2),
      quad_(gauss_rule(k + 2)),
      damper_(mesh, modes_)
{
    flux_.validate();
    const int nm = modes_.size();
    const auto P = [](int l, double x) { return legendre_orthonormal(l, x); };
    const auto dP = [](int l, double x) { return legendre_orthonormal_derivative(l, 1, x); };
    phi_.resize(nq_ * nq_ * nm);
    phi_x_.resize(nq_ * nq_ * nm);
    phi_y_.resize(nq_ * nq_ * nm);
    weight_.resize(nq_ * nq_);
    for (int qy = 0; qy < nq_; ++qy) {
        for (int qx = 0; qx < nq_; ++qx) {
            const int q = qx + nq_ * qy;
            const double xi = quad_.nodes[qx];
            const double eta = quad_.nodes[qy];
            weight_[q] = quad_.weights[qx] * quad_.weights[qy];
            for (int m = 0; m < nm; ++m) {
                const auto [px, py] = modes_[m];
                phi_[q * nm + m] = P(px, xi) * P(py, eta);
                phi_x_[q * nm + m] = dP(px, xi) * P(py, eta);
                phi_y_[q * nm + m] = P(px, xi) * dP(py, eta);
            }
        }
    }
    east_.resize(nq_ * nm);
    west_.resize(nq_ * nm);
    north_.resize(nq_ * nm);
    south_.resize(nq_ * nm);
    for (int p = 0; p < nq_; ++p) {
        const double s = quad_.nodes[p];
        for (int m = 0; m < nm; ++m) {
            const auto [px, py] = modes_[m];
            east_[p * nm + m] = P(px, 1.0) * P(py, s);
            west_[p * nm + m] = P(px, -1.0) * P(py, s);
            north_[p * nm + m] = P(px, s) * P(py, 1.0);
            south_[p * nm + m] = P(px, s) * P(py, -1.0);
        }
    }
}

namespace {

// Values of a field at the volume and edge points of every cell.
struct CellPoints {
    std::vector<double> vol, east, west, north, south;

    CellPoints(int n_cells, int nq)
        : vol(static_cast<std::size_t>(n_cells) * nq * nq),
          east(static_cast<std::size_t>(n_cells) * nq),
          west(east.size()),
          north(east.size()),
          south(east.size())
    {
    }
};

inline double dot(const double* row, std::span<const double> c)
{
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        s += row[m] * c[m];
    }
    return s;
}

} // namespace

void Scheme2D::evaluate(const DGField2D& u, double t, DGField2D& q1, DGField2D& q2, DGField2D* dudt) const
{
    const BoundaryPair bc = problem_.boundary_at(t);
    const Coefficients& cx = problem_.coeffs[0];
    const Coefficients& cy = problem_.coeffs[1];
    const int nx = mesh_.nx;
    const int ny = mesh_.ny;
    const int n_cells = mesh_.n_cells();
    const int nm = modes_.size();
    const int nq = nq_;
    const int nv = nq * nq;
    const auto& w = quad_.weights;
    const double sx = 2.0 / mesh_.hx;
    const double sy = 2.0 / mesh_.hy;
    const double theta_x = flux_.theta_diff[0];
    const double theta_y = flux_.theta_diff[1];

    const auto sample = [&](const DGField2D& field, CellPoints& pts, bool volume, bool x_edges, bool y_edges) {
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int cell = 0; cell < n_cells; ++cell) {
            const auto c = field.cell(cell);
            if (volume) {
                for (int q = 0; q < nv; ++q) {
                    pts.vol[cell * nv + q] = dot(&phi_[q * nm], c);
                }
            }
            for (int p = 0; p < nq; ++p) {
                if (x_edges) {
                    pts.east[cell * nq + p] = dot(&east_[p * nm], c);
                    pts.west[cell * nq + p] = dot(&west_[p * nm], c);
                }
                if (y_edges) {
                    pts.north[cell * nq + p] = dot(&north_[p * nm], c);
                    pts.south[cell * nq + p] = dot(&south_[p * nm], c);
                }
            }
        }
    };

    CellPoints up_(n_cells, nq);
    sample(u, up_, true, true, true);

    // x faces: index (j * (nx + 1) + f) * nq + p; y faces: (i * (ny + 1) + f) * nq + p
    const std::size_t n_xf = static_cast<std::size_t>(ny) * (nx + 1) * nq;
    const std::size_t n_yf = static_cast<std::size_t>(nx) * (ny + 1) * nq;
    std::vector<double> xm(n_xf), xp(n_xf), xgm(n_xf), xgp(n_xf), xr(n_xf), xhq(n_xf);
    std::vector<double> ym(n_yf), yp(n_yf), ygm(n_yf), ygp(n_yf), yr(n_yf), yhq(n_yf);

#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < ny; ++j) {
        for (int f = 0; f <= nx; ++f) {
            const FacePair cells = face_cells(f, nx, bc[0].is_periodic());
            for (int p = 0; p < nq; ++p) {
                const std::size_t idx = (static_cast<std::size_t>(j) * (nx + 1) + f) * nq + p;
                const double a = cells.minus >= 0 ? up_.east[mesh_.index(cells.minus, j) * nq + p] : bc[0].left_value;
                const double b = cells.plus >= 0 ? up_.west[mesh_.index(cells.plus, j) * nq + p] : bc[0].right_value;
                const double ga = cx.g(a);
                const double gb = cx.g(b);
                xm[idx] = a;
                xp[idx] = b;
                xgm[idx] = ga;
                xgp[idx] = gb;
                xr[idx] = degenerate_ratio(ga, gb, cx.b, a, b, flux_.jump_tol);
                if (cells.minus < 0) {
                    xhq[idx] = -ga;
                } else if (cells.plus < 0) {
                    xhq[idx] = -gb;
                } else {
                    xhq[idx] = -0.5 * (ga + gb) + (theta_x - 0.5) * xr[idx] * (b - a);
                }
            }
        }
    }
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < nx; ++i) {
        for (int f = 0; f <= ny; ++f) {
            const FacePair cells = face_cells(f, ny, bc[1].is_periodic());
            for (int p = 0; p < nq; ++p) {
                const std::size_t idx = (static_cast<std::size_t>(i) * (ny + 1) + f) * nq + p;
                const double a = cells.minus >= 0 ? up_.north[mesh_.index(i, cells.minus) * nq + p] : bc[1].left_value;
                const double b = cells.plus >= 0 ? up_.south[mesh_.index(i, cells.plus) * nq + p] : bc[1].right_value;
                const double ga = cy.g(a);
                const double gb = cy.g(b);
                ym[idx] = a;
                yp[idx] = b;
                ygm[idx] = ga;
                ygp[idx] = gb;
                yr[idx] = degenerate_ratio(ga, gb, cy.b, a, b, flux_.jump_tol);
                if (cells.minus < 0) {
                    yhq[idx] = -ga;
                } else if (cells.plus < 0) {
                    yhq[idx] = -gb;
                } else {
                    yhq[idx] = -0.5 * (ga + gb) + (theta_y - 0.5) * yr[idx] * (b - a);
                }
            }
        }
    }

    const auto x_face = [&](int f, int j) { return (static_cast<std::size_t>(j) * (nx + 1) + f) * nq; };
    const auto y_face = [&](int i, int f) { return (static_cast<std::size_t>(i) * (ny + 1) + f) * nq; };

#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < ny; ++j) {
        std::vector<double> g1(nv), g2(nv);
        for (int i = 0; i < nx; ++i) {
            const int cell = mesh_.index(i, j);
            for (int q = 0; q < nv; ++q) {
                const double v = up_.vol[cell * nv + q];
                g1[q] = cx.g(v);
                g2[q] = cy.g(v);
            }
            const double* east_flux = &xhq[x_face(i + 1, j)];
            const double* west_flux = &xhq[x_face(i, j)];
            const double* north_flux = &yhq[y_face(i, j + 1)];
            const double* south_flux = &yhq[y_face(i, j)];
            auto o1 = q1.cell(cell);
            auto o2 = q2.cell(cell);
            for (int m = 0; m < nm; ++m) {
                double s1 = 0.0;
                double s2 = 0.0;
                for (int q = 0; q < nv; ++q) {
                    s1 -= weight_[q] * g1[q] * phi_x_[q * nm + m];
                    s2 -= weight_[q] * g2[q] * phi_y_[q * nm + m];
                }
                for (int p = 0; p < nq; ++p) {
                    s1 -= w[p] * (east_flux[p] * east_[p * nm + m] - west_flux[p] * west_[p * nm + m]);
                    s2 -= w[p] * (north_flux[p] * north_[p * nm + m] - south_flux[p] * south_[p * nm + m]);
                }
                o1[m] = sx * s1;
                o2[m] = sy * s2;
            }
        }
    }
    if (dudt == nullptr) {
        return;
    }

    CellPoints q1p(n_cells, nq);
    CellPoints q2p(n_cells, nq);
    sample(q1, q1p, true, true, false);
    sample(q2, q2p, true, false, true);

    std::vector<double> xhu(n_xf), yhu(n_yf);
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < ny; ++j) {
        for (int f = 0; f <= nx; ++f) {
            const FacePair cells = face_cells(f, nx, bc[0].is_periodic());
            for (int p = 0; p < nq; ++p) {
                const std::size_t idx = x_face(f, j) + p;
                const double qm = cells.minus >= 0 ? q1p.east[mesh_.index(cells.minus, j) * nq + p]
                                                   : q1p.west[mesh_.index(cells.plus, j) * nq + p];
                const double qp = cells.plus >= 0 ? q1p.west[mesh_.index(cells.plus, j) * nq + p] : qm;
                const double r = xr[idx];
                xhu[idx] = convective_flux(flux_, cx.f, xm[idx], xp[idx], Direction::X) - r * 0.5 * (qm + qp) -
                           (theta_x - 0.5) * r * (qp - qm);
                if (cells.minus < 0) {
                    xhu[idx] += penalized_flux(r, xgp[idx], xgm[idx], -1.0, mesh_.hx);
                } else if (cells.plus < 0) {
                    xhu[idx] += penalized_flux(r, xgm[idx], xgp[idx], 1.0, mesh_.hx);
                }
            }
        }
    }
#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < nx; ++i) {
        for (int f = 0; f <= ny; ++f) {
            const FacePair cells = face_cells(f, ny, bc[1].is_periodic());
            for (int p = 0; p < nq; ++p) {
                const std::size_t idx = y_face(i, f) + p;
                const double qm = cells.minus >= 0 ? q2p.north[mesh_.index(i, cells.minus) * nq + p]
                                                   : q2p.south[mesh_.index(i, cells.plus) * nq + p];
                const double qp = cells.plus >= 0 ? q2p.south[mesh_.index(i, cells.plus) * nq + p] : qm;
                const double r = yr[idx];
                yhu[idx] = convective_flux(flux_, cy.f, ym[idx], yp[idx], Direction::Y) - r * 0.5 * (qm + qp) -
                           (theta_y - 0.5) * r * (qp - qm);
                if (cells.minus < 0) {
                    yhu[idx] += penalized_flux(r, ygp[idx], ygm[idx], -1.0, mesh_.hy);
                } else if (cells.plus < 0) {
                    yhu[idx] += penalized_flux(r, ygm[idx], ygp[idx], 1.0, mesh_.hy);
                }
            }
        }
    }

#ifdef OFLDG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < ny; ++j) {
        std::vector<double> h1(nv), h2(nv);
        for (int i = 0; i < nx; ++i) {
            const int cell = mesh_.index(i, j);
            for (int q = 0; q < nv; ++q) {
                const double v = up_.vol[cell * nv + q];
                h1[q] = cx.f(v) - cx.b(v) * q1p.vol[cell * nv + q];
                h2[q] = cy.f(v) - cy.b(v) * q2p.vol[cell * nv + q];
            }
            const double* east_flux = &xhu[x_face(i + 1, j)];
            const double* west_flux = &xhu[x_face(i, j)];
            const double* north_flux = &yhu[y_face(i, j + 1)];
            const double* south_flux = &yhu[y_face(i, j)];
            auto out = dudt->cell(cell);
            for (int m = 0; m < nm; ++m) {
                double s1 = 0.0;
                double s2 = 0.0;
                for (int q = 0; q < nv; ++q) {
                    s1 += weight_[q] * h1[q] * phi_x_[q * nm + m];
                    s2 += weight_[q] * h2[q] * phi_y_[q * nm + m];
                }
                for (int p = 0; p < nq; ++p) {
                    s1 -= w[p] * (east_flux[p] * east_[p * nm + m] - west_flux[p] * west_[p * nm + m]);
                    s2 -= w[p] * (north_flux[p] * north_[p * nm + m] - south_flux[p] * south_[p * nm + m]);
                }
                out[m] = sx * s1 + sy * s2;
            }
        }
    }
    if (damping_.enabled) {
        damper_.apply(u, *dudt, bc);
    }
}

std::pair<DGField2D, DGField2D> Scheme2D::solve_q(const DGField2D& u, double t) const
{
    DGField2D q1(mesh_, modes_.degree(), modes_.space());
    DGField2D q2(mesh_, modes_.degree(), modes_.space());
    evaluate(u, t, q1, q2, nullptr);
    return {std::move(q1), std::move(q2)};
}

void Scheme2D::rhs(const DGField2D& u, double t, DGField2D& dudt, DGField2D* q1_out, DGField2D* q2_out) const
{
    DGField2D q1(mesh_, modes_.degree(), modes_.space());
    DGField2D q2(mesh_, modes_.degree(), modes_.space());
    evaluate(u, t, q1, q2, &dudt);
    if (q1_out != nullptr) {
        *q1_out = std::move(q1);
    }
    if (q2_out != nullptr) {
        *q2_out = std::move(q2);
    }
}

DGField2D Scheme2D::rhs(const DGField2D& u, double t) const
{
    DGField2D dudt(mesh_, modes_.degree(), modes_.space());
    rhs(u, t, dudt);
    return dudt;
}

// ---------------------------------------------------------------------------

DGField1D solve_q_1d(const DGField1D& u, const ProblemSpec& problem, const FluxConfig& cfg, double t)
{
    return Scheme1D(problem, cfg, DampingParams{false, u.degree()}, u.mesh(), u.degree()).solve_q(u, t);
}

DGField1D rhs_u_1d(const DGField1D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                   const DampingParams& damping, double t)
{
    return Scheme1D(problem, cfg, damping, u.mesh(), u.degree()).rhs(u, t);
}

std::pair<DGField2D, DGField2D> solve_q12_2d(const DGField2D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                                             double t)
{
    return Scheme2D(problem, cfg, DampingParams{false, u.degree()}, u.mesh(), u.degree(), u.space()).solve_q(u, t);
}

DGField2D rhs_u_2d(const DGField2D& u, const ProblemSpec& problem, const FluxConfig& cfg,
                   const DampingParams& damping, double t)
{
    return Scheme2D(problem, cfg, damping, u.mesh(), u.degree(), u.space()).rhs(u, t);
}

double inner_product(const DGField1D& a, const DGField1D& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        s += a.coeffs()[i] * b.coeffs()[i];
    }
    return 0.5 * a.mesh().h * s;
}

double inner_product(const DGField2D& a, const DGField2D& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        s += a.coeffs()[i] * b.coeffs()[i];
    }
    return 0.25 * a.mesh().hx * a.mesh().hy * s;
}

double energy_balance(const Scheme1D& scheme, const DGField1D& u, double t)
{
    DGField1D dudt(u.mesh(), u.degree());
    DGField1D q;
    scheme.rhs(u, t, dudt, &q);
    return inner_product(dudt, u) + inner_product(q, q);
}

double energy_balance(const Scheme2D& scheme, const DGField2D& u, double t)
{
    DGField2D dudt(u.mesh(), u.degree(), u.space());
    DGField2D q1;
    DGField2D q2;
    scheme.rhs(u, t, dudt, &q1, &q2);
    return inner_product(dudt, u) + inner_product(q1, q1) + inner_product(q2, q2);
}

} // namespace ofldg
