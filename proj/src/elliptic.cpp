#include "filmsim/elliptic.hpp"

#include "filmsim/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace filmsim {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Nine-point system for (-L) phi = b with Dirichlet rows set to identity.
void build_system(const CoefficientField& c, const RectMesh& mesh, SpMat& A) {
    const int n_z = mesh.n_z();
    const int n_r = mesh.n_r;
    const double hz = mesh.zgrid.h;
    const double hr = mesh.h_r;

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(n_z) * n_r * 9);

    for (int i = 0; i < n_z; ++i) {
        for (int j = 0; j < n_r; ++j) {
            const int k = mesh.index(i, j);
            if (mesh.boundary(i, j)) {
                trip.emplace_back(k, k, 1.0);
                continue;
            }
            const int q = c.index(i, j);
            const double azz = c.c_zz[q] / (hz * hz);
            const double arr = c.c_rr[q] / (hr * hr);
            const double ar = c.c_r[q] / (2.0 * hr);
            const double azr = c.c_zr[q] / (4.0 * hz * hr);

            trip.emplace_back(k, k, 2.0 * azz + 2.0 * arr);
            trip.emplace_back(k, mesh.index(i + 1, j), -azz);
            trip.emplace_back(k, mesh.index(i - 1, j), -azz);
            trip.emplace_back(k, mesh.index(i, j + 1), -(arr + ar));
            trip.emplace_back(k, mesh.index(i, j - 1), -(arr - ar));
            trip.emplace_back(k, mesh.index(i + 1, j + 1), -azr);
            trip.emplace_back(k, mesh.index(i - 1, j - 1), -azr);
            trip.emplace_back(k, mesh.index(i + 1, j - 1), azr);
            trip.emplace_back(k, mesh.index(i - 1, j + 1), azr);
        }
    }
    A.resize(n_z * n_r, n_z * n_r);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
}

bool even_in_z(const Eigen::VectorXd& x, int n_z, int n_r) {
    for (int i = 0; i < n_z / 2; ++i)
        for (int j = 0; j < n_r; ++j)
            if (x[i * n_r + j] != x[(n_z - 1 - i) * n_r + j])
                return false;
    return true;
}

PotentialField solve_linear(const CoefficientField& c, const RectMesh& mesh,
                            const Eigen::VectorXd& b, const SolverConfig& cfg) {
    SpMat A;
    build_system(c, mesh, A);

    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw SolverError("sparse factorization of the potential system failed", 0,
                          std::numeric_limits<double>::infinity());

    Eigen::VectorXd x = lu.solve(b);

    // Normwise backward error |Ay - b| / (|A| |y| + |b|), all in the max norm.
    // Scaling by |b| alone is useless here: the matrix rows grow like sigma^2/h^2,
    // so the rounding floor of forming Ay - b dwarfs any fixed multiple of |b|.
    std::vector<double> row_sum(A.rows(), 0.0);
    for (int col = 0; col < A.outerSize(); ++col)
        for (SpMat::InnerIterator it(A, col); it; ++it)
            row_sum[it.row()] += std::abs(it.value());
    const double anorm = *std::max_element(row_sum.begin(), row_sum.end());
    const double bnorm = b.lpNorm<Eigen::Infinity>();
    auto rel_residual = [&](const Eigen::VectorXd& y) {
        const double r = (A * y - b).lpNorm<Eigen::Infinity>();
        const double scale = anorm * y.lpNorm<Eigen::Infinity>() + bnorm;
        return scale > 0.0 ? r / scale : r;
    };

    double res = rel_residual(x);
    int passes = 0;
    while (res > cfg.tol && passes < cfg.max_refine) {
        x += lu.solve(b - A * x);
        res = rel_residual(x);
        ++passes;
    }
    if (!(res <= cfg.tol))
        throw SolverError("potential solve missed the residual bound " + std::to_string(cfg.tol),
                          passes, res);

    // Dirichlet rows are identity; pin them to the data exactly.
    for (int i = 0; i < mesh.n_z(); ++i)
        for (int j = 0; j < mesh.n_r; ++j)
            if (mesh.boundary(i, j))
                x[mesh.index(i, j)] = b[mesh.index(i, j)];
    res = rel_residual(x);

    // A reflection-symmetric system has a reflection-symmetric solution; averaging
    // the solve with its mirror image projects out the factorization's rounding
    // asymmetry without moving the residual. This keeps even profiles exactly even
    // through the evolution.
    const int n_z = mesh.n_z();
    const int n_r = mesh.n_r;
    if (c.z_symmetric && even_in_z(b, n_z, n_r)) {
        for (int i = 0; i < n_z / 2; ++i) {
            for (int j = 0; j < n_r; ++j) {
                const double avg = 0.5 * (x[i * n_r + j] + x[(n_z - 1 - i) * n_r + j]);
                x[i * n_r + j] = avg;
                x[(n_z - 1 - i) * n_r + j] = avg;
            }
        }
        res = rel_residual(x);
    }

    PotentialField out;
    out.n_z = n_z;
    out.n_r = n_r;
    out.h_r = mesh.h_r;
    out.phi.assign(x.data(), x.data() + x.size());
    out.residual = res;
    return out;
}

} // namespace

double PotentialField::max_principle_violation() const {
    double worst = 0.0;
    for (double v : phi) {
        if (v > 1.0) worst = std::max(worst, v - 1.0);
        if (v < 0.0) worst = std::max(worst, -v);
    }
    return worst;
}

CoefficientField assemble_coefficients(const FilmProfile& v, double sigma, const RectMesh& mesh) {
    const int n_z = mesh.n_z();
    const int n_r = mesh.n_r;
    if (v.n() != n_z)
        throw std::invalid_argument("profile and mesh disagree on the z node count");

    const std::vector<double>& u = v.u();
    for (int i = 0; i < n_z; ++i) {
        if (1.0 - u[i] < kDegenerateMargin)
            throw DegenerateProfileError("profile touches the outer cylinder at node " +
                                             std::to_string(i),
                                         i, u[i]);
        if (u[i] + 1.0 < kDegenerateMargin)
            throw DegenerateProfileError("profile pinches the axis gap at node " +
                                             std::to_string(i),
                                         i, u[i]);
    }

    CoefficientField c;
    c.sigma = sigma;
    c.n_z = n_z;
    c.n_r = n_r;
    c.z_symmetric = v.even_bitwise();
    const int N = n_z * n_r;
    c.c_zz.resize(N);
    c.c_zr.resize(N);
    c.c_rr.resize(N);
    c.c_r.resize(N);
    c.a11.resize(N);
    c.a12.resize(N);
    c.a22.resize(N);
    c.d2.resize(N);

    const double s2 = sigma * sigma;
    for (int i = 0; i < n_z; ++i) {
        const double vi = u[i];
        const double vz = v.uz()[i];
        const double vzz = v.uzz()[i];
        const double om = 1.0 - vi;  // distance to the outer wall
        for (int j = 0; j < n_r; ++j) {
            const int k = c.index(i, j);
            const double rr = mesh.r[j];
            const double w = 2.0 - rr;
            const double radius = 2.0 * vi + om * rr;  // physical radius of the node

            c.c_zz[k] = s2 * om;
            c.c_zr[k] = -2.0 * s2 * vz * w;
            c.c_rr[k] = (1.0 + s2 * (vz * w) * (vz * w)) / om;
            c.c_r[k] = -s2 * w * (vzz + 2.0 * (vz * vz) / om) + 1.0 / radius;

            c.a11[k] = c.c_zz[k];
            c.a12[k] = -s2 * vz * w;
            c.a22[k] = c.c_rr[k];
            c.d2[k] = 1.0 / radius;
        }
    }
    return c;
}

EllipticityReport check_ellipticity(const CoefficientField& c) {
    EllipticityReport rep;
    rep.alpha_min = std::numeric_limits<double>::infinity();
    rep.alpha_max = 0.0;
    const double s2 = c.sigma * c.sigma;
    for (size_t k = 0; k < c.a11.size(); ++k) {
        const double tr = c.a11[k] + c.a22[k];
        const double det = c.a11[k] * c.a22[k] - c.a12[k] * c.a12[k];
        const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
        rep.alpha_min = std::min(rep.alpha_min, 0.5 * (tr - disc));
        rep.alpha_max = std::max(rep.alpha_max, 0.5 * (tr + disc));
        rep.det_residual = std::max(rep.det_residual, std::abs(det - s2));
    }
    return rep;
}

PotentialField solve_potential(const FilmProfile& v, double sigma, const RectMesh& mesh,
                               const SolverConfig& cfg) {
    const CoefficientField c = assemble_coefficients(v, sigma, mesh);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.size());
    for (int i = 0; i < mesh.n_z(); ++i)
        for (int j = 0; j < mesh.n_r; ++j)
            if (mesh.boundary(i, j))
                b[mesh.index(i, j)] = std::log(mesh.r[j]) / kLn2;
    return solve_linear(c, mesh, b, cfg);
}

PotentialField solve_with_source(const CoefficientField& c, const std::vector<double>& F,
                                 const RectMesh& mesh, const SolverConfig& cfg) {
    if (static_cast<int>(F.size()) != mesh.size())
        throw std::invalid_argument("source vector size does not match the mesh");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.size());
    for (int i = 0; i < mesh.n_z(); ++i)
        for (int j = 0; j < mesh.n_r; ++j)
            if (!mesh.boundary(i, j))
                b[mesh.index(i, j)] = F[mesh.index(i, j)];
    return solve_linear(c, mesh, b, cfg);
}

std::vector<double> trace_dr_at_film(const PotentialField& phi) {
    if (phi.n_r < 4)
        throw std::invalid_argument("film trace needs at least 4 radial nodes");

    std::vector<double> tr(phi.n_z);
    for (int i = 0; i < phi.n_z; ++i)
        tr[i] = -stencil::one_sided_first(phi(i, 0), phi(i, 1), phi(i, 2), phi.h_r);
    return tr;
}

} // namespace filmsim
