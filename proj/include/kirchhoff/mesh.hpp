#ifndef KIRCHHOFF_MESH_HPP
#define KIRCHHOFF_MESH_HPP

#include "kirchhoff/types.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace kirchhoff {

/// Uniform interior-node grid on (0,Lx) or (0,Lx)x(0,Ly) with homogeneous
/// Dirichlet boundary. Only interior nodes are degrees of freedom; boundary
/// values are hard zeros and never stored. Node k maps to (ix, iy) with
/// ix = k % nx fastest (row-major in y).
template <typename Scalar = double>
struct Mesh {
    int dimension = 1;  // 1 or 2
    int nx = 0;         // interior nodes along x
    int ny = 1;         // interior nodes along y (1 in 1D)
    Scalar Lx = Scalar(0);
    Scalar Ly = Scalar(0);
    Scalar hx = Scalar(0);
    Scalar hy = Scalar(0);
    Scalar weight = Scalar(0);  // quadrature weight per interior node

    int size() const { return dimension == 1 ? nx : nx * ny; }

    Point<Scalar> point(int k) const {
        const int ix = k % nx;
        const int iy = k / nx;
        Point<Scalar> p;
        p[0] = Scalar(ix + 1) * hx;
        p[1] = dimension == 1 ? Scalar(0) : Scalar(iy + 1) * hy;
        return p;
    }

    Scalar volume() const { return weight * Scalar(size()); }

    friend bool operator==(const Mesh& a, const Mesh& b) {
        return a.dimension == b.dimension && a.nx == b.nx && a.ny == b.ny &&
               a.Lx == b.Lx && a.Ly == b.Ly;
    }
    friend bool operator!=(const Mesh& a, const Mesh& b) { return !(a == b); }
};

/// Grid function on the interior nodes of a mesh. Carries its mesh by value
/// so every operation can verify the operands live on the same grid.
template <typename Scalar = double>
class Field {
  public:
    Field() = default;

    Field(Mesh<Scalar> mesh, Vector<Scalar> values)
        : mesh_(std::move(mesh)), values_(std::move(values)) {
        if (values_.size() != mesh_.size())
            throw config_error("field has " + std::to_string(values_.size()) +
                               " values, mesh has " + std::to_string(mesh_.size()) +
                               " interior nodes");
        if (!values_.allFinite())
            throw config_error("field contains non-finite values");
    }

    static Field zero(const Mesh<Scalar>& mesh) {
        return Field(mesh, Vector<Scalar>::Zero(mesh.size()));
    }

    const Mesh<Scalar>& mesh() const { return mesh_; }
    const Vector<Scalar>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }
    Scalar operator[](int k) const { return values_[k]; }

    bool on(const Mesh<Scalar>& mesh) const { return mesh_ == mesh; }

    friend Field operator+(const Field& a, const Field& b) {
        require_same_mesh(a, b);
        return Field(a.mesh_, a.values_ + b.values_);
    }
    friend Field operator-(const Field& a, const Field& b) {
        require_same_mesh(a, b);
        return Field(a.mesh_, a.values_ - b.values_);
    }
    friend Field operator*(Scalar c, const Field& a) {
        return Field(a.mesh_, c * a.values_);
    }
    friend Field operator-(const Field& a) { return Scalar(-1) * a; }

  private:
    static void require_same_mesh(const Field& a, const Field& b) {
        if (a.mesh_ != b.mesh_) throw mesh_mismatch_error("fields live on different meshes");
    }

    Mesh<Scalar> mesh_;
    Vector<Scalar> values_;
};

template <typename Scalar>
Mesh<Scalar> build_mesh(int dimension, const std::vector<Scalar>& extents,
                        const std::vector<int>& counts) {
    if (dimension != 1 && dimension != 2)
        throw config_error("mesh dimension must be 1 or 2, got " + std::to_string(dimension));
    const auto axes = static_cast<std::size_t>(dimension);
    if (extents.size() != axes || counts.size() != axes)
        throw config_error("expected " + std::to_string(dimension) +
                           " extent(s) and count(s)");
    for (std::size_t i = 0; i < axes; ++i) {
        if (!(extents[i] > Scalar(0)))
            throw config_error("mesh extent must be positive");
        if (counts[i] < 2)
            throw config_error("mesh needs at least 2 interior nodes per axis");
    }
    Mesh<Scalar> m;
    m.dimension = dimension;
    m.nx = counts[0];
    m.Lx = extents[0];
    m.hx = extents[0] / Scalar(counts[0] + 1);
    if (dimension == 2) {
        m.ny = counts[1];
        m.Ly = extents[1];
        m.hy = extents[1] / Scalar(counts[1] + 1);
        m.weight = m.hx * m.hy;
    } else {
        m.ny = 1;
        m.Ly = Scalar(0);
        m.hy = Scalar(0);
        m.weight = m.hx;
    }
    return m;
}

template <typename Scalar>
Mesh<Scalar> build_mesh_1d(Scalar L, int n) {
    return build_mesh<Scalar>(1, {L}, {n});
}

template <typename Scalar>
Mesh<Scalar> build_mesh_2d(Scalar Lx, Scalar Ly, int nx, int ny) {
    return build_mesh<Scalar>(2, {Lx, Ly}, {nx, ny});
}

namespace detail {

template <typename Scalar>
void require_on(const Mesh<Scalar>& mesh, const Field<Scalar>& u, const char* op) {
    if (!u.on(mesh)) throw mesh_mismatch_error(std::string(op) + ": field not on this mesh");
}

/// y = (-Delta_h) x with zero ghost values, written into y.
template <typename Scalar>
void apply_stencil(const Mesh<Scalar>& mesh, const Vector<Scalar>& x, Vector<Scalar>& y) {
    const int nx = mesh.nx;
    if (mesh.dimension == 1) {
        const Scalar ih2 = Scalar(1) / (mesh.hx * mesh.hx);
        for (int i = 0; i < nx; ++i) {
            const Scalar left = i > 0 ? x[i - 1] : Scalar(0);
            const Scalar right = i + 1 < nx ? x[i + 1] : Scalar(0);
            y[i] = (Scalar(2) * x[i] - left - right) * ih2;
        }
        return;
    }
    const int ny = mesh.ny;
    const Scalar ihx2 = Scalar(1) / (mesh.hx * mesh.hx);
    const Scalar ihy2 = Scalar(1) / (mesh.hy * mesh.hy);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int k = iy * nx + ix;
            const Scalar west = ix > 0 ? x[k - 1] : Scalar(0);
            const Scalar east = ix + 1 < nx ? x[k + 1] : Scalar(0);
            const Scalar south = iy > 0 ? x[k - nx] : Scalar(0);
            const Scalar north = iy + 1 < ny ? x[k + nx] : Scalar(0);
            y[k] = (Scalar(2) * x[k] - west - east) * ihx2 +
                   (Scalar(2) * x[k] - south - north) * ihy2;
        }
    }
}

}  // namespace detail

/// Discrete -Delta with homogeneous Dirichlet data: 3-point stencil in 1D,
/// 5-point in 2D. Unweighted; pairing with the quadrature weights recovers
/// the Dirichlet bilinear form (see h1_inner).
template <typename Scalar>
Field<Scalar> stiffness_apply(const Mesh<Scalar>& mesh, const Field<Scalar>& u) {
    detail::require_on(mesh, u, "stiffness_apply");
    Vector<Scalar> out(mesh.size());
    detail::apply_stencil(mesh, u.values(), out);
    return Field<Scalar>(mesh, std::move(out));
}

/// Dirichlet inner product <u,v> = sum over grid edges of the first-difference
/// products, the discrete form of the gradient pairing. Agrees with the
/// quadrature-weighted dot of v against stiffness_apply(u) up to roundoff.
template <typename Scalar>
Scalar h1_inner(const Mesh<Scalar>& mesh, const Field<Scalar>& u, const Field<Scalar>& v) {
    detail::require_on(mesh, u, "h1_inner");
    detail::require_on(mesh, v, "h1_inner");
    const auto& a = u.values();
    const auto& b = v.values();
    const int nx = mesh.nx;
    Scalar acc = Scalar(0);
    if (mesh.dimension == 1) {
        for (int i = 0; i <= nx; ++i) {
            const Scalar du = (i < nx ? a[i] : Scalar(0)) - (i > 0 ? a[i - 1] : Scalar(0));
            const Scalar dv = (i < nx ? b[i] : Scalar(0)) - (i > 0 ? b[i - 1] : Scalar(0));
            acc += du * dv;
        }
        return acc / mesh.hx;
    }
    const int ny = mesh.ny;
    const Scalar wx = mesh.hy / mesh.hx;
    const Scalar wy = mesh.hx / mesh.hy;
    Scalar accx = Scalar(0);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix <= nx; ++ix) {
            const int k = iy * nx + ix;
            const Scalar du = (ix < nx ? a[k] : Scalar(0)) - (ix > 0 ? a[k - 1] : Scalar(0));
            const Scalar dv = (ix < nx ? b[k] : Scalar(0)) - (ix > 0 ? b[k - 1] : Scalar(0));
            accx += du * dv;
        }
    }
    Scalar accy = Scalar(0);
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy <= ny; ++iy) {
            const int k = iy * nx + ix;
            const Scalar du = (iy < ny ? a[k] : Scalar(0)) - (iy > 0 ? a[k - nx] : Scalar(0));
            const Scalar dv = (iy < ny ? b[k] : Scalar(0)) - (iy > 0 ? b[k - nx] : Scalar(0));
            accy += du * dv;
        }
    }
    return wx * accx + wy * accy;
}

template <typename Scalar>
Scalar h1_norm(const Mesh<Scalar>& mesh, const Field<Scalar>& u) {
    using std::sqrt;
    return sqrt(h1_inner(mesh, u, u));
}

/// Lumped nodal quadrature: weight * sum of nodal values, summed in index
/// order. Boundary cells carry no nodes, so constants integrate to
/// weight * (number of interior nodes), not to |Omega|.
template <typename Scalar>
Scalar integrate(const Mesh<Scalar>& mesh, const Field<Scalar>& nodal_values) {
    detail::require_on(mesh, nodal_values, "integrate");
    const auto& v = nodal_values.values();
    Scalar acc = Scalar(0);
    for (int k = 0; k < mesh.size(); ++k) acc += v[k];
    return mesh.weight * acc;
}

template <typename Scalar>
Scalar lp_norm(const Mesh<Scalar>& mesh, const Field<Scalar>& u, Scalar p) {
    using std::abs;
    using std::pow;
    detail::require_on(mesh, u, "lp_norm");
    if (!(p >= Scalar(1))) throw config_error("lp_norm requires p >= 1");
    const auto& v = u.values();
    Scalar acc = Scalar(0);
    for (int k = 0; k < mesh.size(); ++k) acc += pow(abs(v[k]), p);
    return pow(mesh.weight * acc, Scalar(1) / p);
}

struct CgOptions {
    double rel_tol = 1e-13;
    int max_iterations = 20000;
};

/// Inverse of stiffness_apply: returns g with (-Delta_h) g = rhs.
/// 1D by direct tridiagonal elimination, 2D by conjugate gradients on the
/// SPD stencil action.
template <typename Scalar>
Field<Scalar> poisson_solve(const Mesh<Scalar>& mesh, const Field<Scalar>& rhs,
                            const CgOptions& opts = {}) {
    using std::abs;
    using std::sqrt;
    detail::require_on(mesh, rhs, "poisson_solve");
    const int n = mesh.size();
    const auto& b = rhs.values();

    if (mesh.dimension == 1) {
        // Thomas algorithm for tridiag(-1, 2, -1)/h^2.
        const Scalar h2 = mesh.hx * mesh.hx;
        Vector<Scalar> diag = Vector<Scalar>::Constant(n, Scalar(2));
        Vector<Scalar> r = b * h2;
        for (int i = 1; i < n; ++i) {
            const Scalar m = Scalar(-1) / diag[i - 1];
            diag[i] -= m * Scalar(-1);
            r[i] -= m * r[i - 1];
        }
        Vector<Scalar> x(n);
        x[n - 1] = r[n - 1] / diag[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (r[i] + x[i + 1]) / diag[i];
        return Field<Scalar>(mesh, std::move(x));
    }

    const Scalar bnorm = b.norm();
    if (bnorm == Scalar(0)) return Field<Scalar>::zero(mesh);
    Vector<Scalar> x = Vector<Scalar>::Zero(n);
    Vector<Scalar> r = b;
    Vector<Scalar> p = r;
    Vector<Scalar> Ap(n);
    Scalar rr = r.squaredNorm();
    const Scalar stop = Scalar(opts.rel_tol) * bnorm;
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (sqrt(rr) <= stop) return Field<Scalar>(mesh, std::move(x));
        detail::apply_stencil(mesh, p, Ap);
        const Scalar alpha = rr / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        const Scalar rr_next = r.squaredNorm();
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }
    if (sqrt(rr) <= stop) return Field<Scalar>(mesh, std::move(x));
    throw solver_failure_error("poisson_solve: CG did not converge, relative residual " +
                                   std::to_string(static_cast<double>(sqrt(rr) / bnorm)),
                               static_cast<double>(sqrt(rr) / bnorm));
}

}  // namespace kirchhoff

#endif
