#include "pnforge/network.hpp"

#include "pnforge/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace pnforge {

void HermiteGrid::check() const {
    if (m < 1 || n < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one cell");
    if (static_cast<int>(points.size()) != m + 1) throw Error(ErrorKind::InvalidInput, "grid is not rectangular");
    for (const auto& row : points) {
        if (static_cast<int>(row.size()) != n + 1) throw Error(ErrorKind::InvalidInput, "grid is not rectangular");
        for (const auto& p : row) validate(p);
    }
}

namespace {

using LinVec = LinPolyVec<Rational>;

// One projection center for every cell so that shared edges interpolate
// the same two planar images.
ProjectionOptions shared_projection(const HermiteGrid& g, const ProjectionOptions& opt) {
    ProjectionOptions cell = opt;
    if (opt.center) return cell;
    RVec c = default_center();
    if (opt.auto_rotate) {
        std::vector<RVec> all;
        for (const auto& row : g.points)
            for (const auto& p : row) all.push_back(p.unit_normal);
        c = auto_rotate_frame(all, opt.threshold).transpose().apply(c);
    }
    cell.center = c;
    return cell;
}

std::vector<const PNHermitePoint*> cell_points(const HermiteGrid& g, int i, int j) {
    return {&g.points[i][j], &g.points[i + 1][j], &g.points[i + 1][j + 1], &g.points[i][j + 1]};
}

std::vector<std::vector<FieldConstruction>> grid_fields(const HermiteGrid& g, const ProjectionOptions& opt) {
    ProjectionOptions cell = shared_projection(g, opt);
    std::vector<std::vector<FieldConstruction>> out(g.m, std::vector<FieldConstruction>(g.n));
    for (int i = 0; i < g.m; ++i)
        for (int j = 0; j < g.n; ++j) {
            std::vector<RVec> normals;
            for (const auto* p : cell_points(g, i, j)) normals.push_back(p->unit_normal);
            out[i][j] = pn_normal_field(normals, cell);
        }
    return out;
}

template <class V>
void add_gluing(SystemBuilder<Rational>& sb, const std::vector<std::vector<V>>& x, int m, int n) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (j + 1 < n)
                sb.add_identity_zero(restrict_to_edge<LinearForm<Rational>, Rational>(x[i][j], Edge::V1) -
                                     restrict_to_edge<LinearForm<Rational>, Rational>(x[i][j + 1], Edge::V0));
            if (i + 1 < m)
                sb.add_identity_zero(restrict_to_edge<LinearForm<Rational>, Rational>(x[i][j], Edge::U1) -
                                     restrict_to_edge<LinearForm<Rational>, Rational>(x[i + 1][j], Edge::U0));
        }
}

LinVec constant_vec(const PolyVec& p) {
    LinVec out(p.dim());
    for (std::size_t c = 0; c < p.dim(); ++c)
        for (const auto& [mo, a] : p[c].terms()) out[c].add_term(mo, LinearForm<Rational>(a));
    return out;
}

LinVec scaled_vec(const PolyVec& p, int unknown) {
    LinVec out(p.dim());
    for (std::size_t c = 0; c < p.dim(); ++c)
        for (const auto& [mo, a] : p[c].terms()) out[c].add_term(mo, LinearForm<Rational>::unknown(unknown, a));
    return out;
}

}  // namespace

std::vector<std::vector<PolyVec>> GridFamily::member(const std::vector<Rational>& t) const {
    if (t.size() != dimension()) throw Error(ErrorKind::DimensionMismatch, "parameter count differs from family dimension");
    auto net = particular;
    for (std::size_t k = 0; k < t.size(); ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                net[i][j] = net[i][j] + directions[k][i][j].map([&](const BiPoly& p) { return p.scaled(t[k]); });
    return net;
}

PNPatch GridFamily::patch(const std::vector<std::vector<PolyVec>>& net, int i, int j) const {
    return make_patch(net.at(i).at(j), fields.at(i).at(j).field);
}

GridFamily interpolate_grid(const HermiteGrid& grid, int degree, const ProjectionOptions& opt) {
    grid.check();
    GridFamily out;
    out.m = grid.m;
    out.n = grid.n;
    out.degree = degree;
    out.fields = grid_fields(grid, opt);

    // stage 1: independent cell families
    std::vector<std::vector<SurfaceFamily<Rational>>> cells(grid.m, std::vector<SurfaceFamily<Rational>>(grid.n));
    std::vector<std::pair<int, int>> order;
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.n; ++j) order.emplace_back(i, j);
    parallel_for(order.size(), [&](std::size_t k) {
        auto [i, j] = order[k];
        auto sys = make_surface_system<Rational>(3, degree);
        add_tangency(sys, out.fields[i][j].field.n, Metric::euclidean3());
        auto pts = cell_points(grid, i, j);
        for (std::size_t c = 0; c < 4; ++c) add_point(sys, quad_corners()[c], pts[c]->point);
        cells[i][j] = solve_surface(sys);
    });

    // stage 2: glue cell parameters; unknown label (cell, 0, k, 0)
    SystemBuilder<Rational> sb;
    std::vector<std::vector<LinVec>> x(grid.m, std::vector<LinVec>(grid.n));
    out.patch_dimensions.assign(grid.m, std::vector<std::size_t>(grid.n));
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.n; ++j) {
            const auto& f = cells[i][j];
            out.patch_dimensions[i][j] = f.dimension();
            x[i][j] = constant_vec(f.particular());
            for (std::size_t k = 0; k < f.dimension(); ++k) {
                int idx = sb.add_unknown({i * grid.n + j, 0, static_cast<int>(k), 0});
                x[i][j] = x[i][j] + scaled_vec(f.direction(k), idx);
            }
        }
    add_gluing(sb, x, grid.m, grid.n);
    auto sol = solve_affine(sb.build());

    auto combine = [&](const std::vector<Rational>& t, bool with_particular) {
        std::vector<std::vector<PolyVec>> net(grid.m, std::vector<PolyVec>(grid.n));
        std::size_t idx = 0;
        for (int i = 0; i < grid.m; ++i)
            for (int j = 0; j < grid.n; ++j) {
                const auto& f = cells[i][j];
                PolyVec p = with_particular ? f.particular() : PolyVec(3);
                for (std::size_t k = 0; k < f.dimension(); ++k, ++idx)
                    if (sgn(t[idx]) != 0) p = p + f.direction(k).map([&](const BiPoly& q) { return q.scaled(t[idx]); });
                net[i][j] = p;
            }
        return net;
    };
    out.particular = combine(sol.particular, true);
    for (const auto& b : sol.basis) out.directions.push_back(combine(b, false));
    return out;
}

GridFamily interpolate_grid_direct(const HermiteGrid& grid, int degree, const ProjectionOptions& opt) {
    grid.check();
    GridFamily out;
    out.m = grid.m;
    out.n = grid.n;
    out.degree = degree;
    out.fields = grid_fields(grid, opt);
    SystemBuilder<Rational> sb;
    const Metric e = Metric::euclidean3();
    std::vector<std::vector<LinVec>> x(grid.m, std::vector<LinVec>(grid.n));
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.n; ++j) {
            x[i][j] = sb.unknown_polyvec(3, degree, i * grid.n + j);
            for (Var w : {Var::U, Var::V}) sb.add_identity_zero(inner(diff(x[i][j], w), out.fields[i][j].field.n, e));
            auto pts = cell_points(grid, i, j);
            for (std::size_t c = 0; c < 4; ++c) {
                auto [a, b] = quad_corners()[c];
                for (int k = 0; k < 3; ++k)
                    sb.add_equation(evaluate(x[i][j][k], Rational(a), Rational(b)) - LinearForm<Rational>(pts[c]->point[k]));
            }
        }
    add_gluing(sb, x, grid.m, grid.n);
    auto sol = solve_affine(sb.build());
    auto split = [&](const std::vector<Rational>& values) {
        std::vector<std::vector<PolyVec>> net(grid.m, std::vector<PolyVec>(grid.n));
        for (int i = 0; i < grid.m; ++i)
            for (int j = 0; j < grid.n; ++j) net[i][j] = assemble(sol.labels, values, 3, i * grid.n + j);
        return net;
    };
    out.particular = split(sol.particular);
    for (const auto& b : sol.basis) out.directions.push_back(split(b));
    return out;
}

GridCheck check_grid(const GridFamily& fam, const std::vector<std::vector<PolyVec>>& net) {
    GridCheck out;
    const Metric e = Metric::euclidean3();
    auto edge = [](const PolyVec& p, Edge ed) { return restrict_to_edge<Rational, Rational>(p, ed); };
    for (int i = 0; i < fam.m; ++i)
        for (int j = 0; j < fam.n; ++j) {
            const PolyVec& x = net[i][j];
            const PolyVec& nf = fam.fields[i][j].field.n;
            for (Var w : {Var::U, Var::V})
                if (!inner(diff(x, w), nf, e).is_zero()) out.tangency = false;
            if (j + 1 < fam.n) {
                if (edge(x, Edge::V1) != edge(net[i][j + 1], Edge::V0)) out.positions = false;
                if (edge(nf, Edge::V1) != edge(fam.fields[i][j + 1].field.n, Edge::V0)) out.normals = false;
            }
            if (i + 1 < fam.m) {
                if (edge(x, Edge::U1) != edge(net[i + 1][j], Edge::U0)) out.positions = false;
                if (edge(nf, Edge::U1) != edge(fam.fields[i + 1][j].field.n, Edge::U0)) out.normals = false;
            }
        }
    return out;
}

// ---------------------------------------------------------------- implicit

namespace {

double ipow(double x, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// d/dx_a applied `times` to x^e: falling factorial times x^(e - times)
double dpow(double x, int e, int times) {
    if (times > e) return 0;
    double c = 1;
    for (int i = 0; i < times; ++i) c *= e - i;
    return c * ipow(x, e - times);
}

}  // namespace

double ImplicitPoly::value(const std::array<double, 3>& p) const {
    double s = 0;
    for (const auto& [e, c] : terms) s += c.get_d() * ipow(p[0], e[0]) * ipow(p[1], e[1]) * ipow(p[2], e[2]);
    return s;
}

std::array<double, 3> ImplicitPoly::gradient(const std::array<double, 3>& p) const {
    std::array<double, 3> g{0, 0, 0};
    for (const auto& [e, c] : terms)
        for (int a = 0; a < 3; ++a) {
            double t = c.get_d();
            for (int k = 0; k < 3; ++k) t *= dpow(p[k], e[k], k == a ? 1 : 0);
            g[a] += t;
        }
    return g;
}

std::array<std::array<double, 3>, 3> ImplicitPoly::hessian(const std::array<double, 3>& p) const {
    std::array<std::array<double, 3>, 3> h{};
    for (const auto& [e, c] : terms)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double t = c.get_d();
                for (int k = 0; k < 3; ++k) t *= dpow(p[k], e[k], (k == a) + (k == b));
                h[a][b] += t;
            }
    return h;
}

ImplicitPoly ImplicitPoly::quadric(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return {{{{2, 0, 0}, a}, {{0, 2, 0}, b}, {{0, 0, 2}, c}, {{0, 0, 0}, -d}}};
}

// ---------------------------------------------------------------- quadrature

std::vector<std::pair<double, double>> gauss_legendre01(int order) {
    if (order < 1) throw Error(ErrorKind::InvalidInput, "quadrature order must be positive");
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) J(k, k - 1) = J(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < order; ++k) {
        double v0 = es.eigenvectors()(0, k);
        out.emplace_back((es.eigenvalues()(k) + 1) / 2, v0 * v0);  // weight 2 v0² on [-1,1], halved
    }
    return out;
}

std::vector<std::array<double, 3>> quadrature_nodes(const Domain& dom, int order) {
    auto gl = gauss_legendre01(order);
    std::vector<std::array<double, 3>> out;
    for (const auto& [s, ws] : gl)
        for (const auto& [t, wt] : gl) {
            switch (dom.kind) {
                case Domain::Kind::UnitSquare: out.push_back({s, t, ws * wt}); break;
                case Domain::Kind::UnitTriangle: out.push_back({s * (1 - t), t, ws * wt * (1 - t)}); break;
                case Domain::Kind::Box: {
                    double a = dom.u0.get_d(), b = dom.u1.get_d(), c = dom.v0.get_d(), d = dom.v1.get_d();
                    out.push_back({a + (b - a) * s, c + (d - c) * t, ws * wt * (b - a) * (d - c)});
                    break;
                }
            }
        }
    return out;
}

// ---------------------------------------------------------------- Gauss-Newton

namespace {

std::array<double, 3> position(const SampledFamily& s, std::size_t q, const std::vector<double>& t) {
    auto x = s.base[q];
    for (std::size_t k = 0; k < t.size(); ++k)
        for (int a = 0; a < 3; ++a) x[a] += t[k] * s.directions[k][q][a];
    return x;
}

double norm3(const std::array<double, 3>& g) { return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]); }

// residuals sqrt(w) f / |∇f| and, if J is given, their t-derivatives
void residuals(const SampledFamily& s, const ImplicitPoly& f, const std::vector<double>& t, Eigen::VectorXd& r,
               Eigen::MatrixXd* J) {
    const std::size_t Q = s.weights.size(), p = t.size();
    r.resize(Q);
    if (J) J->resize(Q, p);
    parallel_for(Q, [&](std::size_t q) {
        auto x = position(s, q, t);
        double fv = f.value(x);
        auto g = f.gradient(x);
        double gn = norm3(g);
        if (!(gn > 0)) throw Error(ErrorKind::OptimizerDiverged, "gradient of f vanishes at a quadrature node");
        double sw = std::sqrt(s.weights[q]);
        r(q) = sw * fv / gn;
        if (!J) return;
        auto h = f.hessian(x);
        for (std::size_t k = 0; k < p; ++k) {
            const auto& b = s.directions[k][q];
            double gb = 0, ghb = 0;
            for (int a = 0; a < 3; ++a) {
                gb += g[a] * b[a];
                for (int c = 0; c < 3; ++c) ghb += g[a] * h[a][c] * b[c];
            }
            (*J)(q, k) = sw * (gb / gn - fv * ghb / (gn * gn * gn));
        }
    });
}

}  // namespace

double fit_objective(const SampledFamily& s, const ImplicitPoly& f, const std::vector<double>& t) {
    Eigen::VectorXd r;
    residuals(s, f, t, r, nullptr);
    return r.squaredNorm();
}

FitTrace gauss_newton_fit(const SampledFamily& s, const ImplicitPoly& f, const FitOptions& opt) {
    const std::size_t p = s.directions.size();
    FitTrace tr;
    tr.t.assign(p, 0.0);
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
    residuals(s, f, tr.t, r, &J);
    double phi = r.squaredNorm();
    tr.phi_start = phi;
    tr.history.push_back(phi);
    if (!std::isfinite(phi)) throw Error(ErrorKind::OptimizerDiverged, "objective is not finite at t = 0");
    if (p == 0) {
        tr.phi = phi;
        tr.converged = true;
        return tr;
    }
    // fixed column scaling y = D t from the starting Jacobian; basis
    // directions are integer-primitive and differ by many orders of magnitude
    tr.scale.assign(p, 1.0);
    for (std::size_t k = 0; k < p; ++k) {
        double c = J.col(k).norm();
        if (c > 0 && std::isfinite(c)) tr.scale[k] = c;
    }
    Eigen::VectorXd D = Eigen::Map<Eigen::VectorXd>(tr.scale.data(), p);
    for (int it = 0; it < opt.max_iterations; ++it) {
        tr.iterations = it + 1;
        Eigen::MatrixXd Js = J * D.cwiseInverse().asDiagonal();
        Eigen::VectorXd dy = Js.completeOrthogonalDecomposition().solve(-r);
        if (!dy.allFinite()) throw Error(ErrorKind::OptimizerDiverged, "Gauss-Newton step is not finite");

        double alpha = 1;
        std::vector<double> trial(p);
        double phi_trial = phi;
        bool improved = false;
        for (int halving = 0; halving < 40; ++halving, alpha /= 2) {
            for (std::size_t k = 0; k < p; ++k) trial[k] = tr.t[k] + alpha * dy(k) / D(k);
            phi_trial = fit_objective(s, f, trial);
            if (std::isfinite(phi_trial) && phi_trial < phi) {
                improved = true;
                break;
            }
        }
        if (!improved) {
            tr.converged = true;  // no descent along the Gauss-Newton direction
            break;
        }
        double ynorm = 0;
        for (std::size_t k = 0; k < p; ++k) ynorm += std::pow(tr.t[k] * D(k), 2);
        tr.t = trial;
        phi = phi_trial;
        tr.history.push_back(phi);
        if (alpha * dy.norm() <= opt.step_tolerance * (1 + std::sqrt(ynorm))) {
            tr.converged = true;
            break;
        }
        residuals(s, f, tr.t, r, &J);
    }
    tr.phi = phi;
    if (!std::isfinite(phi)) throw Error(ErrorKind::OptimizerDiverged, "objective is not finite");
    return tr;
}

}  // namespace pnforge
