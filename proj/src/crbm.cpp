#include "irsact/crbm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace irsact {

namespace {

constexpr double ln2 = std::numbers::ln2;

double pair_min(double a, double b) { return a < b ? a : b; }

/// Barrier formulation of the Charnes-Cooper problem after eliminating t
/// (from the power-normalization equality) and w (epigraph optimum). The
/// remaining variables are y (L) and one lifted value per pair with a
/// positive cross coefficient; each lifted value z_p carries the three
/// affine constraints z_p <= y_n, z_p <= y_m, z_p >= 0.
struct Barrier {
    std::size_t L = 0;
    std::size_t P = 0; // kept pairs
    double a0 = 0.0;    // t = a0 + alpha * sum(y)
    double alpha = 0.0;
    double one_plus_gxi = 0.0; // 1 + gamma_bar * xi
    double floor_coeff = 0.0;  // gamma_min - gamma_bar * xi
    std::vector<double> gy;    // gamma_bar * zeta'
    std::vector<double> gz;    // gamma_bar * mu, kept pairs only
    std::vector<std::uint32_t> first, second; // pair element indices
    double t_max = 0.0;
    int constraint_count = 0;

    explicit Barrier(const RelaxationProblem& prob) {
        L = prob.count;
        a0 = 1.0 / prob.base_power;
        alpha = -prob.power_step / prob.base_power;
        t_max = a0;
        one_plus_gxi = 1.0 + prob.gamma_bar * prob.expansion.direct_sq_shifted;
        floor_coeff = prob.gamma_min - prob.gamma_bar * prob.expansion.direct_sq_shifted;
        gy.resize(L);
        for (std::size_t l = 0; l < L; ++l)
            gy[l] = prob.gamma_bar * prob.expansion.linear_shifted[l];
        std::size_t idx = 0;
        for (std::size_t n = 0; n + 1 < L; ++n) {
            for (std::size_t m = n + 1; m < L; ++m, ++idx) {
                const double coeff = prob.gamma_bar * prob.expansion.cross[idx];
                if (coeff > 0.0) {
                    gz.push_back(coeff);
                    first.push_back(static_cast<std::uint32_t>(n));
                    second.push_back(static_cast<std::uint32_t>(m));
                }
            }
        }
        P = gz.size();
        constraint_count = static_cast<int>(2 * L + 3 * P + 1);
    }

    double t_of(const std::vector<double>& y) const {
        return a0 + alpha * std::accumulate(y.begin(), y.end(), 0.0);
    }

    double u_of(const std::vector<double>& y, const std::vector<double>& z) const {
        double u = 0.0;
        for (std::size_t l = 0; l < L; ++l)
            u += gy[l] * y[l];
        for (std::size_t p = 0; p < P; ++p)
            u += gz[p] * z[p];
        return u;
    }

    double objective(double t, double u) const {
        const double q = one_plus_gxi * t + u;
        return t * std::log(q / t) / ln2;
    }

    double snr_slack(double t, double u) const { return u - floor_coeff * t; }
};

struct State {
    double t = 0.0, u = 0.0, q = 0.0, psi = 0.0, ssnr = 0.0;
    std::vector<double> s2, s3, s4; // t - y, y_n - z, y_m - z
    bool interior = false;
};

State evaluate(const Barrier& bar, const std::vector<double>& y, const std::vector<double>& z) {
    State st;
    st.t = bar.t_of(y);
    st.u = bar.u_of(y, z);
    st.q = bar.one_plus_gxi * st.t + st.u;
    st.ssnr = bar.snr_slack(st.t, st.u);
    st.interior = st.t > 0.0 && st.q > 0.0 && st.ssnr > 0.0;
    st.s2.resize(bar.L);
    for (std::size_t l = 0; l < bar.L; ++l) {
        st.s2[l] = st.t - y[l];
        st.interior = st.interior && y[l] > 0.0 && st.s2[l] > 0.0;
    }
    st.s3.resize(bar.P);
    st.s4.resize(bar.P);
    for (std::size_t p = 0; p < bar.P; ++p) {
        st.s3[p] = y[bar.first[p]] - z[p];
        st.s4[p] = y[bar.second[p]] - z[p];
        st.interior = st.interior && z[p] > 0.0 && st.s3[p] > 0.0 && st.s4[p] > 0.0;
    }
    if (st.interior)
        st.psi = st.t * std::log(st.q / st.t) / ln2;
    return st;
}

double barrier_value(const Barrier& bar, const State& st, const std::vector<double>& y,
                     const std::vector<double>& z, double mu) {
    if (!st.interior)
        return -std::numeric_limits<double>::infinity();
    double b = st.psi + mu * std::log(st.ssnr);
    for (std::size_t l = 0; l < bar.L; ++l)
        b += mu * (std::log(y[l]) + std::log(st.s2[l]));
    for (std::size_t p = 0; p < bar.P; ++p)
        b += mu * (std::log(z[p]) + std::log(st.s3[p]) + std::log(st.s4[p]));
    return b;
}

struct Gradient {
    std::vector<double> y, z;
    double inf_norm = 0.0;
    double two_norm = 0.0;
};

Gradient gradient(const Barrier& bar, const State& st, const std::vector<double>& y,
                  const std::vector<double>& z, double mu) {
    Gradient g;
    g.y.assign(bar.L, 0.0);
    g.z.assign(bar.P, 0.0);
    const double gt = (std::log(st.q / st.t) - 1.0) / ln2;
    const double gq = (st.t / st.q) / ln2;
    double inv_s2_sum = 0.0;
    for (std::size_t l = 0; l < bar.L; ++l)
        inv_s2_sum += 1.0 / st.s2[l];
    for (std::size_t l = 0; l < bar.L; ++l) {
        const double cy = bar.one_plus_gxi * bar.alpha + bar.gy[l];
        const double ry = bar.gy[l] - bar.floor_coeff * bar.alpha;
        g.y[l] = gt * bar.alpha + gq * cy + mu / y[l] +
                 mu * (bar.alpha * inv_s2_sum - 1.0 / st.s2[l]) + mu * ry / st.ssnr;
    }
    for (std::size_t p = 0; p < bar.P; ++p) {
        g.z[p] = gq * bar.gz[p] - mu / st.s3[p] - mu / st.s4[p] + mu / z[p] +
                 mu * bar.gz[p] / st.ssnr;
        g.y[bar.first[p]] += mu / st.s3[p];
        g.y[bar.second[p]] += mu / st.s4[p];
    }
    double sq = 0.0;
    for (double v : g.y) {
        g.inf_norm = std::max(g.inf_norm, std::abs(v));
        sq += v * v;
    }
    for (double v : g.z) {
        g.inf_norm = std::max(g.inf_norm, std::abs(v));
        sq += v * v;
    }
    g.two_norm = std::sqrt(sq);
    return g;
}

/// One Newton direction for the barrier maximization. The Hessian splits
/// into a sparse part (dense L x L block on y after eliminating the
/// diagonal z block) plus two rank-one terms (objective curvature and the
/// SNR-floor barrier), handled with a Woodbury correction.
struct NewtonSolver {
    const Barrier& bar;
    Eigen::MatrixXd S;
    Eigen::LLT<Eigen::MatrixXd> llt;
    std::vector<double> dz_diag, bn, bm;
    std::vector<double> w1y, w1z, w2y, w2z;
    double kappa1 = 0.0, kappa2 = 0.0;

    explicit NewtonSolver(const Barrier& b) : bar(b) {}

    bool assemble(const State& st, const std::vector<double>& y, const std::vector<double>& z,
                  double mu) {
        const auto L = static_cast<Eigen::Index>(bar.L);
        S.resize(L, L);

        std::vector<double> w2(bar.L);
        double sig2 = 0.0;
        for (std::size_t l = 0; l < bar.L; ++l) {
            w2[l] = mu / (st.s2[l] * st.s2[l]);
            sig2 += w2[l];
        }
        const double base = -sig2 * bar.alpha * bar.alpha;
        for (Eigen::Index i = 0; i < L; ++i)
            for (Eigen::Index j = 0; j < L; ++j)
                S(i, j) = base + bar.alpha * (w2[static_cast<std::size_t>(i)] +
                                              w2[static_cast<std::size_t>(j)]);
        for (std::size_t l = 0; l < bar.L; ++l)
            S(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) -=
                w2[l] + mu / (y[l] * y[l]);

        dz_diag.resize(bar.P);
        bn.resize(bar.P);
        bm.resize(bar.P);
        for (std::size_t p = 0; p < bar.P; ++p) {
            const double i3 = mu / (st.s3[p] * st.s3[p]);
            const double i4 = mu / (st.s4[p] * st.s4[p]);
            const double iz = mu / (z[p] * z[p]);
            const auto n = static_cast<Eigen::Index>(bar.first[p]);
            const auto m = static_cast<Eigen::Index>(bar.second[p]);
            S(n, n) -= i3;
            S(m, m) -= i4;
            dz_diag[p] = -(i3 + i4 + iz);
            bn[p] = i3;
            bm[p] = i4;
            // Schur complement of the diagonal z block
            S(n, n) -= bn[p] * bn[p] / dz_diag[p];
            S(m, m) -= bm[p] * bm[p] / dz_diag[p];
            const double off = bn[p] * bm[p] / dz_diag[p];
            S(n, m) -= off;
            S(m, n) -= off;
        }

        // rank-one terms
        const double tq = st.t / st.q;
        kappa1 = -1.0 / (st.t * ln2);
        kappa2 = -mu / (st.ssnr * st.ssnr);
        w1y.resize(bar.L);
        w2y.resize(bar.L);
        for (std::size_t l = 0; l < bar.L; ++l) {
            const double cy = bar.one_plus_gxi * bar.alpha + bar.gy[l];
            w1y[l] = bar.alpha - tq * cy;
            w2y[l] = bar.gy[l] - bar.floor_coeff * bar.alpha;
        }
        w1z.resize(bar.P);
        w2z.resize(bar.P);
        for (std::size_t p = 0; p < bar.P; ++p) {
            w1z[p] = -tq * bar.gz[p];
            w2z[p] = bar.gz[p];
        }

        // Factor -S (symmetric positive definite); regularize if roundoff
        // pushed an eigenvalue across zero.
        Eigen::MatrixXd negS = -S;
        double reg = 0.0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            llt.compute(negS);
            if (llt.info() == Eigen::Success)
                return true;
            reg = (reg == 0.0) ? 1e-12 * negS.diagonal().maxCoeff() : reg * 100.0;
            negS = -S;
            negS.diagonal().array() += reg;
        }
        return false;
    }

    /// Apply inv(H_sparse) to (rhs_y, rhs_z) via the z elimination.
    void solve_sparse(const std::vector<double>& rhs_y, const std::vector<double>& rhs_z,
                      std::vector<double>& out_y, std::vector<double>& out_z) const {
        Eigen::VectorXd ry = Eigen::Map<const Eigen::VectorXd>(rhs_y.data(),
                                                               static_cast<Eigen::Index>(bar.L));
        for (std::size_t p = 0; p < bar.P; ++p) {
            ry(static_cast<Eigen::Index>(bar.first[p])) -= bn[p] * rhs_z[p] / dz_diag[p];
            ry(static_cast<Eigen::Index>(bar.second[p])) -= bm[p] * rhs_z[p] / dz_diag[p];
        }
        Eigen::VectorXd sol = -llt.solve(ry); // S x = b  <=>  (-S) x = -b
        out_y.assign(sol.data(), sol.data() + bar.L);
        out_z.resize(bar.P);
        for (std::size_t p = 0; p < bar.P; ++p)
            out_z[p] = (rhs_z[p] - bn[p] * out_y[bar.first[p]] - bm[p] * out_y[bar.second[p]]) /
                       dz_diag[p];
    }

    static double dot(const std::vector<double>& ay, const std::vector<double>& az,
                      const std::vector<double>& by, const std::vector<double>& bz) {
        double d = 0.0;
        for (std::size_t i = 0; i < ay.size(); ++i)
            d += ay[i] * by[i];
        for (std::size_t i = 0; i < az.size(); ++i)
            d += az[i] * bz[i];
        return d;
    }

    /// Newton direction inv(H) * (-grad) with the two-column Woodbury update.
    void direction(const Gradient& g, std::vector<double>& dy, std::vector<double>& dz) const {
        std::vector<double> rhs_y(bar.L), rhs_z(bar.P);
        for (std::size_t l = 0; l < bar.L; ++l)
            rhs_y[l] = -g.y[l];
        for (std::size_t p = 0; p < bar.P; ++p)
            rhs_z[p] = -g.z[p];

        std::vector<double> gr_y, gr_z, g1_y, g1_z, g2_y, g2_z;
        solve_sparse(rhs_y, rhs_z, gr_y, gr_z);
        solve_sparse(w1y, w1z, g1_y, g1_z);

        const bool use_w2 = std::abs(kappa2) > 1e-300;
        if (use_w2)
            solve_sparse(w2y, w2z, g2_y, g2_z);

        // M2 = inv(K) + W^T inv(H_sp) W, with K = diag(kappa1, kappa2)
        const double m11 = 1.0 / kappa1 + dot(w1y, w1z, g1_y, g1_z);
        const double r1 = dot(w1y, w1z, gr_y, gr_z);
        double c1 = 0.0, c2 = 0.0;
        if (use_w2) {
            const double m12 = dot(w1y, w1z, g2_y, g2_z);
            const double m22 = 1.0 / kappa2 + dot(w2y, w2z, g2_y, g2_z);
            const double r2 = dot(w2y, w2z, gr_y, gr_z);
            const double det = m11 * m22 - m12 * m12;
            c1 = (m22 * r1 - m12 * r2) / det;
            c2 = (m11 * r2 - m12 * r1) / det;
        } else {
            c1 = r1 / m11;
        }
        dy.resize(bar.L);
        dz.resize(bar.P);
        for (std::size_t l = 0; l < bar.L; ++l)
            dy[l] = gr_y[l] - c1 * g1_y[l] - (use_w2 ? c2 * g2_y[l] : 0.0);
        for (std::size_t p = 0; p < bar.P; ++p)
            dz[p] = gr_z[p] - c1 * g1_z[p] - (use_w2 ? c2 * g2_z[p] : 0.0);
    }
};

double max_feasible_step(const Barrier& bar, const State& st, const std::vector<double>& y,
                         const std::vector<double>& z, const std::vector<double>& dy,
                         const std::vector<double>& dz) {
    double amax = std::numeric_limits<double>::infinity();
    const auto cap = [&amax](double s, double ds) {
        if (ds < 0.0)
            amax = std::min(amax, -s / ds);
    };
    double sum_dy = 0.0;
    for (double v : dy)
        sum_dy += v;
    const double dt = bar.alpha * sum_dy;
    double du = 0.0;
    for (std::size_t l = 0; l < bar.L; ++l)
        du += bar.gy[l] * dy[l];
    for (std::size_t p = 0; p < bar.P; ++p)
        du += bar.gz[p] * dz[p];
    for (std::size_t l = 0; l < bar.L; ++l) {
        cap(y[l], dy[l]);
        cap(st.s2[l], dt - dy[l]);
    }
    for (std::size_t p = 0; p < bar.P; ++p) {
        cap(z[p], dz[p]);
        cap(st.s3[p], dy[bar.first[p]] - dz[p]);
        cap(st.s4[p], dy[bar.second[p]] - dz[p]);
    }
    cap(st.ssnr, du - bar.floor_coeff * dt);
    return amax;
}

struct StartPoint {
    std::vector<double> y, z;
    bool found = false;
};

StartPoint find_start(const Barrier& bar) {
    StartPoint sp;
    const double rhos[] = {0.5, 0.75, 0.9, 0.99, 0.999, 0.9999, 0.999999};
    const double zfs[] = {0.75, 0.9, 0.99, 0.999, 0.9999, 0.999999};
    for (double rho : rhos) {
        // t consistent with y = t * rho * 1: t = a0 + alpha * t * L * rho
        const double t = bar.a0 / (1.0 - bar.alpha * rho * static_cast<double>(bar.L));
        if (!(t > 0.0))
            continue;
        std::vector<double> y(bar.L, t * rho);
        for (double zf : zfs) {
            std::vector<double> z(bar.P, zf * t * rho);
            const State st = evaluate(bar, y, z);
            if (st.interior && st.ssnr > 1e-15 * std::max(1.0, std::abs(st.u))) {
                sp.y = std::move(y);
                sp.z = std::move(z);
                sp.found = true;
                return sp;
            }
        }
    }
    return sp;
}

} // namespace

double relaxation_u(const RelaxationProblem& prob, std::span<const double> y) {
    if (y.size() != prob.count)
        throw std::invalid_argument("length mismatch");
    double u = 0.0;
    for (std::size_t l = 0; l < prob.count; ++l)
        u += prob.expansion.linear_shifted[l] * y[l];
    std::size_t idx = 0;
    for (std::size_t n = 0; n + 1 < prob.count; ++n)
        for (std::size_t m = n + 1; m < prob.count; ++m, ++idx)
            u += prob.expansion.cross[idx] * pair_min(y[n], y[m]);
    return prob.gamma_bar * u;
}

double fractional_snr_bound(const RelaxationProblem& prob, std::span<const double> x_frac) {
    if (x_frac.size() != prob.count)
        throw std::invalid_argument("length mismatch");
    double acc = prob.expansion.direct_sq_shifted;
    for (std::size_t l = 0; l < prob.count; ++l)
        acc += prob.expansion.linear_shifted[l] * x_frac[l];
    std::size_t idx = 0;
    for (std::size_t n = 0; n + 1 < prob.count; ++n)
        for (std::size_t m = n + 1; m < prob.count; ++m, ++idx)
            acc += prob.expansion.cross[idx] * pair_min(x_frac[n], x_frac[m]);
    return prob.gamma_bar * acc;
}

double fractional_objective(const RelaxationProblem& prob, std::span<const double> x_frac) {
    const double snr = fractional_snr_bound(prob, x_frac);
    double p_tot = prob.base_power;
    for (double x : x_frac)
        p_tot += prob.power_step * x;
    return std::log2(1.0 + snr) / p_tot;
}

RelaxationProblem build_relaxation(const ChannelEstimate& ch, std::span<const double> errors,
                                   double delta, double gamma_min, double gamma_bar,
                                   const PowerModel& pm, int bits) {
    pm.validate();
    if (bits < 2)
        throw assumption_error("relaxation requires at least 2 quantization bits");
    if (delta < 0.0 || gamma_min < 0.0)
        throw std::invalid_argument("radius and minimum SNR must be nonnegative");
    if (delta > ch.alpha_min)
        throw assumption_error("uncertainty radius exceeds the minimum estimated magnitude");

    RelaxationProblem prob;
    prob.expansion = make_gain_expansion(ch, errors, delta);
    prob.gamma_bar = gamma_bar;
    prob.gamma_min = gamma_min;
    prob.count = ch.elements();
    prob.base_power = pm.fixed_power_w() + static_cast<double>(prob.count) * pm.off_power_w;
    prob.power_step = pm.on_power_w - pm.off_power_w;
    prob.bits = bits;

    // Certify the concavity prerequisites. Cross terms are nonnegative under
    // the bit-resolution assumption; roundoff at the b = 2 boundary can leave
    // a cosine at -1e-16, which is zero for all purposes.
    std::size_t idx = 0;
    for (std::size_t n = 0; n + 1 < prob.count; ++n) {
        for (std::size_t m = n + 1; m < prob.count; ++m, ++idx) {
            double& mu = prob.expansion.cross[idx];
            if (mu < 0.0) {
                const double scale =
                    2.0 * ch.magnitudes[n + 1] * ch.magnitudes[m + 1];
                if (mu < -1e-9 * scale)
                    throw assumption_error("negative cross term: quantization errors too large");
                mu = 0.0;
            }
        }
    }

    // Feasibility of the original problem at the all-on point guarantees a
    // feasible relaxation.
    PhasePlan plan;
    plan.mode = PhaseMode::discrete(bits);
    plan.errors.assign(errors.begin(), errors.end());
    const ActivationVector all_on(prob.count, 1);
    if (worst_case_snr(ch, all_on, delta, plan, gamma_bar) < gamma_min)
        throw infeasible_error("all-on activation violates the SNR floor");
    return prob;
}

RelaxationSolution solve_relaxation(const RelaxationProblem& prob, double tol) {
    if (tol <= 0.0)
        throw std::invalid_argument("tolerance must be positive");
    const Barrier bar(prob);

    RelaxationSolution out;
    out.bits = prob.bits;

    StartPoint sp = find_start(bar);
    if (!sp.found) {
        // The SNR floor leaves no strict interior, which pins the feasible
        // set to the all-on face; return that vertex directly.
        out.t = bar.a0 / (1.0 - bar.alpha * static_cast<double>(bar.L));
        out.y.assign(bar.L, out.t);
        out.x_frac.assign(bar.L, 1.0);
        out.w = relaxation_u(prob, out.y);
        out.ee_rel = fractional_objective(prob, out.x_frac);
        out.stats.vertex_fallback = true;
        return out;
    }

    std::vector<double> y = std::move(sp.y);
    std::vector<double> z = std::move(sp.z);
    NewtonSolver newton(bar);

    const int total_cap = 500;
    const int stage_cap = 60;
    const double mu_floor = 1e-13;
    const double gap_safety = 1.5;
    double mu = 1.0;
    int total_iters = 0;
    int stages = 0;
    double grad_norm = 0.0;
    State st = evaluate(bar, y, z);

    while (true) {
        ++stages;
        for (int it = 0; it < stage_cap; ++it) {
            const Gradient g = gradient(bar, st, y, z, mu);
            grad_norm = g.two_norm;
            if (g.inf_norm <= 1e-10)
                break;
            if (++total_iters > total_cap)
                throw solver_error("interior-point iteration cap exceeded", st.psi, g.inf_norm);
            if (!newton.assemble(st, y, z, mu))
                throw solver_error("Newton system factorization failed", st.psi, g.inf_norm);
            std::vector<double> dy, dz;
            newton.direction(g, dy, dz);
            double ascent = 0.0;
            for (std::size_t l = 0; l < bar.L; ++l)
                ascent += g.y[l] * dy[l];
            for (std::size_t p = 0; p < bar.P; ++p)
                ascent += g.z[p] * dz[p];
            if (!(ascent > 0.0))
                break; // curvature exhausted at this precision
            if (0.5 * ascent <= 1e-15 * std::max(1.0, std::abs(st.psi)))
                break;

            const double amax = max_feasible_step(bar, st, y, z, dy, dz);
            double step = std::min(1.0, 0.99 * amax);
            const double b0 = barrier_value(bar, st, y, z, mu);
            std::vector<double> ty(bar.L), tz(bar.P);
            bool moved = false;
            for (int bt = 0; bt < 60 && step > 1e-16; ++bt, step *= 0.5) {
                for (std::size_t l = 0; l < bar.L; ++l)
                    ty[l] = y[l] + step * dy[l];
                for (std::size_t p = 0; p < bar.P; ++p)
                    tz[p] = z[p] + step * dz[p];
                const State ts = evaluate(bar, ty, tz);
                if (!ts.interior)
                    continue;
                if (barrier_value(bar, ts, ty, tz, mu) >= b0 + 1e-4 * step * ascent) {
                    y.swap(ty);
                    z.swap(tz);
                    st = ts;
                    moved = true;
                    break;
                }
            }
            if (!moved)
                break; // line search stalled; the iterate is good enough for this stage
        }

        const double target =
            std::min(tol, 5e-11) * std::max(1.0, std::abs(st.psi));
        const double gap = gap_safety * static_cast<double>(bar.constraint_count) * mu;
        if (gap <= target || mu <= mu_floor)
            break;
        mu = std::max(mu * 0.1, mu_floor);
    }

    out.y = y;
    out.t = bar.t_of(y);
    out.w = relaxation_u(prob, y);
    out.x_frac.resize(bar.L);
    for (std::size_t l = 0; l < bar.L; ++l)
        out.x_frac[l] = y[l] / out.t;
    out.stats.newton_iterations = total_iters;
    out.stats.barrier_stages = stages;
    out.stats.final_gradient_norm = grad_norm;
    out.stats.duality_gap_estimate =
        gap_safety * static_cast<double>(bar.constraint_count) * mu;
    // Report the certified upper end of the bracket so the value can stand
    // in for the true relaxation optimum in a-posteriori bounds.
    out.ee_rel = st.psi + out.stats.duality_gap_estimate;
    return out;
}

Solution round_and_select(const RelaxationSolution& rel, const ChannelEstimate& ch,
                          std::span<const double> errors, double delta, double gamma_min,
                          double gamma_bar, const PowerModel& pm) {
    const std::size_t L = ch.elements();
    if (rel.x_frac.size() != L || errors.size() != L)
        throw std::invalid_argument("length mismatch");
    pm.validate();

    std::vector<std::uint32_t> order(L);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (rel.x_frac[a] != rel.x_frac[b])
            return rel.x_frac[a] > rel.x_frac[b];
        return a < b;
    });

    double re = ch.magnitudes[0];
    double im = 0.0;
    double p_tot = pm.fixed_power_w() + static_cast<double>(L) * pm.off_power_w;
    const double p_step = pm.on_power_w - pm.off_power_w;

    double f = ch.magnitudes[0];
    double snr = gamma_bar * (f - delta) * (f - delta);
    bool any = false;
    double best_ee = 0.0;
    std::size_t best_m = 0;
    if (snr >= gamma_min) {
        best_ee = std::log2(1.0 + snr) / p_tot;
        best_m = 0;
        any = true;
    }
    for (std::size_t M = 1; M <= L; ++M) {
        const std::size_t l = order[M - 1];
        re += ch.magnitudes[l + 1] * std::cos(errors[l]);
        im += ch.magnitudes[l + 1] * std::sin(errors[l]);
        f = std::sqrt(re * re + im * im);
        const double loss = delta * std::sqrt(1.0 + static_cast<double>(M));
        snr = gamma_bar * (f - loss) * (f - loss);
        p_tot += p_step;
        const double ee = std::log2(1.0 + snr) / p_tot;
        if (snr >= gamma_min && (!any || ee > best_ee)) {
            best_ee = ee;
            best_m = M;
            any = true;
        }
    }

    PhasePlan plan;
    plan.mode = PhaseMode::discrete(rel.bits);
    plan.errors.assign(errors.begin(), errors.end());

    if (!any) {
        // Running sums can miss the all-on boundary case by an ulp; re-check
        // it from scratch before declaring the sweep empty.
        const ActivationVector all_on(L, 1);
        if (worst_case_snr(ch, all_on, delta, plan, gamma_bar) >= gamma_min) {
            best_m = L;
        } else {
            throw infeasible_error("no feasible prefix despite the all-on precondition");
        }
    }

    Solution s;
    s.status = SolveStatus::feasible;
    s.x.assign(L, 0);
    for (std::size_t m = 0; m < best_m; ++m)
        s.x[order[m]] = 1;
    s.active = best_m;
    s.ee = worst_case_ee(ch, s.x, delta, plan, gamma_bar, pm);
    s.gap_bound = std::max(0.0, rel.ee_rel - s.ee);
    return s;
}

Solution solve_crbm(const ChannelEstimate& ch, double delta, double gamma_min,
                    double gamma_bar, const PowerModel& pm, int bits) {
    const PhasePlan plan = make_phase_plan(ch, PhaseMode::discrete(bits));
    const ActivationVector all_on(ch.elements(), 1);
    if (worst_case_snr(ch, all_on, delta, plan, gamma_bar) < gamma_min) {
        Solution s;
        s.status = SolveStatus::infeasible;
        return s;
    }
    const RelaxationProblem prob =
        build_relaxation(ch, plan.errors, delta, gamma_min, gamma_bar, pm, bits);
    const RelaxationSolution rel = solve_relaxation(prob, 1e-8);
    return round_and_select(rel, ch, plan.errors, delta, gamma_min, gamma_bar, pm);
}

} // namespace irsact
