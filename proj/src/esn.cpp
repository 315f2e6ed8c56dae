#include "rmvg/esn.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rmvg/rng.hpp"

namespace rmvg {

namespace {

double power_iteration_radius(const Eigen::MatrixXd& m, std::uint64_t seed) {
    constexpr double tol = 1e-9;
    constexpr int max_iters = 10000;
    const int n = static_cast<int>(m.rows());

    Rng rng(seed);
    Eigen::VectorXd q_prev(n);
    for (int i = 0; i < n; ++i) q_prev[i] = rng.uniform(-1.0, 1.0);
    const double n0 = q_prev.norm();
    if (n0 == 0.0) q_prev.setOnes();
    q_prev.normalize();

    Eigen::VectorXd q_cur = m * q_prev;
    double scale = q_cur.norm();
    if (scale == 0.0) return 0.0;
    q_cur /= scale;

    // Fit A q_cur ~ a q_cur + b q_prev each step; the induced two-term
    // recurrence mu^2 = a mu + scale*b captures a dominant complex pair,
    // which plain power iteration cannot.
    double est_prev = scale;
    for (int k = 0; k < max_iters; ++k) {
        const Eigen::VectorXd w = m * q_cur;
        const double c = q_cur.dot(q_prev);
        const double r1 = q_cur.dot(w);
        const double r0 = q_prev.dot(w);
        const double det = 1.0 - c * c;
        double a, b;
        if (std::abs(det) < 1e-14) {
            a = r1;
            b = 0.0;
        } else {
            a = (r1 - c * r0) / det;
            b = (r0 - c * r1) / det;
        }
        const double beta = scale * b;
        const double disc = a * a + 4.0 * beta;
        double est;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            est = std::max(std::abs(0.5 * (a + sq)), std::abs(0.5 * (a - sq)));
        } else {
            est = std::sqrt(0.25 * a * a + 0.25 * (-disc));
        }
        if (std::abs(est - est_prev) <= tol * std::max(est, 1e-300)) return est;
        est_prev = est;
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        q_prev = q_cur;
        q_cur = w / wn;
        scale = wn;
    }
    return est_prev;
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("spectral_radius: need a square matrix");
    if (m.rows() <= 200) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("spectral_radius: eigenvalue solve failed");
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    return power_iteration_radius(m, 0x5eedf00dULL);
}

Reservoir init_reservoir(const ReservoirParams& p) {
    if (p.n_r < 1) throw std::invalid_argument("reservoir: n_r must be >= 1");
    if (!(p.sparsity > 0.0 && p.sparsity <= 1.0))
        throw std::invalid_argument("reservoir: sparsity must be in (0, 1]");
    if (!(p.rho >= 0.0)) throw std::invalid_argument("reservoir: rho must be >= 0");

    const long long total = static_cast<long long>(p.n_r) * p.n_r;
    const long long keep = std::llround(p.sparsity * static_cast<double>(total));

    for (int attempt = 0; attempt < 10; ++attempt) {
        const std::uint64_t seed = attempt == 0 ? p.seed : derive_seed(p.seed, 0x7265747279ULL, static_cast<std::uint64_t>(attempt));

        // Independent streams so the input draw does not depend on how many
        // draws the recurrent matrix consumed.
        Rng rng_rec(derive_seed(seed, 1));
        Rng rng_in(derive_seed(seed, 2));

        Eigen::MatrixXd w(p.n_r, p.n_r);
        for (int i = 0; i < p.n_r; ++i)
            for (int j = 0; j < p.n_r; ++j) w(i, j) = rng_rec.uniform(-1.0, 1.0);

        if (keep < total) {
            // Partial Fisher-Yates: the first `keep` slots of a shuffled
            // index range mark the entries that stay nonzero.
            std::vector<long long> idx(static_cast<size_t>(total));
            for (long long k = 0; k < total; ++k) idx[static_cast<size_t>(k)] = k;
            for (long long k = 0; k < keep; ++k) {
                const long long j = k + static_cast<long long>(rng_rec.below(static_cast<std::uint64_t>(total - k)));
                std::swap(idx[static_cast<size_t>(k)], idx[static_cast<size_t>(j)]);
            }
            std::vector<char> keep_mask(static_cast<size_t>(total), 0);
            for (long long k = 0; k < keep; ++k) keep_mask[static_cast<size_t>(idx[static_cast<size_t>(k)])] = 1;
            for (long long k = 0; k < total; ++k)
                if (!keep_mask[static_cast<size_t>(k)])
                    w(static_cast<int>(k / p.n_r), static_cast<int>(k % p.n_r)) = 0.0;
        }

        const double sr = spectral_radius(w);
        if (sr == 0.0 && p.rho > 0.0) continue;  // degenerate draw

        Reservoir r;
        r.w_rr = sr > 0.0 ? Eigen::MatrixXd(w * (p.rho / sr)) : Eigen::MatrixXd::Zero(p.n_r, p.n_r).eval();
        r.w_ir.resize(p.n_r);
        for (int i = 0; i < p.n_r; ++i) r.w_ir[i] = p.omega_in * rng_in.uniform(-1.0, 1.0);
        return r;
    }
    throw std::runtime_error("reservoir: no usable draw in 10 attempts");
}

StateTrajectory run_reservoir(const Reservoir& r, const Signal& input, int washout) {
    const int t_max = input.size();
    if (t_max < 1) throw std::invalid_argument("run: empty input");
    if (washout < 0 || washout >= t_max)
        throw std::invalid_argument("run: washout must be in [0, length)");

    const int n = r.size();
    StateTrajectory traj;
    traj.washout = washout;
    traj.states.resize(t_max, n);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd pre(n);
    for (int t = 0; t < t_max; ++t) {
        pre.noalias() = r.w_rr * h;
        pre.noalias() += r.w_ir * input[t];
        for (int i = 0; i < n; ++i) h[i] = std::tanh(pre[i]);
        traj.states.row(t) = h;
    }
    return traj;
}

namespace {

struct SplitView {
    int train_begin = 0, train_rows = 0, test_begin = 0, test_rows = 0;
};

SplitView split_rows(int first_row, int total_rows) {
    const int usable = total_rows - first_row;
    if (usable < 4) throw std::invalid_argument("split: too few usable rows");
    SplitView s;
    s.train_begin = first_row;
    s.train_rows = static_cast<int>(std::llround(kTrainFraction * usable));
    s.train_rows = std::max(1, std::min(s.train_rows, usable - 1));
    s.test_begin = first_row + s.train_rows;
    s.test_rows = usable - s.train_rows;
    return s;
}

// Design matrix rows [h[t]; x[t]; 1] for a row range.
Eigen::MatrixXd design_matrix(const StateTrajectory& traj, const Signal& input,
                              int begin, int count) {
    const int n = static_cast<int>(traj.states.cols());
    Eigen::MatrixXd z(count, n + 2);
    z.block(0, 0, count, n) = traj.states.middleRows(begin, count);
    for (int k = 0; k < count; ++k) {
        z(k, n) = input[begin + k];
        z(k, n + 1) = 1.0;
    }
    return z;
}

void check_alignment(const StateTrajectory& traj, const Signal& input, const Signal& target) {
    if (input.size() != traj.rows()) throw std::invalid_argument("readout: input/state length mismatch");
    if (target.size() != traj.rows()) throw std::invalid_argument("readout: target/state length mismatch");
}

}  // namespace

LinearReadout train_readout(const StateTrajectory& traj, const Signal& input,
                            const Signal& target, double reg) {
    check_alignment(traj, input, target);
    if (reg < 0.0) throw std::invalid_argument("readout: reg must be >= 0");
    const SplitView s = split_rows(traj.washout, traj.rows());

    const Eigen::MatrixXd z = design_matrix(traj, input, s.train_begin, s.train_rows);
    Eigen::VectorXd y(s.train_rows);
    for (int k = 0; k < s.train_rows; ++k) y[k] = target[s.train_begin + k];

    LinearReadout ro;
    if (reg > 0.0) {
        Eigen::MatrixXd gram = z.transpose() * z;
        gram.diagonal().array() += reg;
        ro.w = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(z.transpose() * y);
    } else {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
        if (qr.rank() < z.cols())
            throw std::runtime_error("readout: singular system with reg = 0");
        ro.w = qr.solve(y);
    }
    return ro;
}

EvalResult evaluate_readout(const LinearReadout& ro, const StateTrajectory& traj,
                            const Signal& input, const Signal& target) {
    check_alignment(traj, input, target);
    const SplitView s = split_rows(traj.washout, traj.rows());

    const Eigen::MatrixXd z = design_matrix(traj, input, s.test_begin, s.test_rows);
    const Eigen::VectorXd pred = z * ro.w;

    double mean = 0.0;
    for (int k = 0; k < s.test_rows; ++k) mean += target[s.test_begin + k];
    mean /= s.test_rows;

    double num = 0.0, den = 0.0;
    for (int k = 0; k < s.test_rows; ++k) {
        const double y = target[s.test_begin + k];
        num += (y - pred[k]) * (y - pred[k]);
        den += (y - mean) * (y - mean);
    }
    if (den == 0.0) throw std::domain_error("evaluate: test target has zero variance");

    EvalResult r;
    r.nrmse = std::sqrt(num / den);
    r.gamma = std::max(1.0 - r.nrmse, 0.0);
    return r;
}

double memory_capacity(const Reservoir& r, const Signal& noise,
                       const std::vector<int>& lags, double reg, int washout) {
    if (lags.empty()) throw std::invalid_argument("memory_capacity: no lags");
    int max_lag = 0;
    for (int lag : lags) {
        if (lag < 1) throw std::invalid_argument("memory_capacity: lags must be >= 1");
        max_lag = std::max(max_lag, lag);
    }
    const StateTrajectory traj = run_reservoir(r, noise, washout);
    // Starting at max(washout, max_lag) keeps the evaluation window identical
    // for every lag.
    const SplitView s = split_rows(std::max(washout, max_lag), traj.rows());

    const Eigen::MatrixXd z_train = design_matrix(traj, noise, s.train_begin, s.train_rows);
    const Eigen::MatrixXd z_test = design_matrix(traj, noise, s.test_begin, s.test_rows);
    Eigen::MatrixXd gram = z_train.transpose() * z_train;
    gram.diagonal().array() += reg;
    const Eigen::LDLT<Eigen::MatrixXd> solver(gram);

    double mc = 0.0;
    Eigen::VectorXd d_train(s.train_rows), d_test(s.test_rows);
    for (int lag : lags) {
        for (int k = 0; k < s.train_rows; ++k) d_train[k] = noise[s.train_begin + k - lag];
        for (int k = 0; k < s.test_rows; ++k) d_test[k] = noise[s.test_begin + k - lag];
        const Eigen::VectorXd w = solver.solve(z_train.transpose() * d_train);
        const Eigen::VectorXd pred = z_test * w;

        const double md = d_test.mean();
        const double mp = pred.mean();
        double cov = 0.0, vd = 0.0, vp = 0.0;
        for (int k = 0; k < s.test_rows; ++k) {
            const double a = d_test[k] - md;
            const double b = pred[k] - mp;
            cov += a * b;
            vd += a * a;
            vp += b * b;
        }
        if (vd == 0.0 || vp == 0.0) continue;  // no recoverable signal at this lag
        const double term = (cov * cov) / (vd * vp);
        mc += std::min(1.0, std::max(0.0, term));
    }
    return mc;
}

double jacobian_lambda(const StateTrajectory& traj, const Eigen::MatrixXd& w_rr) {
    if (w_rr.rows() != traj.states.cols())
        throw std::invalid_argument("jacobian: matrix/state size mismatch");
    const int rows = traj.post_rows();
    if (rows < 1) throw std::invalid_argument("jacobian: no post-washout rows");

    const int n = static_cast<int>(w_rr.rows());
    Eigen::VectorXd d2(n);
    Eigen::MatrixXd scaled(n, n), jtj(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    double acc = 0.0;
    for (int k = 0; k < rows; ++k) {
        const auto h = traj.states.row(traj.washout + k);
        for (int i = 0; i < n; ++i) {
            const double g = 1.0 - h[i] * h[i];
            d2[i] = g * g;
        }
        scaled.noalias() = d2.asDiagonal() * w_rr;
        jtj.noalias() = w_rr.transpose() * scaled;
        solver.compute(jtj, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("jacobian: eigenvalue solve failed");
        const double lam = solver.eigenvalues()[0];
        acc += std::sqrt(std::max(lam, 0.0));
    }
    return acc / rows;
}

}  // namespace rmvg
