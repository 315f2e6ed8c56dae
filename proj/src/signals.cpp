#include "rmvg/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmvg/rng.hpp"

namespace rmvg {

namespace {

void check_length(int length) {
    if (length <= 0) throw std::invalid_argument("signal length must be positive");
}

}  // namespace

TaskSpec make_task(Task kind) {
    TaskSpec s;
    s.kind = kind;
    switch (kind) {
        case Task::sin:
            s.tau_f = static_cast<int>(std::lround(2.0 * std::numbers::pi / s.psi));
            break;
        case Task::mg: s.tau_f = 6; break;
        case Task::mso: s.tau_f = 16; break;
        case Task::narma: s.tau_f = 15; break;
        case Task::poly: s.tau_f = s.poly_d; break;
        case Task::noise: s.tau_f = 0; break;
    }
    return s;
}

Task task_from_name(const std::string& name) {
    if (name == "sin") return Task::sin;
    if (name == "mg") return Task::mg;
    if (name == "mso") return Task::mso;
    if (name == "narma") return Task::narma;
    if (name == "poly") return Task::poly;
    if (name == "noise") return Task::noise;
    throw std::invalid_argument("unknown task: " + name);
}

std::string task_name(Task kind) {
    switch (kind) {
        case Task::sin: return "sin";
        case Task::mg: return "mg";
        case Task::mso: return "mso";
        case Task::narma: return "narma";
        case Task::poly: return "poly";
        case Task::noise: return "noise";
    }
    return "?";
}

Signal gen_sin(int length, double psi) {
    check_length(length);
    if (psi <= 0.0) throw std::invalid_argument("sin: frequency must be positive");
    Signal s;
    s.values.resize(static_cast<size_t>(length));
    // Sampling starts at t = 1, so the first emitted value is sin(psi).
    for (int t = 0; t < length; ++t) s[t] = std::sin(psi * static_cast<double>(t + 1));
    return s;
}

Signal gen_mg(int length, double tau, double gamma, double beta, double x0, double step) {
    check_length(length);
    if (tau <= 0.0 || step <= 0.0) throw std::invalid_argument("mg: tau and step must be positive");
    const int delay_steps = static_cast<int>(std::lround(tau / step));
    if (delay_steps < 1 || std::abs(tau / step - static_cast<double>(delay_steps)) > 1e-9)
        throw std::invalid_argument("mg: delay must be a whole number of steps");

    const int steps_per_unit = static_cast<int>(std::lround(1.0 / step));
    const int transient = 1000;
    const int n_steps = (transient + length) * steps_per_unit;

    // Full step history; the delayed state is read from it at integer offsets
    // only (no interpolation beyond averaging the two samples bracketing a
    // half step).
    std::vector<double> h(static_cast<size_t>(n_steps + 1));
    h[0] = x0;

    auto lagged = [&](int n) { return n >= delay_steps ? h[static_cast<size_t>(n - delay_steps)] : x0; };
    auto f = [&](double x, double xd) {
        const double d10 = xd * xd * xd * xd * xd;
        return gamma * xd / (1.0 + d10 * d10) - beta * x;
    };

    for (int n = 0; n < n_steps; ++n) {
        const double xd0 = lagged(n);
        const double xd1 = lagged(n + 1);
        const double xdh = 0.5 * (xd0 + xd1);
        const double x = h[static_cast<size_t>(n)];
        const double k1 = f(x, xd0);
        const double k2 = f(x + 0.5 * step * k1, xdh);
        const double k3 = f(x + 0.5 * step * k2, xdh);
        const double k4 = f(x + step * k3, xd1);
        const double next = x + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next) || std::abs(next) > 1e6)
            throw std::runtime_error("mg: integration diverged");
        h[static_cast<size_t>(n + 1)] = next;
    }

    Signal s;
    s.values.resize(static_cast<size_t>(length));
    for (int k = 0; k < length; ++k)
        s[k] = h[static_cast<size_t>((transient + k + 1) * steps_per_unit)];
    return s;
}

Signal gen_mso(int length) {
    check_length(length);
    Signal s;
    s.values.resize(static_cast<size_t>(length));
    for (int t = 0; t < length; ++t) {
        const double td = static_cast<double>(t);
        s[t] = std::sin(0.2 * td) + std::sin(0.311 * td) + std::sin(0.42 * td);
    }
    return s;
}

TaskData gen_narma(int length, std::uint64_t seed, int r) {
    check_length(length);
    if (r < 1) throw std::invalid_argument("narma: order must be >= 1");
    if (length <= r) throw std::invalid_argument("narma: length must exceed order");

    for (int attempt = 0; attempt < 10; ++attempt) {
        Rng rng(derive_seed(seed, 0x6e61726dULL, static_cast<std::uint64_t>(attempt)));
        Signal x;
        x.values.resize(static_cast<size_t>(length));
        for (int t = 0; t < length; ++t) x[t] = rng.uniform01();

        // y[0] is the zero pre-history sample; y[t+1] follows the recurrence.
        // Inputs before the first sample are treated as zero as well.
        std::vector<double> y(static_cast<size_t>(length) + 1, 0.0);
        auto xin = [&](int t) { return t >= 0 && t < length ? x[t] : 0.0; };
        auto yin = [&](int t) { return t >= 0 ? y[static_cast<size_t>(t)] : 0.0; };

        bool diverged = false;
        for (int t = 0; t <= length - 1; ++t) {
            double acc = 0.0;
            for (int i = 0; i <= r; ++i) acc += yin(t - i);
            const double next =
                0.3 * yin(t) + 0.05 * yin(t) * acc + 1.5 * xin(t - r) * xin(t) + 0.1;
            if (!std::isfinite(next) || std::abs(next) > 1e3) {
                diverged = true;
                break;
            }
            y[static_cast<size_t>(t + 1)] = next;
        }
        if (diverged) continue;

        TaskData d;
        d.input = std::move(x);
        d.target.values.assign(y.begin() + 1, y.end());
        return d;
    }
    throw std::runtime_error("narma: signal diverged in 10 attempts");
}

double PolyCoeffs::at(int i, int j) const {
    // Row-major over the triangle i + j <= p: row i starts after
    // sum_{k<i} (p + 1 - k) entries.
    const int base = i * (p + 1) - i * (i - 1) / 2;
    return c[static_cast<size_t>(base + j)];
}

PolyCoeffs draw_poly_coeffs(std::uint64_t seed, int p) {
    if (p < 0) throw std::invalid_argument("poly: degree must be >= 0");
    PolyCoeffs pc;
    pc.p = p;
    pc.c.resize(static_cast<size_t>((p + 1) * (p + 2) / 2));
    Rng rng(derive_seed(seed, 0x706f6c79ULL));
    for (double& v : pc.c) v = rng.uniform01();
    return pc;
}

Signal poly_target(const Signal& x, int d, const PolyCoeffs& coeffs) {
    if (d < 0) throw std::invalid_argument("poly: delay must be >= 0");
    const int n = x.size();
    const int p = coeffs.p;
    Signal y;
    y.values.resize(static_cast<size_t>(n));
    std::vector<double> pow_now(static_cast<size_t>(p) + 1);
    std::vector<double> pow_del(static_cast<size_t>(p) + 1);
    for (int t = 0; t < n; ++t) {
        const double xt = x[t];
        const double xd = t - d >= 0 ? x[t - d] : 0.0;
        pow_now[0] = 1.0;
        pow_del[0] = 1.0;
        for (int k = 1; k <= p; ++k) {
            pow_now[static_cast<size_t>(k)] = pow_now[static_cast<size_t>(k - 1)] * xt;
            pow_del[static_cast<size_t>(k)] = pow_del[static_cast<size_t>(k - 1)] * xd;
        }
        double acc = 0.0;
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= p - i; ++j)
                acc += coeffs.at(i, j) * pow_now[static_cast<size_t>(i)] * pow_del[static_cast<size_t>(j)];
        y[t] = acc;
    }
    return y;
}

TaskData gen_poly(int length, std::uint64_t seed, int p, int d) {
    check_length(length);
    if (p < 1) throw std::invalid_argument("poly: degree must be >= 1");
    if (length <= d) throw std::invalid_argument("poly: length must exceed delay");
    TaskData td;
    Rng rng(derive_seed(seed, 0x706f6c79ULL, 1));
    td.input.values.resize(static_cast<size_t>(length));
    for (int t = 0; t < length; ++t) td.input[t] = rng.uniform(-1.0, 1.0);
    td.target = poly_target(td.input, d, draw_poly_coeffs(seed, p));
    return td;
}

Signal gen_noise(int length, std::uint64_t seed, double lo, double hi) {
    check_length(length);
    if (!(lo < hi)) throw std::invalid_argument("noise: need lo < hi");
    Rng rng(derive_seed(seed, 0x6e6f6973ULL));
    Signal s;
    s.values.resize(static_cast<size_t>(length));
    for (int t = 0; t < length; ++t) s[t] = rng.uniform(lo, hi);
    return s;
}

Signal delayed(const Signal& x, int tau) {
    if (tau < 0 || tau >= x.size()) throw std::invalid_argument("delayed: tau out of range");
    Signal s;
    s.values.assign(x.values.begin(), x.values.end() - tau);
    return s;
}

}  // namespace rmvg
