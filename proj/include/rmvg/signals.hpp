#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rmvg {

/// A scalar time series. Index 0 is the first sample.
struct Signal {
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int t) const { return values[static_cast<size_t>(t)]; }
    double& operator[](int t) { return values[static_cast<size_t>(t)]; }
};

/// Input/target pair for supervised tasks.
struct TaskData {
    Signal input;
    Signal target;
};

enum class Task { sin, mg, mso, narma, poly, noise };

/// Benchmark task descriptor: generator parameters plus the forecast
/// horizon tau_f used when the target is a shifted copy of the input.
struct TaskSpec {
    Task kind = Task::sin;
    int tau_f = 0;

    double psi = 0.2;  // sin frequency

    double mg_tau = 17.0;
    double mg_gamma = 0.2;
    double mg_beta = 0.1;
    double mg_x0 = 1.2;
    double mg_step = 0.1;

    int narma_r = 20;

    int poly_p = 7;
    int poly_d = 10;

    double noise_lo = -1.0;
    double noise_hi = 1.0;
};

/// Task defaults; tau_f per task: sin round(2*pi/psi), mg 6, mso 16, narma 15, poly d.
TaskSpec make_task(Task kind);

Task task_from_name(const std::string& name);
std::string task_name(Task kind);

Signal gen_sin(int length, double psi);

/// Mackey-Glass series at unit sampling time, integrated at `step` with a
/// classical Runge-Kutta scheme; the first 1000 unit-time samples are
/// discarded as transient. Throws std::runtime_error if the state blows up.
Signal gen_mg(int length, double tau = 17.0, double gamma = 0.2, double beta = 0.1,
              double x0 = 1.2, double step = 0.1);

Signal gen_mso(int length);

/// r-order NARMA system driven by uniform noise in [0,1]; target[t] = y[t+1].
/// A diverging draw (|y| > 1e3) is retried with a derived sub-seed, at most
/// 10 attempts, after which std::runtime_error is thrown.
TaskData gen_narma(int length, std::uint64_t seed, int r = 20);

/// Coefficients c(i,j), i+j <= p, for the polynomial readout task.
struct PolyCoeffs {
    int p = 0;
    std::vector<double> c;  // row-major: i = 0..p, j = 0..p-i

    double at(int i, int j) const;
};

PolyCoeffs draw_poly_coeffs(std::uint64_t seed, int p);

/// y[t] = sum_{i+j<=p} c(i,j) * x[t]^i * x[t-d]^j, with x[k] = 0 for k < 0.
Signal poly_target(const Signal& x, int d, const PolyCoeffs& coeffs);

/// Polynomial task: uniform input in [-1,1], coefficients uniform in [0,1]
/// drawn once per instance.
TaskData gen_poly(int length, std::uint64_t seed, int p = 7, int d = 10);

Signal gen_noise(int length, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// Delayed copy: sample t of the result equals x[t - tau] once the caller
/// re-aligns indices; concretely this is the first (size - tau) samples.
Signal delayed(const Signal& x, int tau);

}  // namespace rmvg
