#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "wasep/lattice.hpp"

namespace wasep {

// Time factor of a separable test function. Only shapes whose powers have
// closed-form antiderivatives, so the exponential-martingale fast path can
// integrate psi(s)^k exactly.
struct TimeProfile {
    // psi(s) = a + b*s
    double a = 1.0;
    double b = 0.0;

    double value(double s) const { return a + b * s; }
    double deriv(double) const { return b; }

    // integral of psi^k over [t0, t1]
    double int_pow(int k, double t0, double t1) const {
        if (b == 0.0) return std::pow(a, k) * (t1 - t0);
        const double p1 = std::pow(a + b * t1, k + 1);
        const double p0 = std::pow(a + b * t0, k + 1);
        return (p1 - p0) / (b * (k + 1));
    }

    static TimeProfile constant() { return {1.0, 0.0}; }
    // 1 - s/(2T): stays in [1/2, 1] on [0, T]
    static TimeProfile linear_decay(double T) { return {1.0, -0.5 / T}; }
};

// Product of 1d mollifier bumps: amp * prod_i m(u_i / R),
// m(y) = exp(1 - 1/(1-y^2)) on |y|<1, identically 0 outside.
struct SpatialBump {
    int dim = 1;
    double R = 1.0;
    double amp = 1.0;

    static double m(double y) {
        const double y2 = y * y;
        if (y2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - y2));
    }
    static double m1(double y) {
        const double y2 = y * y;
        if (y2 >= 1.0) return 0.0;
        const double w = 1.0 - y2;
        return m(y) * (-2.0 * y / (w * w));
    }
    static double m2(double y) {
        const double y2 = y * y;
        if (y2 >= 1.0) return 0.0;
        const double w = 1.0 - y2;
        const double w2 = w * w;
        return m(y) * (4.0 * y2 / (w2 * w2) - 2.0 / w2 - 8.0 * y2 / (w2 * w));
    }

    double value(const double* u) const {
        double v = amp;
        for (int i = 0; i < dim; ++i) v *= m(u[i] / R);
        return v;
    }
    double d1(const double* u, int axis) const {
        double v = amp * m1(u[axis] / R) / R;
        for (int i = 0; i < dim; ++i)
            if (i != axis) v *= m(u[i] / R);
        return v;
    }
    double d2(const double* u, int axis) const {
        double v = amp * m2(u[axis] / R) / (R * R);
        for (int i = 0; i < dim; ++i)
            if (i != axis) v *= m(u[i] / R);
        return v;
    }
};

class TestFunction;

struct SeparableParts {
    const TimeProfile* psi = nullptr;
    const SpatialBump* h = nullptr;
};

// Smooth compactly supported space-time function H with derivatives.
class TestFunction {
public:
    virtual ~TestFunction() = default;
    virtual int dim() const = 0;
    virtual double value(double t, const double* u) const = 0;
    virtual void grad(double t, const double* u, double* g) const = 0;
    virtual double laplacian(double t, const double* u) const = 0;
    virtual double dt(double t, const double* u) const = 0;
    virtual double support_radius() const = 0;
    virtual SeparableParts separable() const { return {}; }
};

class SeparableTestFunction : public TestFunction {
public:
    SeparableTestFunction(TimeProfile psi, SpatialBump h) : psi_(psi), h_(h) {}

    int dim() const override { return h_.dim; }
    double value(double t, const double* u) const override {
        return psi_.value(t) * h_.value(u);
    }
    void grad(double t, const double* u, double* g) const override {
        const double ps = psi_.value(t);
        for (int i = 0; i < h_.dim; ++i) g[i] = ps * h_.d1(u, i);
    }
    double laplacian(double t, const double* u) const override {
        double lap = 0.0;
        for (int i = 0; i < h_.dim; ++i) lap += h_.d2(u, i);
        return psi_.value(t) * lap;
    }
    double dt(double t, const double* u) const override {
        return psi_.deriv(t) * h_.value(u);
    }
    double support_radius() const override { return h_.R; }
    SeparableParts separable() const override { return {&psi_, &h_}; }

    const TimeProfile& time_profile() const { return psi_; }
    const SpatialBump& bump() const { return h_; }

private:
    TimeProfile psi_;
    SpatialBump h_;
};

// Zero function, for untilted consistency checks.
class ZeroTestFunction : public TestFunction {
public:
    explicit ZeroTestFunction(int d = 1) : d_(d) {}
    int dim() const override { return d_; }
    double value(double, const double*) const override { return 0.0; }
    void grad(double, const double*, double* g) const override {
        for (int i = 0; i < d_; ++i) g[i] = 0.0;
    }
    double laplacian(double, const double*) const override { return 0.0; }
    double dt(double, const double*) const override { return 0.0; }
    double support_radius() const override { return 0.0; }

private:
    int d_;
};

// Max relative disagreement between analytic derivatives and centered
// finite differences at one point (test helper).
double derivative_consistency(const TestFunction& f, double t, const double* u,
                              double h);

}  // namespace wasep
