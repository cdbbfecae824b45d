#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace wasep {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_rule(int n);

double gauss(const std::function<double(double)>& f, double a, double b, int n);

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 48;
    int rule = 15;
};

struct QuadNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive bisection with a fixed Gauss rule per panel; throws
// QuadNonConvergence when the depth cap is hit before the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// Non-adaptive composite rule (for grid-refinement convergence checks).
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int rule = 15);

}  // namespace wasep
