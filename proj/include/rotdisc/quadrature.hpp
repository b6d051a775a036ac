#pragma once

#include <functional>
#include <vector>

namespace rotdisc {

struct GlRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// cached Gauss-Legendre rule of order n (nodes by Newton on P_n)
const GlRule& gl_rule(int n);

template <class F>
double integrate_gl(F&& f, double a, double b, int n) {
    const GlRule& r = gl_rule(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i)
        acc += r.w[i] * f(mid + half * r.x[i]);
    return acc * half;
}

// Partition [a, b] into cells: uniform steps of width <= coarse, plus
// geometric ladders (given ratio) descending to `fine` around each feature
// point that lies inside the interval.  Returns sorted cell boundaries,
// including a and b.
std::vector<double> graded_partition(double a, double b,
                                     const std::vector<double>& features,
                                     double coarse, double fine,
                                     double ratio = 2.0);

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0; // estimated
};

// integrate f over the cells of a partition with GL-7, then refine cells
// whose split-in-two correction exceeds its share of rel_tol * |total|
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              const std::vector<double>& partition,
                              double rel_tol, int max_depth = 12);

} // namespace rotdisc
