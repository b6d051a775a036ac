#include "rotdisc/quadrature.hpp"

#include "rotdisc/errors.hpp"

#include "rotdisc/summation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rotdisc {

static GlRule make_gl_rule(int n) {
    GlRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.w[i] = w;
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GlRule& gl_rule(int n) {
    static std::map<int, GlRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
    return it->second;
}

std::vector<double> graded_partition(double a, double b,
                                     const std::vector<double>& features,
                                     double coarse, double fine, double ratio) {
    if (!(b > a)) throw std::invalid_argument("graded_partition: empty interval");
    if (!(coarse > 0.0) || !(fine > 0.0) || !(ratio > 1.0))
        throw std::invalid_argument("graded_partition: bad grading parameters");
    fine = std::min(fine, coarse);

    std::vector<double> pts{a, b};
    for (double f : features) {
        if (f < a - coarse || f > b + coarse) continue;
        if (f > a && f < b) pts.push_back(f);
        for (double h = fine; h < coarse * (1.0 + 1e-12); h *= ratio) {
            double lo = f - h, hi = f + h;
            if (lo > a && lo < b) pts.push_back(lo);
            if (hi > a && hi < b) pts.push_back(hi);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](double u, double v) { return v - u < fine * 1e-6; }),
              pts.end());
    if (pts.front() > a) pts.front() = a;
    if (pts.back() < b) pts.back() = b;

    // fill residual gaps with uniform steps
    std::vector<double> out;
    out.push_back(pts[0]);
    for (size_t i = 1; i < pts.size(); ++i) {
        double gap = pts[i] - pts[i - 1];
        int k = (int)std::ceil(gap / coarse - 1e-12);
        for (int j = 1; j < k; ++j) out.push_back(pts[i - 1] + gap * j / k);
        out.push_back(pts[i]);
    }
    return out;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              const std::vector<double>& partition,
                              double rel_tol, int max_depth) {
    struct Cell {
        double a, b, val;
        int depth;
    };
    auto gl7 = [&](double a, double b) { return integrate_gl(f, a, b, 7); };

    std::vector<Cell> cells;
    for (size_t i = 1; i < partition.size(); ++i) {
        double a = partition[i - 1], b = partition[i];
        if (!(b > a)) continue;
        cells.push_back({a, b, gl7(a, b), 0});
    }
    double total = 0.0;
    for (const auto& c : cells) total += c.val;

    KahanSum done;
    double err = 0.0;
    std::vector<Cell> stack = std::move(cells);
    size_t evals_guard = 0;
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        double m = 0.5 * (c.a + c.b);
        double left = gl7(c.a, m), right = gl7(m, c.b);
        double correction = (left + right) - c.val;
        double scale = std::max(std::abs(total), 1e-300);
        if (std::abs(correction) <= rel_tol * scale / 64.0 || c.depth >= max_depth) {
            done.add(left);
            done.add(right);
            err += std::abs(correction);
        } else {
            total += correction;
            stack.push_back({c.a, m, left, c.depth + 1});
            stack.push_back({m, c.b, right, c.depth + 1});
        }
        if (++evals_guard > 2000000)
            throw NumericalError("integrate_adaptive: refinement budget exhausted");
    }
    return {done.value(), err};
}

} // namespace rotdisc
