#include "rotdisc/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rotdisc {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("fit_line: need >= 2 matched samples");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= (double)n;
    my /= (double)n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");

    LineFit f;
    f.n = (int)n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = syy - f.slope * sxy; // residual sum of squares
    if (ssr < 0.0) ssr = 0.0;
    f.slope_stderr = (n > 2) ? std::sqrt(ssr / ((double)n - 2.0) / sxx)
                             : std::numeric_limits<double>::quiet_NaN();
    f.r2 = (syy > 0.0) ? 1.0 - ssr / syy : 1.0;
    return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog: nonpositive sample");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

} // namespace rotdisc
