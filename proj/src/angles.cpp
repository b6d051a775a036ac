#include "rotdisc/angles.hpp"

#include <algorithm>
#include <cmath>

namespace rotdisc {

double wrap_mod(double x, double modulus) {
    if (!std::isfinite(x) || !(modulus > 0.0))
        throw std::invalid_argument("wrap_mod: non-finite input");
    double y = std::fmod(x, modulus);
    if (y < 0.0) y += modulus;
    if (y >= modulus) y = 0.0; // fmod can land exactly on modulus after +=
    return y;
}

double forward_distance(double modulus, double from, double to) {
    if (!std::isfinite(from) || !std::isfinite(to))
        throw std::invalid_argument("forward_distance: non-finite input");
    return wrap_mod(to - from, modulus);
}

AngleInterval normalized(AngleInterval iv) {
    if (!std::isfinite(iv.start) || !std::isfinite(iv.length) || iv.length < 0.0)
        throw std::invalid_argument("AngleInterval: bad interval");
    AngleInterval out;
    out.length = std::min(iv.length, two_pi);
    out.start = wrap_2pi(iv.start);
    return out;
}

bool contains_open(const AngleInterval& iv, double x, double eps) {
    if (iv.length >= two_pi - eps) return true;
    double d = forward_distance(two_pi, iv.start, x);
    return d > eps && d < iv.length - eps;
}

bool contains_closed(const AngleInterval& iv, double x, double eps) {
    if (iv.length >= two_pi - 1e-15) return true;
    double d = forward_distance(two_pi, iv.start, x);
    return d <= iv.length + eps || d >= two_pi - eps;
}

// ==========================================================================

AngularSet AngularSet::full_circle() {
    AngularSet s;
    s.comps_.push_back({0.0, two_pi});
    return s;
}

AngularSet AngularSet::from_open_intervals(std::vector<AngleInterval> arcs) {
    constexpr double eps = 1e-12;
    std::vector<AngleInterval> in;
    for (auto iv : arcs) {
        if (iv.length <= eps) continue;
        iv = normalized(iv);
        if (iv.full()) return full_circle();
        in.push_back(iv);
    }
    AngularSet out;
    if (in.empty()) return out;

    std::sort(in.begin(), in.end(),
              [](const AngleInterval& a, const AngleInterval& b) { return a.start < b.start; });

    // sweep with the first arc duplicated one turn up to close the wrap
    std::vector<AngleInterval> merged;
    AngleInterval cur = in[0];
    for (size_t i = 1; i < in.size(); ++i) {
        AngleInterval nxt = in[i];
        if (nxt.start < cur.end() - eps) { // genuine open overlap; touching stays split
            cur.length = std::max(cur.end(), nxt.end()) - cur.start;
        } else {
            merged.push_back(cur);
            cur = nxt;
        }
    }
    merged.push_back(cur);

    // wrap: last component may spill past 2*pi and overlap early ones
    while (merged.size() > 1) {
        AngleInterval& last = merged.back();
        AngleInterval& first = merged.front();
        if (last.end() > two_pi + first.start + eps) {
            double new_end = std::max(last.end(), first.start + first.length + two_pi);
            last.length = new_end - last.start;
            merged.erase(merged.begin());
        } else {
            break;
        }
    }
    if (merged.size() == 1 && merged[0].length >= two_pi - eps) return full_circle();
    if (merged[0].length >= two_pi) merged[0].length = two_pi;

    out.comps_ = std::move(merged);
    return out;
}

double AngularSet::measure() const {
    double m = 0.0;
    for (const auto& c : comps_) m += c.length;
    return std::min(m, two_pi);
}

double AngularSet::longest_component() const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, c.length);
    return m;
}

bool AngularSet::contains_point(double x, double eps) const {
    for (const auto& c : comps_)
        if (contains_open(c, x, eps)) return true;
    return false;
}

bool AngularSet::contains_interval(const AngleInterval& j, double eps) const {
    if (j.length <= 0.0) return contains_point(j.start, 0.0);
    if (is_full()) return true;
    for (const auto& c : comps_) {
        double d = forward_distance(two_pi, c.start, j.start);
        if (d <= c.length + eps && d + j.length <= c.length + eps) return true;
    }
    return false;
}

AngularSet AngularSet::shifted(double delta) const {
    AngularSet s;
    s.comps_ = comps_;
    for (auto& c : s.comps_) c.start = wrap_2pi(c.start + delta);
    std::sort(s.comps_.begin(), s.comps_.end(),
              [](const AngleInterval& a, const AngleInterval& b) { return a.start < b.start; });
    return s;
}

AngularSet AngularSet::intersect(const AngularSet& other) const {
    constexpr double eps = 1e-13;
    if (empty() || other.empty()) return {};
    if (is_full()) return other;
    if (other.is_full()) return *this;

    // breakpoints: all endpoints of both sets
    std::vector<double> bp;
    for (const auto& c : comps_) {
        bp.push_back(wrap_2pi(c.start));
        bp.push_back(wrap_2pi(c.end()));
    }
    for (const auto& c : other.comps_) {
        bp.push_back(wrap_2pi(c.start));
        bp.push_back(wrap_2pi(c.end()));
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return std::abs(a - b) < eps; }),
             bp.end());
    if (bp.size() >= 2 && (two_pi - bp.back()) + bp.front() < eps) bp.pop_back();

    size_t n = bp.size();
    if (n == 0) return {};

    // elementary arcs (bp[i], bp[i+1]); keep those interior to both sets
    std::vector<char> keep(n, 0);
    std::vector<AngleInterval> arcs(n);
    for (size_t i = 0; i < n; ++i) {
        double a = bp[i];
        double b = (i + 1 < n) ? bp[i + 1] : bp[0] + two_pi;
        double len = b - a;
        if (len <= eps) { arcs[i] = {a, 0.0}; continue; }
        arcs[i] = {a, len};
        double mid = a + 0.5 * len;
        keep[i] = contains_point(mid, eps) && other.contains_point(mid, eps);
    }

    // merge consecutive kept arcs when the shared breakpoint is interior to both
    auto interior_to_both = [&](double p) {
        return contains_point(p, eps) && other.contains_point(p, eps);
    };
    std::vector<AngleInterval> result;
    std::vector<int> kept_idx;
    for (size_t i = 0; i < n; ++i)
        if (keep[i] && arcs[i].length > eps) kept_idx.push_back((int)i);
    if (kept_idx.empty()) return {};

    // walk runs of adjacency on the circle
    size_t m = kept_idx.size();
    std::vector<char> merged_into_prev(m, 0);
    for (size_t j = 0; j < m; ++j) {
        int prev = kept_idx[(j + m - 1) % m];
        int curi = kept_idx[j];
        bool adjacent = ((prev + 1) % (int)n == curi);
        if (adjacent && interior_to_both(arcs[curi].start)) merged_into_prev[j] = 1;
    }
    if (std::all_of(merged_into_prev.begin(), merged_into_prev.end(),
                    [](char c) { return c != 0; })) {
        // every junction interior: the intersection is the whole circle
        return full_circle();
    }
    // rotate so run starts at a non-merged arc
    size_t first = 0;
    while (merged_into_prev[first]) ++first;
    AngleInterval cur = arcs[kept_idx[first]];
    for (size_t step = 1; step <= m; ++step) {
        size_t j = (first + step) % m;
        if (step == m) { result.push_back(cur); break; }
        if (merged_into_prev[j]) {
            cur.length += arcs[kept_idx[j]].length;
        } else {
            result.push_back(cur);
            cur = arcs[kept_idx[j]];
        }
    }
    return from_open_intervals(result);
}

} // namespace rotdisc
