#pragma once

#include <stdexcept>
#include <vector>

namespace rotdisc {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// x reduced into [0, modulus)
double wrap_mod(double x, double modulus);
inline double wrap_2pi(double x) { return wrap_mod(x, two_pi); }
inline double wrap_pi(double x) { return wrap_mod(x, pi); }

// Ordered circular distance: how far one travels forward (increasing
// coordinate, mod `modulus`) to get from `from` to `to`.  Lives in [0, modulus).
double forward_distance(double modulus, double from, double to);

// ==========================================================================
// circular arcs and finite unions of open arcs
// ==========================================================================

struct AngleInterval {
    double start = 0.0;   // representative in [0, 2*pi) after normalization
    double length = 0.0;  // in [0, 2*pi]

    double end() const { return start + length; }
    bool full() const { return length >= two_pi - 1e-12; }
};

AngleInterval normalized(AngleInterval iv);

// open-interval membership with boundary tolerance (eps > 0 shrinks the arc)
bool contains_open(const AngleInterval& iv, double x, double eps = 1e-12);
// closed-interval membership (eps > 0 fattens the arc)
bool contains_closed(const AngleInterval& iv, double x, double eps = 1e-12);

// Finite union of open circular arcs, kept sorted and pairwise disjoint.
// Touching arcs (shared endpoint) stay separate components: the shared
// boundary point belongs to neither open arc.
class AngularSet {
  public:
    AngularSet() = default;
    static AngularSet from_open_intervals(std::vector<AngleInterval> arcs);
    static AngularSet full_circle();

    const std::vector<AngleInterval>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    bool is_full() const { return comps_.size() == 1 && comps_[0].full(); }

    double measure() const;
    double longest_component() const;

    bool contains_point(double x, double eps = 1e-12) const;
    // J subset of one component (as closed-in-open containment up to eps)
    bool contains_interval(const AngleInterval& j, double eps = 1e-9) const;

    AngularSet shifted(double delta) const;
    AngularSet intersect(const AngularSet& other) const;

  private:
    std::vector<AngleInterval> comps_;
};

} // namespace rotdisc
