#include "rotdisc/body.hpp"

#include "rotdisc/errors.hpp"
#include "rotdisc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rotdisc {

namespace {

// tangent-angle jump reduced into [-pi, pi)
double signed_turn(double delta) { return wrap_2pi(delta + pi) - pi; }

double clamped_pow(double t, double e) { return std::pow(std::max(t, 0.0), e); }

} // namespace

// ============================================================
// piece primitives
// ============================================================

double piece_u0(const BoundaryPiece& p) {
    return std::visit([](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LinePiece>) {
            (void)q;
            return 0.0;
        } else if constexpr (std::is_same_v<T, CircularPiece>) {
            return q.psi0;
        } else {
            return q.reversed ? -q.t1 : q.t0;
        }
    }, p);
}

double piece_u1(const BoundaryPiece& p) {
    return std::visit([](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LinePiece>) {
            (void)q;
            return 1.0;
        } else if constexpr (std::is_same_v<T, CircularPiece>) {
            return q.psi1;
        } else {
            return q.reversed ? -q.t0 : q.t1;
        }
    }, p);
}

Vec2 piece_point(const BoundaryPiece& p, double u) {
    return std::visit([u](const auto& q) -> Vec2 {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LinePiece>) {
            return q.a + u * (q.b - q.a);
        } else if constexpr (std::is_same_v<T, CircularPiece>) {
            return q.center + q.radius * dir(u);
        } else {
            double t = q.reversed ? -u : u;
            return q.offset + t * q.e1 + clamped_pow(t, q.alpha) * q.e2;
        }
    }, p);
}

Vec2 piece_deriv(const BoundaryPiece& p, double u) {
    return std::visit([u](const auto& q) -> Vec2 {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LinePiece>) {
            return q.b - q.a;
        } else if constexpr (std::is_same_v<T, CircularPiece>) {
            return q.radius * perp_dir(u);
        } else {
            double t = q.reversed ? -u : u;
            Vec2 g = q.e1 + q.alpha * clamped_pow(t, q.alpha - 1.0) * q.e2;
            return q.reversed ? -g : g;
        }
    }, p);
}

BoundaryPiece piece_transformed(const BoundaryPiece& p, double rot, double scale, Vec2 shift) {
    auto map_pt = [&](Vec2 v) { return shift + scale * rotate(v, rot); };
    auto map_lin = [&](Vec2 v) { return scale * rotate(v, rot); };
    return std::visit([&](const auto& q) -> BoundaryPiece {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LinePiece>) {
            return LinePiece{map_pt(q.a), map_pt(q.b)};
        } else if constexpr (std::is_same_v<T, CircularPiece>) {
            return CircularPiece{map_pt(q.center), scale * q.radius, q.psi0 + rot, q.psi1 + rot};
        } else {
            return PowerPiece{map_pt(q.offset), map_lin(q.e1), map_lin(q.e2),
                              q.alpha, q.t0, q.t1, q.reversed};
        }
    }, p);
}

// ============================================================
// construction
// ============================================================

struct ConvexBody::PolarTable {
    Vec2 anchor;
    int cells = 0;
    std::vector<Vec2> pt;   // boundary point at polar angle 2*pi*i/cells
    std::vector<Vec2> tan;  // traversal tangent direction there
    std::vector<double> s;  // arc length there
};

struct ConvexBody::Lazy {
    std::mutex mu;
    std::optional<std::pair<double, double>> diam;
    std::optional<std::uint64_t> hash;
    std::shared_ptr<const PolarTable> polar;
};

ConvexBody::ConvexBody(std::vector<BoundaryPiece> pieces)
    : pieces_(std::move(pieces)), lazy_(std::make_shared<Lazy>()) {
    if (pieces_.empty()) throw std::invalid_argument("body needs at least one boundary piece");
    for (const auto& p : pieces_) {
        std::visit([](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, LinePiece>) {
                if (!(norm(q.b - q.a) > 0.0)) throw std::invalid_argument("degenerate line piece");
            } else if constexpr (std::is_same_v<T, CircularPiece>) {
                if (!(q.radius > 0.0)) throw std::invalid_argument("circular piece needs radius > 0");
                if (!(q.psi1 > q.psi0)) throw std::invalid_argument("circular piece must run counterclockwise");
                if (q.psi1 - q.psi0 > two_pi * (1.0 + 1e-12))
                    throw std::invalid_argument("circular piece exceeds a full turn");
            } else {
                if (!(q.alpha > 1.0)) throw std::invalid_argument("power piece needs alpha > 1");
                if (!(q.t0 >= 0.0 && q.t1 > q.t0)) throw std::invalid_argument("power piece needs 0 <= t0 < t1");
                if (!(norm(q.e1) > 0.0 && norm(q.e2) > 0.0))
                    throw std::invalid_argument("power piece frame is degenerate");
                double cr = cross(q.e1, q.e2);
                if (!(q.reversed ? cr < 0.0 : cr > 0.0))
                    throw std::invalid_argument("power piece traversal is not counterclockwise");
            }
        }, p);
    }
    build_tables();
    validate();
}

void ConvexBody::build_tables() {
    const int n = (int)pieces_.size();
    info_.assign(n, {});
    joints_.assign(n, {});

    // ---- bounding-box scale from coarse samples ----
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& p : pieces_) {
        double u0 = piece_u0(p), u1 = piece_u1(p);
        for (int k = 0; k <= 16; ++k) {
            Vec2 v = piece_point(p, u0 + (u1 - u0) * k / 16.0);
            xlo = std::min(xlo, v.x); xhi = std::max(xhi, v.x);
            ylo = std::min(ylo, v.y); yhi = std::max(yhi, v.y);
        }
    }
    scale_ = std::hypot(xhi - xlo, yhi - ylo);
    if (!(scale_ > 0.0)) throw std::invalid_argument("body has no extent");

    // ---- per-piece knots and arc length ----
    polygon_ = true;
    double s_acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& p = pieces_[i];
        auto& fo = info_[i];
        fo.u0 = piece_u0(p);
        fo.u1 = piece_u1(p);
        fo.s_begin = s_acc;

        std::vector<double> cuts;
        if (std::holds_alternative<LinePiece>(p)) {
            cuts = {fo.u0, fo.u1};
        } else if (std::holds_alternative<CircularPiece>(p)) {
            int m = std::max(2, (int)std::ceil((fo.u1 - fo.u0) / (pi / 8)));
            for (int k = 0; k <= m; ++k) cuts.push_back(fo.u0 + (fo.u1 - fo.u0) * k / m);
            polygon_ = false;
        } else {
            // grade toward t = 0 where curvature blows up for alpha < 2
            const auto& q = std::get<PowerPiece>(p);
            double span = q.t1 - q.t0;
            auto tk = graded_partition(q.t0, q.t1, {q.t0}, span / 8.0, span * 1e-14, 2.0);
            if (q.reversed) {
                for (auto it = tk.rbegin(); it != tk.rend(); ++it) cuts.push_back(-*it);
            } else {
                cuts = tk;
            }
            polygon_ = false;
        }

        fo.knot_u = cuts;
        fo.knot_s.assign(cuts.size(), 0.0);
        const auto& pc = p;
        auto speed = [&pc](double u) { return norm(piece_deriv(pc, u)); };
        for (size_t k = 1; k < cuts.size(); ++k)
            fo.knot_s[k] = fo.knot_s[k - 1] + integrate_gl(speed, cuts[k - 1], cuts[k], 15);
        fo.len = fo.knot_s.back();
        s_acc += fo.len;
    }
    perimeter_ = s_acc;

    // ---- tangent ladder: unwrapped traversal tangent angles ----
    auto local_begin = [&](int i) { return angle_of(piece_deriv(pieces_[i], info_[i].u0)); };
    auto local_end = [&](int i) { return angle_of(piece_deriv(pieces_[i], info_[i].u1)); };
    auto turning = [&](int i) -> double {
        const auto& p = pieces_[i];
        if (std::holds_alternative<LinePiece>(p)) return 0.0;
        if (std::holds_alternative<CircularPiece>(p)) {
            const auto& q = std::get<CircularPiece>(p);
            return q.psi1 - q.psi0;
        }
        Vec2 g0 = piece_deriv(p, info_[i].u0), g1 = piece_deriv(p, info_[i].u1);
        double t = std::atan2(cross(g0, g1), dot(g0, g1));
        if (t < -1e-9) throw std::invalid_argument("power piece turns clockwise");
        return std::max(t, 0.0);
    };

    info_[0].tan_begin = wrap_2pi(local_begin(0));
    info_[0].tan_end = info_[0].tan_begin + turning(0);
    for (int i = 1; i < n; ++i) {
        double jump = signed_turn(local_begin(i) - local_end(i - 1));
        if (jump < -1e-9) throw std::invalid_argument("boundary has a reflex joint");
        if (jump > pi - 1e-12) throw std::invalid_argument("boundary joint turns by half a circle");
        info_[i].tan_begin = info_[i - 1].tan_end + std::max(jump, 0.0);
        info_[i].tan_end = info_[i].tan_begin + turning(i);
    }
    double seam = signed_turn(local_begin(0) - local_end(n - 1));
    if (seam < -1e-9) throw std::invalid_argument("boundary has a reflex joint");
    ladder_total_ = info_[n - 1].tan_end + std::max(seam, 0.0) - info_[0].tan_begin;
    if (std::abs(ladder_total_ - two_pi) > 1e-6)
        throw std::invalid_argument("boundary does not wind once counterclockwise");

    for (int i = 0; i < n; ++i) {
        auto& j = joints_[i];
        j.pos = piece_point(pieces_[i], info_[i].u1);
        j.s = info_[i].s_begin + info_[i].len;
        j.tan_in = info_[i].tan_end;
        j.tan_out = (i + 1 < n) ? info_[i + 1].tan_begin : info_[0].tan_begin + ladder_total_;
    }

    // ---- area and centroid by the divergence theorem ----
    double a2 = 0.0, mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& p = pieces_[i];
        const auto& fo = info_[i];
        for (size_t k = 1; k < fo.knot_u.size(); ++k) {
            a2 += integrate_gl([&](double u) {
                return cross(piece_point(p, u), piece_deriv(p, u));
            }, fo.knot_u[k - 1], fo.knot_u[k], 24);
            mx += integrate_gl([&](double u) {
                Vec2 g = piece_point(p, u);
                return 0.5 * g.x * g.x * piece_deriv(p, u).y;
            }, fo.knot_u[k - 1], fo.knot_u[k], 24);
            my += integrate_gl([&](double u) {
                Vec2 g = piece_point(p, u);
                return -0.5 * g.y * g.y * piece_deriv(p, u).x;
            }, fo.knot_u[k - 1], fo.knot_u[k], 24);
        }
    }
    area_ = 0.5 * a2;
    if (!(area_ > 1e-12 * scale_ * scale_)) throw std::invalid_argument("body has empty interior");
    centroid_ = {mx / area_, my / area_};
}

void ConvexBody::validate() const {
    const int n = (int)pieces_.size();
    for (int i = 0; i < n; ++i) {
        Vec2 e = piece_point(pieces_[i], info_[i].u1);
        Vec2 b = piece_point(pieces_[(i + 1) % n], info_[(i + 1) % n].u0);
        if (norm(e - b) > 1e-9 * scale_)
            throw std::invalid_argument("boundary pieces do not close into a loop");
    }
}

// ============================================================
// support machinery
// ============================================================

double ConvexBody::piece_tangent_unwrapped(int piece, double u) const {
    const auto& fo = info_[piece];
    double a0 = angle_of(piece_deriv(pieces_[piece], fo.u0));
    double a = angle_of(piece_deriv(pieces_[piece], u));
    if (std::holds_alternative<CircularPiece>(pieces_[piece]))
        return fo.tan_begin + (u - fo.u0); // tangent advances with psi exactly
    return fo.tan_begin + std::max(0.0, signed_turn(a - a0));
}

double ConvexBody::invert_piece_tangent(int piece, double target) const {
    const auto& fo = info_[piece];
    if (std::holds_alternative<CircularPiece>(pieces_[piece]))
        return fo.u0 + (target - fo.tan_begin);
    double lo = fo.u0, hi = fo.u1;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        (piece_tangent_unwrapped(piece, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BoundaryPos ConvexBody::make_pos(int piece, double u) const {
    return {piece, u, arclength_at(piece, u)};
}

BoundaryPos ConvexBody::position_at_tangent(double tangent, bool last) const {
    const int n = (int)pieces_.size();
    const double t0 = info_.front().tan_begin;
    double t = t0 + wrap_2pi(tangent - t0);
    if (t > t0 + ladder_total_) t = t0 + ladder_total_;

    int lo = 0, hi = n - 1;
    while (lo < hi) { // largest piece with tan_begin <= t
        int mid = (lo + hi + 1) / 2;
        if (info_[mid].tan_begin <= t) lo = mid; else hi = mid - 1;
    }
    int idx = lo;
    const auto& fo = info_[idx];
    if (t <= fo.tan_end) {
        if (fo.tan_end - fo.tan_begin <= 1e-14) { // flat face
            int first = idx;
            while (first > 0 && info_[first - 1].tan_end >= t) --first;
            return last ? make_pos(idx, fo.u1) : make_pos(first, info_[first].u0);
        }
        if (t <= fo.tan_begin) return make_pos(idx, fo.u0);
        if (t >= fo.tan_end) return make_pos(idx, fo.u1);
        return make_pos(idx, invert_piece_tangent(idx, t));
    }
    return make_pos(idx, fo.u1); // joint after piece idx
}

Vec2 ConvexBody::support_point(double theta) const {
    BoundaryPos p = position_at_tangent(theta + 0.5 * pi, false);
    return piece_point(pieces_[p.piece], p.u);
}

double ConvexBody::support(double theta) const {
    return dot(support_point(theta), dir(theta));
}

double ConvexBody::width(double theta) const {
    return support(theta) + support(theta + pi);
}

// ============================================================
// boundary parameterization
// ============================================================

double ConvexBody::arclength_at(int piece, double u) const {
    const auto& fo = info_[piece];
    const auto& ku = fo.knot_u;
    double uu = std::clamp(u, fo.u0, fo.u1);
    size_t j = std::upper_bound(ku.begin(), ku.end(), uu) - ku.begin();
    j = std::min(std::max<size_t>(j, 1), ku.size() - 1) - 1;
    const auto& pc = pieces_[piece];
    double local = fo.knot_s[j] +
                   integrate_gl([&pc](double v) { return norm(piece_deriv(pc, v)); }, ku[j], uu, 15);
    return fo.s_begin + local;
}

BoundaryPos ConvexBody::position_at_arclength(double s) const {
    double sw = wrap_mod(s, perimeter_);
    int n = (int)pieces_.size();
    int lo = 0, hi = n - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (info_[mid].s_begin <= sw) lo = mid; else hi = mid - 1;
    }
    const auto& fo = info_[lo];
    double target = sw - fo.s_begin;
    const auto& ks = fo.knot_s;
    size_t j = std::upper_bound(ks.begin(), ks.end(), target) - ks.begin();
    j = std::min(std::max<size_t>(j, 1), ks.size() - 1) - 1;
    double ulo = fo.knot_u[j], uhi = fo.knot_u[j + 1];
    const auto& pc = pieces_[lo];
    auto local_s = [&](double v) {
        return ks[j] + integrate_gl([&pc](double w) { return norm(piece_deriv(pc, w)); },
                                    fo.knot_u[j], v, 15);
    };
    // Newton from a linear seed; the speed |gamma'| never vanishes
    double u = ulo + (uhi - ulo) * (target - ks[j]) / std::max(ks[j + 1] - ks[j], 1e-300);
    u = std::clamp(u, ulo, uhi);
    for (int it = 0; it < 8; ++it) {
        double f = local_s(u) - target;
        double un = std::clamp(u - f / norm(piece_deriv(pc, u)), ulo, uhi);
        bool done = std::abs(un - u) < 1e-15 * (1.0 + std::abs(u));
        u = un;
        if (done) break;
    }
    return {lo, u, sw};
}

Vec2 ConvexBody::boundary_point(double s) const {
    BoundaryPos p = position_at_arclength(s);
    return piece_point(pieces_[p.piece], p.u);
}

double ConvexBody::tangent_angle_at(const BoundaryPos& pos) const {
    return piece_tangent_unwrapped(pos.piece, pos.u);
}

// ============================================================
// chords
// ============================================================

double ConvexBody::solve_depth_on_piece(int piece, double ulo, double uhi, const Vec2& dirv,
                                        double target, bool rising) const {
    const auto& p = pieces_[piece];
    if (const auto* ln = std::get_if<LinePiece>(&p)) {
        double flo = dot(ln->a + ulo * (ln->b - ln->a), dirv);
        double fhi = dot(ln->a + uhi * (ln->b - ln->a), dirv);
        if (fhi == flo) return ulo;
        return std::clamp(ulo + (target - flo) * (uhi - ulo) / (fhi - flo), ulo, uhi);
    }
    if (const auto* ci = std::get_if<CircularPiece>(&p)) {
        double thd = angle_of(dirv);
        double v = std::clamp((target - dot(ci->center, dirv)) / ci->radius, -1.0, 1.0);
        double d = std::acos(v);
        double want = rising ? thd - d : thd + d;
        double k = std::round((0.5 * (ulo + uhi) - want) / two_pi);
        return std::clamp(want + k * two_pi, ulo, uhi);
    }
    double lo = ulo, hi = uhi;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        double f = dot(piece_point(p, mid), dirv);
        bool below = rising ? (f < target) : (f > target);
        if (below) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

ChordRecord ConvexBody::face_chord(double theta, bool max_side) const {
    double tang = max_side ? theta + 0.5 * pi : theta - 0.5 * pi;
    BoundaryPos first = position_at_tangent(tang, false);
    BoundaryPos last = position_at_tangent(tang, true);
    Vec2 pf = piece_point(pieces_[first.piece], first.u);
    Vec2 pl = piece_point(pieces_[last.piece], last.u);
    ChordRecord r;
    r.theta = theta;
    r.lambda = max_side ? width(theta) : 0.0;
    if (max_side) {
        r.endpoint_plus = pf;  r.s_plus = first.s;
        r.endpoint_minus = pl; r.s_minus = last.s;
    } else {
        r.endpoint_plus = pl;  r.s_plus = last.s;
        r.endpoint_minus = pf; r.s_minus = first.s;
    }
    r.length = std::max(0.0, dot(r.endpoint_minus - r.endpoint_plus, perp_dir(theta)));
    return r;
}

ChordRecord ConvexBody::chord(double theta, double lambda) const {
    const Vec2 u = dir(theta);
    const double mx = support(theta);
    const double mn = -support(theta + pi);
    const double w = mx - mn;
    const double tol = 1e-9 * scale_;
    if (!(lambda >= -tol))
        throw EmptyChordError("chord depth is negative");
    if (lambda > w + tol)
        throw EmptyChordError("chord depth exceeds directional width");
    if (lambda <= 0.0) return face_chord(theta, false);
    if (lambda >= w) return face_chord(theta, true);
    const double target = mn + lambda;
    const int n = (int)pieces_.size();

    auto walk = [&](const BoundaryPos& from, const BoundaryPos& to) {
        std::vector<std::array<double, 3>> segs;
        int k = from.piece;
        double ulo = from.u;
        for (int step = 0; step <= n + 1; ++step) {
            bool fin = (k == to.piece) && (step > 0 || to.u >= ulo);
            double uhi = fin ? to.u : info_[k].u1;
            if (uhi > ulo) segs.push_back({(double)k, ulo, uhi});
            if (fin) break;
            k = (k + 1) % n;
            ulo = info_[k].u0;
        }
        return segs;
    };

    auto cross_on = [&](const BoundaryPos& from, const BoundaryPos& to, bool rising,
                        Vec2& out_pt, double& out_s) {
        auto segs = walk(from, to);
        if (segs.empty()) segs.push_back({(double)from.piece, from.u, from.u});
        for (size_t i = 0; i < segs.size(); ++i) {
            int k = (int)segs[i][0];
            double ulo = segs[i][1], uhi = segs[i][2];
            double fhi = dot(piece_point(pieces_[k], uhi), u);
            bool hit = rising ? (fhi >= target) : (fhi <= target);
            if (hit || i + 1 == segs.size()) {
                double usol = solve_depth_on_piece(k, ulo, uhi, u, target, rising);
                out_pt = piece_point(pieces_[k], usol);
                out_s = arclength_at(k, usol);
                return;
            }
        }
    };

    ChordRecord r;
    r.theta = theta;
    r.lambda = lambda;
    // rising chain leaves the minimizing face, falling chain returns to it
    cross_on(position_at_tangent(theta - 0.5 * pi, true),
             position_at_tangent(theta + 0.5 * pi, false), true, r.endpoint_plus, r.s_plus);
    cross_on(position_at_tangent(theta + 0.5 * pi, true),
             position_at_tangent(theta - 0.5 * pi, false), false, r.endpoint_minus, r.s_minus);
    r.length = std::max(0.0, dot(r.endpoint_minus - r.endpoint_plus, perp_dir(theta)));
    return r;
}

double ConvexBody::gamma(double theta, double lambda) const {
    return std::max(chord(theta, lambda).length, chord(theta + pi, lambda).length);
}

SemiChordRecord ConvexBody::semi_chords(double theta, double lambda) const {
    SemiChordRecord r;
    r.base = chord(theta, lambda);
    BoundaryPos f = position_at_tangent(theta - 0.5 * pi, false);
    BoundaryPos l = position_at_tangent(theta - 0.5 * pi, true);
    double sf = wrap_mod(f.s, perimeter_);
    double d = forward_distance(perimeter_, sf, wrap_mod(l.s, perimeter_));
    r.s_split = wrap_mod(sf + 0.5 * d, perimeter_);
    double a_split = dot(boundary_point(r.s_split), perp_dir(theta));
    double a_plus = dot(r.base.endpoint_plus, perp_dir(theta));
    r.right_len = std::clamp(a_split - a_plus, 0.0, r.base.length);
    r.left_len = r.base.length - r.right_len;
    return r;
}

} // namespace rotdisc
