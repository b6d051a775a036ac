#include "rotdisc/body.hpp"

#include "rotdisc/errors.hpp"
#include "rotdisc/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace rotdisc {

namespace {

double signed_turn(double delta) { return wrap_2pi(delta + pi) - pi; }

// golden-section minimum of a unimodal-ish bracket
double golden_min(const std::function<double(double)>& f, double a, double b, int iters) {
    const double g = 0.6180339887498949;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - g * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + g * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

// ============================================================
// normal structure
// ============================================================

AngleInterval ConvexBody::normal_interval(double s) const {
    double sw = wrap_mod(s, perimeter_);
    for (const auto& j : joints_) {
        double js = wrap_mod(j.s, perimeter_);
        double d = std::abs(sw - js);
        d = std::min(d, perimeter_ - d);
        if (d <= 1e-12 * perimeter_ && j.turn() > 1e-9)
            return normalized({j.tan_in + 0.5 * pi, j.turn()});
    }
    BoundaryPos pos = position_at_arclength(sw);
    return normalized({tangent_angle_at(pos) + 0.5 * pi, 0.0});
}

AngularTrace ConvexBody::angular_trace() const {
    std::vector<AngleInterval> arcs;
    for (const auto& j : joints_)
        if (j.turn() > 1e-9) arcs.push_back({wrap_2pi(j.tan_in + 0.5 * pi), j.turn()});
    AngularTrace t;
    t.trace = AngularSet::from_open_intervals(std::move(arcs));
    auto overlap = t.trace.intersect(t.trace.shifted(pi));
    t.psi = overlap.empty() ? 0.0 : overlap.longest_component();
    return t;
}

double ConvexBody::portion_of_perimeter(const AngleInterval& I) const {
    AngleInterval J = normalized(I);
    if (J.length >= two_pi - 1e-12) return perimeter_;
    double total = 0.0;
    for (int i = 0; i < (int)pieces_.size(); ++i) {
        const auto& fo = info_[i];
        double nb = fo.tan_begin + 0.5 * pi, ne = fo.tan_end + 0.5 * pi;
        if (ne - nb <= 1e-14) {
            if (contains_closed(J, nb, 1e-12)) total += fo.len;
            continue;
        }
        int klo = (int)std::ceil((nb - J.end()) / two_pi - 1e-13);
        int khi = (int)std::floor((ne - J.start) / two_pi + 1e-13);
        for (int k = klo; k <= khi; ++k) {
            double lo = std::max(nb, J.start + k * two_pi);
            double hi = std::min(ne, J.end() + k * two_pi);
            if (hi <= lo) continue;
            double ulo = invert_piece_tangent(i, lo - 0.5 * pi);
            double uhi = invert_piece_tangent(i, hi - 0.5 * pi);
            total += arclength_at(i, uhi) - arclength_at(i, ulo);
        }
    }
    return total;
}

// ============================================================
// derived metrics
// ============================================================

std::pair<double, double> ConvexBody::diameters() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (lazy_->diam) return *lazy_->diam;

    double L = 0.0;
    if (polygon_) {
        for (size_t i = 0; i < joints_.size(); ++i)
            for (size_t j = i + 1; j < joints_.size(); ++j)
                L = std::max(L, norm(joints_[i].pos - joints_[j].pos));
    } else {
        const int grid = 512;
        int best = 0;
        double wbest = -1.0;
        for (int i = 0; i < grid; ++i) {
            double w = width(pi * i / grid);
            if (w > wbest) { wbest = w; best = i; }
        }
        double h = pi / grid;
        double th = golden_min([&](double t) { return -width(t); },
                               pi * best / grid - h, pi * best / grid + h, 80);
        L = width(th);
    }

    // shortest directional diameter: minimize the longest chord over directions
    auto longest_chord = [&](double th) {
        double w = width(th);
        double lo = 0.0, hi = w;
        for (int it = 0; it < 60; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (chord(th, m1).length < chord(th, m2).length) lo = m1; else hi = m2;
        }
        return chord(th, 0.5 * (lo + hi)).length;
    };
    const int grid = 512;
    std::vector<double> g(grid);
    for (int i = 0; i < grid; ++i) g[i] = longest_chord(pi * i / grid);
    // refine every strict-ish local minimum near the global one
    double gmin = *std::min_element(g.begin(), g.end());
    double S = gmin;
    double h = pi / grid;
    for (int i = 0; i < grid; ++i) {
        double prev = g[(i + grid - 1) % grid], next = g[(i + 1) % grid];
        if (g[i] <= prev && g[i] <= next && g[i] <= gmin * (1.0 + 1e-3)) {
            double th = golden_min(longest_chord, pi * i / grid - h, pi * i / grid + h, 80);
            S = std::min(S, longest_chord(th));
        }
    }
    lazy_->diam = {L, S};
    return *lazy_->diam;
}

double ConvexBody::semichord_average(const AngleInterval& I, double lambda) const {
    AngleInterval J = normalized(I);
    if (J.length <= 0.0) return 0.0;
    if (!(lambda > 0.0)) throw std::invalid_argument("semichord_average needs lambda > 0");

    // kink directions of the integrand: corner-cone edges and flat-face normals
    std::vector<double> feats;
    for (const auto& j : joints_) {
        if (j.turn() > 1e-9) {
            feats.push_back(j.tan_in + 0.5 * pi);
            feats.push_back(j.tan_out + 0.5 * pi);
        }
    }
    for (int i = 0; i < (int)pieces_.size(); ++i)
        if (std::holds_alternative<LinePiece>(pieces_[i]))
            feats.push_back(info_[i].tan_begin + 0.5 * pi);
    std::vector<double> marks;
    for (double f : feats) {
        double cand = J.start + wrap_2pi(f - J.start);
        if (cand > J.start && cand < J.end()) marks.push_back(cand);
    }
    double fine = std::min(lambda * 1e-2, J.length * 1e-3);
    double coarse = std::max(J.length / 64.0, fine);
    auto part = graded_partition(J.start, J.end(), marks, coarse, fine, 2.0);
    auto f = [&](double th) {
        double v = semi_chords(th, lambda).right_len;
        return v * v;
    };
    QuadResult q = integrate_adaptive(f, part, 1e-7);
    return q.value / (2.0 * lambda);
}

// ============================================================
// point membership
// ============================================================

const ConvexBody::PolarTable& ConvexBody::polar_table() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (!lazy_->polar) {
        auto T = std::make_shared<PolarTable>();
        T->anchor = centroid_;
        T->cells = 2048;
        const int M = 16384;
        std::vector<double> ss(M + 1), ph(M + 1);
        for (int k = 0; k <= M; ++k) {
            ss[k] = perimeter_ * k / M;
            double a = angle_of(boundary_point(ss[k]) - T->anchor);
            ph[k] = (k == 0) ? wrap_2pi(a) : ph[k - 1] + std::max(0.0, signed_turn(a - ph[k - 1]));
        }
        T->pt.resize(T->cells);
        T->tan.resize(T->cells);
        T->s.resize(T->cells);
        for (int i = 0; i < T->cells; ++i) {
            double target = ph[0] + wrap_2pi(two_pi * i / T->cells - ph[0]);
            auto it = std::upper_bound(ph.begin(), ph.end(), target);
            size_t j = std::min<size_t>(std::max<size_t>(it - ph.begin(), 1), M) - 1;
            double slo = ss[j], shi = ss[j + 1];
            Vec2 d = dir(target);
            for (int n = 0; n < 44; ++n) {
                double smid = 0.5 * (slo + shi);
                if (cross(d, boundary_point(smid) - T->anchor) < 0.0) slo = smid; else shi = smid;
            }
            double s = 0.5 * (slo + shi);
            BoundaryPos pos = position_at_arclength(s);
            Vec2 dv = piece_deriv(pieces_[pos.piece], pos.u);
            T->pt[i] = piece_point(pieces_[pos.piece], pos.u);
            T->tan[i] = dv / norm(dv);
            T->s[i] = s;
        }
        lazy_->polar = T;
    }
    return *lazy_->polar;
}

bool ConvexBody::contains(const Vec2& p) const {
    if (polygon_) {
        double tol = 1e-12 * scale_ * scale_;
        for (const auto& pc : pieces_) {
            const auto& ln = std::get<LinePiece>(pc);
            if (cross(ln.b - ln.a, p - ln.a) < -tol) return false;
        }
        return true;
    }
    const auto& T = polar_table();
    Vec2 rel = p - T.anchor;
    double rr = norm(rel);
    if (rr == 0.0) return true;
    double phi = wrap_2pi(angle_of(rel));
    int i = std::min((int)(phi / two_pi * T.cells), T.cells - 1);
    int i2 = (i + 1) % T.cells;
    Vec2 A = T.pt[i] - T.anchor, B = T.pt[i2] - T.anchor;
    Vec2 d = dir(phi);
    const double band = 1e-9 * scale_;

    double den = cross(d, B - A);
    if (std::abs(den) > 1e-300) {
        double rc = cross(A, B) / den;
        if (rc > 0.0 && rr <= rc - band) return true; // below an inscribed chord
    }
    double rhi = 1e300; // outside both supporting tangent lines
    for (int kk : {i, i2}) {
        Vec2 P = T.pt[kk] - T.anchor, tg = T.tan[kk];
        double dn = cross(d, tg);
        if (dn > 1e-12) rhi = std::min(rhi, cross(P, tg) / dn);
    }
    if (rr >= rhi + band) return false;

    // narrow band: locate the boundary radius along this ray exactly
    double slo = T.s[i], shi = T.s[i2];
    if (shi <= slo) shi += perimeter_;
    for (int n = 0; n < 50; ++n) {
        double smid = 0.5 * (slo + shi);
        if (cross(d, boundary_point(smid) - T.anchor) < 0.0) slo = smid; else shi = smid;
    }
    double rb = norm(boundary_point(0.5 * (slo + shi)) - T.anchor);
    return rr <= rb + band;
}

// ============================================================
// serialization
// ============================================================

std::string ConvexBody::to_json() const {
    nlohmann::json j;
    if (polygon_) {
        j["kind"] = "polygon";
        auto vs = nlohmann::json::array();
        for (const auto& p : pieces_) {
            const auto& ln = std::get<LinePiece>(p);
            vs.push_back({ln.a.x, ln.a.y});
        }
        j["vertices"] = vs;
    } else {
        j["kind"] = "arcs";
        auto arr = nlohmann::json::array();
        for (const auto& p : pieces_) {
            std::visit([&arr](const auto& q) {
                using T = std::decay_t<decltype(q)>;
                if constexpr (std::is_same_v<T, LinePiece>) {
                    arr.push_back({{"type", "line"}, {"a", {q.a.x, q.a.y}}, {"b", {q.b.x, q.b.y}}});
                } else if constexpr (std::is_same_v<T, CircularPiece>) {
                    arr.push_back({{"type", "circular"},
                                   {"center", {q.center.x, q.center.y}},
                                   {"radius", q.radius},
                                   {"psi0", q.psi0},
                                   {"psi1", q.psi1}});
                } else {
                    arr.push_back({{"type", "power"},
                                   {"origin", {q.offset.x, q.offset.y}},
                                   {"e1", {q.e1.x, q.e1.y}},
                                   {"e2", {q.e2.x, q.e2.y}},
                                   {"alpha", q.alpha},
                                   {"t0", q.t0},
                                   {"t1", q.t1},
                                   {"reversed", q.reversed}});
                }
            }, p);
        }
        j["arcs"] = arr;
    }
    return j.dump(2);
}

ConvexBody ConvexBody::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("body JSON is malformed: ") + e.what());
    }
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "polygon") {
            std::vector<Vec2> vs;
            for (const auto& v : j.at("vertices"))
                vs.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            return polygon_body(vs);
        }
        if (kind != "arcs") throw std::invalid_argument("unknown body kind: " + kind);
        std::vector<BoundaryPiece> pieces;
        for (const auto& a : j.at("arcs")) {
            std::string type = a.at("type").get<std::string>();
            auto vec = [&](const char* key) -> Vec2 {
                const auto& v = a.at(key);
                return {v.at(0).get<double>(), v.at(1).get<double>()};
            };
            if (type == "line") {
                pieces.push_back(LinePiece{vec("a"), vec("b")});
            } else if (type == "circular") {
                pieces.push_back(CircularPiece{vec("center"), a.at("radius").get<double>(),
                                               a.at("psi0").get<double>(), a.at("psi1").get<double>()});
            } else if (type == "power") {
                pieces.push_back(PowerPiece{vec("origin"), vec("e1"), vec("e2"),
                                            a.at("alpha").get<double>(), a.at("t0").get<double>(),
                                            a.at("t1").get<double>(),
                                            a.value("reversed", false)});
            } else {
                throw std::invalid_argument("unknown arc type: " + type);
            }
        }
        return ConvexBody(std::move(pieces));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("body JSON misses fields: ") + e.what());
    }
}

std::uint64_t ConvexBody::hash() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (lazy_->hash) return *lazy_->hash;
    std::string blob;
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g,", v);
        blob += buf;
    };
    for (const auto& p : pieces_) {
        std::visit([&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, LinePiece>) {
                blob += 'L'; put(q.a.x); put(q.a.y); put(q.b.x); put(q.b.y);
            } else if constexpr (std::is_same_v<T, CircularPiece>) {
                blob += 'C'; put(q.center.x); put(q.center.y); put(q.radius); put(q.psi0); put(q.psi1);
            } else {
                blob += 'P'; put(q.offset.x); put(q.offset.y); put(q.e1.x); put(q.e1.y);
                put(q.e2.x); put(q.e2.y); put(q.alpha); put(q.t0); put(q.t1);
                blob += q.reversed ? 'r' : 'f';
            }
        }, p);
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : blob) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    lazy_->hash = h;
    return h;
}

// ============================================================
// factories and transforms
// ============================================================

ConvexBody ConvexBody::transformed_copy(double rot, double scale, Vec2 shift) const {
    if (!(scale > 0.0)) throw std::invalid_argument("body scale factor must be positive");
    std::vector<BoundaryPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(piece_transformed(p, rot, scale, shift));
    return ConvexBody(std::move(out));
}

ConvexBody polygon_body(const std::vector<Vec2>& vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    std::vector<BoundaryPiece> pieces;
    for (size_t i = 0; i < vertices.size(); ++i)
        pieces.push_back(LinePiece{vertices[i], vertices[(i + 1) % vertices.size()]});
    return ConvexBody(std::move(pieces));
}

ConvexBody rotate_body(const ConvexBody& b, double angle) {
    return b.transformed_copy(angle, 1.0, {0.0, 0.0});
}

ConvexBody normalize_to_torus(const ConvexBody& b, double target_diam) {
    double L = b.diameters().first;
    double k = target_diam / L;
    Vec2 c = b.centroid();
    return b.transformed_copy(0.0, k, {0.5 - k * c.x, 0.5 - k * c.y});
}

} // namespace rotdisc
