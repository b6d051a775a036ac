#pragma once

#include "rotdisc/angles.hpp"
#include "rotdisc/vec2.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rotdisc {

// ============================================================
// Boundary pieces
// ============================================================
// A convex body is a counterclockwise loop of parametric pieces.
// Every piece exposes a traversal parameter u on [u0, u1] with the
// interior on the left; concatenating pieces walks the boundary once.

struct LinePiece {
    Vec2 a, b; // traversed a -> b
};

// Counterclockwise circular arc, point(psi) = center + radius * dir(psi).
// psi1 > psi0; a full circle has psi1 - psi0 = 2*pi.
struct CircularPiece {
    Vec2 center;
    double radius = 0.0;
    double psi0 = 0.0, psi1 = 0.0;
};

// Power curve offset + e1*t + e2*t^alpha for t in [t0, t1], t0 >= 0.
// Traversed with increasing t, or decreasing when `reversed` is set;
// counterclockwise traversal requires cross(e1, e2) > 0 XOR reversed.
struct PowerPiece {
    Vec2 offset;
    Vec2 e1, e2;
    double alpha = 2.0;
    double t0 = 0.0, t1 = 1.0;
    bool reversed = false;
};

using BoundaryPiece = std::variant<LinePiece, CircularPiece, PowerPiece>;

double piece_u0(const BoundaryPiece& p);
double piece_u1(const BoundaryPiece& p);
Vec2 piece_point(const BoundaryPiece& p, double u);
Vec2 piece_deriv(const BoundaryPiece& p, double u); // d point / du, nonzero
// x -> shift + scale * rotation(rot) * x applied to the whole piece
BoundaryPiece piece_transformed(const BoundaryPiece& p, double rot, double scale, Vec2 shift);

// ============================================================
// Query records
// ============================================================

struct BoundaryPos {
    int piece = 0;
    double u = 0.0;
    double s = 0.0; // arc length from the boundary start point
};

// Chord of the body on the line {x . dir(theta) = min + lambda}.
// The plus endpoint is reached first walking counterclockwise from the
// minimizing face; endpoint_minus - endpoint_plus = length * perp_dir(theta).
struct ChordRecord {
    double theta = 0.0;
    double lambda = 0.0;
    double length = 0.0;
    Vec2 endpoint_plus, endpoint_minus;
    double s_plus = 0.0, s_minus = 0.0;
};

// Chord split at the projection of the minimizing-face midpoint: the right
// part ends at endpoint_plus, the left part at endpoint_minus.
struct SemiChordRecord {
    ChordRecord base;
    double s_split = 0.0; // arc-length midpoint of the minimizing face
    double left_len = 0.0, right_len = 0.0;
};

struct JointInfo {
    Vec2 pos;
    double s = 0.0;
    double tan_in = 0.0, tan_out = 0.0; // unwrapped traversal tangent angles
    double turn() const { return tan_out - tan_in; }
};

// Open directions where the minimum of x . dir(theta) is pinned to a corner,
// plus the symmetric angular threshold derived from it.
struct AngularTrace {
    AngularSet trace;
    double psi = 0.0;
};

struct PieceInfo {
    double u0 = 0.0, u1 = 0.0;
    double s_begin = 0.0, len = 0.0;
    double tan_begin = 0.0, tan_end = 0.0; // unwrapped, nondecreasing over the loop
    std::vector<double> knot_u, knot_s;    // arc-length table inside the piece
};

// ============================================================
// ConvexBody
// ============================================================

class ConvexBody {
public:
    // Validates closure, orientation, convexity and one full turn.
    explicit ConvexBody(std::vector<BoundaryPiece> pieces);

    const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
    const std::vector<PieceInfo>& piece_infos() const { return info_; }
    const std::vector<JointInfo>& joints() const { return joints_; }
    bool is_polygon() const { return polygon_; }

    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    Vec2 centroid() const { return centroid_; }
    double scale() const { return scale_; } // bounding-box diagonal

    // ---- support machinery ----
    double support(double theta) const; // max over the body of x . dir(theta)
    Vec2 support_point(double theta) const;
    double width(double theta) const;
    // Boundary position whose traversal tangent angle equals `tangent`;
    // `last` picks the counterclockwise-latest such position on a flat face.
    BoundaryPos position_at_tangent(double tangent, bool last) const;

    // ---- chords ----
    ChordRecord chord(double theta, double lambda) const;
    double gamma(double theta, double lambda) const; // max of the two opposite chords
    SemiChordRecord semi_chords(double theta, double lambda) const;

    // ---- boundary parameterization ----
    BoundaryPos position_at_arclength(double s) const;
    Vec2 boundary_point(double s) const;
    double tangent_angle_at(const BoundaryPos& pos) const; // unwrapped ladder value
    double arclength_at(int piece, double u) const;

    // ---- normal structure ----
    AngleInterval normal_interval(double s) const;
    AngularTrace angular_trace() const;
    double portion_of_perimeter(const AngleInterval& I) const;

    // ---- derived metrics ----
    // (longest directional diameter, shortest directional diameter), cached
    std::pair<double, double> diameters() const;
    // mean of squared right semi-chords over I, normalized by 2*lambda
    double semichord_average(const AngleInterval& I, double lambda) const;

    bool contains(const Vec2& p) const;

    std::string to_json() const;
    static ConvexBody from_json(const std::string& text);
    std::uint64_t hash() const;

    ConvexBody transformed_copy(double rot, double scale, Vec2 shift) const;

private:
    struct PolarTable; // boundary indexed by polar angle around the centroid
    struct Lazy;

    void build_tables();
    void validate() const;
    double piece_tangent_unwrapped(int piece, double u) const;
    double invert_piece_tangent(int piece, double target) const;
    BoundaryPos make_pos(int piece, double u) const;
    double solve_depth_on_piece(int piece, double ulo, double uhi, const Vec2& dir,
                                double target, bool rising) const;
    ChordRecord face_chord(double theta, bool max_side) const;
    const PolarTable& polar_table() const;

    std::vector<BoundaryPiece> pieces_;
    std::vector<PieceInfo> info_;
    std::vector<JointInfo> joints_;
    bool polygon_ = false;
    double perimeter_ = 0.0, area_ = 0.0, scale_ = 0.0;
    Vec2 centroid_;
    double ladder_total_ = 0.0;
    std::shared_ptr<Lazy> lazy_; // caches shared across copies
};

ConvexBody polygon_body(const std::vector<Vec2>& vertices);
ConvexBody rotate_body(const ConvexBody& b, double angle); // about the origin
// Scale to the requested diameter and move the centroid to (1/2, 1/2).
ConvexBody normalize_to_torus(const ConvexBody& b, double target_diam = 0.8);

} // namespace rotdisc
