#pragma once

#include <utility>
#include <vector>

#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"

namespace avgroups::polygons {

// Ascending list of nonnegative integers (zeros allowed). Length is the
// ambient rank, not the minimal generator count.
using ExponentVector = std::vector<int>;

bool is_ascending(const ExponentVector& e);

// Lower-convex piecewise-linear chain with integer abscissas and exact
// rational ordinates. Vertices are the minimal representation: strictly
// increasing x starting at 0, strictly increasing slopes.
struct ConvexPolygon {
    std::vector<std::pair<int, Rat>> vertices;

    int width() const { return vertices.back().first; }
    // Linear interpolation between vertices; x must lie in [0, width].
    Rat value_at(const Rat& x) const;

    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

// Lower convex hull of {(i, v_ell(Q_i)) : Q_i != 0}. Requires Q != 0,
// Q(0) != 0 and ell prime.
ConvexPolygon newton_polygon(const exactpoly::IntPolynomial& Q, const Int& ell);

// Convex polygon with vertices (i, sum of the r-i smallest exponents),
// endpoints (0, sum e) and (r, 0).
ConvexPolygon hodge_polygon(const ExponentVector& e);

// true iff upper(x) >= lower(x) on the whole common width. Equal widths
// required; a mismatch signals a rank bookkeeping bug in the caller.
bool lies_on_or_above(const ConvexPolygon& upper, const ConvexPolygon& lower);

// The width-many root valuations: a segment of horizontal length w and
// rise -D contributes w copies of D/w. Ascending.
std::vector<Rat> polygon_slopes(const ConvexPolygon& p);

// Ascending (m - e_r, ..., m - e_1). Requires max(e) <= m.
ExponentVector dual_exponents(const ExponentVector& e, int m);

} // namespace avgroups::polygons
