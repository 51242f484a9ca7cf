#include "avgroups/polygons.hpp"

#include <algorithm>
#include <stdexcept>

namespace avgroups::polygons {

bool is_ascending(const ExponentVector& e) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] < e[i - 1]) return false;
    return true;
}

Rat ConvexPolygon::value_at(const Rat& x) const {
    if (x < 0 || x > width()) throw std::invalid_argument("polygon evaluated outside [0, width]");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const auto& [x0, y0] = vertices[i - 1];
        const auto& [x1, y1] = vertices[i];
        if (x <= x1) return y0 + (y1 - y0) * (x - Rat(x0)) / Rat(x1 - x0);
    }
    return vertices.back().second;   // width-0 polygon: single vertex
}

namespace {

// Lower hull of points with strictly increasing x; keeps strictly
// increasing slopes (collinear middle points dropped).
ConvexPolygon lower_hull(const std::vector<std::pair<int, Rat>>& pts) {
    std::vector<std::pair<int, Rat>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b unless it turns strictly left: (b-a) x (p-a) > 0
            Rat cross = Rat(b.first - a.first) * (p.second - a.second) -
                        (b.second - a.second) * Rat(p.first - a.first);
            if (cross > 0) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return ConvexPolygon{std::move(hull)};
}

} // namespace

ConvexPolygon newton_polygon(const exactpoly::IntPolynomial& Q, const Int& ell) {
    if (Q.is_zero()) throw std::invalid_argument("newton_polygon: zero polynomial");
    if (Q.coeff(0) == 0) throw std::invalid_argument("newton_polygon: Q(0) must be nonzero");
    if (!is_prime(ell)) throw std::invalid_argument("newton_polygon: ell must be prime");
    std::vector<std::pair<int, Rat>> pts;
    for (int i = 0; i <= Q.degree(); ++i) {
        if (Q.coeff(i) == 0) continue;   // valuation +infinity: never on the lower hull
        pts.emplace_back(i, Rat(valuation(Q.coeff(i), ell)));
    }
    return lower_hull(pts);
}

ConvexPolygon hodge_polygon(const ExponentVector& e) {
    if (!is_ascending(e)) throw std::invalid_argument("hodge_polygon: exponents must be ascending");
    for (int m : e)
        if (m < 0) throw std::invalid_argument("hodge_polygon: negative exponent");
    const int r = static_cast<int>(e.size());
    std::vector<std::pair<int, Rat>> pts;
    pts.reserve(r + 1);
    for (int i = 0; i <= r; ++i) {
        Int s = 0;
        for (int j = 0; j < r - i; ++j) s += e[j];
        pts.emplace_back(i, Rat(s));
    }
    return lower_hull(pts);   // vertices are already convex; hull just prunes collinear ones
}

bool lies_on_or_above(const ConvexPolygon& upper, const ConvexPolygon& lower) {
    if (upper.width() != lower.width())
        throw std::invalid_argument("lies_on_or_above: width mismatch");
    // The piecewise-linear difference attains its minimum at a breakpoint.
    std::vector<int> xs;
    for (const auto& v : upper.vertices) xs.push_back(v.first);
    for (const auto& v : lower.vertices) xs.push_back(v.first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (int x : xs)
        if (upper.value_at(Rat(x)) < lower.value_at(Rat(x))) return false;
    return true;
}

std::vector<Rat> polygon_slopes(const ConvexPolygon& p) {
    std::vector<Rat> out;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        const auto& [x0, y0] = p.vertices[i - 1];
        const auto& [x1, y1] = p.vertices[i];
        int w = x1 - x0;
        Rat lam = (y0 - y1) / Rat(w);
        for (int j = 0; j < w; ++j) out.push_back(lam);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExponentVector dual_exponents(const ExponentVector& e, int m) {
    if (!is_ascending(e)) throw std::invalid_argument("dual_exponents: exponents must be ascending");
    if (!e.empty() && e.back() > m)
        throw std::invalid_argument("dual_exponents: exponent exceeds m");
    ExponentVector out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = m - e[e.size() - 1 - i];
    return out;
}

} // namespace avgroups::polygons
