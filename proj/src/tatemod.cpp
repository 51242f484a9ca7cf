#include "avgroups/tatemod.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "avgroups/errors.hpp"

namespace avgroups::tatemod {

using exactpoly::IntPolynomial;

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: size mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: size mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
    const int n = m.rows();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;   // Bareiss: exact division
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: square matrix required");
    const int n = m.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = determinant(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            adj.at(j, i) = cof;
        }
    return adj;
}

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

} // namespace

IntMatrix row_hnf(IntMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    auto row_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) m.at(dst, j) -= q * m.at(src, j);
    };
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        // gcd-eliminate everything below row r in this column
        for (;;) {
            int best = -1;
            for (int i = r; i < rows; ++i) {
                if (m.at(i, col) == 0) continue;
                if (best < 0 || abs_int(m.at(i, col)) < abs_int(m.at(best, col))) best = i;
            }
            if (best < 0) break;
            if (best != r)
                for (int j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(best, j));
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (m.at(i, col) == 0) continue;
                row_sub(i, r, m.at(i, col) / m.at(r, col));
                if (m.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(r, col) == 0) continue;
        if (m.at(r, col) < 0)
            for (int j = 0; j < cols; ++j) m.at(r, j) = -m.at(r, j);
        for (int i = 0; i < r; ++i) row_sub(i, r, floor_div(m.at(i, col), m.at(r, col)));
        ++r;
    }
    IntMatrix h(r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) h.at(i, j) = m.at(i, j);
    return h;
}

IntMatrix column_hnf(const IntMatrix& m) { return transpose(row_hnf(transpose(m))); }

std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* U, IntMatrix* V) {
    const int rows = m.rows(), cols = m.cols();
    if (U) *U = IntMatrix::identity(rows);
    if (V) *V = IntMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
        if (U)
            for (int j = 0; j < rows; ++j) std::swap(U->at(a, j), U->at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
        if (V)
            for (int i = 0; i < cols; ++i) std::swap(V->at(i, a), V->at(i, b));
    };
    auto row_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) m.at(dst, j) -= q * m.at(src, j);
        if (U)
            for (int j = 0; j < rows; ++j) U->at(dst, j) -= q * U->at(src, j);
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int i = 0; i < rows; ++i) m.at(i, dst) -= q * m.at(i, src);
        if (V)
            for (int i = 0; i < cols; ++i) V->at(i, dst) -= q * V->at(i, src);
    };
    auto negate_row = [&](int i) {
        for (int j = 0; j < cols; ++j) m.at(i, j) = -m.at(i, j);
        if (U)
            for (int j = 0; j < rows; ++j) U->at(i, j) = -U->at(i, j);
    };

    const int k_max = std::min(rows, cols);
    for (int k = 0; k < k_max; ++k) {
        for (;;) {
            // smallest nonzero entry of the trailing submatrix to (k, k)
            int pi = -1, pj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j) {
                    if (m.at(i, j) == 0) continue;
                    if (pi < 0 || abs_int(m.at(i, j)) < abs_int(m.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) {
                pi = pj = k;   // trailing block is zero; done at this k
                break;
            }
            swap_rows(k, pi);
            swap_cols(k, pj);
            bool clean = true;
            for (int i = k + 1; i < rows; ++i) {
                if (m.at(i, k) == 0) continue;
                row_sub(i, k, m.at(i, k) / m.at(k, k));
                if (m.at(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < cols; ++j) {
                if (m.at(k, j) == 0) continue;
                col_sub(j, k, m.at(k, j) / m.at(k, k));
                if (m.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            if (m.at(k, k) == 0) break;
            // divisibility: the pivot must divide the whole trailing block
            bool fixed = false;
            for (int i = k + 1; i < rows && !fixed; ++i)
                for (int j = k + 1; j < cols && !fixed; ++j)
                    if (m.at(i, j) % m.at(k, k) != 0) {
                        row_sub(k, i, Int(-1));   // fold row i into row k, restart
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (m.at(k, k) < 0) negate_row(k);
    }
    std::vector<Int> d(k_max);
    for (int k = 0; k < k_max; ++k) d[k] = m.at(k, k);
    return d;
}

IntMatrix companion_matrix(const IntPolynomial& f) {
    if (f.is_zero() || !f.is_monic())
        throw std::invalid_argument("companion_matrix: monic polynomial required");
    const int n = f.degree();
    if (n < 1) throw std::invalid_argument("companion_matrix: degree must be >= 1");
    IntMatrix c(n, n);
    for (int i = 1; i < n; ++i) c.at(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) c.at(i, n - 1) = -f.coeff(i);
    return c;
}

IntMatrix frobenius_matrix(const IntPolynomial& f) {
    if (f.is_zero() || !f.is_monic())
        throw std::invalid_argument("frobenius_matrix: monic polynomial required");
    const int n = f.degree();
    IntMatrix c(n, n);
    int offset = 0;
    for (const auto& [g, mult] : exactpoly::squarefree_decomposition(f)) {
        IntMatrix block = companion_matrix(g);
        for (int rep = 0; rep < mult; ++rep) {
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j)
                    c.at(offset + i, offset + j) = block.at(i, j);
            offset += block.rows();
        }
    }
    return c;
}

polygons::ExponentVector cokernel_exponents(const IntMatrix& m, const Int& ell) {
    if (m.rows() != m.cols()) throw std::invalid_argument("cokernel_exponents: square matrix required");
    std::vector<Int> d = smith_diagonal(m);
    polygons::ExponentVector e;
    for (const auto& x : d) {
        if (x == 0) throw std::invalid_argument("cokernel_exponents: singular matrix");
        e.push_back(valuation(x, ell));
    }
    std::sort(e.begin(), e.end());
    return e;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("poly matrix product: size mismatch");
    PolyMatrix c(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k)
            for (int j = 0; j < a.n; ++j)
                c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
    return c;
}

IntPolynomial poly_det(const PolyMatrix& m) {
    if (m.n == 0) return IntPolynomial::constant(1);
    if (m.n == 1) return m.at(0, 0);
    // Laplace expansion along the first column; dimensions here are tiny.
    IntPolynomial det;
    for (int i = 0; i < m.n; ++i) {
        if (m.at(i, 0).is_zero()) continue;
        PolyMatrix minor(m.n - 1);
        for (int r = 0, rr = 0; r < m.n; ++r) {
            if (r == i) continue;
            for (int c = 1; c < m.n; ++c) minor.at(rr, c - 1) = m.at(r, c);
            ++rr;
        }
        IntPolynomial term = m.at(i, 0) * poly_det(minor);
        det = (i % 2 == 0) ? det + term : det - term;
    }
    return det;
}

IntMatrix evaluate_at(const PolyMatrix& m, const Int& t) {
    IntMatrix out(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out.at(i, j) = exactpoly::evaluate(m.at(i, j), t);
    return out;
}

bool verify_matrix_factorization(const PolyMatrix& X, const PolyMatrix& Y,
                                 const IntPolynomial& f, const IntPolynomial& fsep,
                                 const Int& ell, const polygons::ExponentVector& e) {
    if (X.n != Y.n || X.n != static_cast<int>(e.size()))
        throw std::invalid_argument("verify_matrix_factorization: dimension mismatch");
    IntPolynomial det = poly_det(X);
    if (det != f && det != -f) return false;
    PolyMatrix prod = Y * X;
    for (int i = 0; i < prod.n; ++i)
        for (int j = 0; j < prod.n; ++j) {
            const IntPolynomial expect = (i == j) ? fsep : IntPolynomial();
            if (prod.at(i, j) != expect) return false;
        }
    return cokernel_exponents(evaluate_at(X, 1), ell) == e;
}

namespace {

// All proper subspaces of F_ell^n (dims 0..n-1) as reduced-row-echelon row
// bases, deterministic order.
std::vector<std::vector<std::vector<int>>> proper_subspaces(int n, int ell) {
    std::vector<std::vector<std::vector<int>>> out;
    out.push_back({});   // the zero subspace
    for (int d = 1; d < n; ++d) {
        std::vector<int> pivots(d);
        auto pivot_rec = [&](auto&& self, int idx, int from) -> void {
            if (idx == d) {
                // free positions: (row i, col j) with j > pivots[i], j not a pivot
                std::vector<std::pair<int, int>> free_pos;
                for (int i = 0; i < d; ++i)
                    for (int j = pivots[i] + 1; j < n; ++j)
                        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                            free_pos.emplace_back(i, j);
                std::vector<int> assign(free_pos.size(), 0);
                for (;;) {
                    std::vector<std::vector<int>> basis(d, std::vector<int>(n, 0));
                    for (int i = 0; i < d; ++i) basis[i][pivots[i]] = 1;
                    for (std::size_t t = 0; t < free_pos.size(); ++t)
                        basis[free_pos[t].first][free_pos[t].second] = assign[t];
                    out.push_back(std::move(basis));
                    std::size_t t = 0;
                    while (t < assign.size() && assign[t] == ell - 1) assign[t++] = 0;
                    if (t == assign.size()) break;
                    ++assign[t];
                }
                return;
            }
            for (int c = from; c < n; ++c) {
                pivots[idx] = c;
                self(self, idx + 1, c + 1);
            }
        };
        pivot_rec(pivot_rec, 0, 0);
    }
    return out;
}

// Reduce v against an RREF basis; returns true iff v lies in the span.
bool in_span(const std::vector<std::vector<int>>& basis, std::vector<int> v, int ell) {
    for (const auto& row : basis) {
        int pivot = 0;
        while (pivot < static_cast<int>(row.size()) && row[pivot] != 1) ++pivot;
        // RREF rows: pivot is the first nonzero entry and equals 1
        if (pivot == static_cast<int>(row.size())) continue;
        int c = v[pivot] % ell;
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - c * row[j]) % ell + ell) % ell;
    }
    for (int x : v)
        if (x % ell != 0) return false;
    return true;
}

} // namespace

int default_lattice_depth(const IntPolynomial& f, const Int& ell) {
    Int f1 = exactpoly::evaluate(f, 1);
    if (f1 == 0) throw std::invalid_argument("default_lattice_depth: f(1) = 0");
    return valuation(f1, ell) + 2;
}

std::map<polygons::ExponentVector, StableLattice>
enumerate_stable_lattices(const IntPolynomial& f, const Int& ell, int depth,
                          const LatticeEnumConfig& config) {
    if (f.is_zero() || !f.is_monic())
        throw std::invalid_argument("enumerate_stable_lattices: monic polynomial required");
    if (exactpoly::evaluate(f, 1) == 0)
        throw std::invalid_argument("enumerate_stable_lattices: f(1) must be nonzero");
    if (!is_prime(ell)) throw std::invalid_argument("enumerate_stable_lattices: ell must be prime");
    if (depth < 0) throw std::invalid_argument("enumerate_stable_lattices: negative depth");
    if (depth > config.max_depth)
        throw resource_error("enumerate_stable_lattices: depth exceeds configured cap");
    const int n = f.degree();
    if (n > 6 || ell > 5)
        throw resource_error("enumerate_stable_lattices: subspace enumeration capped at rank 6, ell <= 5");

    const IntMatrix C = companion_matrix(f);
    const int ell_small = static_cast<int>(ell);
    const auto subspaces = proper_subspaces(n, ell_small);

    std::map<polygons::ExponentVector, StableLattice> found;
    std::map<std::vector<Int>, int> visited;   // canonical basis -> index exponent
    std::deque<IntMatrix> queue;

    IntMatrix start = IntMatrix::identity(n);
    visited[start.flat()] = 0;
    queue.push_back(start);

    while (!queue.empty()) {
        IntMatrix B = queue.front();
        queue.pop_front();
        const int k = visited[B.flat()];

        // matrix of C in the basis B: adj(B) * C * B / det(B), exact by stability
        Int detB = determinant(B);
        IntMatrix M = adjugate(B) * (C * B);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (M.at(i, j) % detB != 0)
                    throw std::logic_error("enumerate_stable_lattices: lattice not stable");
                M.at(i, j) /= detB;
            }

        polygons::ExponentVector e = cokernel_exponents(IntMatrix::identity(n) - M, ell);
        if (!found.count(e)) found.emplace(e, StableLattice{B, k});

        if (k >= depth) continue;
        std::vector<std::vector<int>> Mbar(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                Mbar[i][j] = static_cast<int>(((M.at(i, j) % ell) + ell) % ell);

        for (const auto& W : subspaces) {
            const int dim = static_cast<int>(W.size());
            if (k + (n - dim) > depth) continue;
            bool stable = true;
            for (const auto& w : W) {
                std::vector<int> img(n, 0);
                for (int i = 0; i < n; ++i) {
                    long long acc = 0;
                    for (int j = 0; j < n; ++j) acc += static_cast<long long>(Mbar[i][j]) * w[j];
                    img[i] = static_cast<int>(acc % ell_small);
                }
                if (!in_span(W, img, ell_small)) {
                    stable = false;
                    break;
                }
            }
            if (!stable) continue;

            // sublattice {v in L : v mod ell in W}: columns = lifted basis of W
            // joined with ell * I, in B-coordinates
            IntMatrix gen(n, dim + n);
            for (int c = 0; c < dim; ++c)
                for (int i = 0; i < n; ++i) gen.at(i, c) = W[c][i];
            for (int i = 0; i < n; ++i) gen.at(i, dim + i) = ell;
            IntMatrix K = column_hnf(gen);
            IntMatrix child = column_hnf(B * K);
            auto key = child.flat();
            if (visited.count(key)) continue;
            if (visited.size() >= config.max_lattices)
                throw resource_error("enumerate_stable_lattices: lattice cap exceeded");
            visited[key] = k + (n - dim);
            queue.push_back(child);
        }
    }
    return found;
}

} // namespace avgroups::tatemod
