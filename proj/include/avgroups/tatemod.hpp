#pragma once

#include <map>
#include <vector>

#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"
#include "avgroups/polygons.hpp"

namespace avgroups::tatemod {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[i * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[i * cols_ + j]; }
    const std::vector<Int>& flat() const { return a_; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);

// Fraction-free (Bareiss) determinant.
Int determinant(IntMatrix m);
// adj(A) with A * adj(A) = det(A) * I.
IntMatrix adjugate(const IntMatrix& m);

// Unique upper-triangular basis (positive pivots, entries above each pivot
// reduced into [0, pivot)) of the row lattice; input must have full column
// rank. Returns an n x n matrix for an m x n input.
IntMatrix row_hnf(IntMatrix m);
// Canonical basis of the column lattice (transpose convention).
IntMatrix column_hnf(const IntMatrix& m);

// Diagonal of the Smith normal form: nonnegative, each entry dividing the
// next. When U/V are non-null they accumulate unimodular transforms with
// U * M * V = diag.
std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* U = nullptr, IntMatrix* V = nullptr);

// Standard companion matrix of a monic polynomial (char poly = f).
IntMatrix companion_matrix(const exactpoly::IntPolynomial& f);

// Semisimple integer model of Frobenius: block diagonal with one companion
// block per squarefree factor, repeated with its multiplicity. The
// characteristic polynomial is f and the minimal polynomial is the
// separable part of f, as for the Frobenius action on a Tate module.
IntMatrix frobenius_matrix(const exactpoly::IntPolynomial& f);

// Ascending ell-adic valuations of the Smith diagonal. Requires det != 0.
polygons::ExponentVector cokernel_exponents(const IntMatrix& m, const Int& ell);

// Square matrix of integer polynomials.
struct PolyMatrix {
    int n = 0;
    std::vector<exactpoly::IntPolynomial> entries;   // row-major

    PolyMatrix() = default;
    explicit PolyMatrix(int dim) : n(dim), entries(dim * dim) {}
    exactpoly::IntPolynomial& at(int i, int j) { return entries[i * n + j]; }
    const exactpoly::IntPolynomial& at(int i, int j) const { return entries[i * n + j]; }
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
exactpoly::IntPolynomial poly_det(const PolyMatrix& m);
IntMatrix evaluate_at(const PolyMatrix& m, const Int& t);

// det X = +-f, Y X = fsep * I, and X(1) has ell-local diagonal shape e
// (checked through the Smith form of X(1)). Dimension mismatch throws.
bool verify_matrix_factorization(const PolyMatrix& X, const PolyMatrix& Y,
                                 const exactpoly::IntPolynomial& f,
                                 const exactpoly::IntPolynomial& fsep,
                                 const Int& ell, const polygons::ExponentVector& e);

// Finite-index sublattice of Z^n stable under frobenius_matrix(f), in
// canonical (column HNF) form. index = ell^index_exponent.
struct StableLattice {
    IntMatrix basis;
    int index_exponent = 0;
};

struct LatticeEnumConfig {
    int max_depth = 24;
    std::size_t max_lattices = 2000000;
};

// Breadth-first enumeration of all Frobenius-stable sublattices of Z^n of
// index dividing ell^depth (steps are kernels of stable subspaces of
// L/ell L), keeping one witness lattice per distinct cokernel exponent
// vector of I - C restricted to the lattice, C = frobenius_matrix(f).
std::map<polygons::ExponentVector, StableLattice>
enumerate_stable_lattices(const exactpoly::IntPolynomial& f, const Int& ell, int depth,
                          const LatticeEnumConfig& config = {});

// v_ell(f(1)) + 2, the documented heuristically-complete search depth.
int default_lattice_depth(const exactpoly::IntPolynomial& f, const Int& ell);

} // namespace avgroups::tatemod
