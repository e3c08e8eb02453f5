#pragma once

#include <optional>
#include <vector>

#include "gorcalc/ring.hpp"

namespace gorcalc {

// Dense matrix over a single ring; row-major. Columns are the working
// currency: a lattice (submodule of R^n) is handed around as a matrix whose
// columns generate it.
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, size_t rows, size_t cols);
    static Matrix identity(const Ring& r, size_t n);
    static Matrix from_rows(const Ring& r, const std::vector<std::vector<RingElement>>& rows);

    const Ring& ring() const { return ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    RingElement& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const RingElement& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix transpose() const;
    Matrix hstack(const Matrix& o) const;  // same row count
    std::vector<RingElement> apply(const std::vector<RingElement>& x) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;

    std::string str() const;

private:
    Ring ring_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<RingElement> a_;
};

// u * input * v = d with d diagonal, d1 | d2 | ..., diagonal entries
// unit-normalized; uinv tracked so column data can be pulled back.
struct SmithResult {
    Matrix d, u, uinv, v;
    std::vector<RingElement> invariants;  // the nonzero diagonal entries
    size_t rank = 0;
};

// PID kinds only; callers over quotient rings lift to the cover first.
SmithResult smith_normal_form(const Matrix& a);

// Columns form a basis of {x in R^cols : Ax = 0}; the kernel of a PID matrix
// is free and saturated, so this is exact.
// Kronecker product, row-major index grouping: (i,k) ↦ i·rows(b)+k.
Matrix kron(const Matrix& a, const Matrix& b);

// c · identity
Matrix scaled_identity(const Ring& r, std::size_t n, const RingElement& c);

Matrix kernel_basis(const Matrix& a);

// Basis of the column lattice (independent columns spanning the same span).
Matrix column_basis(const Matrix& a);

Matrix lattice_sum(const Matrix& a, const Matrix& b);
Matrix lattice_intersect(const Matrix& a, const Matrix& b);

// {x : Ax in span(l)} as a column lattice in R^cols(A).
Matrix preimage_lattice(const Matrix& a, const Matrix& l);

// One solution of Ax = b, if any.
std::optional<std::vector<RingElement>> solve(const Matrix& a, const std::vector<RingElement>& b);

bool lattice_contains(const Matrix& l, const std::vector<RingElement>& v);
bool lattice_equal(const Matrix& a, const Matrix& b);

// Isomorphism class of a quotient of free modules.
struct QuotientShape {
    std::vector<RingElement> torsion;  // nonunit nonzero invariant factors, divisibility chain
    size_t free_rank = 0;
};

// R^rows(a) / span(columns of a).
QuotientShape cokernel_shape(const Matrix& a);

// span(amb)/span(sub); requires sub ⊆ amb (checked).
QuotientShape quotient_shape(const Matrix& amb, const Matrix& sub);

}  // namespace gorcalc
