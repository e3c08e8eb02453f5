#include "gorcalc/matrix.hpp"

#include <algorithm>

namespace gorcalc {

Matrix::Matrix(Ring ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, ring_.zero()) {}

Matrix Matrix::identity(const Ring& r, size_t n) {
    Matrix m(r, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = r.one();
    return m;
}

Matrix Matrix::from_rows(const Ring& r, const std::vector<std::vector<RingElement>>& rows) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(r, rows.size(), nc);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) fail(Errc::precondition, "ragged rows");
        for (size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || ring_ != o.ring_) fail(Errc::precondition, "matrix shape mismatch");
    Matrix r(ring_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const RingElement& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + x * o.at(k, j);
        }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (rows_ != o.rows_ || ring_ != o.ring_) fail(Errc::precondition, "hstack shape mismatch");
    Matrix r(ring_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::vector<RingElement> Matrix::apply(const std::vector<RingElement>& x) const {
    if (x.size() != cols_) fail(Errc::precondition, "vector length mismatch");
    std::vector<RingElement> y(rows_, ring_.zero());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) y[i] = y[i] + at(i, j) * x[j];
    return y;
}

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const RingElement& x) { return x.is_zero(); });
}

std::string Matrix::str() const {
    std::string s = "[";
    for (size_t i = 0; i < rows_; ++i) {
        s += i ? "; " : "";
        for (size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + at(i, j).str();
    }
    return s + "]";
}

namespace {

// Pivot preference: fewest euclidean steps first (magnitude / degree).
bool smaller(const RingElement& a, const RingElement& b) {
    if (std::holds_alternative<Int>(a.rep())) {
        using boost::multiprecision::abs;
        return abs(std::get<Int>(a.rep())) < abs(std::get<Int>(b.rep()));
    }
    return a.poly_degree() < b.poly_degree();
}

// Column echelon reduction by unimodular column operations. Span is preserved
// while entries stay near input size, which keeps downstream Smith forms from
// inheriting the swell a full diagonalization builds up.
Matrix hermite_columns(const Matrix& a) {
    Matrix h = a;
    const size_t nr = h.rows(), nc = h.cols();
    auto col_axpy = [&](size_t j, size_t t, const RingElement& q) {
        if (q.is_zero()) return;
        for (size_t i = 0; i < nr; ++i) h.at(i, j) = h.at(i, j) - q * h.at(i, t);
    };
    auto col_swap = [&](size_t j, size_t t) {
        if (j == t) return;
        for (size_t i = 0; i < nr; ++i) std::swap(h.at(i, j), h.at(i, t));
    };
    size_t c = 0;
    for (size_t r = 0; r < nr && c < nc; ++r) {
        // euclid across row r: gcd lands in column c, the rest of the row clears
        while (true) {
            size_t best = nc;
            for (size_t j = c; j < nc; ++j)
                if (!h.at(r, j).is_zero() && (best == nc || smaller(h.at(r, j), h.at(r, best))))
                    best = j;
            if (best == nc) break;
            col_swap(c, best);
            bool reduced = true;
            for (size_t j = c + 1; j < nc; ++j) {
                if (h.at(r, j).is_zero()) continue;
                auto [q, rem] = h.at(r, j).divmod(h.at(r, c));
                col_axpy(j, c, q);
                if (!rem.is_zero()) reduced = false;
            }
            if (reduced) break;
        }
        if (h.at(r, c).is_zero()) continue;
        auto [unit, n] = h.at(r, c).unit_normal();
        (void)n;
        if (!unit.is_one()) {
            RingElement inv = h.ring().one().divexact(unit);
            for (size_t i = 0; i < nr; ++i) h.at(i, c) = h.at(i, c) * inv;
        }
        for (size_t j = 0; j < c; ++j) {
            auto [q, rem] = h.at(r, j).divmod(h.at(r, c));
            (void)rem;
            col_axpy(j, c, q);
        }
        ++c;
    }
    Matrix out(h.ring(), nr, c);
    for (size_t j = 0; j < c; ++j)
        for (size_t i = 0; i < nr; ++i) out.at(i, j) = h.at(i, j);
    return out;
}

}  // namespace

SmithResult smith_normal_form(const Matrix& a) {
    const Ring& R = a.ring();
    if (!R.is_pid()) fail(Errc::precondition, "Smith form needs a PID; lift quotient data first");
    SmithResult s{a, Matrix::identity(R, a.rows()), Matrix::identity(R, a.rows()),
                  Matrix::identity(R, a.cols()), {}, 0};
    Matrix& d = s.d;
    const size_t nr = a.rows(), nc = a.cols();

    auto row_swap = [&](size_t i, size_t k) {
        if (i == k) return;
        for (size_t j = 0; j < nc; ++j) std::swap(d.at(i, j), d.at(k, j));
        for (size_t j = 0; j < nr; ++j) {
            std::swap(s.u.at(i, j), s.u.at(k, j));
            std::swap(s.uinv.at(j, i), s.uinv.at(j, k));
        }
    };
    auto col_swap = [&](size_t j, size_t k) {
        if (j == k) return;
        for (size_t i = 0; i < nr; ++i) std::swap(d.at(i, j), d.at(i, k));
        for (size_t i = 0; i < nc; ++i) std::swap(s.v.at(i, j), s.v.at(i, k));
    };
    // row i -= q * row t
    auto row_axpy = [&](size_t i, size_t t, const RingElement& q) {
        if (q.is_zero()) return;
        for (size_t j = 0; j < nc; ++j) d.at(i, j) = d.at(i, j) - q * d.at(t, j);
        for (size_t j = 0; j < nr; ++j) {
            s.u.at(i, j) = s.u.at(i, j) - q * s.u.at(t, j);
            s.uinv.at(j, t) = s.uinv.at(j, t) + q * s.uinv.at(j, i);
        }
    };
    // col j -= q * col t
    auto col_axpy = [&](size_t j, size_t t, const RingElement& q) {
        if (q.is_zero()) return;
        for (size_t i = 0; i < nr; ++i) d.at(i, j) = d.at(i, j) - q * d.at(i, t);
        for (size_t i = 0; i < nc; ++i) s.v.at(i, j) = s.v.at(i, j) - q * s.v.at(i, t);
    };
    // row i += row k (divisibility repair)
    auto row_add = [&](size_t i, size_t k) {
        for (size_t j = 0; j < nc; ++j) d.at(i, j) = d.at(i, j) + d.at(k, j);
        for (size_t j = 0; j < nr; ++j) {
            s.u.at(i, j) = s.u.at(i, j) + s.u.at(k, j);
            s.uinv.at(j, k) = s.uinv.at(j, k) - s.uinv.at(j, i);
        }
    };

    size_t t = 0;
    while (t < nr && t < nc) {
        // smallest nonzero pivot in the trailing block
        size_t pi = nr, pj = nc;
        for (size_t i = t; i < nr; ++i)
            for (size_t j = t; j < nc; ++j)
                if (!d.at(i, j).is_zero() &&
                    (pi == nr || smaller(d.at(i, j), d.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == nr) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < nr; ++i) {
                if (d.at(i, t).is_zero()) continue;
                auto [q, r] = d.at(i, t).divmod(d.at(t, t));
                row_axpy(i, t, q);
                if (!r.is_zero()) {
                    row_swap(t, i);  // strictly smaller pivot
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < nc; ++j) {
                if (d.at(t, j).is_zero()) continue;
                auto [q, r] = d.at(t, j).divmod(d.at(t, t));
                col_axpy(j, t, q);
                if (!r.is_zero()) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility chain: the pivot must divide everything below-right
                for (size_t i = t + 1; i < nr && clean; ++i)
                    for (size_t j = t + 1; j < nc && clean; ++j)
                        if (!d.at(t, t).divides(d.at(i, j))) {
                            row_add(t, i);
                            clean = false;
                        }
            }
        }
        ++t;
    }

    // unit-normalize the diagonal
    for (size_t i = 0; i < std::min(nr, nc); ++i) {
        if (d.at(i, i).is_zero()) continue;
        auto [unit, n] = d.at(i, i).unit_normal();
        if (!unit.is_one()) {
            RingElement inv = R.one().divexact(unit);
            for (size_t j = 0; j < nc; ++j) d.at(i, j) = d.at(i, j) * inv;
            for (size_t j = 0; j < nr; ++j) {
                s.u.at(i, j) = s.u.at(i, j) * inv;
                s.uinv.at(j, i) = s.uinv.at(j, i) * unit;
            }
        }
        s.invariants.push_back(d.at(i, i));
    }
    s.rank = s.invariants.size();
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.ring() != b.ring()) fail(Errc::domain_error, "kron: mixed rings");
    Matrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

Matrix scaled_identity(const Ring& r, std::size_t n, const RingElement& c) {
    Matrix out(r, n, n);
    for (size_t i = 0; i < n; ++i) out.at(i, i) = c;
    return out;
}

Matrix kernel_basis(const Matrix& a) {
    SmithResult s = smith_normal_form(a);
    size_t free = a.cols() - s.rank;
    Matrix k(a.ring(), a.cols(), free);
    for (size_t j = 0; j < free; ++j)
        for (size_t i = 0; i < a.cols(); ++i) k.at(i, j) = s.v.at(i, s.rank + j);
    return hermite_columns(k);
}

Matrix column_basis(const Matrix& a) { return hermite_columns(a); }

Matrix lattice_sum(const Matrix& a, const Matrix& b) { return column_basis(a.hstack(b)); }

namespace {

Matrix negate(const Matrix& m) {
    Matrix r = m;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = -m.at(i, j);
    return r;
}

Matrix take_rows(const Matrix& m, size_t count) {
    Matrix r(m.ring(), count, m.cols());
    for (size_t i = 0; i < count; ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

}  // namespace

Matrix lattice_intersect(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) fail(Errc::precondition, "lattice ambient mismatch");
    Matrix k = kernel_basis(a.hstack(negate(b)));
    return column_basis(a * take_rows(k, a.cols()));
}

Matrix preimage_lattice(const Matrix& a, const Matrix& l) {
    if (a.rows() != l.rows()) fail(Errc::precondition, "lattice ambient mismatch");
    Matrix k = kernel_basis(a.hstack(negate(l)));
    return column_basis(take_rows(k, a.cols()));
}

std::optional<std::vector<RingElement>> solve(const Matrix& a, const std::vector<RingElement>& b) {
    if (b.size() != a.rows()) fail(Errc::precondition, "vector length mismatch");
    SmithResult s = smith_normal_form(a);
    std::vector<RingElement> ub = s.u.apply(b);
    std::vector<RingElement> y(a.cols(), a.ring().zero());
    for (size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            auto [q, r] = ub[i].divmod(s.invariants[i]);
            if (!r.is_zero()) return std::nullopt;
            y[i] = q;
        } else if (!ub[i].is_zero()) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

bool lattice_contains(const Matrix& l, const std::vector<RingElement>& v) {
    return solve(l, v).has_value();
}

bool lattice_equal(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) fail(Errc::precondition, "lattice ambient mismatch");
    auto inside = [](const Matrix& x, const Matrix& y) {
        for (size_t j = 0; j < x.cols(); ++j) {
            std::vector<RingElement> col;
            col.reserve(x.rows());
            for (size_t i = 0; i < x.rows(); ++i) col.push_back(x.at(i, j));
            if (!lattice_contains(y, col)) return false;
        }
        return true;
    };
    return inside(a, b) && inside(b, a);
}

QuotientShape cokernel_shape(const Matrix& a) {
    SmithResult s = smith_normal_form(a);
    QuotientShape q;
    q.free_rank = a.rows() - s.rank;
    for (const auto& d : s.invariants)
        if (!d.is_unit()) q.torsion.push_back(d);
    return q;
}

QuotientShape quotient_shape(const Matrix& amb, const Matrix& sub) {
    if (amb.rows() != sub.rows()) fail(Errc::precondition, "lattice ambient mismatch");
    Matrix basis = column_basis(amb);
    Matrix x(amb.ring(), basis.cols(), sub.cols());
    for (size_t j = 0; j < sub.cols(); ++j) {
        std::vector<RingElement> col;
        col.reserve(sub.rows());
        for (size_t i = 0; i < sub.rows(); ++i) col.push_back(sub.at(i, j));
        auto sol = solve(basis, col);
        if (!sol) fail(Errc::precondition, "quotient of non-nested lattices");
        for (size_t i = 0; i < basis.cols(); ++i) x.at(i, j) = (*sol)[i];
    }
    return cokernel_shape(x);
}

}  // namespace gorcalc
