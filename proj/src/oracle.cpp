#include "gorcalc/oracle.hpp"

#include <algorithm>
#include <optional>

#include "gorcalc/tor.hpp"

namespace gorcalc {

namespace {

// lattice work happens over the covering PID
Ring work_ring(const Ring& r) { return r.is_domain() ? r : r.cover(); }

Matrix lift_matrix(const Matrix& m, const Ring& s) {
    Matrix out(s, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).lift();
    return out;
}

Matrix scale(const Matrix& m, const RingElement& c) {
    Matrix out = m;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j) * c;
    return out;
}

// columns spanning the relation submodule of S^g, including the modulus
// relations when the presentation lives over a quotient
Matrix relation_lattice(const Presentation& p) {
    Ring s = work_ring(p.ring);
    Matrix l = lift_matrix(p.relations, s).transpose();
    if (p.ring.is_artinian())
        l = l.hstack(scaled_identity(s, l.rows(), p.ring.modulus()));
    return l;
}

// D_1, …, D_upto of a free resolution, kernels computed degree by degree on
// the covering PID. Over a PID the resolution self-terminates at stage one.
std::vector<Matrix> differentials(const Presentation& a, int upto) {
    Ring s = work_ring(a.ring);
    if (upto > 64) fail(Errc::oracle_budget, "resolution stage budget exceeded");
    std::vector<Matrix> d;
    d.push_back(column_basis(relation_lattice(a)));
    while (static_cast<int>(d.size()) < upto) {
        const Matrix& prev = d.back();
        Matrix ker = a.ring.is_artinian()
                         ? preimage_lattice(prev, scaled_identity(s, prev.rows(), a.ring.modulus()))
                         : kernel_basis(prev);
        d.push_back(column_basis(ker));
    }
    return d;
}

// SNF invariant factors back to a tame normal form
TameModule classify(const Ring& r, const QuotientShape& q) {
    std::vector<std::pair<Atom, int>> atoms;
    if (r.is_domain()) {
        if (q.free_rank > 0) atoms.emplace_back(Atom::free_of(r), q.free_rank);
        for (const RingElement& d : q.torsion)
            for (const auto& [p, v] : factor(r, d).primes) atoms.emplace_back(Atom::cyclic(p, v), 1);
    } else {
        if (q.free_rank != 0) fail(Errc::internal, "oracle quotient escaped the modulus");
        for (const RingElement& d : q.torsion) {
            RingElement rest = d;
            for (const auto& [qe, mult] : r.factored_modulus()) {
                int v = valuation(d, qe);
                if (v == 0) continue;
                if (v > mult) fail(Errc::internal, "invariant factor exceeds the modulus");
                atoms.emplace_back(Atom::cyclic(PrimeIdeal::principal(qe.reduce_into(r)), v), 1);
                rest = rest.divexact(qe.pow(v));
            }
            if (!rest.is_unit()) fail(Errc::internal, "invariant factor outside the modulus support");
        }
    }
    return TameModule(r, atoms);
}

bool is_zero_shape(const QuotientShape& s) { return s.free_rank == 0 && s.torsion.empty(); }

// sorted p-valuations when every invariant factor is a pure p-power
std::optional<std::vector<int>> pure_p_shape(const QuotientShape& s, const RingElement& pg) {
    if (s.free_rank != 0) return std::nullopt;
    std::vector<int> v;
    for (const RingElement& d : s.torsion) {
        int val = valuation(d, pg);
        if (val == 0 || !d.divexact(pg.pow(val)).is_unit()) return std::nullopt;
        v.push_back(val);
    }
    std::sort(v.begin(), v.end());
    return v;
}

// Direct limit of a tower from the eventual images of its stages: either the
// images die out, or they grow as C(p, e+c)^ρ and the limit is Pr(p)^ρ.
// Anything else means the tower (or a closed form upstream) is broken.
TameModule classify_tower(const PrimeIdeal& p, const std::vector<QuotientShape>& im,
                          int* stab_out) {
    const Ring& r = p.ring();
    int n = static_cast<int>(im.size());
    if (is_zero_shape(im[n - 1])) {
        int s = n - 1;
        while (s > 0 && is_zero_shape(im[s - 1])) --s;
        if (stab_out) *stab_out = s + 1;
        return TameModule::zero(r);
    }
    std::vector<std::optional<std::vector<int>>> shapes(n);
    for (int i = 0; i < n; ++i) shapes[i] = pure_p_shape(im[i], p.generator());
    for (int s = 0; s + 3 <= n; ++s) {
        bool ok = shapes[s].has_value() && !shapes[s]->empty();
        for (int j = s + 1; j < n && ok; ++j) {
            if (!shapes[j] || shapes[j]->size() != shapes[s]->size()) {
                ok = false;
                break;
            }
            for (size_t t = 0; t < shapes[j]->size(); ++t)
                if ((*shapes[j])[t] != (*shapes[j - 1])[t] + 1) ok = false;
        }
        if (ok) {
            if (stab_out) *stab_out = s + 1;
            return TameModule(r, {{Atom::prufer(p), static_cast<int>(shapes[s]->size())}});
        }
    }
    fail(Errc::oracle_budget, "truncation tower failed to stabilize");
}

}  // namespace

Presentation::Presentation(const Ring& r, Matrix rel) : ring(r), relations(std::move(rel)) {
    if (relations.ring() != r) fail(Errc::domain_error, "presentation entries over the wrong ring");
}

Presentation Presentation::cyclic(const Ring& r, const RingElement& d) {
    return Presentation(r, Matrix::from_rows(r, {{d}}));
}

Presentation Presentation::free_module(const Ring& r, int rank) {
    if (rank < 0) fail(Errc::precondition, "negative rank");
    return Presentation(r, Matrix(r, 0, static_cast<size_t>(rank)));
}

Presentation Presentation::of_tame(const TameModule& m) {
    const Ring& r = m.ring();
    int free_rank = 0;
    std::vector<RingElement> diag;
    for (const auto& [a, mult] : m.atoms()) {
        switch (a.kind()) {
            case AtomKind::free_rank_one:
                free_rank += mult;
                break;
            case AtomKind::cyclic:
                for (int i = 0; i < mult; ++i) diag.push_back(a.prime().generator().pow(a.exponent()));
                break;
            default:
                fail(Errc::precondition, "atom " + a.str() + " is not finitely presented");
        }
    }
    size_t g = static_cast<size_t>(free_rank) + diag.size();
    Matrix rel(r, diag.size(), g);
    for (size_t i = 0; i < diag.size(); ++i) rel.at(i, static_cast<size_t>(free_rank) + i) = diag[i];
    return Presentation(r, rel);
}

TameModule fg_tor_oracle(int k, const Presentation& a, const Presentation& b) {
    if (k < 0) fail(Errc::precondition, "Tor index must be nonnegative");
    if (a.ring != b.ring) fail(Errc::domain_error, "fg_tor_oracle: mixed rings");
    Ring s = work_ring(a.ring);
    Matrix lb = relation_lattice(b);
    int gb = b.generators();
    int g0 = a.generators();
    auto d = differentials(a, k + 1);
    if (k == 0) {
        Matrix rel = kron(d[0], Matrix::identity(s, gb)).hstack(kron(Matrix::identity(s, g0), lb));
        return classify(a.ring, cokernel_shape(rel));
    }
    int gk = static_cast<int>(d[k - 1].cols());
    if (gk == 0) return TameModule::zero(a.ring);  // the resolution already stopped
    int gprev = static_cast<int>(d[k - 1].rows());
    Matrix zk = preimage_lattice(kron(d[k - 1], Matrix::identity(s, gb)),
                                 kron(Matrix::identity(s, gprev), lb));
    Matrix bk = kron(d[k], Matrix::identity(s, gb)).hstack(kron(Matrix::identity(s, gk), lb));
    return classify(a.ring, quotient_shape(zk, bk));
}

TameModule prufer_tor_oracle(int k, const PrimeIdeal& p, const Presentation& m,
                             int* stabilized_at) {
    if (k < 0) fail(Errc::precondition, "Tor index must be nonnegative");
    const Ring& r = p.ring();
    if (!r.is_domain()) fail(Errc::precondition, "truncation towers need a domain");
    if (p.is_zero_ideal()) fail(Errc::precondition, "truncation towers need a generated prime");
    if (m.ring != r) fail(Errc::domain_error, "prufer_tor_oracle: mixed rings");
    const RingElement pg = p.generator();
    int g = m.generators();
    Matrix lm = relation_lattice(m);

    if (k >= 2) {
        // every stage C(p,e) has a length-one resolution, so all stages vanish
        if (stabilized_at) *stabilized_at = 1;
        return TameModule::zero(r);
    }

    int max_val = 0;
    for (const RingElement& di : cokernel_shape(lm).torsion)
        max_val = std::max(max_val, valuation(di, pg));
    int estar = max_val + 2;
    int budget = estar + 4;

    if (k == 1) {
        // Tor₁(C(p,e), M) = M[pᵉ]: an ascending chain in a fixed ambient, so
        // stabilization is literal lattice equality
        std::vector<Matrix> z;
        for (int e = 1; e <= budget + 1; ++e)
            z.push_back(preimage_lattice(scaled_identity(r, g, pg.pow(e)), lm));
        int found = 0;
        for (int e = 1; e <= budget && !found; ++e)
            if (lattice_equal(z[e - 1], z[e])) found = e;
        if (!found) fail(Errc::oracle_budget, "torsion tower failed to stabilize");
        for (int e = found; e <= budget; ++e)
            if (!lattice_equal(z[found - 1], z[e]))
                fail(Errc::oracle_budget, "torsion tower left its stable value");
        if (stabilized_at) *stabilized_at = found;
        return classify(r, quotient_shape(z[found - 1], lm));
    }

    // k = 0: transition maps multiply by p, so track the eventual image of
    // each stage through a window wide enough to kill the bounded torsion
    int w = estar;
    std::vector<QuotientShape> images;
    Matrix pw = scaled_identity(r, g, pg.pow(w));
    for (int e = 1; e <= budget; ++e) {
        Matrix num = lattice_sum(pw, lm);
        Matrix den = lattice_sum(scaled_identity(r, g, pg.pow(e + w)), lm);
        images.push_back(quotient_shape(num, den));
    }
    return classify_tower(p, images, stabilized_at);
}

TameModule prufer_pair_tor_oracle(int k, const PrimeIdeal& p, const PrimeIdeal& q,
                                  int* stabilized_at) {
    if (k < 0) fail(Errc::precondition, "Tor index must be nonnegative");
    const Ring& r = p.ring();
    if (!r.is_domain()) fail(Errc::precondition, "truncation towers need a domain");
    if (q.ring() != r) fail(Errc::domain_error, "prufer_pair_tor_oracle: mixed rings");
    if (p.is_zero_ideal() || q.is_zero_ideal())
        fail(Errc::precondition, "truncation towers need generated primes");
    if (k >= 2) {
        if (stabilized_at) *stabilized_at = 1;
        return TameModule::zero(r);
    }
    const RingElement pg = p.generator();
    const RingElement qg = q.generator();
    int budget = 7;
    int w = budget + 1;
    std::vector<QuotientShape> images;
    for (int e = 1; e <= budget; ++e) {
        if (k == 0) {
            // stage S/(pᵉ,qᵉ); the diagonal transition multiplies by pq
            Matrix den = Matrix::from_rows(r, {{pg.pow(e + w), qg.pow(e + w)}});
            Matrix num = den.hstack(Matrix::from_rows(r, {{(pg * qg).pow(w)}}));
            images.push_back(quotient_shape(num, den));
        } else {
            // stage ker(pᵉ | C(q,e)); the first factor transitions by the
            // identity on resolutions, the second by multiplication by q
            Matrix ze = preimage_lattice(Matrix::from_rows(r, {{pg.pow(e)}}),
                                         Matrix::from_rows(r, {{qg.pow(e)}}));
            Matrix den = Matrix::from_rows(r, {{qg.pow(e + w)}});
            Matrix num = lattice_sum(scale(ze, qg.pow(w)), den);
            images.push_back(quotient_shape(num, den));
        }
    }
    return classify_tower(p, images, stabilized_at);
}

OracleReport oracle_compare(const OracleGrid& grid) {
    OracleReport rep;
    const Ring& r = grid.ring;
    for (const PrimeIdeal& p : grid.primes)
        if (p.ring() != r || p.is_zero_ideal())
            fail(Errc::precondition, "grid primes must be generated primes of the grid ring");
    auto max_e = [&](const PrimeIdeal& p) {
        return r.is_domain() ? grid.max_exp : std::min(grid.max_exp, modulus_multiplicity(r, p));
    };
    auto record = [&](int k, const TameModule& lhs, const TameModule& rhs,
                      const TameModule& closed, const TameModule& oracle) {
        ++rep.cases;
        if (closed != oracle)
            rep.mismatches.push_back({k, lhs.str(), rhs.str(), closed.str(), oracle.str()});
    };

    for (const PrimeIdeal& p : grid.primes)
        for (int e = 1; e <= max_e(p); ++e)
            for (const PrimeIdeal& q : grid.primes)
                for (int f = 1; f <= max_e(q); ++f) {
                    TameModule cm(r, {{Atom::cyclic(p, e), 1}});
                    TameModule cn(r, {{Atom::cyclic(q, f), 1}});
                    Presentation pa = Presentation::of_tame(cm);
                    Presentation pb = Presentation::of_tame(cn);
                    for (int k = 0; k <= grid.max_k; ++k)
                        record(k, cm, cn, tor(k, cm, cn), fg_tor_oracle(k, pa, pb));
                }

    if (grid.prufer_rows && r.is_domain()) {
        for (const PrimeIdeal& p : grid.primes) {
            TameModule pm(r, {{Atom::prufer(p), 1}});
            for (const PrimeIdeal& q : grid.primes) {
                for (int f = 1; f <= max_e(q); ++f) {
                    TameModule cn(r, {{Atom::cyclic(q, f), 1}});
                    Presentation pb = Presentation::of_tame(cn);
                    for (int k = 0; k <= grid.max_k; ++k) {
                        int stab = 0;
                        TameModule o = prufer_tor_oracle(k, p, pb, &stab);
                        rep.max_stabilization = std::max(rep.max_stabilization, stab);
                        record(k, pm, cn, tor(k, pm, cn), o);
                        record(k, cn, pm, tor(k, cn, pm), o);
                    }
                }
                TameModule qm(r, {{Atom::prufer(q), 1}});
                for (int k = 0; k <= grid.max_k; ++k) {
                    int stab = 0;
                    TameModule o = prufer_pair_tor_oracle(k, p, q, &stab);
                    rep.max_stabilization = std::max(rep.max_stabilization, stab);
                    record(k, pm, qm, tor(k, pm, qm), o);
                }
            }
        }
    }
    return rep;
}

}  // namespace gorcalc
