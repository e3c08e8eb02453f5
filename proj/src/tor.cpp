#include "gorcalc/tor.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace gorcalc {

namespace fault {
namespace {

const std::vector<std::string> kRows = {
    "D_TENSOR_CC_SAME", "D_TENSOR_CC_CROSS", "D_TENSOR_CPR",      "D_TENSOR_PRPR",
    "D_TOR1_CC_SAME",   "D_TOR1_CC_CROSS",   "D_TOR1_CPR_SAME",   "D_TOR1_CPR_CROSS",
    "D_TOR1_PRPR_SAME", "D_TOR1_PRPR_CROSS", "D_TORK_ZERO",
    "A_TENSOR_CC_SAME", "A_TENSOR_CC_CROSS", "A_TORK_CC_SAME",    "A_TORK_CC_CROSS",
};

std::string g_active = [] {
    const char* v = std::getenv("GORCALC_TOR_FAULT");
    return std::string(v ? v : "");
}();

}  // namespace

const std::vector<std::string>& table_rows() { return kRows; }

void inject(const std::string& row) {
    if (std::find(kRows.begin(), kRows.end(), row) == kRows.end())
        fail(Errc::domain_error, "unknown table row '" + row + "'");
    g_active = row;
}

void clear() { g_active.clear(); }

const std::string& active() { return g_active; }

}  // namespace fault

namespace {

bool faulty(const char* row) { return fault::g_active == row; }

void require_same_ring(const Ring& a, const Ring& b, const char* op) {
    if (a != b) fail(Errc::domain_error, std::string(op) + ": operands live over different rings");
}

// Orient an atom pair canonically; every table below is symmetric, so this
// halves the case analysis and makes commutativity structural.
void orient(const Atom*& a, const Atom*& b) {
    if (b->compare(*a) < 0) std::swap(a, b);
}

// Single-atom results; nullopt is the zero module. Pairs arrive oriented by
// atom order (Free < K < Cyclic < Prufer < Omega1).
std::optional<Atom> atom_tensor(const Atom& a, const Atom& b) {
    const Ring& r = a.ring();
    switch (a.kind()) {
        case AtomKind::free_rank_one:
            return b;  // R ⊗ X = X
        case AtomKind::fraction_field:
            // K ⊗ K = K; K kills torsion, hence also the wildcard
            if (b.kind() == AtomKind::fraction_field) return b;
            return std::nullopt;
        case AtomKind::cyclic:
            if (b.kind() == AtomKind::cyclic) {
                bool same = a.prime() == b.prime();
                if (r.is_domain()) {
                    if (same) {
                        if (faulty("D_TENSOR_CC_SAME")) return std::nullopt;
                        return Atom::cyclic(a.prime(), std::min(a.exponent(), b.exponent()));
                    }
                    if (faulty("D_TENSOR_CC_CROSS")) return a;
                    return std::nullopt;
                }
                if (same) {
                    if (faulty("A_TENSOR_CC_SAME")) return std::nullopt;
                    return Atom::cyclic(a.prime(), std::min(a.exponent(), b.exponent()));
                }
                if (faulty("A_TENSOR_CC_CROSS")) return a;
                return std::nullopt;
            }
            if (b.kind() == AtomKind::prufer) {
                // bounded torsion against a divisible module
                if (faulty("D_TENSOR_CPR")) return a;
                return std::nullopt;
            }
            // b = Omega1: only its Pr(p) slot can interact
            return atom_tensor(a, Atom::prufer(a.prime()));
        case AtomKind::prufer:
            if (b.kind() == AtomKind::prufer) {
                if (faulty("D_TENSOR_PRPR")) return a;
                return std::nullopt;
            }
            return atom_tensor(a, Atom::prufer(a.prime()));  // b = Omega1
        case AtomKind::omni_prufer:
            return std::nullopt;  // Ω¹ ⊗ Ω¹: every slot pair vanishes
    }
    fail(Errc::internal, "unhandled atom kind in tensor");
}

std::optional<Atom> atom_tor(int k, const Atom& a, const Atom& b) {
    const Ring& r = a.ring();
    // flat atoms (these short circuits are not table rows)
    if (a.kind() == AtomKind::free_rank_one || a.kind() == AtomKind::fraction_field)
        return std::nullopt;

    if (r.is_artinian()) {
        // only cyclic atoms survive normalization here; the closed form is
        // k-independent for k ≥ 1 (periodic resolutions)
        bool same = a.prime() == b.prime();
        if (same) {
            int cap = modulus_multiplicity(r, a.prime());
            int m = std::min({a.exponent(), b.exponent(), cap - a.exponent(), cap - b.exponent()});
            if (faulty("A_TORK_CC_SAME"))
                return m > 0 ? std::nullopt : std::optional<Atom>(Atom::cyclic(a.prime(), 1));
            if (m == 0) return std::nullopt;
            return Atom::cyclic(a.prime(), m);
        }
        if (faulty("A_TORK_CC_CROSS")) return Atom::cyclic(a.prime(), 1);
        return std::nullopt;
    }

    // domains; resolve the wildcard to the slot matching the concrete side
    if (b.kind() == AtomKind::omni_prufer) {
        if (a.kind() == AtomKind::omni_prufer)
            return k == 1 ? std::optional<Atom>(a) : std::nullopt;  // diagonal slots
        return atom_tor(k, a, Atom::prufer(a.prime()));
    }

    if (k >= 2) {
        // global dimension 1
        if (faulty("D_TORK_ZERO")) return Atom::cyclic(a.prime(), 1);
        return std::nullopt;
    }

    bool same = a.prime() == b.prime();
    if (a.kind() == AtomKind::cyclic) {
        if (b.kind() == AtomKind::cyclic) {
            if (same) {
                if (faulty("D_TOR1_CC_SAME")) return std::nullopt;
                return Atom::cyclic(a.prime(), std::min(a.exponent(), b.exponent()));
            }
            if (faulty("D_TOR1_CC_CROSS")) return Atom::cyclic(a.prime(), a.exponent());
            return std::nullopt;
        }
        // b = Prufer: the tower of C(p,e) ⊗ C(p,n) stabilizes at C(p,e)
        if (same) {
            if (faulty("D_TOR1_CPR_SAME")) return std::nullopt;
            return a;
        }
        if (faulty("D_TOR1_CPR_CROSS")) return a;
        return std::nullopt;
    }
    // Prufer / Prufer
    if (same) {
        if (faulty("D_TOR1_PRPR_SAME")) return std::nullopt;
        return a;
    }
    if (faulty("D_TOR1_PRPR_CROSS")) return a;
    return std::nullopt;
}

}  // namespace

TameModule tensor(const TameModule& m, const TameModule& n) {
    require_same_ring(m.ring(), n.ring(), "tensor");
    std::vector<std::pair<Atom, int>> out;
    for (const auto& [a, i] : m.atoms())
        for (const auto& [b, j] : n.atoms()) {
            const Atom* x = &a;
            const Atom* y = &b;
            orient(x, y);
            if (auto res = atom_tensor(*x, *y)) out.emplace_back(*res, i * j);
        }
    return TameModule(m.ring(), out);
}

TameModule tor(int k, const TameModule& m, const TameModule& n) {
    if (k < 0) fail(Errc::precondition, "Tor index must be nonnegative");
    require_same_ring(m.ring(), n.ring(), "tor");
    if (k == 0) return tensor(m, n);
    std::vector<std::pair<Atom, int>> out;
    for (const auto& [a, i] : m.atoms())
        for (const auto& [b, j] : n.atoms()) {
            const Atom* x = &a;
            const Atom* y = &b;
            orient(x, y);
            if (auto res = atom_tor(k, *x, *y)) out.emplace_back(*res, i * j);
        }
    return TameModule(m.ring(), out);
}

TameModule injective_hull(const TameModule& m) {
    const Ring& r = m.ring();
    std::vector<std::pair<Atom, int>> out;
    for (const auto& [a, i] : m.atoms()) {
        switch (a.kind()) {
            case AtomKind::free_rank_one:
                out.emplace_back(Atom::fraction_field(r), i);  // E(R) = K over a domain
                break;
            case AtomKind::cyclic:
                if (r.is_domain())
                    out.emplace_back(Atom::prufer(a.prime()), i);
                else
                    out.emplace_back(
                        Atom::cyclic(a.prime(), modulus_multiplicity(r, a.prime())), i);
                break;
            default:
                out.emplace_back(a, i);  // K, Pr, Ω¹ are already injective
        }
    }
    return TameModule(r, out);
}

TameModule cosyzygy(const TameModule& m) {
    const Ring& r = m.ring();
    std::vector<std::pair<Atom, int>> out;
    for (const auto& [a, i] : m.atoms()) {
        switch (a.kind()) {
            case AtomKind::free_rank_one:
                out.emplace_back(Atom::omni_prufer(r), i);  // K/R = ⊕_P E(R/P)
                break;
            case AtomKind::cyclic:
                if (r.is_domain()) {
                    out.emplace_back(Atom::prufer(a.prime()), i);  // Pr(p)/C(p,e) ≅ Pr(p)
                } else {
                    int rest = modulus_multiplicity(r, a.prime()) - a.exponent();
                    if (rest > 0) out.emplace_back(Atom::cyclic(a.prime(), rest), i);
                }
                break;
            default:
                break;  // injective atoms have zero cosyzygy
        }
    }
    return TameModule(r, out);
}

InjectiveResolution min_inj_res_of_ring(const Ring& r) {
    InjectiveResolution res{r, {}};
    if (r.is_domain()) {
        res.terms.push_back(TameModule(r, {{Atom::fraction_field(r), 1}}));
        res.terms.push_back(TameModule(r, {{Atom::omni_prufer(r), 1}}));
    } else {
        // injective dimension 0: R is its own resolution (CRT expansion)
        res.terms.push_back(TameModule(r, {{Atom::free_of(r), 1}}));
    }
    return res;
}

std::string InjectiveResolution::str() const {
    std::string s = "[";
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) s += ", ";
        s += terms[i].str();
    }
    return s + "]";
}

int flat_dim_probe(const TameModule& e, const std::vector<TameModule>& probes) {
    if (probes.empty()) fail(Errc::precondition, "flat_dim_probe needs at least one probe");
    const Ring& r = e.ring();
    bool single_hull = e.atoms().size() == 1 && e.atoms()[0].second == 1;
    if (single_hull) {
        const Atom& a = e.atoms()[0].first;
        switch (a.kind()) {
            case AtomKind::fraction_field:
                break;
            case AtomKind::prufer:
                break;
            case AtomKind::cyclic:
                // E(R/P) over an Artinian ring is the full-multiplicity cyclic
                single_hull = r.is_artinian() &&
                              a.exponent() == modulus_multiplicity(r, a.prime());
                break;
            default:
                single_hull = false;
        }
    }
    if (!single_hull)
        fail(Errc::precondition, "flat_dim_probe expects a single injective hull E(R/P)");
    int best = 0;
    for (int k = 0; k <= r.krull_dim() + 1; ++k)
        for (const TameModule& m : probes) {
            require_same_ring(r, m.ring(), "flat_dim_probe");
            if (!tor(k, e, m).is_zero()) best = k;
        }
    return best;
}

bool hom_is_zero(const Atom& a, const Atom& b) {
    require_same_ring(a.ring(), b.ring(), "hom_is_zero");
    const Ring& r = a.ring();
    switch (a.kind()) {
        case AtomKind::free_rank_one:
            return false;  // evaluation at a generator
        case AtomKind::fraction_field:
            // K maps nontrivially into divisible targets only
            return b.kind() == AtomKind::cyclic || b.kind() == AtomKind::free_rank_one;
        case AtomKind::cyclic:
            switch (b.kind()) {
                case AtomKind::free_rank_one:
                    return r.is_domain();  // torsion into torsion-free; quotients keep torsion
                case AtomKind::fraction_field:
                    return true;
                case AtomKind::cyclic:
                case AtomKind::prufer:
                    return a.prime() != b.prime();
                case AtomKind::omni_prufer:
                    return false;  // the Pr(p) slot receives C(p,e)
            }
            break;
        case AtomKind::prufer:
            switch (b.kind()) {
                case AtomKind::free_rank_one:
                case AtomKind::fraction_field:
                    return true;  // divisible torsion into torsion-free
                case AtomKind::cyclic:
                    return true;  // divisible image in bounded torsion is zero
                case AtomKind::prufer:
                    return a.prime() != b.prime();
                case AtomKind::omni_prufer:
                    return false;
            }
            break;
        case AtomKind::omni_prufer:
            // ⊕_P Pr(P) maps nontrivially iff some slot does
            return b.kind() != AtomKind::prufer && b.kind() != AtomKind::omni_prufer;
    }
    fail(Errc::internal, "unhandled atom pair in hom_is_zero");
}

}  // namespace gorcalc
