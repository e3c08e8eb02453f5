#include "gorcalc/morphism.hpp"

#include <set>

#include "gorcalc/tor.hpp"

namespace gorcalc {

namespace {

std::vector<Atom> expand(const TameModule& m) {
    std::vector<Atom> out;
    for (const auto& [a, mult] : m.atoms())
        for (int i = 0; i < mult; ++i) out.push_back(a);
    return out;
}

// p-adic valuation of a scale, computed on lifts so quotient rings work too.
int scale_valuation(const RingElement& scale, const PrimeIdeal& p) {
    return valuation(scale.lift(), p.generator().lift());
}

}  // namespace

MorphismSpec::MorphismSpec(TameModule source, TameModule target, std::vector<MorphismBlock> blocks)
    : source_(std::move(source)),
      target_(std::move(target)),
      src_inst_(expand(source_)),
      dst_inst_(expand(target_)),
      blocks_(std::move(blocks)) {
    if (source_.ring() != target_.ring()) fail(Errc::precondition, "morphism across rings");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const MorphismBlock& b : blocks_) {
        if (b.src >= src_inst_.size() || b.dst >= dst_inst_.size())
            fail(Errc::precondition, "morphism block out of range");
        if (b.scale.ring() != source_.ring()) fail(Errc::precondition, "block scale from another ring");
        if (!seen.insert({b.src, b.dst}).second)
            fail(Errc::precondition, "duplicate morphism block");
        if (hom_is_zero(src_inst_[b.src], dst_inst_[b.dst]) && !block_vanishes(b))
            fail(Errc::precondition, "nonzero block on a pair with Hom = 0");
    }
}

MorphismSpec MorphismSpec::scalar(const TameModule& g, const RingElement& r) {
    std::vector<MorphismBlock> bs;
    std::size_t n = 0;
    for (const auto& [a, mult] : g.atoms()) n += static_cast<std::size_t>(mult);
    for (std::size_t i = 0; i < n; ++i) bs.push_back({i, i, r});
    return MorphismSpec(g, g, std::move(bs));
}

MorphismSpec MorphismSpec::zero_map(const TameModule& source, const TameModule& target) {
    return MorphismSpec(source, target, {});
}

bool MorphismSpec::block_vanishes(const MorphismBlock& b) const {
    if (b.scale.is_zero()) return true;
    const Atom& s = src_inst_[b.src];
    const Atom& t = dst_inst_[b.dst];
    // Torsion constraints are the only way a nonzero scale can kill the
    // canonical map; divisible and torsion-free targets keep it alive.
    if (s.kind() == AtomKind::cyclic) {
        int cap = s.exponent();
        if (t.kind() == AtomKind::cyclic) {
            if (t.prime() != s.prime()) return true;  // Hom = 0 anyway
            cap = std::min(cap, t.exponent());
        }
        return scale_valuation(b.scale, s.prime()) >= cap;
    }
    if (s.kind() == AtomKind::free_rank_one && t.kind() == AtomKind::cyclic)
        return scale_valuation(b.scale, t.prime()) >= t.exponent();
    return false;
}

}  // namespace gorcalc
