#pragma once

#include <cstddef>
#include <vector>

#include "gorcalc/tame.hpp"

namespace gorcalc {

// One block of a linear map between tame modules: a scalar multiple of the
// canonical generator map between a source and a target atom instance.
// Canonical generators: inclusions C(P,e) ↪ C(P,f) (e ≤ f), projections
// C(P,f) ↠ C(P,e), C(P,e) ↪ Pr(P), R ↠ C(P,e), R ↪ K, the composite
// K ↠ K/R ↠ (P-component) into Pr(P), slot projections/inclusions for the
// wildcard, identity and zero. Compositions of these collapse to
// scale · canonical, which is exactly what an entry stores.
struct MorphismBlock {
    std::size_t src = 0;  // index into expanded source instances
    std::size_t dst = 0;  // index into expanded target instances
    RingElement scale;    // zero scale = zero entry
};

// Block map between tame modules. Construction validates the whole table:
// indices in range, one entry per (src,dst) pair, all scales in the common
// ring, and no nonzero entry on an atom pair whose Hom group vanishes.
class MorphismSpec {
public:
    MorphismSpec(TameModule source, TameModule target, std::vector<MorphismBlock> blocks);

    static MorphismSpec scalar(const TameModule& g, const RingElement& r);  // r * identity
    static MorphismSpec zero_map(const TameModule& source, const TameModule& target);

    const TameModule& source() const { return source_; }
    const TameModule& target() const { return target_; }
    // Atoms with multiplicity expanded to one entry per copy, normal-form order.
    const std::vector<Atom>& source_instances() const { return src_inst_; }
    const std::vector<Atom>& target_instances() const { return dst_inst_; }
    const std::vector<MorphismBlock>& blocks() const { return blocks_; }

    // Entry is the zero map: zero scale, or a scale that annihilates the
    // canonical generator's image (torsion targets only).
    bool block_vanishes(const MorphismBlock& b) const;

private:
    TameModule source_, target_;
    std::vector<Atom> src_inst_, dst_inst_;
    std::vector<MorphismBlock> blocks_;
};

}  // namespace gorcalc
