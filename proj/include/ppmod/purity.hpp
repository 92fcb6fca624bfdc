#pragma once

#include "ppmod/pp_calculus.hpp"

namespace ppmod {

/// Is the (injective) morphism a pure embedding?  A monomorphism between f.p.
/// modules is pure iff it preserves the pp type of the generator tuple, i.e.
/// the canonical generators of the tuple and of its image are equivalent.
template <class D>
bool is_pure_embedding(const ModMorphism<D>& f) {
    if (!is_injective(f)) throw NotInjective("is_pure_embedding: morphism is not injective");
    const auto& dom = f.src->ring.dom;
    Mat<D> gens = Mat<D>::identity(dom, f.src->num_gens);
    auto src_pt = pointed(f.src, gens);
    auto img_pt = pointed(f.dst, f.matrix);  // image of generator i is column i
    return equivalent(canonical_generator(src_pt), canonical_generator(img_pt));
}

}  // namespace ppmod
