#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppmod/chains.hpp"

namespace ppmod {

/// Chain of pointed free realizations (A_i, aa_i) with connecting morphisms
/// g_i : (A_i, aa_i) -> (A_{i+1}, aa_{i+1}).  The lazy colimit is queried
/// through staged elements; nothing infinite is ever materialized.
template <class D>
struct BassSystem {
    PpChain<D> chain;                       // materialized through top()
    std::vector<PointedModule<D>> stages;   // i = 0 .. top()
    std::vector<ModMorphism<D>> connectors; // g_i : A_i -> A_{i+1}

    int top() const { return static_cast<int>(stages.size()) - 1; }
};

/// Build stages and connectors along a verified chain prefix.  The connector
/// solve is guaranteed feasible because aa_{i+1} satisfies phi_i; which
/// solution gets picked is a tie-breaking choice with no downstream meaning.
template <class D>
BassSystem<D> build_system(const PpChain<D>& chain, int k, bool alt_order = false) {
    auto mat = materialize(chain, k);
    BassSystem<D> sys;
    for (int i = 0; i <= k; ++i) sys.stages.push_back(free_realization(mat.prefix[i]));
    for (int i = 0; i < k; ++i) {
        auto g = find_morphism(sys.stages[i].mod, sys.stages[i + 1].mod, sys.stages[i].tuple,
                               sys.stages[i + 1].tuple, alt_order);
        if (!g) throw Error("build_system: connector solve failed on a verified chain");
        sys.connectors.push_back(std::move(*g));
    }
    sys.chain = std::move(mat);
    return sys;
}

/// Staged element of the colimit: a tuple at some stage.  Pushing forward
/// along connectors never changes its colimit class.
template <class D>
struct ColimitElem {
    int stage = 0;
    Mat<D> tuple;  // stage module coordinates, one column per component
};

template <class D>
ColimitElem<D> colim_elem(const BassSystem<D>& sys, int stage, const Mat<D>& tuple) {
    if (stage < 0 || stage > sys.top()) throw StageOutOfRange("colim_elem: no such stage");
    auto p = pointed(sys.stages[stage].mod, tuple);
    return ColimitElem<D>{stage, p.tuple};
}

template <class D>
ColimitElem<D> push(const BassSystem<D>& sys, const ColimitElem<D>& e, int to_stage) {
    if (to_stage < e.stage || to_stage > sys.top())
        throw StageOutOfRange("push: target stage not in the built system");
    Mat<D> t = e.tuple;
    for (int s = e.stage; s < to_stage; ++s) {
        t = mat_mul(sys.chain.ring.dom, sys.connectors[s].matrix, t);
        t = pointed(sys.stages[s + 1].mod, t).tuple;  // reduce coordinates
    }
    return ColimitElem<D>{to_stage, std::move(t)};
}

/// Least stage <= bound at which the pushed element satisfies the formula;
/// nothing if no stage within the bound does (satisfaction persists once it
/// holds, so the answer is never a false negative).
template <class D>
std::optional<int> satisfies_upto(const BassSystem<D>& sys, const ColimitElem<D>& e,
                                  const PpFormula<D>& f, int stage_bound) {
    if (stage_bound > sys.top()) throw StageOutOfRange("satisfies_upto: bound beyond built system");
    for (int s = e.stage; s <= stage_bound; ++s) {
        auto pushed = push(sys, e, s);
        if (satisfies(*sys.stages[s].mod, pushed.tuple, f)) return s;
    }
    return std::nullopt;
}

struct ColimEq {
    enum class Kind { Yes, No, Unknown } kind = Kind::Unknown;
    int stage = -1;  // for Yes: least coincidence stage

    static ColimEq yes(int s) { return ColimEq{Kind::Yes, s}; }
    static ColimEq no() { return ColimEq{Kind::No, -1}; }
    static ColimEq unknown() { return ColimEq{Kind::Unknown, -1}; }
};

/// Bounded colimit equality: Yes(s) when the pushes coincide at some stage
/// s <= stage_bound; No when they differ at the common stage and every later
/// connector in the built system is injective; Unknown otherwise.
template <class D>
ColimEq colim_eq_upto(const BassSystem<D>& sys, const ColimitElem<D>& e1, const ColimitElem<D>& e2,
                      int stage_bound) {
    if (e1.tuple.cols != e2.tuple.cols) throw ArityMismatch("colim_eq_upto: tuple widths differ");
    if (stage_bound > sys.top()) throw StageOutOfRange("colim_eq_upto: bound beyond built system");
    const int common = std::max(e1.stage, e2.stage);
    for (int s = common; s <= stage_bound; ++s) {
        if (push(sys, e1, s).tuple == push(sys, e2, s).tuple) return ColimEq::yes(s);
    }
    bool all_injective = true;
    for (int s = common; s < sys.top() && all_injective; ++s)
        all_injective = is_injective(sys.connectors[s]);
    return all_injective ? ColimEq::no() : ColimEq::unknown();
}

/// Evidence record for a Mittag-Leffler failure along the chain: one colimit
/// element realizes every stage formula while the lattice chain stays
/// strictly descending.  This is bounded evidence through stage k, explicitly
/// not a proof (which would need unbounded strictness).
template <class D>
struct MlFailureReport {
    int through_stage = 0;
    std::vector<int> equality_stage;      // f_0(aa_0) = f_i(aa_i), coincidence stage per i
    std::vector<int> satisfaction_stage;  // least stage where f_0(aa_0) satisfies phi_i
    DccReport<D> strictness;              // StrictThrough(k) with certificates
};

template <class D>
MlFailureReport<D> ml_failure_report(const BassSystem<D>& sys, int k) {
    if (k < 2) throw BadIndex("ml_failure_report: needs at least two stages");
    if (k > sys.top()) throw StageOutOfRange("ml_failure_report: beyond built system");
    auto strict = lattice_strictness(sys.chain, k);
    if (strict.stabilizes) throw ChainStabilized(strict.index);

    MlFailureReport<D> rep;
    rep.through_stage = k;
    rep.strictness = std::move(strict);
    ColimitElem<D> base{0, sys.stages[0].tuple};
    for (int i = 0; i <= k; ++i) {
        ColimitElem<D> ai{i, sys.stages[i].tuple};
        auto eq = colim_eq_upto(sys, base, ai, i);
        if (eq.kind != ColimEq::Kind::Yes)
            throw Error("ml_failure_report: base element does not reach stage tuple");
        rep.equality_stage.push_back(eq.stage);
        auto sat = satisfies_upto(sys, base, sys.chain.prefix[i], k);
        if (!sat || *sat > i)
            throw Error("ml_failure_report: satisfaction missing at its own stage");
        rep.satisfaction_stage.push_back(*sat);
    }
    return rep;
}

/// Finite truncation of a pure-free module: the direct sum of the listed
/// summands with multiplicities.
template <class D>
struct PureFreeTruncation {
    std::vector<std::pair<FpModule<D>, int>> summands;
    DirectSum<D> sum;
};

template <class D>
PureFreeTruncation<D> pure_free_truncation(const Ring<D>& ring,
                                           const std::vector<std::pair<FpModule<D>, int>>& parts) {
    PureFreeTruncation<D> t;
    t.summands = parts;
    std::vector<FpModule<D>> expanded;
    for (const auto& [m, mult] : parts) {
        if (mult < 1) throw BadIndex("pure_free_truncation: multiplicities must be positive");
        for (int i = 0; i < mult; ++i) expanded.push_back(m);
    }
    if (expanded.empty()) {
        t.sum.sum = share(zero_module(ring));
        return t;
    }
    t.sum = direct_sum(expanded);
    return t;
}

}  // namespace ppmod
