#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ppmod/pp_calculus.hpp"

namespace ppmod {

/// Descending chain of pp formulas of fixed arity.  A chain starts as a stage
/// producer (closed-form template or explicit list); materialize() computes
/// and verifies a prefix phi_0 >= phi_1 >= ... >= phi_k.
template <class D>
struct PpChain {
    Ring<D> ring;
    int arity = 0;
    std::function<PpFormula<D>(int)> produce;
    std::optional<int> max_stage;          // inclusive, for list-backed chains
    std::vector<PpFormula<D>> prefix;      // verified descending

    int verified_through() const { return static_cast<int>(prefix.size()) - 1; }
};

template <class D>
PpChain<D> chain_from_producer(const Ring<D>& ring, int arity,
                               std::function<PpFormula<D>(int)> produce,
                               std::optional<int> max_stage = std::nullopt) {
    PpChain<D> c;
    c.ring = ring;
    c.arity = arity;
    c.produce = std::move(produce);
    c.max_stage = max_stage;
    return c;
}

template <class D>
PpChain<D> chain_from_list(std::vector<PpFormula<D>> formulas) {
    if (formulas.empty()) throw Error("chain_from_list: empty chain");
    auto ring = formulas[0].ring;
    int arity = formulas[0].arity;
    int last = static_cast<int>(formulas.size()) - 1;
    auto shared = std::make_shared<std::vector<PpFormula<D>>>(std::move(formulas));
    return chain_from_producer<D>(
        ring, arity,
        [shared](int i) -> PpFormula<D> {
            if (i < 0 || i >= static_cast<int>(shared->size()))
                throw StageOutOfRange("chain stage " + std::to_string(i) + " not defined");
            return (*shared)[i];
        },
        last);
}

template <class D>
PpFormula<D> formula_at(const PpChain<D>& c, int i) {
    if (i < 0) throw StageOutOfRange("negative chain stage");
    if (i <= c.verified_through()) return c.prefix[i];
    if (c.max_stage && i > *c.max_stage)
        throw StageOutOfRange("chain stage " + std::to_string(i) + " beyond last stage");
    auto f = c.produce(i);
    if (f.arity != c.arity) throw ArityMismatch("chain stage has wrong arity");
    if (f.ring != c.ring) throw RingMismatch("chain stage over wrong ring");
    return f;
}

/// Verify the prefix through stage k is descending; NotDescending(i) reports
/// the first violated step (the free realization of phi_{i+1} is then a
/// counterexample: its tuple satisfies phi_{i+1} but not phi_i).
template <class D>
PpChain<D> materialize(const PpChain<D>& chain, int k) {
    PpChain<D> out = chain;
    if (out.verified_through() >= k) return out;
    out.prefix.reserve(k + 1);
    for (int i = static_cast<int>(out.prefix.size()); i <= k; ++i)
        out.prefix.push_back(formula_at(chain, i));
    for (int i = 0; i < k; ++i) {
        if (!implies(out.prefix[i + 1], out.prefix[i])) throw NotDescending(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chain analysis reports.
// ---------------------------------------------------------------------------

template <class D>
struct DccStep {
    bool strict = false;
    // A strict lattice step carries the free realization of phi_i, whose
    // tuple fails phi_{i+1}; a strict in-module step carries a witness tuple.
    std::optional<PointedModule<D>> pointed_witness;
    std::optional<Mat<D>> element_witness;
};

template <class D>
struct DccReport {
    bool stabilizes = false;
    int index = 0;  // StabilizesAt(index) or StrictThrough(index)
    std::vector<DccStep<D>> steps;

    bool strict_through(int k) const { return !stabilizes && index == k; }
};

namespace detail {

template <class D>
void finish_verdict(DccReport<D>& rep, int k) {
    if (k == 0) {
        rep.stabilizes = true;
        rep.index = 0;
        return;
    }
    if (rep.steps.back().strict) {
        rep.stabilizes = false;
        rep.index = k;
        return;
    }
    int j = k - 1;
    while (j > 0 && !rep.steps[j - 1].strict) --j;
    rep.stabilizes = true;
    rep.index = j;
}

}  // namespace detail

/// Strictness of each step in the lattice of pp formulas (uniformly over all
/// modules): step i is strict iff phi_i does not imply phi_{i+1}.
template <class D>
DccReport<D> lattice_strictness(const PpChain<D>& chain, int k) {
    if (chain.verified_through() < k) throw Error("lattice_strictness: chain not materialized");
    DccReport<D> rep;
    for (int i = 0; i < k; ++i) {
        DccStep<D> step;
        step.strict = !implies(chain.prefix[i], chain.prefix[i + 1]);
        if (step.strict) step.pointed_witness = free_realization(chain.prefix[i]);
        rep.steps.push_back(std::move(step));
    }
    detail::finish_verdict(rep, k);
    return rep;
}

/// Stabilization of the subgroup chain phi_i(M), with element witnesses for
/// strict steps.  Equality is confirmed pairwise through the bound, so a
/// plateau that later drops is not reported as stabilization.
template <class D>
DccReport<D> stabilizes_in(const PpChain<D>& chain, const FpModule<D>& m, int bound) {
    if (chain.verified_through() < bound) throw Error("stabilizes_in: chain not materialized");
    if (m.ring != chain.ring) throw RingMismatch("stabilizes_in: module over wrong ring");
    std::vector<Submodule<D>> evals;
    evals.reserve(bound + 1);
    for (int i = 0; i <= bound; ++i) evals.push_back(evaluate(chain.prefix[i], m));
    DccReport<D> rep;
    for (int i = 0; i < bound; ++i) {
        if (!sub_leq(evals[i + 1], evals[i]))
            throw Error("stabilizes_in: descending chain evaluated to non-nested subgroups");
        DccStep<D> step;
        step.strict = !sub_eq(evals[i], evals[i + 1]);
        if (step.strict) {
            for (int j = 0; j < evals[i].canon.cols; ++j) {
                auto col = evals[i].canon.col(j);
                if (!evals[i + 1].contains(col)) {
                    step.element_witness =
                        detail::unstack_tuple<D>(col, m.num_gens, chain.arity);
                    break;
                }
            }
            if (!step.element_witness)
                throw Error("stabilizes_in: strict step without witness generator");
        }
        rep.steps.push_back(std::move(step));
    }
    detail::finish_verdict(rep, bound);
    return rep;
}

/// Re-verify every certificate in a lattice report by direct evaluation.
template <class D>
bool verify_lattice_report(const PpChain<D>& chain, const DccReport<D>& rep) {
    for (int i = 0; i < static_cast<int>(rep.steps.size()); ++i) {
        const auto& step = rep.steps[i];
        if (step.strict) {
            if (!step.pointed_witness) return false;
            if (!satisfies(*step.pointed_witness, chain.prefix[i])) return false;
            if (satisfies(*step.pointed_witness, chain.prefix[i + 1])) return false;
        } else {
            if (!implies(chain.prefix[i], chain.prefix[i + 1])) return false;
        }
    }
    return true;
}

template <class D>
bool verify_module_report(const PpChain<D>& chain, const FpModule<D>& m, const DccReport<D>& rep) {
    for (int i = 0; i < static_cast<int>(rep.steps.size()); ++i) {
        const auto& step = rep.steps[i];
        if (step.strict) {
            if (!step.element_witness) return false;
            if (!satisfies(m, *step.element_witness, chain.prefix[i])) return false;
            if (satisfies(m, *step.element_witness, chain.prefix[i + 1])) return false;
        } else {
            if (!sub_eq(evaluate(chain.prefix[i], m), evaluate(chain.prefix[i + 1], m)))
                return false;
        }
    }
    return true;
}

/// The divisibility chain r_i | x of a descending chain of principal ideals.
template <class D>
PpChain<D> principal_ideal_chain(const Ring<D>& ring, const std::vector<typename D::Elem>& rs) {
    if (rs.empty()) throw Error("principal_ideal_chain: empty chain");
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        Mat<D> a(1, 1, rs[i]);
        if (!solve_linear(ring, a, std::vector<typename D::Elem>{rs[i + 1]}))
            throw NotDescendingIdeals(static_cast<int>(i));
    }
    std::vector<PpFormula<D>> formulas;
    formulas.reserve(rs.size());
    for (const auto& r : rs) formulas.push_back(divisibility_by(ring, r));
    return chain_from_list(std::move(formulas));
}

/// Stagewise kernel and projection chains for a variable split: the first
/// output zeroes the given variables, the second keeps exactly them.  Both
/// are re-verified descending.
template <class D>
std::pair<PpChain<D>, PpChain<D>> split_kernel_projection(const PpChain<D>& chain,
                                                          const std::vector<int>& vars) {
    int k = chain.verified_through();
    if (k < 0) throw Error("split_kernel_projection: chain not materialized");
    std::vector<PpFormula<D>> kernels, projections;
    for (int i = 0; i <= k; ++i) {
        kernels.push_back(kernel(chain.prefix[i], vars));
        projections.push_back(project(chain.prefix[i], vars));
    }
    auto kc = materialize(chain_from_list(std::move(kernels)), k);
    auto pc = materialize(chain_from_list(std::move(projections)), k);
    return {std::move(kc), std::move(pc)};
}

template <class D>
struct StabilizationEquivalence {
    bool holds = false;
    DccReport<D> full, kernels, projections;
};

/// Does [chain stabilizes in M] match [kernel chain and projection chain both
/// stabilize in M]?  The three reports are attached.
template <class D>
StabilizationEquivalence<D> ordered_stabilization_equivalence(const PpChain<D>& chain,
                                                              const std::vector<int>& vars,
                                                              const FpModule<D>& m, int bound) {
    auto [kc, pc] = split_kernel_projection(chain, vars);
    StabilizationEquivalence<D> out;
    out.full = stabilizes_in(chain, m, bound);
    out.kernels = stabilizes_in(kc, m, bound);
    out.projections = stabilizes_in(pc, m, bound);
    out.holds = (out.full.stabilizes == (out.kernels.stabilizes && out.projections.stabilizes));
    return out;
}

// ---------------------------------------------------------------------------
// Witness transfer: package strictness witnesses from a module M into a
// direct sum of free realizations in which the chain is strict again.
// ---------------------------------------------------------------------------

template <class D>
struct TransferWitness {
    std::vector<PointedModule<D>> stages;     // (G_i, gg_i) = free realization of phi_i
    std::vector<ModMorphism<D>> maps;         // (G_i, gg_i) -> (M, aa_i)
    DirectSum<D> sum;                         // G = direct sum of the G_i
    DccReport<D> strict_in_sum;               // the chain re-checked in G
};

template <class D>
TransferWitness<D> transfer_witness(const PpChain<D>& chain, const FpModule<D>& m, int k) {
    auto in_m = stabilizes_in(chain, m, k);
    if (!in_m.strict_through(k)) throw Stabilized(in_m.index);
    TransferWitness<D> out;
    std::vector<FpModule<D>> parts;
    for (int i = 0; i < k; ++i) {
        auto g = free_realization(chain.prefix[i]);
        auto map = find_morphism(g.mod, share(m), g.tuple, *in_m.steps[i].element_witness);
        if (!map) throw Error("transfer_witness: free realization admits no map to the witness");
        out.stages.push_back(g);
        out.maps.push_back(std::move(*map));
        parts.push_back(*g.mod);
    }
    out.sum = direct_sum(parts);
    // the injected witnesses separate each step in the sum
    for (int i = 0; i < k; ++i) {
        Mat<D> injected = mat_mul(m.ring.dom, out.sum.injections[i].matrix, out.stages[i].tuple);
        if (!satisfies(*out.sum.sum, injected, chain.prefix[i]) ||
            satisfies(*out.sum.sum, injected, chain.prefix[i + 1]))
            throw Error("transfer_witness: strictness lost in the direct sum");
    }
    out.strict_in_sum = stabilizes_in(chain, *out.sum.sum, k);
    if (!out.strict_in_sum.strict_through(k))
        throw Error("transfer_witness: chain stabilized in the direct sum");
    return out;
}

}  // namespace ppmod
