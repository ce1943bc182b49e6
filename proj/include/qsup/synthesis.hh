/* synthesis.hh -- supremal sublanguage synthesis under step budgets */

#ifndef QSUP_SYNTHESIS_HH
#define QSUP_SYNTHESIS_HH

#include <cstddef>
#include <string>
#include <vector>

#include "qsup/analysis.hh"
#include "qsup/automaton.hh"

namespace qsup {

/// Exploration order of the counter-automaton construction. The result is
/// order-independent; both are exposed so the equivalence is testable.
enum class Frontier { stack, queue };

/// Optional instrumentation of a synthesis run.
struct SynthesisTrace {
    struct Entry {
        std::string description;
    };

    std::vector<Entry> steps;
    std::size_t counter_states_visited = 0;
    std::size_t iterations = 0; // fixpoint rounds, where applicable
};

/// Supremal quantitatively completable sublanguage of Lm(k) under budget n,
/// computed directly on a counter-augmented copy of k: states are pairs
/// (x, d) where d counts the events the current completion obligation has
/// already consumed; transitions that would push d to n without reaching a
/// marked state are dropped. The result is trim. Throws ValidationError
/// when n == 0.
Generator sup_qc(const Generator& k, std::size_t n,
                 Frontier frontier = Frontier::stack,
                 SynthesisTrace* trace = nullptr);

/// The same supremal sublanguage computed on the language level: the result
/// recognizes pre(K_n) ∩ Lm(k), where K_n collects the strings of
/// closure(Lm(k)) that either are short (< n) or extend a marked string by
/// at most n events, and pre keeps strings all of whose prefixes stay in
/// K_n. Built from complement/product/union primitives so it can serve as
/// an independent cross-check of sup_qc. Throws ValidationError when n == 0.
Generator sup_qc_language(const Generator& k, std::size_t n,
                          SynthesisTrace* trace = nullptr);

/// Supremal controllable sublanguage of Lm(k) with respect to plant g:
/// iteratively deletes product states where g enables an uncontrollable
/// event the candidate disables, trims, and repeats to a fixpoint. Throws
/// AlphabetError on alphabet mismatch.
Generator supcon(const Generator& g, const Generator& k,
                 SynthesisTrace* trace = nullptr);

/// Supremal controllable and quantitatively completable sublanguage:
/// one supcon pass over sup_qc(product(g,k) trimmed, n). Closed under both
/// properties by construction.
Generator sup_cqc(const Generator& g, const Generator& k, std::size_t n,
                  SynthesisTrace* trace = nullptr);

/// Supremal heterogeneously quantitatively completable sublanguage of
/// Lm(k) w.r.t. plant g: every plant marker q of the (g, k) correspondence
/// carries its own budget bounds[q]. Sweeps the plant markers in ascending
/// name order; each pass re-marks g at the single marker, forms the product
/// with the current candidate, runs sup_qc with that marker's budget, and
/// restores k's marking (closure of the pass result intersected with
/// Lm(k)); sweeps repeat until one leaves the marked language unchanged.
/// `bounds` keys must be exactly the plant markers, which must be nonempty
/// (BoundsError otherwise); budgets must be >= 1. Inherits
/// marker_correspondence's containment requirement Lm(k) ⊆ Lm(g).
Generator sup_hqc(const Generator& g, const Generator& k, const BoundSpec& bounds,
                  SynthesisTrace* trace = nullptr);

/// Supremal controllable and heterogeneously quantitatively completable
/// sublanguage of Lm(e) ∩ Lm(g) w.r.t. g: starts from trim(product(g, e))
/// and alternates sup_hqc and supcon to a joint marked-language fixpoint.
/// Bounds are keyed by the plant markers of that initial product, which
/// must be nonempty (BoundsError otherwise).
Generator sup_chqc(const Generator& g, const Generator& e, const BoundSpec& bounds,
                   SynthesisTrace* trace = nullptr);

} // namespace qsup

#endif
