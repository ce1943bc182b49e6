/* analysis.hh -- first-passage profiles and quantitative nonblocking checks */

#ifndef QSUP_ANALYSIS_HH
#define QSUP_ANALYSIS_HH

#include <map>
#include <string>
#include <vector>

#include "qsup/automaton.hh"
#include "qsup/verdict.hh"

namespace qsup {

/// Worst-case first-passage distance of one state to a target set: the
/// length of the longest string that first enters the target on its last
/// event (0 for target states themselves), infinite when arbitrarily long
/// target-avoiding strings exist that can still end in the target, or
/// unreachable when no run enters the target at all.
struct FirstPassage {
    enum class Kind { finite, infinite, unreachable };

    Kind kind = Kind::unreachable;
    std::size_t steps = 0; // meaningful only when kind == finite

    /// For finite: a longest first-passage string from the state (empty for
    /// target states). For infinite: a target-avoiding run into a cycle,
    /// given as the access path followed by the cycle itself (the cycle
    /// begins at index `cycle_start`). For unreachable: empty.
    std::vector<std::string> witness;
    std::size_t cycle_start = 0;

    bool finite() const { return kind == Kind::finite; }
};

/// Per-state first-passage profile of every reachable state of `g` towards
/// `targets` (state names). A state is classified infinite only when a
/// non-target cycle is reachable from it from which the target is still
/// reachable; dead branches never contribute. Throws ValidationError if a
/// target name does not exist. Keys are reachable state ids.
std::map<StateId, FirstPassage> first_passage_profile(
    const Generator& g, const std::vector<std::string>& targets);

/// Budgets for the heterogeneous checks: plant marker state name -> step
/// budget (>= 1).
using BoundSpec = std::map<std::string, std::size_t>;

/// Which plant marker states the specification's marked behavior touches,
/// and through which specification states. A plant state q is a marker of
/// the pair (g, k) when some string of the shared behavior ends at q in g
/// and at a marked state of k; rch(q) collects those marked k-states.
struct MarkerCorrespondence {
    /// Plant marker state names, ascending. May be empty.
    std::vector<std::string> plant_markers;
    /// For each plant marker, the sorted marked states of k it pairs with.
    /// Every listed set is nonempty and contains only marked states of k.
    std::map<std::string, std::vector<std::string>> rch;
};

/// Synchronized traversal of g and k collecting the correspondence above.
/// Throws AlphabetError on alphabet mismatch and ContainmentError (with a
/// witness string) when Lm(k) is not a subset of Lm(g).
MarkerCorrespondence marker_correspondence(const Generator& g, const Generator& k);

/// True iff g is nonblocking and every reachable state reaches a marked
/// state within n events on every path (worst first-passage distance <= n).
/// Violations are witnessed per state: a too-long path prefix of length
/// n+1 (kind path, bound = n), a marker-avoiding run into a cycle (kind
/// cycle), or an access path for states that cannot reach marking at all
/// (kind unreachable). The empty generator satisfies every bound.
Verdict is_quantitatively_nonblocking(const Generator& g, std::size_t n);

/// Language-level counterpart: true iff every string of closure(Lm(k)) has
/// all of its first completions to Lm(k) within n events. Decided on
/// trim(k); the empty language is completable for every n.
Verdict is_quantitatively_completable(const Generator& k, std::size_t n);

/// Heterogeneous variant: each plant marker q carries its own budget
/// bounds[q], and every reachable state of trim(k) must reach the k-states
/// pairing with q (rch(q)) on every avoiding path within bounds[q] events.
/// A state that cannot reach them at all violates the existence half of
/// the property; a too-long or unbounded path violates the budget half.
/// `bounds` keys must be exactly the plant markers of the correspondence,
/// which must be nonempty (BoundsError otherwise). Witnesses carry the
/// violated marker's name.
Verdict is_heterogeneously_quantitatively_completable(const Generator& g,
                                                      const Generator& k,
                                                      const BoundSpec& bounds);

/// True iff k is controllable with respect to g: no string shared by both
/// closed behaviors extends in g by an uncontrollable event that k
/// disables. A false verdict carries the access string extended by the
/// offending event. Throws AlphabetError on alphabet mismatch and
/// ContainmentError when k enables a string g does not (L(k) must be a
/// subset of L(g)).
Verdict is_controllable(const Generator& g, const Generator& k);

} // namespace qsup

#endif
