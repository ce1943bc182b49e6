/* oracle.hh -- brute-force reference implementations for differential tests */

#ifndef QSUP_ORACLE_HH
#define QSUP_ORACLE_HH

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qsup/automaton.hh"

namespace qsup {

/// A string over the alphabet, as a sequence of event names.
using Word = std::vector<std::string>;

/// Explicit finite slices of the closed and marked languages.
struct BoundedLanguage {
    std::size_t max_len = 0;
    std::set<Word> closed; // strings of L(g) with length <= max_len
    std::set<Word> marked; // strings of Lm(g) with length <= max_len
};

/// Enumerates every string of length <= max_len of L(g) and Lm(g) by
/// exhaustive expansion. Throws BudgetError when |alphabet|^max_len exceeds
/// `cap` (guards against accidental blow-up; the default allows about a
/// million candidate strings).
BoundedLanguage enumerate_bounded(const Generator& g, std::size_t max_len,
                                  std::uint64_t cap = 1'000'000);

/// Searches for a refutation of n-step completability of Lm(k): a string s
/// of closure(Lm(k)) with a first completion t to Lm(k) longer than n
/// events. Scans s then t shortest-first, ties broken lexicographically,
/// so the result is deterministic; search is cut off at strings of length
/// max_len. Returns nothing when no refutation exists in that window
/// (which is not a proof that the bound holds). Throws BudgetError as
/// enumerate_bounded.
std::optional<std::pair<Word, Word>> refute_qc(const Generator& k, std::size_t n,
                                               std::size_t max_len);

/// Brute-force underapproximation of the supremal n-completable
/// sublanguage: folds the marked-language union of every transition-subset
/// subautomaton of k whose trim is n-completable. Exponential; requires k
/// to have at most `max_transitions` transitions (ValidationError beyond).
/// The union of completable languages is completable, so the result is
/// always contained in the true supremum; it may fall short when the
/// supremum is not realizable by any subautomaton.
Generator brute_supremal_subautomaton(const Generator& k, std::size_t n,
                                      std::size_t max_transitions = 12);

/// Parameters of the random generator sampler. Counts must be >= 1 and
/// fractions within [0,1] (ValidationError otherwise).
struct SamplerParams {
    std::uint64_t seed = 0;
    std::size_t max_states = 6;
    std::size_t event_count = 3;
    double controllable_fraction = 0.7; // chance each event is controllable
    double marked_fraction = 0.3;       // chance each state is marked
    double transition_density = 0.35;   // chance each (state,event) is defined
};

/// Draws a pseudo-random deterministic generator and trims it. Same seed,
/// same result, on every platform. Events are named "a", "b", ...; states
/// "0", "1", ... When marked_fraction > 0, at least one state is marked
/// before trimming, so any nonempty result has a marked state. May return
/// the empty generator when trimming cuts the initial state.
Generator sample_generator(const SamplerParams& params);

} // namespace qsup

#endif
