/* automaton.hh -- deterministic generators and their language operations */

#ifndef QSUP_AUTOMATON_HH
#define QSUP_AUTOMATON_HH

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsup/error.hh"
#include "qsup/verdict.hh"

namespace qsup {

using StateId = std::uint32_t;
using EventId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

enum class Ctrl { controllable, uncontrollable };

/// A named event together with its controllability. Controllability is a
/// property of the event itself and must agree across every automaton that
/// takes part in one computation.
struct Event {
    std::string name;
    Ctrl ctrl = Ctrl::controllable;

    bool operator==(const Event&) const = default;
};

/// An ordered event set. Events are kept sorted by name and indexed densely;
/// an EventId is a position in this order.
class Alphabet {
public:
    Alphabet() = default;

    /// Builds an alphabet from events; throws ValidationError on duplicate
    /// names or names that are empty / contain whitespace.
    static Alphabet from_events(std::vector<Event> events);

    std::size_t size() const { return events_.size(); }
    const Event& event(EventId e) const { return events_[e]; }
    const std::vector<Event>& events() const { return events_; }
    std::optional<EventId> find(std::string_view name) const;
    bool operator==(const Alphabet& other) const { return events_ == other.events_; }

private:
    std::vector<Event> events_; // sorted by name
};

/// A deterministic generator: finite states, a partial transition function,
/// an optional initial state, and a marked subset. The zero-state generator
/// (no initial state) is the canonical representation of the empty language.
/// Generators are immutable once built; every operation returns a new one.
class Generator {
public:
    /// Builds the empty-language generator over the given alphabet.
    explicit Generator(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return names_.size(); }
    std::size_t num_transitions() const { return num_transitions_; }
    bool empty() const { return names_.empty(); }

    bool has_initial() const { return initial_ != kNoState; }
    StateId initial() const { return initial_; }
    const std::string& name(StateId s) const { return names_[s]; }
    bool marked(StateId s) const { return marked_[s]; }
    std::optional<StateId> find_state(std::string_view name) const;

    /// Sorted successor list of a state: pairs (event, target).
    const std::vector<std::pair<EventId, StateId>>& successors(StateId s) const {
        return succ_[s];
    }

    /// The transition function: target of (s, e), or nothing if undefined.
    std::optional<StateId> step(StateId s, EventId e) const;

    /// Runs `events` (event names) from `from`; nothing if the run dies or
    /// an event name is not in the alphabet.
    std::optional<StateId> walk(StateId from,
                                const std::vector<std::string>& events) const;

    /// Low-level constructor used by the operations below; callers must
    /// guarantee determinism and in-range endpoints (validate() is the
    /// checked entry point for untrusted descriptions).
    static Generator build(Alphabet alphabet, std::vector<std::string> names,
                           StateId initial, std::vector<bool> marked,
                           std::vector<std::vector<std::pair<EventId, StateId>>> succ);

private:
    Alphabet alphabet_;
    std::vector<std::string> names_;
    StateId initial_ = kNoState;
    std::vector<bool> marked_;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ_; // sorted by event
    std::size_t num_transitions_ = 0;
};

/// An untrusted automaton description, as produced by the text parser or
/// built by hand in tests.
struct RawAutomaton {
    struct Transition {
        std::string src, event, dst;
    };

    std::vector<Event> alphabet;
    std::vector<std::string> states; // declaration order is kept
    std::optional<std::string> initial;
    std::vector<std::string> marked;
    std::vector<Transition> transitions;
};

/// Checks a raw description and builds a Generator. Throws ValidationError
/// on duplicate (state,event) transitions, references to undeclared states
/// or events, or a missing initial state while states exist.
Generator validate(const RawAutomaton& raw);

/// States reachable from the initial state, in ascending id order.
std::vector<StateId> reachable(const Generator& g);

/// States from which some string reaches a marked state, ascending order.
std::vector<StateId> coreachable(const Generator& g);

/// The subautomaton induced by reachable-and-coreachable states. Returns
/// the empty generator when the initial state is cut. Marked language is
/// preserved.
Generator trim(const Generator& g);

/// True iff every reachable state is coreachable (closure(Lm) = L). A false
/// verdict carries, per blocking state, an access path from the initial
/// state (kind = unreachable).
Verdict is_nonblocking(const Generator& g);

/// Reachable part of the synchronous product. Both closed and marked
/// languages intersect componentwise; a product state is marked iff both
/// components are. Composite state names "(a,b)" are kept for traceability.
/// Synchronization is by event name (AlphabetError when the name sets
/// differ); controllability flags may differ and merge conservatively, an
/// event uncontrollable in either operand staying uncontrollable.
Generator product(const Generator& a, const Generator& b);

/// Totalizes `a` with one absorbing dump state and swaps marking, so the
/// marked language becomes the complement of Lm(a) relative to the
/// alphabet. The complement of the empty generator accepts every string.
Generator complement(const Generator& a);

/// Deterministic generator with Lm = Lm(a) ∪ Lm(b), computed as the
/// complement of the product of the complements, then trimmed.
Generator union_marked(const Generator& a, const Generator& b);

/// How two marked languages relate, plus shortest distinguishing strings.
struct ComparisonResult {
    enum class Relation { equal, a_subset_b, b_subset_a, incomparable };

    Relation relation = Relation::equal;
    /// Shortest string in Lm(a) \ Lm(b), when one exists (lexicographically
    /// least among the shortest), and symmetrically.
    std::optional<std::vector<std::string>> in_a_not_b;
    std::optional<std::vector<std::string>> in_b_not_a;

    bool equal() const { return relation == Relation::equal; }
    /// a ⊆ b (equal counts).
    bool a_within_b() const {
        return relation == Relation::equal || relation == Relation::a_subset_b;
    }
    bool b_within_a() const {
        return relation == Relation::equal || relation == Relation::b_subset_a;
    }
};

/// Decides how Lm(a) and Lm(b) relate by a synchronized walk of the two
/// automata completed with implicit dump states. Throws AlphabetError when
/// the alphabets differ.
ComparisonResult marked_language_compare(const Generator& a, const Generator& b);

/// Same synchronized decision over the closed languages L(a), L(b).
ComparisonResult closed_language_compare(const Generator& a, const Generator& b);

} // namespace qsup

#endif
