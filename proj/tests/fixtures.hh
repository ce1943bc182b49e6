/* fixtures.hh -- shared automata and helpers for the test suite */

#ifndef QSUP_TESTS_FIXTURES_HH
#define QSUP_TESTS_FIXTURES_HH

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "qsup/automaton.hh"
#include "qsup/oracle.hh"

namespace qsup::testing {

/// Builds a generator from compact pieces. Events listed in `uncontrollable`
/// get Ctrl::uncontrollable, the rest are controllable. States are declared
/// in first-appearance order from the transition list plus `extra_states`.
inline Generator make_generator(
    std::vector<std::string> events,
    const std::string& initial,
    std::vector<std::string> marked,
    std::vector<std::tuple<std::string, std::string, std::string>> transitions,
    std::vector<std::string> uncontrollable = {},
    std::vector<std::string> extra_states = {}) {
    RawAutomaton raw;
    for (const auto& e : events) {
        bool unc = false;
        for (const auto& u : uncontrollable)
            if (u == e) unc = true;
        raw.alphabet.push_back({e, unc ? Ctrl::uncontrollable : Ctrl::controllable});
    }
    auto declare = [&raw](const std::string& s) {
        for (const auto& existing : raw.states)
            if (existing == s) return;
        raw.states.push_back(s);
    };
    declare(initial);
    for (const auto& [src, ev, dst] : transitions) {
        declare(src);
        declare(dst);
        raw.transitions.push_back({src, ev, dst});
    }
    for (const auto& s : extra_states) declare(s);
    raw.initial = initial;
    raw.marked = std::move(marked);
    return validate(raw);
}

/// Two-state loop: A (marked, initial) --a--> B --b--> A.
inline Generator fixture_f1() {
    return make_generator({"a", "b"}, "A", {"A"},
                          {{"A", "a", "B"}, {"B", "b", "A"}});
}

/// Lasso: 0 --a--> 1, 1 --b--> 1 (self-loop), 1 --c--> 2 (marked).
inline Generator fixture_f2() {
    return make_generator({"a", "b", "c"}, "0", {"2"},
                          {{"0", "a", "1"}, {"1", "b", "1"}, {"1", "c", "2"}});
}

/// Triangle: 0 --a--> 1 --b--> 2 --c--> 0, marked {1, 2}.
inline Generator fixture_f3() {
    return make_generator({"a", "b", "c"}, "0", {"1", "2"},
                          {{"0", "a", "1"}, {"1", "b", "2"}, {"2", "c", "0"}});
}

/// Six-state generator with an unmarked cycle before the only marker:
/// s0 --11--> s1 --13--> s2 --23--> s3, s3 --19--> s4 --17--> s3,
/// s3 --24--> s5 (marked). Strings may loop s3/s4 forever without marking,
/// so no finite budget completes every prefix.
inline Generator fixture_unbounded_detour() {
    return make_generator({"11", "13", "17", "19", "23", "24"}, "s0", {"s5"},
                          {{"s0", "11", "s1"},
                           {"s1", "13", "s2"},
                           {"s2", "23", "s3"},
                           {"s3", "19", "s4"},
                           {"s4", "17", "s3"},
                           {"s3", "24", "s5"}});
}

/// Four-state loop with two markers: 0 --11--> 1, 1 --29--> 0, 1 --13--> 2,
/// 2 --21--> 0, marked {1, 2}. Every state reaches a marker in one step,
/// but marker 2 specifically is avoidable forever by looping 11/29.
inline Generator fixture_two_marker_loop() {
    return make_generator({"11", "13", "21", "29"}, "0", {"1", "2"},
                          {{"0", "11", "1"},
                           {"1", "29", "0"},
                           {"1", "13", "2"},
                           {"2", "21", "0"}});
}

/// Three states, two markers, a return edge: 0 --a--> 1 (marked) --b--> 2
/// (marked) --c--> 1.
inline Generator fixture_marker_cycle() {
    return make_generator({"a", "b", "c"}, "0", {"1", "2"},
                          {{"0", "a", "1"}, {"1", "b", "2"}, {"2", "c", "1"}});
}

/// Three-state chain 0 --a--> 1 --b--> 2 with only the far end marked.
inline Generator fixture_chain3() {
    return make_generator({"a", "b"}, "0", {"2"}, {{"0", "a", "1"}, {"1", "b", "2"}});
}

/// Set of marked strings of g up to max_len, via the brute enumerator.
inline std::set<Word> marked_upto(const Generator& g, std::size_t max_len) {
    return enumerate_bounded(g, max_len).marked;
}

inline Word word(std::initializer_list<const char*> evs) {
    Word w;
    for (const char* e : evs) w.emplace_back(e);
    return w;
}

} // namespace qsup::testing

#endif
