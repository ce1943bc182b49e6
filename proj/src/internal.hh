/* internal.hh -- helpers shared by the library's translation units */

#ifndef QSUP_INTERNAL_HH
#define QSUP_INTERNAL_HH

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsup/analysis.hh"
#include "qsup/automaton.hh"

namespace qsup::internal {

/// Shared precondition of the heterogeneous operations: the marker support
/// must be nonempty and `bounds` must be keyed by exactly those markers,
/// every budget at least 1.
inline void check_bounds_cover(const std::vector<std::string>& plant_markers,
                               const BoundSpec& bounds) {
    if (plant_markers.empty())
        throw BoundsError("the marker correspondence is empty: the "
                          "specification marks nothing the plant reaches");
    std::vector<std::string> keys;
    for (const auto& [q, b] : bounds) {
        (void)b;
        keys.push_back(q);
    }
    if (keys != plant_markers)
        throw BoundsError("bounds must be keyed by exactly the plant markers");
    for (const auto& [q, b] : bounds)
        if (b == 0)
            throw BoundsError("budget for marker " + q + " must be at least 1");
}

inline std::string join_word(const std::vector<std::string>& events) {
    std::string out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i) out += '.';
        out += events[i];
    }
    return out;
}

inline void require_same_alphabet(const Generator& a, const Generator& b,
                                  const char* op) {
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetError(std::string(op) +
                            " requires identical alphabets (names and "
                            "controllability)");
}

/// Shortest access path (event names) from the initial state to `to`,
/// breaking ties lexicographically by expanding events in alphabet order.
inline std::vector<std::string> access_path(const Generator& g, StateId to) {
    std::vector<StateId> par_state(g.num_states(), kNoState);
    std::vector<EventId> par_event(g.num_states(), 0);
    std::vector<bool> seen(g.num_states(), false);
    std::deque<StateId> queue{g.initial()};
    seen[g.initial()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        if (s == to) break;
        for (const auto& [e, t] : g.successors(s)) {
            if (seen[t]) continue;
            seen[t] = true;
            par_state[t] = s;
            par_event[t] = e;
            queue.push_back(t);
        }
    }
    std::vector<std::string> path;
    for (StateId s = to; s != g.initial(); s = par_state[s])
        path.push_back(g.alphabet().event(par_event[s]).name);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Copy of `g` whose marked set is exactly the named states.
inline Generator remark(const Generator& g, const std::set<std::string>& marks) {
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;
    for (StateId s = 0; s < g.num_states(); ++s) {
        names.push_back(g.name(s));
        marked.push_back(marks.count(g.name(s)) > 0);
        succ.push_back(g.successors(s));
    }
    return Generator::build(g.alphabet(), std::move(names),
                            g.empty() ? kNoState : g.initial(), std::move(marked),
                            std::move(succ));
}

/// Copy of `g` with every state marked (closed language as a marked one).
inline Generator remark_all(const Generator& g) {
    std::vector<std::string> names;
    std::vector<bool> marked(g.num_states(), true);
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;
    for (StateId s = 0; s < g.num_states(); ++s) {
        names.push_back(g.name(s));
        succ.push_back(g.successors(s));
    }
    return Generator::build(g.alphabet(), std::move(names),
                            g.empty() ? kNoState : g.initial(), std::move(marked),
                            std::move(succ));
}

/// Reachable synchronous product that keeps the component pair of every
/// state, with a custom marking predicate over (a-marked, b-marked).
struct PairProduct {
    Generator gen{Alphabet{}};
    std::vector<std::pair<StateId, StateId>> pairs; // by product state id
};

template <class Mark>
PairProduct pair_product(const Generator& a, const Generator& b, Mark mark) {
    require_same_alphabet(a, b, "product");
    PairProduct out;
    if (a.empty() || b.empty()) {
        out.gen = Generator(a.alphabet());
        return out;
    }
    auto key = [](StateId x, StateId y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    };
    std::unordered_map<std::uint64_t, StateId> index;
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;

    auto intern = [&](StateId x, StateId y) {
        auto [it, fresh] =
            index.emplace(key(x, y), static_cast<StateId>(out.pairs.size()));
        if (fresh) {
            out.pairs.emplace_back(x, y);
            names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
            marked.push_back(mark(a.marked(x), b.marked(y)));
            succ.emplace_back();
        }
        return it->second;
    };

    intern(a.initial(), b.initial());
    for (StateId id = 0; id < out.pairs.size(); ++id) {
        auto [x, y] = out.pairs[id];
        for (const auto& [e, xt] : a.successors(x)) {
            auto yt = b.step(y, e);
            if (!yt) continue;
            StateId t = intern(xt, *yt);
            succ[id].emplace_back(e, t);
        }
    }
    out.gen = Generator::build(a.alphabet(), std::move(names), 0,
                               std::move(marked), std::move(succ));
    return out;
}

} // namespace qsup::internal

#endif
