/* automaton.cc -- deterministic generators and their language operations */

#include "qsup/automaton.hh"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace qsup {

namespace {

bool usable_name(const std::string& name) {
    if (name.empty()) return false;
    for (unsigned char c : name)
        if (std::isspace(c)) return false;
    return true;
}

} // namespace

Alphabet Alphabet::from_events(std::vector<Event> events) {
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!usable_name(events[i].name))
            throw ValidationError("event name must be nonempty without whitespace");
        if (i > 0 && events[i].name == events[i - 1].name)
            throw ValidationError("duplicate event name: " + events[i].name);
    }
    Alphabet a;
    a.events_ = std::move(events);
    return a;
}

std::optional<EventId> Alphabet::find(std::string_view name) const {
    auto it = std::lower_bound(
        events_.begin(), events_.end(), name,
        [](const Event& e, std::string_view n) { return e.name < n; });
    if (it == events_.end() || it->name != name) return std::nullopt;
    return static_cast<EventId>(it - events_.begin());
}

std::optional<StateId> Generator::find_state(std::string_view name) const {
    for (StateId s = 0; s < names_.size(); ++s)
        if (names_[s] == name) return s;
    return std::nullopt;
}

std::optional<StateId> Generator::step(StateId s, EventId e) const {
    const auto& row = succ_[s];
    auto it = std::lower_bound(
        row.begin(), row.end(), e,
        [](const std::pair<EventId, StateId>& p, EventId ev) { return p.first < ev; });
    if (it == row.end() || it->first != e) return std::nullopt;
    return it->second;
}

std::optional<StateId> Generator::walk(StateId from,
                                       const std::vector<std::string>& events) const {
    StateId at = from;
    for (const auto& name : events) {
        auto e = alphabet_.find(name);
        if (!e) return std::nullopt;
        auto next = step(at, *e);
        if (!next) return std::nullopt;
        at = *next;
    }
    return at;
}

Generator Generator::build(Alphabet alphabet, std::vector<std::string> names,
                           StateId initial, std::vector<bool> marked,
                           std::vector<std::vector<std::pair<EventId, StateId>>> succ) {
    Generator g(std::move(alphabet));
    g.names_ = std::move(names);
    g.marked_ = std::move(marked);
    g.succ_ = std::move(succ);
    g.initial_ = g.names_.empty() ? kNoState : initial;
    g.marked_.resize(g.names_.size(), false);
    g.succ_.resize(g.names_.size());
    for (auto& row : g.succ_) {
        std::sort(row.begin(), row.end());
        g.num_transitions_ += row.size();
    }
    return g;
}

Generator validate(const RawAutomaton& raw) {
    Alphabet alphabet = Alphabet::from_events(raw.alphabet);

    std::unordered_map<std::string, StateId> index;
    for (const auto& name : raw.states) {
        if (!usable_name(name))
            throw ValidationError("state name must be nonempty without whitespace");
        if (!index.emplace(name, static_cast<StateId>(index.size())).second)
            throw ValidationError("duplicate state name: " + name);
    }

    if (!raw.states.empty() && !raw.initial)
        throw ValidationError("an automaton with states needs an initial state");
    StateId initial = kNoState;
    if (raw.initial) {
        auto it = index.find(*raw.initial);
        if (it == index.end())
            throw ValidationError("initial state is not declared: " + *raw.initial);
        initial = it->second;
    }

    std::vector<bool> marked(raw.states.size(), false);
    for (const auto& name : raw.marked) {
        auto it = index.find(name);
        if (it == index.end())
            throw ValidationError("marked state is not declared: " + name);
        marked[it->second] = true;
    }

    std::vector<std::vector<std::pair<EventId, StateId>>> succ(raw.states.size());
    std::set<std::pair<StateId, EventId>> seen;
    for (const auto& t : raw.transitions) {
        auto src = index.find(t.src);
        if (src == index.end())
            throw ValidationError("transition source is not declared: " + t.src);
        auto dst = index.find(t.dst);
        if (dst == index.end())
            throw ValidationError("transition target is not declared: " + t.dst);
        auto ev = alphabet.find(t.event);
        if (!ev)
            throw ValidationError("transition event is not declared: " + t.event);
        if (!seen.emplace(src->second, *ev).second)
            throw ValidationError("nondeterministic transition: " + t.src + " " +
                                  t.event);
        succ[src->second].emplace_back(*ev, dst->second);
    }

    return Generator::build(std::move(alphabet), raw.states, initial,
                            std::move(marked), std::move(succ));
}

std::vector<StateId> reachable(const Generator& g) {
    if (g.empty()) return {};
    std::vector<bool> seen(g.num_states(), false);
    std::vector<StateId> stack{g.initial()};
    seen[g.initial()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (const auto& [e, t] : g.successors(s)) {
            (void)e;
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < g.num_states(); ++s)
        if (seen[s]) out.push_back(s);
    return out;
}

std::vector<StateId> coreachable(const Generator& g) {
    std::vector<std::vector<StateId>> pred(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s)
        for (const auto& [e, t] : g.successors(s)) {
            (void)e;
            pred[t].push_back(s);
        }
    std::vector<bool> seen(g.num_states(), false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < g.num_states(); ++s)
        if (g.marked(s)) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId p : pred[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < g.num_states(); ++s)
        if (seen[s]) out.push_back(s);
    return out;
}

Generator trim(const Generator& g) {
    if (g.empty()) return Generator(g.alphabet());
    std::vector<StateId> rch = reachable(g);
    std::vector<StateId> crch = coreachable(g);
    std::vector<bool> keep(g.num_states(), false);
    {
        std::vector<bool> in_rch(g.num_states(), false);
        for (StateId s : rch) in_rch[s] = true;
        for (StateId s : crch)
            if (in_rch[s]) keep[s] = true;
    }
    if (!keep[g.initial()]) return Generator(g.alphabet());

    std::vector<StateId> remap(g.num_states(), kNoState);
    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId s = 0; s < g.num_states(); ++s)
        if (keep[s]) {
            remap[s] = static_cast<StateId>(names.size());
            names.push_back(g.name(s));
            marked.push_back(g.marked(s));
        }
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(names.size());
    for (StateId s = 0; s < g.num_states(); ++s) {
        if (!keep[s]) continue;
        for (const auto& [e, t] : g.successors(s))
            if (keep[t]) succ[remap[s]].emplace_back(e, remap[t]);
    }
    return Generator::build(g.alphabet(), std::move(names), remap[g.initial()],
                            std::move(marked), std::move(succ));
}

namespace {

/// Shortest access path (event names) from the initial state to `to`,
/// breaking ties lexicographically by expanding events in alphabet order.
std::vector<std::string> access_path(const Generator& g, StateId to) {
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

} // namespace

Verdict is_nonblocking(const Generator& g) {
    Verdict v;
    if (g.empty()) return v;
    std::vector<bool> co(g.num_states(), false);
    for (StateId s : coreachable(g)) co[s] = true;
    for (StateId s : reachable(g)) {
        if (co[s]) continue;
        Witness w;
        w.kind = Witness::Kind::unreachable;
        w.state = g.name(s);
        w.events = access_path(g, s);
        v.witnesses.push_back(std::move(w));
    }
    v.holds = v.witnesses.empty();
    return v;
}

namespace {

void require_same_alphabet(const Generator& a, const Generator& b,
                           const char* op) {
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetError(std::string(op) +
                            " requires identical alphabets (names and "
                            "controllability)");
}

} // namespace

Generator product(const Generator& a, const Generator& b) {
    // Synchronization is by event name; controllability flags may differ
    // between the operands and merge conservatively (uncontrollable wins).
    if (a.alphabet().size() != b.alphabet().size())
        throw AlphabetError("product requires identical event names");
    std::vector<Event> merged;
    for (EventId e = 0; e < a.alphabet().size(); ++e) {
        const Event& ea = a.alphabet().event(e);
        const Event& eb = b.alphabet().event(e);
        if (ea.name != eb.name)
            throw AlphabetError("product requires identical event names");
        merged.push_back({ea.name, ea.ctrl == Ctrl::uncontrollable ||
                                           eb.ctrl == Ctrl::uncontrollable
                                       ? Ctrl::uncontrollable
                                       : Ctrl::controllable});
    }
    Alphabet alphabet = Alphabet::from_events(merged);
    if (a.empty() || b.empty()) return Generator(alphabet);

    auto key = [](StateId x, StateId y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    };
    std::unordered_map<std::uint64_t, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;

    auto intern = [&](StateId x, StateId y) {
        auto [it, fresh] = index.emplace(key(x, y), static_cast<StateId>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(x, y);
            names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
            marked.push_back(a.marked(x) && b.marked(y));
            succ.emplace_back();
        }
        return it->second;
    };

    intern(a.initial(), b.initial());
    for (StateId id = 0; id < pairs.size(); ++id) {
        auto [x, y] = pairs[id];
        for (const auto& [e, xt] : a.successors(x)) {
            auto yt = b.step(y, e);
            if (!yt) continue;
            StateId t = intern(xt, *yt);
            succ[id].emplace_back(e, t);
        }
    }
    return Generator::build(std::move(alphabet), std::move(names), 0,
                            std::move(marked), std::move(succ));
}

Generator complement(const Generator& a) {
    std::string dump = "dump";
    while (a.find_state(dump)) dump += '_';

    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;
    for (StateId s = 0; s < a.num_states(); ++s) {
        names.push_back(a.name(s));
        marked.push_back(!a.marked(s));
        succ.push_back(a.successors(s));
    }
    StateId dump_id = static_cast<StateId>(names.size());
    names.push_back(dump);
    marked.push_back(true);
    succ.emplace_back();
    for (StateId s = 0; s < dump_id; ++s)
        for (EventId e = 0; e < a.alphabet().size(); ++e)
            if (!a.step(s, e)) succ[s].emplace_back(e, dump_id);
    for (EventId e = 0; e < a.alphabet().size(); ++e)
        succ[dump_id].emplace_back(e, dump_id);

    StateId initial = a.empty() ? dump_id : a.initial();
    return Generator::build(a.alphabet(), std::move(names), initial,
                            std::move(marked), std::move(succ));
}

Generator union_marked(const Generator& a, const Generator& b) {
    require_same_alphabet(a, b, "union");
    return trim(complement(product(complement(a), complement(b))));
}

namespace {

/// Synchronized breadth-first comparison of two automata completed with
/// implicit dump states. `accepts` classifies one side of a pair: the live
/// state (or nothing, once that side is dead) that the shared string leads
/// to. First mismatches in BFS order are the shortest distinguishing
/// strings, lexicographically least among those.
template <class Accepts>
ComparisonResult compare_languages(const Generator& a, const Generator& b,
                                   Accepts accepts) {
    require_same_alphabet(a, b, "language comparison");

    // Pair (x, y) where kNoState encodes the dead/dump side.
    auto key = [](StateId x, StateId y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    };
    struct Node {
        StateId x, y;
        std::vector<std::string> word;
    };
    std::unordered_set<std::uint64_t> seen;
    std::deque<Node> queue;
    StateId ia = a.empty() ? kNoState : a.initial();
    StateId ib = b.empty() ? kNoState : b.initial();
    queue.push_back({ia, ib, {}});
    seen.insert(key(ia, ib));

    ComparisonResult r;
    while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        std::optional<StateId> xa =
            n.x == kNoState ? std::nullopt : std::optional<StateId>(n.x);
        std::optional<StateId> xb =
            n.y == kNoState ? std::nullopt : std::optional<StateId>(n.y);
        bool in_a = accepts(a, xa);
        bool in_b = accepts(b, xb);
        if (in_a && !in_b && !r.in_a_not_b) r.in_a_not_b = n.word;
        if (in_b && !in_a && !r.in_b_not_a) r.in_b_not_a = n.word;
        if (r.in_a_not_b && r.in_b_not_a) break;

        for (EventId e = 0; e < a.alphabet().size(); ++e) {
            StateId tx = kNoState, ty = kNoState;
            if (xa) {
                auto t = a.step(*xa, e);
                if (t) tx = *t;
            }
            if (xb) {
                auto t = b.step(*xb, e);
                if (t) ty = *t;
            }
            if (tx == kNoState && ty == kNoState) continue;
            if (!seen.insert(key(tx, ty)).second) continue;
            Node next{tx, ty, n.word};
            next.word.push_back(a.alphabet().event(e).name);
            queue.push_back(std::move(next));
        }
    }

    if (r.in_a_not_b && r.in_b_not_a)
        r.relation = ComparisonResult::Relation::incomparable;
    else if (r.in_a_not_b)
        r.relation = ComparisonResult::Relation::b_subset_a;
    else if (r.in_b_not_a)
        r.relation = ComparisonResult::Relation::a_subset_b;
    else
        r.relation = ComparisonResult::Relation::equal;
    return r;
}

} // namespace

ComparisonResult marked_language_compare(const Generator& a, const Generator& b) {
    return compare_languages(
        a, b, [](const Generator& g, std::optional<StateId> s) {
            return s.has_value() && g.marked(*s);
        });
}

ComparisonResult closed_language_compare(const Generator& a, const Generator& b) {
    return compare_languages(a, b,
                             [](const Generator&, std::optional<StateId> s) {
                                 return s.has_value();
                             });
}

} // namespace qsup
