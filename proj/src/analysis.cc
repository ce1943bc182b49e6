/* analysis.cc -- first-passage profiles and quantitative nonblocking checks */

#include "qsup/analysis.hh"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>

#include "internal.hh"

namespace qsup {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

/// Everything first_passage_profile needs to classify states against one
/// target set: membership flags and, over the non-target states that can
/// still reach the target (the "pending" region), which states can run into
/// a cycle of that region.
struct PassageAnalysis {
    std::vector<bool> is_target;
    std::vector<bool> canreach;  // some run enters the target
    std::vector<bool> pending;   // non-target and canreach
    std::vector<bool> on_cycle;  // pending and inside a cyclic component
    std::vector<bool> poisoned;  // pending and a pending-region cycle is reachable
    std::vector<std::int64_t> longest; // pending, unpoisoned: worst first-passage
};

PassageAnalysis analyze(const Generator& g, const std::vector<bool>& is_target) {
    const std::size_t n = g.num_states();
    PassageAnalysis pa;
    pa.is_target = is_target;

    std::vector<std::vector<StateId>> pred(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& [e, t] : g.successors(s)) {
            (void)e;
            pred[t].push_back(s);
        }

    pa.canreach.assign(n, false);
    {
        std::vector<StateId> stack;
        for (StateId s = 0; s < n; ++s)
            if (is_target[s]) {
                pa.canreach[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (StateId p : pred[s])
                if (!pa.canreach[p]) {
                    pa.canreach[p] = true;
                    stack.push_back(p);
                }
        }
    }

    pa.pending.assign(n, false);
    for (StateId s = 0; s < n; ++s)
        pa.pending[s] = pa.canreach[s] && !is_target[s];

    // Strongly connected components of the pending region (iterative
    // Tarjan); a component is cyclic when it has more than one state or a
    // self-loop.
    std::vector<std::uint32_t> idx(n, kUnset), low(n, 0);
    std::vector<bool> onstk(n, false);
    std::vector<StateId> tstack;
    std::vector<std::int64_t> comp(n, -1);
    std::vector<std::size_t> comp_size;
    std::uint32_t next_index = 0;

    struct Frame {
        StateId v;
        std::size_t ei;
    };
    for (StateId root = 0; root < n; ++root) {
        if (!pa.pending[root] || idx[root] != kUnset) continue;
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = next_index++;
        tstack.push_back(root);
        onstk[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& row = g.successors(f.v);
            bool descended = false;
            while (f.ei < row.size()) {
                StateId w = row[f.ei].second;
                ++f.ei;
                if (!pa.pending[w]) continue;
                if (idx[w] == kUnset) {
                    idx[w] = low[w] = next_index++;
                    tstack.push_back(w);
                    onstk[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (onstk[w]) low[f.v] = std::min(low[f.v], idx[w]);
            }
            if (descended) continue;
            if (low[f.v] == idx[f.v]) {
                auto c = static_cast<std::int64_t>(comp_size.size());
                comp_size.push_back(0);
                StateId w;
                do {
                    w = tstack.back();
                    tstack.pop_back();
                    onstk[w] = false;
                    comp[w] = c;
                    ++comp_size[static_cast<std::size_t>(c)];
                } while (w != f.v);
            }
            StateId done = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[done]);
        }
    }

    std::vector<bool> comp_cyclic(comp_size.size(), false);
    for (std::size_t c = 0; c < comp_size.size(); ++c)
        comp_cyclic[c] = comp_size[c] > 1;
    for (StateId s = 0; s < n; ++s) {
        if (!pa.pending[s]) continue;
        for (const auto& [e, t] : g.successors(s)) {
            (void)e;
            if (t == s) comp_cyclic[static_cast<std::size_t>(comp[s])] = true;
        }
    }
    pa.on_cycle.assign(n, false);
    for (StateId s = 0; s < n; ++s)
        pa.on_cycle[s] =
            pa.pending[s] && comp_cyclic[static_cast<std::size_t>(comp[s])];

    pa.poisoned.assign(n, false);
    {
        std::vector<StateId> stack;
        for (StateId s = 0; s < n; ++s)
            if (pa.on_cycle[s]) {
                pa.poisoned[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (StateId p : pred[s])
                if (pa.pending[p] && !pa.poisoned[p]) {
                    pa.poisoned[p] = true;
                    stack.push_back(p);
                }
        }
    }

    // Longest first-passage distance over the unpoisoned pending states;
    // their forward slice of the pending region is acyclic, so a memoized
    // post-order walk suffices.
    pa.longest.assign(n, -1);
    auto option = [&](StateId t) -> std::int64_t {
        if (pa.is_target[t]) return 1;
        if (pa.pending[t] && !pa.poisoned[t] && pa.longest[t] >= 0)
            return 1 + pa.longest[t];
        return -1;
    };
    for (StateId root = 0; root < n; ++root) {
        if (!pa.pending[root] || pa.poisoned[root] || pa.longest[root] >= 0)
            continue;
        std::vector<Frame> frames{{root, 0}};
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& row = g.successors(f.v);
            bool descended = false;
            while (f.ei < row.size()) {
                StateId w = row[f.ei].second;
                ++f.ei;
                if (pa.pending[w] && !pa.poisoned[w] && pa.longest[w] < 0) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
            }
            if (descended) continue;
            std::int64_t best = 0;
            for (const auto& [e, t] : row) {
                (void)e;
                best = std::max(best, option(t));
            }
            pa.longest[f.v] = best;
            frames.pop_back();
        }
    }
    return pa;
}

/// A longest first-passage string from a pending, unpoisoned state: greedily
/// follow any successor that realizes the remaining distance, preferring the
/// alphabet-least event among maximizers.
std::vector<std::string> finite_witness(const Generator& g,
                                        const PassageAnalysis& pa, StateId from) {
    std::vector<std::string> events;
    StateId at = from;
    while (!pa.is_target[at]) {
        for (const auto& [e, t] : g.successors(at)) {
            std::int64_t val = -1;
            if (pa.is_target[t])
                val = 1;
            else if (pa.pending[t] && !pa.poisoned[t])
                val = 1 + pa.longest[t];
            if (val == pa.longest[at]) {
                events.push_back(g.alphabet().event(e).name);
                at = t;
                break;
            }
        }
    }
    return events;
}

/// A target-avoiding run from a poisoned state into a cycle of the pending
/// region: shortest access to the nearest state of a cyclic component,
/// followed by a shortest cycle through that state.
std::pair<std::vector<std::string>, std::size_t> infinite_witness(
    const Generator& g, const PassageAnalysis& pa, StateId from) {
    const std::size_t n = g.num_states();

    std::vector<StateId> par_state(n, kNoState);
    std::vector<EventId> par_event(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue{from};
    seen[from] = true;
    StateId anchor = kNoState;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        if (pa.on_cycle[s]) {
            anchor = s;
            break;
        }
        for (const auto& [e, t] : g.successors(s)) {
            if (!pa.pending[t] || seen[t]) continue;
            seen[t] = true;
            par_state[t] = s;
            par_event[t] = e;
            queue.push_back(t);
        }
    }

    std::vector<std::string> events;
    for (StateId s = anchor; s != from; s = par_state[s])
        events.push_back(g.alphabet().event(par_event[s]).name);
    std::reverse(events.begin(), events.end());
    std::size_t cycle_start = events.size();

    // Shortest pending-region cycle through the anchor.
    std::vector<StateId> cpar_state(n, kNoState);
    std::vector<EventId> cpar_event(n, 0);
    std::vector<bool> cseen(n, false);
    std::deque<StateId> cqueue;
    std::vector<std::string> cycle;
    auto close = [&](StateId last, EventId e) {
        std::vector<std::string> body;
        for (StateId s = last; s != anchor; s = cpar_state[s])
            body.push_back(g.alphabet().event(cpar_event[s]).name);
        std::reverse(body.begin(), body.end());
        body.push_back(g.alphabet().event(e).name);
        cycle = std::move(body);
    };
    for (const auto& [e, t] : g.successors(anchor)) {
        if (!pa.pending[t]) continue;
        if (t == anchor) {
            close(anchor, e);
            break;
        }
        if (!cseen[t]) {
            cseen[t] = true;
            cpar_state[t] = anchor;
            cpar_event[t] = e;
            cqueue.push_back(t);
        }
    }
    while (cycle.empty() && !cqueue.empty()) {
        StateId s = cqueue.front();
        cqueue.pop_front();
        bool closed = false;
        for (const auto& [e, t] : g.successors(s)) {
            if (!pa.pending[t]) continue;
            if (t == anchor) {
                close(s, e);
                closed = true;
                break;
            }
            if (!cseen[t]) {
                cseen[t] = true;
                cpar_state[t] = s;
                cpar_event[t] = e;
                cqueue.push_back(t);
            }
        }
        if (closed) break;
    }

    events.insert(events.end(), cycle.begin(), cycle.end());
    return {std::move(events), cycle_start};
}

std::map<StateId, FirstPassage> profile_against(const Generator& g,
                                                const std::vector<bool>& is_target) {
    std::map<StateId, FirstPassage> out;
    if (g.empty()) return out;

    PassageAnalysis pa = analyze(g, is_target);

    for (StateId s : reachable(g)) {
        FirstPassage fp;
        if (pa.is_target[s]) {
            fp.kind = FirstPassage::Kind::finite;
            fp.steps = 0;
        } else if (!pa.canreach[s]) {
            fp.kind = FirstPassage::Kind::unreachable;
        } else if (pa.poisoned[s]) {
            fp.kind = FirstPassage::Kind::infinite;
            auto [events, cycle_start] = infinite_witness(g, pa, s);
            fp.witness = std::move(events);
            fp.cycle_start = cycle_start;
        } else {
            fp.kind = FirstPassage::Kind::finite;
            fp.steps = static_cast<std::size_t>(pa.longest[s]);
            fp.witness = finite_witness(g, pa, s);
        }
        out.emplace(s, std::move(fp));
    }
    return out;
}

} // namespace

std::map<StateId, FirstPassage> first_passage_profile(
    const Generator& g, const std::vector<std::string>& targets) {
    std::vector<bool> is_target(g.num_states(), false);
    for (const auto& name : targets) {
        auto s = g.find_state(name);
        if (!s) throw ValidationError("unknown target state: " + name);
        is_target[*s] = true;
    }
    return profile_against(g, is_target);
}

MarkerCorrespondence marker_correspondence(const Generator& g, const Generator& k) {
    internal::require_same_alphabet(g, k, "marker correspondence");
    ComparisonResult cmp = marked_language_compare(k, g);
    if (!cmp.a_within_b())
        throw ContainmentError(
            "the marked language of the specification is not contained in the "
            "plant's",
            internal::join_word(*cmp.in_a_not_b));

    MarkerCorrespondence out;
    if (g.empty() || k.empty()) return out;
    auto pp = internal::pair_product(g, k, [](bool a, bool b) { return a && b; });
    std::map<std::string, std::set<std::string>> acc;
    for (StateId id = 0; id < pp.pairs.size(); ++id) {
        auto [q, x] = pp.pairs[id];
        if (k.marked(x)) acc[g.name(q)].insert(k.name(x));
    }
    for (auto& [q, xs] : acc) {
        out.plant_markers.push_back(q);
        out.rch.emplace(q, std::vector<std::string>(xs.begin(), xs.end()));
    }
    return out;
}

Verdict is_quantitatively_nonblocking(const Generator& g, std::size_t n) {
    if (n == 0) throw ValidationError("step budget must be at least 1");
    Verdict v;
    if (g.empty()) return v;

    std::vector<bool> is_target(g.num_states(), false);
    for (StateId s = 0; s < g.num_states(); ++s) is_target[s] = g.marked(s);

    for (const auto& [s, fp] : profile_against(g, is_target)) {
        Witness w;
        w.state = g.name(s);
        switch (fp.kind) {
        case FirstPassage::Kind::finite:
            if (fp.steps <= n) continue;
            w.kind = Witness::Kind::path;
            w.events.assign(fp.witness.begin(), fp.witness.begin() + n + 1);
            w.bound = n;
            break;
        case FirstPassage::Kind::infinite:
            w.kind = Witness::Kind::cycle;
            w.events = fp.witness;
            w.bound = n;
            break;
        case FirstPassage::Kind::unreachable:
            w.kind = Witness::Kind::unreachable;
            w.events = internal::access_path(g, s);
            break;
        }
        v.witnesses.push_back(std::move(w));
    }
    v.holds = v.witnesses.empty();
    return v;
}

Verdict is_quantitatively_completable(const Generator& k, std::size_t n) {
    Generator kt = trim(k);
    return is_quantitatively_nonblocking(kt, n);
}

Verdict is_heterogeneously_quantitatively_completable(const Generator& g,
                                                      const Generator& k,
                                                      const BoundSpec& bounds) {
    MarkerCorrespondence corr = marker_correspondence(g, k);
    internal::check_bounds_cover(corr.plant_markers, bounds);

    Generator kt = trim(k);
    Verdict v;
    for (const auto& q : corr.plant_markers) {
        std::size_t budget = bounds.at(q);
        std::vector<bool> is_target(kt.num_states(), false);
        for (const auto& name : corr.rch.at(q)) {
            auto s = kt.find_state(name);
            if (s) is_target[*s] = true;
        }
        for (const auto& [s, fp] : profile_against(kt, is_target)) {
            Witness w;
            w.state = kt.name(s);
            w.marker = q;
            switch (fp.kind) {
            case FirstPassage::Kind::finite:
                if (fp.steps <= budget) continue;
                w.kind = Witness::Kind::path;
                w.events.assign(fp.witness.begin(),
                                fp.witness.begin() + budget + 1);
                w.bound = budget;
                break;
            case FirstPassage::Kind::infinite:
                w.kind = Witness::Kind::cycle;
                w.events = fp.witness;
                w.bound = budget;
                break;
            case FirstPassage::Kind::unreachable:
                w.kind = Witness::Kind::unreachable;
                w.events = internal::access_path(kt, s);
                break;
            }
            v.witnesses.push_back(std::move(w));
        }
    }
    v.holds = v.witnesses.empty();
    return v;
}

Verdict is_controllable(const Generator& g, const Generator& k) {
    internal::require_same_alphabet(g, k, "controllability");
    Verdict v;
    if (k.empty()) return v;
    if (g.empty())
        throw ContainmentError(
            "the specification's closed language is not contained in the "
            "plant's",
            "");

    struct Node {
        StateId q, x;
        std::vector<std::string> word;
    };
    auto key = [](StateId q, StateId x) {
        return (static_cast<std::uint64_t>(q) << 32) | x;
    };
    std::set<std::uint64_t> seen;
    std::deque<Node> queue;
    queue.push_back({g.initial(), k.initial(), {}});
    seen.insert(key(g.initial(), k.initial()));

    while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < g.alphabet().size(); ++e) {
            auto qt = g.step(n.q, e);
            auto xt = k.step(n.x, e);
            if (xt && !qt) {
                auto word = n.word;
                word.push_back(g.alphabet().event(e).name);
                throw ContainmentError(
                    "the specification's closed language is not contained in "
                    "the plant's",
                    internal::join_word(word));
            }
            if (qt && !xt) {
                if (g.alphabet().event(e).ctrl == Ctrl::uncontrollable) {
                    Witness w;
                    w.kind = Witness::Kind::path;
                    w.state = k.name(n.x);
                    w.events = n.word;
                    w.events.push_back(g.alphabet().event(e).name);
                    v.witnesses.push_back(std::move(w));
                    v.holds = false;
                    return v;
                }
                continue;
            }
            if (qt && xt && seen.insert(key(*qt, *xt)).second) {
                Node next{*qt, *xt, n.word};
                next.word.push_back(g.alphabet().event(e).name);
                queue.push_back(std::move(next));
            }
        }
    }
    return v;
}

} // namespace qsup
