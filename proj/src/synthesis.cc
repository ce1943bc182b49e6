/* synthesis.cc -- supremal sublanguage synthesis under step budgets */

#include "qsup/synthesis.hh"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "internal.hh"

namespace qsup {

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

void note(SynthesisTrace* trace, std::string text) {
    if (trace) trace->steps.push_back({std::move(text)});
}

} // namespace

Generator sup_qc(const Generator& k, std::size_t n, Frontier frontier,
                 SynthesisTrace* trace) {
    if (n == 0) throw ValidationError("step budget must be at least 1");
    Generator kt = trim(k);
    if (kt.empty()) {
        note(trace, "input trims to the empty language");
        return kt;
    }

    // Counter-augmented exploration: a state is a pair (x, d) where d counts
    // the events consumed since the last marked state (d = 0 on and right
    // after markers, and at the initial state). Transitions that would reach
    // d = n without arriving at a marked state are dropped.
    const std::size_t base = kt.num_states();
    std::vector<std::uint32_t> id_of(base * n, kUnvisited);
    std::vector<std::pair<StateId, std::uint32_t>> nodes;
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ;
    std::deque<StateId> work;

    auto intern = [&](StateId x, std::uint32_t d) {
        std::size_t flat = static_cast<std::size_t>(x) * n + d;
        if (id_of[flat] == kUnvisited) {
            id_of[flat] = static_cast<std::uint32_t>(nodes.size());
            nodes.emplace_back(x, d);
            names.push_back("(" + kt.name(x) + "," + std::to_string(d) + ")");
            marked.push_back(kt.marked(x) && d == 0);
            succ.emplace_back();
            work.push_back(id_of[flat]);
        }
        return static_cast<StateId>(id_of[flat]);
    };

    std::size_t dropped = 0;
    intern(kt.initial(), 0);
    while (!work.empty()) {
        StateId id;
        if (frontier == Frontier::stack) {
            id = work.back();
            work.pop_back();
        } else {
            id = work.front();
            work.pop_front();
        }
        auto [x, d] = nodes[id];
        for (const auto& [e, y] : kt.successors(x)) {
            std::uint32_t nd =
                (kt.marked(x) || kt.marked(y)) ? 0 : d + 1;
            if (nd == n) {
                // only possible into an unmarked successor
                ++dropped;
                continue;
            }
            StateId t = intern(y, nd);
            succ[id].emplace_back(e, t);
        }
    }

    if (trace) {
        trace->counter_states_visited += nodes.size();
        trace->iterations += 1;
    }
    note(trace, "expanded " + std::to_string(nodes.size()) +
                    " counter states, dropped " + std::to_string(dropped) +
                    " over-budget transitions");

    return trim(Generator::build(kt.alphabet(), std::move(names), 0,
                                 std::move(marked), std::move(succ)));
}

namespace {

/// Recognizer of every string of length <= n-1: an n-state chain, all
/// marked, advancing on every event.
Generator short_strings(const Alphabet& alphabet, std::size_t n) {
    std::vector<std::string> names;
    std::vector<bool> marked(n, true);
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("c" + std::to_string(i));
        if (i + 1 < n)
            for (EventId e = 0; e < alphabet.size(); ++e)
                succ[i].emplace_back(e, static_cast<StateId>(i + 1));
    }
    return Generator::build(alphabet, std::move(names), 0, std::move(marked),
                            std::move(succ));
}

/// Recognizer of Lm(kt) extended by at most n arbitrary events. States
/// track how many events ago the nearest marked prefix ended: (x, c) with
/// c <= n is accepting; (x, inf) has no marked prefix within n; the tail
/// states continue counting after the string leaves closure(Lm(kt)).
Generator marked_within(const Generator& kt, std::size_t n) {
    const std::size_t base = kt.num_states();
    const std::size_t per = n + 2; // c in 0..n, plus the saturated slot
    const std::size_t sat = n + 1;
    const StateId first_tail = static_cast<StateId>(base * per);
    const StateId dead = static_cast<StateId>(base * per + n);
    const std::size_t total = base * per + n + 1;

    auto slot = [&](StateId x, std::size_t c) {
        return static_cast<StateId>(static_cast<std::size_t>(x) * per + c);
    };
    auto tail = [&](std::size_t j) { // j in 1..n
        return static_cast<StateId>(first_tail + j - 1);
    };

    std::vector<std::string> names(total);
    std::vector<bool> marked(total, false);
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(total);
    const std::size_t num_events = kt.alphabet().size();

    for (StateId x = 0; x < base; ++x) {
        for (std::size_t c = 0; c <= sat; ++c) {
            StateId at = slot(x, c);
            names[at] = "(" + kt.name(x) + "," +
                        (c == sat ? std::string("inf") : std::to_string(c)) + ")";
            marked[at] = c <= n;
            for (EventId e = 0; e < num_events; ++e) {
                auto y = kt.step(x, e);
                StateId to;
                if (y) {
                    if (kt.marked(*y))
                        to = slot(*y, 0);
                    else if (c + 1 <= n)
                        to = slot(*y, c + 1);
                    else
                        to = slot(*y, sat);
                } else {
                    if (c + 1 <= n)
                        to = tail(c + 1);
                    else
                        to = dead;
                }
                succ[at].emplace_back(e, to);
            }
        }
    }
    for (std::size_t j = 1; j <= n; ++j) {
        names[tail(j)] = "t" + std::to_string(j);
        marked[tail(j)] = true;
        for (EventId e = 0; e < num_events; ++e)
            succ[tail(j)].emplace_back(e, j < n ? tail(j + 1) : dead);
    }
    names[dead] = "deadend";
    for (EventId e = 0; e < num_events; ++e) succ[dead].emplace_back(e, dead);

    StateId initial = kt.marked(kt.initial()) ? slot(kt.initial(), 0)
                                              : slot(kt.initial(), sat);
    return Generator::build(kt.alphabet(), std::move(names), initial,
                            std::move(marked), std::move(succ));
}

/// Restriction of `a` to the part reachable through marked states only,
/// with every surviving state marked: accepts the strings all of whose
/// prefixes are accepted by `a`.
Generator marked_prefix_closure(const Generator& a) {
    if (a.empty() || !a.marked(a.initial())) return Generator(a.alphabet());
    std::vector<bool> keep(a.num_states(), false);
    std::vector<StateId> stack{a.initial()};
    keep[a.initial()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (const auto& [e, t] : a.successors(s)) {
            (void)e;
            if (a.marked(t) && !keep[t]) {
                keep[t] = true;
                stack.push_back(t);
            }
        }
    }
    std::vector<StateId> remap(a.num_states(), kNoState);
    std::vector<std::string> names;
    for (StateId s = 0; s < a.num_states(); ++s)
        if (keep[s]) {
            remap[s] = static_cast<StateId>(names.size());
            names.push_back(a.name(s));
        }
    std::vector<bool> marked(names.size(), true);
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(names.size());
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!keep[s]) continue;
        for (const auto& [e, t] : a.successors(s))
            if (keep[t]) succ[remap[s]].emplace_back(e, remap[t]);
    }
    return Generator::build(a.alphabet(), std::move(names), remap[a.initial()],
                            std::move(marked), std::move(succ));
}

} // namespace

Generator sup_qc_language(const Generator& k, std::size_t n,
                          SynthesisTrace* trace) {
    if (n == 0) throw ValidationError("step budget must be at least 1");
    Generator kt = trim(k);
    if (kt.empty()) {
        note(trace, "input trims to the empty language");
        return kt;
    }

    // Strings that keep the completion obligation within budget: either
    // short, or a marked string extended by at most n events -- intersected
    // with closure(Lm(kt)).
    Generator a_short = short_strings(kt.alphabet(), n);
    Generator a_recent = marked_within(kt, n);
    Generator a_either = union_marked(a_short, a_recent);
    Generator a_bounded = product(internal::remark_all(kt), a_either);
    // Keep the strings all of whose prefixes stay within budget, then
    // return to the original marking.
    Generator a_pre = marked_prefix_closure(a_bounded);
    Generator result = trim(product(a_pre, kt));

    if (trace) trace->iterations += 1;
    note(trace, "language route: bounded recognizer " +
                    std::to_string(a_bounded.num_states()) +
                    " states, prefix-closed part " +
                    std::to_string(a_pre.num_states()) + " states");
    return result;
}

Generator supcon(const Generator& g, const Generator& k, SynthesisTrace* trace) {
    internal::require_same_alphabet(g, k, "supcon");
    ComparisonResult cmp = marked_language_compare(k, g);
    if (!cmp.a_within_b())
        throw ContainmentError(
            "the marked language of the specification is not contained in the "
            "plant's",
            internal::join_word(*cmp.in_a_not_b));

    auto pp = internal::pair_product(g, k,
                                     [](bool a, bool b) { return a && b; });
    if (pp.gen.empty()) return pp.gen;

    const std::size_t n = pp.gen.num_states();
    std::vector<bool> alive(n, true);
    std::size_t rounds = 0;

    while (true) {
        ++rounds;
        // Trim within the alive set: forward reachability from the initial
        // state, backward reachability from alive marked states.
        std::vector<bool> fwd(n, false);
        if (alive[0]) {
            std::vector<StateId> stack{0};
            fwd[0] = true;
            while (!stack.empty()) {
                StateId s = stack.back();
                stack.pop_back();
                for (const auto& [e, t] : pp.gen.successors(s)) {
                    (void)e;
                    if (alive[t] && !fwd[t]) {
                        fwd[t] = true;
                        stack.push_back(t);
                    }
                }
            }
        }
        std::vector<std::vector<StateId>> pred(n);
        for (StateId s = 0; s < n; ++s) {
            if (!fwd[s]) continue;
            for (const auto& [e, t] : pp.gen.successors(s)) {
                (void)e;
                if (fwd[t]) pred[t].push_back(s);
            }
        }
        std::vector<bool> keep(n, false);
        {
            std::vector<StateId> stack;
            for (StateId s = 0; s < n; ++s)
                if (fwd[s] && pp.gen.marked(s)) {
                    keep[s] = true;
                    stack.push_back(s);
                }
            while (!stack.empty()) {
                StateId s = stack.back();
                stack.pop_back();
                for (StateId p : pred[s])
                    if (!keep[p]) {
                        keep[p] = true;
                        stack.push_back(p);
                    }
            }
        }
        alive = keep;
        if (!alive[0]) {
            note(trace, "supcon: initial state deleted, result empty");
            if (trace) trace->iterations += rounds;
            return Generator(g.alphabet());
        }

        // Delete states where the plant can fire an uncontrollable event the
        // candidate no longer follows.
        std::size_t bad = 0;
        for (StateId s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            StateId q = pp.pairs[s].first;
            for (const auto& [e, qt] : g.successors(q)) {
                (void)qt;
                if (g.alphabet().event(e).ctrl != Ctrl::uncontrollable) continue;
                auto t = pp.gen.step(s, e);
                if (!t || !alive[*t]) {
                    alive[s] = false;
                    ++bad;
                    break;
                }
            }
        }
        if (bad == 0) break;
        note(trace, "supcon: removed " + std::to_string(bad) +
                        " uncontrollable states");
    }
    if (trace) trace->iterations += rounds;

    std::vector<StateId> remap(n, kNoState);
    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId s = 0; s < n; ++s)
        if (alive[s]) {
            remap[s] = static_cast<StateId>(names.size());
            names.push_back(pp.gen.name(s));
            marked.push_back(pp.gen.marked(s));
        }
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(names.size());
    for (StateId s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        for (const auto& [e, t] : pp.gen.successors(s))
            if (alive[t]) succ[remap[s]].emplace_back(e, remap[t]);
    }
    return Generator::build(g.alphabet(), std::move(names), remap[0],
                            std::move(marked), std::move(succ));
}

Generator sup_cqc(const Generator& g, const Generator& k, std::size_t n,
                  SynthesisTrace* trace) {
    Generator shared = trim(product(g, k));
    Generator completable = sup_qc(shared, n, Frontier::stack, trace);
    return supcon(g, completable, trace);
}

namespace {

/// Marking restoration after a heterogeneous pass: the pass result keeps
/// its closed behavior, re-marked to the strings of Lm(kt) it still covers.
Generator restore_marking(const Generator& pass, const Generator& kt) {
    auto pp = internal::pair_product(
        pass, kt, [](bool a, bool b) {
            (void)a;
            return b;
        });
    return trim(pp.gen);
}

/// Core of the heterogeneous synthesis: sweeps the bounded plant markers in
/// ascending name order, each pass re-marking the plant at one marker,
/// narrowing the candidate by sup_qc under that marker's budget, and
/// restoring the specification marking; repeats until a whole sweep leaves
/// the marked language unchanged. `kt` must be trim. No bound/support
/// validation here: a marker whose support has vanished simply empties the
/// candidate, which is the correct supremum.
Generator sup_hqc_impl(const Generator& g, const Generator& kt,
                       const BoundSpec& bounds, SynthesisTrace* trace) {
    Generator cur = kt;
    if (cur.empty()) return cur;
    while (true) {
        if (trace) trace->iterations += 1;
        Generator snapshot = cur;
        for (const auto& [qname, budget] : bounds) {
            Generator gi = internal::remark(g, {qname});
            auto gk = internal::pair_product(
                gi, cur, [](bool a, bool b) { return a && b; });
            Generator pass = sup_qc(gk.gen, budget, Frontier::stack, trace);
            if (pass.empty()) {
                note(trace, "marker " + qname + " empties the candidate");
                return Generator(g.alphabet());
            }
            cur = restore_marking(pass, kt);
            note(trace, "marker " + qname + ": candidate has " +
                            std::to_string(cur.num_states()) + " states");
        }
        if (marked_language_compare(cur, snapshot).equal()) break;
    }
    return cur;
}

} // namespace

Generator sup_hqc(const Generator& g, const Generator& k, const BoundSpec& bounds,
                  SynthesisTrace* trace) {
    MarkerCorrespondence corr = marker_correspondence(g, k);
    internal::check_bounds_cover(corr.plant_markers, bounds);
    return sup_hqc_impl(g, trim(k), bounds, trace);
}

Generator sup_chqc(const Generator& g, const Generator& e, const BoundSpec& bounds,
                   SynthesisTrace* trace) {
    Generator cur = trim(product(g, e));
    MarkerCorrespondence corr = marker_correspondence(g, cur);
    internal::check_bounds_cover(corr.plant_markers, bounds);

    while (true) {
        Generator h = sup_hqc_impl(g, cur, bounds, trace);
        if (h.empty()) return Generator(g.alphabet());
        Generator c = supcon(g, h, trace);
        if (c.empty()) return c;
        if (marked_language_compare(c, cur).equal()) return c;
        cur = std::move(c);
    }
}

} // namespace qsup
