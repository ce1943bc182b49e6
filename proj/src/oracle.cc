/* oracle.cc -- brute-force reference implementations for differential tests */

#include "qsup/oracle.hh"

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <tuple>

#include "qsup/analysis.hh"

namespace qsup {

namespace {

/// Throws BudgetError when |alphabet|^max_len exceeds cap.
void check_budget(std::size_t alphabet_size, std::size_t max_len,
                  std::uint64_t cap) {
    const auto sigma = static_cast<std::uint64_t>(alphabet_size);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < max_len; ++i) {
        if (sigma != 0 && total > cap / sigma)
            throw BudgetError("enumeration of " + std::to_string(alphabet_size) +
                              "^" + std::to_string(max_len) +
                              " candidate strings exceeds the cap");
        total *= sigma;
    }
}

} // namespace

BoundedLanguage enumerate_bounded(const Generator& g, std::size_t max_len,
                                  std::uint64_t cap) {
    check_budget(g.alphabet().size(), max_len, cap);
    BoundedLanguage out;
    out.max_len = max_len;
    if (g.empty()) return out;

    struct Node {
        StateId s;
        Word w;
    };
    std::vector<Node> level{{g.initial(), {}}};
    out.closed.insert(Word{});
    if (g.marked(g.initial())) out.marked.insert(Word{});
    for (std::size_t len = 0; len < max_len; ++len) {
        std::vector<Node> next;
        for (const auto& node : level) {
            for (const auto& [e, t] : g.successors(node.s)) {
                Word w = node.w;
                w.push_back(g.alphabet().event(e).name);
                out.closed.insert(w);
                if (g.marked(t)) out.marked.insert(w);
                next.push_back({t, std::move(w)});
            }
        }
        level = std::move(next);
    }
    return out;
}

namespace {

/// Depth-first search, events in alphabet order, for the lexicographically
/// least first completion of exactly `len` events from `from`: intermediate
/// states unmarked, the final state marked.
bool find_completion(const Generator& g, StateId from, std::size_t len,
                     std::size_t depth, Word& word) {
    for (const auto& [e, t] : g.successors(from)) {
        if (depth + 1 == len) {
            if (!g.marked(t)) continue;
            word[depth] = g.alphabet().event(e).name;
            return true;
        }
        if (g.marked(t)) continue;
        word[depth] = g.alphabet().event(e).name;
        if (find_completion(g, t, len, depth + 1, word)) return true;
    }
    return false;
}

} // namespace

std::optional<std::pair<Word, Word>> refute_qc(const Generator& k, std::size_t n,
                                               std::size_t max_len) {
    check_budget(k.alphabet().size(), max_len, 1'000'000);
    Generator kt = trim(k);
    if (kt.empty()) return std::nullopt;

    struct Node {
        StateId s;
        Word w;
    };
    std::vector<Node> level{{kt.initial(), {}}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (const auto& node : level) {
            // A marked endpoint only completes with the empty string, which
            // never breaks a bound.
            if (kt.marked(node.s)) continue;
            for (std::size_t want = n + 1; want <= max_len; ++want) {
                Word completion(want);
                if (find_completion(kt, node.s, want, 0, completion))
                    return std::make_pair(node.w, completion);
            }
        }
        if (len == max_len) break;
        std::vector<Node> next;
        for (const auto& node : level) {
            for (const auto& [e, t] : kt.successors(node.s)) {
                Word w = node.w;
                w.push_back(kt.alphabet().event(e).name);
                next.push_back({t, std::move(w)});
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

Generator brute_supremal_subautomaton(const Generator& k, std::size_t n,
                                      std::size_t max_transitions) {
    if (k.num_transitions() > max_transitions)
        throw ValidationError(
            "subset search needs at most " + std::to_string(max_transitions) +
            " transitions, got " + std::to_string(k.num_transitions()));

    std::vector<std::tuple<StateId, EventId, StateId>> edges;
    for (StateId s = 0; s < k.num_states(); ++s)
        for (const auto& [e, t] : k.successors(s)) edges.emplace_back(s, e, t);

    std::vector<std::string> names;
    std::vector<bool> marked;
    for (StateId s = 0; s < k.num_states(); ++s) {
        names.push_back(k.name(s));
        marked.push_back(k.marked(s));
    }

    // Visit larger edge subsets first so most candidates are swallowed by an
    // already-kept superset, and keep only the maximal candidate languages;
    // folding the union incrementally instead would compound the state
    // growth of each union into an exponential blowup.
    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size());
         ++mask)
        masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });

    std::vector<Generator> maximal;
    for (std::uint64_t mask : masks) {
        std::vector<std::vector<std::pair<EventId, StateId>>> succ(
            k.num_states());
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) {
                auto [s, e, t] = edges[i];
                succ[s].emplace_back(e, t);
            }
        Generator candidate = trim(Generator::build(
            k.alphabet(), names, k.empty() ? kNoState : k.initial(), marked,
            std::move(succ)));
        if (candidate.empty()) continue;
        if (!is_quantitatively_completable(candidate, n).holds) continue;
        bool covered = false;
        for (const Generator& kept : maximal)
            if (marked_language_compare(candidate, kept).a_within_b()) {
                covered = true;
                break;
            }
        if (covered) continue;
        std::erase_if(maximal, [&](const Generator& kept) {
            return marked_language_compare(kept, candidate).a_within_b();
        });
        maximal.push_back(std::move(candidate));
    }

    Generator best(k.alphabet());
    for (const Generator& kept : maximal) best = union_marked(best, kept);
    return best;
}

Generator sample_generator(const SamplerParams& params) {
    if (params.max_states == 0)
        throw ValidationError("sampler needs at least one state");
    if (params.event_count == 0)
        throw ValidationError("sampler needs at least one event");
    auto fraction_ok = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!fraction_ok(params.controllable_fraction) ||
        !fraction_ok(params.marked_fraction) ||
        !fraction_ok(params.transition_density))
        throw ValidationError("sampler fractions must lie within [0,1]");

    std::mt19937_64 rng(params.seed);
    // The standard pins mt19937_64's output, but not the distributions, so
    // draw uniforms from the raw 64-bit stream for cross-platform stability.
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) *
               (1.0 / 9007199254740992.0); // 2^-53
    };
    auto pick = [&rng](std::size_t m) {
        return static_cast<std::size_t>(rng() % m);
    };

    RawAutomaton raw;
    for (std::size_t i = 0; i < params.event_count; ++i) {
        std::string name = i < 26 ? std::string(1, static_cast<char>('a' + i))
                                  : "e" + std::to_string(i);
        Ctrl ctrl = uniform() < params.controllable_fraction
                        ? Ctrl::controllable
                        : Ctrl::uncontrollable;
        raw.alphabet.push_back({std::move(name), ctrl});
    }
    for (std::size_t i = 0; i < params.max_states; ++i)
        raw.states.push_back(std::to_string(i));
    raw.initial = "0";

    std::vector<bool> marked(params.max_states, false);
    bool any_marked = false;
    for (std::size_t i = 0; i < params.max_states; ++i)
        if (uniform() < params.marked_fraction) {
            marked[i] = true;
            any_marked = true;
        }

    for (std::size_t s = 0; s < params.max_states; ++s)
        for (std::size_t e = 0; e < params.event_count; ++e)
            if (uniform() < params.transition_density) {
                std::size_t dst = pick(params.max_states);
                raw.transitions.push_back({raw.states[s], raw.alphabet[e].name,
                                           raw.states[dst]});
            }

    if (params.marked_fraction > 0.0 && !any_marked)
        marked[pick(params.max_states)] = true;
    for (std::size_t i = 0; i < params.max_states; ++i)
        if (marked[i]) raw.marked.push_back(raw.states[i]);

    return trim(validate(raw));
}

} // namespace qsup
