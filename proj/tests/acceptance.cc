/* acceptance.cc -- end-to-end acceptance checks, one verdict line each */

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qsup/analysis.hh"
#include "qsup/io.hh"
#include "qsup/oracle.hh"
#include "qsup/synthesis.hh"

#include "fixtures.hh"

using namespace qsup;
using namespace qsup::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Generator sample(std::uint64_t seed, std::size_t states, std::size_t events,
                 double density = 0.35) {
    SamplerParams p;
    p.seed = seed;
    p.max_states = states;
    p.event_count = events;
    p.transition_density = density;
    return sample_generator(p);
}

/// Rebuild `g` over `alphabet` (event names must match; only the
/// controllability flags may differ). Event ids are stable because
/// alphabets order events by name.
Generator with_alphabet(const Generator& g, const Alphabet& alphabet) {
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        names.push_back(g.name(s));
        marked.push_back(g.marked(s));
        for (const auto& [e, t] : g.successors(s)) succ[s].emplace_back(e, t);
    }
    return Generator::build(alphabet, std::move(names),
                            g.has_initial() ? g.initial() : kNoState,
                            std::move(marked), std::move(succ));
}

/// Rebuild `g` marking exactly the named states.
Generator remark_states(const Generator& g, const std::set<std::string>& keep) {
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        names.push_back(g.name(s));
        marked.push_back(keep.count(g.name(s)) != 0);
        for (const auto& [e, t] : g.successors(s)) succ[s].emplace_back(e, t);
    }
    return Generator::build(g.alphabet(), std::move(names),
                            g.has_initial() ? g.initial() : kNoState,
                            std::move(marked), std::move(succ));
}

bool marked_equal(const Generator& a, const Generator& b) {
    return marked_language_compare(a, b).equal();
}

bool within(const Generator& a, const Generator& b) {
    return marked_language_compare(a, b).a_within_b();
}

// ---- criterion 1: the two sup_qc constructions agree ---------------------

bool c01_dual_route(std::string& detail) {
    auto t0 = Clock::now();
    std::size_t done = 0, comparisons = 0;
    std::uint64_t seed = 10'000;
    while (done < 1000) {
        Generator k = sample(seed, 8, 1 + seed % 4);
        ++seed;
        if (k.empty()) continue;
        for (std::size_t n = 1; n <= 5; ++n) {
            ++comparisons;
            if (!marked_equal(sup_qc(k, n), sup_qc_language(k, n))) {
                detail = "disagreement at sampler seed " +
                         std::to_string(seed - 1) + ", n=" + std::to_string(n);
                return false;
            }
        }
        ++done;
    }
    double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 generators x n=1..5, %zu equal comparisons in %.1fs",
                  comparisons, secs);
    detail = buf;
    return secs < 60.0;
}

// ---- criterion 2: string-level membership oracle --------------------------

/// Membership of s in K_n at string level: s in closure(K) and (|s| <= n-1
/// or s = m.t with m marked and |t| <= n), decided on enumerated sets.
bool in_kn(const Word& s, const std::set<Word>& closed,
           const std::set<Word>& marked, std::size_t n) {
    if (!closed.count(s)) return false;
    if (s.size() + 1 <= n) return true;
    for (std::size_t cut = (s.size() >= n ? s.size() - n : 0); cut <= s.size();
         ++cut) {
        Word head(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(cut));
        if (marked.count(head)) return true;
    }
    return false;
}

bool c02_string_oracle(std::string& detail) {
    const std::size_t kLen = 6;
    std::size_t instances = 0, strings = 0;
    std::uint64_t seed = 20'000;
    while (instances < 300) {
        Generator k = sample(seed++, 6, 2);
        if (k.empty()) continue;
        auto lang = enumerate_bounded(k, kLen + 1);
        for (std::size_t n = 1; n <= 3 && instances < 300; ++n) {
            ++instances;
            Generator sup = sup_qc(k, n);
            auto sup_marked = sup.empty() ? std::set<Word>{}
                                          : enumerate_bounded(sup, kLen).marked;
            for (const auto& s : lang.closed) {
                if (s.size() > kLen) continue;
                ++strings;
                bool direct = sup_marked.count(s) == 1;
                bool via_strings = lang.marked.count(s) == 1;
                if (via_strings) {
                    Word prefix;
                    for (std::size_t i = 0; i <= s.size() && via_strings; ++i) {
                        prefix.assign(
                            s.begin(),
                            s.begin() + static_cast<std::ptrdiff_t>(i));
                        if (!in_kn(prefix, lang.closed, lang.marked, n))
                            via_strings = false;
                    }
                }
                if (direct != via_strings) {
                    detail = "membership disagrees at sampler seed " +
                             std::to_string(seed - 1) +
                             ", n=" + std::to_string(n);
                    return false;
                }
            }
        }
    }
    detail = "300 instances, " + std::to_string(strings) +
             " string memberships, zero disagreements";
    return true;
}

// ---- criterion 3: outputs pass their own checkers -------------------------

bool c03_soundness(std::string& detail) {
    std::size_t done = 0;
    std::uint64_t seed = 30'000;

    // sup_qc: completable within n, contained in the input.
    for (std::size_t i = 0; i < 125; ++seed) {
        Generator k = sample(seed, 7, 3);
        if (k.empty()) continue;
        std::size_t n = 1 + i % 4;
        Generator out = sup_qc(k, n);
        if (!is_quantitatively_completable(out, n).holds || !within(out, k)) {
            detail = "sup_qc output failed certification at seed " +
                     std::to_string(seed);
            return false;
        }
        ++i;
        ++done;
    }

    // sup_cqc: completable, controllable, contained in shared behavior.
    for (std::size_t i = 0; i < 125; ++seed) {
        Generator g = sample(seed, 8, 3);
        if (g.empty()) continue;
        Generator k = with_alphabet(sample(seed + 500'000, 7, 3), g.alphabet());
        if (k.empty()) continue;
        std::size_t n = 1 + i % 4;
        Generator out = sup_cqc(g, k, n);
        if (!is_quantitatively_completable(out, n).holds ||
            !is_controllable(g, out).holds || !within(out, product(g, k))) {
            detail = "sup_cqc output failed certification at seed " +
                     std::to_string(seed);
            return false;
        }
        ++i;
        ++done;
    }

    // sup_hqc: heterogeneously completable under the same bounds (empty
    // outputs are vacuously fine but have no marker support to validate),
    // contained in the specification.
    for (std::size_t i = 0; i < 125; ++seed) {
        Generator g = sample(seed, 8, 3);
        if (g.empty()) continue;
        Generator m = with_alphabet(sample(seed + 600'000, 6, 3), g.alphabet());
        Generator k = trim(product(g, m));
        if (k.empty()) continue;
        MarkerCorrespondence corr = marker_correspondence(g, k);
        if (corr.plant_markers.empty()) continue;
        BoundSpec bounds;
        std::size_t salt = 0;
        for (const std::string& q : corr.plant_markers)
            bounds[q] = 1 + (seed + salt++) % 3;
        Generator out = sup_hqc(g, k, bounds);
        bool ok = within(out, k);
        if (ok && !out.empty())
            ok = is_heterogeneously_quantitatively_completable(g, out, bounds)
                     .holds;
        if (!ok) {
            detail = "sup_hqc output failed certification at seed " +
                     std::to_string(seed);
            return false;
        }
        ++i;
        ++done;
    }

    // sup_chqc: additionally controllable.
    for (std::size_t i = 0; i < 125; ++seed) {
        Generator g = sample(seed, 8, 3);
        if (g.empty()) continue;
        Generator e = with_alphabet(sample(seed + 700'000, 6, 3), g.alphabet());
        Generator shared = trim(product(g, e));
        if (shared.empty()) continue;
        MarkerCorrespondence corr = marker_correspondence(g, shared);
        if (corr.plant_markers.empty()) continue;
        BoundSpec bounds;
        std::size_t salt = 0;
        for (const std::string& q : corr.plant_markers)
            bounds[q] = 1 + (seed + salt++) % 3;
        Generator out = sup_chqc(g, e, bounds);
        bool ok = within(out, shared);
        if (ok && !out.empty())
            ok = is_controllable(g, out).holds &&
                 is_heterogeneously_quantitatively_completable(g, out, bounds)
                     .holds;
        if (!ok) {
            detail = "sup_chqc output failed certification at seed " +
                     std::to_string(seed);
            return false;
        }
        ++i;
        ++done;
    }

    detail = std::to_string(done) +
             " outputs certified across the four synthesis operations";
    return done == 500;
}

// ---- criterion 4: idempotence and budget monotonicity ----------------------

bool c04_idem_monotone(std::string& detail) {
    std::size_t done = 0;
    std::uint64_t seed = 40'000;
    while (done < 500) {
        Generator k = sample(seed++, 7, 3);
        if (k.empty()) continue;
        Generator prev{k.alphabet()};
        for (std::size_t n = 1; n <= 5; ++n) {
            Generator r = sup_qc(k, n);
            if (!marked_equal(sup_qc(r, n), r)) {
                detail = "idempotence broken at seed " +
                         std::to_string(seed - 1) + ", n=" + std::to_string(n);
                return false;
            }
            if (!within(prev, r)) {
                detail = "monotonicity broken at seed " +
                         std::to_string(seed - 1) + ", n=" + std::to_string(n);
                return false;
            }
            prev = std::move(r);
        }
        ++done;
    }
    detail = "500 generators: idempotent at each n, monotone over n=1..5";
    return true;
}

// ---- criterion 5: closure properties of the completable families ----------

bool c05_closure_props(std::string& detail) {
    std::uint64_t seed = 50'000;

    // Union of two quantitatively completable languages stays completable.
    for (std::size_t i = 0; i < 200; ++seed) {
        Generator k1 = sample(seed, 6, 3);
        if (k1.empty()) continue;
        Generator k2 = with_alphabet(sample(seed + 800'000, 6, 3), k1.alphabet());
        if (k2.empty()) continue;
        std::size_t n = 1 + i % 3;
        Generator u = union_marked(sup_qc(k1, n), sup_qc(k2, n));
        if (!is_quantitatively_completable(u, n).holds) {
            detail = "union closure violated at seed " + std::to_string(seed);
            return false;
        }
        ++i;
    }

    // The supremal controllable sublanguage of a completable language is
    // still completable.
    for (std::size_t i = 0; i < 200; ++seed) {
        Generator g = sample(seed, 7, 3);
        if (g.empty()) continue;
        Generator m = with_alphabet(sample(seed + 900'000, 6, 3), g.alphabet());
        Generator k = trim(product(g, m));
        if (k.empty()) continue;
        std::size_t n = 1 + i % 3;
        Generator c = supcon(g, sup_qc(k, n));
        if (!is_quantitatively_completable(c, n).holds) {
            detail = "supcon broke completability at seed " +
                     std::to_string(seed);
            return false;
        }
        ++i;
    }

    // Heterogeneous union closure on pairs with identical marker support
    // and identical budgets.
    std::size_t pairs = 0;
    for (; pairs < 100; ++seed) {
        Generator g = sample(seed, 8, 3);
        if (g.empty()) continue;
        Generator m1 = with_alphabet(sample(seed + 910'000, 6, 3), g.alphabet());
        Generator m2 = with_alphabet(sample(seed + 920'000, 6, 3), g.alphabet());
        Generator k1 = trim(product(g, m1));
        Generator k2 = trim(product(g, m2));
        if (k1.empty() || k2.empty()) continue;
        MarkerCorrespondence c1 = marker_correspondence(g, k1);
        MarkerCorrespondence c2 = marker_correspondence(g, k2);
        if (c1.plant_markers.empty() || c1.plant_markers != c2.plant_markers)
            continue;
        BoundSpec bounds;
        std::size_t salt = 0;
        for (const std::string& q : c1.plant_markers)
            bounds[q] = 1 + (seed + salt++) % 3;
        Generator o1 = sup_hqc(g, k1, bounds);
        Generator o2 = sup_hqc(g, k2, bounds);
        if (o1.empty() || o2.empty()) continue; // support would shrink
        Generator u = union_marked(o1, o2);
        if (!is_heterogeneously_quantitatively_completable(g, u, bounds)
                 .holds) {
            detail = "heterogeneous union closure violated at seed " +
                     std::to_string(seed);
            return false;
        }
        ++pairs;
    }

    detail = "union closure 200/200, supcon preservation 200/200, "
             "heterogeneous union 100/100";
    return true;
}

// ---- criterion 6: single-marker reduction ---------------------------------

bool c06_single_marker(std::string& detail) {
    std::size_t instances = 0;
    std::uint64_t seed = 60'000;
    while (instances < 300) {
        Generator g0 = sample(seed++, 6, 3);
        if (g0.empty()) continue;
        // Mark exactly one plant state so the correspondence has a single
        // marker by construction.
        std::string target = g0.name((seed * 7) % g0.num_states());
        Generator g = trim(remark_states(g0, {target}));
        if (g.empty()) continue;
        Generator m = with_alphabet(sample(seed + 930'000, 6, 3), g.alphabet());
        Generator k = trim(product(g, m));
        if (k.empty()) continue;
        MarkerCorrespondence corr = marker_correspondence(g, k);
        if (corr.plant_markers.size() != 1) continue;
        const std::string& q = corr.plant_markers.front();
        for (std::size_t n = 1; n <= 3 && instances < 300; ++n) {
            Generator het = sup_hqc(g, k, {{q, n}});
            Generator uni = sup_qc(k, n);
            if (!marked_equal(het, uni)) {
                detail = "single-marker reduction disagrees at seed " +
                         std::to_string(seed - 1) + ", n=" + std::to_string(n);
                return false;
            }
            ++instances;
        }
    }
    detail = "300 single-marker instances: heterogeneous and uniform "
             "synthesis agree";
    return true;
}

// ---- criterion 7: heterogeneous implies uniform at the minimum budget -----

bool c07_hqc_implies_qc(std::string& detail) {
    std::size_t done = 0;
    std::uint64_t seed = 70'000;
    while (done < 300) {
        Generator g = sample(seed++, 8, 3);
        if (g.empty()) continue;
        Generator m = with_alphabet(sample(seed + 940'000, 6, 3), g.alphabet());
        Generator k = trim(product(g, m));
        if (k.empty()) continue;
        MarkerCorrespondence corr = marker_correspondence(g, k);
        if (corr.plant_markers.empty()) continue;
        BoundSpec bounds;
        std::size_t salt = 0;
        std::size_t min_budget = SIZE_MAX;
        for (const std::string& q : corr.plant_markers) {
            bounds[q] = 1 + (seed + salt++) % 3;
            min_budget = std::min(min_budget, bounds[q]);
        }
        Generator out = sup_hqc(g, k, bounds);
        if (out.empty()) continue;
        if (!is_quantitatively_completable(out, min_budget).holds) {
            detail = "nonempty heterogeneous output not completable at the "
                     "minimum budget, seed " +
                     std::to_string(seed - 1);
            return false;
        }
        ++done;
    }
    detail = "300 nonempty heterogeneous outputs completable at min budget";
    return true;
}

// ---- criterion 8: anchored fixtures ---------------------------------------

bool c08_fixtures(std::string& detail) {
    // (a) A marked loop with an unbounded unmarked detour is not
    // quantitatively completable for any finite budget.
    Generator detour = fixture_unbounded_detour();
    for (std::size_t n = 1; n <= 10; ++n)
        if (is_quantitatively_completable(detour, n).holds) {
            detail = "unbounded detour accepted at n=" + std::to_string(n);
            return false;
        }

    // (b) The marker-alternating loop is uniformly completable within one
    // step, yet the per-marker check fails: the alternation avoids the
    // second marker forever.
    Generator loop = fixture_two_marker_loop();
    if (!is_quantitatively_completable(loop, 1).holds) {
        detail = "marker-alternating loop rejected by the uniform check";
        return false;
    }
    if (is_heterogeneously_quantitatively_completable(loop, loop,
                                                      {{"1", 1}, {"2", 2}})
            .holds) {
        detail = "marker-alternating loop accepted by the per-marker check";
        return false;
    }

    // (c) Empty-vs-nonempty contrast: uniform synthesis with n=1 keeps the
    // marker cycle, heterogeneous synthesis with budgets {3,1} empties.
    Generator cycle = fixture_marker_cycle();
    if (sup_qc(cycle, 1).empty()) {
        detail = "uniform synthesis emptied the marker cycle at n=1";
        return false;
    }
    if (!sup_hqc(cycle, cycle, {{"1", 3}, {"2", 1}}).empty()) {
        detail = "heterogeneous synthesis kept the marker cycle under {3,1}";
        return false;
    }

    detail = "detour rejected for n=1..10; loop split verdicts; cycle "
             "empty-vs-nonempty contrast reproduced";
    return true;
}

// ---- criterion 9: frontier order independence ------------------------------

bool c09_frontier(std::string& detail) {
    std::size_t done = 0;
    std::uint64_t seed = 90'000;
    while (done < 300) {
        Generator k = sample(seed++, 7, 3);
        if (k.empty()) continue;
        std::size_t n = 1 + done % 4;
        if (!marked_equal(sup_qc(k, n, Frontier::stack),
                          sup_qc(k, n, Frontier::queue))) {
            detail = "stack and queue frontiers disagree at seed " +
                     std::to_string(seed - 1) + ", n=" + std::to_string(n);
            return false;
        }
        ++done;
    }
    detail = "300 instances: stack and queue frontiers marked-language-equal";
    return true;
}

// ---- criterion 10: scale ----------------------------------------------------

double best_of_three(const Generator& k, std::size_t n,
                     SynthesisTrace* last_trace) {
    double best = 1e30;
    for (int run = 0; run < 3; ++run) {
        SynthesisTrace trace;
        auto t0 = Clock::now();
        Generator out = sup_qc(k, n, Frontier::stack, &trace);
        best = std::min(best, seconds_since(t0));
        if (last_trace) *last_trace = trace;
    }
    return best;
}

bool c10_performance(std::string& detail) {
    const std::size_t n = 10;
    Generator big = sample(123, 50'000, 8, 0.40);
    Generator small = sample(456, 5'000, 8, 0.40);
    if (big.empty() || small.empty()) {
        detail = "sampler produced an empty scale fixture";
        return false;
    }

    SynthesisTrace big_trace, small_trace;
    double big_secs = best_of_three(big, n, &big_trace);
    double small_secs = best_of_three(small, n, &small_trace);

    // The counter space is exactly the live (state, distance) slots, so
    // visiting no more than |X| * n of them pins the linear memory bound.
    bool linear_memory =
        big_trace.counter_states_visited <= big.num_states() * n;

    double floor = std::max(small_secs, 1e-3); // guard tiny denominators
    double ratio = big_secs / floor;
    double scale = static_cast<double>(big.num_states()) /
                   static_cast<double>(small.num_states());
    bool scaling_ok = ratio <= 2.0 * scale;

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%zu surviving states (8 events): %.2fs at n=10; counter "
                  "slots %zu <= %zu; time ratio %.1fx over a %.1fx size step",
                  static_cast<std::size_t>(big.num_states()), big_secs,
                  big_trace.counter_states_visited,
                  static_cast<std::size_t>(big.num_states()) * n, ratio, scale);
    detail = buf;
    return big_secs < 10.0 && linear_memory && scaling_ok;
}

// ---- criterion 11: round-trips and the cross-checked CLI route ------------

bool c11_roundtrip(std::string& detail) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qsup-acceptance";
    fs::create_directories(dir);
    std::string in_path = (dir / "roundtrip.aut").string();
    std::string out_path = (dir / "roundtrip-out.aut").string();

    std::size_t done = 0, cli_runs = 0;
    std::uint64_t seed = 110'000;
    while (done < 1000) {
        Generator g = sample(seed++, 3 + seed % 9, 1 + seed % 4);
        if (g.empty()) continue;
        std::string text = serialize_automaton(g);
        Generator back = parse_automaton(text);
        if (!marked_equal(g, back) ||
            !closed_language_compare(g, back).equal()) {
            detail = "round-trip changed the language at seed " +
                     std::to_string(seed - 1);
            return false;
        }
        if (serialize_automaton(back) != text) {
            detail = "serialization is not byte-stable at seed " +
                     std::to_string(seed - 1);
            return false;
        }
        if (done % 20 == 0) {
            std::ofstream(in_path, std::ios::binary) << text;
            const char* argv[] = {"qsup", "supqc",      in_path.c_str(),
                                  "--n",  "2",          "--method",
                                  "both", "--out",      out_path.c_str()};
            int rc = run_cli(static_cast<int>(std::size(argv)), argv);
            if (rc == 2) {
                detail = "--method both cross-check tripped at seed " +
                         std::to_string(seed - 1);
                return false;
            }
            ++cli_runs;
        }
        ++done;
    }
    detail = "1000 byte-stable, language-equal round-trips; " +
             std::to_string(cli_runs) + " cross-checked CLI runs clean";
    return true;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const Criterion criteria[] = {
        {"dual construction equivalence", c01_dual_route},
        {"string-level membership oracle", c02_string_oracle},
        {"synthesis outputs pass their checkers", c03_soundness},
        {"idempotence and budget monotonicity", c04_idem_monotone},
        {"closure properties (union, supcon, heterogeneous union)",
         c05_closure_props},
        {"single-marker reduction", c06_single_marker},
        {"heterogeneous implies uniform at the minimum budget",
         c07_hqc_implies_qc},
        {"anchored fixtures", c08_fixtures},
        {"frontier order independence", c09_frontier},
        {"50k-state scale and linear counter memory", c10_performance},
        {"serialization round-trips and cross-checked CLI", c11_roundtrip},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%s %2d  %s -- %s\n", ok ? "PASS" : "FAIL", index, c.name,
                    detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
