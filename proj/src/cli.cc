/* cli.cc -- command line front end over the library operations */

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "internal.hh"
#include "qsup/analysis.hh"
#include "qsup/io.hh"
#include "qsup/oracle.hh"
#include "qsup/synthesis.hh"

namespace qsup {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Reinterpret controllability of all-digit event names by the parity of
/// their last digit: odd controllable, even uncontrollable. Other names
/// keep the flag from the file.
Generator apply_parity(const Generator& g) {
    std::vector<Event> events;
    for (const Event& e : g.alphabet().events()) {
        Ctrl ctrl = e.ctrl;
        bool numeric =
            !e.name.empty() &&
            std::all_of(e.name.begin(), e.name.end(), [](unsigned char c) {
                return std::isdigit(c) != 0;
            });
        if (numeric)
            ctrl = ((e.name.back() - '0') % 2 == 1) ? Ctrl::controllable
                                                    : Ctrl::uncontrollable;
        events.push_back({e.name, ctrl});
    }
    // Same names, so from_events keeps the same event ids and the
    // transition structure can be copied unchanged.
    Alphabet alphabet = Alphabet::from_events(events);
    std::vector<std::string> names;
    std::vector<bool> marked;
    std::vector<std::vector<std::pair<EventId, StateId>>> succ(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        names.push_back(g.name(s));
        marked.push_back(g.marked(s));
        for (const auto& [e, t] : g.successors(s)) succ[s].emplace_back(e, t);
    }
    return Generator::build(std::move(alphabet), std::move(names),
                            g.has_initial() ? g.initial() : kNoState,
                            std::move(marked), std::move(succ));
}

/// Write to `path` atomically (temp file + rename), or to stdout when the
/// path is empty.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + path);
        out << text;
        out.flush();
        if (!out) throw Error("cannot write file: " + path);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw Error("cannot move " + tmp.string() +
                    " into place: " + ec.message());
}

const char* kind_name(Witness::Kind kind) {
    switch (kind) {
    case Witness::Kind::path:
        return "path";
    case Witness::Kind::cycle:
        return "cycle";
    case Witness::Kind::unreachable:
        return "unreachable";
    }
    return "?";
}

std::string word_text(const std::vector<std::string>& events) {
    return events.empty() ? std::string(".") : internal::join_word(events);
}

using Params = std::vector<std::pair<std::string, std::string>>;

int finish_check(const std::string& property, const Params& params,
                 const Verdict& verdict, const Generator& subject, double ms,
                 const std::string& out_path, const std::string& report_path) {
    std::string text = verdict.holds ? "pass\n" : "fail\n";
    for (const Witness& w : verdict.witnesses) {
        text += "witness";
        if (w.marker) text += " marker=" + *w.marker;
        text += " state=" + w.state;
        text += " kind=";
        text += kind_name(w.kind);
        if (w.bound) text += " bound=" + std::to_string(*w.bound);
        text += " " + word_text(w.events) + "\n";
    }
    write_text(out_path, text);
    if (!report_path.empty())
        write_text(report_path,
                   render_report(verdict, property, params, subject, ms));
    return verdict.holds ? 0 : 1;
}

void write_trace(const std::string& path, const SynthesisTrace& trace) {
    nlohmann::json j;
    j["steps"] = nlohmann::json::array();
    for (const auto& step : trace.steps) j["steps"].push_back(step.description);
    j["counter_states_visited"] = trace.counter_states_visited;
    j["iterations"] = trace.iterations;
    write_text(path, j.dump(2) + "\n");
}

int finish_synth(const std::string& property, const Params& params,
                 const Generator& result, const SynthesisTrace& trace,
                 double ms, const std::string& out_path,
                 const std::string& report_path,
                 const std::string& trace_path) {
    write_text(out_path, serialize_automaton(result));
    if (!report_path.empty()) {
        Verdict verdict;
        verdict.holds = !result.empty();
        write_text(report_path,
                   render_report(verdict, property, params, result, ms));
    }
    if (!trace_path.empty()) write_trace(trace_path, trace);
    return result.empty() ? 1 : 0;
}

/// Parse "marker=budget,marker=budget,..." into a BoundSpec. Budgets must
/// be decimal numbers; semantic checks (coverage, zero budgets) are left to
/// the operations themselves.
BoundSpec parse_bounds(const std::string& text) {
    BoundSpec bounds;
    if (text.empty()) throw Error("empty bounds, expected marker=budget,...");
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(
            start, comma == std::string::npos ? std::string::npos
                                              : comma - start);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
            throw Error("bounds entries look like marker=budget, got: " + item);
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (!std::all_of(value.begin(), value.end(), [](unsigned char c) {
                return std::isdigit(c) != 0;
            }))
            throw Error("budget for " + key + " is not a number: " + value);
        std::size_t budget = 0;
        try {
            budget = std::stoull(value);
        } catch (const std::exception&) {
            throw Error("budget for " + key + " is out of range: " + value);
        }
        if (!bounds.emplace(key, budget).second)
            throw Error("duplicate bound for marker " + key);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return bounds;
}

const char* relation_token(ComparisonResult::Relation relation) {
    switch (relation) {
    case ComparisonResult::Relation::equal:
        return "equal";
    case ComparisonResult::Relation::a_subset_b:
        return "a-subset-b";
    case ComparisonResult::Relation::b_subset_a:
        return "b-subset-a";
    case ComparisonResult::Relation::incomparable:
        return "incomparable";
    }
    return "?";
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"quantitatively nonblocking supervisory control toolkit"};
    app.require_subcommand(1);

    int code = 0;

    auto load = [](const std::string& path, bool parity) {
        Generator g = load_automaton(path);
        return parity ? apply_parity(g) : g;
    };

    struct CommonOpts {
        std::string out, report, trace;
        bool parity = false;
    };
    auto add_io = [](CLI::App* sub, CommonOpts& io, bool with_trace) {
        sub->add_option("--out", io.out,
                        "write the result to this file (default: stdout)");
        sub->add_option("--report", io.report,
                        "also write a JSON report to this file");
        if (with_trace)
            sub->add_option("--trace", io.trace,
                            "also write a JSON synthesis trace to this file");
        sub->add_flag("--parity-convention", io.parity,
                      "all-digit event names: odd last digit controllable, "
                      "even uncontrollable");
    };

    // ---- checks ---------------------------------------------------------

    struct {
        std::string file;
        CommonOpts io;
    } nb;
    auto* c_nb = app.add_subcommand("check-nb",
                                    "check that an automaton is nonblocking");
    c_nb->add_option("file", nb.file, "automaton file ('-' for stdin)")
        ->required();
    add_io(c_nb, nb.io, false);
    c_nb->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(nb.file, nb.io.parity);
        Verdict v = is_nonblocking(g);
        code = finish_check("check-nb", {}, v, g, ms_since(t0), nb.io.out,
                            nb.io.report);
    });

    struct {
        std::string file;
        std::size_t n = 0;
        CommonOpts io;
    } qc;
    auto* c_qc = app.add_subcommand(
        "check-qc", "check quantitative completability within --n events");
    c_qc->add_option("file", qc.file, "automaton file ('-' for stdin)")
        ->required();
    c_qc->add_option("--n", qc.n, "step budget (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    add_io(c_qc, qc.io, false);
    c_qc->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(qc.file, qc.io.parity);
        Verdict v = is_quantitatively_completable(g, qc.n);
        code = finish_check("check-qc", {{"n", std::to_string(qc.n)}}, v, g,
                            ms_since(t0), qc.io.out, qc.io.report);
    });

    struct {
        std::string plant, spec, bounds;
        CommonOpts io;
    } hqc;
    auto* c_hqc = app.add_subcommand(
        "check-hqc",
        "check heterogeneous quantitative completability under per-marker "
        "budgets");
    c_hqc->add_option("plant", hqc.plant, "plant automaton file")->required();
    c_hqc->add_option("spec", hqc.spec, "specification automaton file")
        ->required();
    c_hqc->add_option("--bounds", hqc.bounds,
                      "per-marker budgets, e.g. q1=2,q2=1")
        ->required();
    add_io(c_hqc, hqc.io, false);
    c_hqc->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(hqc.plant, hqc.io.parity);
        Generator k = load(hqc.spec, hqc.io.parity);
        BoundSpec bounds = parse_bounds(hqc.bounds);
        Verdict v = is_heterogeneously_quantitatively_completable(g, k, bounds);
        code = finish_check("check-hqc", {{"bounds", hqc.bounds}}, v, k,
                            ms_since(t0), hqc.io.out, hqc.io.report);
    });

    struct {
        std::string plant, spec;
        CommonOpts io;
    } ctrl;
    auto* c_ctrl = app.add_subcommand(
        "check-ctrl", "check controllability of a specification w.r.t. a plant");
    c_ctrl->add_option("plant", ctrl.plant, "plant automaton file")->required();
    c_ctrl->add_option("spec", ctrl.spec, "specification automaton file")
        ->required();
    add_io(c_ctrl, ctrl.io, false);
    c_ctrl->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(ctrl.plant, ctrl.io.parity);
        Generator k = load(ctrl.spec, ctrl.io.parity);
        Verdict v = is_controllable(g, k);
        code = finish_check("check-ctrl", {}, v, k, ms_since(t0), ctrl.io.out,
                            ctrl.io.report);
    });

    // ---- synthesis ------------------------------------------------------

    struct {
        std::string file;
        std::size_t n = 0;
        std::string method = "generator";
        CommonOpts io;
    } sq;
    auto* c_supqc = app.add_subcommand(
        "supqc",
        "supremal quantitatively completable sublanguage of a specification");
    c_supqc->add_option("file", sq.file, "specification automaton file")
        ->required();
    c_supqc->add_option("--n", sq.n, "step budget (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    c_supqc
        ->add_option("--method", sq.method,
                     "construction route: generator, language, or both "
                     "(cross-checked)")
        ->check(CLI::IsMember({"generator", "language", "both"}));
    add_io(c_supqc, sq.io, true);
    c_supqc->callback([&] {
        auto t0 = Clock::now();
        Generator k = load(sq.file, sq.io.parity);
        SynthesisTrace trace;
        Generator result{k.alphabet()};
        if (sq.method == "generator") {
            result = sup_qc(k, sq.n, Frontier::stack, &trace);
        } else if (sq.method == "language") {
            result = sup_qc_language(k, sq.n, &trace);
        } else {
            result = sup_qc(k, sq.n, Frontier::stack, &trace);
            Generator other = sup_qc_language(k, sq.n, &trace);
            if (!marked_language_compare(result, other).equal())
                throw Error(
                    "synthesis routes disagree: the counter and language "
                    "constructions produced different languages");
        }
        code = finish_synth("supqc",
                            {{"n", std::to_string(sq.n)},
                             {"method", sq.method}},
                            result, trace, ms_since(t0), sq.io.out,
                            sq.io.report, sq.io.trace);
    });

    struct {
        std::string plant, spec;
        CommonOpts io;
    } sc;
    auto* c_supcon = app.add_subcommand(
        "supcon", "supremal controllable sublanguage of a specification");
    c_supcon->add_option("plant", sc.plant, "plant automaton file")->required();
    c_supcon->add_option("spec", sc.spec, "specification automaton file")
        ->required();
    add_io(c_supcon, sc.io, true);
    c_supcon->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(sc.plant, sc.io.parity);
        Generator k = load(sc.spec, sc.io.parity);
        SynthesisTrace trace;
        Generator result = supcon(g, k, &trace);
        code = finish_synth("supcon", {}, result, trace, ms_since(t0),
                            sc.io.out, sc.io.report, sc.io.trace);
    });

    struct {
        std::string plant, spec;
        std::size_t n = 0;
        CommonOpts io;
    } sy;
    auto* c_synthq = app.add_subcommand(
        "synth-q",
        "supremal controllable and quantitatively completable sublanguage");
    c_synthq->add_option("plant", sy.plant, "plant automaton file")->required();
    c_synthq->add_option("spec", sy.spec, "specification automaton file")
        ->required();
    c_synthq->add_option("--n", sy.n, "step budget (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    add_io(c_synthq, sy.io, true);
    c_synthq->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(sy.plant, sy.io.parity);
        Generator k = load(sy.spec, sy.io.parity);
        SynthesisTrace trace;
        Generator result = sup_cqc(g, k, sy.n, &trace);
        code = finish_synth("synth-q", {{"n", std::to_string(sy.n)}}, result,
                            trace, ms_since(t0), sy.io.out, sy.io.report,
                            sy.io.trace);
    });

    struct {
        std::string plant, spec, bounds;
        CommonOpts io;
    } sh;
    auto* c_suphqc = app.add_subcommand(
        "suphqc",
        "supremal heterogeneously quantitatively completable sublanguage");
    c_suphqc->add_option("plant", sh.plant, "plant automaton file")->required();
    c_suphqc->add_option("spec", sh.spec, "specification automaton file")
        ->required();
    c_suphqc
        ->add_option("--bounds", sh.bounds, "per-marker budgets, e.g. q1=2,q2=1")
        ->required();
    add_io(c_suphqc, sh.io, true);
    c_suphqc->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(sh.plant, sh.io.parity);
        Generator k = load(sh.spec, sh.io.parity);
        SynthesisTrace trace;
        Generator result = sup_hqc(g, k, parse_bounds(sh.bounds), &trace);
        code = finish_synth("suphqc", {{"bounds", sh.bounds}}, result, trace,
                            ms_since(t0), sh.io.out, sh.io.report, sh.io.trace);
    });

    struct {
        std::string plant, spec, bounds;
        CommonOpts io;
    } ch;
    auto* c_synthhq = app.add_subcommand(
        "synth-hq",
        "supremal controllable and heterogeneously quantitatively "
        "completable sublanguage");
    c_synthhq->add_option("plant", ch.plant, "plant automaton file")
        ->required();
    c_synthhq->add_option("spec", ch.spec, "specification automaton file")
        ->required();
    c_synthhq
        ->add_option("--bounds", ch.bounds, "per-marker budgets, e.g. q1=2,q2=1")
        ->required();
    add_io(c_synthhq, ch.io, true);
    c_synthhq->callback([&] {
        auto t0 = Clock::now();
        Generator g = load(ch.plant, ch.io.parity);
        Generator e = load(ch.spec, ch.io.parity);
        SynthesisTrace trace;
        Generator result = sup_chqc(g, e, parse_bounds(ch.bounds), &trace);
        code = finish_synth("synth-hq", {{"bounds", ch.bounds}}, result, trace,
                            ms_since(t0), ch.io.out, ch.io.report, ch.io.trace);
    });

    // ---- language operations -------------------------------------------

    struct {
        std::string a, b;
        CommonOpts io;
    } pr;
    auto* c_product = app.add_subcommand(
        "product", "synchronous product of two automata (both must mark)");
    c_product->add_option("a", pr.a, "first automaton file")->required();
    c_product->add_option("b", pr.b, "second automaton file")->required();
    add_io(c_product, pr.io, false);
    c_product->callback([&] {
        Generator a = load(pr.a, pr.io.parity);
        Generator b = load(pr.b, pr.io.parity);
        Generator result = product(a, b);
        write_text(pr.io.out, serialize_automaton(result));
        code = result.empty() ? 1 : 0;
    });

    struct {
        std::string a, b;
        CommonOpts io;
    } un;
    auto* c_union = app.add_subcommand(
        "union", "automaton marking the union of two marked languages");
    c_union->add_option("a", un.a, "first automaton file")->required();
    c_union->add_option("b", un.b, "second automaton file")->required();
    add_io(c_union, un.io, false);
    c_union->callback([&] {
        Generator a = load(un.a, un.io.parity);
        Generator b = load(un.b, un.io.parity);
        Generator result = union_marked(a, b);
        write_text(un.io.out, serialize_automaton(result));
        code = result.empty() ? 1 : 0;
    });

    struct {
        std::string a, b;
        CommonOpts io;
    } cm;
    auto* c_compare = app.add_subcommand(
        "compare", "relate the marked languages of two automata");
    c_compare->add_option("a", cm.a, "first automaton file")->required();
    c_compare->add_option("b", cm.b, "second automaton file")->required();
    add_io(c_compare, cm.io, false);
    c_compare->callback([&] {
        Generator a = load(cm.a, cm.io.parity);
        Generator b = load(cm.b, cm.io.parity);
        ComparisonResult cmp = marked_language_compare(a, b);
        std::string text = relation_token(cmp.relation);
        text += "\n";
        if (cmp.in_a_not_b)
            text += "only-in-a: " + word_text(*cmp.in_a_not_b) + "\n";
        if (cmp.in_b_not_a)
            text += "only-in-b: " + word_text(*cmp.in_b_not_a) + "\n";
        write_text(cm.io.out, text);
        code = cmp.equal() ? 0 : 1;
    });

    struct {
        std::string file;
        CommonOpts io;
    } dt;
    auto* c_dot =
        app.add_subcommand("dot", "render an automaton as a Graphviz digraph");
    c_dot->add_option("file", dt.file, "automaton file ('-' for stdin)")
        ->required();
    add_io(c_dot, dt.io, false);
    c_dot->callback([&] {
        Generator g = load(dt.file, dt.io.parity);
        write_text(dt.io.out, export_dot(g));
        code = 0;
    });

    // ---- oracle ----------------------------------------------------------

    auto* c_oracle = app.add_subcommand(
        "oracle", "small brute-force reference tools for cross-checking");
    c_oracle->require_subcommand(1);
    struct {
        std::string file;
        std::size_t max_len = 0;
        CommonOpts io;
    } oe;
    auto* c_enum = c_oracle->add_subcommand(
        "enum", "enumerate the closed and marked languages up to a length");
    c_enum->add_option("file", oe.file, "automaton file ('-' for stdin)")
        ->required();
    c_enum->add_option("--max-len", oe.max_len, "maximum word length")
        ->required();
    add_io(c_enum, oe.io, false);
    c_enum->callback([&] {
        Generator g = load(oe.file, oe.io.parity);
        BoundedLanguage lang = enumerate_bounded(g, oe.max_len);
        std::string text =
            "closed " + std::to_string(lang.closed.size()) + "\n";
        for (const Word& w : lang.closed) text += "  " + word_text(w) + "\n";
        text += "marked " + std::to_string(lang.marked.size()) + "\n";
        for (const Word& w : lang.marked) text += "  " + word_text(w) + "\n";
        write_text(oe.io.out, text);
        code = 0;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return code;
}

} // namespace qsup
