/* io.cc -- text format, DOT export, and JSON reports */

#include "qsup/io.hh"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace qsup {

namespace {

struct Token {
    std::string text;
    std::size_t line = 0, col = 0;
};

/// Tokens per line, 1-based positions, comments stripped.
std::vector<std::vector<Token>> split_lines(std::string_view text) {
    std::vector<std::vector<Token>> out;
    std::size_t start = 0, line_no = 1;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            text.substr(start, (end == std::string_view::npos ? text.size() : end) -
                                   start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<Token> toks;
        std::size_t j = 0;
        while (j < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[j]))) {
                ++j;
                continue;
            }
            std::size_t begin = j;
            while (j < line.size() &&
                   !std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            toks.push_back(
                {std::string(line.substr(begin, j - begin)), line_no, begin + 1});
        }
        out.push_back(std::move(toks));
        if (end == std::string_view::npos) break;
        start = end + 1;
        ++line_no;
    }
    return out;
}

/// Shorter strings first, then lexicographic: numeric order on the
/// canonical state names, still a total order on arbitrary ones.
bool shortlex_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

Generator parse_automaton(std::string_view text) {
    enum class Sec { none, alphabet, states, initial, marked, trans };
    const std::map<std::string, Sec, std::less<>> headers = {
        {"alphabet:", Sec::alphabet},
        {"states:", Sec::states},
        {"initial:", Sec::initial},
        {"marked:", Sec::marked},
        {"trans:", Sec::trans}};

    std::set<Sec> seen;
    Sec cur = Sec::none;
    std::size_t states_header_line = 1;

    std::vector<std::pair<Event, Token>> events;
    std::vector<Token> state_decls;
    std::optional<Token> initial_tok;
    std::vector<Token> marked_toks;
    struct TransTokens {
        Token src, ev, dst;
    };
    std::vector<TransTokens> trans;

    for (const auto& line : split_lines(text)) {
        if (line.empty()) continue;
        std::size_t at = 0;
        Sec line_sec = cur;
        if (line[0].text.back() == ':') {
            auto hit = headers.find(line[0].text);
            if (hit == headers.end())
                throw ParseError("unknown section " + line[0].text, line[0].line,
                                 line[0].col);
            if (!seen.insert(hit->second).second)
                throw ParseError("duplicate section " + line[0].text,
                                 line[0].line, line[0].col);
            cur = line_sec = hit->second;
            if (cur == Sec::states) states_header_line = line[0].line;
            at = 1;
        }
        if (at >= line.size()) continue;
        if (line_sec == Sec::none)
            throw ParseError("content before any section header", line[at].line,
                             line[at].col);
        switch (line_sec) {
        case Sec::alphabet: {
            if (line.size() - at != 2)
                throw ParseError("alphabet lines are `<event> <c|u>`",
                                 line[at].line, line[at].col);
            const Token& name = line[at];
            const Token& flag = line[at + 1];
            Ctrl ctrl;
            if (flag.text == "c")
                ctrl = Ctrl::controllable;
            else if (flag.text == "u")
                ctrl = Ctrl::uncontrollable;
            else
                throw ParseError("controllability flag must be c or u",
                                 flag.line, flag.col);
            events.push_back({{name.text, ctrl}, name});
            break;
        }
        case Sec::states:
            for (std::size_t i = at; i < line.size(); ++i)
                state_decls.push_back(line[i]);
            break;
        case Sec::initial:
            for (std::size_t i = at; i < line.size(); ++i) {
                if (initial_tok)
                    throw ParseError("more than one initial state", line[i].line,
                                     line[i].col);
                initial_tok = line[i];
            }
            break;
        case Sec::marked:
            for (std::size_t i = at; i < line.size(); ++i)
                marked_toks.push_back(line[i]);
            break;
        case Sec::trans:
            if (line.size() - at != 3)
                throw ParseError("transitions are `<src> <event> <dst>`",
                                 line[at].line, line[at].col);
            trans.push_back({line[at], line[at + 1], line[at + 2]});
            break;
        case Sec::none:
            break;
        }
    }

    std::set<std::string> event_names;
    for (const auto& [event, tok] : events)
        if (!event_names.insert(event.name).second)
            throw ParseError("duplicate event " + event.name, tok.line, tok.col);
    std::set<std::string> state_names;
    for (const auto& tok : state_decls)
        if (!state_names.insert(tok.text).second)
            throw ParseError("duplicate state " + tok.text, tok.line, tok.col);

    if (!state_decls.empty() && !initial_tok)
        throw ParseError("states declared but no initial state",
                         states_header_line, 1);
    if (initial_tok && !state_names.count(initial_tok->text))
        throw ParseError("unknown initial state " + initial_tok->text,
                         initial_tok->line, initial_tok->col);
    for (const auto& tok : marked_toks)
        if (!state_names.count(tok.text))
            throw ParseError("unknown marked state " + tok.text, tok.line,
                             tok.col);
    std::set<std::pair<std::string, std::string>> outgoing;
    for (const auto& t : trans) {
        if (!state_names.count(t.src.text))
            throw ParseError("unknown state " + t.src.text, t.src.line,
                             t.src.col);
        if (!event_names.count(t.ev.text))
            throw ParseError("unknown event " + t.ev.text, t.ev.line, t.ev.col);
        if (!state_names.count(t.dst.text))
            throw ParseError("unknown state " + t.dst.text, t.dst.line,
                             t.dst.col);
        if (!outgoing.insert({t.src.text, t.ev.text}).second)
            throw ParseError("duplicate transition on " + t.src.text + " " +
                                 t.ev.text,
                             t.src.line, t.src.col);
    }

    RawAutomaton raw;
    for (const auto& [event, tok] : events) {
        (void)tok;
        raw.alphabet.push_back(event);
    }
    for (const auto& tok : state_decls) raw.states.push_back(tok.text);
    if (initial_tok) raw.initial = initial_tok->text;
    for (const auto& tok : marked_toks) raw.marked.push_back(tok.text);
    for (const auto& t : trans)
        raw.transitions.push_back({t.src.text, t.ev.text, t.dst.text});
    return validate(raw);
}

Generator load_automaton(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin),
                    std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open file: " + path);
        text.assign(std::istreambuf_iterator<char>(in),
                    std::istreambuf_iterator<char>());
    }
    return parse_automaton(text);
}

std::string serialize_automaton(const Generator& g) {
    std::string out = "alphabet:\n";
    for (const Event& e : g.alphabet().events())
        out += e.name + (e.ctrl == Ctrl::controllable ? " c\n" : " u\n");

    // Renumber breadth-first from the initial state, successors in event
    // order; unreachable states keep their relative order afterwards.
    std::vector<StateId> newid(g.num_states(), kNoState);
    if (!g.empty()) {
        std::size_t next = 0;
        std::deque<StateId> queue{g.initial()};
        newid[g.initial()] = static_cast<StateId>(next++);
        while (!queue.empty()) {
            StateId s = queue.front();
            queue.pop_front();
            for (const auto& [e, t] : g.successors(s)) {
                (void)e;
                if (newid[t] == kNoState) {
                    newid[t] = static_cast<StateId>(next++);
                    queue.push_back(t);
                }
            }
        }
        for (StateId s = 0; s < g.num_states(); ++s)
            if (newid[s] == kNoState) newid[s] = static_cast<StateId>(next++);
    }
    auto nm = [&](StateId s) { return std::to_string(newid[s]); };

    out += "states:\n";
    if (!g.empty()) {
        std::vector<std::string> names;
        for (StateId s = 0; s < g.num_states(); ++s) names.push_back(nm(s));
        std::sort(names.begin(), names.end(), shortlex_less);
        for (std::size_t i = 0; i < names.size(); ++i)
            out += (i ? " " : "") + names[i];
        out += "\n";
    }
    if (g.has_initial()) out += "initial:\n" + nm(g.initial()) + "\n";

    out += "marked:\n";
    {
        std::vector<std::string> names;
        for (StateId s = 0; s < g.num_states(); ++s)
            if (g.marked(s)) names.push_back(nm(s));
        std::sort(names.begin(), names.end(), shortlex_less);
        if (!names.empty()) {
            for (std::size_t i = 0; i < names.size(); ++i)
                out += (i ? " " : "") + names[i];
            out += "\n";
        }
    }

    out += "trans:\n";
    {
        std::vector<std::tuple<std::string, std::string, std::string>> rows;
        for (StateId s = 0; s < g.num_states(); ++s)
            for (const auto& [e, t] : g.successors(s))
                rows.emplace_back(nm(s), g.alphabet().event(e).name, nm(t));
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            if (std::get<0>(a) != std::get<0>(b))
                return shortlex_less(std::get<0>(a), std::get<0>(b));
            return std::get<1>(a) < std::get<1>(b);
        });
        for (const auto& [src, ev, dst] : rows)
            out += src + " " + ev + " " + dst + "\n";
    }
    return out;
}

std::string export_dot(const Generator& g) {
    std::string out = "digraph G {\n  rankdir=LR;\n  node [shape=circle];\n";
    if (!g.empty()) {
        std::string init = "__init";
        while (g.find_state(init)) init += '_';
        out += "  " + quote_dot(init) + " [shape=point,label=\"\"];\n";
        for (StateId s = 0; s < g.num_states(); ++s) {
            out += "  " + quote_dot(g.name(s));
            if (g.marked(s)) out += " [shape=doublecircle]";
            out += ";\n";
        }
        out += "  " + quote_dot(init) + " -> " + quote_dot(g.name(g.initial())) +
               ";\n";
        for (StateId s = 0; s < g.num_states(); ++s)
            for (const auto& [e, t] : g.successors(s)) {
                const Event& event = g.alphabet().event(e);
                out += "  " + quote_dot(g.name(s)) + " -> " +
                       quote_dot(g.name(t)) + " [label=" +
                       quote_dot(event.name);
                if (event.ctrl == Ctrl::uncontrollable) out += ",style=dashed";
                out += "];\n";
            }
    }
    out += "}\n";
    return out;
}

std::string render_report(const Verdict& verdict, const std::string& property_name,
                          const std::vector<std::pair<std::string, std::string>>& params,
                          const Generator& subject, double elapsed_ms) {
    nlohmann::json j;
    j["verdict"] = verdict.holds;
    j["property"]["name"] = property_name;
    j["property"]["params"] = nlohmann::json::object();
    for (const auto& [key, value] : params) j["property"]["params"][key] = value;
    j["witnesses"] = nlohmann::json::array();
    for (const Witness& w : verdict.witnesses) {
        nlohmann::json jw;
        jw["state"] = w.state;
        jw["trace"] = w.events;
        switch (w.kind) {
        case Witness::Kind::path:
            jw["kind"] = "path";
            break;
        case Witness::Kind::cycle:
            jw["kind"] = "cycle";
            break;
        case Witness::Kind::unreachable:
            jw["kind"] = "unreachable";
            break;
        }
        if (w.bound) jw["bound"] = *w.bound;
        if (w.marker) jw["marker"] = *w.marker;
        j["witnesses"].push_back(std::move(jw));
    }
    j["stats"]["states"] = subject.num_states();
    j["stats"]["transitions"] = subject.num_transitions();
    j["stats"]["elapsed_ms"] = elapsed_ms;
    return j.dump(2) + "\n";
}

} // namespace qsup
