/* io.hh -- text format, DOT export, JSON reports, and the command line */

#ifndef QSUP_IO_HH
#define QSUP_IO_HH

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qsup/automaton.hh"
#include "qsup/verdict.hh"

namespace qsup {

/// Parses the sectioned text format:
///
///     alphabet:
///       a c
///       b u
///     states:
///       0 1
///     initial:
///       0
///     marked:
///       0
///     trans:
///       0 a 1
///       1 b 0
///
/// `#` starts a comment; tokens are whitespace-separated; each alphabet
/// line is an event name followed by `c` (controllable) or `u`. Sections
/// may appear in any order, each at most once. Throws ParseError (with
/// line/column) on malformed input, including located semantic errors
/// such as unknown references, nondeterminism, or duplicate sections.
Generator parse_automaton(std::string_view text);

/// Reads and parses a file; "-" means standard input.
Generator load_automaton(const std::string& path);

/// Canonical serialization: states are renumbered "0", "1", ... in
/// breadth-first order from the initial state (events in alphabet order),
/// unreachable states appended in original order; sections are emitted in
/// the fixed order alphabet/states/initial/marked/trans with sorted lines.
/// parse(serialize(g)) reproduces the serialization byte for byte.
std::string serialize_automaton(const Generator& g);

/// Graphviz DOT export: marked states doublecircle, an invisible arrow
/// into the initial state, uncontrollable events dashed.
std::string export_dot(const Generator& g);

/// JSON report of one property check, for machine consumption:
/// {verdict, property{name, params}, witnesses[...], stats{...}}.
std::string render_report(const Verdict& verdict, const std::string& property_name,
                          const std::vector<std::pair<std::string, std::string>>& params,
                          const Generator& subject, double elapsed_ms);

/// Entry point of the command line tool. Returns the process exit code:
/// 0 for pass / nonempty synthesis, 1 for fail / empty synthesis, 2 for
/// usage, parse, or precondition errors.
int run_cli(int argc, const char* const* argv);

} // namespace qsup

#endif
