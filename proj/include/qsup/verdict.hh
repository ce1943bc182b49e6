/* verdict.hh -- property-check results with replayable counterexamples */

#ifndef QSUP_VERDICT_HH
#define QSUP_VERDICT_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qsup {

/// One counterexample of a failed property check. Interpretation of
/// `events` depends on `kind`:
///  - path: replays from `state` and violates the stated bound;
///  - cycle: replays from `state`, stays off the target throughout, and
///    closes a cycle (so it pumps to arbitrary length);
///  - unreachable: an access path from the initial state to `state`, which
///    itself cannot reach the target at all.
struct Witness {
    enum class Kind { path, cycle, unreachable };

    std::string state;
    std::vector<std::string> events;
    Kind kind = Kind::path;
    /// The violated step budget, when the property carries one.
    std::optional<std::size_t> bound;
    /// The plant marker concerned, for per-marker properties.
    std::optional<std::string> marker;
};

/// Outcome of a property check. A false verdict always carries at least
/// one witness.
struct Verdict {
    bool holds = true;
    std::vector<Witness> witnesses;

    explicit operator bool() const { return holds; }
};

} // namespace qsup

#endif
