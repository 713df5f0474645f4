#pragma once

#include <promptsynth/formula.hpp>
#include <promptsynth/lasso.hpp>
#include <promptsynth/mealy.hpp>

#include <cstddef>
#include <optional>
#include <string>

namespace promptsynth
{

/// Input word and the play the machine produces on it.
struct counterexample
{
  lasso inputs;
  lasso play;
};

struct check_report
{
  bool holds = false;
  /// Present exactly when the check fails.
  std::optional<counterexample> witness;
};

/*! \brief Decides whether every play of `m` satisfies the pure-LTL `f`.

  Searches the product of the machine (reading every input valuation) with
  the automaton for the negation of `f` for a reachable accepting cycle.
  Throws if `f` mentions a proposition the machine neither reads nor writes.
*/
check_report model_check_ltl( mealy_machine const& m, formula const& f );

/// Whether `m` realizes the Prompt-LTL `f` with respect to bound k.
check_report model_check_prompt( mealy_machine const& m, formula const& f, std::size_t k );

struct bound_result
{
  std::optional<std::size_t> bound;
  /// Why no bound was returned.
  std::string note;
};

/// Default cap for minimal_realized_bound: states * 2^size(f), saturating.
std::size_t default_bound_cap( mealy_machine const& m, formula const& f );

/// Bounds larger than this are never probed, whatever the cap.
inline constexpr std::size_t bound_search_limit = 4096;

/*! \brief Smallest k <= cap for which model_check_prompt holds.

  Returns no bound at once if the machine violates `f` with every prompt
  replaced by a plain eventually, since then no bound works. Otherwise
  doubles k until the check holds and bisects below it.
*/
bound_result minimal_realized_bound( mealy_machine const& m, formula const& f, std::optional<std::size_t> cap = std::nullopt );

/// The machine with `color` removed from its outputs.
mealy_machine strip_color( mealy_machine const& m, std::string const& color = "p" );

/// r states in a cycle; state i grants p_{i+1} whatever the inputs q1..qr.
mealy_machine round_robin_machine( unsigned r );

/// Six-state arbiter strategy for two prompt clients with color output.
mealy_machine sigma_6_3();
/// Twelve-state arbiter strategy for two prompt clients with color output.
mealy_machine sigma_12_1();

} // namespace promptsynth
