#pragma once

#include <promptsynth/automata.hpp>
#include <promptsynth/mealy.hpp>
#include <promptsynth/partition.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace promptsynth
{

/// Wall-clock limit for one solver call; empty means unlimited.
using time_budget = std::optional<std::chrono::milliseconds>;

/*! \brief Certificate that a machine's run graph with a UCW has no cycle
  through a rejecting state.

  Indexed by (automaton state q, machine state m) as q * machine_states + m.
  Counters exist only for pairs inside automaton components that contain a
  rejecting state on a cycle; elsewhere they read 0.
*/
struct run_graph_annotation
{
  std::size_t automaton_states = 0;
  std::size_t machine_states = 0;
  std::vector<bool> reachable;
  std::vector<std::uint64_t> counter;

  std::size_t index( std::size_t q, std::size_t m ) const { return q * machine_states + m; }
};

enum class synthesis_status
{
  realizable,
  unrealizable_at_size,
  unknown,
};

struct synthesis_result
{
  synthesis_status status = synthesis_status::unknown;
  std::optional<mealy_machine> machine;
  std::optional<run_graph_annotation> annotation;
  std::size_t variables = 0;
  std::size_t clauses = 0;
};

/// Outputs of machines synthesized for `ucw`: the partition's outputs, then
/// the color if the automaton mentions it.
std::vector<std::string> synthesized_outputs( buchi_automaton const& ucw, prop_partition const& parts );

/*! \brief Searches for an `n`-state machine all of whose plays the UCW accepts.

  Propositional encoding with the universal input quantifier expanded:
  successor and output choices per (state, input valuation), reachability
  and binary counters per (automaton state, machine state), counters
  strictly increasing into rejecting states. The initial machine state is 0.
  Every machine returned has passed check_run_graph.

  The solver is the bundled one unless PROMPTSYNTH_SAT_SOLVER names an
  external DIMACS solver command.
*/
synthesis_result bounded_synthesis( buchi_automaton const& ucw, std::size_t n, prop_partition const& parts,
                                    time_budget budget = std::nullopt );

/// The CNF bounded_synthesis would solve, in DIMACS format.
std::string bounded_synthesis_dimacs( buchi_automaton const& ucw, std::size_t n, prop_partition const& parts );

/// True iff the reachable part of the machine-UCW product has no cycle
/// through a rejecting UCW state.
bool check_run_graph( mealy_machine const& m, buchi_automaton const& ucw );

} // namespace promptsynth
