#pragma once

#include <promptsynth/automata.hpp>
#include <promptsynth/mealy.hpp>

#include "graph.hpp"

#include <cstddef>
#include <vector>

namespace promptsynth::detail
{

/*! \brief Machine states times automaton states, with the machine reading
  every input valuation.

  Node (m, q) has index m * automaton_states + q. `input[node][i]` is one
  input valuation that realizes the edge to `graph[node][i]`.
*/
struct machine_product
{
  std::size_t automaton_states = 0;
  adjacency graph;
  std::vector<std::vector<input_index>> input;
  std::size_t root = 0;

  std::size_t node( std::size_t machine_state, std::size_t automaton_state ) const
  {
    return machine_state * automaton_states + automaton_state;
  }
  std::size_t machine_state( std::size_t node ) const { return node / automaton_states; }
  std::size_t automaton_state( std::size_t node ) const { return node % automaton_states; }
};

/// Throws if the automaton mentions a proposition the machine neither
/// reads nor writes.
machine_product build_product( mealy_machine const& m, buchi_automaton const& a );

/// Automaton letter seen when machine state `state` reads `in`.
std::vector<letter> product_letters( mealy_machine const& m, buchi_automaton const& a, std::size_t state );

} // namespace promptsynth::detail
