#pragma once

#include <promptsynth/formula.hpp>
#include <promptsynth/lasso.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace promptsynth
{

/// Input valuation index: bit i set iff inputs()[i] holds.
using input_index = std::uint32_t;
/// Output valuation: bit i set iff outputs()[i] holds.
using output_bits = std::uint64_t;

/// Most inputs a machine may read; its tables have 2^|I| columns per state.
inline constexpr std::size_t max_machine_inputs = 16;

/*! \brief Finite-state strategy: memory update and output per input valuation.

  Both tables are total: every state has an entry for each of the
  2^|inputs| input valuations.
*/
class mealy_machine
{
public:
  /// A machine with `states` states, every entry looping to 0 with empty output.
  mealy_machine( std::vector<std::string> inputs, std::vector<std::string> outputs, std::size_t states,
                 std::size_t initial = 0 );

  std::vector<std::string> const& inputs() const { return inputs_; }
  std::vector<std::string> const& outputs() const { return outputs_; }
  std::size_t state_count() const { return states_; }
  std::size_t initial() const { return initial_; }
  std::size_t input_valuations() const { return std::size_t{ 1 } << inputs_.size(); }

  std::size_t next( std::size_t state, input_index in ) const { return next_[slot( state, in )]; }
  output_bits output( std::size_t state, input_index in ) const { return output_[slot( state, in )]; }
  void set( std::size_t state, input_index in, std::size_t target, output_bits out );

  input_index encode_input( valuation const& v ) const;
  valuation decode_input( input_index in ) const;
  valuation decode_output( output_bits out ) const;

  /// Index of an input or output name, or -1.
  std::ptrdiff_t input_position( std::string const& name ) const;
  std::ptrdiff_t output_position( std::string const& name ) const;

  friend bool operator==( mealy_machine const&, mealy_machine const& ) = default;

private:
  std::size_t slot( std::size_t state, input_index in ) const { return state * input_valuations() + in; }

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::size_t states_;
  std::size_t initial_;
  std::vector<std::size_t> next_;
  std::vector<output_bits> output_;
};

/// Smallest machine with the same input/output behaviour: the reachable
/// part quotiented by output-respecting bisimulation, numbered breadth-first.
mealy_machine minimize( mealy_machine const& m );

/*! \brief Reads the machine JSON format.

  `{"inputs":[..],"outputs":[..],"states":N,"initial":0,
    "transitions":[{"from":s,"input":[..]|"*","to":t,"output":[..]}]}`

  An explicit input list names the inputs that hold. `"*"` covers every
  valuation not listed explicitly for that state. Throws unless every
  (state, valuation) pair is covered exactly once by explicit entries and
  at most one wildcard.
*/
mealy_machine machine_from_json( std::string const& text );
/// States whose entries agree on every valuation are written with `"*"`.
std::string machine_to_json( mealy_machine const& m );
/// Graphviz rendering; edges are labeled `input-set / output-set`.
std::string machine_to_dot( mealy_machine const& m );

mealy_machine load_machine( std::string const& path );
void save_machine( mealy_machine const& m, std::string const& path );

/// Play induced by an input word: each position carries the inputs read
/// and the outputs emitted there.
lasso induced_play( mealy_machine const& m, lasso const& inputs );

} // namespace promptsynth
