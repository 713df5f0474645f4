#pragma once

#include <promptsynth/formula.hpp>

#include <string>
#include <vector>

namespace promptsynth
{

/// Split of the propositions into environment inputs and system outputs,
/// plus the fresh color proposition used by the alternating-color rewrite.
class prop_partition
{
public:
  /// Throws if inputs and outputs overlap, a name repeats, or the color
  /// is one of them.
  prop_partition( std::vector<std::string> inputs, std::vector<std::string> outputs,
                  std::string color = "p" );

  std::vector<std::string> const& inputs() const { return inputs_; }
  std::vector<std::string> const& outputs() const { return outputs_; }
  std::string const& color() const { return color_; }

  bool is_input( std::string const& name ) const;
  bool is_output( std::string const& name ) const;

  /// Throws if `f` mentions a proposition outside inputs and outputs.
  void check_covers( formula const& f ) const;

private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::string color_;
};

/*! \brief Prompt arbiter family with r clients, the first r_p of them prompt.

  Conjunction, in this order, of `G(!q_i | Fp p_i)` for i <= r_p,
  `G(!q_i | F p_i)` for r_p < i <= r, and `G(!p_i | !p_j)` for i < j.
*/
formula arbiter_formula( unsigned r, unsigned r_p );

/// Inputs q1..qr and outputs p1..pr, with the given color.
prop_partition arbiter_partition( unsigned r, std::string color = "p" );

} // namespace promptsynth
