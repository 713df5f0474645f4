#pragma once

#include <promptsynth/formula.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace promptsynth
{

/// Syntax error with the byte offset of the offending token.
class parse_error : public error
{
public:
  parse_error( std::string const& message, std::size_t position );

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/*! \brief Parses a formula and normalizes it to NNF.

  Grammar, loosest to tightest binding:

      f ::= f -> f          (right associative)
          | f '|' f
          | f & f
          | f U f | f R f   (right associative)
          | ! f | X f | F f | G f | Fp f
          | atom | true | false | ( f )

  General negation and implication are pushed inward; negating `Fp` raises
  negated_prompt_error.
*/
formula parse( std::string_view text );

} // namespace promptsynth
