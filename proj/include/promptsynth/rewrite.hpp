#pragma once

#include <promptsynth/formula.hpp>

#include <string>

namespace promptsynth
{

/*! \brief Alternating-color relativization.

  Replaces every `Fp g` (innermost first) by

      (c -> (c U (!c U g'))) & (!c -> (!c U (c U g')))

  where `c` is the color proposition and `g'` the relativized operand.
  The result is pure LTL. Throws if `color` occurs in `f`.
*/
formula relativize( formula const& f, std::string const& color = "p" );

/*! \brief LTL formula satisfied exactly by k-bounded colorings.

  `G( (!c | X(!c | X(... X !c))) & (c | X(c | X(... X c))) )` with k nexts
  in each chain: whatever the color now, the other one follows within k
  steps, so every color block has length at most k. Requires k >= 1.
*/
formula boundedness_formula( unsigned k, std::string const& color = "p" );

/// Replaces every `Fp g` by `g | X g | ... | X^k g`, giving pure LTL with
/// the prompt semantics for bound k hardwired.
formula unfold_prompt( formula const& f, unsigned k );

/// Replaces every `Fp g` by `F g`.
formula weaken_prompt( formula const& f );

} // namespace promptsynth
