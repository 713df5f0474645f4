#pragma once

#include <promptsynth/formula.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace promptsynth
{

/// Set of propositions that hold at one position.
using valuation = std::set<std::string>;

/// Ultimately periodic word prefix . loop^omega.
struct lasso
{
  std::vector<valuation> prefix;
  std::vector<valuation> loop;

  lasso() = default;
  /// Throws if the loop is empty.
  lasso( std::vector<valuation> prefix, std::vector<valuation> loop );

  std::size_t positions() const { return prefix.size() + loop.size(); }
  /// Successor in the finite position graph; the last loop position wraps.
  std::size_t successor( std::size_t position ) const
  {
    return position + 1 < positions() ? position + 1 : prefix.size();
  }
  valuation const& at( std::size_t position ) const
  {
    return position < prefix.size() ? prefix[position] : loop[position - prefix.size()];
  }

  friend bool operator==( lasso const&, lasso const& ) = default;
};

/// Parses `prefix ; loop`, each a comma-separated list of `{a b c}` sets.
lasso parse_lasso( std::string_view text );
std::string to_string( lasso const& w );

/*! \brief Decides (w, 0, k) |= f.

  Each subformula is evaluated on the finitely many lasso positions; until
  and release are least/greatest fixpoints on the position graph.
  `k` must be given if `f` contains a prompt-eventually.
*/
bool eval_on_lasso( formula const& f, lasso const& w, std::optional<std::size_t> k = std::nullopt );

} // namespace promptsynth
