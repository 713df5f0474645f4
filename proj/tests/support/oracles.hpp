#pragma once

/* Independent reference implementations used as test oracles. None of them
   shares code with the library routine it checks. */

#include <promptsynth/formula.hpp>
#include <promptsynth/lasso.hpp>
#include <promptsynth/mealy.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace promptsynth::testing
{

/* Distinct subformulas, collected through their printed form. */
inline std::size_t brute_force_size( formula const& f )
{
  std::set<std::string> seen;
  std::vector<formula> stack{ f };
  while ( !stack.empty() )
  {
    auto g = stack.back();
    stack.pop_back();
    seen.insert( to_string( g ) );
    for ( std::size_t i = 0; i < g.arity(); ++i )
      stack.push_back( i == 0 ? g.lhs() : g.rhs() );
  }
  return seen.size();
}

/* Color block scan on an unrolled copy of the lasso. */
struct block_report
{
  bool infinitely_many_changes = false;
  std::size_t max_block = 0; // over complete blocks
  std::size_t min_block = 0;
};

inline block_report scan_blocks( lasso const& w, std::string const& color )
{
  block_report report;
  auto holds = [&]( std::size_t i ) { return w.at( i ).count( color ) > 0; };
  bool loop_changes = false;
  for ( std::size_t i = 0; i < w.loop.size(); ++i )
  {
    std::size_t const a = w.prefix.size() + i;
    std::size_t const b = w.prefix.size() + ( i + 1 ) % w.loop.size();
    loop_changes = loop_changes || holds( a ) != holds( b );
  }
  report.infinitely_many_changes = loop_changes;

  std::size_t const length = w.prefix.size() + 3 * w.loop.size();
  std::vector<bool> colors( length );
  for ( std::size_t i = 0, pos = 0; i < length; ++i, pos = w.successor( pos ) )
    colors[i] = holds( pos );
  /* position 0 and every flip are change points; a block ends at the next one */
  std::vector<std::size_t> change_points{ 0 };
  for ( std::size_t i = 1; i < length; ++i )
    if ( colors[i] != colors[i - 1] )
      change_points.push_back( i );
  report.min_block = static_cast<std::size_t>( -1 );
  for ( std::size_t i = 0; i + 1 < change_points.size(); ++i )
  {
    auto const len = change_points[i + 1] - change_points[i];
    report.max_block = std::max( report.max_block, len );
    report.min_block = std::min( report.min_block, len );
  }
  if ( !loop_changes )
  {
    report.max_block = static_cast<std::size_t>( -1 );
  }
  return report;
}

inline bool is_k_bounded( lasso const& w, std::string const& color, std::size_t k )
{
  auto const r = scan_blocks( w, color );
  return r.infinitely_many_changes && r.max_block <= k;
}

/* Calls `visit` on every machine with `states` states (initial state 0). */
inline void for_each_machine( std::vector<std::string> const& inputs, std::vector<std::string> const& outputs,
                              std::size_t states, std::function<void( mealy_machine const& )> const& visit )
{
  std::size_t const columns = std::size_t{ 1 } << inputs.size();
  std::size_t const choices = states << outputs.size();
  std::size_t const entries = states * columns;
  std::vector<std::size_t> digits( entries, 0 );
  for ( ;; )
  {
    mealy_machine m( inputs, outputs, states );
    for ( std::size_t e = 0; e < entries; ++e )
      m.set( e / columns, static_cast<input_index>( e % columns ), digits[e] % states, digits[e] / states );
    visit( m );
    std::size_t e = 0;
    while ( e < entries && ++digits[e] == choices )
      digits[e++] = 0;
    if ( e == entries )
      return;
  }
}

/* Play of a machine on an input lasso, by direct simulation: runs the loop
   until the machine state at its start repeats. */
inline lasso simulate( mealy_machine const& m, lasso const& inputs )
{
  std::vector<valuation> positions;
  std::size_t state = m.initial();
  auto step = [&]( valuation const& in ) {
    valuation v;
    input_index index = 0;
    for ( std::size_t i = 0; i < m.inputs().size(); ++i )
      if ( in.count( m.inputs()[i] ) )
      {
        v.insert( m.inputs()[i] );
        index |= input_index{ 1 } << i;
      }
    for ( std::size_t o = 0; o < m.outputs().size(); ++o )
      if ( m.output( state, index ) >> o & 1 )
        v.insert( m.outputs()[o] );
    positions.push_back( v );
    state = m.next( state, index );
  };
  for ( auto const& in : inputs.prefix )
    step( in );
  std::map<std::size_t, std::size_t> seen;
  while ( !seen.count( state ) )
  {
    seen[state] = positions.size();
    for ( auto const& in : inputs.loop )
      step( in );
  }
  auto const start = static_cast<std::ptrdiff_t>( seen[state] );
  return lasso( std::vector<valuation>( positions.begin(), positions.begin() + start ),
                std::vector<valuation>( positions.begin() + start, positions.end() ) );
}

/* Every lasso over `props` with |prefix| <= max_prefix, 1 <= |loop| <= max_loop. */
inline std::vector<lasso> all_lassos( std::vector<std::string> const& props, std::size_t max_prefix,
                                      std::size_t max_loop )
{
  std::vector<valuation> letters;
  for ( std::size_t bits = 0; bits < ( std::size_t{ 1 } << props.size() ); ++bits )
  {
    valuation v;
    for ( std::size_t i = 0; i < props.size(); ++i )
      if ( bits >> i & 1 )
        v.insert( props[i] );
    letters.push_back( v );
  }
  std::vector<std::vector<valuation>> words{ {} };
  for ( std::size_t length = 1; length <= std::max( max_prefix, max_loop ); ++length )
  {
    std::vector<std::vector<valuation>> longer;
    for ( auto const& w : words )
      if ( w.size() == length - 1 )
        for ( auto const& l : letters )
        {
          auto copy = w;
          copy.push_back( l );
          longer.push_back( copy );
        }
    words.insert( words.end(), longer.begin(), longer.end() );
  }
  std::vector<lasso> result;
  for ( auto const& prefix : words )
    for ( auto const& loop : words )
      if ( prefix.size() <= max_prefix && !loop.empty() && loop.size() <= max_loop )
        result.emplace_back( prefix, loop );
  return result;
}

} // namespace promptsynth::testing
