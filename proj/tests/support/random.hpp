#pragma once

#include <promptsynth/formula.hpp>
#include <promptsynth/lasso.hpp>

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace promptsynth::testing
{

/* Random NNF formula with about `budget` nodes over the given propositions.
   Prompt-eventually nodes appear only when `allow_prompt` is set. */
inline formula random_formula( std::mt19937& rng, std::vector<std::string> const& props, unsigned budget,
                               bool allow_prompt )
{
  auto pick = [&]( unsigned n ) { return std::uniform_int_distribution<unsigned>( 0, n - 1 )( rng ); };
  if ( budget <= 1 )
  {
    switch ( pick( 10 ) )
    {
    case 0:
      return formula::constant( pick( 2 ) == 0 );
    case 1:
    case 2:
    case 3:
      return formula::negated_atom( props[pick( static_cast<unsigned>( props.size() ) )] );
    default:
      return formula::atom( props[pick( static_cast<unsigned>( props.size() ) )] );
    }
  }
  unsigned const choice = pick( allow_prompt ? 8 : 7 );
  if ( choice < 2 || ( choice == 7 ) )
  {
    auto sub = random_formula( rng, props, budget - 1, allow_prompt );
    if ( choice == 7 )
      return formula::prompt_eventually( sub );
    return choice == 0 ? formula::next( sub ) : eventually( sub );
  }
  if ( choice == 2 )
    return globally( random_formula( rng, props, budget - 1, allow_prompt ) );
  unsigned const left = 1 + pick( budget - 1 );
  auto lhs = random_formula( rng, props, left, allow_prompt );
  auto rhs = random_formula( rng, props, budget - left > 0 ? budget - left : 1, allow_prompt );
  switch ( choice )
  {
  case 3:
    return formula::conjunction( lhs, rhs );
  case 4:
    return formula::disjunction( lhs, rhs );
  case 5:
    return formula::until( lhs, rhs );
  default:
    return formula::release( lhs, rhs );
  }
}

/* Random formula whose distinct-subformula count is at most `max_size`. */
inline formula random_formula_of_size( std::mt19937& rng, std::vector<std::string> const& props, unsigned max_size,
                                       bool allow_prompt )
{
  for ( ;; )
  {
    unsigned const budget = std::uniform_int_distribution<unsigned>( 1, max_size )( rng );
    auto f = random_formula( rng, props, budget, allow_prompt );
    if ( size( f ) <= max_size )
      return f;
  }
}

inline valuation random_valuation( std::mt19937& rng, std::vector<std::string> const& props )
{
  valuation v;
  for ( auto const& p : props )
    if ( rng() & 1u )
      v.insert( p );
  return v;
}

/* Random lasso with |prefix| <= max_prefix and 1 <= |loop| <= max_loop. */
inline lasso random_lasso( std::mt19937& rng, std::vector<std::string> const& props, unsigned max_prefix,
                           unsigned max_loop )
{
  std::vector<valuation> prefix, loop;
  unsigned const prefix_length = std::uniform_int_distribution<unsigned>( 0, max_prefix )( rng );
  unsigned const loop_length = std::uniform_int_distribution<unsigned>( 1, max_loop )( rng );
  for ( unsigned i = 0; i < prefix_length; ++i )
    prefix.push_back( random_valuation( rng, props ) );
  for ( unsigned i = 0; i < loop_length; ++i )
    loop.push_back( random_valuation( rng, props ) );
  return lasso( std::move( prefix ), std::move( loop ) );
}

/* A coloring of `w`: the color holds on alternating blocks whose lengths are
   drawn from [min_block, max_block]. A few blocks form the prefix and an even
   number the loop, so the color changes infinitely often. */
inline lasso random_coloring( std::mt19937& rng, lasso const& w, std::string const& color, unsigned min_block,
                              unsigned max_block )
{
  auto length = [&] { return std::uniform_int_distribution<unsigned>( min_block, max_block )( rng ); };
  bool on = rng() & 1u;
  std::vector<bool> prefix, loop;
  unsigned const prefix_blocks = static_cast<unsigned>( rng() % 3 );
  for ( unsigned b = 0; b < prefix_blocks; ++b, on = !on )
    prefix.insert( prefix.end(), length(), on );
  unsigned const loop_blocks = 2 * ( 1 + static_cast<unsigned>( rng() % 2 ) );
  for ( unsigned b = 0; b < loop_blocks; ++b, on = !on )
    loop.insert( loop.end(), length(), on );

  auto letter = []( auto const& pre, auto const& cycle, std::size_t i ) {
    return i < pre.size() ? pre[i] : cycle[( i - pre.size() ) % cycle.size()];
  };
  std::size_t const start = std::max( w.prefix.size(), prefix.size() );
  std::size_t const period = std::lcm( w.loop.size(), loop.size() );
  std::vector<valuation> positions;
  for ( std::size_t i = 0; i < start + period; ++i )
  {
    auto v = letter( w.prefix, w.loop, i );
    if ( letter( prefix, loop, i ) )
      v.insert( color );
    positions.push_back( std::move( v ) );
  }
  return lasso( std::vector<valuation>( positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>( start ) ),
                std::vector<valuation>( positions.begin() + static_cast<std::ptrdiff_t>( start ), positions.end() ) );
}

} // namespace promptsynth::testing
