#include <promptsynth/verify.hpp>

#include <promptsynth/automata.hpp>
#include <promptsynth/rewrite.hpp>

#include "graph.hpp"
#include "product.hpp"

#include <algorithm>
#include <limits>

namespace promptsynth
{

namespace
{

void check_propositions( mealy_machine const& m, formula const& f )
{
  for ( auto const& name : propositions( f ) )
    if ( m.input_position( name ) < 0 && m.output_position( name ) < 0 )
      throw error( "proposition mismatch: '" + name + "' is neither an input nor an output of the machine" );
}

std::vector<valuation> inputs_along( mealy_machine const& m, detail::machine_product const& p,
                                     std::vector<std::size_t> const& path )
{
  std::vector<valuation> inputs;
  for ( std::size_t i = 0; i + 1 < path.size(); ++i )
  {
    auto const& succ = p.graph[path[i]];
    auto const at = static_cast<std::size_t>( std::find( succ.begin(), succ.end(), path[i + 1] ) - succ.begin() );
    inputs.push_back( m.decode_input( p.input[path[i]][at] ) );
  }
  return inputs;
}

mealy_machine cycle_fixture( std::vector<valuation> const& outputs )
{
  std::vector<std::string> inputs;
  std::vector<std::string> names;
  for ( int i = 1; i <= 6; ++i )
  {
    inputs.push_back( "q" + std::to_string( i ) );
    names.push_back( "p" + std::to_string( i ) );
  }
  names.push_back( "p" );
  mealy_machine m( inputs, names, outputs.size() );
  for ( std::size_t s = 0; s < outputs.size(); ++s )
  {
    output_bits out = 0;
    for ( auto const& name : outputs[s] )
      out |= output_bits{ 1 } << m.output_position( name );
    for ( input_index in = 0; in < m.input_valuations(); ++in )
      m.set( s, in, ( s + 1 ) % outputs.size(), out );
  }
  return m;
}

} // namespace

check_report model_check_ltl( mealy_machine const& m, formula const& f )
{
  check_propositions( m, f );
  auto const negated = ltl_to_nba( negate( f ) );
  auto const product = detail::build_product( m, negated );
  auto const sccs = detail::strongly_connected_components( product.graph, { product.root } );
  auto bad = [&]( std::size_t node ) {
    auto const c = sccs.component[node];
    return c != detail::npos && sccs.cyclic[c] && negated.marked( product.automaton_state( node ) );
  };
  auto const stem = detail::find_path( product.graph, product.root, bad, []( std::size_t ) { return true; } );
  if ( !stem )
    return { true, std::nullopt };

  auto const target = stem->back();
  auto const component = sccs.component[target];
  auto const cycle = detail::find_cycle( product.graph, target,
                                         [&]( std::size_t node ) { return sccs.component[node] == component; } );
  if ( !cycle )
    throw internal_error( "accepting component without a cycle" );

  lasso inputs( inputs_along( m, product, *stem ), inputs_along( m, product, *cycle ) );
  auto play = induced_play( m, inputs );
  return { false, counterexample{ std::move( inputs ), std::move( play ) } };
}

check_report model_check_prompt( mealy_machine const& m, formula const& f, std::size_t k )
{
  if ( k > std::numeric_limits<unsigned>::max() )
    throw error( "bound too large" );
  return model_check_ltl( m, unfold_prompt( f, static_cast<unsigned>( k ) ) );
}

std::size_t default_bound_cap( mealy_machine const& m, formula const& f )
{
  constexpr auto saturated = std::numeric_limits<std::size_t>::max();
  auto const exponent = size( f );
  if ( exponent >= std::numeric_limits<std::size_t>::digits )
    return saturated;
  auto const power = std::size_t{ 1 } << exponent;
  return m.state_count() > saturated / power ? saturated : m.state_count() * power;
}

bound_result minimal_realized_bound( mealy_machine const& m, formula const& f, std::optional<std::size_t> cap )
{
  auto const limit = cap.value_or( default_bound_cap( m, f ) );
  auto const probe_limit = std::min( limit, bound_search_limit );
  if ( !model_check_ltl( m, weaken_prompt( f ) ).holds )
    return { std::nullopt, "machine violates the formula for every bound" };

  auto holds = [&]( std::size_t k ) { return model_check_prompt( m, f, k ).holds; };
  if ( holds( 0 ) )
    return { 0, {} };

  std::size_t failing = 0;
  std::optional<std::size_t> passing;
  for ( std::size_t k = 1; failing < probe_limit; k = std::min( k * 2, probe_limit ) )
  {
    if ( holds( k ) )
    {
      passing = k;
      break;
    }
    failing = k;
  }
  if ( !passing )
    return { std::nullopt, probe_limit < limit ? "search limit reached" : "cap reached" };
  while ( *passing - failing > 1 )
  {
    auto const mid = failing + ( *passing - failing ) / 2;
    if ( holds( mid ) )
      passing = mid;
    else
      failing = mid;
  }
  return { passing, {} };
}

mealy_machine strip_color( mealy_machine const& m, std::string const& color )
{
  auto const position = m.output_position( color );
  if ( position < 0 )
    return m;
  auto outputs = m.outputs();
  outputs.erase( outputs.begin() + position );
  mealy_machine stripped( m.inputs(), outputs, m.state_count(), m.initial() );
  auto const low = ( output_bits{ 1 } << position ) - 1;
  for ( std::size_t s = 0; s < m.state_count(); ++s )
    for ( input_index in = 0; in < m.input_valuations(); ++in )
    {
      auto const out = m.output( s, in );
      stripped.set( s, in, m.next( s, in ), ( out & low ) | ( ( out >> ( position + 1 ) ) << position ) );
    }
  return stripped;
}

mealy_machine round_robin_machine( unsigned r )
{
  if ( r == 0 )
    throw error( "round robin needs at least one client" );
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  for ( unsigned i = 1; i <= r; ++i )
  {
    inputs.push_back( "q" + std::to_string( i ) );
    outputs.push_back( "p" + std::to_string( i ) );
  }
  mealy_machine m( inputs, outputs, r );
  for ( std::size_t s = 0; s < r; ++s )
    for ( input_index in = 0; in < m.input_valuations(); ++in )
      m.set( s, in, ( s + 1 ) % r, output_bits{ 1 } << s );
  return m;
}

mealy_machine sigma_6_3()
{
  return cycle_fixture( { { "p2" }, { "p6" }, { "p4" }, { "p", "p1" }, { "p", "p5" }, { "p", "p3" } } );
}

mealy_machine sigma_12_1()
{
  return cycle_fixture( { { "p", "p2" },
                          { "p4" },
                          { "p", "p1" },
                          { "p2" },
                          { "p", "p5" },
                          { "p1" },
                          { "p", "p2" },
                          { "p3" },
                          { "p", "p1" },
                          { "p2" },
                          { "p", "p6" },
                          { "p1" } } );
}

} // namespace promptsynth
