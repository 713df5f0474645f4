#include "product.hpp"

namespace promptsynth::detail
{

namespace
{

struct letter_map
{
  std::vector<letter> input_bit;
  std::vector<letter> output_bit;
};

letter_map map_propositions( mealy_machine const& m, buchi_automaton const& a )
{
  letter_map map{ std::vector<letter>( m.inputs().size(), 0 ), std::vector<letter>( m.outputs().size(), 0 ) };
  for ( std::size_t i = 0; i < a.propositions().size(); ++i )
  {
    auto const& name = a.propositions()[i];
    if ( auto const pos = m.input_position( name ); pos >= 0 )
      map.input_bit[static_cast<std::size_t>( pos )] = letter{ 1 } << i;
    else if ( auto const pos = m.output_position( name ); pos >= 0 )
      map.output_bit[static_cast<std::size_t>( pos )] = letter{ 1 } << i;
    else
      throw error( "proposition mismatch: '" + name + "' is neither an input nor an output of the machine" );
  }
  return map;
}

letter translate( letter_map const& map, input_index in, output_bits out )
{
  letter l = 0;
  for ( std::size_t i = 0; i < map.input_bit.size(); ++i )
    if ( in >> i & 1 )
      l |= map.input_bit[i];
  for ( std::size_t o = 0; o < map.output_bit.size(); ++o )
    if ( out >> o & 1 )
      l |= map.output_bit[o];
  return l;
}

} // namespace

std::vector<letter> product_letters( mealy_machine const& m, buchi_automaton const& a, std::size_t state )
{
  auto const map = map_propositions( m, a );
  std::vector<letter> letters( m.input_valuations() );
  for ( input_index in = 0; in < m.input_valuations(); ++in )
    letters[in] = translate( map, in, m.output( state, in ) );
  return letters;
}

machine_product build_product( mealy_machine const& m, buchi_automaton const& a )
{
  auto const map = map_propositions( m, a );
  machine_product p;
  p.automaton_states = a.state_count();
  p.graph.resize( m.state_count() * a.state_count() );
  p.input.resize( p.graph.size() );
  p.root = p.node( m.initial(), a.initial() );

  std::vector<std::size_t> last_seen( p.graph.size(), npos );
  for ( std::size_t s = 0; s < m.state_count(); ++s )
    for ( std::size_t q = 0; q < a.state_count(); ++q )
    {
      auto const from = p.node( s, q );
      for ( input_index in = 0; in < m.input_valuations(); ++in )
      {
        auto const l = translate( map, in, m.output( s, in ) );
        for ( auto const& t : a.transitions( q ) )
        {
          if ( !t.condition.satisfied_by( l ) )
            continue;
          auto const to = p.node( m.next( s, in ), t.target );
          if ( last_seen[to] == from )
            continue;
          last_seen[to] = from;
          p.graph[from].push_back( to );
          p.input[from].push_back( in );
        }
      }
    }
  return p;
}

} // namespace promptsynth::detail
