#include <promptsynth/partition.hpp>

#include <algorithm>
#include <set>

namespace promptsynth
{

prop_partition::prop_partition( std::vector<std::string> inputs, std::vector<std::string> outputs,
                                std::string color )
    : inputs_( std::move( inputs ) ), outputs_( std::move( outputs ) ), color_( std::move( color ) )
{
  std::set<std::string> seen;
  for ( auto const* group : { &inputs_, &outputs_ } )
    for ( auto const& name : *group )
    {
      if ( name.empty() )
        throw error( "proposition name must be nonempty" );
      if ( !seen.insert( name ).second )
        throw error( "proposition '" + name + "' listed twice in the partition" );
    }
  if ( color_.empty() )
    throw error( "color proposition must be nonempty" );
  if ( seen.count( color_ ) )
    throw error( "color proposition '" + color_ + "' must not be an input or output" );
}

bool prop_partition::is_input( std::string const& name ) const
{
  return std::find( inputs_.begin(), inputs_.end(), name ) != inputs_.end();
}

bool prop_partition::is_output( std::string const& name ) const
{
  return std::find( outputs_.begin(), outputs_.end(), name ) != outputs_.end();
}

void prop_partition::check_covers( formula const& f ) const
{
  for ( auto const& name : propositions( f ) )
    if ( !is_input( name ) && !is_output( name ) )
      throw error( "proposition '" + name + "' is neither an input nor an output" );
}

formula arbiter_formula( unsigned r, unsigned r_p )
{
  if ( r == 0 )
    throw error( "arbiter needs at least one client" );
  if ( r_p > r )
    throw error( "number of prompt clients exceeds number of clients" );
  auto request = []( unsigned i ) { return "q" + std::to_string( i ); };
  auto grant = []( unsigned i ) { return "p" + std::to_string( i ); };

  std::vector<formula> conjuncts;
  for ( unsigned i = 1; i <= r; ++i )
  {
    auto const response = i <= r_p ? formula::prompt_eventually( formula::atom( grant( i ) ) )
                                   : eventually( formula::atom( grant( i ) ) );
    conjuncts.push_back( globally( formula::disjunction( formula::negated_atom( request( i ) ), response ) ) );
  }
  for ( unsigned i = 1; i <= r; ++i )
    for ( unsigned j = i + 1; j <= r; ++j )
      conjuncts.push_back( globally(
          formula::disjunction( formula::negated_atom( grant( i ) ), formula::negated_atom( grant( j ) ) ) ) );
  return conjoin( conjuncts );
}

prop_partition arbiter_partition( unsigned r, std::string color )
{
  std::vector<std::string> inputs, outputs;
  for ( unsigned i = 1; i <= r; ++i )
  {
    inputs.push_back( "q" + std::to_string( i ) );
    outputs.push_back( "p" + std::to_string( i ) );
  }
  return prop_partition( std::move( inputs ), std::move( outputs ), std::move( color ) );
}

} // namespace promptsynth
