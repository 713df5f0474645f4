#include <promptsynth/rewrite.hpp>

#include <functional>
#include <unordered_map>

namespace promptsynth
{

namespace
{

/* Bottom-up rebuild that rewrites prompt nodes with `on_prompt` and shares
   results for shared input nodes. */
class prompt_rewriter
{
public:
  explicit prompt_rewriter( std::function<formula( formula const& )> on_prompt )
      : on_prompt_( std::move( on_prompt ) ) {}

  formula operator()( formula const& f )
  {
    if ( !f.has_prompt() )
      return f;
    if ( auto it = memo_.find( f.identity() ); it != memo_.end() )
      return it->second;
    formula result;
    switch ( f.kind() )
    {
    case node_kind::conjunction:
      result = formula::conjunction( ( *this )( f.lhs() ), ( *this )( f.rhs() ) );
      break;
    case node_kind::disjunction:
      result = formula::disjunction( ( *this )( f.lhs() ), ( *this )( f.rhs() ) );
      break;
    case node_kind::next:
      result = formula::next( ( *this )( f.lhs() ) );
      break;
    case node_kind::until:
      result = formula::until( ( *this )( f.lhs() ), ( *this )( f.rhs() ) );
      break;
    case node_kind::release:
      result = formula::release( ( *this )( f.lhs() ), ( *this )( f.rhs() ) );
      break;
    case node_kind::prompt_eventually:
      result = on_prompt_( ( *this )( f.lhs() ) );
      break;
    default:
      result = f;
      break;
    }
    memo_.emplace( f.identity(), result );
    return result;
  }

private:
  std::function<formula( formula const& )> on_prompt_;
  std::unordered_map<void const*, formula> memo_;
};

} // namespace

formula relativize( formula const& f, std::string const& color )
{
  if ( propositions( f ).count( color ) )
    throw error( "color proposition '" + color + "' occurs in the formula" );
  auto const c = formula::atom( color );
  auto const not_c = formula::negated_atom( color );
  prompt_rewriter rewrite( [&]( formula const& operand ) {
    /* (c -> (c U (!c U g))) & (!c -> (!c U (c U g))) */
    auto const when_set = formula::disjunction(
        not_c, formula::until( c, formula::until( not_c, operand ) ) );
    auto const when_unset = formula::disjunction(
        c, formula::until( not_c, formula::until( c, operand ) ) );
    return formula::conjunction( when_set, when_unset );
  } );
  return rewrite( f );
}

formula boundedness_formula( unsigned k, std::string const& color )
{
  if ( k == 0 )
    throw error( "boundedness bound must be at least 1" );
  auto const positive = formula::atom( color );
  auto const negative = formula::negated_atom( color );
  /* X(!c | X(!c | ... X !c)) with k nexts: !c within the next k positions */
  auto off_soon = formula::next( negative );
  auto on_soon = formula::next( positive );
  for ( unsigned j = 1; j < k; ++j )
  {
    off_soon = formula::next( formula::disjunction( negative, off_soon ) );
    on_soon = formula::next( formula::disjunction( positive, on_soon ) );
  }
  return globally( formula::conjunction( formula::disjunction( negative, off_soon ),
                                         formula::disjunction( positive, on_soon ) ) );
}

formula unfold_prompt( formula const& f, unsigned k )
{
  prompt_rewriter rewrite( [k]( formula const& operand ) {
    std::vector<formula> options;
    options.reserve( k + 1 );
    auto shifted = operand;
    for ( unsigned j = 0; j <= k; ++j )
    {
      options.push_back( shifted );
      shifted = formula::next( shifted );
    }
    return disjoin( options );
  } );
  return rewrite( f );
}

formula weaken_prompt( formula const& f )
{
  prompt_rewriter rewrite( []( formula const& operand ) { return eventually( operand ); } );
  return rewrite( f );
}

} // namespace promptsynth
