#include <promptsynth/formula.hpp>

#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace promptsynth
{

namespace detail
{

struct node
{
  node_kind kind;
  std::string name;
  std::vector<formula> children;
  std::uint64_t hash;
  std::uint64_t tree_size;
  bool has_prompt;
};

namespace
{

std::uint64_t mix( std::uint64_t h, std::uint64_t v )
{
  /* splitmix-style combination; independent of pointer values */
  h ^= v + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h ^ ( h >> 29 );
}

std::uint64_t string_hash( std::string const& s )
{
  std::uint64_t h = 1469598103934665603ull;
  for ( unsigned char c : s )
  {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace
} // namespace detail

namespace
{

formula const& shared_true()
{
  static formula const t = formula::constant( true );
  return t;
}

bool structurally_equal( formula const& a, formula const& b )
{
  if ( a.identity() == b.identity() )
    return true;
  if ( a.hash() != b.hash() || a.kind() != b.kind() || a.tree_size() != b.tree_size() )
    return false;
  if ( a.is_literal() )
    return a.name() == b.name();
  for ( std::size_t i = 0; i < a.arity(); ++i )
  {
    auto const& ca = i == 0 ? a.lhs() : a.rhs();
    auto const& cb = i == 0 ? b.lhs() : b.rhs();
    if ( !structurally_equal( ca, cb ) )
      return false;
  }
  return true;
}

int structural_compare( formula const& a, formula const& b )
{
  if ( a.identity() == b.identity() )
    return 0;
  if ( a.hash() != b.hash() )
    return a.hash() < b.hash() ? -1 : 1;
  if ( a.kind() != b.kind() )
    return a.kind() < b.kind() ? -1 : 1;
  if ( a.is_literal() )
    return a.name().compare( b.name() );
  for ( std::size_t i = 0; i < a.arity(); ++i )
  {
    auto const& ca = i == 0 ? a.lhs() : a.rhs();
    auto const& cb = i == 0 ? b.lhs() : b.rhs();
    if ( int c = structural_compare( ca, cb ); c != 0 )
      return c;
  }
  return 0;
}

} // namespace

formula::formula() : formula( shared_true() ) {}

formula formula::make( node_kind kind, std::string name, std::vector<formula> children )
{
  auto n = std::make_shared<detail::node>();
  n->kind = kind;
  n->hash = detail::mix( 0x51ed270b27cd5a3full, static_cast<std::uint64_t>( kind ) );
  n->tree_size = 1;
  n->has_prompt = kind == node_kind::prompt_eventually;
  if ( !name.empty() )
    n->hash = detail::mix( n->hash, detail::string_hash( name ) );
  for ( auto const& c : children )
  {
    n->hash = detail::mix( n->hash, c.hash() );
    n->tree_size += c.tree_size();
    n->has_prompt = n->has_prompt || c.has_prompt();
  }
  n->name = std::move( name );
  n->children = std::move( children );
  return formula( std::move( n ) );
}

formula formula::constant( bool value )
{
  return make( value ? node_kind::constant_true : node_kind::constant_false, {}, {} );
}

formula formula::atom( std::string name )
{
  if ( name.empty() )
    throw error( "proposition name must be nonempty" );
  return make( node_kind::atom, std::move( name ), {} );
}

formula formula::negated_atom( std::string name )
{
  if ( name.empty() )
    throw error( "proposition name must be nonempty" );
  return make( node_kind::negated_atom, std::move( name ), {} );
}

formula formula::conjunction( formula lhs, formula rhs )
{
  return make( node_kind::conjunction, {}, { std::move( lhs ), std::move( rhs ) } );
}

formula formula::disjunction( formula lhs, formula rhs )
{
  return make( node_kind::disjunction, {}, { std::move( lhs ), std::move( rhs ) } );
}

formula formula::next( formula sub )
{
  return make( node_kind::next, {}, { std::move( sub ) } );
}

formula formula::until( formula lhs, formula rhs )
{
  return make( node_kind::until, {}, { std::move( lhs ), std::move( rhs ) } );
}

formula formula::release( formula lhs, formula rhs )
{
  return make( node_kind::release, {}, { std::move( lhs ), std::move( rhs ) } );
}

formula formula::prompt_eventually( formula sub )
{
  return make( node_kind::prompt_eventually, {}, { std::move( sub ) } );
}

node_kind formula::kind() const { return node_->kind; }
std::string const& formula::name() const { return node_->name; }
formula const& formula::lhs() const { return node_->children.at( 0 ); }
formula const& formula::rhs() const { return node_->children.at( 1 ); }
std::size_t formula::arity() const { return node_->children.size(); }
std::uint64_t formula::hash() const { return node_->hash; }
std::uint64_t formula::tree_size() const { return node_->tree_size; }
bool formula::has_prompt() const { return node_->has_prompt; }

bool operator==( formula const& a, formula const& b ) { return structurally_equal( a, b ); }
bool operator<( formula const& a, formula const& b ) { return structural_compare( a, b ) < 0; }

formula make_true() { return formula::constant( true ); }
formula make_false() { return formula::constant( false ); }
formula eventually( formula f ) { return formula::until( make_true(), std::move( f ) ); }
formula globally( formula f ) { return formula::release( make_false(), std::move( f ) ); }

formula next_n( formula f, unsigned times )
{
  for ( unsigned i = 0; i < times; ++i )
    f = formula::next( std::move( f ) );
  return f;
}

formula conjoin( std::vector<formula> const& parts )
{
  if ( parts.empty() )
    return make_true();
  formula result = parts.front();
  for ( auto it = parts.begin() + 1; it != parts.end(); ++it )
    result = formula::conjunction( result, *it );
  return result;
}

formula disjoin( std::vector<formula> const& parts )
{
  if ( parts.empty() )
    return make_false();
  formula result = parts.front();
  for ( auto it = parts.begin() + 1; it != parts.end(); ++it )
    result = formula::disjunction( result, *it );
  return result;
}

formula negate( formula const& f )
{
  switch ( f.kind() )
  {
  case node_kind::constant_true:
    return make_false();
  case node_kind::constant_false:
    return make_true();
  case node_kind::atom:
    return formula::negated_atom( f.name() );
  case node_kind::negated_atom:
    return formula::atom( f.name() );
  case node_kind::conjunction:
    return formula::disjunction( negate( f.lhs() ), negate( f.rhs() ) );
  case node_kind::disjunction:
    return formula::conjunction( negate( f.lhs() ), negate( f.rhs() ) );
  case node_kind::next:
    return formula::next( negate( f.lhs() ) );
  case node_kind::until:
    return formula::release( negate( f.lhs() ), negate( f.rhs() ) );
  case node_kind::release:
    return formula::until( negate( f.lhs() ), negate( f.rhs() ) );
  case node_kind::prompt_eventually:
    throw negated_prompt_error();
  }
  throw error( "unknown formula node" );
}

std::size_t size( formula const& f )
{
  std::unordered_set<formula, formula_hash> seen;
  std::vector<formula> stack{ f };
  while ( !stack.empty() )
  {
    auto g = std::move( stack.back() );
    stack.pop_back();
    if ( !seen.insert( g ).second )
      continue;
    for ( std::size_t i = 0; i < g.arity(); ++i )
      stack.push_back( i == 0 ? g.lhs() : g.rhs() );
  }
  return seen.size();
}

std::set<std::string> propositions( formula const& f )
{
  std::set<std::string> props;
  std::unordered_set<void const*> visited;
  std::vector<formula> stack{ f };
  while ( !stack.empty() )
  {
    auto g = std::move( stack.back() );
    stack.pop_back();
    if ( !visited.insert( g.identity() ).second )
      continue;
    if ( g.is_literal() )
      props.insert( g.name() );
    for ( std::size_t i = 0; i < g.arity(); ++i )
      stack.push_back( i == 0 ? g.lhs() : g.rhs() );
  }
  return props;
}

std::string to_string( formula const& f )
{
  switch ( f.kind() )
  {
  case node_kind::constant_true:
    return "true";
  case node_kind::constant_false:
    return "false";
  case node_kind::atom:
    return f.name();
  case node_kind::negated_atom:
    return "!" + f.name();
  case node_kind::conjunction:
    return "(" + to_string( f.lhs() ) + " & " + to_string( f.rhs() ) + ")";
  case node_kind::disjunction:
    return "(" + to_string( f.lhs() ) + " | " + to_string( f.rhs() ) + ")";
  case node_kind::next:
    return "X " + to_string( f.lhs() );
  case node_kind::until:
    return "(" + to_string( f.lhs() ) + " U " + to_string( f.rhs() ) + ")";
  case node_kind::release:
    return "(" + to_string( f.lhs() ) + " R " + to_string( f.rhs() ) + ")";
  case node_kind::prompt_eventually:
    return "Fp " + to_string( f.lhs() );
  }
  return {};
}

} // namespace promptsynth
