#include <promptsynth/lasso.hpp>
#include <promptsynth/parser.hpp>

#include <cctype>
#include <unordered_map>

namespace promptsynth
{

lasso::lasso( std::vector<valuation> prefix_, std::vector<valuation> loop_ )
    : prefix( std::move( prefix_ ) ), loop( std::move( loop_ ) )
{
  if ( loop.empty() )
    throw error( "lasso loop must be nonempty" );
}

namespace
{

class lasso_reader
{
public:
  explicit lasso_reader( std::string_view text ) : text_( text ) {}

  lasso read()
  {
    auto prefix = sequence();
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != ';' )
      throw parse_error( "expected ';' between prefix and loop", pos_ );
    ++pos_;
    auto loop = sequence();
    skip_space();
    if ( pos_ != text_.size() )
      throw parse_error( "trailing input", pos_ );
    if ( loop.empty() )
      throw parse_error( "lasso loop must be nonempty", pos_ );
    return lasso( std::move( prefix ), std::move( loop ) );
  }

private:
  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  std::vector<valuation> sequence()
  {
    std::vector<valuation> result;
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != '{' )
      return result;
    result.push_back( set() );
    for ( ;; )
    {
      skip_space();
      if ( pos_ < text_.size() && text_[pos_] == ',' )
      {
        ++pos_;
        skip_space();
        result.push_back( set() );
        continue;
      }
      return result;
    }
  }

  valuation set()
  {
    if ( pos_ >= text_.size() || text_[pos_] != '{' )
      throw parse_error( "expected '{'", pos_ );
    ++pos_;
    valuation v;
    for ( ;; )
    {
      skip_space();
      if ( pos_ >= text_.size() )
        throw parse_error( "unterminated valuation", pos_ );
      char const c = text_[pos_];
      if ( c == '}' )
      {
        ++pos_;
        return v;
      }
      if ( c == ',' )
      {
        ++pos_;
        continue;
      }
      if ( !std::isalpha( static_cast<unsigned char>( c ) ) && c != '_' )
        throw parse_error( std::string( "unexpected character '" ) + c + "'", pos_ );
      std::size_t const start = pos_;
      while ( pos_ < text_.size() && ( std::isalnum( static_cast<unsigned char>( text_[pos_] ) ) || text_[pos_] == '_' ) )
        ++pos_;
      v.insert( std::string( text_.substr( start, pos_ - start ) ) );
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string set_to_string( valuation const& v )
{
  std::string s = "{";
  bool first = true;
  for ( auto const& p : v )
  {
    if ( !first )
      s += ' ';
    s += p;
    first = false;
  }
  return s + "}";
}

std::string sequence_to_string( std::vector<valuation> const& seq )
{
  std::string s;
  for ( std::size_t i = 0; i < seq.size(); ++i )
  {
    if ( i > 0 )
      s += ", ";
    s += set_to_string( seq[i] );
  }
  return s;
}

class evaluator
{
public:
  evaluator( lasso const& w, std::optional<std::size_t> k ) : w_( w ), k_( k ) {}

  std::vector<bool> const& truth( formula const& f )
  {
    if ( auto it = memo_.find( f.identity() ); it != memo_.end() )
      return it->second;
    auto values = compute( f );
    return memo_.emplace( f.identity(), std::move( values ) ).first->second;
  }

private:
  std::vector<bool> compute( formula const& f )
  {
    std::size_t const n = w_.positions();
    std::vector<bool> out( n, false );
    switch ( f.kind() )
    {
    case node_kind::constant_true:
      out.assign( n, true );
      break;
    case node_kind::constant_false:
      break;
    case node_kind::atom:
    case node_kind::negated_atom:
    {
      bool const positive = f.kind() == node_kind::atom;
      for ( std::size_t i = 0; i < n; ++i )
        out[i] = ( w_.at( i ).count( f.name() ) > 0 ) == positive;
      break;
    }
    case node_kind::conjunction:
    case node_kind::disjunction:
    {
      auto const lhs = truth( f.lhs() );
      auto const& rhs = truth( f.rhs() );
      for ( std::size_t i = 0; i < n; ++i )
        out[i] = f.kind() == node_kind::conjunction ? ( lhs[i] && rhs[i] ) : ( lhs[i] || rhs[i] );
      break;
    }
    case node_kind::next:
    {
      auto const& sub = truth( f.lhs() );
      for ( std::size_t i = 0; i < n; ++i )
        out[i] = sub[w_.successor( i )];
      break;
    }
    case node_kind::until:
    case node_kind::release:
    {
      /* a U b = b | (a & X(a U b)), least fixpoint;
         a R b = b & (a | X(a R b)), greatest fixpoint */
      auto const lhs = truth( f.lhs() );
      auto const& rhs = truth( f.rhs() );
      bool const is_until = f.kind() == node_kind::until;
      out.assign( n, !is_until );
      for ( bool changed = true; changed; )
      {
        changed = false;
        for ( std::size_t j = n; j-- > 0; )
        {
          bool const next_value = out[w_.successor( j )];
          bool const value = is_until ? ( rhs[j] || ( lhs[j] && next_value ) )
                                      : ( rhs[j] && ( lhs[j] || next_value ) );
          if ( value != out[j] )
          {
            out[j] = value;
            changed = true;
          }
        }
      }
      break;
    }
    case node_kind::prompt_eventually:
    {
      if ( !k_ )
        throw error( "prompt bound required to evaluate a prompt-eventually" );
      auto const& sub = truth( f.lhs() );
      /* walking more than |positions| steps revisits the same loop positions */
      std::size_t const steps = std::min<std::size_t>( *k_, n + 1 );
      for ( std::size_t i = 0; i < n; ++i )
      {
        std::size_t pos = i;
        for ( std::size_t j = 0; j <= steps; ++j )
        {
          if ( sub[pos] )
          {
            out[i] = true;
            break;
          }
          pos = w_.successor( pos );
        }
      }
      break;
    }
    }
    return out;
  }

  lasso const& w_;
  std::optional<std::size_t> k_;
  std::unordered_map<void const*, std::vector<bool>> memo_;
};

} // namespace

lasso parse_lasso( std::string_view text )
{
  return lasso_reader( text ).read();
}

std::string to_string( lasso const& w )
{
  auto prefix = sequence_to_string( w.prefix );
  return ( prefix.empty() ? "" : prefix + " " ) + "; " + sequence_to_string( w.loop );
}

bool eval_on_lasso( formula const& f, lasso const& w, std::optional<std::size_t> k )
{
  if ( w.loop.empty() )
    throw error( "lasso loop must be nonempty" );
  if ( f.has_prompt() && !k )
    throw error( "prompt bound required to evaluate a prompt-eventually" );
  evaluator e( w, k );
  return e.truth( f )[0];
}

} // namespace promptsynth
