#include <promptsynth/parser.hpp>

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

namespace promptsynth
{

parse_error::parse_error( std::string const& message, std::size_t position )
    : error( "syntax error at position " + std::to_string( position ) + ": " + message ),
      position_( position )
{
}

namespace
{

enum class token_kind
{
  identifier,
  lparen,
  rparen,
  bang,
  amp,
  bar,
  arrow,
  end,
};

struct token
{
  token_kind kind;
  std::string text;
  std::size_t position;
};

std::vector<token> tokenize( std::string_view text )
{
  std::vector<token> tokens;
  std::size_t i = 0;
  while ( i < text.size() )
  {
    char const c = text[i];
    if ( std::isspace( static_cast<unsigned char>( c ) ) )
    {
      ++i;
      continue;
    }
    if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' )
    {
      std::size_t j = i + 1;
      while ( j < text.size() && ( std::isalnum( static_cast<unsigned char>( text[j] ) ) || text[j] == '_' ) )
        ++j;
      tokens.push_back( { token_kind::identifier, std::string( text.substr( i, j - i ) ), i } );
      i = j;
      continue;
    }
    switch ( c )
    {
    case '(':
      tokens.push_back( { token_kind::lparen, "(", i++ } );
      continue;
    case ')':
      tokens.push_back( { token_kind::rparen, ")", i++ } );
      continue;
    case '!':
      tokens.push_back( { token_kind::bang, "!", i++ } );
      continue;
    case '&':
      tokens.push_back( { token_kind::amp, "&", i++ } );
      continue;
    case '|':
      tokens.push_back( { token_kind::bar, "|", i++ } );
      continue;
    case '-':
      if ( i + 1 < text.size() && text[i + 1] == '>' )
      {
        tokens.push_back( { token_kind::arrow, "->", i } );
        i += 2;
        continue;
      }
      break;
    default:
      break;
    }
    throw parse_error( std::string( "unexpected character '" ) + c + "'", i );
  }
  tokens.push_back( { token_kind::end, "", text.size() } );
  return tokens;
}

/* Raw syntax tree with general negation, before NNF conversion. */
struct raw
{
  enum class op
  {
    constant_true,
    constant_false,
    atom,
    negation,
    conjunction,
    disjunction,
    implication,
    next,
    eventually,
    globally,
    until,
    release,
    prompt_eventually,
  };

  op kind;
  std::string name;
  std::unique_ptr<raw> lhs, rhs;
};

using raw_ptr = std::unique_ptr<raw>;

raw_ptr make_raw( raw::op kind, raw_ptr lhs = nullptr, raw_ptr rhs = nullptr, std::string name = {} )
{
  return raw_ptr( new raw{ kind, std::move( name ), std::move( lhs ), std::move( rhs ) } );
}

bool is_keyword( std::string const& s )
{
  return s == "X" || s == "F" || s == "G" || s == "U" || s == "R" || s == "Fp" || s == "true" || s == "false";
}

class parser
{
public:
  explicit parser( std::vector<token> tokens ) : tokens_( std::move( tokens ) ) {}

  raw_ptr parse_all()
  {
    auto result = implication();
    if ( peek().kind != token_kind::end )
      throw parse_error( "unexpected '" + peek().text + "'", peek().position );
    return result;
  }

private:
  token const& peek() const { return tokens_[pos_]; }
  token const& advance() { return tokens_[pos_++]; }

  bool at_identifier( char const* text ) const
  {
    return peek().kind == token_kind::identifier && peek().text == text;
  }

  raw_ptr implication()
  {
    auto lhs = disjunction();
    if ( peek().kind == token_kind::arrow )
    {
      advance();
      return make_raw( raw::op::implication, std::move( lhs ), implication() );
    }
    return lhs;
  }

  raw_ptr disjunction()
  {
    auto lhs = conjunction();
    while ( peek().kind == token_kind::bar )
    {
      advance();
      lhs = make_raw( raw::op::disjunction, std::move( lhs ), conjunction() );
    }
    return lhs;
  }

  raw_ptr conjunction()
  {
    auto lhs = binary_temporal();
    while ( peek().kind == token_kind::amp )
    {
      advance();
      lhs = make_raw( raw::op::conjunction, std::move( lhs ), binary_temporal() );
    }
    return lhs;
  }

  raw_ptr binary_temporal()
  {
    auto lhs = unary();
    if ( at_identifier( "U" ) || at_identifier( "R" ) )
    {
      auto const kind = advance().text == "U" ? raw::op::until : raw::op::release;
      return make_raw( kind, std::move( lhs ), binary_temporal() );
    }
    return lhs;
  }

  raw_ptr unary()
  {
    auto const& t = peek();
    switch ( t.kind )
    {
    case token_kind::bang:
      advance();
      return make_raw( raw::op::negation, unary() );
    case token_kind::lparen:
    {
      advance();
      auto inner = implication();
      if ( peek().kind != token_kind::rparen )
        throw parse_error( "expected ')'", peek().position );
      advance();
      return inner;
    }
    case token_kind::identifier:
    {
      if ( t.text == "X" || t.text == "F" || t.text == "G" || t.text == "Fp" )
      {
        auto const text = advance().text;
        auto const kind = text == "X"   ? raw::op::next
                          : text == "F" ? raw::op::eventually
                          : text == "G" ? raw::op::globally
                                        : raw::op::prompt_eventually;
        return make_raw( kind, unary() );
      }
      if ( t.text == "true" || t.text == "false" )
        return make_raw( advance().text == "true" ? raw::op::constant_true : raw::op::constant_false );
      if ( is_keyword( t.text ) )
        throw parse_error( "unexpected '" + t.text + "'", t.position );
      return make_raw( raw::op::atom, nullptr, nullptr, advance().text );
    }
    case token_kind::end:
      throw parse_error( "unexpected end of input", t.position );
    default:
      throw parse_error( "unexpected '" + t.text + "'", t.position );
    }
  }

  std::vector<token> tokens_;
  std::size_t pos_ = 0;
};

formula to_nnf( raw const& r, bool negated )
{
  switch ( r.kind )
  {
  case raw::op::constant_true:
    return formula::constant( !negated );
  case raw::op::constant_false:
    return formula::constant( negated );
  case raw::op::atom:
    return negated ? formula::negated_atom( r.name ) : formula::atom( r.name );
  case raw::op::negation:
    return to_nnf( *r.lhs, !negated );
  case raw::op::conjunction:
  case raw::op::disjunction:
  {
    auto lhs = to_nnf( *r.lhs, negated );
    auto rhs = to_nnf( *r.rhs, negated );
    bool const is_and = ( r.kind == raw::op::conjunction ) != negated;
    return is_and ? formula::conjunction( lhs, rhs ) : formula::disjunction( lhs, rhs );
  }
  case raw::op::implication:
  {
    /* a -> b == !a | b */
    auto lhs = to_nnf( *r.lhs, !negated );
    auto rhs = to_nnf( *r.rhs, negated );
    return negated ? formula::conjunction( lhs, rhs ) : formula::disjunction( lhs, rhs );
  }
  case raw::op::next:
    return formula::next( to_nnf( *r.lhs, negated ) );
  case raw::op::eventually:
  {
    auto sub = to_nnf( *r.lhs, negated );
    return negated ? globally( sub ) : eventually( sub );
  }
  case raw::op::globally:
  {
    auto sub = to_nnf( *r.lhs, negated );
    return negated ? eventually( sub ) : globally( sub );
  }
  case raw::op::until:
  case raw::op::release:
  {
    auto lhs = to_nnf( *r.lhs, negated );
    auto rhs = to_nnf( *r.rhs, negated );
    bool const is_until = ( r.kind == raw::op::until ) != negated;
    return is_until ? formula::until( lhs, rhs ) : formula::release( lhs, rhs );
  }
  case raw::op::prompt_eventually:
    if ( negated )
      throw negated_prompt_error();
    return formula::prompt_eventually( to_nnf( *r.lhs, false ) );
  }
  throw error( "unknown syntax node" );
}

} // namespace

formula parse( std::string_view text )
{
  parser p( tokenize( text ) );
  auto tree = p.parse_all();
  return to_nnf( *tree, false );
}

} // namespace promptsynth
