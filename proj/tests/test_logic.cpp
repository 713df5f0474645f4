#include <doctest.h>

#include <promptsynth/lasso.hpp>
#include <promptsynth/parser.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/rewrite.hpp>

#include "support/oracles.hpp"
#include "support/printing.hpp"
#include "support/random.hpp"

using namespace promptsynth;

namespace
{

formula a( char const* name ) { return formula::atom( name ); }
formula na( char const* name ) { return formula::negated_atom( name ); }

bool contains_prompt_node( formula const& f )
{
  return f.has_prompt();
}

} // namespace

TEST_CASE( "parse expands shorthands into NNF" )
{
  auto const f = parse( "G (q -> Fp p)" );
  CHECK( f == formula::release( make_false(), formula::disjunction( na( "q" ), formula::prompt_eventually( a( "p" ) ) ) ) );
  CHECK( parse( "F q" ) == formula::until( make_true(), a( "q" ) ) );
  CHECK( parse( "!(a U b)" ) == formula::release( na( "a" ), na( "b" ) ) );
  CHECK( parse( "!X !a" ) == formula::next( a( "a" ) ) );
  CHECK( parse( "!(a -> b)" ) == formula::conjunction( a( "a" ), na( "b" ) ) );
  CHECK( parse( "!G a" ) == eventually( na( "a" ) ) );
  CHECK( parse( "!true" ) == make_false() );
}

TEST_CASE( "parse precedence and associativity" )
{
  CHECK( parse( "a & b | c" ) == formula::disjunction( formula::conjunction( a( "a" ), a( "b" ) ), a( "c" ) ) );
  CHECK( parse( "a | b & c" ) == formula::disjunction( a( "a" ), formula::conjunction( a( "b" ), a( "c" ) ) ) );
  CHECK( parse( "a U b U c" ) == formula::until( a( "a" ), formula::until( a( "b" ), a( "c" ) ) ) );
  CHECK( parse( "a R b U c" ) == formula::release( a( "a" ), formula::until( a( "b" ), a( "c" ) ) ) );
  CHECK( parse( "a U b & c" ) == formula::conjunction( formula::until( a( "a" ), a( "b" ) ), a( "c" ) ) );
  CHECK( parse( "X a U b" ) == formula::until( formula::next( a( "a" ) ), a( "b" ) ) );
  CHECK( parse( "a -> b -> c" ) ==
         formula::disjunction( na( "a" ), formula::disjunction( na( "b" ), a( "c" ) ) ) );
  CHECK( parse( "a -> b | c" ) == formula::disjunction( na( "a" ), formula::disjunction( a( "b" ), a( "c" ) ) ) );
  CHECK( parse( "Fp Fp x_1" ) == formula::prompt_eventually( formula::prompt_eventually( a( "x_1" ) ) ) );
}

TEST_CASE( "parse rejects a negated prompt operator" )
{
  CHECK_THROWS_AS( parse( "!(Fp q)" ), negated_prompt_error );
  CHECK_THROWS_AS( parse( "Fp q -> r" ), negated_prompt_error );
  CHECK_NOTHROW( parse( "r -> Fp q" ) );
}

TEST_CASE( "parse reports the position of syntax errors" )
{
  try
  {
    parse( "q1 & | p1" );
    FAIL( "expected a syntax error" );
  }
  catch ( parse_error const& e )
  {
    CHECK( e.position() == 5 );
  }
  CHECK_THROWS_AS( parse( "(a & b" ), parse_error );
  CHECK_THROWS_AS( parse( "a b" ), parse_error );
  CHECK_THROWS_AS( parse( "" ), parse_error );
  CHECK_THROWS_AS( parse( "a $ b" ), parse_error );
  CHECK_THROWS_AS( parse( "U a" ), parse_error );
}

TEST_CASE( "printing re-parses to the same formula" )
{
  std::mt19937 rng( 7 );
  std::vector<std::string> const props{ "a", "b", "c" };
  for ( int i = 0; i < 300; ++i )
  {
    auto const f = testing::random_formula( rng, props, 12, true );
    CHECK( parse( to_string( f ) ) == f );
  }
}

TEST_CASE( "size counts distinct subformulas" )
{
  CHECK( size( parse( "Fp q" ) ) == 2 );
  CHECK( size( parse( "q & q" ) ) == 2 );
  CHECK( size( parse( "q" ) ) == 1 );
  CHECK( size( parse( "G q" ) ) == 3 );

  std::mt19937 rng( 11 );
  std::vector<std::string> const props{ "a", "b" };
  for ( int i = 0; i < 500; ++i )
  {
    auto const f = testing::random_formula( rng, props, 15, true );
    CHECK( size( f ) == testing::brute_force_size( f ) );
  }
}

TEST_CASE( "relativize rewrites prompt eventualities" )
{
  auto const chain = []( formula const& operand ) {
    return formula::conjunction(
        formula::disjunction( na( "p" ), formula::until( a( "p" ), formula::until( na( "p" ), operand ) ) ),
        formula::disjunction( a( "p" ), formula::until( na( "p" ), formula::until( a( "p" ), operand ) ) ) );
  };
  CHECK( relativize( parse( "Fp q" ) ) == chain( a( "q" ) ) );
  CHECK( relativize( parse( "G q" ) ) == parse( "G q" ) );
  CHECK( relativize( parse( "G (!q | Fp s)" ) ) ==
         globally( formula::disjunction( na( "q" ), chain( a( "s" ) ) ) ) );
  /* innermost first */
  CHECK( relativize( parse( "Fp X Fp q" ) ) == chain( formula::next( chain( a( "q" ) ) ) ) );
  CHECK( relativize( parse( "Fp q" ), "c" ) ==
         formula::conjunction(
             formula::disjunction( na( "c" ), formula::until( a( "c" ), formula::until( na( "c" ), a( "q" ) ) ) ),
             formula::disjunction( a( "c" ), formula::until( na( "c" ), formula::until( a( "c" ), a( "q" ) ) ) ) ) );
  CHECK_THROWS_AS( relativize( parse( "Fp p" ) ), error );
}

TEST_CASE( "relativize output is prompt-free and linear in size" )
{
  std::mt19937 rng( 5 );
  std::vector<std::string> const props{ "a", "b", "c" };
  for ( int i = 0; i < 500; ++i )
  {
    auto const f = testing::random_formula( rng, props, 20, true );
    auto const r = relativize( f );
    CHECK_FALSE( contains_prompt_node( r ) );
    CHECK( size( r ) <= 10 * size( f ) );
  }
}

TEST_CASE( "boundedness formula shape" )
{
  CHECK( boundedness_formula( 1 ) == parse( "G ((!p | X !p) & (p | X p))" ) );
  CHECK( boundedness_formula( 2 ) == parse( "G ((!p | X (!p | X !p)) & (p | X (p | X p)))" ) );
  CHECK_THROWS_AS( boundedness_formula( 0 ), error );
  /* size grows by a constant per unit of k */
  auto const s1 = size( boundedness_formula( 1 ) );
  auto const step = size( boundedness_formula( 2 ) ) - s1;
  for ( unsigned k = 3; k <= 32; ++k )
    CHECK( size( boundedness_formula( k ) ) == s1 + ( k - 1 ) * step );
}

TEST_CASE( "boundedness formula on concrete lassos" )
{
  auto const w = parse_lasso( "; {p}, {p}, {}" );
  CHECK( eval_on_lasso( boundedness_formula( 2 ), w ) );
  CHECK_FALSE( eval_on_lasso( boundedness_formula( 1 ), w ) );
  CHECK( eval_on_lasso( boundedness_formula( 3 ), parse_lasso( "; {p}, {p}, {p}, {}, {}, {}" ) ) );
  CHECK_FALSE( eval_on_lasso( boundedness_formula( 2 ), parse_lasso( "; {p}, {p}, {p}, {}, {}, {}" ) ) );
  for ( unsigned k = 1; k <= 6; ++k )
  {
    CHECK_FALSE( eval_on_lasso( boundedness_formula( k ), parse_lasso( "{p}, {} ; {p}" ) ) );
    CHECK_FALSE( eval_on_lasso( boundedness_formula( k ), parse_lasso( "{p}, {} ; {}" ) ) );
  }
}

TEST_CASE( "boundedness formula agrees with the block scanner" )
{
  std::mt19937 rng( 3 );
  std::vector<std::string> const props{ "p", "q" };
  for ( int i = 0; i < 2000; ++i )
  {
    auto const w = testing::random_lasso( rng, props, 5, 7 );
    unsigned const k = 1 + static_cast<unsigned>( rng() % 5 );
    INFO( to_string( w ), " k=", k );
    CHECK( eval_on_lasso( boundedness_formula( k ), w ) == testing::is_k_bounded( w, "p", k ) );
  }
}

TEST_CASE( "unfold prompt" )
{
  CHECK( unfold_prompt( parse( "Fp q" ), 0 ) == a( "q" ) );
  CHECK( unfold_prompt( parse( "Fp q" ), 2 ) == parse( "q | X q | X X q" ) );
  CHECK( unfold_prompt( parse( "G q" ), 3 ) == parse( "G q" ) );
  CHECK( weaken_prompt( parse( "G (!q | Fp s)" ) ) == parse( "G (!q | F s)" ) );
}

TEST_CASE( "unfolded formulas agree with the prompt semantics" )
{
  std::mt19937 rng( 17 );
  std::vector<std::string> const props{ "q", "s" };
  auto const g = parse( "G (!q | Fp s)" );
  for ( int i = 0; i < 1000; ++i )
  {
    auto const w = testing::random_lasso( rng, props, 4, 6 );
    CHECK( eval_on_lasso( unfold_prompt( g, 1 ), w ) == eval_on_lasso( g, w, 1 ) );
  }
  for ( int i = 0; i < 1500; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, props, 8, true );
    auto const w = testing::random_lasso( rng, props, 6, 6 );
    unsigned const k = static_cast<unsigned>( rng() % 9 );
    INFO( to_string( f ), " on ", to_string( w ), " k=", k );
    CHECK( eval_on_lasso( unfold_prompt( f, k ), w ) == eval_on_lasso( f, w, k ) );
  }
}

TEST_CASE( "random colorings have the requested block lengths" )
{
  std::mt19937 rng( 29 );
  for ( int i = 0; i < 500; ++i )
  {
    auto const w = testing::random_lasso( rng, { "a" }, 4, 4 );
    unsigned const k = 1 + static_cast<unsigned>( rng() % 4 );
    auto const spaced = testing::random_coloring( rng, w, "p", k, k + 2 );
    auto const report = testing::scan_blocks( spaced, "p" );
    CHECK( report.infinitely_many_changes );
    CHECK( report.min_block >= k );
    CHECK( testing::is_k_bounded( testing::random_coloring( rng, w, "p", 1, k ), "p", k ) );
    /* erasing the color gives back the word */
    for ( std::size_t j = 0, pos = 0, wpos = 0; j < 20; ++j, pos = spaced.successor( pos ), wpos = w.successor( wpos ) )
    {
      auto v = spaced.at( pos );
      v.erase( "p" );
      CHECK( v == w.at( wpos ) );
    }
  }
}

TEST_CASE( "relativization is sound on spaced and bounded colorings" )
{
  std::mt19937 rng( 31 );
  std::vector<std::string> const props{ "a", "b" };
  int spaced_premises = 0, bounded_premises = 0;
  for ( int i = 0; i < 1500; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, props, 8, true );
    auto const w = testing::random_lasso( rng, props, 4, 4 );
    unsigned const k = 1 + static_cast<unsigned>( rng() % 4 );
    auto const rel = relativize( f );
    INFO( to_string( f ), " on ", to_string( w ), " k=", k );
    if ( eval_on_lasso( f, w, k ) )
    {
      ++spaced_premises;
      CHECK( eval_on_lasso( rel, testing::random_coloring( rng, w, "p", k, k + 3 ) ) );
    }
    auto const bounded = testing::random_coloring( rng, w, "p", 1, k );
    if ( eval_on_lasso( rel, bounded ) )
    {
      ++bounded_premises;
      CHECK( eval_on_lasso( unfold_prompt( f, 2 * k ), w ) );
    }
  }
  CHECK( spaced_premises > 300 );
  CHECK( bounded_premises > 300 );
}

TEST_CASE( "eval on lasso" )
{
  CHECK( eval_on_lasso( parse( "G q" ), parse_lasso( "; {q}" ) ) );
  CHECK_FALSE( eval_on_lasso( parse( "G q" ), parse_lasso( "{q} ; {q}, {}" ) ) );
  CHECK( eval_on_lasso( parse( "Fp q" ), parse_lasso( "; {}, {q}" ), 1 ) );
  CHECK_FALSE( eval_on_lasso( parse( "Fp q" ), parse_lasso( "; {}, {q}" ), 0 ) );
  CHECK( eval_on_lasso( parse( "G F q" ), parse_lasso( "; {}, {q}" ) ) );
  CHECK_FALSE( eval_on_lasso( parse( "G F q" ), parse_lasso( "{q} ; {}" ) ) );
  CHECK( eval_on_lasso( parse( "a U b" ), parse_lasso( "{a}, {a} ; {b}" ) ) );
  CHECK_FALSE( eval_on_lasso( parse( "a U b" ), parse_lasso( "{a}, {} ; {b}" ) ) );
  CHECK( eval_on_lasso( parse( "a R b" ), parse_lasso( "; {b}" ) ) );
  CHECK_FALSE( eval_on_lasso( parse( "a R b" ), parse_lasso( "{b} ; {a}" ) ) );
  CHECK_THROWS_AS( eval_on_lasso( parse( "Fp q" ), parse_lasso( "; {q}" ) ), error );
  /* a large bound walks around the loop only once */
  CHECK_FALSE( eval_on_lasso( parse( "Fp q" ), parse_lasso( "; {}" ), 1000000 ) );
}

TEST_CASE( "prompt satisfaction is monotone in the bound" )
{
  std::mt19937 rng( 23 );
  std::vector<std::string> const props{ "a", "b" };
  for ( int i = 0; i < 1000; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, props, 8, true );
    auto const w = testing::random_lasso( rng, props, 4, 5 );
    unsigned const k = static_cast<unsigned>( rng() % 6 );
    if ( eval_on_lasso( f, w, k ) )
      for ( unsigned more = k + 1; more <= k + 4; ++more )
        CHECK( eval_on_lasso( f, w, more ) );
  }
}

TEST_CASE( "lasso text format" )
{
  auto const w = parse_lasso( "{a b}, {} ; {c}" );
  CHECK( w.prefix.size() == 2 );
  CHECK( w.prefix[0] == valuation{ "a", "b" } );
  CHECK( w.loop == std::vector<valuation>{ { "c" } } );
  CHECK( parse_lasso( to_string( w ) ) == w );
  CHECK( parse_lasso( " ; {}" ).prefix.empty() );
  CHECK_THROWS_AS( parse_lasso( "{a} ;" ), parse_error );
  CHECK_THROWS_AS( parse_lasso( "{a}" ), parse_error );
  CHECK_THROWS_AS( parse_lasso( "; {a" ), parse_error );
  CHECK_THROWS_AS( lasso( {}, {} ), error );
}

TEST_CASE( "arbiter formulas" )
{
  CHECK( arbiter_formula( 1, 0 ) == parse( "G (!q1 | F p1)" ) );
  CHECK( arbiter_formula( 2, 1 ) == parse( "G (!q1 | Fp p1) & G (!q2 | F p2) & G (!p1 | !p2)" ) );
  CHECK( arbiter_formula( 1, 1 ) == parse( "G (q1 -> Fp p1)" ) );
  for ( unsigned r = 1; r <= 8; ++r )
    CHECK_FALSE( arbiter_formula( r, 0 ).has_prompt() );
  CHECK( arbiter_formula( 3, 3 ).has_prompt() );
  CHECK_THROWS_AS( arbiter_formula( 2, 3 ), error );
  CHECK_THROWS_AS( arbiter_formula( 0, 0 ), error );
  /* three mutual-exclusion conjuncts for r = 3 */
  CHECK( arbiter_formula( 3, 0 ) == parse( "G (!q1 | F p1) & G (!q2 | F p2) & G (!q3 | F p3) & "
                                           "G (!p1 | !p2) & G (!p1 | !p3) & G (!p2 | !p3)" ) );
}

TEST_CASE( "partition validation" )
{
  CHECK_NOTHROW( prop_partition( { "q" }, { "o" } ) );
  CHECK_THROWS_AS( prop_partition( { "q" }, { "q" } ), error );
  CHECK_THROWS_AS( prop_partition( { "q" }, { "o" }, "o" ), error );
  CHECK_THROWS_AS( prop_partition( { "q", "q" }, { "o" } ), error );
  auto const parts = arbiter_partition( 2 );
  CHECK( parts.inputs() == std::vector<std::string>{ "q1", "q2" } );
  CHECK( parts.outputs() == std::vector<std::string>{ "p1", "p2" } );
  CHECK_NOTHROW( parts.check_covers( arbiter_formula( 2, 2 ) ) );
  CHECK_THROWS_AS( parts.check_covers( parse( "G z" ) ), error );
}
