#include <doctest.h>

#include <promptsynth/automata.hpp>
#include <promptsynth/parser.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/rewrite.hpp>

#include "support/printing.hpp"
#include "support/random.hpp"

#include <json.hpp>

using namespace promptsynth;

TEST_CASE( "true accepts every lasso" )
{
  auto const a = ltl_to_nba( make_true() );
  std::mt19937 rng( 1 );
  for ( int i = 0; i < 50; ++i )
    CHECK( lasso_membership( a, testing::random_lasso( rng, { "q" }, 3, 3 ) ) );
}

TEST_CASE( "false accepts nothing" )
{
  auto const a = ltl_to_nba( make_false() );
  CHECK( a.state_count() == 1 );
  CHECK_FALSE( lasso_membership( a, parse_lasso( "; {}" ) ) );
}

TEST_CASE( "membership on small automata" )
{
  auto const q = ltl_to_nba( parse( "q" ) );
  CHECK( lasso_membership( q, parse_lasso( "; {q}" ) ) );
  CHECK_FALSE( lasso_membership( q, parse_lasso( "; {}" ) ) );

  auto const gfq = ltl_to_nba( parse( "G F q" ) );
  CHECK( lasso_membership( gfq, parse_lasso( "; {}, {q}" ) ) );
  CHECK_FALSE( lasso_membership( gfq, parse_lasso( "{q} ; {}" ) ) );
  /* unknown propositions in the word are ignored */
  CHECK( lasso_membership( gfq, parse_lasso( "; {z}, {q z}" ) ) );
}

TEST_CASE( "ucw of a specification accepts its models" )
{
  auto const gq = spec_to_ucw( parse( "G q" ) );
  CHECK( gq.mode() == branching_mode::universal_co_buchi );
  CHECK( ucw_accepts( gq, parse_lasso( "; {q}" ) ) );
  CHECK_FALSE( ucw_accepts( gq, parse_lasso( "{q}, {} ; {q}" ) ) );
  CHECK_FALSE( ucw_accepts( spec_to_ucw( parse( "F q" ) ), parse_lasso( "; {}" ) ) );
  CHECK_THROWS_AS( lasso_membership( gq, parse_lasso( "; {q}" ) ), error );
  CHECK_THROWS_AS( ucw_accepts( ltl_to_nba( parse( "q" ) ), parse_lasso( "; {q}" ) ), error );
}

TEST_CASE( "prompt operators are rejected by the translation" )
{
  CHECK_THROWS_AS( ltl_to_nba( parse( "Fp q" ) ), error );
  CHECK_THROWS_AS( spec_to_ucw( parse( "G Fp q" ) ), error );
}

TEST_CASE( "malformed automata are rejected" )
{
  CHECK_THROWS_AS( buchi_automaton( { "a" }, 0, { { { 0, guard{ 2, 0 } } } }, { true } ), error );
  CHECK_THROWS_AS( buchi_automaton( { "a" }, 1, { { { 0, guard{} } } }, { true } ), error );
  CHECK_THROWS_AS( buchi_automaton( { "a" }, 0, { { { 3, guard{} } } }, { true } ), error );
  CHECK_THROWS_AS( buchi_automaton( { "a" }, 0, { {} }, { true, false } ), error );
}

TEST_CASE( "translation agrees with the lasso evaluator" )
{
  std::mt19937 rng( 42 );
  std::vector<std::string> const props{ "a", "b" };
  for ( int i = 0; i < 1000; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, props, 8, false );
    auto const a = ltl_to_nba( f );
    auto const ucw = spec_to_ucw( f );
    auto const negated = ltl_to_nba( negate( f ) );
    for ( int j = 0; j < 4; ++j )
    {
      auto const w = testing::random_lasso( rng, props, 6, 6 );
      bool const expected = eval_on_lasso( f, w );
      INFO( to_string( f ), " on ", to_string( w ) );
      CHECK( lasso_membership( a, w ) == expected );
      CHECK( ucw_accepts( ucw, w ) == expected );
      CHECK( !lasso_membership( negated, w ) == expected );
    }
  }
}

TEST_CASE( "translation is deterministic" )
{
  std::mt19937 rng( 9 );
  std::vector<std::string> const props{ "a", "b", "c" };
  for ( int i = 0; i < 100; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, props, 10, false );
    CHECK( ltl_to_nba( f ) == ltl_to_nba( parse( to_string( f ) ) ) );
  }
}

TEST_CASE( "alternating-color specifications stay small" )
{
  auto const spec = formula::conjunction( relativize( arbiter_formula( 2, 1 ) ), boundedness_formula( 2 ) );
  auto const ucw = spec_to_ucw( spec );
  MESSAGE( "rel(arbiter 2,1) & psi_2: ", ucw.state_count(), " states, ", ucw.transition_count(), " edges" );
  CHECK( ucw.state_count() < 64 );
}

TEST_CASE( "json dump lists states, rejecting set and guards" )
{
  auto const ucw = spec_to_ucw( parse( "G q" ) );
  auto const j = nlohmann::json::parse( ucw.to_json() );
  CHECK( j["states"] == ucw.state_count() );
  CHECK( j["initial"] == 0 );
  CHECK( j["mode"] == "universal-co-buchi" );
  CHECK( j.contains( "rejecting" ) );
  CHECK( j["edges"].size() == ucw.transition_count() );
  bool saw_negated_guard = false;
  for ( auto const& e : j["edges"] )
    saw_negated_guard = saw_negated_guard || e["guard"] == "!q";
  CHECK( saw_negated_guard );
}
