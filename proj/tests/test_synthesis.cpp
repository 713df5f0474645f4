#include <doctest.h>

#include <promptsynth/parser.hpp>
#include <promptsynth/synthesis.hpp>
#include <promptsynth/verify.hpp>

#include "support/oracles.hpp"
#include "support/printing.hpp"
#include "support/random.hpp"

#include <sstream>

using namespace promptsynth;

namespace
{

synthesis_result synthesize( formula const& f, std::size_t n, prop_partition const& parts )
{
  return bounded_synthesis( spec_to_ucw( f ), n, parts );
}

void check_sound( synthesis_result const& r, formula const& f )
{
  REQUIRE( r.machine );
  CHECK( check_run_graph( *r.machine, spec_to_ucw( f ) ) );
  CHECK( model_check_ltl( *r.machine, f ).holds );
}

bool brute_force_realizable( formula const& f, prop_partition const& parts, std::size_t n )
{
  bool found = false;
  testing::for_each_machine( parts.inputs(), parts.outputs(), n, [&]( mealy_machine const& m ) {
    found = found || model_check_ltl( m, f ).holds;
  } );
  return found;
}

} // namespace

TEST_CASE( "a constant output realizes G o" )
{
  prop_partition const parts( {}, { "o" } );
  auto const f = parse( "G o" );
  auto const r = synthesize( f, 1, parts );
  REQUIRE( r.status == synthesis_status::realizable );
  CHECK( r.machine->state_count() == 1 );
  CHECK( r.machine->output( 0, 0 ) == 1 );
  check_sound( r, f );
}

TEST_CASE( "an unsatisfiable specification is unrealizable at every size" )
{
  prop_partition const parts( {}, { "o" } );
  for ( std::size_t n = 1; n <= 3; ++n )
    CHECK( synthesize( parse( "G (o & !o)" ), n, parts ).status == synthesis_status::unrealizable_at_size );
}

TEST_CASE( "predicting the next input is unrealizable with two states" )
{
  prop_partition const parts( { "i" }, { "o" } );
  auto const f = parse( "G ((!o | X i) & (o | X !i))" );
  CHECK( synthesize( f, 2, parts ).status == synthesis_status::unrealizable_at_size );

  /* each of the 256 two-state machines has a short input word that refutes it */
  auto const words = testing::all_lassos( { "i" }, 2, 2 );
  std::size_t machines = 0;
  std::size_t refuted = 0;
  testing::for_each_machine( { "i" }, { "o" }, 2, [&]( mealy_machine const& m ) {
    ++machines;
    for ( auto const& w : words )
      if ( !eval_on_lasso( f, testing::simulate( m, w ) ) )
      {
        ++refuted;
        return;
      }
  } );
  CHECK( machines == 256 );
  CHECK( refuted == 256 );
}

TEST_CASE( "run-graph check on constant machines" )
{
  auto const ucw = spec_to_ucw( parse( "G o" ) );
  mealy_machine on( {}, { "o" }, 1 );
  on.set( 0, 0, 0, 1 );
  mealy_machine off( {}, { "o" }, 1 );
  CHECK( check_run_graph( on, ucw ) );
  CHECK_FALSE( check_run_graph( off, ucw ) );
}

TEST_CASE( "responses need memory of pending requests" )
{
  prop_partition const parts( { "r" }, { "g" } );
  auto const f = parse( "G (r -> X g) & G (g -> X !g)" );
  CHECK( synthesize( f, 1, parts ).status == synthesis_status::unrealizable_at_size );
  CHECK( brute_force_realizable( f, parts, 1 ) == false );
  CHECK( brute_force_realizable( f, parts, 2 ) == false );
  CHECK( synthesize( f, 2, parts ).status == synthesis_status::unrealizable_at_size );

  auto const g = parse( "G (r -> X g)" );
  auto const r = synthesize( g, 1, parts );
  REQUIRE( r.status == synthesis_status::realizable );
  check_sound( r, g );
}

TEST_CASE( "synthesis verdicts match machine enumeration" )
{
  std::mt19937 rng( 7 );
  struct alphabet
  {
    std::vector<std::string> inputs, outputs;
  };
  std::vector<alphabet> const alphabets{ { { "a" }, { "b" } }, { {}, { "a", "b" } }, { { "a", "b" }, {} } };
  for ( int i = 0; i < 60; ++i )
  {
    auto const& ab = alphabets[static_cast<std::size_t>( i ) % alphabets.size()];
    prop_partition const parts( ab.inputs, ab.outputs );
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 7, false );
    auto const ucw = spec_to_ucw( f );
    for ( std::size_t n = 1; n <= 2; ++n )
    {
      INFO( to_string( f ), " n=", n );
      auto const r = bounded_synthesis( ucw, n, parts );
      REQUIRE( r.status != synthesis_status::unknown );
      CHECK( ( r.status == synthesis_status::realizable ) == brute_force_realizable( f, parts, n ) );
      if ( r.machine )
        check_sound( r, f );
    }
  }
}

TEST_CASE( "realizability is monotone in the machine size" )
{
  std::mt19937 rng( 11 );
  prop_partition const parts( { "a" }, { "b", "c" } );
  for ( int i = 0; i < 40; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, { "a", "b", "c" }, 9, false );
    auto const ucw = spec_to_ucw( f );
    bool previous = false;
    for ( std::size_t n = 1; n <= 4; ++n )
    {
      bool const now = bounded_synthesis( ucw, n, parts ).status == synthesis_status::realizable;
      INFO( to_string( f ), " n=", n );
      CHECK( ( !previous || now ) );
      previous = now;
    }
  }
}

TEST_CASE( "annotations respect the counter bound" )
{
  std::mt19937 rng( 5 );
  prop_partition const parts( { "a" }, { "b" } );
  std::size_t checked = 0;
  for ( int i = 0; i < 80; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 9, false );
    auto const ucw = spec_to_ucw( f );
    for ( std::size_t n = 1; n <= 3; ++n )
    {
      auto const r = bounded_synthesis( ucw, n, parts );
      if ( !r.annotation )
        continue;
      ++checked;
      auto const& ann = *r.annotation;
      CHECK( ann.reachable[ann.index( ucw.initial(), 0 )] );
      CHECK( ann.counter[ann.index( ucw.initial(), 0 )] == 0 );
      for ( auto const c : ann.counter )
        CHECK( c <= n * ucw.state_count() );
    }
  }
  CHECK( checked > 20 );
}

TEST_CASE( "synthesis rejects malformed queries" )
{
  auto const ucw = spec_to_ucw( parse( "G (o | i)" ) );
  CHECK_THROWS_AS( bounded_synthesis( ucw, 0, prop_partition( { "i" }, { "o" } ) ), error );
  CHECK_THROWS_AS( bounded_synthesis( ucw, 1, prop_partition( {}, { "o" } ) ), error );
  CHECK_THROWS_AS( bounded_synthesis( ltl_to_nba( parse( "G o" ) ), 1, prop_partition( {}, { "o" } ) ), error );
}

TEST_CASE( "the color joins the outputs when the automaton mentions it" )
{
  prop_partition const parts( {}, { "o" } );
  auto const f = parse( "G o & G (p -> X !p) & G (!p -> X p)" );
  auto const r = synthesize( f, 2, parts );
  REQUIRE( r.status == synthesis_status::realizable );
  CHECK( r.machine->outputs() == std::vector<std::string>{ "o", "p" } );
  check_sound( r, f );
  CHECK( synthesize( f, 1, parts ).status == synthesis_status::unrealizable_at_size );
}

TEST_CASE( "DIMACS output is well formed" )
{
  auto const text = bounded_synthesis_dimacs( spec_to_ucw( parse( "G (i -> X o)" ) ), 2, prop_partition( { "i" }, { "o" } ) );
  std::istringstream is( text );
  std::string p, cnf;
  long variables = 0, clauses = 0;
  is >> p >> cnf >> variables >> clauses;
  CHECK( p == "p" );
  CHECK( cnf == "cnf" );
  long seen = 0;
  long lit = 0;
  bool in_range = true;
  while ( is >> lit )
  {
    if ( lit == 0 )
      ++seen;
    in_range = in_range && std::abs( lit ) <= variables;
  }
  CHECK( seen == clauses );
  CHECK( in_range );
}

TEST_CASE( "a zero budget yields unknown" )
{
  auto const r = bounded_synthesis( spec_to_ucw( parse( "G o" ) ), 1, prop_partition( {}, { "o" } ),
                                    std::chrono::milliseconds( 0 ) );
  CHECK( r.status == synthesis_status::unknown );
  CHECK_FALSE( r.machine );
}
