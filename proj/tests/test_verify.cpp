#include <doctest.h>

#include <promptsynth/parser.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/rewrite.hpp>
#include <promptsynth/synthesis.hpp>
#include <promptsynth/verify.hpp>

#include "support/oracles.hpp"
#include "support/printing.hpp"
#include "support/random.hpp"

using namespace promptsynth;

namespace
{

mealy_machine constant_machine( std::vector<std::string> inputs, std::vector<std::string> outputs, output_bits out )
{
  mealy_machine m( std::move( inputs ), std::move( outputs ), 1 );
  for ( input_index in = 0; in < m.input_valuations(); ++in )
    m.set( 0, in, 0, out );
  return m;
}

/* Worst wait for a grant of `output` on an input-independent machine whose
   states form one cycle through the initial state. */
std::size_t worst_wait( mealy_machine const& m, std::string const& output )
{
  auto const bit = output_bits{ 1 } << m.output_position( output );
  std::size_t const length = m.state_count();
  std::size_t worst = 0;
  for ( std::size_t start = 0; start < length; ++start )
  {
    std::size_t wait = 0;
    while ( !( m.output( ( start + wait ) % length, 0 ) & bit ) )
      ++wait;
    worst = std::max( worst, wait );
  }
  return worst;
}

mealy_machine random_machine( std::mt19937& rng, std::vector<std::string> const& inputs,
                              std::vector<std::string> const& outputs, std::size_t states )
{
  mealy_machine m( inputs, outputs, states );
  for ( std::size_t s = 0; s < states; ++s )
    for ( input_index in = 0; in < m.input_valuations(); ++in )
      m.set( s, in, rng() % states, rng() % ( output_bits{ 1 } << outputs.size() ) );
  return m;
}

void check_witness( mealy_machine const& m, formula const& f, check_report const& r )
{
  REQUIRE( r.witness );
  CHECK( r.witness->play == testing::simulate( m, r.witness->inputs ) );
  CHECK_FALSE( eval_on_lasso( f, r.witness->play ) );
}

} // namespace

TEST_CASE( "model checking constant machines" )
{
  auto const m = constant_machine( { "q1", "q2" }, { "p1", "p2" }, 1 );
  CHECK( model_check_ltl( m, parse( "G F p1" ) ).holds );
  CHECK_FALSE( model_check_ltl( m, parse( "G F p1" ) ).witness );

  auto const f = parse( "G (!q2 | F p2)" );
  auto const r = model_check_ltl( m, f );
  CHECK_FALSE( r.holds );
  check_witness( m, f, r );
  bool pumps_q2 = false;
  for ( auto const& v : r.witness->inputs.prefix )
    pumps_q2 = pumps_q2 || v.count( "q2" );
  for ( auto const& v : r.witness->inputs.loop )
    pumps_q2 = pumps_q2 || v.count( "q2" );
  CHECK( pumps_q2 );

  CHECK( model_check_prompt( m, parse( "G Fp p1" ), 0 ).holds );
  CHECK_THROWS_AS( model_check_ltl( m, parse( "G z" ) ), error );
}

TEST_CASE( "fixture strategies realize the arbiter at their bounds" )
{
  auto const f = arbiter_formula( 6, 2 );
  auto const s63 = strip_color( sigma_6_3() );
  auto const s121 = strip_color( sigma_12_1() );
  CHECK( model_check_prompt( s63, f, 6 ).holds );
  CHECK_FALSE( model_check_prompt( s63, f, 2 ).holds );
  CHECK( model_check_prompt( s121, f, 2 ).holds );
  auto const fails = model_check_prompt( s121, f, 1 );
  CHECK_FALSE( fails.holds );
  check_witness( s121, unfold_prompt( f, 1 ), fails );

  CHECK( model_check_ltl( sigma_6_3(), formula::conjunction( relativize( f ), boundedness_formula( 3 ) ) ).holds );
  CHECK( model_check_ltl( sigma_12_1(), formula::conjunction( relativize( f ), boundedness_formula( 1 ) ) ).holds );
}

TEST_CASE( "minimal bounds of the fixtures match their grant gaps" )
{
  auto const f = arbiter_formula( 6, 2 );
  auto const s63 = strip_color( sigma_6_3() );
  auto const s121 = strip_color( sigma_12_1() );
  auto gap_bound = [&]( mealy_machine const& m ) { return std::max( worst_wait( m, "p1" ), worst_wait( m, "p2" ) ); };
  CHECK( gap_bound( s121 ) == 2 );
  CHECK( gap_bound( s63 ) == 5 );
  CHECK( minimal_realized_bound( s121, f ).bound == std::optional<std::size_t>( 2 ) );
  CHECK( minimal_realized_bound( s63, f ).bound == std::optional<std::size_t>( 5 ) );
}

TEST_CASE( "round robin realizes the full prompt arbiter with bound r" )
{
  for ( unsigned r = 1; r <= 4; ++r )
  {
    auto const m = round_robin_machine( r );
    auto const f = arbiter_formula( r, r );
    CHECK( m.state_count() == r );
    CHECK( model_check_prompt( m, f, r ).holds );
    std::size_t gap = 0;
    for ( unsigned i = 1; i <= r; ++i )
      gap = std::max( gap, worst_wait( m, "p" + std::to_string( i ) ) );
    CHECK( minimal_realized_bound( m, f ).bound == std::optional<std::size_t>( gap ) );
  }
  CHECK( model_check_ltl( round_robin_machine( 2 ), parse( "G (!p1 | !p2)" ) ).holds );
  CHECK( round_robin_machine( 1 ).output( 0, 0 ) == 1 );
  CHECK( round_robin_machine( 1 ).output( 0, 1 ) == 1 );
}

TEST_CASE( "minimal bound reports machines that never satisfy the formula" )
{
  auto const m = constant_machine( { "q1" }, { "p1" }, 0 );
  auto const r = minimal_realized_bound( m, parse( "G (!q1 | Fp p1)" ) );
  CHECK_FALSE( r.bound );
  CHECK_FALSE( r.note.empty() );
  CHECK( minimal_realized_bound( m, parse( "G !p1" ) ).bound == std::optional<std::size_t>( 0 ) );
}

TEST_CASE( "default bound cap" )
{
  auto const m = round_robin_machine( 2 );
  CHECK( default_bound_cap( m, parse( "Fp p1" ) ) == 8 );
  auto const huge = arbiter_formula( 4, 4 );
  CHECK( default_bound_cap( round_robin_machine( 4 ), huge ) == ( std::size_t{ 4 } << size( huge ) ) );
}

TEST_CASE( "strip_color" )
{
  auto const s = strip_color( sigma_6_3() );
  CHECK( s.outputs() == std::vector<std::string>{ "p1", "p2", "p3", "p4", "p5", "p6" } );
  std::vector<std::string> grants;
  for ( std::size_t i = 0; i < 6; ++i )
  {
    auto const v = s.decode_output( s.output( i, 0 ) );
    REQUIRE( v.size() == 1 );
    grants.push_back( *v.begin() );
    CHECK( s.next( i, 0 ) == ( i + 1 ) % 6 );
  }
  CHECK( grants == std::vector<std::string>{ "p2", "p6", "p4", "p1", "p5", "p3" } );
  auto const rr = round_robin_machine( 3 );
  CHECK( strip_color( rr ) == rr );
}

TEST_CASE( "counterexamples replay to violations" )
{
  std::mt19937 rng( 3 );
  std::size_t failures = 0;
  for ( int i = 0; i < 300; ++i )
  {
    auto const m = random_machine( rng, { "a" }, { "b" }, 1 + rng() % 3 );
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 8, false );
    auto const r = model_check_ltl( m, f );
    INFO( to_string( f ) );
    if ( r.holds )
      CHECK_FALSE( r.witness );
    else
    {
      ++failures;
      check_witness( m, f, r );
    }
  }
  CHECK( failures > 50 );
}

TEST_CASE( "model checking agrees with evaluation on short input words" )
{
  std::mt19937 rng( 21 );
  auto const words_one = testing::all_lassos( { "a" }, 3, 2 );
  auto const words_two = testing::all_lassos( { "a", "c" }, 2, 2 );
  for ( int i = 0; i < 150; ++i )
  {
    bool const two = i % 2 == 1;
    std::vector<std::string> const inputs = two ? std::vector<std::string>{ "a", "c" } : std::vector<std::string>{ "a" };
    auto const m = random_machine( rng, inputs, { "b" }, 1 + rng() % 2 );
    std::vector<std::string> props = inputs;
    props.push_back( "b" );
    auto const f = testing::random_formula_of_size( rng, props, 7, false );
    bool all_satisfied = true;
    for ( auto const& w : two ? words_two : words_one )
      all_satisfied = all_satisfied && eval_on_lasso( f, testing::simulate( m, w ) );
    auto const r = model_check_ltl( m, f );
    INFO( to_string( f ) );
    if ( r.holds )
      CHECK( all_satisfied );
    if ( !all_satisfied )
      CHECK_FALSE( r.holds );
  }
}

TEST_CASE( "prompt model checking is monotone in the bound" )
{
  std::mt19937 rng( 8 );
  for ( int i = 0; i < 120; ++i )
  {
    auto const m = random_machine( rng, { "a" }, { "b" }, 1 + rng() % 3 );
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 6, true );
    bool previous = false;
    for ( std::size_t k = 0; k <= 4; ++k )
    {
      bool const now = model_check_prompt( m, f, k ).holds;
      INFO( to_string( f ), " k=", k );
      CHECK( ( !previous || now ) );
      previous = now;
    }
  }
}

TEST_CASE( "stripped synthesized colorings realize the bound 2k" )
{
  std::mt19937 rng( 13 );
  prop_partition const parts( { "a" }, { "b" } );
  std::size_t successes = 0;
  for ( int i = 0; i < 60; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 6, true );
    for ( unsigned k = 1; k <= 2; ++k )
    {
      auto const spec = formula::conjunction( relativize( f ), boundedness_formula( k ) );
      auto const r = bounded_synthesis( spec_to_ucw( spec ), 2, parts );
      if ( !r.machine )
        continue;
      ++successes;
      INFO( to_string( f ), " k=", k );
      CHECK( model_check_ltl( *r.machine, spec ).holds );
      CHECK( model_check_prompt( strip_color( *r.machine ), f, 2 * k ).holds );
    }
  }
  CHECK( successes > 20 );
}
