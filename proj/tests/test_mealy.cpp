#include <doctest.h>

#include <promptsynth/mealy.hpp>
#include <promptsynth/verify.hpp>

#include "support/oracles.hpp"
#include "support/random.hpp"

#include <filesystem>

using namespace promptsynth;

TEST_CASE( "json round trip keeps the machine" )
{
  std::mt19937 rng( 2 );
  for ( int i = 0; i < 50; ++i )
  {
    mealy_machine m( { "a", "b" }, { "x", "y", "z" }, 1 + rng() % 4 );
    for ( std::size_t s = 0; s < m.state_count(); ++s )
      for ( input_index in = 0; in < 4; ++in )
        m.set( s, in, rng() % m.state_count(), rng() % 8 );
    CHECK( machine_from_json( machine_to_json( m ) ) == m );
  }
  CHECK( machine_from_json( machine_to_json( sigma_12_1() ) ) == sigma_12_1() );
}

TEST_CASE( "uniform states are written with a wildcard" )
{
  auto const text = machine_to_json( round_robin_machine( 2 ) );
  CHECK( text.find( "\"*\"" ) != std::string::npos );
  CHECK( text.find( "\"q1\"" ) != std::string::npos );
}

TEST_CASE( "wildcards fill the valuations not listed" )
{
  auto const m = machine_from_json( R"({"inputs":["i"],"outputs":["o"],"states":2,"initial":0,
    "transitions":[{"from":0,"input":["i"],"to":1,"output":["o"]},
                   {"from":0,"input":"*","to":0,"output":[]},
                   {"from":1,"input":"*","to":0,"output":["o"]}]})" );
  CHECK( m.next( 0, 1 ) == 1 );
  CHECK( m.output( 0, 1 ) == 1 );
  CHECK( m.next( 0, 0 ) == 0 );
  CHECK( m.output( 0, 0 ) == 0 );
  CHECK( m.next( 1, 0 ) == 0 );
  CHECK( m.output( 1, 1 ) == 1 );
}

TEST_CASE( "malformed machines are rejected" )
{
  auto bad = []( char const* text ) { CHECK_THROWS_AS( machine_from_json( text ), error ); };
  /* missing valuation */
  bad( R"({"inputs":["i"],"outputs":[],"states":1,"transitions":[{"from":0,"input":[],"to":0,"output":[]}]})" );
  /* duplicate entry */
  bad( R"({"inputs":[],"outputs":[],"states":1,"transitions":[{"from":0,"input":[],"to":0,"output":[]},
                                                                {"from":0,"input":[],"to":0,"output":[]}]})" );
  /* undeclared output */
  bad( R"({"inputs":[],"outputs":[],"states":1,"transitions":[{"from":0,"input":"*","to":0,"output":["o"]}]})" );
  /* target out of range */
  bad( R"({"inputs":[],"outputs":[],"states":1,"transitions":[{"from":0,"input":"*","to":1,"output":[]}]})" );
  /* input and output share a name */
  bad( R"({"inputs":["a"],"outputs":["a"],"states":1,"transitions":[{"from":0,"input":"*","to":0,"output":[]}]})" );
  bad( "not json" );
  bad( R"({"inputs":[],"outputs":[],"states":0,"transitions":[]})" );
}

TEST_CASE( "dot output labels edges with input and output sets" )
{
  auto const dot = machine_to_dot( strip_color( sigma_6_3() ) );
  CHECK( dot.find( "digraph" ) == 0 );
  CHECK( dot.find( "s0 -> s1 [label=\"* / {p2}\"]" ) != std::string::npos );
  mealy_machine m( { "i" }, { "o" }, 1 );
  m.set( 0, 1, 0, 1 );
  auto const split = machine_to_dot( m );
  CHECK( split.find( "{} / {}" ) != std::string::npos );
  CHECK( split.find( "{i} / {o}" ) != std::string::npos );
}

TEST_CASE( "induced play agrees with direct simulation" )
{
  std::mt19937 rng( 4 );
  for ( int i = 0; i < 200; ++i )
  {
    mealy_machine m( { "a" }, { "b" }, 1 + rng() % 4 );
    for ( std::size_t s = 0; s < m.state_count(); ++s )
      for ( input_index in = 0; in < 2; ++in )
        m.set( s, in, rng() % m.state_count(), rng() % 2 );
    auto const w = testing::random_lasso( rng, { "a" }, 3, 3 );
    CHECK( induced_play( m, w ) == testing::simulate( m, w ) );
  }
}

TEST_CASE( "shipped fixture files match the built-in fixtures" )
{
  std::filesystem::path const dir( PROMPTSYNTH_FIXTURE_DIR );
  CHECK( load_machine( ( dir / "sigma_6_3.json" ).string() ) == sigma_6_3() );
  CHECK( load_machine( ( dir / "sigma_12_1.json" ).string() ) == sigma_12_1() );
  CHECK_THROWS_AS( load_machine( ( dir / "missing.json" ).string() ), error );
}

namespace
{

std::vector<valuation> first_letters( lasso const& w, std::size_t count )
{
  std::vector<valuation> out;
  for ( std::size_t pos = 0; out.size() < count; pos = w.successor( pos ) )
    out.push_back( w.at( pos ) );
  return out;
}

/* Two states are equivalent iff no input sequence makes their outputs differ;
   search pairs of states for a distinguishing sequence. */
bool distinguishable( mealy_machine const& m, std::size_t s, std::size_t t )
{
  std::set<std::pair<std::size_t, std::size_t>> seen{ { s, t } };
  std::vector<std::pair<std::size_t, std::size_t>> todo{ { s, t } };
  while ( !todo.empty() )
  {
    auto const [a, b] = todo.back();
    todo.pop_back();
    for ( input_index in = 0; in < m.input_valuations(); ++in )
    {
      if ( m.output( a, in ) != m.output( b, in ) )
        return true;
      std::pair<std::size_t, std::size_t> const next{ m.next( a, in ), m.next( b, in ) };
      if ( seen.insert( next ).second )
        todo.push_back( next );
    }
  }
  return false;
}

} // namespace

TEST_CASE( "minimization keeps behaviour and separates every pair of states" )
{
  std::mt19937 rng( 6 );
  for ( int i = 0; i < 300; ++i )
  {
    mealy_machine m( { "a" }, { "b", "c" }, 1 + rng() % 6, 0 );
    for ( std::size_t s = 0; s < m.state_count(); ++s )
      for ( input_index in = 0; in < 2; ++in )
        m.set( s, in, rng() % m.state_count(), rng() % ( i % 2 ? 2 : 4 ) );
    auto const small = minimize( m );
    CHECK( small.state_count() <= m.state_count() );
    CHECK( small.initial() == 0 );
    CHECK( minimize( small ) == small );
    for ( std::size_t s = 0; s < small.state_count(); ++s )
      for ( std::size_t t = s + 1; t < small.state_count(); ++t )
        CHECK( distinguishable( small, s, t ) );
    for ( int j = 0; j < 5; ++j )
    {
      auto const w = testing::random_lasso( rng, { "a" }, 4, 4 );
      CHECK( first_letters( testing::simulate( small, w ), 30 ) == first_letters( testing::simulate( m, w ), 30 ) );
    }
  }
  CHECK( minimize( round_robin_machine( 3 ) ).state_count() == 3 );
  CHECK( minimize( strip_color( sigma_12_1() ) ).state_count() == 12 );
}
