#include <doctest.h>

#include <promptsynth/parser.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/rewrite.hpp>
#include <promptsynth/synthesis.hpp>
#include <promptsynth/verify.hpp>

#include "support/random.hpp"

#include <cstdlib>

using namespace promptsynth;

namespace
{

struct solver_environment
{
  explicit solver_environment( char const* command ) { setenv( "PROMPTSYNTH_SAT_SOLVER", command, 1 ); }
  ~solver_environment() { unsetenv( "PROMPTSYNTH_SAT_SOLVER" ); }
};

synthesis_status status_with( char const* command, buchi_automaton const& ucw, std::size_t n,
                              prop_partition const& parts, time_budget budget = std::nullopt )
{
  if ( !command )
    return bounded_synthesis( ucw, n, parts, budget ).status;
  solver_environment const env( command );
  auto const r = bounded_synthesis( ucw, n, parts, budget );
  if ( r.machine )
    CHECK( check_run_graph( *r.machine, ucw ) );
  return r.status;
}

} // namespace

TEST_CASE( "external and bundled solvers agree" )
{
  std::mt19937 rng( 37 );
  prop_partition const parts( { "a" }, { "b" } );
  int realizable = 0;
  for ( int i = 0; i < 40; ++i )
  {
    auto const f = testing::random_formula_of_size( rng, { "a", "b" }, 8, false );
    auto const ucw = spec_to_ucw( f );
    for ( std::size_t n = 1; n <= 2; ++n )
    {
      auto const bundled = status_with( nullptr, ucw, n, parts );
      INFO( to_string( f ), " n=", n );
      CHECK( status_with( PROMPTSYNTH_DIMACS_SOLVE, ucw, n, parts ) == bundled );
      realizable += bundled == synthesis_status::realizable;
    }
  }
  CHECK( realizable > 0 );

  auto const spec = formula::conjunction( relativize( arbiter_formula( 2, 2 ) ), boundedness_formula( 1 ) );
  auto const ucw = spec_to_ucw( spec );
  for ( std::size_t n = 1; n <= 3; ++n )
    CHECK( status_with( PROMPTSYNTH_DIMACS_SOLVE, ucw, n, arbiter_partition( 2 ) ) ==
           status_with( nullptr, ucw, n, arbiter_partition( 2 ) ) );
}

TEST_CASE( "a failing external solver yields unknown" )
{
  auto const ucw = spec_to_ucw( parse( "G (a -> X b)" ) );
  prop_partition const parts( { "a" }, { "b" } );
  CHECK( status_with( "false", ucw, 2, parts ) == synthesis_status::unknown );
  CHECK( status_with( PROMPTSYNTH_DIMACS_SOLVE, ucw, 2, parts, std::chrono::milliseconds( 0 ) ) ==
         synthesis_status::unknown );
}
