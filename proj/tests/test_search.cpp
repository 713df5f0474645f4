#include <doctest.h>

#include <promptsynth/parser.hpp>
#include <promptsynth/rewrite.hpp>
#include <promptsynth/search.hpp>
#include <promptsynth/verify.hpp>

#include "support/printing.hpp"

#include <sstream>

using namespace promptsynth;

namespace
{

/* Smallest k for which some machine with at most n_max states realizes the
   unfolded formula; no alternating colors involved. */
std::optional<std::size_t> unfolding_optimum( formula const& f, prop_partition const& parts, std::size_t n_max,
                                              std::size_t k_max )
{
  for ( std::size_t k = 0; k <= k_max; ++k )
  {
    auto const ucw = spec_to_ucw( unfold_prompt( f, static_cast<unsigned>( k ) ) );
    for ( std::size_t n = 1; n <= n_max; ++n )
      if ( bounded_synthesis( ucw, n, parts ).status == synthesis_status::realizable )
        return k;
  }
  return std::nullopt;
}

bool same_definitive( grid_result const& a, grid_result const& b )
{
  for ( std::size_t i = 0; i < a.points.size(); ++i )
  {
    auto const sa = a.points[i].status;
    auto const sb = b.points[i].status;
    if ( sa != point_status::unknown && sb != point_status::unknown && sa != sb )
      return false;
  }
  return true;
}

} // namespace

TEST_CASE( "realizable_at rejects empty machines and bounds" )
{
  auto const f = arbiter_formula( 1, 1 );
  CHECK_THROWS_AS( realizable_at( f, 0, 1, arbiter_partition( 1 ) ), error );
  CHECK_THROWS_AS( realizable_at( f, 1, 0, arbiter_partition( 1 ) ), error );
  CHECK_THROWS_AS( realizable_at( arbiter_formula( 2, 1 ), 1, 1, arbiter_partition( 1 ) ), error );
}

TEST_CASE( "realizable_at returns colored machines that pass both checks" )
{
  auto const f = arbiter_formula( 2, 2 );
  auto const before = verified_machine_count();
  auto const r = realizable_at( f, 2, 1, arbiter_partition( 2 ) );
  REQUIRE( r.status == point_status::realizable );
  CHECK( r.machine->output_position( "p" ) >= 0 );
  CHECK( model_check_prompt( strip_color( *r.machine ), f, 2 ).holds );
  CHECK( verified_machine_count() == before + 1 );
  CHECK( realizable_at( f, 1, 1, arbiter_partition( 2 ) ).status == point_status::unrealizable_at_size );
}

TEST_CASE( "a single prompt client is served at the floor bound" )
{
  auto const r = approximate_optimum( arbiter_formula( 1, 1 ), arbiter_partition( 1 ), {} );
  REQUIRE( r.status == optimum_status::found );
  CHECK( r.k == 1 );
  CHECK( r.bound == 2 );
  /* flipping the color every step takes two states; without it one suffices */
  CHECK( r.n == 2 );
  CHECK( r.machine->state_count() == 1 );
  CHECK( r.machine->output_position( "p" ) < 0 );
  CHECK( model_check_prompt( *r.machine, arbiter_formula( 1, 1 ), 2 ).holds );
}

TEST_CASE( "an unrealizable specification stays unrealizable" )
{
  auto const f = parse( "G (q1 -> Fp p1) & G !p1" );
  prop_partition const parts( { "q1" }, { "p1" } );
  search_config cfg;
  cfg.n_max = 3;
  cfg.k_max = 3;
  CHECK( approximate_optimum( f, parts, cfg ).status == optimum_status::unrealizable_within_bounds );
  cfg.strategy = search_strategy::diagonal;
  CHECK( approximate_optimum( f, parts, cfg ).status == optimum_status::unrealizable_within_bounds );
  auto const grid = explore_grid( f, parts, { 1, 3 }, { 1, 2 } );
  for ( auto const& p : grid.points )
    CHECK( p.status == point_status::unrealizable_at_size );
}

TEST_CASE( "min-k bounds are within a factor two of the unfolding optimum" )
{
  for ( unsigned r = 1; r <= 2; ++r )
    for ( unsigned rp = 0; rp <= r; ++rp )
    {
      auto const f = arbiter_formula( r, rp );
      auto const parts = arbiter_partition( r );
      search_config cfg;
      cfg.n_max = 2 * r;
      cfg.k_max = 8;
      auto const approx = approximate_optimum( f, parts, cfg );
      auto const optimum = unfolding_optimum( f, parts, 2 * r, 8 );
      INFO( "r=", r, " rp=", rp );
      REQUIRE( approx.status == optimum_status::found );
      REQUIRE( optimum );
      CHECK( *optimum <= approx.bound );
      CHECK( approx.bound <= 2 * std::max<std::size_t>( *optimum, 1 ) );
      CHECK( model_check_prompt( *approx.machine, f, approx.bound ).holds );
    }
}

TEST_CASE( "a larger machine budget never raises the min-k answer" )
{
  auto const f = arbiter_formula( 2, 2 );
  std::size_t previous = 1000;
  for ( std::size_t n_max = 1; n_max <= 4; ++n_max )
  {
    search_config cfg;
    cfg.n_max = n_max;
    cfg.k_max = 4;
    auto const r = approximate_optimum( f, arbiter_partition( 2 ), cfg );
    if ( r.status != optimum_status::found )
      continue;
    CHECK( r.k <= previous );
    previous = r.k;
  }
  CHECK( previous < 1000 );
}

TEST_CASE( "diagonal search returns the first realizable point in diagonal order" )
{
  auto const f = arbiter_formula( 2, 1 );
  auto const parts = arbiter_partition( 2 );
  search_config cfg;
  cfg.n_max = 4;
  cfg.k_max = 3;
  cfg.strategy = search_strategy::diagonal;
  auto const r = approximate_optimum( f, parts, cfg );
  REQUIRE( r.status == optimum_status::found );
  auto const grid = explore_grid( f, parts, { 1, 4 }, { 1, 3 } );
  std::pair<std::size_t, std::size_t> first{ 0, 0 };
  for ( std::size_t d = 2; d <= 7 && first.first == 0; ++d )
    for ( std::size_t k = 1; k <= 3 && first.first == 0; ++k )
      if ( d > k && d - k <= 4 && grid.at( d - k, k ).status == point_status::realizable )
        first = { d - k, k };
  CHECK( std::make_pair( r.n, r.k ) == first );
}

TEST_CASE( "the small arbiter grid is upward closed with or without pruning" )
{
  auto const f = arbiter_formula( 2, 1 );
  auto const parts = arbiter_partition( 2 );
  auto const plain = explore_grid( f, parts, { 1, 4 }, { 1, 2 } );
  grid_options pruned_options;
  pruned_options.prune = true;
  auto const pruned = explore_grid( f, parts, { 1, 4 }, { 1, 2 }, pruned_options );
  grid_options parallel_options;
  parallel_options.workers = 3;
  auto const parallel = explore_grid( f, parts, { 1, 4 }, { 1, 2 }, parallel_options );

  CHECK( plain.points.size() == 8 );
  for ( auto const& p : plain.points )
  {
    CHECK( p.status != point_status::unknown );
    CHECK_FALSE( p.derived );
  }
  CHECK( plain.upward_closed() );
  CHECK( pruned.upward_closed() );
  CHECK( parallel.upward_closed() );
  CHECK( same_definitive( plain, pruned ) );
  CHECK( same_definitive( plain, parallel ) );
  bool any_derived = false;
  for ( auto const& p : pruned.points )
    any_derived = any_derived || p.derived;
  CHECK( any_derived );
  CHECK( plain.at( 1, 1 ).status == point_status::unrealizable_at_size );
  CHECK( plain.at( 4, 2 ).status == point_status::realizable );
  CHECK_FALSE( plain.pareto_points().empty() );
}

TEST_CASE( "closure check detects a violation" )
{
  grid_result g;
  g.n_min = g.k_min = 1;
  g.n_max = 2;
  g.k_max = 1;
  g.points.resize( 2 );
  g.points[0] = { 1, 1, point_status::realizable, false, 0, std::nullopt, {} };
  g.points[1] = { 2, 1, point_status::unrealizable_at_size, false, 0, std::nullopt, {} };
  CHECK_FALSE( g.upward_closed() );
  g.points[1].status = point_status::unknown;
  CHECK( g.upward_closed() );
}

TEST_CASE( "prune bound arithmetic" )
{
  auto const three = parse( "a & b" );
  REQUIRE( size( three ) == 3 );
  CHECK( k_prune_bound( 1, three ) == 8 );
  auto const ten = parse( "G (a U (b & X c)) | d" );
  REQUIRE( size( ten ) == 10 );
  CHECK( k_prune_bound( 6, ten ) == 6144 );
  CHECK( k_prune_bound( 3, arbiter_formula( 6, 2 ) ) == std::numeric_limits<std::size_t>::max() );
  CHECK_THROWS_AS( k_prune_bound( 0, three ), error );
}

TEST_CASE( "grid csv" )
{
  auto grid = explore_grid( arbiter_formula( 1, 1 ), arbiter_partition( 1 ), { 1, 2 }, { 1, 1 } );
  grid.at( 2, 1 ).machine_file = "m_2_1.json";
  auto const csv = grid_to_csv( grid, "arbiter_1_1" );
  std::istringstream is( csv );
  std::string line;
  std::getline( is, line );
  CHECK( line == "formula_id,n,k,status,time_ms,machine_file" );
  std::getline( is, line );
  CHECK( line.rfind( "arbiter_1_1,1,1,UNREALIZABLE_AT_SIZE,", 0 ) == 0 );
  CHECK( line.back() == ',' );
  std::getline( is, line );
  CHECK( line.rfind( "arbiter_1_1,2,1,REALIZABLE,", 0 ) == 0 );
  CHECK( line.substr( line.size() - 10 ) == "m_2_1.json" );
  std::size_t rows = 2;
  while ( std::getline( is, line ) )
    ++rows;
  CHECK( rows == 2 );
}
