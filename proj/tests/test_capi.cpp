#include <doctest.h>

#include <promptsynth/promptsynth.h>


#include <filesystem>
#include <string>

extern "C" int capi_c_smoke( void );

namespace
{

std::string take( char* s )
{
  std::string out = s ? s : "";
  ps_string_free( s );
  return out;
}

} // namespace

TEST_CASE( "the header compiles and runs as C" )
{
  CHECK( capi_c_smoke() == 0 );
}

TEST_CASE( "errors carry status codes and messages" )
{
  ps_formula* f = nullptr;
  CHECK( ps_formula_parse( "G (a U", &f ) == PS_ERROR_PARSE );
  CHECK( f == nullptr );
  CHECK( std::string( ps_last_error() ).size() > 0 );
  CHECK( ps_formula_parse( nullptr, &f ) == PS_ERROR_NULL_ARGUMENT );
  CHECK( ps_formula_parse( "G a", &f ) == PS_OK );
  CHECK( std::string( ps_last_error() ).empty() );

  ps_machine* m = nullptr;
  CHECK( ps_machine_load( "/nonexistent/machine.json", &m ) == PS_ERROR_INVALID );
  CHECK( ps_machine_fixture( "sigma_0_0", &m ) == PS_ERROR_INVALID );
  CHECK( ps_machine_from_json( "{}", &m ) == PS_ERROR_INVALID );
  CHECK( ps_machine_fixture( "sigma_6_3", &m ) == PS_OK );
  int holds = 0;
  /* the fixture neither reads nor writes a */
  CHECK( ps_check( m, f, 1, &holds, nullptr ) == PS_ERROR_INVALID );
  CHECK( std::string( ps_last_error() ).find( "proposition mismatch" ) != std::string::npos );

  ps_partition* parts = nullptr;
  char const* same[] = { "a" };
  CHECK( ps_partition_create( same, 1, same, 1, nullptr, &parts ) == PS_ERROR_INVALID );
  CHECK( ps_partition_create( nullptr, 1, same, 1, nullptr, &parts ) == PS_ERROR_NULL_ARGUMENT );
  ps_machine_free( m );
  ps_formula_free( f );
}

TEST_CASE( "fixtures are checked through the C interface" )
{
  ps_formula* f = nullptr;
  REQUIRE( ps_formula_arbiter( 6, 2, &f ) == PS_OK );
  ps_machine* colored = nullptr;
  ps_machine* m = nullptr;
  REQUIRE( ps_machine_fixture( "sigma_12_1", &colored ) == PS_OK );
  REQUIRE( ps_machine_strip_color( colored, nullptr, &m ) == PS_OK );
  int holds = 0;
  char* witness = nullptr;
  CHECK( ps_check( m, f, 2, &holds, &witness ) == PS_OK );
  CHECK( holds == 1 );
  CHECK( witness == nullptr );
  CHECK( ps_check( m, f, 1, &holds, &witness ) == PS_OK );
  CHECK( holds == 0 );
  CHECK( take( witness ).find( "play: " ) != std::string::npos );

  int found = 0;
  std::size_t bound = 0;
  CHECK( ps_minimal_bound( m, f, 0, &found, &bound, nullptr ) == PS_OK );
  CHECK( found == 1 );
  CHECK( bound == 2 );

  ps_formula* never = nullptr;
  REQUIRE( ps_formula_parse( "G (q1 -> Fp p1) & G !p1", &never ) == PS_OK );
  char* note = nullptr;
  CHECK( ps_minimal_bound( m, never, 0, &found, &bound, &note ) == PS_OK );
  CHECK( found == 0 );
  CHECK( take( note ).find( "every bound" ) != std::string::npos );

  std::size_t states = 0;
  CHECK( ps_machine_state_count( m, &states ) == PS_OK );
  CHECK( states == 12 );
  CHECK( take( [&] { char* s = nullptr; ps_machine_to_dot( m, &s ); return s; }() ).find( "digraph" ) == 0 );

  ps_formula_free( never );
  ps_machine_free( m );
  ps_machine_free( colored );
  ps_formula_free( f );
}

TEST_CASE( "machines round trip through json and files" )
{
  ps_machine* m = nullptr;
  REQUIRE( ps_machine_round_robin( 3, &m ) == PS_OK );
  char* json = nullptr;
  REQUIRE( ps_machine_to_json( m, &json ) == PS_OK );
  ps_machine* back = nullptr;
  CHECK( ps_machine_from_json( json, &back ) == PS_OK );
  char* again = nullptr;
  REQUIRE( ps_machine_to_json( back, &again ) == PS_OK );
  CHECK( std::string( json ) == std::string( again ) );

  auto const path = ( std::filesystem::temp_directory_path() / "promptsynth_capi_rr3.json" ).string();
  CHECK( ps_machine_save( m, path.c_str() ) == PS_OK );
  ps_machine* loaded = nullptr;
  CHECK( ps_machine_load( path.c_str(), &loaded ) == PS_OK );
  char* loaded_json = nullptr;
  REQUIRE( ps_machine_to_json( loaded, &loaded_json ) == PS_OK );
  CHECK( take( loaded_json ) == std::string( json ) );
  std::filesystem::remove( path );

  ps_string_free( json );
  ps_string_free( again );
  ps_machine_free( loaded );
  ps_machine_free( back );
  ps_machine_free( m );
}

TEST_CASE( "synthesis through the C interface" )
{
  ps_formula* f = nullptr;
  ps_partition* parts = nullptr;
  REQUIRE( ps_formula_parse( "G (q1 -> Fp p1)", &f ) == PS_OK );
  char const* inputs[] = { "q1" };
  char const* outputs[] = { "p1" };
  REQUIRE( ps_partition_create( inputs, 1, outputs, 1, nullptr, &parts ) == PS_OK );

  ps_search_options options;
  ps_search_options_default( &options );
  CHECK( options.n_max == 8 );
  CHECK( options.k_max == 64 );
  ps_synthesis_report report;
  ps_machine* m = nullptr;
  auto const before = ps_verified_machine_count();
  REQUIRE( ps_synthesize( f, parts, &options, &report, &m ) == PS_OK );
  CHECK( report.verdict == PS_REALIZABLE );
  CHECK( report.k == 1 );
  CHECK( report.bound == 2 );
  CHECK( ps_verified_machine_count() > before );
  int holds = 0;
  CHECK( ps_check( m, f, report.bound, &holds, nullptr ) == PS_OK );
  CHECK( holds == 1 );
  ps_machine_free( m );

  ps_formula* plain = nullptr;
  REQUIRE( ps_formula_parse( "G (q1 -> F p1)", &plain ) == PS_OK );
  ps_verdict verdict = PS_UNKNOWN;
  std::size_t n = 0;
  CHECK( ps_synthesize_ltl( plain, parts, 2, -1, &verdict, &n, &m ) == PS_OK );
  CHECK( verdict == PS_REALIZABLE );
  CHECK( n == 1 );
  ps_machine_free( m );
  CHECK( ps_synthesize_ltl( f, parts, 2, -1, &verdict, &n, nullptr ) == PS_ERROR_INVALID );

  ps_formula* bad = nullptr;
  REQUIRE( ps_formula_parse( "G (q1 -> Fp p1) & G !p1", &bad ) == PS_OK );
  options.n_max = 2;
  options.k_max = 2;
  CHECK( ps_synthesize( bad, parts, &options, &report, nullptr ) == PS_OK );
  CHECK( report.verdict == PS_UNREALIZABLE );
  options.budget_ms = 0;
  CHECK( ps_synthesize( f, parts, &options, &report, nullptr ) == PS_OK );
  CHECK( report.verdict == PS_UNKNOWN );

  ps_formula_free( bad );
  ps_formula_free( plain );
  ps_partition_free( parts );
  ps_formula_free( f );
}

TEST_CASE( "grid exploration through the C interface" )
{
  ps_formula* f = nullptr;
  ps_partition* parts = nullptr;
  REQUIRE( ps_formula_arbiter( 2, 1, &f ) == PS_OK );
  REQUIRE( ps_partition_arbiter( 2, &parts ) == PS_OK );
  ps_grid_options options;
  ps_grid_options_default( &options );
  options.workers = 2;
  ps_grid* g = nullptr;
  REQUIRE( ps_explore( f, parts, 1, 3, 1, 2, &options, &g ) == PS_OK );
  int closed = 0;
  CHECK( ps_grid_upward_closed( g, &closed ) == PS_OK );
  CHECK( closed == 1 );

  ps_verdict verdict = PS_UNKNOWN;
  ps_machine* m = nullptr;
  CHECK( ps_grid_point( g, 1, 1, &verdict, nullptr, nullptr, &m ) == PS_OK );
  CHECK( verdict == PS_UNREALIZABLE );
  CHECK( m == nullptr );
  CHECK( ps_grid_point( g, 9, 1, &verdict, nullptr, nullptr, nullptr ) == PS_ERROR_INVALID );

  std::size_t* pairs = nullptr;
  std::size_t count = 0;
  REQUIRE( ps_grid_pareto( g, &pairs, &count ) == PS_OK );
  REQUIRE( count > 0 );
  CHECK( ps_grid_point( g, pairs[0], pairs[1], &verdict, nullptr, nullptr, &m ) == PS_OK );
  CHECK( verdict == PS_REALIZABLE );
  REQUIRE( m != nullptr );
  CHECK( ps_grid_set_machine_file( g, pairs[0], pairs[1], "corner.json" ) == PS_OK );
  ps_sizes_free( pairs );
  ps_machine_free( m );

  char* csv = nullptr;
  REQUIRE( ps_grid_to_csv( g, "arbiter_2_1", &csv ) == PS_OK );
  auto const text = take( csv );
  CHECK( text.rfind( "formula_id,n,k,status,time_ms,machine_file\n", 0 ) == 0 );
  CHECK( text.find( "corner.json" ) != std::string::npos );
  ps_grid_free( g );
  ps_partition_free( parts );
  ps_formula_free( f );
}
