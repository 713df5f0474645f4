#include <promptsynth/promptsynth.h>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int exit_usage = 3;

struct failure
{
  std::string message;
};

void ok( ps_status s )
{
  if ( s != PS_OK )
    throw failure{ ps_last_error() };
}

template<typename T, void ( *Free )( T* )>
struct deleter
{
  void operator()( T* p ) const { Free( p ); }
};

using formula_ptr = std::unique_ptr<ps_formula, deleter<ps_formula, ps_formula_free>>;
using partition_ptr = std::unique_ptr<ps_partition, deleter<ps_partition, ps_partition_free>>;
using machine_ptr = std::unique_ptr<ps_machine, deleter<ps_machine, ps_machine_free>>;
using grid_ptr = std::unique_ptr<ps_grid, deleter<ps_grid, ps_grid_free>>;

std::string take( char* s )
{
  std::string out = s ? s : "";
  ps_string_free( s );
  return out;
}

void write_file( std::string const& path, std::string const& text )
{
  std::ofstream out( path );
  if ( !out || !( out << text ) )
    throw failure{ "cannot write '" + path + "'" };
}

std::pair<std::size_t, std::size_t> parse_range( std::string const& text, char const* flag )
{
  static std::regex const pattern( R"((\d+)(?:\.\.(\d+))?)" );
  std::smatch m;
  if ( !std::regex_match( text, m, pattern ) )
    throw failure{ std::string( flag ) + " expects a..b or a single number" };
  auto const lo = std::stoul( m[1] );
  auto const hi = m[2].matched ? std::stoul( m[2] ) : lo;
  if ( lo == 0 || lo > hi )
    throw failure{ std::string( flag ) + " needs 1 <= a <= b" };
  return { lo, hi };
}

/* "250ms", "30s", "5m", "1h", or plain seconds */
long long parse_budget( std::string const& text )
{
  if ( text.empty() )
    return -1;
  static std::regex const pattern( R"((\d+)(ms|s|m|h)?)" );
  std::smatch m;
  if ( !std::regex_match( text, m, pattern ) )
    throw failure{ "--budget expects a duration such as 500ms, 120s, 5m or 1h" };
  long long const value = std::stoll( m[1] );
  std::string const unit = m[2].matched ? m[2].str() : "s";
  if ( unit == "ms" )
    return value;
  if ( unit == "s" )
    return value * 1000;
  if ( unit == "m" )
    return value * 60 * 1000;
  return value * 60 * 60 * 1000;
}

struct formula_options
{
  std::string text;
  std::string file;
  std::string arbiter;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string color = "p";

  void add_to( CLI::App& app, bool with_partition )
  {
    auto* group = app.add_option_group( "formula", "Specification to use" );
    group->add_option( "--formula", text, "Prompt-LTL formula" );
    group->add_option( "--formula-file", file, "File holding a Prompt-LTL formula" )->check( CLI::ExistingFile );
    group->add_option( "--formula-arbiter", arbiter, "Prompt arbiter r,rp" );
    group->require_option( 1 );
    if ( !with_partition )
      return;
    app.add_option( "--inputs", inputs, "Environment propositions" )->delimiter( ',' );
    app.add_option( "--outputs", outputs, "System propositions" )->delimiter( ',' );
    app.add_option( "--color", color, "Fresh color proposition" )->capture_default_str();
  }

  std::optional<std::pair<unsigned, unsigned>> arbiter_parameters() const
  {
    if ( arbiter.empty() )
      return std::nullopt;
    static std::regex const pattern( R"((\d+),(\d+))" );
    std::smatch m;
    if ( !std::regex_match( arbiter, m, pattern ) )
      throw failure{ "--formula-arbiter expects r,rp" };
    return std::make_pair( static_cast<unsigned>( std::stoul( m[1] ) ), static_cast<unsigned>( std::stoul( m[2] ) ) );
  }

  std::string identifier() const
  {
    if ( auto const a = arbiter_parameters() )
      return "arbiter_" + std::to_string( a->first ) + "_" + std::to_string( a->second );
    if ( !file.empty() )
      return std::filesystem::path( file ).stem().string();
    return "formula";
  }

  formula_ptr formula() const
  {
    ps_formula* f = nullptr;
    if ( auto const a = arbiter_parameters() )
      ok( ps_formula_arbiter( a->first, a->second, &f ) );
    else if ( !file.empty() )
    {
      std::ifstream in( file );
      std::ostringstream buffer;
      buffer << in.rdbuf();
      if ( !in )
        throw failure{ "cannot read '" + file + "'" };
      ok( ps_formula_parse( buffer.str().c_str(), &f ) );
    }
    else
      ok( ps_formula_parse( text.c_str(), &f ) );
    return formula_ptr( f );
  }

  partition_ptr partition() const
  {
    ps_partition* p = nullptr;
    auto const a = arbiter_parameters();
    if ( a && inputs.empty() && outputs.empty() && color == "p" )
      ok( ps_partition_arbiter( a->first, &p ) );
    else
    {
      if ( inputs.empty() && outputs.empty() && !a )
        throw failure{ "--inputs and --outputs are required with --formula or --formula-file" };
      std::vector<char const*> in, out;
      for ( auto const& s : inputs )
        in.push_back( s.c_str() );
      for ( auto const& s : outputs )
        out.push_back( s.c_str() );
      ok( ps_partition_create( in.data(), in.size(), out.data(), out.size(), color.c_str(), &p ) );
    }
    return partition_ptr( p );
  }
};

char const* verdict_name( ps_verdict v )
{
  switch ( v )
  {
  case PS_REALIZABLE:
    return "REALIZABLE";
  case PS_UNREALIZABLE:
    return "UNREALIZABLE";
  case PS_UNKNOWN:
    break;
  }
  return "UNKNOWN";
}

void write_machine( ps_machine const* m, std::string const& prefix )
{
  char* json = nullptr;
  char* dot = nullptr;
  ok( ps_machine_to_json( m, &json ) );
  auto const json_text = take( json );
  ok( ps_machine_to_dot( m, &dot ) );
  write_file( prefix + ".json", json_text );
  write_file( prefix + ".dot", take( dot ) );
}

struct synth_command
{
  formula_options spec;
  std::string mode = "min-k";
  std::size_t n_max = 8;
  std::size_t k_max = 64;
  std::string budget;
  std::string out = "machine";

  int run() const
  {
    auto const f = spec.formula();
    auto const parts = spec.partition();
    ps_search_options options;
    ps_search_options_default( &options );
    options.n_max = n_max;
    options.k_max = k_max;
    options.budget_ms = parse_budget( budget );
    options.diagonal = mode == "diagonal";
    ps_synthesis_report report;
    ps_machine* raw = nullptr;
    ok( ps_synthesize( f.get(), parts.get(), &options, &report, &raw ) );
    machine_ptr const m( raw );

    std::cout << "status " << verdict_name( report.verdict ) << "\n";
    if ( report.verdict == PS_REALIZABLE )
    {
      std::size_t states = 0;
      ok( ps_machine_state_count( m.get(), &states ) );
      write_machine( m.get(), out );
      std::cout << "k " << report.k << "\nbound " << report.bound << "\nsearch_size " << report.n << "\nstates "
                << states << "\nmachine " << out << ".json\ndot " << out << ".dot\n";
    }
    else if ( report.verdict == PS_UNREALIZABLE )
      std::cout << "no machine with at most " << n_max << " states and k <= " << k_max << "\n";
    else
      std::cout << "budget exhausted before a definitive answer\n";
    if ( report.skipped_unknown )
      std::cout << "note: some earlier points ran out of budget\n";
    return report.verdict;
  }
};

struct check_command
{
  formula_options spec;
  std::string machine;
  std::string strip;
  std::optional<std::size_t> k;
  std::size_t cap = 0;

  int run() const
  {
    auto const f = spec.formula();
    ps_machine* raw = nullptr;
    ok( ps_machine_load( machine.c_str(), &raw ) );
    machine_ptr m( raw );
    if ( !strip.empty() )
    {
      ok( ps_machine_strip_color( m.get(), strip.c_str(), &raw ) );
      m.reset( raw );
    }
    if ( k )
    {
      int holds = 0;
      char* witness = nullptr;
      ok( ps_check( m.get(), f.get(), *k, &holds, &witness ) );
      auto const text = take( witness );
      std::cout << ( holds ? "holds" : "fails" ) << " with bound " << *k << "\n";
      if ( !holds )
        std::cout << text << "\n";
      return holds ? 0 : 1;
    }
    int found = 0;
    std::size_t bound = 0;
    char* note = nullptr;
    ok( ps_minimal_bound( m.get(), f.get(), cap, &found, &bound, &note ) );
    auto const text = take( note );
    if ( found )
      std::cout << "minimal bound " << bound << "\n";
    else
      std::cout << "no bound: " << text << "\n";
    return found ? 0 : 1;
  }
};

struct explore_command
{
  formula_options spec;
  std::string n_range = "1..4";
  std::string k_range = "1..4";
  std::string out;
  std::string machine_dir;
  std::string budget;
  unsigned workers = 1;
  bool prune = false;

  int run() const
  {
    auto const f = spec.formula();
    auto const parts = spec.partition();
    auto const n = parse_range( n_range, "--n" );
    auto const k = parse_range( k_range, "--k" );
    ps_grid_options options;
    ps_grid_options_default( &options );
    options.budget_ms = parse_budget( budget );
    options.prune = prune;
    options.workers = workers;
    ps_grid* raw = nullptr;
    ok( ps_explore( f.get(), parts.get(), n.first, n.second, k.first, k.second, &options, &raw ) );
    grid_ptr const g( raw );

    std::filesystem::path dir = machine_dir;
    if ( dir.empty() && !out.empty() )
      dir = std::filesystem::path( out ).parent_path();
    bool any_realizable = false, any_unknown = false;
    for ( auto i = n.first; i <= n.second; ++i )
      for ( auto j = k.first; j <= k.second; ++j )
      {
        ps_verdict v = PS_UNKNOWN;
        ps_machine* m = nullptr;
        ok( ps_grid_point( g.get(), i, j, &v, nullptr, nullptr, &m ) );
        machine_ptr const owned( m );
        any_realizable = any_realizable || v == PS_REALIZABLE;
        any_unknown = any_unknown || v == PS_UNKNOWN;
        if ( !owned || out.empty() )
          continue;
        auto const name = "m_" + std::to_string( i ) + "_" + std::to_string( j ) + ".json";
        if ( !dir.empty() )
          std::filesystem::create_directories( dir );
        ok( ps_machine_save( owned.get(), ( dir / name ).string().c_str() ) );
        ok( ps_grid_set_machine_file( g.get(), i, j, name.c_str() ) );
      }

    char* csv = nullptr;
    ok( ps_grid_to_csv( g.get(), spec.identifier().c_str(), &csv ) );
    auto const text = take( csv );
    if ( out.empty() )
      std::cout << text;
    else
      write_file( out, text );

    int closed = 0;
    ok( ps_grid_upward_closed( g.get(), &closed ) );
    std::size_t* pairs = nullptr;
    std::size_t count = 0;
    ok( ps_grid_pareto( g.get(), &pairs, &count ) );
    std::ostream& log = out.empty() ? std::cerr : std::cout;
    log << "upward_closed " << ( closed ? "yes" : "no" ) << "\npareto";
    for ( std::size_t i = 0; i < count; ++i )
      log << " (" << pairs[2 * i] << "," << pairs[2 * i + 1] << ")";
    log << "\n";
    ps_sizes_free( pairs );
    if ( !closed )
      throw failure{ "grid violates upward closure" };
    if ( any_realizable )
      return PS_REALIZABLE;
    return any_unknown ? PS_UNKNOWN : PS_UNREALIZABLE;
  }
};

struct bench_command
{
  unsigned max_r = 3;
  std::string budget = "120s";
  std::string out;

  int run() const
  {
    using clock = std::chrono::steady_clock;
    auto const budget_ms = parse_budget( budget );
    auto elapsed_ms = []( clock::time_point start ) {
      return std::chrono::duration<double, std::milli>( clock::now() - start ).count();
    };
    std::ostringstream csv;
    csv << "r,r_p,status,t_ltl_ms,t_prompt_ms,slowdown\n";
    for ( unsigned r = 1; r <= max_r; ++r )
    {
      ps_formula* raw_f = nullptr;
      ps_partition* raw_p = nullptr;
      ok( ps_formula_arbiter( r, 0, &raw_f ) );
      formula_ptr const plain( raw_f );
      ok( ps_partition_arbiter( r, &raw_p ) );
      partition_ptr const parts( raw_p );

      ps_verdict ltl_verdict = PS_UNKNOWN;
      std::size_t ltl_size = 0;
      auto start = clock::now();
      ok( ps_synthesize_ltl( plain.get(), parts.get(), 2 * r, budget_ms, &ltl_verdict, &ltl_size, nullptr ) );
      double const t_ltl = elapsed_ms( start );

      for ( unsigned rp = 0; rp <= r; ++rp )
      {
        ok( ps_formula_arbiter( r, rp, &raw_f ) );
        formula_ptr const f( raw_f );
        ps_search_options options;
        ps_search_options_default( &options );
        options.n_max = 2 * r;
        options.k_max = r;
        options.budget_ms = budget_ms;
        ps_synthesis_report report;
        start = clock::now();
        ok( ps_synthesize( f.get(), parts.get(), &options, &report, nullptr ) );
        double const t_prompt = elapsed_ms( start );

        bool const definitive = ltl_verdict != PS_UNKNOWN && report.verdict != PS_UNKNOWN && !report.skipped_unknown;
        char line[160];
        std::snprintf( line, sizeof line, "%u,%u,%s,%.3f,%.3f,", r, rp,
                       definitive ? verdict_name( report.verdict ) : "UNKNOWN", t_ltl, t_prompt );
        csv << line;
        if ( definitive && t_ltl > 0 )
        {
          std::snprintf( line, sizeof line, "%.4f", t_prompt / t_ltl );
          csv << line;
        }
        csv << "\n";
      }
    }
    if ( out.empty() )
      std::cout << csv.str();
    else
      write_file( out, csv.str() );
    return 0;
  }
};

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Prompt-LTL realizability toolkit" };
  app.require_subcommand( 1 );

  synth_command synth;
  auto* synth_app = app.add_subcommand( "synth", "Approximate the optimal prompt bound and emit a machine" );
  synth.spec.add_to( *synth_app, true );
  synth_app->add_option( "--mode", synth.mode, "Search order" )
      ->check( CLI::IsMember( { "min-k", "diagonal" } ) )
      ->capture_default_str();
  synth_app->add_option( "--n-max", synth.n_max, "Largest machine size" )->check( CLI::PositiveNumber )->capture_default_str();
  synth_app->add_option( "--k-max", synth.k_max, "Largest block bound" )->check( CLI::PositiveNumber )->capture_default_str();
  synth_app->add_option( "--budget", synth.budget, "Time budget per query (500ms, 120s, 5m, 1h)" );
  synth_app->add_option( "--out", synth.out, "Output prefix for .json and .dot" )->capture_default_str();

  check_command check;
  auto* check_app = app.add_subcommand( "check", "Model check a machine, or find its minimal bound without --k" );
  check.spec.add_to( *check_app, false );
  check_app->add_option( "--machine", check.machine, "Machine JSON file" )->required();
  check_app->add_flag( "--strip-color{p}", check.strip, "Remove the color output (default p) first" );
  check_app->add_option( "--k", check.k, "Prompt bound to check" );
  check_app->add_option( "--cap", check.cap, "Largest bound probed by the minimal bound search" );

  explore_command explore;
  auto* explore_app = app.add_subcommand( "explore", "Solve every point of an (n, k) grid" );
  explore.spec.add_to( *explore_app, true );
  explore_app->add_option( "--n", explore.n_range, "Machine sizes a..b" )->capture_default_str();
  explore_app->add_option( "--k", explore.k_range, "Block bounds a..b" )->capture_default_str();
  explore_app->add_option( "--out", explore.out, "CSV file; machines are written next to it" );
  explore_app->add_option( "--machine-dir", explore.machine_dir, "Directory for machine files" );
  explore_app->add_option( "--budget", explore.budget, "Time budget per point" );
  explore_app->add_option( "--workers", explore.workers, "Parallel solver threads" )->check( CLI::PositiveNumber );
  explore_app->add_flag( "--prune", explore.prune, "Derive statuses from upward closure" );

  bench_command bench;
  auto* bench_app = app.add_subcommand( "bench", "Time LTL synthesis against the prompt pipeline on arbiters" );
  bench_app->add_option( "--arbiter-max-r", bench.max_r, "Largest number of clients" )
      ->check( CLI::PositiveNumber )
      ->capture_default_str();
  bench_app->add_option( "--budget", bench.budget, "Time budget per query" )->capture_default_str();
  bench_app->add_option( "--out", bench.out, "CSV file" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    int const code = app.exit( e );
    return code == 0 ? 0 : exit_usage;
  }

  try
  {
    if ( *synth_app )
      return synth.run();
    if ( *check_app )
      return check.run();
    if ( *explore_app )
      return explore.run();
    return bench.run();
  }
  catch ( failure const& e )
  {
    std::cerr << "error: " << e.message << "\n";
    return exit_usage;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
