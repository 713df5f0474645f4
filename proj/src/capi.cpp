#include <promptsynth/promptsynth.h>

#include <promptsynth/automata.hpp>
#include <promptsynth/parser.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/search.hpp>
#include <promptsynth/synthesis.hpp>
#include <promptsynth/verify.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace promptsynth;

struct ps_formula
{
  formula value;
};

struct ps_partition
{
  prop_partition value;
};

struct ps_machine
{
  mealy_machine value;
};

struct ps_grid
{
  grid_result value;
};

namespace
{

thread_local std::string last_error;

template<typename Body>
ps_status guarded( Body&& body )
{
  try
  {
    body();
    last_error.clear();
    return PS_OK;
  }
  catch ( parse_error const& e )
  {
    last_error = e.what();
    return PS_ERROR_PARSE;
  }
  catch ( internal_error const& e )
  {
    last_error = e.what();
    return PS_ERROR_INTERNAL;
  }
  catch ( error const& e )
  {
    last_error = e.what();
    return PS_ERROR_INVALID;
  }
  catch ( std::bad_alloc const& )
  {
    last_error = "out of memory";
    return PS_ERROR_OUT_OF_MEMORY;
  }
  catch ( std::exception const& e )
  {
    last_error = e.what();
    return PS_ERROR_INTERNAL;
  }
  catch ( ... )
  {
    last_error = "unknown exception";
    return PS_ERROR_INTERNAL;
  }
}

ps_status null_argument()
{
  last_error = "null argument";
  return PS_ERROR_NULL_ARGUMENT;
}

template<typename... Ts>
bool any_null( Ts const*... ps )
{
  return ( ( ps == nullptr ) || ... );
}

char* duplicate( std::string const& s )
{
  auto* out = static_cast<char*>( std::malloc( s.size() + 1 ) );
  if ( !out )
    throw std::bad_alloc();
  std::memcpy( out, s.c_str(), s.size() + 1 );
  return out;
}

time_budget to_budget( long long ms )
{
  if ( ms < 0 )
    return std::nullopt;
  return std::chrono::milliseconds( ms );
}

ps_verdict to_verdict( point_status s )
{
  switch ( s )
  {
  case point_status::realizable:
    return PS_REALIZABLE;
  case point_status::unrealizable_at_size:
    return PS_UNREALIZABLE;
  case point_status::unknown:
    break;
  }
  return PS_UNKNOWN;
}

std::string describe( counterexample const& c )
{
  return "inputs: " + to_string( c.inputs ) + "\nplay: " + to_string( c.play );
}

} // namespace

extern "C" {

const char* ps_last_error( void )
{
  return last_error.c_str();
}

void ps_string_free( char* s )
{
  std::free( s );
}

ps_status ps_formula_parse( const char* text, ps_formula** out )
{
  if ( any_null( text, out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_formula{ parse( text ) }; } );
}

ps_status ps_formula_arbiter( unsigned r, unsigned rp, ps_formula** out )
{
  if ( any_null( out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_formula{ arbiter_formula( r, rp ) }; } );
}

ps_status ps_formula_to_string( const ps_formula* f, char** out )
{
  if ( any_null( f, out ) )
    return null_argument();
  return guarded( [&] { *out = duplicate( to_string( f->value ) ); } );
}

ps_status ps_formula_size( const ps_formula* f, size_t* out )
{
  if ( any_null( f, out ) )
    return null_argument();
  return guarded( [&] { *out = size( f->value ); } );
}

void ps_formula_free( ps_formula* f )
{
  delete f;
}

ps_status ps_partition_create( const char* const* inputs, size_t input_count, const char* const* outputs,
                               size_t output_count, const char* color, ps_partition** out )
{
  if ( any_null( out ) || ( input_count && !inputs ) || ( output_count && !outputs ) )
    return null_argument();
  for ( size_t i = 0; i < input_count; ++i )
    if ( !inputs[i] )
      return null_argument();
  for ( size_t i = 0; i < output_count; ++i )
    if ( !outputs[i] )
      return null_argument();
  return guarded( [&] {
    std::vector<std::string> in( inputs, inputs + input_count );
    std::vector<std::string> outs( outputs, outputs + output_count );
    *out = new ps_partition{ prop_partition( std::move( in ), std::move( outs ), color ? color : "p" ) };
  } );
}

ps_status ps_partition_arbiter( unsigned r, ps_partition** out )
{
  if ( any_null( out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_partition{ arbiter_partition( r ) }; } );
}

void ps_partition_free( ps_partition* p )
{
  delete p;
}

ps_status ps_machine_load( const char* path, ps_machine** out )
{
  if ( any_null( path, out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_machine{ load_machine( path ) }; } );
}

ps_status ps_machine_from_json( const char* text, ps_machine** out )
{
  if ( any_null( text, out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_machine{ machine_from_json( text ) }; } );
}

ps_status ps_machine_save( const ps_machine* m, const char* path )
{
  if ( any_null( m, path ) )
    return null_argument();
  return guarded( [&] { save_machine( m->value, path ); } );
}

ps_status ps_machine_to_json( const ps_machine* m, char** out )
{
  if ( any_null( m, out ) )
    return null_argument();
  return guarded( [&] { *out = duplicate( machine_to_json( m->value ) ); } );
}

ps_status ps_machine_to_dot( const ps_machine* m, char** out )
{
  if ( any_null( m, out ) )
    return null_argument();
  return guarded( [&] { *out = duplicate( machine_to_dot( m->value ) ); } );
}

ps_status ps_machine_strip_color( const ps_machine* m, const char* color, ps_machine** out )
{
  if ( any_null( m, out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_machine{ strip_color( m->value, color ? color : "p" ) }; } );
}

ps_status ps_machine_fixture( const char* name, ps_machine** out )
{
  if ( any_null( name, out ) )
    return null_argument();
  return guarded( [&] {
    std::string const n = name;
    if ( n == "sigma_6_3" )
      *out = new ps_machine{ sigma_6_3() };
    else if ( n == "sigma_12_1" )
      *out = new ps_machine{ sigma_12_1() };
    else
      throw error( "unknown fixture '" + n + "'" );
  } );
}

ps_status ps_machine_round_robin( unsigned r, ps_machine** out )
{
  if ( any_null( out ) )
    return null_argument();
  return guarded( [&] { *out = new ps_machine{ round_robin_machine( r ) }; } );
}

ps_status ps_machine_state_count( const ps_machine* m, size_t* out )
{
  if ( any_null( m, out ) )
    return null_argument();
  *out = m->value.state_count();
  last_error.clear();
  return PS_OK;
}

void ps_machine_free( ps_machine* m )
{
  delete m;
}

ps_status ps_check( const ps_machine* m, const ps_formula* f, size_t k, int* holds, char** counterexample )
{
  if ( any_null( m, f, holds ) )
    return null_argument();
  return guarded( [&] {
    auto const report = model_check_prompt( m->value, f->value, k );
    char* text = report.witness ? duplicate( describe( *report.witness ) ) : nullptr;
    *holds = report.holds ? 1 : 0;
    if ( counterexample )
      *counterexample = text;
    else
      std::free( text );
  } );
}

ps_status ps_minimal_bound( const ps_machine* m, const ps_formula* f, size_t cap, int* found, size_t* bound,
                            char** note )
{
  if ( any_null( m, f, found, bound ) )
    return null_argument();
  return guarded( [&] {
    auto const r = minimal_realized_bound( m->value, f->value, cap ? std::optional<std::size_t>( cap ) : std::nullopt );
    char* text = r.bound ? nullptr : duplicate( r.note );
    *found = r.bound ? 1 : 0;
    *bound = r.bound.value_or( 0 );
    if ( note )
      *note = text;
    else
      std::free( text );
  } );
}

void ps_search_options_default( ps_search_options* options )
{
  if ( !options )
    return;
  search_config const cfg;
  options->n_max = cfg.n_max;
  options->k_max = cfg.k_max;
  options->budget_ms = -1;
  options->diagonal = 0;
}

ps_status ps_synthesize( const ps_formula* f, const ps_partition* parts, const ps_search_options* options,
                         ps_synthesis_report* report, ps_machine** machine )
{
  if ( any_null( f, parts, options, report ) )
    return null_argument();
  return guarded( [&] {
    search_config cfg;
    cfg.n_max = options->n_max;
    cfg.k_max = options->k_max;
    cfg.budget = to_budget( options->budget_ms );
    cfg.strategy = options->diagonal ? search_strategy::diagonal : search_strategy::min_k;
    auto const r = approximate_optimum( f->value, parts->value, cfg );
    ps_machine* result = r.machine ? new ps_machine{ *r.machine } : nullptr;
    *report = {};
    switch ( r.status )
    {
    case optimum_status::found:
      report->verdict = PS_REALIZABLE;
      break;
    case optimum_status::unrealizable_within_bounds:
      report->verdict = PS_UNREALIZABLE;
      break;
    case optimum_status::unknown:
      report->verdict = PS_UNKNOWN;
      break;
    }
    report->k = r.k;
    report->bound = r.bound;
    report->n = r.n;
    report->skipped_unknown = r.skipped_unknown ? 1 : 0;
    if ( machine )
      *machine = result;
    else
      delete result;
  } );
}

ps_status ps_synthesize_ltl( const ps_formula* f, const ps_partition* parts, size_t n_max, long long budget_ms,
                             ps_verdict* verdict, size_t* n, ps_machine** machine )
{
  if ( any_null( f, parts, verdict, n ) )
    return null_argument();
  return guarded( [&] {
    if ( n_max == 0 )
      throw error( "n_max must be at least 1" );
    parts->value.check_covers( f->value );
    auto const ucw = spec_to_ucw( f->value );
    bool unknown = false;
    *verdict = PS_UNREALIZABLE;
    *n = 0;
    if ( machine )
      *machine = nullptr;
    for ( std::size_t size = 1; size <= n_max; ++size )
    {
      auto r = bounded_synthesis( ucw, size, parts->value, to_budget( budget_ms ) );
      if ( r.status == synthesis_status::unknown )
        unknown = true;
      if ( r.status != synthesis_status::realizable )
        continue;
      if ( !model_check_ltl( *r.machine, f->value ).holds )
        throw internal_error( "synthesized machine violates the specification" );
      *verdict = PS_REALIZABLE;
      *n = size;
      if ( machine )
        *machine = new ps_machine{ std::move( *r.machine ) };
      return;
    }
    if ( unknown )
      *verdict = PS_UNKNOWN;
  } );
}

size_t ps_verified_machine_count( void )
{
  return verified_machine_count();
}

void ps_grid_options_default( ps_grid_options* options )
{
  if ( !options )
    return;
  options->budget_ms = -1;
  options->prune = 0;
  options->workers = 1;
}

ps_status ps_explore( const ps_formula* f, const ps_partition* parts, size_t n_lo, size_t n_hi, size_t k_lo,
                      size_t k_hi, const ps_grid_options* options, ps_grid** out )
{
  if ( any_null( f, parts, options, out ) )
    return null_argument();
  return guarded( [&] {
    grid_options opts;
    opts.budget = to_budget( options->budget_ms );
    opts.prune = options->prune != 0;
    opts.workers = options->workers;
    *out = new ps_grid{ explore_grid( f->value, parts->value, { n_lo, n_hi }, { k_lo, k_hi }, opts ) };
  } );
}

ps_status ps_grid_point( const ps_grid* g, size_t n, size_t k, ps_verdict* verdict, int* derived, double* time_ms,
                         ps_machine** machine )
{
  if ( any_null( g ) )
    return null_argument();
  return guarded( [&] {
    auto const& p = g->value.at( n, k );
    ps_machine* result = p.machine ? new ps_machine{ *p.machine } : nullptr;
    if ( verdict )
      *verdict = to_verdict( p.status );
    if ( derived )
      *derived = p.derived ? 1 : 0;
    if ( time_ms )
      *time_ms = p.time_ms;
    if ( machine )
      *machine = result;
    else
      delete result;
  } );
}

ps_status ps_grid_set_machine_file( ps_grid* g, size_t n, size_t k, const char* file )
{
  if ( any_null( g, file ) )
    return null_argument();
  return guarded( [&] { g->value.at( n, k ).machine_file = file; } );
}

ps_status ps_grid_upward_closed( const ps_grid* g, int* out )
{
  if ( any_null( g, out ) )
    return null_argument();
  return guarded( [&] { *out = g->value.upward_closed() ? 1 : 0; } );
}

ps_status ps_grid_pareto( const ps_grid* g, size_t** pairs, size_t* count )
{
  if ( any_null( g, pairs, count ) )
    return null_argument();
  return guarded( [&] {
    auto const points = g->value.pareto_points();
    auto* out = static_cast<size_t*>( std::malloc( ( 2 * points.size() + 1 ) * sizeof( size_t ) ) );
    if ( !out )
      throw std::bad_alloc();
    for ( std::size_t i = 0; i < points.size(); ++i )
    {
      out[2 * i] = points[i].first;
      out[2 * i + 1] = points[i].second;
    }
    *pairs = out;
    *count = points.size();
  } );
}

void ps_sizes_free( size_t* pairs )
{
  std::free( pairs );
}

ps_status ps_grid_to_csv( const ps_grid* g, const char* formula_id, char** out )
{
  if ( any_null( g, formula_id, out ) )
    return null_argument();
  return guarded( [&] { *out = duplicate( grid_to_csv( g->value, formula_id ) ); } );
}

void ps_grid_free( ps_grid* g )
{
  delete g;
}

} // extern "C"
