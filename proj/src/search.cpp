#include <promptsynth/search.hpp>

#include <promptsynth/automata.hpp>
#include <promptsynth/rewrite.hpp>
#include <promptsynth/verify.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace promptsynth
{

namespace
{

std::atomic<std::size_t> verified_machines{ 0 };

} // namespace

std::string to_string( point_status s )
{
  switch ( s )
  {
  case point_status::realizable:
    return "REALIZABLE";
  case point_status::unrealizable_at_size:
    return "UNREALIZABLE_AT_SIZE";
  case point_status::unknown:
    break;
  }
  return "UNKNOWN";
}

point_result realizable_at( formula const& f, std::size_t n, std::size_t k, prop_partition const& parts,
                            time_budget budget )
{
  if ( n == 0 || k == 0 )
    throw error( "realizable_at needs n >= 1 and k >= 1" );
  if ( k > std::numeric_limits<unsigned>::max() / 2 )
    throw error( "bound too large" );
  parts.check_covers( f );
  auto const spec =
      formula::conjunction( relativize( f, parts.color() ), boundedness_formula( static_cast<unsigned>( k ), parts.color() ) );
  auto const synthesis = bounded_synthesis( spec_to_ucw( spec ), n, parts, budget );

  point_result result;
  switch ( synthesis.status )
  {
  case synthesis_status::realizable:
    if ( !model_check_ltl( *synthesis.machine, spec ).holds )
      throw internal_error( "synthesized machine violates the colored specification" );
    if ( !model_check_prompt( strip_color( *synthesis.machine, parts.color() ), f, 2 * k ).holds )
      throw internal_error( "stripped machine does not realize the bound 2k" );
    ++verified_machines;
    result.status = point_status::realizable;
    result.machine = synthesis.machine;
    break;
  case synthesis_status::unrealizable_at_size:
    result.status = point_status::unrealizable_at_size;
    break;
  case synthesis_status::unknown:
    break;
  }
  return result;
}

std::size_t verified_machine_count()
{
  return verified_machines.load();
}

optimum_result approximate_optimum( formula const& f, prop_partition const& parts, search_config const& cfg )
{
  if ( cfg.n_max == 0 || cfg.k_max == 0 )
    throw error( "search bounds must be at least 1" );
  std::vector<std::pair<std::size_t, std::size_t>> order;
  if ( cfg.strategy == search_strategy::min_k )
  {
    for ( std::size_t k = 1; k <= cfg.k_max; ++k )
      for ( std::size_t n = 1; n <= cfg.n_max; ++n )
        order.emplace_back( n, k );
  }
  else
  {
    for ( std::size_t d = 2; d <= cfg.n_max + cfg.k_max; ++d )
      for ( std::size_t k = 1; k < d; ++k )
        if ( k <= cfg.k_max && d - k <= cfg.n_max )
          order.emplace_back( d - k, k );
  }

  optimum_result result;
  for ( auto const& [n, k] : order )
  {
    auto const point = realizable_at( f, n, k, parts, cfg.budget );
    if ( point.status == point_status::unknown )
      result.skipped_unknown = true;
    if ( point.status != point_status::realizable )
      continue;
    result.status = optimum_status::found;
    result.k = k;
    result.bound = 2 * k;
    result.n = n;
    result.machine = minimize( strip_color( *point.machine, parts.color() ) );
    return result;
  }
  result.status = result.skipped_unknown ? optimum_status::unknown : optimum_status::unrealizable_within_bounds;
  return result;
}

std::size_t k_prune_bound( std::size_t n, formula const& f )
{
  if ( n == 0 )
    throw error( "k_prune_bound needs n >= 1" );
  constexpr auto saturated = std::numeric_limits<std::size_t>::max();
  auto const exponent = size( f );
  if ( exponent >= std::numeric_limits<std::size_t>::digits )
    return saturated;
  auto const power = std::size_t{ 1 } << exponent;
  return n > saturated / power ? saturated : n * power;
}

grid_point const& grid_result::at( std::size_t n, std::size_t k ) const
{
  if ( n < n_min || n > n_max || k < k_min || k > k_max )
    throw error( "grid point out of range" );
  return points[( n - n_min ) * ( k_max - k_min + 1 ) + ( k - k_min )];
}

grid_point& grid_result::at( std::size_t n, std::size_t k )
{
  return const_cast<grid_point&>( std::as_const( *this ).at( n, k ) );
}

bool grid_result::upward_closed() const
{
  for ( auto const& a : points )
    for ( auto const& b : points )
      if ( a.status == point_status::realizable && b.status == point_status::unrealizable_at_size && b.n >= a.n &&
           b.k >= a.k )
        return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> grid_result::pareto_points() const
{
  std::vector<std::pair<std::size_t, std::size_t>> result;
  auto realizable = [&]( std::size_t n, std::size_t k ) { return at( n, k ).status == point_status::realizable; };
  for ( auto const& p : points )
    if ( p.status == point_status::realizable && ( p.n == n_min || !realizable( p.n - 1, p.k ) ) &&
         ( p.k == k_min || !realizable( p.n, p.k - 1 ) ) )
      result.emplace_back( p.n, p.k );
  return result;
}

grid_result explore_grid( formula const& f, prop_partition const& parts, std::pair<std::size_t, std::size_t> n_range,
                          std::pair<std::size_t, std::size_t> k_range, grid_options const& options )
{
  if ( n_range.first == 0 || k_range.first == 0 || n_range.first > n_range.second || k_range.first > k_range.second )
    throw error( "grid ranges must be nonempty and start at 1 or above" );
  parts.check_covers( f );

  grid_result grid;
  grid.n_min = n_range.first;
  grid.n_max = n_range.second;
  grid.k_min = k_range.first;
  grid.k_max = k_range.second;
  for ( std::size_t n = grid.n_min; n <= grid.n_max; ++n )
    for ( std::size_t k = grid.k_min; k <= grid.k_max; ++k )
    {
      grid_point p;
      p.n = n;
      p.k = k;
      grid.points.push_back( std::move( p ) );
    }

  /* anti-diagonal order, so small realizable points come early */
  std::vector<std::size_t> order( grid.points.size() );
  for ( std::size_t i = 0; i < order.size(); ++i )
    order[i] = i;
  std::stable_sort( order.begin(), order.end(), [&]( std::size_t a, std::size_t b ) {
    auto const& pa = grid.points[a];
    auto const& pb = grid.points[b];
    return std::make_pair( pa.n + pa.k, pa.k ) < std::make_pair( pb.n + pb.k, pb.k );
  } );

  std::vector<bool> settled( grid.points.size(), false );
  auto derive = [&]( grid_point& p ) {
    for ( std::size_t i = 0; i < grid.points.size(); ++i )
    {
      if ( !settled[i] )
        continue;
      auto const& q = grid.points[i];
      if ( q.status == point_status::realizable && q.n <= p.n && q.k <= p.k )
        p.status = point_status::realizable;
      else if ( q.status == point_status::unrealizable_at_size && q.n >= p.n && q.k >= p.k )
        p.status = point_status::unrealizable_at_size;
      else if ( q.status == point_status::unrealizable_at_size && q.n == p.n && p.k > k_prune_bound( p.n, f ) &&
                q.k == k_prune_bound( p.n, f ) )
        p.status = point_status::unrealizable_at_size;
      else
        continue;
      p.derived = true;
      return true;
    }
    return false;
  };

  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto work = [&] {
    for ( ;; )
    {
      std::size_t index = 0;
      {
        std::lock_guard lock( mutex );
        for ( ;; )
        {
          if ( next == order.size() || failure )
            return;
          index = order[next++];
          if ( options.prune && derive( grid.points[index] ) )
          {
            settled[index] = true;
            continue;
          }
          break;
        }
      }
      auto& p = grid.points[index];
      auto const start = std::chrono::steady_clock::now();
      point_result r;
      try
      {
        r = realizable_at( f, p.n, p.k, parts, options.budget );
      }
      catch ( ... )
      {
        std::lock_guard lock( mutex );
        failure = std::current_exception();
        return;
      }
      std::lock_guard lock( mutex );
      p.time_ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
      p.status = r.status;
      p.machine = std::move( r.machine );
      settled[index] = true;
    }
  };

  unsigned const workers = std::max( 1u, options.workers );
  if ( workers == 1 )
    work();
  else
  {
    std::vector<std::thread> pool;
    for ( unsigned w = 0; w < workers; ++w )
      pool.emplace_back( work );
    for ( auto& t : pool )
      t.join();
  }
  if ( failure )
    std::rethrow_exception( failure );
  return grid;
}

std::string grid_to_csv( grid_result const& grid, std::string const& formula_id )
{
  std::ostringstream os;
  os << "formula_id,n,k,status,time_ms,machine_file\n";
  for ( auto const& p : grid.points )
  {
    auto status = to_string( p.status );
    if ( p.derived )
      status += "_DERIVED";
    char time[32];
    std::snprintf( time, sizeof time, "%.1f", p.time_ms );
    os << formula_id << ',' << p.n << ',' << p.k << ',' << status << ',' << time << ',' << p.machine_file << '\n';
  }
  return os.str();
}

} // namespace promptsynth
