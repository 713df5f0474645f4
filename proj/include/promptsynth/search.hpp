#pragma once

#include <promptsynth/formula.hpp>
#include <promptsynth/mealy.hpp>
#include <promptsynth/partition.hpp>
#include <promptsynth/synthesis.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace promptsynth
{

enum class point_status
{
  realizable,
  unrealizable_at_size,
  unknown,
};

std::string to_string( point_status s );

struct point_result
{
  point_status status = point_status::unknown;
  /// Colored machine; present iff realizable.
  std::optional<mealy_machine> machine;
};

/*! \brief Is rel(f) & psi_k realizable by an n-state machine?

  The color of `parts` becomes an extra output. Every machine found is
  checked against the colored specification and, stripped of its color,
  against f with bound 2k; a failed check throws.
*/
point_result realizable_at( formula const& f, std::size_t n, std::size_t k, prop_partition const& parts,
                            time_budget budget = std::nullopt );

/// Machines realizable_at has returned so far in this process, all of
/// which passed both checks.
std::size_t verified_machine_count();

enum class search_strategy
{
  /// k ascending, then n ascending: the first hit has the smallest k.
  min_k,
  /// Anti-diagonals n + k ascending, k ascending within each.
  diagonal,
};

struct search_config
{
  std::size_t n_max = 8;
  std::size_t k_max = 64;
  time_budget budget;
  search_strategy strategy = search_strategy::min_k;
};

enum class optimum_status
{
  found,
  unrealizable_within_bounds,
  unknown,
};

struct optimum_result
{
  optimum_status status = optimum_status::unknown;
  std::size_t k = 0;
  /// 2k, the bound the stripped machine realizes.
  std::size_t bound = 0;
  /// Size of the colored machine found.
  std::size_t n = 0;
  /// Color-stripped and minimized machine.
  std::optional<mealy_machine> machine;
  /// Whether some earlier point in the search order ran out of budget.
  bool skipped_unknown = false;
};

/// Searches the (n, k) box of `cfg` in the configured order and returns the
/// first realizable point.
optimum_result approximate_optimum( formula const& f, prop_partition const& parts, search_config const& cfg );

/// states * 2^size(f), saturating.
std::size_t k_prune_bound( std::size_t n, formula const& f );

struct grid_point
{
  std::size_t n = 0;
  std::size_t k = 0;
  point_status status = point_status::unknown;
  /// Status inferred from neighbours rather than solved.
  bool derived = false;
  double time_ms = 0;
  /// Colored machine for solved realizable points.
  std::optional<mealy_machine> machine;
  /// Where the machine was written, if anywhere.
  std::string machine_file;
};

struct grid_options
{
  time_budget budget;
  bool prune = false;
  unsigned workers = 1;
};

struct grid_result
{
  std::size_t n_min = 0, n_max = 0, k_min = 0, k_max = 0;
  /// Row-major over n, then k.
  std::vector<grid_point> points;

  grid_point const& at( std::size_t n, std::size_t k ) const;
  grid_point& at( std::size_t n, std::size_t k );
  /// No realizable point lies below-left of an unrealizable one.
  bool upward_closed() const;
  /// Realizable points whose left and lower neighbours are not realizable.
  std::vector<std::pair<std::size_t, std::size_t>> pareto_points() const;
};

/*! \brief Status of every point of [n_lo, n_hi] x [k_lo, k_hi].

  With pruning on, a point is derived realizable if a realizable point lies
  at smaller or equal (n, k), derived unrealizable if an unrealizable one lies
  at larger or equal (n, k), or if k exceeds k_prune_bound(n) and the point
  at that bound is unrealizable. Unknown points never feed derivations.
*/
grid_result explore_grid( formula const& f, prop_partition const& parts, std::pair<std::size_t, std::size_t> n_range,
                          std::pair<std::size_t, std::size_t> k_range, grid_options const& options = {} );

/// CSV with header `formula_id,n,k,status,time_ms,machine_file`.
std::string grid_to_csv( grid_result const& grid, std::string const& formula_id );

} // namespace promptsynth
