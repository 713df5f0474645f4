#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

namespace promptsynth::detail
{

using adjacency = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t npos = static_cast<std::size_t>( -1 );

struct scc_decomposition
{
  /// Component index per node; npos for nodes unreachable from the roots.
  std::vector<std::size_t> component;
  /// Whether each component contains a cycle (size > 1 or a self-loop).
  std::vector<bool> cyclic;
};

/// Iterative Tarjan restricted to the nodes reachable from `roots`.
scc_decomposition strongly_connected_components( adjacency const& graph, std::vector<std::size_t> const& roots );

/// Shortest path (as a node list including both ends) from `from` to a node
/// satisfying `is_target`, moving only through nodes satisfying `allowed`.
template<class Target, class Allowed>
std::optional<std::vector<std::size_t>> find_path( adjacency const& graph, std::size_t from, Target is_target,
                                                   Allowed allowed )
{
  std::vector<std::size_t> parent( graph.size(), npos );
  std::vector<bool> seen( graph.size(), false );
  auto unwind = [&]( std::size_t node ) {
    std::vector<std::size_t> reversed{ node };
    while ( reversed.back() != from )
      reversed.push_back( parent[reversed.back()] );
    return std::vector<std::size_t>( reversed.rbegin(), reversed.rend() );
  };
  if ( is_target( from ) )
    return std::vector<std::size_t>{ from };
  std::deque<std::size_t> queue{ from };
  seen[from] = true;
  while ( !queue.empty() )
  {
    auto const node = queue.front();
    queue.pop_front();
    for ( auto const succ : graph[node] )
    {
      if ( seen[succ] || !allowed( succ ) )
        continue;
      seen[succ] = true;
      parent[succ] = node;
      if ( is_target( succ ) )
        return unwind( succ );
      queue.push_back( succ );
    }
  }
  return std::nullopt;
}

/// Shortest cycle through `node` with at least one step; the returned list
/// starts and ends with `node`.
template<class Allowed>
std::optional<std::vector<std::size_t>> find_cycle( adjacency const& graph, std::size_t node, Allowed allowed )
{
  for ( auto const succ : graph[node] )
    if ( succ == node )
      return std::vector<std::size_t>{ node, node };
  std::vector<std::size_t> parent( graph.size(), npos );
  std::deque<std::size_t> queue;
  for ( auto const succ : graph[node] )
    if ( allowed( succ ) && parent[succ] == npos )
    {
      parent[succ] = node;
      queue.push_back( succ );
    }
  while ( !queue.empty() )
  {
    auto const current = queue.front();
    queue.pop_front();
    for ( auto const succ : graph[current] )
    {
      if ( succ == node )
      {
        std::vector<std::size_t> reversed{ node, current };
        while ( reversed.back() != node )
          reversed.push_back( parent[reversed.back()] );
        return std::vector<std::size_t>( reversed.rbegin(), reversed.rend() );
      }
      if ( parent[succ] != npos || !allowed( succ ) )
        continue;
      parent[succ] = current;
      queue.push_back( succ );
    }
  }
  return std::nullopt;
}

} // namespace promptsynth::detail
