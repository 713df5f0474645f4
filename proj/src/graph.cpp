#include "graph.hpp"

#include <algorithm>

namespace promptsynth::detail
{

scc_decomposition strongly_connected_components( adjacency const& graph, std::vector<std::size_t> const& roots )
{
  std::size_t const n = graph.size();
  scc_decomposition result;
  result.component.assign( n, npos );

  std::vector<std::size_t> index( n, npos ), lowlink( n, 0 );
  std::vector<bool> on_stack( n, false );
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  struct frame
  {
    std::size_t node;
    std::size_t next_edge;
  };
  std::vector<frame> call_stack;

  for ( auto const root : roots )
  {
    if ( index[root] != npos )
      continue;
    call_stack.push_back( { root, 0 } );
    index[root] = lowlink[root] = counter++;
    stack.push_back( root );
    on_stack[root] = true;

    while ( !call_stack.empty() )
    {
      auto& top = call_stack.back();
      auto const v = top.node;
      if ( top.next_edge < graph[v].size() )
      {
        auto const w = graph[v][top.next_edge++];
        if ( index[w] == npos )
        {
          index[w] = lowlink[w] = counter++;
          stack.push_back( w );
          on_stack[w] = true;
          call_stack.push_back( { w, 0 } );
        }
        else if ( on_stack[w] )
          lowlink[v] = std::min( lowlink[v], index[w] );
        continue;
      }

      if ( lowlink[v] == index[v] )
      {
        auto const id = result.cyclic.size();
        std::size_t members = 0;
        bool self_loop = false;
        for ( ;; )
        {
          auto const w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = id;
          ++members;
          if ( w == v )
            break;
        }
        for ( auto const w : graph[v] )
          self_loop = self_loop || w == v;
        result.cyclic.push_back( members > 1 || self_loop );
      }
      call_stack.pop_back();
      if ( !call_stack.empty() )
      {
        auto const parent = call_stack.back().node;
        lowlink[parent] = std::min( lowlink[parent], lowlink[v] );
      }
    }
  }
  return result;
}

} // namespace promptsynth::detail
