#include <promptsynth/automata.hpp>

#include "graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace promptsynth
{

buchi_automaton::buchi_automaton( std::vector<std::string> propositions, std::size_t initial,
                                  std::vector<std::vector<transition>> transitions, std::vector<bool> marked,
                                  branching_mode mode )
    : propositions_( std::move( propositions ) ), initial_( initial ), transitions_( std::move( transitions ) ),
      marked_( std::move( marked ) ), mode_( mode )
{
  if ( propositions_.size() > max_propositions )
    throw error( "automaton ranges over more than 64 propositions" );
  if ( transitions_.empty() || initial_ >= transitions_.size() )
    throw error( "automaton initial state out of range" );
  if ( marked_.size() != transitions_.size() )
    throw error( "automaton acceptance vector does not match the state count" );
  letter const declared = propositions_.size() == 64 ? ~letter{ 0 } : ( letter{ 1 } << propositions_.size() ) - 1;
  for ( auto const& out : transitions_ )
    for ( auto const& t : out )
    {
      if ( t.target >= transitions_.size() )
        throw error( "automaton transition target out of range" );
      if ( ( ( t.condition.positive | t.condition.negative ) & ~declared ) != 0 )
        throw error( "guard references an undeclared proposition" );
    }
}

std::size_t buchi_automaton::transition_count() const
{
  std::size_t count = 0;
  for ( auto const& out : transitions_ )
    count += out.size();
  return count;
}

buchi_automaton buchi_automaton::with_mode( branching_mode mode ) const
{
  auto copy = *this;
  copy.mode_ = mode;
  return copy;
}

std::size_t buchi_automaton::proposition_index( std::string const& name ) const
{
  auto it = std::find( propositions_.begin(), propositions_.end(), name );
  return it == propositions_.end() ? detail::npos : static_cast<std::size_t>( it - propositions_.begin() );
}

letter buchi_automaton::encode( valuation const& v ) const
{
  letter l = 0;
  for ( std::size_t i = 0; i < propositions_.size(); ++i )
    if ( v.count( propositions_[i] ) )
      l |= letter{ 1 } << i;
  return l;
}

std::string buchi_automaton::guard_to_string( guard const& g ) const
{
  std::string s;
  for ( std::size_t i = 0; i < propositions_.size(); ++i )
  {
    letter const bit = letter{ 1 } << i;
    if ( !( ( g.positive | g.negative ) & bit ) )
      continue;
    if ( !s.empty() )
      s += " & ";
    if ( g.negative & bit )
      s += '!';
    s += propositions_[i];
  }
  return s.empty() ? "true" : s;
}

std::string buchi_automaton::to_json() const
{
  nlohmann::json j;
  j["propositions"] = propositions_;
  j["states"] = state_count();
  j["initial"] = initial_;
  j["mode"] = mode_ == branching_mode::nondeterministic_buchi ? "nondeterministic-buchi" : "universal-co-buchi";
  std::vector<std::size_t> marked;
  for ( std::size_t s = 0; s < state_count(); ++s )
    if ( marked_[s] )
      marked.push_back( s );
  j[mode_ == branching_mode::nondeterministic_buchi ? "accepting" : "rejecting"] = marked;
  auto edges = nlohmann::json::array();
  for ( std::size_t s = 0; s < state_count(); ++s )
    for ( auto const& t : transitions_[s] )
      edges.push_back( { { "from", s }, { "to", t.target }, { "guard", guard_to_string( t.condition ) } } );
  j["edges"] = edges;
  return j.dump( 2 );
}

namespace
{

using obligation_set = std::vector<formula>; // sorted, duplicate-free

/* One way of satisfying a set of obligations at the current position. */
struct branch
{
  guard cube;
  std::set<formula> next;
  std::set<std::size_t> pending; // untils postponed on this step
};

class tableau
{
public:
  explicit tableau( formula const& f ) : root_( f )
  {
    auto const props = propositions( f );
    propositions_.assign( props.begin(), props.end() );
    if ( propositions_.size() > max_propositions )
      throw error( "formula ranges over more than 64 propositions" );
  }

  buchi_automaton build()
  {
    explore();
    return degeneralize();
  }

private:
  letter bit_of( std::string const& name ) const
  {
    auto it = std::lower_bound( propositions_.begin(), propositions_.end(), name );
    return letter{ 1 } << static_cast<std::size_t>( it - propositions_.begin() );
  }

  std::size_t until_id( formula const& u )
  {
    auto [it, inserted] = until_ids_.emplace( u, until_ids_.size() );
    return it->second;
  }

  void expand( std::vector<formula> todo, branch b, std::set<formula> processed, std::vector<branch>& out )
  {
    while ( !todo.empty() )
    {
      auto f = std::move( todo.back() );
      todo.pop_back();
      if ( !processed.insert( f ).second )
        continue;
      switch ( f.kind() )
      {
      case node_kind::constant_true:
        break;
      case node_kind::constant_false:
        return;
      case node_kind::atom:
      case node_kind::negated_atom:
      {
        auto const bit = bit_of( f.name() );
        bool const positive = f.kind() == node_kind::atom;
        if ( ( positive ? b.cube.negative : b.cube.positive ) & bit )
          return;
        ( positive ? b.cube.positive : b.cube.negative ) |= bit;
        break;
      }
      case node_kind::conjunction:
        todo.push_back( f.rhs() );
        todo.push_back( f.lhs() );
        break;
      case node_kind::disjunction:
      {
        auto left = todo;
        left.push_back( f.lhs() );
        expand( std::move( left ), b, processed, out );
        todo.push_back( f.rhs() );
        break;
      }
      case node_kind::next:
        b.next.insert( f.lhs() );
        break;
      case node_kind::until:
      {
        /* a U b = b | (a & X(a U b)) */
        auto const id = until_id( f );
        auto now = todo;
        now.push_back( f.rhs() );
        expand( std::move( now ), b, processed, out );
        todo.push_back( f.lhs() );
        b.next.insert( f );
        b.pending.insert( id );
        break;
      }
      case node_kind::release:
      {
        /* a R b = (a & b) | (b & X(a R b)) */
        auto now = todo;
        now.push_back( f.rhs() );
        now.push_back( f.lhs() );
        expand( std::move( now ), b, processed, out );
        todo.push_back( f.rhs() );
        b.next.insert( f );
        break;
      }
      case node_kind::prompt_eventually:
        throw error( "prompt-eventually cannot be translated to a Buchi automaton" );
      }
    }
    out.push_back( std::move( b ) );
  }

  static bool subset( std::set<formula> const& a, std::set<formula> const& b )
  {
    return std::includes( b.begin(), b.end(), a.begin(), a.end() );
  }

  static bool subset( std::set<std::size_t> const& a, std::set<std::size_t> const& b )
  {
    return std::includes( b.begin(), b.end(), a.begin(), a.end() );
  }

  /* Drops branches that another branch makes redundant: a weaker guard,
     fewer obligations and fewer postponed untils. */
  static std::vector<branch> prune( std::vector<branch> branches )
  {
    std::vector<bool> redundant_at( branches.size(), false );
    for ( std::size_t i = 0; i < branches.size(); ++i )
    {
      bool redundant = false;
      for ( std::size_t j = 0; j < branches.size() && !redundant; ++j )
      {
        if ( i == j )
          continue;
        auto const& a = branches[j];
        auto const& b = branches[i];
        bool const dominates = b.cube.implies( a.cube ) && subset( a.next, b.next ) && subset( a.pending, b.pending );
        if ( !dominates )
          continue;
        bool const equal = a.cube == b.cube && a.next == b.next && a.pending == b.pending;
        redundant = !equal || j < i;
      }
      redundant_at[i] = redundant;
    }
    std::vector<branch> kept;
    for ( std::size_t i = 0; i < branches.size(); ++i )
      if ( !redundant_at[i] )
        kept.push_back( std::move( branches[i] ) );
    return kept;
  }

  std::size_t state_of( obligation_set const& key )
  {
    auto [it, inserted] = state_ids_.emplace( key, states_.size() );
    if ( inserted )
      states_.push_back( key );
    return it->second;
  }

  void explore()
  {
    state_of( { root_ } );
    for ( std::size_t s = 0; s < states_.size(); ++s )
    {
      std::vector<branch> branches;
      auto const todo = std::vector<formula>( states_[s].rbegin(), states_[s].rend() );
      expand( todo, branch{}, {}, branches );
      std::vector<generalized_edge> edges;
      for ( auto& b : prune( std::move( branches ) ) )
      {
        auto const target = state_of( obligation_set( b.next.begin(), b.next.end() ) );
        edges.push_back( { target, b.cube, std::move( b.pending ) } );
      }
      edges_.push_back( std::move( edges ) );
    }
  }

  /* Counter construction: a copy of each state per acceptance level; a level
     advances past every until that the taken edge does not postpone. */
  buchi_automaton degeneralize() const
  {
    std::size_t const levels = until_ids_.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::size_t>> states;
    std::vector<std::vector<transition>> transitions;
    auto id_of = [&]( std::size_t state, std::size_t level ) {
      auto [it, inserted] = ids.emplace( std::make_pair( state, level ), states.size() );
      if ( inserted )
      {
        states.emplace_back( state, level );
        transitions.emplace_back();
      }
      return it->second;
    };
    id_of( 0, 0 );
    for ( std::size_t i = 0; i < states.size(); ++i )
    {
      auto const [state, level] = states[i];
      std::size_t const start = level == levels ? 0 : level;
      for ( auto const& e : edges_[state] )
      {
        std::size_t next_level = start;
        while ( next_level < levels && !e.pending.count( next_level ) )
          ++next_level;
        auto const target = id_of( e.target, next_level );
        transitions[i].push_back( { target, e.cube } );
      }
    }
    std::vector<bool> accepting( states.size() );
    for ( std::size_t i = 0; i < states.size(); ++i )
      accepting[i] = states[i].second == levels;
    return buchi_automaton( propositions_, 0, std::move( transitions ), std::move( accepting ) );
  }

  struct generalized_edge
  {
    std::size_t target;
    guard cube;
    std::set<std::size_t> pending;
  };

  formula root_;
  std::vector<std::string> propositions_;
  std::map<formula, std::size_t> until_ids_;
  std::map<obligation_set, std::size_t> state_ids_;
  std::vector<obligation_set> states_;
  std::vector<std::vector<generalized_edge>> edges_;
};

detail::adjacency successor_graph( std::vector<std::vector<transition>> const& transitions )
{
  detail::adjacency graph( transitions.size() );
  for ( std::size_t s = 0; s < transitions.size(); ++s )
    for ( auto const& t : transitions[s] )
      graph[s].push_back( t.target );
  return graph;
}

/* Keeps the states reachable from the initial state that can also reach an
   accepting cycle. */
buchi_automaton trim( buchi_automaton const& a )
{
  std::size_t const n = a.state_count();
  std::vector<std::vector<transition>> transitions( n );
  for ( std::size_t s = 0; s < n; ++s )
    transitions[s] = a.transitions( s );
  auto const graph = successor_graph( transitions );
  auto const sccs = detail::strongly_connected_components( graph, { a.initial() } );

  std::vector<bool> useful( n, false );
  detail::adjacency reverse( n );
  for ( std::size_t s = 0; s < n; ++s )
  {
    if ( sccs.component[s] == detail::npos )
      continue;
    for ( auto const t : graph[s] )
      reverse[t].push_back( s );
    if ( a.marked( s ) && sccs.cyclic[sccs.component[s]] )
      useful[s] = true;
  }
  std::deque<std::size_t> queue;
  for ( std::size_t s = 0; s < n; ++s )
    if ( useful[s] )
      queue.push_back( s );
  while ( !queue.empty() )
  {
    auto const s = queue.front();
    queue.pop_front();
    for ( auto const p : reverse[s] )
      if ( !useful[p] )
      {
        useful[p] = true;
        queue.push_back( p );
      }
  }

  if ( !useful[a.initial()] )
    return buchi_automaton( a.propositions(), 0, { {} }, { false }, a.mode() );

  std::vector<std::size_t> renumber( n, detail::npos );
  std::vector<std::size_t> order;
  renumber[a.initial()] = 0;
  order.push_back( a.initial() );
  for ( std::size_t i = 0; i < order.size(); ++i )
    for ( auto const& t : transitions[order[i]] )
      if ( useful[t.target] && renumber[t.target] == detail::npos )
      {
        renumber[t.target] = order.size();
        order.push_back( t.target );
      }

  std::vector<std::vector<transition>> kept( order.size() );
  std::vector<bool> marked( order.size() );
  for ( std::size_t i = 0; i < order.size(); ++i )
  {
    marked[i] = a.marked( order[i] );
    for ( auto const& t : transitions[order[i]] )
      if ( useful[t.target] )
        kept[i].push_back( { renumber[t.target], t.condition } );
  }
  return buchi_automaton( a.propositions(), 0, std::move( kept ), std::move( marked ), a.mode() );
}

/* Removes duplicate and subsumed edges to the same target and merges pairs
   of cubes that differ in the polarity of a single literal. */
std::vector<transition> simplify_edges( std::vector<transition> edges )
{
  for ( bool changed = true; changed; )
  {
    changed = false;
    std::sort( edges.begin(), edges.end() );
    edges.erase( std::unique( edges.begin(), edges.end() ), edges.end() );
    for ( std::size_t i = 0; i < edges.size() && !changed; ++i )
      for ( std::size_t j = 0; j < edges.size() && !changed; ++j )
      {
        if ( i == j || edges[i].target != edges[j].target )
          continue;
        auto const& a = edges[i].condition;
        auto const& b = edges[j].condition;
        if ( a.implies( b ) )
        {
          edges.erase( edges.begin() + static_cast<std::ptrdiff_t>( i ) );
          changed = true;
          break;
        }
        letter const flipped = ( a.positive ^ b.positive );
        bool const one_flip = flipped != 0 && ( flipped & ( flipped - 1 ) ) == 0 &&
                              ( a.negative ^ b.negative ) == flipped &&
                              ( ( a.positive | a.negative ) == ( b.positive | b.negative ) );
        if ( one_flip )
        {
          guard merged{ a.positive & ~flipped, a.negative & ~flipped };
          auto const target = edges[i].target;
          edges.erase( edges.begin() + static_cast<std::ptrdiff_t>( std::max( i, j ) ) );
          edges.erase( edges.begin() + static_cast<std::ptrdiff_t>( std::min( i, j ) ) );
          edges.push_back( { target, merged } );
          changed = true;
        }
      }
  }
  return edges;
}

/* Quotient by the coarsest bisimulation that respects the acceptance
   marking; runs map in both directions, so the language is unchanged. */
buchi_automaton merge_bisimilar( buchi_automaton const& a )
{
  std::size_t const n = a.state_count();
  std::vector<std::size_t> block( n );
  for ( std::size_t s = 0; s < n; ++s )
    block[s] = a.marked( s ) ? 1 : 0;

  for ( ;; )
  {
    using signature = std::pair<std::size_t, std::vector<std::pair<guard, std::size_t>>>;
    std::map<signature, std::size_t> ids;
    std::vector<std::size_t> next_block( n );
    for ( std::size_t s = 0; s < n; ++s )
    {
      signature sig{ block[s], {} };
      for ( auto const& t : a.transitions( s ) )
        sig.second.emplace_back( t.condition, block[t.target] );
      std::sort( sig.second.begin(), sig.second.end() );
      sig.second.erase( std::unique( sig.second.begin(), sig.second.end() ), sig.second.end() );
      next_block[s] = ids.emplace( std::move( sig ), ids.size() ).first->second;
    }
    bool const stable = ids.size() == std::set<std::size_t>( block.begin(), block.end() ).size();
    block = std::move( next_block );
    if ( stable )
      break;
  }

  /* number blocks in order of first appearance */
  std::vector<std::size_t> renumber( n, detail::npos );
  std::size_t blocks = 0;
  std::vector<std::size_t> representative;
  for ( std::size_t s = 0; s < n; ++s )
    if ( renumber[block[s]] == detail::npos )
    {
      renumber[block[s]] = blocks++;
      representative.push_back( s );
    }
  std::vector<std::vector<transition>> transitions( blocks );
  std::vector<bool> marked( blocks );
  for ( std::size_t b = 0; b < blocks; ++b )
  {
    auto const s = representative[b];
    marked[b] = a.marked( s );
    for ( auto const& t : a.transitions( s ) )
      transitions[b].push_back( { renumber[block[t.target]], t.condition } );
    transitions[b] = simplify_edges( std::move( transitions[b] ) );
  }
  return buchi_automaton( a.propositions(), renumber[block[a.initial()]], std::move( transitions ),
                          std::move( marked ), a.mode() );
}

/* Product of an automaton with the lasso positions; node = state * positions + position. */
bool has_marked_cycle_on( buchi_automaton const& a, lasso const& w )
{
  std::size_t const positions = w.positions();
  std::vector<letter> letters( positions );
  for ( std::size_t i = 0; i < positions; ++i )
    letters[i] = a.encode( w.at( i ) );
  detail::adjacency graph( a.state_count() * positions );
  for ( std::size_t s = 0; s < a.state_count(); ++s )
    for ( std::size_t i = 0; i < positions; ++i )
      for ( auto const& t : a.transitions( s ) )
        if ( t.condition.satisfied_by( letters[i] ) )
          graph[s * positions + i].push_back( t.target * positions + w.successor( i ) );
  auto const sccs = detail::strongly_connected_components( graph, { a.initial() * positions } );
  for ( std::size_t node = 0; node < graph.size(); ++node )
  {
    auto const c = sccs.component[node];
    if ( c != detail::npos && sccs.cyclic[c] && a.marked( node / positions ) )
      return true;
  }
  return false;
}

} // namespace

buchi_automaton ltl_to_nba( formula const& f )
{
  if ( f.has_prompt() )
    throw error( "prompt-eventually cannot be translated to a Buchi automaton" );
  auto const raw = tableau( f ).build();
  auto result = trim( merge_bisimilar( trim( raw ) ) );
  /* merging can expose new redundant edges; a second pass settles it */
  return trim( merge_bisimilar( result ) );
}

buchi_automaton spec_to_ucw( formula const& f )
{
  if ( f.has_prompt() )
    throw error( "prompt-eventually cannot be translated to a Buchi automaton" );
  return ltl_to_nba( negate( f ) ).with_mode( branching_mode::universal_co_buchi );
}

bool lasso_membership( buchi_automaton const& a, lasso const& w )
{
  if ( a.mode() != branching_mode::nondeterministic_buchi )
    throw error( "lasso membership expects a nondeterministic Buchi automaton" );
  return has_marked_cycle_on( a, w );
}

bool ucw_accepts( buchi_automaton const& a, lasso const& w )
{
  if ( a.mode() != branching_mode::universal_co_buchi )
    throw error( "expected a universal co-Buchi automaton" );
  return !has_marked_cycle_on( a, w );
}

} // namespace promptsynth
