#include <promptsynth/synthesis.hpp>

#include "graph.hpp"
#include "product.hpp"
#include "sat.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace promptsynth
{

std::vector<std::string> synthesized_outputs( buchi_automaton const& ucw, prop_partition const& parts )
{
  auto outputs = parts.outputs();
  if ( ucw.proposition_index( parts.color() ) != detail::npos )
    outputs.push_back( parts.color() );
  return outputs;
}

namespace
{

/* Guard split into a test on the input valuation and literals over outputs. */
struct split_guard
{
  input_index input_positive = 0;
  input_index input_negative = 0;
  std::vector<std::pair<std::size_t, bool>> output_literals; // (machine output, polarity)

  bool admits( input_index in ) const { return ( in & input_positive ) == input_positive && ( in & input_negative ) == 0; }
};

class encoder
{
public:
  encoder( buchi_automaton const& ucw, std::size_t n, prop_partition const& parts )
      : ucw_( ucw ), n_( n ), inputs_( parts.inputs() ), outputs_( synthesized_outputs( ucw, parts ) ),
        valuations_( std::size_t{ 1 } << inputs_.size() )
  {
    if ( n_ == 0 )
      throw error( "machine size must be at least 1" );
    if ( ucw_.mode() != branching_mode::universal_co_buchi )
      throw error( "bounded synthesis expects a universal co-Buchi automaton" );
    if ( inputs_.size() > max_machine_inputs )
      throw error( "too many inputs for explicit input expansion" );
    map_propositions();
    encode();
  }

  detail::cnf const& formula() const { return cnf_; }

  synthesis_result decode( std::vector<bool> const& model ) const
  {
    auto value = [&]( int var ) { return model[static_cast<std::size_t>( var )]; };
    mealy_machine m( inputs_, outputs_, n_, 0 );
    for ( std::size_t s = 0; s < n_; ++s )
      for ( input_index in = 0; in < valuations_; ++in )
      {
        std::size_t target = 0;
        while ( target < n_ && !value( successor( s, in, target ) ) )
          ++target;
        if ( target == n_ )
          throw internal_error( "solver model lacks a successor" );
        output_bits out = 0;
        for ( std::size_t o = 0; o < outputs_.size(); ++o )
          if ( output_used_[o] && value( output( s, in, o ) ) )
            out |= output_bits{ 1 } << o;
        m.set( s, in, target, out );
      }

    run_graph_annotation annotation;
    annotation.automaton_states = ucw_.state_count();
    annotation.machine_states = n_;
    annotation.reachable.resize( ucw_.state_count() * n_ );
    annotation.counter.assign( ucw_.state_count() * n_, 0 );
    for ( std::size_t q = 0; q < ucw_.state_count(); ++q )
      for ( std::size_t s = 0; s < n_; ++s )
      {
        auto const i = annotation.index( q, s );
        annotation.reachable[i] = value( reach( q, s ) );
        if ( counter_width( q ) == 0 )
          continue;
        for ( std::size_t b = 0; b < counter_width( q ); ++b )
          if ( value( counter_bit( q, s, b ) ) )
            annotation.counter[i] |= std::uint64_t{ 1 } << b;
      }

    synthesis_result result;
    result.status = synthesis_status::realizable;
    result.machine = std::move( m );
    result.annotation = std::move( annotation );
    return result;
  }

private:
  void map_propositions()
  {
    output_used_.assign( outputs_.size(), false );
    std::vector<std::pair<bool, std::size_t>> location; // (is input, position)
    for ( auto const& name : ucw_.propositions() )
    {
      auto in = std::find( inputs_.begin(), inputs_.end(), name );
      auto out = std::find( outputs_.begin(), outputs_.end(), name );
      if ( in != inputs_.end() )
        location.emplace_back( true, static_cast<std::size_t>( in - inputs_.begin() ) );
      else if ( out != outputs_.end() )
      {
        location.emplace_back( false, static_cast<std::size_t>( out - outputs_.begin() ) );
        output_used_[location.back().second] = true;
      }
      else
        throw error( "proposition mismatch: automaton proposition '" + name + "' is not in the partition" );
    }
    guards_.resize( ucw_.state_count() );
    for ( std::size_t q = 0; q < ucw_.state_count(); ++q )
      for ( auto const& t : ucw_.transitions( q ) )
      {
        split_guard g;
        for ( std::size_t i = 0; i < location.size(); ++i )
        {
          letter const bit = letter{ 1 } << i;
          bool const pos = t.condition.positive & bit;
          bool const neg = t.condition.negative & bit;
          if ( !pos && !neg )
            continue;
          auto const [is_input, where] = location[i];
          if ( is_input )
            ( pos ? g.input_positive : g.input_negative ) |= input_index{ 1 } << where;
          else
            g.output_literals.emplace_back( where, pos );
        }
        guards_[q].push_back( std::move( g ) );
      }
  }

  int successor( std::size_t s, input_index in, std::size_t target ) const
  {
    return successor_base_ + static_cast<int>( ( s * valuations_ + in ) * n_ + target );
  }
  int output( std::size_t s, input_index in, std::size_t o ) const
  {
    return output_base_ + static_cast<int>( ( s * valuations_ + in ) * outputs_.size() + o );
  }
  int reach( std::size_t q, std::size_t s ) const { return reach_base_ + static_cast<int>( q * n_ + s ); }
  std::size_t counter_width( std::size_t q ) const { return width_[scc_.component[q]]; }
  int counter_bit( std::size_t q, std::size_t s, std::size_t b ) const
  {
    return counter_base_[q * n_ + s] + static_cast<int>( b );
  }

  int allocate( std::size_t count )
  {
    int const first = cnf_.variables() + 1;
    for ( std::size_t i = 0; i < count; ++i )
      cnf_.new_variable();
    return first;
  }

  void encode()
  {
    std::size_t const states = ucw_.state_count();
    successor_base_ = allocate( n_ * valuations_ * n_ );
    output_base_ = allocate( n_ * valuations_ * outputs_.size() );
    reach_base_ = allocate( states * n_ );

    /* counters live in automaton components that hold a rejecting cycle */
    detail::adjacency graph( states );
    for ( std::size_t q = 0; q < states; ++q )
      for ( auto const& t : ucw_.transitions( q ) )
        graph[q].push_back( t.target );
    std::vector<std::size_t> all( states );
    for ( std::size_t q = 0; q < states; ++q )
      all[q] = q;
    scc_ = detail::strongly_connected_components( graph, all );
    std::size_t const components = scc_.cyclic.size();
    std::vector<std::size_t> rejecting_in( components, 0 );
    for ( std::size_t q = 0; q < states; ++q )
      if ( ucw_.marked( q ) )
        ++rejecting_in[scc_.component[q]];
    width_.assign( components, 0 );
    bound_.assign( components, 0 );
    for ( std::size_t c = 0; c < components; ++c )
      if ( scc_.cyclic[c] && rejecting_in[c] > 0 )
      {
        bound_[c] = n_ * rejecting_in[c];
        width_[c] = static_cast<std::size_t>( std::bit_width( bound_[c] ) );
      }
    counter_base_.assign( states * n_, 0 );
    for ( std::size_t q = 0; q < states; ++q )
      for ( std::size_t s = 0; s < n_; ++s )
        if ( counter_width( q ) > 0 )
          counter_base_[q * n_ + s] = allocate( counter_width( q ) );

    encode_machine();
    encode_initial();
    encode_counter_bounds();
    encode_transitions();
  }

  void encode_machine()
  {
    std::vector<int> clause;
    for ( std::size_t s = 0; s < n_; ++s )
      for ( input_index in = 0; in < valuations_; ++in )
      {
        clause.clear();
        for ( std::size_t t = 0; t < n_; ++t )
          clause.push_back( successor( s, in, t ) );
        cnf_.add( clause );
        for ( std::size_t t = 0; t < n_; ++t )
          for ( std::size_t u = t + 1; u < n_; ++u )
            cnf_.add( { -successor( s, in, t ), -successor( s, in, u ) } );
      }
  }

  void encode_initial()
  {
    auto const q0 = ucw_.initial();
    cnf_.add( { reach( q0, 0 ) } );
    for ( std::size_t b = 0; b < counter_width( q0 ); ++b )
      cnf_.add( { -counter_bit( q0, 0, b ) } );
    /* a rejecting state with an unconditional self-loop can never be visited */
    for ( std::size_t q = 0; q < ucw_.state_count(); ++q )
    {
      if ( !ucw_.marked( q ) )
        continue;
      for ( auto const& t : ucw_.transitions( q ) )
        if ( t.target == q && t.condition == guard{} )
        {
          for ( std::size_t s = 0; s < n_; ++s )
            cnf_.add( { -reach( q, s ) } );
          break;
        }
    }
  }

  /* value <= bound: for each zero bit of the bound, the counter may not have
     a one there while matching every higher one bit */
  void encode_counter_bounds()
  {
    std::vector<int> clause;
    for ( std::size_t q = 0; q < ucw_.state_count(); ++q )
    {
      auto const width = counter_width( q );
      auto const bound = bound_[scc_.component[q]];
      for ( std::size_t s = 0; s < n_ && width > 0; ++s )
        for ( std::size_t i = 0; i < width; ++i )
        {
          if ( bound >> i & 1 )
            continue;
          clause = { -counter_bit( q, s, i ) };
          for ( std::size_t j = i + 1; j < width; ++j )
            if ( bound >> j & 1 )
              clause.push_back( -counter_bit( q, s, j ) );
          cnf_.add( clause );
        }
    }
  }

  /* link -> counter(q', s') >= counter(q, s), strictly if q' is rejecting.
     Chain g_i: the low i+1 bits compare as required; g_{w-1} is the link. */
  void encode_comparison( int link, std::size_t q, std::size_t s, std::size_t q2, std::size_t s2 )
  {
    bool const strict = ucw_.marked( q2 );
    if ( q == q2 && s == s2 )
    {
      if ( strict )
        cnf_.add( { -link } );
      return;
    }
    auto const width = counter_width( q );
    int previous = 0; // 0 stands for the constant: true if !strict, false if strict
    for ( std::size_t i = 0; i < width; ++i )
    {
      int const g = i + 1 == width ? link : cnf_.new_variable();
      int const a = counter_bit( q2, s2, i );
      int const b = counter_bit( q, s, i );
      cnf_.add( { -g, a, -b } );
      if ( previous != 0 )
      {
        cnf_.add( { -g, a, previous } );
        cnf_.add( { -g, -b, previous } );
      }
      else if ( strict )
      {
        cnf_.add( { -g, a } );
        cnf_.add( { -g, -b } );
      }
      previous = g;
    }
  }

  int link( std::size_t q, std::size_t s, std::size_t q2, std::size_t s2 )
  {
    auto const states = ucw_.state_count();
    auto const key = ( ( q * n_ + s ) * states + q2 ) * n_ + s2;
    auto [it, inserted] = links_.emplace( key, 0 );
    if ( !inserted )
      return it->second;
    int const var = cnf_.new_variable();
    it->second = var;
    cnf_.add( { -var, reach( q2, s2 ) } );
    if ( counter_width( q ) > 0 && scc_.component[q] == scc_.component[q2] )
      encode_comparison( var, q, s, q2, s2 );
    return var;
  }

  void encode_transitions()
  {
    std::vector<int> clause;
    for ( std::size_t q = 0; q < ucw_.state_count(); ++q )
      for ( std::size_t s = 0; s < n_; ++s )
        for ( input_index in = 0; in < valuations_; ++in )
        {
          auto const& out = ucw_.transitions( q );
          for ( std::size_t e = 0; e < out.size(); ++e )
          {
            auto const& g = guards_[q][e];
            if ( !g.admits( in ) )
              continue;
            for ( std::size_t s2 = 0; s2 < n_; ++s2 )
            {
              clause = { -reach( q, s ), -successor( s, in, s2 ) };
              for ( auto const& [o, positive] : g.output_literals )
                clause.push_back( positive ? -output( s, in, o ) : output( s, in, o ) );
              clause.push_back( link( q, s, out[e].target, s2 ) );
              cnf_.add( clause );
            }
          }
        }
  }

  buchi_automaton const& ucw_;
  std::size_t n_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::size_t valuations_;
  std::vector<bool> output_used_;
  std::vector<std::vector<split_guard>> guards_;
  detail::scc_decomposition scc_;
  std::vector<std::size_t> width_;
  std::vector<std::size_t> bound_;
  std::vector<int> counter_base_;
  int successor_base_ = 0;
  int output_base_ = 0;
  int reach_base_ = 0;
  std::unordered_map<std::size_t, int> links_;
  detail::cnf cnf_;
};

} // namespace

synthesis_result bounded_synthesis( buchi_automaton const& ucw, std::size_t n, prop_partition const& parts,
                                    time_budget budget )
{
  encoder const enc( ucw, n, parts );
  std::optional<detail::clock::time_point> deadline;
  if ( budget )
    deadline = detail::clock::now() + *budget;
  auto const outcome = detail::solve( enc.formula(), deadline, detail::external_solver_from_environment() );

  synthesis_result result;
  if ( outcome.verdict == detail::sat_verdict::satisfiable )
  {
    result = enc.decode( outcome.model );
    if ( !check_run_graph( *result.machine, ucw ) )
      throw internal_error( "synthesized machine fails the run-graph check" );
  }
  else if ( outcome.verdict == detail::sat_verdict::unsatisfiable )
    result.status = synthesis_status::unrealizable_at_size;
  result.variables = static_cast<std::size_t>( enc.formula().variables() );
  result.clauses = enc.formula().clause_count();
  return result;
}

std::string bounded_synthesis_dimacs( buchi_automaton const& ucw, std::size_t n, prop_partition const& parts )
{
  encoder const enc( ucw, n, parts );
  std::ostringstream os;
  detail::write_dimacs( enc.formula(), os );
  return os.str();
}

bool check_run_graph( mealy_machine const& m, buchi_automaton const& ucw )
{
  auto const product = detail::build_product( m, ucw );
  auto const sccs = detail::strongly_connected_components( product.graph, { product.root } );
  for ( std::size_t node = 0; node < product.graph.size(); ++node )
  {
    auto const c = sccs.component[node];
    if ( c != detail::npos && sccs.cyclic[c] && ucw.marked( product.automaton_state( node ) ) )
      return false;
  }
  return true;
}

} // namespace promptsynth
