#include <promptsynth/mealy.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace promptsynth
{

namespace
{

void check_names( std::vector<std::string> const& inputs, std::vector<std::string> const& outputs )
{
  std::set<std::string> seen;
  for ( auto const* list : { &inputs, &outputs } )
    for ( auto const& name : *list )
    {
      if ( name.empty() )
        throw error( "machine proposition names must be nonempty" );
      if ( !seen.insert( name ).second )
        throw error( "machine proposition '" + name + "' declared twice" );
    }
  if ( inputs.size() > max_machine_inputs )
    throw error( "machine has more than 16 inputs" );
  if ( outputs.size() > 64 )
    throw error( "machine has more than 64 outputs" );
}

std::string set_label( valuation const& v )
{
  std::string s = "{";
  for ( auto const& name : v )
    s += ( s.size() > 1 ? "," : "" ) + name;
  return s + "}";
}

} // namespace

mealy_machine::mealy_machine( std::vector<std::string> inputs, std::vector<std::string> outputs, std::size_t states,
                              std::size_t initial )
    : inputs_( std::move( inputs ) ), outputs_( std::move( outputs ) ), states_( states ), initial_( initial )
{
  check_names( inputs_, outputs_ );
  if ( states_ == 0 )
    throw error( "machine needs at least one state" );
  if ( initial_ >= states_ )
    throw error( "machine initial state out of range" );
  next_.assign( states_ * input_valuations(), 0 );
  output_.assign( states_ * input_valuations(), 0 );
}

void mealy_machine::set( std::size_t state, input_index in, std::size_t target, output_bits out )
{
  if ( state >= states_ || target >= states_ )
    throw error( "machine state out of range" );
  if ( in >= input_valuations() )
    throw error( "machine input valuation out of range" );
  if ( outputs_.size() < 64 && ( out >> outputs_.size() ) != 0 )
    throw error( "machine output refers to an undeclared proposition" );
  next_[slot( state, in )] = target;
  output_[slot( state, in )] = out;
}

input_index mealy_machine::encode_input( valuation const& v ) const
{
  input_index in = 0;
  for ( std::size_t i = 0; i < inputs_.size(); ++i )
    if ( v.count( inputs_[i] ) )
      in |= input_index{ 1 } << i;
  return in;
}

valuation mealy_machine::decode_input( input_index in ) const
{
  valuation v;
  for ( std::size_t i = 0; i < inputs_.size(); ++i )
    if ( in >> i & 1 )
      v.insert( inputs_[i] );
  return v;
}

valuation mealy_machine::decode_output( output_bits out ) const
{
  valuation v;
  for ( std::size_t i = 0; i < outputs_.size(); ++i )
    if ( out >> i & 1 )
      v.insert( outputs_[i] );
  return v;
}

std::ptrdiff_t mealy_machine::input_position( std::string const& name ) const
{
  auto it = std::find( inputs_.begin(), inputs_.end(), name );
  return it == inputs_.end() ? -1 : it - inputs_.begin();
}

std::ptrdiff_t mealy_machine::output_position( std::string const& name ) const
{
  auto it = std::find( outputs_.begin(), outputs_.end(), name );
  return it == outputs_.end() ? -1 : it - outputs_.begin();
}

mealy_machine minimize( mealy_machine const& m )
{
  std::size_t const columns = m.input_valuations();
  std::vector<std::size_t> block( m.state_count(), 0 );
  for ( std::size_t blocks = 0;; )
  {
    std::map<std::vector<std::uint64_t>, std::size_t> ids;
    std::vector<std::size_t> refined( m.state_count() );
    for ( std::size_t s = 0; s < m.state_count(); ++s )
    {
      std::vector<std::uint64_t> signature{ block[s] };
      for ( input_index in = 0; in < columns; ++in )
      {
        signature.push_back( m.output( s, in ) );
        signature.push_back( block[m.next( s, in )] );
      }
      refined[s] = ids.emplace( std::move( signature ), ids.size() ).first->second;
    }
    block = std::move( refined );
    if ( ids.size() == blocks )
      break;
    blocks = ids.size();
  }

  std::vector<std::size_t> representative{ m.initial() };
  std::map<std::size_t, std::size_t> block_number{ { block[m.initial()], 0 } };
  for ( std::size_t i = 0; i < representative.size(); ++i )
    for ( input_index in = 0; in < columns; ++in )
    {
      auto const target = m.next( representative[i], in );
      if ( block_number.emplace( block[target], representative.size() ).second )
        representative.push_back( target );
    }
  mealy_machine result( m.inputs(), m.outputs(), representative.size() );
  for ( std::size_t i = 0; i < representative.size(); ++i )
    for ( input_index in = 0; in < columns; ++in )
      result.set( i, in, block_number.at( block[m.next( representative[i], in )] ), m.output( representative[i], in ) );
  return result;
}

mealy_machine machine_from_json( std::string const& text )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw error( std::string( "malformed machine JSON: " ) + e.what() );
  }
  try
  {
    auto const inputs = j.at( "inputs" ).get<std::vector<std::string>>();
    auto const outputs = j.at( "outputs" ).get<std::vector<std::string>>();
    auto const states = j.at( "states" ).get<std::size_t>();
    auto const initial = j.value( "initial", std::size_t{ 0 } );
    mealy_machine m( inputs, outputs, states, initial );

    auto name_set = [&]( nlohmann::json const& list, bool input_side ) {
      std::uint64_t bits = 0;
      for ( auto const& entry : list )
      {
        auto const name = entry.get<std::string>();
        auto const pos = input_side ? m.input_position( name ) : m.output_position( name );
        if ( pos < 0 )
          throw error( "machine transition mentions undeclared " + std::string( input_side ? "input" : "output" ) +
                       " '" + name + "'" );
        if ( bits >> pos & 1 )
          throw error( "machine transition lists '" + name + "' twice" );
        bits |= std::uint64_t{ 1 } << pos;
      }
      return bits;
    };

    std::vector<bool> explicit_entry( states * m.input_valuations(), false );
    std::vector<bool> has_wildcard( states, false );
    std::vector<std::pair<std::size_t, output_bits>> wildcard( states );
    for ( auto const& t : j.at( "transitions" ) )
    {
      auto const from = t.at( "from" ).get<std::size_t>();
      auto const to = t.at( "to" ).get<std::size_t>();
      if ( from >= states || to >= states )
        throw error( "machine transition state out of range" );
      auto const out = name_set( t.at( "output" ), false );
      auto const& in = t.at( "input" );
      if ( in.is_string() )
      {
        if ( in.get<std::string>() != "*" )
          throw error( "machine transition input must be a list or \"*\"" );
        if ( has_wildcard[from] )
          throw error( "state " + std::to_string( from ) + " has two wildcard transitions" );
        has_wildcard[from] = true;
        wildcard[from] = { to, out };
        continue;
      }
      auto const index = static_cast<input_index>( name_set( in, true ) );
      auto const key = from * m.input_valuations() + index;
      if ( explicit_entry[key] )
        throw error( "state " + std::to_string( from ) + " has two transitions for input " +
                     set_label( m.decode_input( index ) ) );
      explicit_entry[key] = true;
      m.set( from, index, to, out );
    }
    for ( std::size_t s = 0; s < states; ++s )
      for ( input_index in = 0; in < m.input_valuations(); ++in )
      {
        if ( explicit_entry[s * m.input_valuations() + in] )
          continue;
        if ( !has_wildcard[s] )
          throw error( "machine is not total: state " + std::to_string( s ) + " lacks input " +
                       set_label( m.decode_input( in ) ) );
        m.set( s, in, wildcard[s].first, wildcard[s].second );
      }
    return m;
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw error( std::string( "malformed machine JSON: " ) + e.what() );
  }
}

std::string machine_to_json( mealy_machine const& m )
{
  nlohmann::ordered_json j;
  j["inputs"] = m.inputs();
  j["outputs"] = m.outputs();
  j["states"] = m.state_count();
  j["initial"] = m.initial();
  auto transitions = nlohmann::ordered_json::array();
  auto names = []( valuation const& v ) { return std::vector<std::string>( v.begin(), v.end() ); };
  for ( std::size_t s = 0; s < m.state_count(); ++s )
  {
    bool uniform = true;
    for ( input_index in = 1; in < m.input_valuations() && uniform; ++in )
      uniform = m.next( s, in ) == m.next( s, 0 ) && m.output( s, in ) == m.output( s, 0 );
    for ( input_index in = 0; in < m.input_valuations(); ++in )
    {
      nlohmann::ordered_json t;
      t["from"] = s;
      if ( uniform )
        t["input"] = "*";
      else
        t["input"] = names( m.decode_input( in ) );
      t["to"] = m.next( s, in );
      t["output"] = names( m.decode_output( m.output( s, in ) ) );
      transitions.push_back( std::move( t ) );
      if ( uniform )
        break;
    }
  }
  j["transitions"] = std::move( transitions );
  return j.dump( 2 ) + "\n";
}

std::string machine_to_dot( mealy_machine const& m )
{
  std::ostringstream os;
  os << "digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> s" << m.initial() << ";\n";
  for ( std::size_t s = 0; s < m.state_count(); ++s )
  {
    os << "  s" << s << " [label=\"" << s << "\"];\n";
    /* group input valuations that lead to the same target with the same output */
    std::map<std::pair<std::size_t, output_bits>, std::vector<input_index>> groups;
    for ( input_index in = 0; in < m.input_valuations(); ++in )
      groups[{ m.next( s, in ), m.output( s, in ) }].push_back( in );
    for ( auto const& [key, ins] : groups )
    {
      std::string input_label;
      if ( ins.size() == m.input_valuations() )
        input_label = "*";
      else
        for ( auto const in : ins )
          input_label += ( input_label.empty() ? "" : " ") + set_label( m.decode_input( in ) );
      os << "  s" << s << " -> s" << key.first << " [label=\"" << input_label << " / "
         << set_label( m.decode_output( key.second ) ) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

mealy_machine load_machine( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw error( "cannot read machine file '" + path + "'" );
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return machine_from_json( buffer.str() );
}

void save_machine( mealy_machine const& m, std::string const& path )
{
  std::ofstream out( path );
  if ( !out )
    throw error( "cannot write machine file '" + path + "'" );
  out << machine_to_json( m );
}

lasso induced_play( mealy_machine const& m, lasso const& inputs )
{
  auto step = [&]( std::size_t& state, valuation const& in, std::vector<valuation>& into ) {
    auto const index = m.encode_input( in );
    valuation position = m.decode_input( index );
    position.merge( m.decode_output( m.output( state, index ) ) );
    into.push_back( std::move( position ) );
    state = m.next( state, index );
  };

  std::vector<valuation> prefix;
  std::size_t state = m.initial();
  for ( auto const& v : inputs.prefix )
    step( state, v, prefix );

  /* unroll the loop until the machine state at its start repeats */
  std::map<std::size_t, std::size_t> first_round;
  std::vector<valuation> rounds;
  while ( !first_round.count( state ) )
  {
    first_round[state] = rounds.size();
    for ( auto const& v : inputs.loop )
      step( state, v, rounds );
  }
  auto const loop_start = static_cast<std::ptrdiff_t>( first_round[state] );
  prefix.insert( prefix.end(), rounds.begin(), rounds.begin() + loop_start );
  return lasso( std::move( prefix ), std::vector<valuation>( rounds.begin() + loop_start, rounds.end() ) );
}

} // namespace promptsynth
