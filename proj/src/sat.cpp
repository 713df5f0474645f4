#include "sat.hpp"

#include <promptsynth/formula.hpp>

#include <cadical.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace promptsynth::detail
{

void write_dimacs( cnf const& formula, std::ostream& os )
{
  os << "p cnf " << formula.variables() << ' ' << formula.clause_count() << '\n';
  bool line_start = true;
  for ( auto const lit : formula.literals() )
  {
    if ( !line_start )
      os << ' ';
    os << lit;
    line_start = lit == 0;
    if ( line_start )
      os << '\n';
  }
}

namespace
{

class deadline_terminator : public CaDiCaL::Terminator
{
public:
  explicit deadline_terminator( clock::time_point deadline ) : deadline_( deadline ) {}
  bool terminate() override { return clock::now() >= deadline_; }

private:
  clock::time_point deadline_;
};

sat_outcome solve_in_process( cnf const& formula, std::optional<clock::time_point> deadline )
{
  CaDiCaL::Solver solver;
  solver.set( "quiet", 1 );
  solver.reserve( formula.variables() );
  for ( auto const lit : formula.literals() )
    solver.add( lit );

  std::optional<deadline_terminator> terminator;
  if ( deadline )
  {
    if ( clock::now() >= *deadline )
      return {};
    terminator.emplace( *deadline );
    solver.connect_terminator( &*terminator );
  }
  int const status = solver.solve();
  if ( terminator )
    solver.disconnect_terminator();

  sat_outcome outcome;
  if ( status == 10 )
  {
    outcome.verdict = sat_verdict::satisfiable;
    outcome.model.assign( static_cast<std::size_t>( formula.variables() ) + 1, false );
    for ( int v = 1; v <= formula.variables(); ++v )
      outcome.model[static_cast<std::size_t>( v )] = solver.val( v ) > 0;
  }
  else if ( status == 20 )
    outcome.verdict = sat_verdict::unsatisfiable;
  return outcome;
}

std::filesystem::path scratch_file( std::string const& suffix )
{
  static std::atomic<unsigned> counter{ 0 };
  auto const name = "promptsynth-" + std::to_string( ::getpid() ) + "-" + std::to_string( counter++ ) + suffix;
  return std::filesystem::temp_directory_path() / name;
}

sat_outcome solve_external( cnf const& formula, std::optional<clock::time_point> deadline,
                            std::string const& command )
{
  auto const input = scratch_file( ".cnf" );
  auto const output = scratch_file( ".out" );
  {
    std::ofstream os( input );
    if ( !os )
      throw error( "cannot write DIMACS file " + input.string() );
    write_dimacs( formula, os );
  }

  std::string line = command + " '" + input.string() + "' > '" + output.string() + "' 2>/dev/null";
  if ( deadline )
  {
    auto const left = std::chrono::duration<double>( *deadline - clock::now() ).count();
    if ( left <= 0 )
    {
      std::filesystem::remove( input );
      return {};
    }
    line = "timeout " + std::to_string( std::ceil( left ) ) + " " + line;
  }
  [[maybe_unused]] int const ignored = std::system( line.c_str() );

  sat_outcome outcome;
  std::ifstream is( output );
  std::string text;
  std::vector<bool> model( static_cast<std::size_t>( formula.variables() ) + 1, false );
  while ( std::getline( is, text ) )
  {
    if ( text.rfind( "s ", 0 ) == 0 )
    {
      if ( text.find( "UNSATISFIABLE" ) != std::string::npos )
        outcome.verdict = sat_verdict::unsatisfiable;
      else if ( text.find( "SATISFIABLE" ) != std::string::npos )
        outcome.verdict = sat_verdict::satisfiable;
    }
    else if ( text.rfind( "v ", 0 ) == 0 )
    {
      std::istringstream values( text.substr( 2 ) );
      int lit = 0;
      while ( values >> lit )
        if ( lit > 0 && lit <= formula.variables() )
          model[static_cast<std::size_t>( lit )] = true;
    }
  }
  std::filesystem::remove( input );
  std::filesystem::remove( output );
  if ( outcome.verdict == sat_verdict::satisfiable )
    outcome.model = std::move( model );
  return outcome;
}

} // namespace

sat_outcome solve( cnf const& formula, std::optional<clock::time_point> deadline,
                   std::optional<std::string> const& external )
{
  if ( external )
    return solve_external( formula, deadline, *external );
  return solve_in_process( formula, deadline );
}

std::optional<std::string> external_solver_from_environment()
{
  char const* value = std::getenv( "PROMPTSYNTH_SAT_SOLVER" );
  if ( value == nullptr || *value == '\0' )
    return std::nullopt;
  return std::string( value );
}

} // namespace promptsynth::detail
