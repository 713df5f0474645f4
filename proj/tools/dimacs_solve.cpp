#include <cadical.hpp>

#include <iostream>

/* Solves a DIMACS CNF file with the bundled solver and prints the verdict
   and model in the competition output format. */
int main( int argc, char** argv )
{
  if ( argc != 2 )
  {
    std::cerr << "usage: dimacs_solve FILE\n";
    return 1;
  }
  CaDiCaL::Solver solver;
  int variables = 0;
  if ( char const* err = solver.read_dimacs( argv[1], variables, 1 ) )
  {
    std::cerr << "dimacs_solve: " << err << "\n";
    return 1;
  }
  int const result = solver.solve();
  if ( result == 20 )
  {
    std::cout << "s UNSATISFIABLE\n";
    return 20;
  }
  if ( result != 10 )
  {
    std::cout << "s UNKNOWN\n";
    return 0;
  }
  std::cout << "s SATISFIABLE\n";
  for ( int v = 1; v <= variables; ++v )
  {
    if ( ( v - 1 ) % 10 == 0 )
      std::cout << ( v > 1 ? "\n" : "" ) << "v";
    std::cout << " " << ( solver.val( v ) > 0 ? v : -v );
  }
  std::cout << "\nv 0\n";
  return 10;
}
