#pragma once

#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace promptsynth::detail
{

/// Clause database in DIMACS numbering: variables are 1..variables().
class cnf
{
public:
  int new_variable() { return ++variables_; }
  int variables() const { return variables_; }
  std::size_t clause_count() const { return clauses_; }

  void add( std::initializer_list<int> clause ) { add( clause.begin(), clause.end() ); }
  void add( std::vector<int> const& clause ) { add( clause.begin(), clause.end() ); }

  template<class It>
  void add( It first, It last )
  {
    literals_.insert( literals_.end(), first, last );
    literals_.push_back( 0 );
    ++clauses_;
  }

  /// Zero-terminated clauses, back to back.
  std::vector<int> const& literals() const { return literals_; }

private:
  int variables_ = 0;
  std::size_t clauses_ = 0;
  std::vector<int> literals_;
};

void write_dimacs( cnf const& formula, std::ostream& os );

enum class sat_verdict
{
  satisfiable,
  unsatisfiable,
  unknown,
};

struct sat_outcome
{
  sat_verdict verdict = sat_verdict::unknown;
  /// model[v] for v in 1..variables(); empty unless satisfiable.
  std::vector<bool> model;
};

using clock = std::chrono::steady_clock;

/*! \brief Solves with the bundled CaDiCaL, or with the DIMACS solver named
  by `external` (reads a file argument, prints `s`/`v` lines).

  The deadline stops the search and yields `unknown`.
*/
sat_outcome solve( cnf const& formula, std::optional<clock::time_point> deadline,
                   std::optional<std::string> const& external = std::nullopt );

/// Solver command from PROMPTSYNTH_SAT_SOLVER, if set and nonempty.
std::optional<std::string> external_solver_from_environment();

} // namespace promptsynth::detail
