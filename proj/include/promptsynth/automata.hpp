#pragma once

#include <promptsynth/formula.hpp>
#include <promptsynth/lasso.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace promptsynth
{

/// Most propositions an automaton (or machine) may range over.
inline constexpr std::size_t max_propositions = 64;

/// Bit set over an automaton's proposition list: bit i is propositions[i].
using letter = std::uint64_t;

/// Conjunction of literals; the empty cube is `true`.
struct guard
{
  letter positive = 0;
  letter negative = 0;

  bool satisfied_by( letter l ) const { return ( l & positive ) == positive && ( l & negative ) == 0; }
  /// Every letter satisfying *this also satisfies `other`.
  bool implies( guard const& other ) const
  {
    return ( positive & other.positive ) == other.positive && ( negative & other.negative ) == other.negative;
  }

  friend bool operator==( guard const&, guard const& ) = default;
  friend auto operator<=>( guard const&, guard const& ) = default;
};

struct transition
{
  std::size_t target;
  guard condition;

  friend bool operator==( transition const&, transition const& ) = default;
  friend auto operator<=>( transition const&, transition const& ) = default;
};

enum class branching_mode
{
  /// Existential branching, Buchi acceptance over `marked` states.
  nondeterministic_buchi,
  /// Universal branching, co-Buchi acceptance: `marked` states are rejecting.
  universal_co_buchi,
};

/*! \brief Buchi automaton with cube-labeled transitions.

  Under `universal_co_buchi` the same structure accepts a word iff no run on
  it visits marked (rejecting) states infinitely often.
*/
class buchi_automaton
{
public:
  buchi_automaton( std::vector<std::string> propositions, std::size_t initial,
                   std::vector<std::vector<transition>> transitions, std::vector<bool> marked,
                   branching_mode mode = branching_mode::nondeterministic_buchi );

  std::vector<std::string> const& propositions() const { return propositions_; }
  std::size_t state_count() const { return transitions_.size(); }
  std::size_t initial() const { return initial_; }
  std::vector<transition> const& transitions( std::size_t state ) const { return transitions_[state]; }
  std::size_t transition_count() const;
  /// Accepting (Buchi) or rejecting (co-Buchi) depending on the mode.
  bool marked( std::size_t state ) const { return marked_[state]; }
  branching_mode mode() const { return mode_; }

  /// Same structure read with the other branching mode.
  buchi_automaton with_mode( branching_mode mode ) const;

  /// Index of a proposition, or npos.
  std::size_t proposition_index( std::string const& name ) const;
  /// Encodes a valuation; propositions the automaton does not know are ignored.
  letter encode( valuation const& v ) const;
  std::string guard_to_string( guard const& g ) const;

  /// JSON dump for debugging: states, initial, marked list, edges with guard strings.
  std::string to_json() const;

  friend bool operator==( buchi_automaton const&, buchi_automaton const& ) = default;

private:
  std::vector<std::string> propositions_;
  std::size_t initial_;
  std::vector<std::vector<transition>> transitions_;
  std::vector<bool> marked_;
  branching_mode mode_;
};

/*! \brief Tableau translation of a pure-LTL NNF formula into a Buchi automaton.

  Builds a transition-based generalized Buchi automaton whose states are the
  sets of obligations for the next position, degeneralizes it, and removes
  states that cannot reach an accepting cycle. State numbering follows
  breadth-first discovery and is identical across runs.
*/
buchi_automaton ltl_to_nba( formula const& f );

/// Universal co-Buchi automaton accepting exactly the models of `f`
/// (the translation of its negation, read universally).
buchi_automaton spec_to_ucw( formula const& f );

/// Whether some run of a nondeterministic automaton on w visits accepting
/// states infinitely often.
bool lasso_membership( buchi_automaton const& a, lasso const& w );

/// Whether every run of a universal co-Buchi automaton on w visits
/// rejecting states only finitely often.
bool ucw_accepts( buchi_automaton const& a, lasso const& w );

} // namespace promptsynth
