#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace promptsynth
{

/// Base class of all errors raised by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a result fails its own certificate; indicates a bug.
class internal_error : public error
{
public:
  using error::error;
};

/// Raised when a rewrite would have to negate a prompt-eventually.
class negated_prompt_error : public error
{
public:
  negated_prompt_error() : error( "negated prompt operator" ) {}
};

enum class node_kind : std::uint8_t
{
  constant_true,
  constant_false,
  atom,
  negated_atom,
  conjunction,
  disjunction,
  next,
  until,
  release,
  prompt_eventually,
};

class formula;

namespace detail
{
struct node;
}

/*! \brief Prompt-LTL formula in negation normal form.

  Immutable handle to a shared tree. Copies are cheap; structurally equal
  formulas compare equal regardless of how they were built. Negation only
  occurs directly above atoms (`negated_atom`).
*/
class formula
{
public:
  /// The constant `true`.
  formula();

  static formula constant( bool value );
  static formula atom( std::string name );
  static formula negated_atom( std::string name );
  static formula conjunction( formula lhs, formula rhs );
  static formula disjunction( formula lhs, formula rhs );
  static formula next( formula sub );
  static formula until( formula lhs, formula rhs );
  static formula release( formula lhs, formula rhs );
  static formula prompt_eventually( formula sub );

  node_kind kind() const;
  /// Proposition name; only meaningful for atoms and negated atoms.
  std::string const& name() const;
  /// Left (or only) child.
  formula const& lhs() const;
  formula const& rhs() const;
  std::size_t arity() const;

  bool is_literal() const { return kind() == node_kind::atom || kind() == node_kind::negated_atom; }
  bool is_constant() const { return kind() == node_kind::constant_true || kind() == node_kind::constant_false; }

  /// Structural hash; stable across runs.
  std::uint64_t hash() const;
  /// Number of nodes in the tree (with multiplicity).
  std::uint64_t tree_size() const;
  bool has_prompt() const;

  /// Address of the shared node; used as a memo key.
  void const* identity() const { return node_.get(); }

  friend bool operator==( formula const& a, formula const& b );
  friend bool operator!=( formula const& a, formula const& b ) { return !( a == b ); }
  /// Total order, consistent with ==.
  friend bool operator<( formula const& a, formula const& b );

private:
  explicit formula( std::shared_ptr<detail::node const> node ) : node_( std::move( node ) ) {}
  static formula make( node_kind kind, std::string name, std::vector<formula> children );

  std::shared_ptr<detail::node const> node_;
};

struct formula_hash
{
  std::size_t operator()( formula const& f ) const { return static_cast<std::size_t>( f.hash() ); }
};

/* shorthands */
formula make_true();
formula make_false();
formula eventually( formula f );   // true U f
formula globally( formula f );     // false R f
formula next_n( formula f, unsigned times );
/// Left-nested conjunction, as `a & b & c` parses; empty -> true.
formula conjoin( std::vector<formula> const& parts );
/// Left-nested disjunction; empty -> false.
formula disjoin( std::vector<formula> const& parts );

/// NNF of the negation. Throws negated_prompt_error on a prompt-eventually.
formula negate( formula const& f );

/// Number of distinct subformulas.
std::size_t size( formula const& f );

/// Propositions mentioned by the formula.
std::set<std::string> propositions( formula const& f );

/// Renders in the concrete syntax accepted by parse(); fully parenthesized
/// binary operators, so the output re-parses to the same formula.
std::string to_string( formula const& f );

} // namespace promptsynth
