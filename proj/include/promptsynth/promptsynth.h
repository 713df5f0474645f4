#ifndef PROMPTSYNTH_H
#define PROMPTSYNTH_H

/* C interface to the Prompt-LTL realizability toolkit.

   Objects are opaque handles created by ps_*_create/parse/load functions and
   released with the matching ps_*_free. Every fallible call returns a
   ps_status; on failure ps_last_error() describes the cause for the calling
   thread. Strings returned through char** are owned by the caller and
   released with ps_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined( _WIN32 )
#define PS_API __declspec( dllexport )
#else
#define PS_API __attribute__( ( visibility( "default" ) ) )
#endif

typedef enum ps_status
{
  PS_OK = 0,
  PS_ERROR_NULL_ARGUMENT = 1,
  PS_ERROR_PARSE = 2,
  PS_ERROR_INVALID = 3,
  PS_ERROR_OUT_OF_MEMORY = 4,
  PS_ERROR_INTERNAL = 5
} ps_status;

/* Verdict of a realizability query; values double as CLI exit codes. */
typedef enum ps_verdict
{
  PS_REALIZABLE = 0,
  PS_UNREALIZABLE = 1,
  PS_UNKNOWN = 2
} ps_verdict;

typedef struct ps_formula ps_formula;
typedef struct ps_partition ps_partition;
typedef struct ps_machine ps_machine;
typedef struct ps_grid ps_grid;

/* Message of the last failed call on this thread, or "" if none. */
PS_API const char* ps_last_error( void );
PS_API void ps_string_free( char* s );

/* Formulas */
PS_API ps_status ps_formula_parse( const char* text, ps_formula** out );
/* Prompt arbiter with r clients, the first rp of them prompt. */
PS_API ps_status ps_formula_arbiter( unsigned r, unsigned rp, ps_formula** out );
PS_API ps_status ps_formula_to_string( const ps_formula* f, char** out );
PS_API ps_status ps_formula_size( const ps_formula* f, size_t* out );
PS_API void ps_formula_free( ps_formula* f );

/* Partitions; color may be NULL for the default "p". */
PS_API ps_status ps_partition_create( const char* const* inputs, size_t input_count, const char* const* outputs,
                                      size_t output_count, const char* color, ps_partition** out );
/* Inputs q1..qr, outputs p1..pr. */
PS_API ps_status ps_partition_arbiter( unsigned r, ps_partition** out );
PS_API void ps_partition_free( ps_partition* p );

/* Machines */
PS_API ps_status ps_machine_load( const char* path, ps_machine** out );
PS_API ps_status ps_machine_from_json( const char* text, ps_machine** out );
PS_API ps_status ps_machine_save( const ps_machine* m, const char* path );
PS_API ps_status ps_machine_to_json( const ps_machine* m, char** out );
PS_API ps_status ps_machine_to_dot( const ps_machine* m, char** out );
/* Copy without the output `color` (NULL for "p"). */
PS_API ps_status ps_machine_strip_color( const ps_machine* m, const char* color, ps_machine** out );
/* Built-in machines: "sigma_6_3" or "sigma_12_1". */
PS_API ps_status ps_machine_fixture( const char* name, ps_machine** out );
PS_API ps_status ps_machine_round_robin( unsigned r, ps_machine** out );
PS_API ps_status ps_machine_state_count( const ps_machine* m, size_t* out );
PS_API void ps_machine_free( ps_machine* m );

/* Model checking.
   Sets *holds to 1 if every play of m satisfies f with respect to bound k.
   If counterexample is non-NULL it receives a description of a violating
   input word and play, or NULL when the check holds. */
PS_API ps_status ps_check( const ps_machine* m, const ps_formula* f, size_t k, int* holds, char** counterexample );

/* Smallest bound k <= cap (0 for the default cap) that m realizes.
   *found is 0 if there is none; then note (if non-NULL) says why. */
PS_API ps_status ps_minimal_bound( const ps_machine* m, const ps_formula* f, size_t cap, int* found, size_t* bound,
                                   char** note );

/* Synthesis */
typedef struct ps_search_options
{
  size_t n_max;
  size_t k_max;
  /* Per query; negative for none. */
  long long budget_ms;
  /* 0: smallest k first; 1: anti-diagonals of (n, k). */
  int diagonal;
} ps_search_options;

typedef struct ps_synthesis_report
{
  ps_verdict verdict;
  size_t k;
  /* 2k, the bound the returned machine realizes. */
  size_t bound;
  /* Size of the colored machine found. */
  size_t n;
  /* 1 if a point before the answer ran out of budget. */
  int skipped_unknown;
} ps_synthesis_report;

PS_API void ps_search_options_default( ps_search_options* options );

/* Approximates the optimal prompt bound. On PS_REALIZABLE, *machine (if
   non-NULL) receives the color-stripped, minimized machine. */
PS_API ps_status ps_synthesize( const ps_formula* f, const ps_partition* parts, const ps_search_options* options,
                                ps_synthesis_report* report, ps_machine** machine );

/* Plain LTL bounded synthesis for sizes 1..n_max in ascending order.
   f must not contain prompt operators. */
PS_API ps_status ps_synthesize_ltl( const ps_formula* f, const ps_partition* parts, size_t n_max, long long budget_ms,
                                    ps_verdict* verdict, size_t* n, ps_machine** machine );

/* Number of machines synthesized so far that passed both certificate checks. */
PS_API size_t ps_verified_machine_count( void );

/* Grid exploration */
typedef struct ps_grid_options
{
  long long budget_ms;
  int prune;
  unsigned workers;
} ps_grid_options;

PS_API void ps_grid_options_default( ps_grid_options* options );
PS_API ps_status ps_explore( const ps_formula* f, const ps_partition* parts, size_t n_lo, size_t n_hi, size_t k_lo,
                             size_t k_hi, const ps_grid_options* options, ps_grid** out );
/* Status of one point. *machine (if non-NULL) receives the colored machine of
   a solved realizable point and NULL otherwise. */
PS_API ps_status ps_grid_point( const ps_grid* g, size_t n, size_t k, ps_verdict* verdict, int* derived,
                                double* time_ms, ps_machine** machine );
PS_API ps_status ps_grid_set_machine_file( ps_grid* g, size_t n, size_t k, const char* file );
PS_API ps_status ps_grid_upward_closed( const ps_grid* g, int* out );
/* Pareto points as n,k pairs; *pairs holds 2 * *count entries, freed with ps_sizes_free. */
PS_API ps_status ps_grid_pareto( const ps_grid* g, size_t** pairs, size_t* count );
PS_API void ps_sizes_free( size_t* pairs );
PS_API ps_status ps_grid_to_csv( const ps_grid* g, const char* formula_id, char** out );
PS_API void ps_grid_free( ps_grid* g );

#ifdef __cplusplus
}
#endif

#endif
