#include <promptsynth/promptsynth.h>

#include <stddef.h>

/* Compiled as C: returns 0 if the round robin machine for two clients
   realizes the two-client prompt arbiter with bound 2 and not with bound 0. */
int capi_c_smoke( void )
{
  ps_formula* f = NULL;
  ps_machine* m = NULL;
  int holds_two = 0;
  int holds_zero = 1;
  char* witness = NULL;
  int failures = 0;

  if ( ps_formula_arbiter( 2, 2, &f ) != PS_OK || ps_machine_round_robin( 2, &m ) != PS_OK )
    return 1;
  if ( ps_check( m, f, 2, &holds_two, NULL ) != PS_OK || !holds_two )
    ++failures;
  if ( ps_check( m, f, 0, &holds_zero, &witness ) != PS_OK || holds_zero || witness == NULL )
    ++failures;
  ps_string_free( witness );
  ps_machine_free( m );
  ps_formula_free( f );
  return failures;
}
