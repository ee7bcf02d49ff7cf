#ifndef ERGOPT_PRIMITIVITY_HPP
#define ERGOPT_PRIMITIVITY_HPP

#include "ergopt/graph.hpp"

namespace ergopt {

// Uniform connection certificate: every ordered pair (i,j) of essential
// symbols is joined by a path i -> l_1 -> ... -> l_K0 -> j whose K0 interior
// symbols all lie in F. K0 = 0 means a direct edge for every pair.
struct PrimitivityCertificate {
  SymbolSet connecting_set;  // F
  int k0 = 0;

  int max_connecting_symbol() const {  // I_F
    return connecting_set.max_symbol();
  }
};

// Smallest K0 <= k0_cap for which the certificate holds at that exact
// length, by boolean reachability with interior vertices restricted to F.
// Throws NotFinitelyPrimitive when no K0 <= k0_cap works.
PrimitivityCertificate compute_primitivity(const MarkovGraph& g,
                                           const SymbolSet& connecting_set,
                                           int k0_cap);

// Exhaustive re-check of the certificate invariant (used by tests and by
// report auditing; shares no reachability machinery with the search).
bool certificate_holds(const MarkovGraph& g, const PrimitivityCertificate& cert);

}  // namespace ergopt

#endif  // ERGOPT_PRIMITIVITY_HPP
