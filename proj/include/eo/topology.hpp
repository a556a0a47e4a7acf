#ifndef EO_TOPOLOGY_HPP
#define EO_TOPOLOGY_HPP

namespace eo {

// Declared Euler number and signature of a catalog entry.  These are stored
// metadata: the verification engine compares integrals against them, it never
// derives them from homology at runtime.
struct TopologicalData {
  int chi = 0;
  int tau = 0;
};

// chi(A # B) = chi(A) + chi(B) - 2, tau additive.
inline TopologicalData connected_sum(TopologicalData a, TopologicalData b) {
  return {a.chi + b.chi - 2, a.tau + b.tau};
}

// k-fold blow-up: each reversed projective plane contributes (3, -1).
inline TopologicalData blow_up(TopologicalData base, int k) {
  TopologicalData cp2bar{3, -1};
  for (int i = 0; i < k; ++i) base = connected_sum(base, cp2bar);
  return base;
}

}  // namespace eo

#endif  // EO_TOPOLOGY_HPP
