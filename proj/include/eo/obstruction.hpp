#ifndef EO_OBSTRUCTION_HPP
#define EO_OBSTRUCTION_HPP

#include <string>
#include <variant>

#include "eo/eta.hpp"
#include "eo/rational.hpp"
#include "eo/topology.hpp"

namespace eo {

enum class VerdictStatus { Violated, EqualityRigidity, Satisfied };

// The two ways the eta correction can enter the corrected signature; the
// corollary form (tau - e/3 + sign e) is normative for circle bundles, the
// flag exists because the source statements differ by the boundary
// orientation convention.
enum class EtaSignConvention { Corollary, Theorem };

struct ClosedHT {};
struct Kotschick {
  double lambda = 0;  // volume entropy, user input
};
struct FiberedEnd {
  BoundaryFibration fibration;
  EtaSignConvention convention = EtaSignConvention::Corollary;
};
struct ConeEnd {
  double volume = 0;
  double eta = 0;
  double alpha = 0;
};
struct NakajimaALE {
  int gamma_order = 1;
  double eta_s = 0;
};
struct AndersonCC {
  double renormalized_volume = 0;
  double eta = 0;
};

using ObstructionMode =
    std::variant<ClosedHT, Kotschick, FiberedEnd, ConeEnd, NakajimaALE, AndersonCC>;

struct ObstructionInput {
  TopologicalData topo;
  ObstructionMode mode;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Satisfied;
  bool exact = false;   // rational arithmetic end to end
  Rational lhs_q, rhs_q;
  double lhs = 0, rhs = 0;
  std::string rigidity_note;

  std::string status_str() const {
    switch (status) {
      case VerdictStatus::Violated: return "Violated";
      case VerdictStatus::EqualityRigidity: return "EqualityRigidity";
      default: return "Satisfied";
    }
  }
};

Verdict check(const ObstructionInput& input);

// Smallest k such that base # k CP2bar is Violated in the given fibered-end
// mode; exhaustive exact scan.
int min_obstructed_blowups(TopologicalData base, const FiberedEnd& mode,
                           int k_max = 1000000);

}  // namespace eo

#endif  // EO_OBSTRUCTION_HPP
