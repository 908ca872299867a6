#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cloneq/qmat.hpp"

namespace cloneq::pcc {

/// Real transformation coefficients (a, b, c); unitarity demands
/// a^2 + 2b^2 + c^2 = 1 and the constructor rejects residuals above 1e-10.
struct PCCoeffs {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  PCCoeffs(double a_, double b_, double c_);
  double unitarity_residual() const;
};

/// Input-state families with input-independent fidelity constraints:
/// Case1: both amplitudes real (or both purely imaginary), relation 2b = a - c.
/// Case2: one real, one purely imaginary, relation 2b = a + c.
/// Case3: fully complex amplitudes, relation c = 0 and 2b = a.
enum class PCCase { Case1, Case2, Case3 };

PCCase case_from_index(int index);  // 1..3
double case_relation_residual(PCCase c, const PCCoeffs& k);

/// Reduced output of the original mode (closed form). The copy mode carries
/// the identical state; output_density_mode recomputes either one from the
/// full three-qubit output as an independent route.
qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const PCCoeffs& k);
qmat::DensityMatrix2 output_density_mode(const qmat::PureQubit& psi, const PCCoeffs& k,
                                         qmat::Mode mode);

/// Fidelity in the real-decomposition form built on (a1 b1 + a2 b2) and
/// (a1 b2 - a2 b1).
double fidelity(const qmat::PureQubit& psi, const PCCoeffs& k);
/// Same quantity written through |alpha beta|^2 and Re[(alpha beta*)^2].
double fidelity_modulus_form(const qmat::PureQubit& psi, const PCCoeffs& k);

struct CaseOptimum {
  PCCoeffs coeffs;
  double fidelity = 0.0;
};

/// Maximize F over the case's constraint: cases 1 and 2 reduce to
/// max x^T x on 2a^2 - 4ab + 6b^2 = 1 (a generalized eigenvalue problem);
/// case 3 is pinned by c = 0, 2b = a.
CaseOptimum maximize_fidelity(PCCase c);

struct FamilySpec {
  int points = 101;
  std::optional<std::uint64_t> seed;  // deterministic grid when unset
};

std::vector<qmat::PureQubit> input_family(PCCase family, const FamilySpec& spec = {});

/// max F - min F over a sample of the given input family.
double input_independence_residual(PCCase family, const PCCoeffs& k, const FamilySpec& spec = {});

}  // namespace cloneq::pcc
