#pragma once

// Relation and agreement suites shared by `verify` and the acceptance run.
// Every entry reports its worst residual against a tolerance.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anyonrg::checks {

struct CheckResult {
  std::string group;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

using Report = std::vector<CheckResult>;

bool all_passed(const Report& r);
void append(Report& into, const Report& more);

/// TL relations in the Laurent ring for 3 <= n <= max_n; residual = failures.
Report tl_symbolic(int max_n);
/// Reidemeister II/III in the Laurent ring for 3 <= n <= max_n.
Report braid_symbolic(int max_n);
/// Random generator words (length <= max_length) multiplied diagrammatically,
/// evaluated at A and mapped to Majorana matrices, against the direct matrix
/// product. Words are drawn from std::mt19937_64(seed).
Report tl_homomorphism(int strands, std::complex<double> A, int words, int max_length, std::uint64_t seed);
/// TL relations of e_x = (1 + i psi_{x+eps} psi_x)/sqrt2 as oracle matrices,
/// every even chain length 4..max_majoranas, seam included. `delta`
/// replaces sqrt2 in e^2 = delta e (negative controls).
Report majorana_tl(std::size_t max_majoranas, std::optional<double> delta = std::nullopt);
/// Braid unitarity, Yang-Baxter, inverse, and the conjugation action as
/// signed permutations against matrix conjugation.
Report braid_matrices(std::size_t max_majoranas);
/// A + A^-1 e at the four roots of -A^2 - A^-2 = sqrt2: unitary and
/// proportional to b or b^*.
Report kauffman_roots(std::size_t majoranas);
/// separate_pair against U e_x U^* for every start, distances <= max_distance,
/// both directions and braid signs.
Report separated_pairs(std::size_t majoranas, std::size_t max_distance);
/// F orthogonality, pentagon, projector and TL relations of e = d_s P0 for
/// periodic chains of 4..max_sites sites, plus basis counts.
Report fusion(int k, std::size_t max_sites, std::optional<double> delta = std::nullopt);
/// Momentum vs Bogoliubov vs dense oracle covariances for chains of
/// 4..max_majoranas Majoranas (multiples of 4); the oracle runs up to oracle_cap.
Report ground_states(std::size_t max_majoranas, std::size_t oracle_cap, double tolerance = 1e-10);

}  // namespace anyonrg::checks
