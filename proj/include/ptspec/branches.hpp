#pragma once

#include "ptspec/hardbox.hpp"

namespace ptspec {

// The three cube roots of g^2. q0 is the root nearest the positive real axis
// (tie broken toward arg = 2/3 arg g); q1 = w q0, q2 = w^2 q0, w = exp(2i pi/3).
struct BranchSet {
  Complex q0{}, q1{}, q2{};
  Complex get(int k) const { return k == 0 ? q0 : (k == 1 ? q1 : q2); }
};

BranchSet branch_values(Complex g);

// Hard-box spectrum evaluated with q_k. Branch 0 delegates to
// hardbox::spectrum. On complex branches the characteristic is complex on the
// real E axis; real eigenvalues are near-zeros refined by complex Newton and
// validated by the null-vector test (energies failing it belong to the
// null-eigenvector bands, not the spectrum).
Spectrum spectrum_on_branch(Complex g, int k, int count);

// Max relative deviation of psi_{q_j}(x) / psi_{q_k}(x) from its (modulus-)
// median over grid points where the denominator is resolvable. Near zero iff
// the two branch eigenfunctions differ by a constant factor.
double proportionality_check(Complex e, Complex g, int j, int k, std::span<const double> xs);

// Classical turning points of E = i g x: the single point x = -iE/g. The
// flag reports whether the +-a + ib pair criterion is met (never, for a
// linear potential).
struct TurningPoints {
  std::vector<Complex> points;
  bool pt_pair_criterion = false;
};
TurningPoints classical_turning_points(Complex g, Complex e);

// Side-by-side branch report driving the CLI `branches` command.
struct BranchComparison {
  BranchSet branches;
  std::vector<Spectrum> spectra;                      // per branch
  std::vector<std::vector<int>> repeated_of_branch0;  // for k=1,2: branch-0 indices reproduced
  std::vector<std::vector<EnergyBand>> bands;         // per branch
  std::vector<double> proportionality;                // branch-1 vs 0, per shared eigenvalue
};
BranchComparison compare_branches(Complex g, int count);

}  // namespace ptspec
