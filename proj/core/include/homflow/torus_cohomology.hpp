#pragma once

#include "homflow/int_lattice.hpp"
#include "homflow/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace homflow::torus {

/// Linear flow on T^d with frequency vector omega. Irrational frequencies
/// enter as exact rational approximants carrying the `approximate` flag;
/// everything downstream then computes exactly over the approximant and
/// reports are labeled accordingly.
struct TorusFlow {
    std::vector<Rat> omega;
    bool approximate = false;

    size_t dim() const { return omega.size(); }
};

TorusFlow make_flow(std::vector<Rat> omega, bool approximate = false);

/// Finitely supported Fourier data; keys are frequency vectors k.
/// Convention used throughout: e_k(x) = exp(2 pi i k.x), so the generator
/// acts mode-wise as multiplication by 2 pi i (k.omega).
struct FourierFunction {
    size_t d = 0;
    std::map<std::vector<long>, CRat> coeffs;
    bool real_symmetric = false;

    void set(std::vector<long> k, CRat value);
    /// Checks the reality constraint f(-k) = conj(f(k)) when flagged.
    bool reality_ok() const;
    double sobolev_norm(double s) const;
};

/// Canonical (Hermite) basis of {k in Z^d : k.omega = 0}.
struct ResonanceLattice {
    IntMat basis;
    size_t rank() const { return basis.size(); }
    bool contains(const std::vector<long>& k, const std::vector<Rat>& omega) const;
};

ResonanceLattice resonance_lattice(const std::vector<Rat>& omega);

/// Modes indexing the invariant distributions up to the cutoff, plus the
/// certificate for the nonresonant remainder of the box.
struct DistributionBasis {
    std::vector<std::vector<long>> modes;  // k with k.omega = 0, includes 0
    bool exact_frequencies;
    Rat min_abs_nonresonant;               // min |k.omega| over nonresonant modes in the box
    std::vector<long> min_witness;
    double atol;                           // reporting threshold for near-resonances
    std::vector<std::vector<long>> near_resonances;  // nonresonant with |k.omega| < atol
};

DistributionBasis invariant_distributions(const TorusFlow& flow, long cutoff, double atol = 1e-12);

/// Mode-wise solution of the cohomological equation. Solution coefficients
/// are returned as exact multiples of 1/(2 pi i): u_hat(k) = c_k / (2 pi i)
/// with c_k = f_hat(k) / (k.omega). The 2 pi i unit is carried symbolically
/// so the defining identity is an exact rational statement.
struct CohomologicalSolution {
    FourierFunction u_scaled;  // coefficients c_k, in units of 1/(2 pi i)
    std::vector<std::pair<std::vector<long>, CRat>> obstructions;  // resonant modes with f_hat != 0
};

CohomologicalSolution solve_cohomological(const TorusFlow& flow, const FourierFunction& f);

/// Running minima of |k.omega| over growing sup-norm, with the fitted
/// envelope |k.omega| >= C / |k|^tau.
struct DiophantineEstimate {
    struct Record {
        long norm;
        std::vector<long> witness;
        Rat value;  // |k.omega| at the witness
    };
    std::vector<Record> records;
    double c_hat = 0, tau_hat = 0;
    bool resonant = false;                   // an exact zero was found
    std::vector<long> resonance_witness;
};

DiophantineEstimate diophantine_type(const std::vector<Rat>& omega, long depth);

/// Continued-fraction convergents p/q of a rational number (exact Euclid).
std::vector<std::pair<Int, Int>> continued_fraction_convergents(const Rat& x, size_t max_terms);

/// Fourier data for the instability exhibit, described by exact dyadic
/// magnitudes: |f_hat(k)| = 2^log2_coeff (huge negative exponents stay
/// symbolic instead of materializing million-bit rationals).
struct DemoMode {
    std::vector<long> k;
    double log2_coeff;
};

struct LiouvilleRow {
    int depth;
    Rat omega_second;       // second frequency of the truncation
    double max_log10_u;     // log10 of max_k |u_hat(k)| over the demo support
    std::vector<long> argmax;
    double min_log10_divisor;
    std::vector<long> divisor_witness;
    int obstruction_count;  // support modes that are exactly resonant
    double sobolev_h2_f;
};

/// Truncations (1, sum_{n<=m} 10^{-n!}) for m = 1..n_max.
std::vector<std::vector<Rat>> liouville_truncation_schedule(int n_max);

/// 2^{-|k|_1} on a centered box plus the convergent-scale witness modes of
/// the truncation schedule up to witness_depth.
std::vector<DemoMode> liouville_demo_function(long box_radius, int witness_depth);

std::vector<LiouvilleRow> liouville_blowup_demo(const std::vector<std::vector<Rat>>& omega_sequence,
                                                const std::vector<DemoMode>& modes);

/// Transpose action of an integral torus epimorphism on distribution modes.
/// Requires P surjective over Z and dist resonant for the factor frequency.
std::vector<long> pullback_distribution(const IntMat& p, const std::vector<long>& dist,
                                        const std::vector<Rat>& omega_total);

/// 64-bit dyadic approximant of the golden ratio, flagged approximate.
Rat golden_ratio_64();

}  // namespace homflow::torus
