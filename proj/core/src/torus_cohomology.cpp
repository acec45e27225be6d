#include "homflow/torus_cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homflow::torus {

namespace {

Rat dot(const std::vector<Rat>& omega, const std::vector<long>& k) {
    Rat acc(0);
    for (size_t i = 0; i < omega.size(); ++i) acc += omega[i] * Rat(k[i]);
    return acc;
}

double log10_abs(const Rat& r) {
    if (r == 0) throw std::domain_error("log10 of zero");
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
    return (std::log10(std::fabs(mn)) + en * std::log10(2.0)) -
           (std::log10(std::fabs(md)) + ed * std::log10(2.0));
}

}  // namespace

TorusFlow make_flow(std::vector<Rat> omega, bool approximate) {
    bool all_zero = true;
    for (const auto& w : omega)
        if (w != 0) all_zero = false;
    if (omega.empty() || all_zero) throw std::invalid_argument("frequency vector must be nonzero");
    return {std::move(omega), approximate};
}

void FourierFunction::set(std::vector<long> k, CRat value) {
    if (d == 0) d = k.size();
    if (k.size() != d) throw std::invalid_argument("Fourier mode dimension mismatch");
    if (value.is_zero()) coeffs.erase(k);
    else coeffs[std::move(k)] = std::move(value);
}

bool FourierFunction::reality_ok() const {
    if (!real_symmetric) return true;
    for (const auto& [k, v] : coeffs) {
        std::vector<long> neg(k.size());
        for (size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
        auto it = coeffs.find(neg);
        if (it == coeffs.end() || !(it->second == v.conj())) return false;
    }
    return true;
}

double FourierFunction::sobolev_norm(double s) const {
    double acc = 0;
    for (const auto& [k, v] : coeffs) {
        double k2 = 0;
        for (long x : k) k2 += double(x) * double(x);
        double w = std::pow(1.0 + k2, s);
        acc += w * v.norm2().get_d();
    }
    return std::sqrt(acc);
}

ResonanceLattice resonance_lattice(const std::vector<Rat>& omega) {
    bool all_zero = true;
    for (const auto& w : omega)
        if (w != 0) all_zero = false;
    if (omega.empty() || all_zero) throw std::invalid_argument("frequency vector must be nonzero");
    // clear denominators: the kernel only depends on omega up to scale
    Int lcm(1);
    for (const auto& w : omega) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
    IntVec w_int(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) {
        Rat scaled = Rat(lcm) * omega[i];
        w_int[i] = scaled.get_num();
    }
    ResonanceLattice lattice;
    lattice.basis = integer_kernel(IntMat{w_int});
    return lattice;
}

bool ResonanceLattice::contains(const std::vector<long>& k, const std::vector<Rat>& omega) const {
    return dot(omega, k) == 0;
}

namespace {

// Fast certified minimum of |k.omega| over the nonresonant part of the box
// for d = 2; exhaustive scan otherwise.
void scan_min_nonresonant(const std::vector<Rat>& omega, long cutoff, Rat& best,
                          std::vector<long>& witness) {
    size_t d = omega.size();
    best = 0;
    auto consider = [&](const std::vector<long>& k, const Rat& val) {
        Rat a = abs(val);
        if (best == 0 || (a != 0 && a < best)) {
            best = a;
            witness = k;
        }
    };
    if (d == 2 && (omega[0] != 0 || omega[1] != 0)) {
        size_t piv = omega[0] != 0 ? 0 : 1, oth = 1 - piv;
        for (long ko = 0; ko <= cutoff; ++ko) {
            if (ko == 0) {
                std::vector<long> k(2, 0);
                k[piv] = 1;
                consider(k, omega[piv]);
                continue;
            }
            // nearest integers to the exact minimizer of |k_piv w_piv + ko w_oth|
            Rat t = -Rat(ko) * omega[oth] / omega[piv];
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
            for (long off = 0; off <= 1; ++off) {
                Int cand = fl + off;
                if (cand > cutoff) cand = cutoff;
                if (cand < -cutoff) cand = -cutoff;
                std::vector<long> k(2, 0);
                k[piv] = static_cast<long>(cand.get_si());
                k[oth] = ko;
                Rat val = dot(omega, k);
                if (val != 0 || k[piv] != 0 || ko != 0) {
                    if (val != 0) consider(k, val);
                }
            }
        }
        return;
    }
    // exhaustive box scan for small instances
    double size = std::pow(2.0 * cutoff + 1, static_cast<double>(d));
    if (size > 4e6)
        throw std::invalid_argument("cutoff too large for exhaustive certification in d > 2");
    std::vector<long> k(d, -cutoff);
    while (true) {
        bool zero_vec = std::all_of(k.begin(), k.end(), [](long v) { return v == 0; });
        if (!zero_vec) {
            Rat val = dot(omega, k);
            if (val != 0) consider(k, val);
        }
        size_t pos = 0;
        while (pos < d && k[pos] == cutoff) {
            k[pos] = -cutoff;
            ++pos;
        }
        if (pos == d) break;
        ++k[pos];
    }
}

}  // namespace

DistributionBasis invariant_distributions(const TorusFlow& flow, long cutoff, double atol) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    size_t d = flow.dim();
    DistributionBasis out;
    out.exact_frequencies = !flow.approximate;
    out.atol = atol;

    // resonant modes in the box: iterate the non-pivot coordinates and solve
    // the pivot coordinate exactly
    size_t piv = 0;
    while (piv < d && flow.omega[piv] == 0) ++piv;
    std::vector<long> k(d, 0);
    std::vector<size_t> free_idx;
    for (size_t i = 0; i < d; ++i)
        if (i != piv) free_idx.push_back(i);
    std::vector<long> free_vals(free_idx.size(), -cutoff);
    while (true) {
        for (size_t i = 0; i < free_idx.size(); ++i) k[free_idx[i]] = free_vals[i];
        // pivot coordinate: k_piv = -(sum_{i != piv} k_i w_i) / w_piv
        Rat rest(0);
        for (size_t i = 0; i < d; ++i)
            if (i != piv) rest += flow.omega[i] * Rat(k[i]);
        Rat t = -rest / flow.omega[piv];
        if (t.get_den() == 1 && abs(t.get_num()) <= cutoff) {
            k[piv] = static_cast<long>(t.get_num().get_si());
            out.modes.push_back(k);
        }
        if (free_idx.empty()) break;
        size_t pos = 0;
        while (pos < free_idx.size() && free_vals[pos] == cutoff) {
            free_vals[pos] = -cutoff;
            ++pos;
        }
        if (pos == free_idx.size()) break;
        ++free_vals[pos];
    }
    std::sort(out.modes.begin(), out.modes.end());

    scan_min_nonresonant(flow.omega, cutoff, out.min_abs_nonresonant, out.min_witness);
    if (out.min_abs_nonresonant != 0 && out.min_abs_nonresonant.get_d() < atol && !out.min_witness.empty())
        out.near_resonances.push_back(out.min_witness);
    return out;
}

CohomologicalSolution solve_cohomological(const TorusFlow& flow, const FourierFunction& f) {
    if (f.d != 0 && f.d != flow.dim())
        throw std::invalid_argument("function dimension does not match the flow");
    if (!f.reality_ok()) throw std::invalid_argument("Fourier data violates its reality flag");
    CohomologicalSolution out;
    out.u_scaled.d = flow.dim();
    for (const auto& [k, c] : f.coeffs) {
        Rat divisor = dot(flow.omega, k);
        if (divisor == 0) {
            if (!c.is_zero()) out.obstructions.emplace_back(k, c);
        } else {
            out.u_scaled.set(k, c / divisor);
        }
    }
    return out;
}

DiophantineEstimate diophantine_type(const std::vector<Rat>& omega, long depth) {
    if (omega.size() < 2) throw std::invalid_argument("diophantine_type needs d >= 2");
    DiophantineEstimate est;

    struct Candidate {
        long norm;
        std::vector<long> k;
        Rat value;
    };
    std::vector<Candidate> cands;
    auto visit = [&](const std::vector<long>& k) {
        Rat v = dot(omega, k);
        long norm = 0;
        for (long x : k) norm = std::max(norm, std::labs(x));
        if (v == 0) {
            est.resonant = true;
            if (est.resonance_witness.empty()) est.resonance_witness = k;
            return;
        }
        cands.push_back({norm, k, abs(v)});
    };

    if (omega.size() == 2 && omega[0] != 0) {
        for (long k2 = 0; k2 <= depth; ++k2) {
            if (k2 == 0) {
                visit({1, 0});
                continue;
            }
            Rat t = -Rat(k2) * omega[1] / omega[0];
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
            for (long off = 0; off <= 1; ++off) {
                Int c = fl + off;
                if (c > depth) c = depth;
                if (c < -depth) c = -depth;
                visit({static_cast<long>(c.get_si()), k2});
            }
        }
    } else {
        double size = std::pow(2.0 * depth + 1, static_cast<double>(omega.size()));
        if (size > 4e6) throw std::invalid_argument("depth too large for exhaustive scan in d > 2");
        std::vector<long> k(omega.size(), -depth);
        while (true) {
            if (std::any_of(k.begin(), k.end(), [](long v) { return v != 0; })) visit(k);
            size_t pos = 0;
            while (pos < k.size() && k[pos] == depth) {
                k[pos] = -depth;
                ++pos;
            }
            if (pos == k.size()) break;
            ++k[pos];
        }
    }
    if (est.resonant) return est;

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.k < b.k;
    });
    Rat best(0);
    for (const auto& c : cands) {
        if (best == 0 || c.value < best) {
            best = c.value;
            est.records.push_back({c.norm, c.k, c.value});
        }
    }

    // steepest record-to-record decay exponent and the matching constant
    double tau = 0;
    for (size_t i = 0; i + 1 < est.records.size(); ++i)
        for (size_t j = i + 1; j < est.records.size(); ++j) {
            const auto& a = est.records[i];
            const auto& b = est.records[j];
            if (a.norm == b.norm) continue;
            double slope = (log10_abs(a.value) - log10_abs(b.value)) /
                           (std::log10(double(b.norm)) - std::log10(double(a.norm)));
            tau = std::max(tau, slope);
        }
    est.tau_hat = tau;
    double c_hat = 1e300;
    for (const auto& r : est.records)
        c_hat = std::min(c_hat, std::pow(10.0, log10_abs(r.value) + tau * std::log10(double(r.norm))));
    est.c_hat = est.records.empty() ? 0 : c_hat;
    return est;
}

std::vector<std::pair<Int, Int>> continued_fraction_convergents(const Rat& x, size_t max_terms) {
    std::vector<std::pair<Int, Int>> conv;
    Int p_prev(1), q_prev(0), p_cur(0), q_cur(1);  // (p_{-1}, q_{-1}), (p_0 pending)
    Rat rest = x;
    for (size_t i = 0; i < max_terms; ++i) {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        Int p = a * p_cur + p_prev;
        Int q = a * q_cur + q_prev;
        conv.emplace_back(p, q);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p;
        q_cur = q;
        Rat frac = rest - Rat(a);
        if (frac == 0) break;
        rest = 1 / frac;
    }
    return conv;
}

std::vector<std::vector<Rat>> liouville_truncation_schedule(int n_max) {
    std::vector<std::vector<Rat>> out;
    Rat acc(0);
    Int fact(1);
    for (int n = 1; n <= n_max; ++n) {
        fact *= n;
        Int den(1);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fact.get_ui());
        acc += Rat(Int(1), den);
        out.push_back({Rat(1), acc});
    }
    return out;
}

std::vector<DemoMode> liouville_demo_function(long box_radius, int witness_depth) {
    std::vector<DemoMode> modes;
    for (long k1 = -box_radius; k1 <= box_radius; ++k1)
        for (long k2 = -box_radius; k2 <= box_radius; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            modes.push_back({{k1, k2}, -double(std::labs(k1) + std::labs(k2))});
        }
    // convergent-scale witnesses k = (-L_j 10^{j!}, 10^{j!}) of the schedule
    auto schedule = liouville_truncation_schedule(witness_depth);
    Int fact(1);
    for (int j = 1; j <= witness_depth; ++j) {
        fact *= j;
        Int q;
        mpz_ui_pow_ui(q.get_mpz_t(), 10, fact.get_ui());
        if (mpz_sizeinbase(q.get_mpz_t(), 2) > 62) break;  // beyond long range
        Rat lj = schedule[j - 1][1];
        Rat p = lj * Rat(q);  // integer by construction of the truncation
        long k1 = -static_cast<long>(p.get_num().get_si());
        long k2 = static_cast<long>(q.get_si());
        if (std::labs(k1) <= box_radius && std::labs(k2) <= box_radius) continue;  // already in the box
        modes.push_back({{k1, k2}, -double(std::labs(k1) + std::labs(k2))});
    }
    return modes;
}

std::vector<LiouvilleRow> liouville_blowup_demo(const std::vector<std::vector<Rat>>& omega_sequence,
                                                const std::vector<DemoMode>& modes) {
    std::vector<LiouvilleRow> rows;
    const double log10_2 = std::log10(2.0);
    const double log10_2pi = std::log10(2.0 * M_PI);
    double h2 = 0;
    for (const auto& m : modes) {
        double mag = std::pow(2.0, std::max(m.log2_coeff, -500.0));
        double k2 = 0;
        for (long x : m.k) k2 += double(x) * double(x);
        h2 += std::pow(1.0 + k2, 2.0) * mag * mag;
    }
    h2 = std::sqrt(h2);

    int depth = 0;
    for (const auto& omega : omega_sequence) {
        ++depth;
        LiouvilleRow row;
        row.depth = depth;
        row.omega_second = omega.size() > 1 ? omega[1] : Rat(0);
        row.sobolev_h2_f = h2;
        row.obstruction_count = 0;
        double best = -1e308, best_div = 1e308;
        for (const auto& m : modes) {
            Rat divisor(0);
            for (size_t i = 0; i < omega.size(); ++i) divisor += omega[i] * Rat(m.k[i]);
            if (divisor == 0) {
                ++row.obstruction_count;
                continue;
            }
            double ld = log10_abs(divisor);
            double lu = m.log2_coeff * log10_2 - log10_2pi - ld;
            if (lu > best) {
                best = lu;
                row.argmax = m.k;
            }
            if (ld < best_div) {
                best_div = ld;
                row.divisor_witness = m.k;
            }
        }
        row.max_log10_u = best;
        row.min_log10_divisor = best_div;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<long> pullback_distribution(const IntMat& p, const std::vector<long>& dist,
                                        const std::vector<Rat>& omega_total) {
    if (p.empty()) throw std::invalid_argument("pullback: empty projection");
    size_t m = p.size(), n = p[0].size();
    if (dist.size() != m) throw std::invalid_argument("pullback: distribution dimension mismatch");
    if (omega_total.size() != n) throw std::invalid_argument("pullback: frequency dimension mismatch");
    if (!is_surjective_over_Z(p))
        throw std::invalid_argument("pullback: projection is not surjective over Z (nontrivial cokernel)");

    // factor frequency P omega; dist must be resonant for it
    Rat pairing(0);
    for (size_t i = 0; i < m; ++i) {
        Rat row(0);
        for (size_t j = 0; j < n; ++j) row += Rat(p[i][j]) * omega_total[j];
        pairing += Rat(dist[i]) * row;
    }
    if (pairing != 0)
        throw std::invalid_argument("pullback: distribution is not resonant for the factor frequency");

    std::vector<long> out(n, 0);
    for (size_t j = 0; j < n; ++j) {
        Int acc(0);
        for (size_t i = 0; i < m; ++i) acc += p[i][j] * Int(dist[i]);
        out[j] = static_cast<long>(acc.get_si());
    }
    return out;
}

Rat golden_ratio_64() {
    // round((1+sqrt(5))/2 * 2^63) / 2^63
    Int two63 = Int(1) << 63;
    Int five_sq;  // floor(sqrt(5 * 2^252)) gives 126-bit headroom for rounding
    Int five = Int(5) * (Int(1) << 252);
    mpz_sqrt(five_sq.get_mpz_t(), five.get_mpz_t());
    // golden * 2^63 = (2^63 + sqrt(5)*2^63)/2 = (2^63 + five_sq >> 63)/2 up to rounding
    Int num = (two63 + (five_sq >> 63) + 1) / 2;
    Rat g(num, two63);
    g.canonicalize();
    return g;
}

}  // namespace homflow::torus
