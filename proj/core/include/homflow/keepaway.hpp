#pragma once

#include "homflow/int_lattice.hpp"
#include "homflow/polynomial.hpp"
#include "homflow/quad_field.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homflow::keepaway {

enum class SystemMode { DiscreteMap, Suspension };

/// Hyperbolic toral automorphism with its expanding/contracting splitting.
/// Eigendata lives in the real quadratic field of the characteristic
/// polynomial, so every geometric predicate downstream is decided exactly.
/// Time is measured in rescaled units: one unit expands leaf lengths by 4
/// (one map application is 1/t_unit units).
struct ToralHyperbolicSystem {
    IntMat a, a_inv;   // |det| = 1
    SystemMode mode = SystemMode::DiscreteMap;
    long disc = 0;     // trace^2 - 4 det, positive nonsquare

    Quad lambda_u, lambda_s;      // eigenvalues, |lambda_u| > 1
    Quad lambda_u_abs;
    QVec2 e_u, e_s;               // eigenvectors, rationally rescaled to ~unit length
    QVec2 u_row, s_row;           // functionals: v = u(v) e_u + s(v) e_s

    double lambda = 0;            // |lambda_u|
    double t_unit = 0;            // ln 4 / ln |lambda_u|; applications per rescaled unit
    long steps_per_unit = 0;      // ceil(t_unit)
    std::array<std::array<double, 2>, 1> unstable_basis{}, stable_basis{};

    Quad u_coord(const QVec2& v) const { return u_row.x * v.x + u_row.y * v.y; }
    Quad s_coord(const QVec2& v) const { return s_row.x * v.x + s_row.y * v.y; }
    QVec2 apply(const QVec2& v) const;
    QVec2 apply_inv(const QVec2& v) const;
    /// Largest admissible disc radius (torus injectivity scale).
    Rat radius_cap() const;
    double rescaled(long applications) const { return applications / t_unit; }
};

ToralHyperbolicSystem build_system(const IntMat& a, SystemMode mode = SystemMode::DiscreteMap);

/// Point on the torus, coordinates in [0,1) x [0,1) up to exact reduction.
using TorusPoint = QVec2;

TorusPoint reduce_mod1(const QVec2& v);
TorusPoint rational_point(const Rat& x, const Rat& y);
std::array<double, 2> to_doubles(const TorusPoint& p);
/// Torus distance (nearest-representative Euclidean metric), for reports.
double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b);

/// Leaf segment F_rho(x): {x + t e_u : |t| <= rho} in leaf units.
struct LeafDisc {
    TorusPoint center;
    Rat radius;
};
/// Transversal segment E_delta(x) along the contracting direction.
struct TransversalDisc {
    TorusPoint center;
    Rat radius;
};
/// Box V_{delta,rho}(x): union of leaf discs over the transversal.
struct VBox {
    TorusPoint center;
    Quad u_half, s_half;
};

LeafDisc leaf_disc(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& rho);
TransversalDisc transversal_disc(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& delta);
VBox v_neighborhood(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& delta, const Rat& rho);

/// Exact membership up to torus translation.
bool contains(const ToralHyperbolicSystem& sys, const VBox& box, const TorusPoint& p);
inline bool contains(const ToralHyperbolicSystem& sys, const LeafDisc& d, const TorusPoint& p) {
    return contains(sys, VBox{d.center, Quad(d.radius), Quad(Rat(0))}, p);
}

struct KeepAwayParams {
    Rat r;                      // leaf radius; 0 = choose automatically
    Rat delta;                  // transversal radius; 0 = r/4
    double step_h = 0.01;       // reporting step, rescaled units
    double t_max = 1000;        // validation horizon, rescaled units
    int max_stages = 20;
    long per_stage_cap = 400000;     // applications searched per stage
    long orbit_check_horizon = 64;   // distinct-orbit precheck length
    double window_radius = 0.08;     // enumeration window size
    double eta = 1e-3;               // minimal-set resolution
    double snap_scale = 5e-3;        // periodic-orbit detection scale
    long t_obs = 12000;              // omega-limit observation length, applications
    int period_cap = 4;              // largest snapped period
    double eps_sep = 1e-2;           // catalog separation floor
    int budget_factor = 8;           // keep-away attempts per requested set
    std::uint64_t seed = 0;
};

/// Open window W: metric ball on the torus.
struct Window {
    Rat cx, cy, radius;
};

struct Constants {
    TorusPoint x0;
    Rat r, delta;
    double margin;  // smallest certified gap over all disjointness conditions
};

/// Searches (x0, r, delta) satisfying the disjointness conditions with a
/// positive exact margin; shrinks geometrically until success or the 1e-6
/// floor. Targets must lie on pairwise distinct orbits.
Constants choose_constants(const ToralHyperbolicSystem& sys, const std::vector<TorusPoint>& targets,
                           const Window& window, const KeepAwayParams& params = {});

struct HitResult {
    bool hit = false;
    long applications = 0;  // tau in map applications
    size_t target = 0;
    IntVec lattice;         // translate certifying the intersection
};

/// First time the moving leaf disc F_r(phi^t x) meets a target box
/// V_{delta,r}(p_i); infinity (hit=false) if none before the cap.
HitResult first_hit_time(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& r,
                         const Rat& delta, const std::vector<TorusPoint>& targets, long cap_applications);

/// One bump of the construction: from a leaf disc touching a target box,
/// the next base point at leaf distance 3r beyond the transversal crossing.
struct StepOutcome {
    TorusPoint x_next;
    Quad sigma;     // leaf offset of x_hat from the crossing z
    Quad s_off;     // transversal offset, |s_off| <= delta certified
    Quad u_offset;  // leaf offset of x_next from x_hat
    IntVec lattice;
    bool annulus_certified = false;  // disc inside the closed 2r..4r ring
};

/// Requires F_r(x_hat) to meet V_{delta,r}(target); throws when the
/// transversal crossing is missing or not unique.
StepOutcome keepaway_step(const ToralHyperbolicSystem& sys, const TorusPoint& x_hat,
                          const TorusPoint& target, const Rat& r, const Rat& delta);

struct Stage {
    long tau_applications;
    double tau_rescaled;
    size_t target;
    TorusPoint x_next;           // next stage base point
    double sigma;                // leaf offset of the transversal crossing
    double u_offset;             // leaf offset x_{n+1} - x_hat
    double interval_center;      // D_n center in x0-leaf coordinates
    double interval_half_length;
    bool containment_certified;  // D_{n+1} inside D_n, exact
    bool annulus_certified;      // new disc inside the 2r..4r ring, exact
};

struct ValidationReport {
    bool ok = true;
    double first_violation_time = -1;  // rescaled
    std::vector<double> min_distance;  // per target, over the sampled horizon
    long steps_checked = 0;
};

struct KeepAwayTrace {
    TorusPoint x0;
    Rat r, delta;
    std::vector<Stage> stages;
    bool tau_infinite = false;      // some stage found no hit before the cap
    bool length_bounds_certified = true;  // |D_n| <= 2r 4^{-n}, exact
    ValidationReport validation;
};

struct KeepAwayResult {
    TorusPoint q;
    double epsilon;       // certified avoidance radius (inf when no targets)
    double kappa;         // metric inradius factor of the basis
    KeepAwayTrace trace;
};

KeepAwayResult run_keepaway(const ToralHyperbolicSystem& sys, const std::vector<TorusPoint>& targets,
                            const Window& window, const KeepAwayParams& params = {});

/// Finite approximation of a minimal set.
struct PointCloud {
    std::vector<std::array<double, 2>> points;
    bool periodic = false;
    int period = 0;
    std::vector<std::array<Rat, 2>> rational_orbit;  // exact points when periodic
    double invariance_residual = 0;  // Hausdorff distance to the image cloud
    double proximity = 0;            // sample-to-cloud witness distance
};

/// Extracts a minimal-set proxy from the tail of the orbit of q: an exactly
/// periodic orbit when one shadows the tail at the snap scale, otherwise the
/// closure of a most-recurrent segment with its measured residual.
PointCloud omega_limit_minimal(const ToralHyperbolicSystem& sys, const TorusPoint& q, double eta,
                               long t_obs_applications, const KeepAwayParams& params = {});

struct MinimalSetCatalog {
    std::vector<PointCloud> sets;
    std::vector<std::vector<double>> separations;  // pairwise Hausdorff distances
    bool complete = true;                          // false when the budget ran out
    int attempts = 0;
};

MinimalSetCatalog enumerate_minimal_sets(const ToralHyperbolicSystem& sys, int count_target,
                                         const KeepAwayParams& params = {});

double hausdorff_distance(const std::vector<std::array<double, 2>>& a,
                          const std::vector<std::array<double, 2>>& b);

}  // namespace homflow::keepaway
