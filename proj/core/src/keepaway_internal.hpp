#pragma once

// Shared internals of the keep-away engine: the exact orbit cursor with a
// certified double shadow, and the exact lattice-translate meet tests.
// Not installed; keepaway.cpp and minimal_sets.cpp only.

#include "homflow/keepaway.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace homflow::keepaway::detail {

long norm_inf(const IntMat& m);

struct MeetResult {
    bool meets = false;
    IntVec lattice;
    double margin = 1e308;  // smallest separation slack when disjoint
};

/// Does the annulus {|u| in [u_lo, u_hi], |s| <= s_a} at c1 meet the box
/// {|u| <= u_b, |s| <= s_b} at c2 modulo Z^2? u_lo <= 0 degenerates to the
/// plain box-box test. Decided exactly.
MeetResult annulus_box_meet(const ToralHyperbolicSystem& sys, const QVec2& c1, const Quad& u_lo,
                            const Quad& u_hi, const Quad& s_a, const QVec2& c2, const Quad& u_b,
                            const Quad& s_b);

struct ExactHit {
    bool hit = false;
    size_t target = 0;
    IntVec lattice;
    Quad sigma;  // leaf offset of the tested point relative to the target
    Quad s_off;  // transversal offset
};

/// Exact test whether F_r(x) meets some V_{delta,r}(p_i); equivalently the
/// center x lies in the |u| <= 2r, |s| <= delta box around a target modulo
/// Z^2. The double shadow with its error bound prefilters the exact work.
ExactHit hit_test(const ToralHyperbolicSystem& sys, const TorusPoint& x,
                  const std::array<double, 2>& xd, double err, const std::vector<TorusPoint>& targets,
                  const std::vector<std::array<double, 2>>& targets_d, const Rat& r, const Rat& delta);

/// Steps an exact orbit while maintaining a double shadow whose error bound
/// is tracked rigorously and reset by periodic refreshes from the exact
/// value; prefilters stay certified at any horizon.
class OrbitCursor {
  public:
    OrbitCursor(const ToralHyperbolicSystem& sys, TorusPoint start)
        : sys_(&sys), x_(reduce_mod1(start)), norm_a_(double(norm_inf(sys.a))) {
        refresh();
    }

    void step() {
        QVec2 y = sys_->apply(x_);
        double yx = sys_->a[0][0].get_d() * xd_[0] + sys_->a[0][1].get_d() * xd_[1];
        double yy = sys_->a[1][0].get_d() * xd_[0] + sys_->a[1][1].get_d() * xd_[1];
        err_ = norm_a_ * err_ + 4e-16;
        long mx = shadow_floor(yx, y.x);
        long my = shadow_floor(yy, y.y);
        x_ = {y.x - Quad(Rat(mx)), y.y - Quad(Rat(my))};
        xd_ = {yx - double(mx), yy - double(my)};
        if (++since_refresh_ >= 8 || err_ > 1e-10) refresh();
    }

    const TorusPoint& point() const { return x_; }
    const std::array<double, 2>& shadow() const { return xd_; }
    double shadow_error() const { return err_; }

  private:
    long shadow_floor(double approx, const Quad& exact) {
        double fl = std::floor(approx);
        double frac = approx - fl;
        if (frac > err_ + 1e-12 && frac < 1.0 - err_ - 1e-12) return static_cast<long>(fl);
        return static_cast<long>(quad_floor(exact).get_si());
    }
    void refresh() {
        xd_ = to_doubles(x_);
        err_ = 1e-14;
        since_refresh_ = 0;
    }

    const ToralHyperbolicSystem* sys_;
    TorusPoint x_;
    std::array<double, 2> xd_{};
    double err_ = 0;
    int since_refresh_ = 0;
    double norm_a_;
};

}  // namespace homflow::keepaway::detail
