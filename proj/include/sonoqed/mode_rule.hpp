#pragma once

#include <vector>

#include "sonoqed/modes.hpp"

namespace sonoqed {

// Quadrature over the frequency of one mode family (fixed l, fixed indices)
// that knows where |A|^2 peaks. Peaks narrower than sharp_threshold * x are
// replaced by a single node carrying their integrated weight; the others get
// a tan-mapped core and geometrically growing panels around them.
struct RuleOptions {
    double panel_width = 2.0; // initial panel length in units of 1/max(n_inside, n_outside)
    double sharp_threshold = 1e-9;
    double core_halfwidths = 20.0;
    int core_panels = 4;
    double grading = 4.0;
};

enum class PanelMap { linear, tan_up, tan_down };

struct Panel {
    PanelMap map = PanelMap::linear;
    double t0 = 0.0, t1 = 0.0;
    double center = 0.0, width = 0.0; // resonance centre and half width for the tan maps
    int depth = 0;

    double x_lo() const;
    double x_hi() const;
    // x(t) and dx/dt
    double x_at(double t, double* jac) const;
    // inverse of x_at for linear panels only
    bool contains_x(double x) const { return x > x_lo() && x < x_hi(); }
};

// Structure of arrays. Panel nodes come in blocks of 15 (Kronrod order); the
// Gauss weight is zero on the Kronrod-only points. Point nodes have panel -1.
struct RuleNodes {
    std::vector<double> x, wk, wg, g, dg;
    std::vector<int> panel;

    std::size_t size() const { return x.size(); }
    void clear();
    void reserve(std::size_t n);
};

class ModeRule {
  public:
    ModeRule(int l, double n_inside, double n_outside, double x_lo, double x_hi, const RuleOptions& opt,
             bool parallel = true);

    int l() const { return l_; }
    double n_inside() const { return n_inside_; }
    double n_outside() const { return n_outside_; }
    const std::vector<Panel>& panels() const { return panels_; }
    const std::vector<Resonance>& resonances() const { return resonances_; }
    const RuleNodes& nodes() const { return nodes_; }

    // Bisect the listed panels and rebuild the node table. Order is kept.
    // Returns, for every new panel, the index of the panel it came from if it
    // is unchanged, or -1 if it is a fresh half.
    std::vector<int> split(const std::vector<int>& ids);

    // Point nodes come first, then 15 nodes per panel in panel order.
    std::size_t point_count() const { return sharp_.size(); }
    std::size_t panel_offset(std::size_t p) const { return sharp_.size() + 15 * p; }

    // Largest |A J|, |A J'| over the nodes of a panel.
    double panel_magnitude(std::size_t p) const { return magnitude_[p]; }

    // 15 Kronrod nodes of an arbitrary panel appended to out, tagged with tag.
    void evaluate_panel(const Panel& p, int tag, RuleNodes& out) const;

  private:
    void rebuild(const std::vector<int>& reuse);

    int l_;
    double n_inside_, n_outside_;
    bool parallel_;
    std::vector<Panel> panels_;
    std::vector<Resonance> resonances_;
    std::vector<Resonance> sharp_;
    std::vector<RuleNodes> blocks_;
    std::vector<double> magnitude_;
    RuleNodes nodes_;
};

} // namespace sonoqed
