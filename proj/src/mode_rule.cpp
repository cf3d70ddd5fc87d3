#include "sonoqed/mode_rule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sonoqed/errors.hpp"
#include "sonoqed/numeric.hpp"

namespace sonoqed {

double Panel::x_at(double t, double* jac) const {
    switch (map) {
    case PanelMap::linear:
        *jac = 1.0;
        return t;
    case PanelMap::tan_up: {
        const double c = std::cos(t);
        *jac = width / (c * c);
        return center + width * std::tan(t);
    }
    case PanelMap::tan_down: {
        const double c = std::cos(t);
        *jac = width / (c * c);
        return center - width * std::tan(t);
    }
    }
    return t;
}

double Panel::x_lo() const {
    double j;
    return map == PanelMap::tan_down ? x_at(t1, &j) : x_at(t0, &j);
}

double Panel::x_hi() const {
    double j;
    return map == PanelMap::tan_down ? x_at(t0, &j) : x_at(t1, &j);
}

void RuleNodes::clear() {
    x.clear();
    wk.clear();
    wg.clear();
    g.clear();
    dg.clear();
    panel.clear();
}

void RuleNodes::reserve(std::size_t n) {
    x.reserve(n);
    wk.reserve(n);
    wg.reserve(n);
    g.reserve(n);
    dg.reserve(n);
    panel.reserve(n);
}

namespace {

void push_linear(std::vector<Panel>& out, double lo, double hi, double max_len) {
    if (!(hi > lo)) return;
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_len)));
    for (int i = 0; i < n; ++i) {
        Panel p;
        p.t0 = lo + (hi - lo) * i / n;
        p.t1 = (i + 1 == n) ? hi : lo + (hi - lo) * (i + 1) / n;
        out.push_back(p);
    }
}

// One side of a resonance: tan-mapped core, then panels growing away from it.
void push_anchored(std::vector<Panel>& out, const Resonance& r, double length, int sign, double max_len,
                   const RuleOptions& opt) {
    const double theta_max = std::atan(opt.core_halfwidths);
    for (int i = 0; i < opt.core_panels; ++i) {
        Panel p;
        p.map = sign > 0 ? PanelMap::tan_up : PanelMap::tan_down;
        p.center = r.x;
        p.width = r.width;
        p.t0 = theta_max * i / opt.core_panels;
        p.t1 = theta_max * (i + 1) / opt.core_panels;
        out.push_back(p);
    }
    double d = opt.core_halfwidths * r.width;
    while (d < length) {
        const double d2 = std::min(opt.grading * d, length);
        if (sign > 0)
            push_linear(out, r.x + d, r.x + d2, max_len);
        else
            push_linear(out, r.x - d2, r.x - d, max_len);
        d = d2;
    }
}

} // namespace

ModeRule::ModeRule(int l, double n_inside, double n_outside, double x_lo, double x_hi, const RuleOptions& opt,
                   bool parallel)
    : l_(l), n_inside_(n_inside), n_outside_(n_outside), parallel_(parallel) {
    if (!(x_hi > x_lo) || !(x_lo > 0.0)) throw ValidationError("rule range", "need 0 < x_lo < x_hi");
    resonances_ = find_resonances(l, n_inside, n_outside, x_lo, x_hi);
    const double max_len = opt.panel_width / std::max(n_inside, n_outside);

    auto is_sharp = [&](const Resonance* r) { return r && r->width < opt.sharp_threshold * r->x; };
    std::vector<double> bps{x_lo};
    std::vector<const Resonance*> anchors{nullptr};
    for (const auto& r : resonances_) {
        bps.push_back(r.x);
        anchors.push_back(&r);
        if (is_sharp(&r)) sharp_.push_back(r);
    }
    bps.push_back(x_hi);
    anchors.push_back(nullptr);

    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double a = bps[i], b = bps[i + 1];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b), half = mid - a;
        const Resonance* left = anchors[i];
        const Resonance* right = anchors[i + 1];
        // the background next to a trapped (sharp) mode is negligible
        if (!is_sharp(left)) {
            if (!left || opt.core_halfwidths * left->width >= half)
                push_linear(panels_, a, mid, max_len);
            else
                push_anchored(panels_, *left, half, +1, max_len, opt);
        }
        if (!is_sharp(right)) {
            if (!right || opt.core_halfwidths * right->width >= half)
                push_linear(panels_, mid, b, max_len);
            else
                push_anchored(panels_, *right, half, -1, max_len, opt);
        }
    }
    std::stable_sort(panels_.begin(), panels_.end(),
                     [](const Panel& p, const Panel& q) { return p.x_lo() < q.x_lo(); });
    rebuild(std::vector<int>(panels_.size(), -1));
}

void ModeRule::evaluate_panel(const Panel& p, int tag, RuleNodes& out) const {
    const auto& kr = gauss_kronrod15();
    const double mid = 0.5 * (p.t0 + p.t1), h = 0.5 * (p.t1 - p.t0);
    for (int k = 0; k < 15; ++k) {
        double jac = 0.0;
        const double x = p.x_at(mid + h * kr.node[k], &jac);
        auto parts = match_parts(l_, x, n_inside_, n_outside_);
        double rho = parts.rho_sq_reduced();
        if (!(rho > 0.0) || !std::isfinite(rho)) {
            parts = match_parts(l_, x * (1.0 + 1e-12), n_inside_, n_outside_);
            rho = parts.rho_sq_reduced();
            if (!(rho > 0.0) || !std::isfinite(rho))
                throw NumericalError("mode matching degenerate at l = " + std::to_string(l_) +
                                     ", x = " + std::to_string(x));
        }
        const auto v = normalized_interior(parts);
        out.x.push_back(x);
        out.wk.push_back(kr.kronrod_weight[k] * h * jac);
        out.wg.push_back(kr.gauss_weight[k] * h * jac);
        out.g.push_back(v.g);
        out.dg.push_back(v.dg);
        out.panel.push_back(tag);
    }
}

void ModeRule::rebuild(const std::vector<int>& reuse) {
    const long np = static_cast<long>(panels_.size());
    std::vector<RuleNodes> blocks(panels_.size());
    for (long i = 0; i < np; ++i)
        if (reuse[i] >= 0) blocks[i] = std::move(blocks_[reuse[i]]);
#pragma omp parallel for schedule(dynamic, 4) if (parallel_)
    for (long i = 0; i < np; ++i)
        if (reuse[i] < 0) evaluate_panel(panels_[i], static_cast<int>(i), blocks[i]);
    blocks_ = std::move(blocks);
    magnitude_.assign(panels_.size(), 0.0);
    nodes_.clear();
    nodes_.reserve(15 * panels_.size() + sharp_.size());
    for (const auto& r : sharp_) {
        nodes_.x.push_back(r.x);
        nodes_.wk.push_back(1.0);
        nodes_.wg.push_back(1.0);
        nodes_.g.push_back(r.point.g);
        nodes_.dg.push_back(r.point.dg);
        nodes_.panel.push_back(-1);
    }
    for (std::size_t p = 0; p < blocks_.size(); ++p) {
        auto& b = blocks_[p];
        for (auto& tag : b.panel) tag = static_cast<int>(p);
        for (std::size_t k = 0; k < b.size(); ++k)
            magnitude_[p] = std::max({magnitude_[p], std::abs(b.g[k]), std::abs(b.dg[k])});
        nodes_.x.insert(nodes_.x.end(), b.x.begin(), b.x.end());
        nodes_.wk.insert(nodes_.wk.end(), b.wk.begin(), b.wk.end());
        nodes_.wg.insert(nodes_.wg.end(), b.wg.begin(), b.wg.end());
        nodes_.g.insert(nodes_.g.end(), b.g.begin(), b.g.end());
        nodes_.dg.insert(nodes_.dg.end(), b.dg.begin(), b.dg.end());
        nodes_.panel.insert(nodes_.panel.end(), b.panel.begin(), b.panel.end());
    }
}

std::vector<int> ModeRule::split(const std::vector<int>& ids) {
    std::vector<int> origin;
    if (ids.empty()) {
        origin.resize(panels_.size());
        for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = static_cast<int>(i);
        return origin;
    }
    std::vector<char> mark(panels_.size(), 0);
    for (int i : ids) mark.at(static_cast<std::size_t>(i)) = 1;
    std::vector<Panel> next;
    next.reserve(panels_.size() + ids.size());
    origin.reserve(panels_.size() + ids.size());
    for (std::size_t i = 0; i < panels_.size(); ++i) {
        if (!mark[i]) {
            next.push_back(panels_[i]);
            origin.push_back(static_cast<int>(i));
            continue;
        }
        Panel a = panels_[i], b = panels_[i];
        const double m = 0.5 * (a.t0 + a.t1);
        a.t1 = m;
        b.t0 = m;
        a.depth = b.depth = panels_[i].depth + 1;
        // keep x order within the pair
        if (a.map == PanelMap::tan_down) std::swap(a, b);
        next.push_back(a);
        next.push_back(b);
        origin.push_back(-1);
        origin.push_back(-1);
    }
    panels_ = std::move(next);
    rebuild(origin);
    return origin;
}

} // namespace sonoqed
