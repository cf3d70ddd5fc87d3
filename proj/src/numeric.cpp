#include "sonoqed/numeric.hpp"

namespace sonoqed {

namespace {

// abscissae and weights from QUADPACK qk15
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

KronrodRule make_rule() {
    KronrodRule r{};
    for (int i = 0; i < 7; ++i) {
        r.node[i] = -xgk[i];
        r.node[14 - i] = xgk[i];
        r.kronrod_weight[i] = r.kronrod_weight[14 - i] = wgk[i];
        double g = (i % 2 == 1) ? wg[i / 2] : 0.0;
        r.gauss_weight[i] = r.gauss_weight[14 - i] = g;
    }
    r.node[7] = 0.0;
    r.kronrod_weight[7] = wgk[7];
    r.gauss_weight[7] = wg[3];
    return r;
}

} // namespace

const KronrodRule& gauss_kronrod15() {
    static const KronrodRule rule = make_rule();
    return rule;
}

} // namespace sonoqed
