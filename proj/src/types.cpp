// SPDX-License-Identifier: MIT
#include "relaynet/types.hpp"

namespace relaynet {

Params Params::defaults(double rho2) {
    Params p;
    p.rho2 = rho2;
    p.rho1 = 0.75 * rho2;
    p.rho0 = 0.1 * rho2;
    p.a = 10.0 / rho2;
    p.b = 0.6 * rho2;
    p.beta = 1.5;
    p.eps_w = 0.05 * rho2;
    p.eps_f = 0.05 * rho2;
    p.alpha = 0.05;
    p.dt = 0.01;
    p.vmax = rho2 / 10.0;
    p.icp_period = 25;
    return p;
}

}  // namespace relaynet
