#pragma once

#include "rislink/metrics.hpp"

namespace rislink {

// m_ris identical surfaces dropped uniformly in a disc of the given radius
// around the user; the serving surface is the nearest one.  Path loss
// (bs_distance * r)^-pathloss_exp in the far-field composition; avg_snr in
// the template is the pre-path-loss SNR.
struct DeploymentScene {
    int m_ris = 1;
    double radius = 1.0;
    double bs_distance = 1.0;
    double pathloss_exp = 2.0;
    RisLink link_template;
};

// Nearest-surface distance pdf (2M/x)(1-(x/R)^2)^(M-1)(x/R)^2 on (0, R);
// DomainError outside.
double nearest_pdf(double x, const DeploymentScene& scene);

// Distance-averaged outage as the M-term alternating binomial sum of
// multivariate H evaluations; Kahan-compensated, AlternatingSumLoss when
// more than 6 digits cancel.
MultiEvalResult spatial_outage(const DeploymentScene& scene, const OutageQuery& q);

// Independent route: 1-D quadrature of the conditional outage against
// nearest_pdf.  exact_kernel swaps (d*r)^-alpha for (d+r)^-alpha.
EvalResult spatial_outage_quadrature(const DeploymentScene& scene, const OutageQuery& q,
                                     bool exact_kernel = false);

// AM-GM bound averaged in closed form over the nearest-surface distance;
// single-variable H.
EvalResult spatial_outage_upper(const DeploymentScene& scene, const OutageQuery& q);

// Residue law for the deployment: the link coefficient picks up
// (d*R)^(alpha/2 * zeta_i) per element and the distance average contributes
// Gamma(M+1)Gamma(1+beta/2)/Gamma(1+beta/2+M), beta = alpha/2*sum zeta.
// Simple poles only; HigherOrderPole otherwise.
AsymptoticOutage spatial_asymptotic(const DeploymentScene& scene);

// Large-M limit of the upper bound: the distance factor collapses into a
// per-element M^(-alpha/4) argument rescale.  Heuristic for m_ris >= 10.
EvalResult scaling_law_large_m(const DeploymentScene& scene, const OutageQuery& q);

} // namespace rislink
