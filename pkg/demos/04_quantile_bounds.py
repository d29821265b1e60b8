#!/usr/bin/env python3
"""Quantile treatment-effect bounds in the changes-in-changes design.

Outcomes here are nonlinear in unobservables, so instead of mean
contrasts the counterfactual DISTRIBUTION is recovered by composing
empirical CDFs.  Anticipation contaminates the treated pre-period sample;
two separate routes bound the quantile effect and the tighter one wins:
a fixed-point route using the magnitude restriction (phi) and a shifted-
quantile route using the anticipation cap (phi-tilde).
"""

import numpy as np

from antebounds import (
    CicDgpConfig,
    SignRegime,
    cic_identified_set,
    cic_m,
    counterfactual_quantile,
    generate_cic,
    solve_phi,
)


def main():
    print("=" * 68)
    print("CHANGES-IN-CHANGES BOUNDS UNDER ANTICIPATION")
    print("=" * 68)

    # Clean world first: no anticipation, the composition nails the
    # counterfactual quantile analytically known from the DGP.
    clean = CicDgpConfig(
        n=50_000, effect=0.5, lam=0.0, slope=0.5, intercept=0.25,
        u_lo=0.1, u_hi=0.9, seed=11,
    )
    data = generate_cic(clean)
    print("\ncounterfactual quantile vs analytic truth (no anticipation):")
    print(f"{'q':>5} {'estimate':>10} {'truth':>8}")
    for q in (0.1, 0.3, 0.5, 0.7, 0.9):
        est = counterfactual_quantile(q, data.treated_t0, data.control_t0, data.control_t1)
        print(f"{q:>5.1f} {est:>10.4f} {clean.true_counterfactual_quantile(q):>8.4f}")

    # Now contaminate: 30% of treated anticipate and shift up 0.3 early.
    cfg = CicDgpConfig(
        n=50_000, effect=0.5, tau_shift=0.3, lam=0.3, slope=0.5,
        intercept=0.25, seed=12,
    )
    data = generate_cic(cfg)
    regime = SignRegime(sign_mu=+1, sign_tau=+1)
    pi = 0.4

    print(f"\ntrue quantile effect {cfg.effect} at every q; anticipators shift "
          f"{cfg.tau_shift:+} early")
    print(f"{'q':>5} {'m(q)':>8} {'phi_u':>9} {'phi~_u':>9} {'interval':>22}")
    for q in (0.25, 0.5, 0.75):
        res = cic_identified_set(q, pi, regime, data)
        phi_u = "absent" if res.phi_u is None else f"{res.phi_u:.4f}"
        pt = "unbounded" if np.isinf(res.phi_tilde_u) else f"{res.phi_tilde_u:.4f}"
        iv = f"[{res.interval.lower:.4f}, {res.interval.upper:.4f}]"
        print(f"{q:>5.2f} {res.m_q:>8.4f} {phi_u:>9} {pt:>9} {iv:>22}")
    print("same-signs regime: m(q) is the lower end (anticipation drags it")
    print("down) and the tighter of the two routes caps the top.")

    # The fixed-point route pins the effect exactly when everyone
    # anticipates by exactly the effect size.
    sharp = CicDgpConfig(
        n=50_000, effect=0.5, tau_shift=0.5, lam=1.0, slope=0.5,
        intercept=0.25, seed=13,
    )
    data = generate_cic(sharp)
    print("\nfixed-point route when anticipation is maximal (lam=1, tau=mu):")
    for q in (0.25, 0.5, 0.75):
        root = solve_phi(q, "upper", +1, data)
        print(f"  q={q}: m(q) = {cic_m(q, data):+.4f}, phi_u root = {root:.4f} "
              f"(truth {sharp.effect})")
    print("the observed pre-period is shifted by the full effect; solving the")
    print("fixed-point equation undoes exactly that shift.")


if __name__ == "__main__":
    main()
