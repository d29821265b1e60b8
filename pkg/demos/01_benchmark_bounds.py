#!/usr/bin/env python3
"""Benchmark bounds: what anticipation does to a two-period DID contrast.

Simulates a panel in which 30% of treated units react one period early,
shows the bias this puts into the plain DID estimate, and recovers an
interval that provably contains the true effect.  Ends by reproducing two
published identified sets from their reported point estimates.
"""

import numpy as np

from antebounds import (
    DgpConfig,
    GTransform,
    SignRegime,
    did_estimand,
    generate_two_period,
    identified_set_benchmark,
    treatment_ratio,
)


def main():
    print("=" * 68)
    print("BENCHMARK BOUNDS UNDER ANTICIPATORY BEHAVIOR")
    print("=" * 68)

    # True effect +1.0; anticipators shift down 0.6 one period early.
    cfg = DgpConfig(n=50_000, mu=1.0, tau=-0.6, lam=0.3, seed=7)
    panel = generate_two_period(cfg)
    g = GTransform.identity()

    m_hat = did_estimand(panel, g)
    print(f"\ntrue effect (mu):            {cfg.mu:+.3f}")
    print(f"anticipatory effect (tau):   {cfg.tau:+.3f} on {cfg.lam:.0%} of treated")
    print(f"plain DID contrast (m-hat):  {m_hat:+.4f}")
    print(f"  -> biased by -lam*tau = {-cfg.lam * cfg.tau:+.3f}: the pre-period")
    print("     already moved, so the change over time looks too large.")

    # The anticipation share is unobservable; cap it by the treatment ratio.
    pi = treatment_ratio(panel)
    regime = SignRegime(sign_mu=+1, sign_tau=-1)
    interval = identified_set_benchmark(m_hat, pi, regime)
    print(f"\nanticipation cap pi = treated share = {pi:.3f}")
    print(f"identified set: [{interval.lower:.4f}, {interval.upper:.4f}]")
    print(f"contains the true effect {cfg.mu}: {interval.contains(cfg.mu)}")

    print("\nHow the interval reacts to the cap:")
    print(f"{'pi':>6} {'lower':>10} {'upper':>10}")
    for p in (0.0, 0.1, 0.25, 0.5, 0.75):
        iv = identified_set_benchmark(m_hat, p, regime)
        print(f"{p:>6.2f} {iv.lower:>10.4f} {iv.upper:>10.4f}")
    print("The contrast itself is always one endpoint; the other shrinks it")
    print("by 1/(1+pi) because opposite-signed anticipation inflates m-hat.")

    # Published point estimates map straight onto intervals.
    print("\nReproducing published sets from reported estimates (pi = 0.5):")
    for label, m in (("reading, all grades", 0.009), ("math, all grades", 0.003)):
        iv = identified_set_benchmark(m, 0.5, regime)
        print(f"  {label}: {m:.3f} -> [{iv.lower:.3f}, {iv.upper:.3f}]")
    print("matching the published [0.006, 0.009] and [0.002, 0.003].")


if __name__ == "__main__":
    main()
