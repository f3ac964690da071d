"""Empirical search for counterexamples to symmetric quasi-additivity.

The smoothed spread is exactly additive at eps = 0, and one factor can
always be recovered: delta_eps(tau (x) omega, eps) is at least
delta_eps(tau, sqrt(eps)) + log2(1 - sqrt(eps)). Whether BOTH factors can
be recovered simultaneously,

    delta_eps(tau (x) omega, eps) >= (1 - e') [delta_eps(tau, e')
                                               + delta_eps(omega, e')] + e'',

for some e', e'' that vanish as eps -> 0, is open. This script samples
random spectrum pairs and evaluates the gap for e' = eps**p (p on a small
grid, e'' = 0). There is no pass/fail contract: a persistently negative
gap that does not shrink as eps -> 0 would be evidence against a given
instantiation, nothing more. The known reverse inequality
delta_eps(tau (x) omega, 2 eps) <= delta_eps(tau, eps) + delta_eps(omega, eps)
is checked on the same samples as a harness sanity check.

Typical run (about a minute):

    python3 scripts/search_quasi_additivity.py --trials 400 --seed 0
"""

import argparse

import numpy as np

from entspread import delta_eps, spectrum_from_probs, tensor


def _random_spectrum(rng, dmax):
    d = int(rng.integers(2, dmax + 1))
    w = rng.exponential(size=d)
    return spectrum_from_probs(w / w.sum())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--dmax", type=int, default=8, help="max atoms per factor")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps-grid", type=float, nargs="+",
                    default=[0.3, 0.1, 0.03, 0.01, 0.003])
    ap.add_argument("--powers", type=float, nargs="+", default=[1.0, 0.5],
                    help="exponents p with e' = eps**p")
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    pairs = [(_random_spectrum(rng, args.dmax), _random_spectrum(rng, args.dmax))
             for _ in range(args.trials)]
    products = [tensor(t, o) for t, o in pairs]

    reverse_violations = 0
    # worst[(eps, p)] = (gap, trial index)
    worst = {}
    for eps in args.eps_grid:
        for i, ((tau, omega), prod) in enumerate(zip(pairs, products)):
            lhs = delta_eps(prod, eps)
            if 2 * eps < 0.5:
                rev = delta_eps(prod, 2 * eps)
                if rev > delta_eps(tau, eps) + delta_eps(omega, eps) + 1e-9:
                    reverse_violations += 1
            for p in args.powers:
                ep = eps**p
                if ep >= 1.0:
                    continue
                rhs = (1 - ep) * (delta_eps(tau, ep) + delta_eps(omega, ep))
                gap = lhs - rhs
                key = (eps, p)
                if key not in worst or gap < worst[key][0]:
                    worst[key] = (gap, i)

    print(f"{args.trials} pairs, dmax={args.dmax}, seed={args.seed}")
    print(f"{'eps':>8s} {'p':>5s} {'worst gap':>12s}  note")
    negatives = 0
    for (eps, p), (gap, i) in sorted(worst.items()):
        note = ""
        if gap < 0:
            negatives += 1
            tau, omega = pairs[i]
            note = (f"NEGATIVE at trial {i}: tau={np.round(tau.probs, 4)}"
                    f" omega={np.round(omega.probs, 4)}")
        print(f"{eps:8.4g} {p:5.2f} {gap:12.6f}  {note}")

    print(f"reverse-inequality sanity violations: {reverse_violations} (expect 0)")
    if negatives == 0:
        print("no negative gaps observed; the sampled instantiations survive")
    else:
        print(f"{negatives} instantiation(s) with negative worst gap; "
              "check whether the gap shrinks as eps -> 0 before reading much into it")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
