"""Command-line front end.

Exit codes: 0 success / holds / found; 1 negative result (hypothesis
fails, no witness, counterexample); 2 invalid input; 3 budget or
precision exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time

from . import __version__
from .bounds import bound_set, compare_bounds, crossover_epsilon, gamma
from .errors import (AmbiguousEnclosure, BudgetExceeded, DomainError,
                     KronkitError, PrecisionExhausted)
from .hypothesis import check_theorem1_hypothesis
from .instances import (KroneckerInstance, LinearSystemInstance,
                        load_instance, save_instance)
from .scalar import DEFAULT_BITS, Q, Real, Scalar, parse_rational
from .transference import (check_condition, necessity_probe,
                           sufficiency_probe)
from .witness import find_t, verify_witness

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def _parse_eps_list(text):
    return [parse_rational(p) for p in text.split(",")]


def _parse_grid(spec):
    """Parse "lo:hi:geometric:k" into k grid points, descending."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[2] != "geometric":
        raise DomainError(f"bad grid spec {spec!r}; want lo:hi:geometric:k")
    lo, hi, k = float(parts[0]), float(parts[1]), int(parts[3])
    if not (0 < lo < hi) or k < 2:
        raise DomainError(f"bad grid spec {spec!r}")
    ratio = (hi / lo) ** (1 / (k - 1))
    pts = [hi / ratio ** i for i in range(k)]
    # exact rationals via repr round-trip of the float grid
    return [parse_rational(repr(p)) for p in pts]


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def sample_taus(seed: int, count: int, span) -> list:
    """Deterministic rational taus, uniform over [0, span]."""
    rng = random.Random(seed)
    span = Q(span)
    return [Q(rng.getrandbits(64), 2 ** 64) * span for _ in range(count)]


def build_certificate(inst: KroneckerInstance, trials: int, seed: int,
                      strategy="auto", workers=1, budget=10 ** 9,
                      max_bits=None):
    """Run the full pipeline; returns (certificate dict, exit code)."""
    t0 = time.time()
    cert = {
        "tool_version": __version__,
        "instance": inst.to_json(),
        "trials": {"count": trials, "seed": seed},
    }
    hyp = check_theorem1_hypothesis(inst, strategy=strategy, workers=workers,
                                    budget=budget, max_bits=max_bits)
    cert["hypothesis"] = hyp.to_json()
    g = gamma(inst.N)
    bs = bound_set(inst.N, inst.eps_rationals())
    cert["bounds"] = bs.to_json()
    if hyp.verdict != "Holds":
        cert["failure"] = "hypothesis"
        cert["witnesses"] = []
        cert["wall_clock_s"] = time.time() - t0
        return cert, EXIT_NEGATIVE

    delta_lo = (inst.delta_rational() if inst.delta is not None
                else hyp.delta_hat.lo)
    t_star = 1 / (g * delta_lo)
    cert["T_star"] = str(t_star)
    taus = sample_taus(seed, trials, 10 * t_star)
    witnesses = []
    failures = 0
    for tau in taus:
        shifted = KroneckerInstance(inst.lam, inst.alpha, inst.eps,
                                    Real.rational(tau), inst.delta,
                                    inst.precision_bits)
        w = find_t(shifted, t_star)
        if w is None:
            failures += 1
            witnesses.append({"tau": str(tau), "t": None})
            continue
        _, ok = verify_witness(shifted, w.t)
        witnesses.append({"tau": str(tau), "t": str(w.t), "verified": ok})
        if not ok:
            failures += 1
    cert["witnesses"] = witnesses
    cert["failures"] = failures
    cert["rigor"] = "Proven"
    cert["wall_clock_s"] = time.time() - t0
    if failures:
        cert["failure"] = "witness"
        return cert, EXIT_NEGATIVE
    return cert, EXIT_OK


# -- subcommands ---------------------------------------------------------


def cmd_bounds(args):
    eps = _parse_eps_list(args.eps) if args.eps else None
    if args.n < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return EXIT_INVALID
    if eps is None:
        print(f"gamma({args.n}) = {gamma(args.n)}")
        return EXIT_OK
    delta = parse_rational(args.delta) if args.delta else None
    bs = bound_set(args.n, eps, delta)
    print(f"N = {args.n}")
    print(f"gamma    = {bs.gamma}")
    print(f"gamma1_A = {bs.gamma1_A}")
    print(f"gamma1_B = {bs.gamma1_B}")
    print(f"M_star   = {[str(x) for x in bs.M_star]}")
    print(f"M_floor  = {bs.M_floor}")
    print(f"M_gm     = {bs.M_gm}")
    if bs.T_star is not None:
        print(f"T_star   = {bs.T_star.to_json()}")
        print(f"T_gm     = {bs.T_gm.to_json()}")
    if args.json:
        _write_json(args.json, bs.to_json())
    return EXIT_OK


def cmd_hypothesis(args):
    inst = load_instance(args.instance)
    if not isinstance(inst, KroneckerInstance):
        print("error: hypothesis needs a kronecker instance",
              file=sys.stderr)
        return EXIT_INVALID
    hyp = check_theorem1_hypothesis(inst, strategy=args.strategy,
                                    workers=args.threads,
                                    budget=args.budget,
                                    max_bits=args.max_bits)
    print(f"delta_hat = {hyp.delta_hat.to_json()}")
    print(f"minimizer = {list(hyp.minimizer)}")
    print(f"box       = {hyp.box.to_json()}")
    print(f"verdict   = {hyp.verdict}  (rigor: {hyp.rigor})")
    if args.json:
        _write_json(args.json, hyp.to_json())
    return EXIT_OK if hyp.verdict == "Holds" else EXIT_NEGATIVE


def cmd_witness(args):
    inst = load_instance(args.instance)
    if not isinstance(inst, KroneckerInstance):
        print("error: witness needs a kronecker instance", file=sys.stderr)
        return EXIT_INVALID
    if args.T:
        t_len = parse_rational(args.T)
    else:
        hyp = check_theorem1_hypothesis(inst, workers=args.threads,
                                        budget=args.budget)
        if hyp.verdict != "Holds":
            print("hypothesis fails; no window available")
            return EXIT_NEGATIVE
        delta_lo = (inst.delta_rational() if inst.delta is not None
                    else hyp.delta_hat.lo)
        t_len = 1 / (gamma(inst.N) * delta_lo)
    w = find_t(inst, t_len)
    if w is None:
        print("no witness in window")
        return EXIT_NEGATIVE
    print(f"t = {w.t}  (~{float(w.t):.6f})")
    for j, r in enumerate(w.residuals):
        print(f"residual[{j}] <= {float(r.hi):.3e}")
    if args.json:
        _write_json(args.json, w.to_json())
    return EXIT_OK


def cmd_verify_theorem1(args):
    inst = load_instance(args.instance)
    if not isinstance(inst, KroneckerInstance):
        print("error: verify-theorem1 needs a kronecker instance",
              file=sys.stderr)
        return EXIT_INVALID
    cert, code = build_certificate(inst, args.trials, args.seed,
                                   strategy=args.strategy,
                                   workers=args.threads,
                                   budget=args.budget,
                                   max_bits=args.max_bits)
    if args.json:
        _write_json(args.json, cert)
    if code == EXIT_OK:
        print(f"OK: {args.trials} windows, all witnessed "
              f"(delta_hat={cert['hypothesis']['delta_hat']})")
    elif cert.get("failure") == "hypothesis":
        print("FAIL: hypothesis does not hold "
              f"(verdict {cert['hypothesis']['verdict']})")
    else:
        print(f"FAIL: {cert.get('failures')} window(s) without a witness — "
              "this contradicts a Holds hypothesis; investigate")
    return code


def cmd_verify(args):
    with open(args.certificate, "r", encoding="utf-8") as fh:
        cert = json.load(fh)
    inst = KroneckerInstance.from_json(cert["instance"])
    fresh, code = build_certificate(inst, cert["trials"]["count"],
                                    cert["trials"]["seed"])
    for key in ("hypothesis", "witnesses", "failures"):
        if fresh.get(key) != cert.get(key):
            print(f"MISMATCH in {key}")
            return EXIT_NEGATIVE
    print("certificate reproduced")
    return code


def cmd_transference(args):
    inst = load_instance(args.instance)
    if not isinstance(inst, LinearSystemInstance):
        print("error: transference needs a linear_system instance",
              file=sys.stderr)
        return EXIT_INVALID
    sys_ = inst.system()
    alpha = inst.alphas()
    eps = inst.eps_rationals()
    X = inst.x_rationals()
    nec = necessity_probe(sys_, alpha, eps, X, args.budget)
    suf = sufficiency_probe(sys_, alpha, eps, X, args.budget)
    print(f"necessity   : {nec['outcome']}  solution={nec['solution']}")
    print(f"sufficiency : {suf['outcome']}  solution={suf['solution']}")
    if args.json:
        payload = {
            "necessity": {"outcome": nec["outcome"],
                          "solution": (list(nec["solution"])
                                       if nec["solution"] else None),
                          "condition": (nec["condition"].to_json()
                                        if nec["condition"] else None)},
            "sufficiency": {"outcome": suf["outcome"],
                            "solution": (list(suf["solution"])
                                         if suf["solution"] else None),
                            "condition": suf["condition"].to_json()},
        }
        _write_json(args.json, payload)
    bad = ("CounterexampleToPartA", "CounterexampleToPartB")
    return EXIT_NEGATIVE if (nec["outcome"] in bad
                             or suf["outcome"] in bad) else EXIT_OK


def cmd_compare_gm(args):
    if args.n < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return EXIT_INVALID
    grid = _parse_grid(args.eps_grid)
    rows = compare_bounds(args.n, grid)
    eps0 = crossover_epsilon(args.n)
    print(f"crossover epsilon ~ {float(eps0.mid):.4e}")
    for r in rows:
        print(f"eps={float(r.eps):.4e}  M*={float(r.m_star):.6g}  "
              f"M_gm={r.m_gm}  star_is_smaller={r.star_is_smaller}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["eps", "M_star", "M_gm", "star_is_smaller"])
            for r in rows:
                w.writerow([str(r.eps), str(r.m_star), str(r.m_gm),
                            str(r.star_is_smaller).lower()])
    return EXIT_OK


def cmd_gen_preset(args):
    n = args.n
    if args.kind == "sqrt-primes":
        lam = [Real.parse(f"sqrt({p})") for p in _PRIMES[:n]]
    elif args.kind == "log-primes":
        lam = [Real.parse(f"log({p})") for p in _PRIMES[:n]]
    elif args.kind == "one-sqrt2":
        lam = [Real.rational(1)] + [Real.parse(f"sqrt({p})")
                                    for p in _PRIMES[:n - 1]]
    else:
        print(f"error: unknown preset kind {args.kind!r}", file=sys.stderr)
        return EXIT_INVALID
    eps = (_parse_eps_list(args.eps) if args.eps
           else [Q(1, 20)] * n)
    inst = KroneckerInstance(
        lam=lam,
        alpha=[Real.rational(0)] * n,
        eps=[Real.rational(e) for e in eps],
        tau=Real.rational(parse_rational(args.tau)),
        precision_bits=args.bits,
    )
    save_instance(inst, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="kronkit",
        description="Explicit bounds, box enumeration, and witness search "
                    "for inhomogeneous Diophantine approximation.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--budget", type=int, default=10 ** 9)
        sp.add_argument("--max-bits", type=int, default=4096)
        sp.add_argument("--json", help="write JSON output here")

    sp = sub.add_parser("bounds", help="print the closed-form bound table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps", help="comma-separated epsilons")
    sp.add_argument("--delta")
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("hypothesis", help="verify the box-minimum "
                                           "hypothesis for an instance")
    sp.add_argument("instance")
    sp.add_argument("--strategy", default="auto",
                    choices=["auto", "dfs", "mitm"])
    common(sp)
    sp.set_defaults(fn=cmd_hypothesis)

    sp = sub.add_parser("witness", help="find an approximation witness t")
    sp.add_argument("instance")
    sp.add_argument("--T", help="window length (default: from hypothesis)")
    common(sp)
    sp.set_defaults(fn=cmd_witness)

    sp = sub.add_parser("verify-theorem1",
                        help="end-to-end pipeline over random windows")
    sp.add_argument("instance")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--strategy", default="auto",
                    choices=["auto", "dfs", "mitm"])
    common(sp)
    sp.set_defaults(fn=cmd_verify_theorem1)

    sp = sub.add_parser("verify", help="re-run a certificate's checks")
    sp.add_argument("certificate")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("transference",
                        help="run both transference probes on a system")
    sp.add_argument("instance")
    sp.add_argument("--budget", type=int, default=10 ** 7)
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_transference)

    sp = sub.add_parser("compare-gm",
                        help="compare the two box sizes over a grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps-grid", required=True,
                    help="lo:hi:geometric:count")
    sp.add_argument("--csv")
    sp.set_defaults(fn=cmd_compare_gm)

    sp = sub.add_parser("gen-preset", help="write a preset instance file")
    sp.add_argument("--kind", default="sqrt-primes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps")
    sp.add_argument("--tau", default="0")
    sp.add_argument("--bits", type=int, default=DEFAULT_BITS)
    sp.add_argument("--out", default="instance.json")
    sp.set_defaults(fn=cmd_gen_preset)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors already
        raise
    try:
        return args.fn(args)
    except (BudgetExceeded, PrecisionExhausted, AmbiguousEnclosure) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (DomainError, KronkitError, OSError, json.JSONDecodeError,
            ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
