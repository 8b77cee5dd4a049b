"""Command-line front end.

Four subcommands: `search` hunts for a certificate and writes it (or a
structured failure report) as canonical JSON; `verify` recomputes every
check of a stored certificate; `lattice` prints the exceptional-curve
bookkeeping for blown-up surfaces; `curve-info` prints the invariants of a
single hyperelliptic curve.  Every run echoes its fully resolved
configuration to stderr, and file outputs depend only on (command, flags,
seed), byte for byte.

Exit codes: 0 success / certificate passes, 1 failure / certificate fails,
2 malformed input or bad flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

from .fields import _is_prime, field
from .obstruction import (
    SearchBudget,
    SearchExhausted,
    certificate_build,
    certificate_verify,
)

FAILURE_SCHEMA = "nefcert-failure/1"


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation; defaults match the parser's."""

    command: str
    p: int = 3
    seed: int = 0
    budget: SearchBudget = SearchBudget()
    guard: int = 10**7
    d: int = 3
    base: str = "p1xp1"
    f: tuple = ()
    path: str = ""
    out: str = ""
    format: str = "text"

    def echo(self):
        d = dataclasses.asdict(self)
        print("config: " + json.dumps(d, sort_keys=True), file=sys.stderr)


def _parse_coeffs(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nefcert",
        description="certificates of non-semi-ample nef bundles on blown-up quadrics",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("search", help="search for a certificate at a prime")
    sp.add_argument("--p", type=int, default=3, help="odd prime characteristic (default 3)")
    sp.add_argument("--seed", type=int, default=0, help="64-bit search seed (default 0)")
    sp.add_argument("--out", default="", help="output file (default: stdout)")
    sp.add_argument(
        "--guard",
        type=int,
        default=10**7,
        help="point-counting work limit; caps the usable field size (default 1e7)",
    )
    sp.add_argument(
        "--curve-tries", type=int, default=SearchBudget.curve_tries,
        help="curves sampled before giving up",
    )
    sp.add_argument(
        "--delta-tries", type=int, default=SearchBudget.delta_tries,
        help="point configurations per section round",
    )
    sp.add_argument("--format", choices=("json", "text"), default="text")

    vp = sub.add_parser("verify", help="recheck a stored certificate")
    vp.add_argument("path", help="certificate file")
    vp.add_argument("--format", choices=("json", "text"), default="text")

    lp = sub.add_parser("lattice", help="exceptional-curve report for a blown-up surface")
    lp.add_argument("--base", choices=("p1xp1", "p2"), default="p1xp1")
    lp.add_argument("--d", type=int, default=3, help="number of blown-up points (default 3)")
    lp.add_argument("--format", choices=("json", "text"), default="text")

    cp = sub.add_parser("curve-info", help="invariants of y^2 = f(x) over F_p")
    cp.add_argument("--p", type=int, default=3, help="odd prime characteristic (default 3)")
    cp.add_argument(
        "--f", type=_parse_coeffs, required=True,
        help="coefficients of f, low degree first, comma-separated",
    )
    cp.add_argument(
        "--guard", type=int, default=10**7,
        help="point-counting work limit (default 1e7)",
    )
    cp.add_argument("--format", choices=("json", "text"), default="text")
    return ap


def _emit(payload: bytes, out: str):
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _isqrt_floor(n: int) -> int:
    import math

    return math.isqrt(max(n, 0))


def cmd_search(cfg: RunConfig) -> int:
    from . import serialize

    try:
        cert = certificate_build(cfg.p, cfg.seed, cfg.budget)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SearchExhausted as err:
        report = {
            "schema": FAILURE_SCHEMA,
            "p": cfg.p,
            "seed": cfg.seed,
            "stats": dict(sorted(err.stats.items())),
        }
        _emit(serialize.canonical_bytes(report), cfg.out)
        if cfg.format == "text":
            print("search exhausted; stage statistics:", file=sys.stderr)
            for key, val in sorted(err.stats.items()):
                print(f"  {key}: {val}", file=sys.stderr)
        return 1
    _emit(serialize.canonical_bytes(serialize.certificate_to_dict(cert)), cfg.out)
    if cfg.format == "text":
        dest = cfg.out or "<stdout>"
        print(
            f"certificate found: p={cert.p} field=F({cert.p}^{cert.k})"
            f" obstruction={cert.obstruction} -> {dest}",
            file=sys.stderr,
        )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    from . import serialize

    try:
        with open(cfg.path, "rb") as fh:
            data = fh.read()
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        d = serialize.parse_certificate(data)
    except serialize.CertificateFormatError as err:
        print(f"malformed certificate: {err}", file=sys.stderr)
        return 2
    report = certificate_verify(d)
    if cfg.format == "json":
        out = {
            "ok": report.ok,
            "checks": [
                {"index": c.index, "name": c.name, "passed": c.passed, "detail": c.detail}
                for c in report.checks
            ],
        }
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"certificate: p={d['p']} k={d['k']} f={tuple(d['f'])}")
        for line in report.lines():
            print(line)
        print("verdict: " + ("PASS" if report.ok else "FAIL"))
    return 0 if report.ok else 1


def cmd_lattice(cfg: RunConfig) -> int:
    from .lattice import (
        P1XP1,
        P2,
        exceptional_curves,
        hodge_signature,
        standard_example,
    )

    base = P1XP1 if cfg.base == "p1xp1" else P2
    try:
        lat, ref, curves = standard_example(base, cfg.d)
        part = exceptional_curves(lat, ref, curves)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    sig = hodge_signature(lat)
    payload = {
        "base": cfg.base,
        "d": cfg.d,
        "rho": part.rho,
        "signature": list(sig),
        "exceptional_count": len(part.negative),
        "counting_bound": part.bound,
        "ray_count": len(part.ray),
    }
    if part.rankin is not None:
        payload["rankin"] = {
            "dim": part.rankin.dim,
            "count": part.rankin.count,
            "bound": part.rankin.bound,
            "ok": part.rankin.ok,
        }
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"base {cfg.base}, {cfg.d} blown-up points: rho = {part.rho}")
        print(f"intersection form signature: {sig}")
        print(
            f"classes of negative self-degree: {len(part.negative)}"
            f" (counting bound {part.bound})"
        )
        if part.ray:
            print(f"classes on the reference ray: {len(part.ray)}")
        if part.rankin is not None:
            r = part.rankin
            print(
                f"euclidean model: {r.count} vectors in dimension {r.dim},"
                f" bound {r.bound}, ok={r.ok}"
            )
    return 0


def cmd_curve_info(cfg: RunConfig) -> int:
    from .curves import Curve
    from .cohomology import cartier_manin, cartier_nonsingular
    from .jacobian import jac_order

    try:
        if not _is_prime(cfg.p):
            raise ValueError("not prime")
        base = field(cfg.p)
        curve = Curve(base, cfg.f)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    cm = cartier_manin(curve)
    ordinary = cartier_nonsingular(curve)
    n1 = curve.point_count(1)
    payload = {
        "p": cfg.p,
        "f": list(cfg.f),
        "genus": 2,
        "smooth": True,
        "points": n1,
        "cartier_manin": [list(r) for r in cm],
        "ordinary": ordinary,
    }
    if cfg.p**4 <= cfg.guard:
        payload["points_quadratic"] = curve.point_count(2)
        payload["jacobian_order"] = jac_order(curve)
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"curve: y^2 = f(x) over F({cfg.p}), f coefficients {cfg.f}")
        print("smooth genus-2 model: True")
        print(f"rational points: {n1}")
        if "points_quadratic" in payload:
            print(f"points over the quadratic extension: {payload['points_quadratic']}")
            print(f"jacobian order: {payload['jacobian_order']}")
        print(f"cartier-manin matrix: {[list(r) for r in cm]}")
        print(f"ordinary: {ordinary}")
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    kwargs = {"command": ns.command, "format": ns.format}
    if ns.command == "search":
        budget = dataclasses.replace(
            SearchBudget(),
            curve_tries=ns.curve_tries,
            delta_tries=ns.delta_tries,
            max_q=min(SearchBudget.max_q, _isqrt_floor(ns.guard)),
        )
        kwargs.update(p=ns.p, seed=ns.seed, out=ns.out, guard=ns.guard, budget=budget)
    elif ns.command == "verify":
        kwargs.update(path=ns.path)
    elif ns.command == "lattice":
        kwargs.update(base=ns.base, d=ns.d)
    else:
        kwargs.update(p=ns.p, f=ns.f, guard=ns.guard)
    cfg = RunConfig(**kwargs)
    cfg.echo()
    if ns.command == "search":
        return cmd_search(cfg)
    if ns.command == "verify":
        return cmd_verify(cfg)
    if ns.command == "lattice":
        return cmd_lattice(cfg)
    return cmd_curve_info(cfg)


if __name__ == "__main__":
    sys.exit(main())
