#!/usr/bin/env python3
"""Sweep the certificate search over primes and seeds, verify every hit.

Prints one line per (prime, seed) with the curve found, the field it lives
over, the obstruction scalar, and timings.  With --out the canonical
certificate bytes are written to <out>/cert_p<p>_s<seed>.json so rerunning
the sweep doubles as a determinism check (files must not change).
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nefcert.obstruction import (
    SearchBudget,
    SearchExhausted,
    certificate_build,
    certificate_verify,
)
from nefcert.serialize import canonical_bytes, certificate_to_dict


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5,7", help="comma-separated odd primes")
    ap.add_argument("--seeds", type=int, default=3, help="seeds 0..N-1 per prime")
    ap.add_argument("--out", default="", help="directory for certificate files")
    ap.add_argument("--curve-tries", type=int, default=SearchBudget.curve_tries)
    args = ap.parse_args()

    primes = [int(tok) for tok in args.primes.split(",") if tok.strip()]
    budget = SearchBudget(curve_tries=args.curve_tries)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for p in primes:
        for seed in range(args.seeds):
            t0 = time.monotonic()
            try:
                cert = certificate_build(p, seed=seed, budget=budget)
            except SearchExhausted as exc:
                failures += 1
                print(f"p={p} seed={seed} EXHAUSTED {exc.stats}")
                continue
            built = time.monotonic() - t0
            report = certificate_verify(cert)
            verified = time.monotonic() - t0 - built
            blob = canonical_bytes(certificate_to_dict(cert))
            verdict = "ok" if report.ok else "VERIFY-FAIL"
            if not report.ok:
                failures += 1
            print(
                f"p={p} seed={seed} q={p}^{cert.k} f={cert.f}"
                f" obstruction={cert.obstruction} bytes={len(blob)}"
                f" build={built:.2f}s verify={verified:.2f}s {verdict}"
            )
            if out_dir is not None:
                path = out_dir / f"cert_p{p}_s{seed}.json"
                if path.exists() and path.read_bytes() != blob:
                    failures += 1
                    print(f"  determinism violation: {path} changed")
                path.write_bytes(blob)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
