"""Stress the geometry engine on random Lie algebras and random para-Sasaki-like
candidates, printing a tally of what held.

    python scripts/random_frames.py --frames 300 --candidates 100 --seed 1
"""

import argparse
import random
import sys
import time
from collections import Counter

from pisoliton.frame import covariant_derivative, ricci_of, second_bianchi_contracted_check, torsion
from pisoliton.generators import para_sasaki_candidate, random_frame
from pisoliton.soliton import Potential, solve_einstein_like, solve_soliton
from pisoliton.structure import is_para_sasaki, para_sasaki_identities


def check_frame(frame) -> list[str]:
    conn, curv = ricci_of(frame)
    R, Rl = curv.riemann, curv.riemann_lowered
    failed = []
    if not torsion(conn).is_zero():
        failed.append("torsion")
    if not covariant_derivative(conn, frame.metric).is_zero():
        failed.append("metric")
    if not (R + R.permute((1, 2, 0, 3)) + R.permute((2, 0, 1, 3))).is_zero():
        failed.append("bianchi1")
    if Rl != Rl.permute((2, 3, 0, 1)):
        failed.append("pair")
    if curv.ricci != curv.ricci.permute((1, 0)):
        failed.append("ricci_sym")
    if not second_bianchi_contracted_check(conn, curv)[0]:
        failed.append("bianchi2")
    return failed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--frames", type=int, default=200)
    ap.add_argument("--candidates", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    tally = Counter()
    for i in range(args.frames):
        frame = random_frame(random.Random(args.seed * 100003 + i))
        tally[f"dim{frame.dim}"] += 1
        for name in check_frame(frame):
            tally[f"FAILED {name}"] += 1
    print(f"{args.frames} random frames in {time.perf_counter() - t0:.1f}s: {dict(sorted(tally.items()))}")

    t0 = time.perf_counter()
    stats = Counter()
    for i in range(args.candidates):
        s = para_sasaki_candidate(random.Random(args.seed * 100003 + 50000 + i))
        conn, curv = ricci_of(s.frame)
        if not is_para_sasaki(s, conn)[0]:
            stats["rejected"] += 1
            continue
        stats["para_sasaki"] += 1
        if not all(r.ok for r in para_sasaki_identities(s, conn, curv)):
            stats["FAILED identities"] += 1
        el = solve_einstein_like(s, curv)
        sol = solve_soliton(s, conn, curv, Potential.reeb(), para_sasaki=True)
        if el.fits != sol.fits:
            stats["FAILED fit_together"] += 1
        elif el.fits:
            (a, b, c), (lam, mu, nu) = el.constants(), sol.constants()
            ok = a + lam == 0 and b + mu + 1 == 0 and c + nu - 1 == 0
            stats["duality_ok" if ok else "FAILED duality"] += 1
    print(f"{args.candidates} candidates in {time.perf_counter() - t0:.1f}s: {dict(sorted(stats.items()))}")
    return 1 if any(k.startswith("FAILED") for k in list(tally) + list(stats)) else 0


if __name__ == "__main__":
    sys.exit(main())
