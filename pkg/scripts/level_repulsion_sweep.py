#!/usr/bin/env python3
"""Generate the repelling-level data around gamma_c for several chain lengths.

Writes one CSV per chain length with the numeric critical pair, the
per-side asymptotic pair, and the coalescence gap on a symmetric log grid of
gamma - gamma_c.  Plot level magnitude against gamma - gamma_c to see the
square-root repulsion on both sides of the exceptional point.
"""

import argparse
import pathlib

import numpy as np

from ptchain import critical_sweep, gamma_critical


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[19, 20, 199, 200])
    ap.add_argument("--decades", type=float, nargs=2, default=[-4.0, -2.0],
                    help="log10 range of |gamma-gamma_c|/gamma_c")
    ap.add_argument("--points", type=int, default=13)
    ap.add_argument("--outdir", default="repulsion_data")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for n in args.sizes:
        gc = gamma_critical(n)
        offsets = gc * np.logspace(args.decades[0], args.decades[1], args.points)
        gammas = np.concatenate([gc - offsets[::-1], gc + offsets])
        rows = ["gamma,gamma_offset,level_re,level_im,analytic_re,analytic_im,"
                "coalescence_gap,pt_norm_abs"]
        for rep in critical_sweep(n, gammas):
            for lvl, ana, ptn in zip(rep.two_levels, rep.analytic_pair, rep.pt_norms):
                rows.append(",".join(f"{x:.12g}" for x in (
                    rep.gamma, rep.gamma_offset, lvl.real, lvl.imag,
                    ana.real, ana.imag, rep.coalescence_gap, abs(ptn))))
        path = outdir / f"repulsion_n{n}.csv"
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(rows) - 1} rows)")


if __name__ == "__main__":
    main()
