"""Threshold chain length versus a swept parameter, log-log.

The dashed power-law overlay is drawn from the fit stored in the run's
manifest.json (never refitted here); it is omitted when no fit is stored.
"""

import matplotlib.pyplot as plt
import numpy as np

from .io import build_parser, floats, load_csv, load_manifest, save, script

HEADER = ["value", "n_t", "n_t_end"]


def render(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    rows = load_csv(f"{args.in_dir}/scaling.csv", HEADER)
    value = floats(rows, 0)
    n_t = floats(rows, 1)
    found = [(v, n) for v, n in zip(value, n_t) if n > 0]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if found:
        ax.loglog([v for v, _ in found], [n for _, n in found], "o",
                  color="tab:blue", label=r"$N_t$")
    missing = [v for v, n in zip(value, n_t) if n <= 0]
    for v in missing:
        ax.axvline(v, color="tab:red", ls=":", lw=1)

    manifest = load_manifest(args.in_dir)
    fit = (manifest or {}).get("fit") or {}
    if fit.get("model") == "power" and found:
        v = np.geomspace(min(x for x, _ in found), max(x for x, _ in found), 50)
        ax.loglog(v, fit["prefactor"] * v ** fit["exponent_or_rate"], "--",
                  color="gray",
                  label=rf"fit: $b={fit['exponent_or_rate']:.2f}$, "
                        rf"$r^2={fit['r_squared']:.2f}$")

    axis = ((manifest or {}).get("axis") or "parameter")
    ax.set_xlabel(axis)
    ax.set_ylabel(r"$N_t$")
    ax.legend(loc="best")
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
