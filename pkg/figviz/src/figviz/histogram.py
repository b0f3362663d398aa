"""2-D frequency map of the output-site quadratures X = 2 Re alpha_N and
P = 2 Im alpha_N from a trajectory CSV. Binning here is display-only."""

import matplotlib.pyplot as plt
import numpy as np

from .io import build_parser, floats, load_csv, save, script

HEADER = ["t", "re_alpha_N", "im_alpha_N", "abs_alpha_N"]


def render(argv=None):
    parser = build_parser(__doc__)
    parser.add_argument("--transient", type=float, default=0.0,
                        help="drop samples with t <= this value")
    parser.add_argument("--bins", type=int, default=60)
    args = parser.parse_args(argv)
    rows = load_csv(f"{args.in_dir}/trajectory.csv", HEADER)
    t = np.array(floats(rows, 0))
    x = 2.0 * np.array(floats(rows, 1))
    p = 2.0 * np.array(floats(rows, 2))
    keep = t > args.transient
    x, p = x[keep], p[keep]

    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    counts, xe, pe = np.histogram2d(x, p, bins=args.bins)
    mesh = ax.pcolormesh(xe, pe, counts.T, cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="counts")
    ax.set_xlabel(r"$X = 2\,\mathrm{Re}\,\alpha_N$")
    ax.set_ylabel(r"$P = 2\,\mathrm{Im}\,\alpha_N$")
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
