"""Configuration-averaged output field versus chain length: log-log and
semi-log panels side by side, so power-law and exponential decay each appear
as a straight line in one of them."""

import matplotlib.pyplot as plt

from .io import build_parser, floats, load_csv, save, script

HEADER = ["N", "mean_abs_alpha_N", "median_abs_alpha_N",
          "logmean_abs_alpha_N", "sigma", "n_configs", "n_failed"]


def render(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    rows = load_csv(f"{args.in_dir}/disorder.csv", HEADER)
    n = floats(rows, 0)
    mean = floats(rows, 1)
    logmean = floats(rows, 3)

    fig, (ax_log, ax_semi) = plt.subplots(1, 2, figsize=(8.8, 4.0))
    for ax in (ax_log, ax_semi):
        ax.plot(n, mean, "o-", color="tab:blue", label="mean")
        ax.plot(n, logmean, "s--", color="tab:green", label="geometric mean")
        ax.set_yscale("log")
        ax.set_xlabel(r"$N$")
    ax_log.set_xscale("log")
    ax_log.set_ylabel(r"$\langle|\alpha_N|\rangle$")
    ax_log.set_title("log-log")
    ax_semi.set_title("semi-log")
    ax_log.legend(loc="best")
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
