"""Length sweep: log-log output field plus semi-log variance companion."""

import matplotlib.pyplot as plt

from .io import build_parser, floats, load_csv, save, script

HEADER = ["N", "mean_abs_alpha_N", "sigma", "n_realizations", "n_failed"]


def render(argv=None):
    parser = build_parser(__doc__)
    parser.add_argument("--sigma-star", type=float, default=0.05,
                        help="variance threshold guide line")
    args = parser.parse_args(argv)
    rows = load_csv(f"{args.in_dir}/sweep.csv", HEADER)
    n = floats(rows, 0)
    mean = floats(rows, 1)
    sigma = floats(rows, 2)

    fig, (ax_mean, ax_sigma) = plt.subplots(
        2, 1, figsize=(6.4, 6.4), sharex=True)
    ax_mean.loglog(n, mean, "o-", color="tab:blue")
    ax_mean.set_ylabel(r"$\langle|\alpha_N|\rangle$")

    ax_sigma.semilogx(n, sigma, "s-", color="tab:orange")
    ax_sigma.axhline(args.sigma_star, ls="--", color="gray", lw=1,
                     label=rf"$\Sigma^*={args.sigma_star:g}$")
    ax_sigma.set_xlabel(r"$N$")
    ax_sigma.set_ylabel(r"$\Sigma$")
    ax_sigma.legend(loc="best")
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
