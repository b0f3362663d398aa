"""Time trace of the output-site field from a trajectory CSV."""

import matplotlib.pyplot as plt

from .io import build_parser, floats, load_csv, save, script

HEADER = ["t", "re_alpha_N", "im_alpha_N", "abs_alpha_N"]


def render(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    rows = load_csv(f"{args.in_dir}/trajectory.csv", HEADER)
    t = floats(rows, 0)
    amp = floats(rows, 3)

    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.plot(t, amp, lw=0.8, color="tab:blue")
    ax.set_xlabel(r"$Jt$")
    ax.set_ylabel(r"$|\alpha_N|$")
    ax.set_xlim(t[0], t[-1])
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
