"""Nonlinearity-disorder phase diagram: one marker per (U, W) cell,
colored by its transport classification."""

import matplotlib.pyplot as plt

from .io import InputError, build_parser, floats, load_csv, save, script

HEADER = ["U", "W", "classification", "power_exponent", "power_r2",
          "exp_rate", "exp_r2", "n_points"]

STYLE = {
    "diffusive": ("tab:blue", "o"),
    "insulating": ("tab:red", "s"),
    "inconclusive": ("0.6", "x"),
}


def render(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    rows = load_csv(f"{args.in_dir}/phase.csv", HEADER)
    u = floats(rows, 0)
    w = floats(rows, 1)
    labels = [r[2] for r in rows]
    unknown = sorted(set(labels) - set(STYLE))
    if unknown:
        raise InputError(f"phase.csv: unknown classification {unknown}")

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for label, (color, marker) in STYLE.items():
        pts = [(x, y) for x, y, cls in zip(u, w, labels) if cls == label]
        if pts:
            ax.scatter([x for x, _ in pts], [y for _, y in pts], c=color,
                       marker=marker, s=80, label=label)
    ax.set_xlabel(r"$U/J$")
    ax.set_ylabel(r"$W/J$")
    ax.legend(loc="best")
    fig.tight_layout()
    save(fig, args.out)
    plt.close(fig)


main = script(render)

if __name__ == "__main__":
    main()
