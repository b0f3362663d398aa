"""Linear stability of the steady state as the chain grows.

For each chain length, a Newton solve (seeded by relaxing the zero field
along the flow) finds the fixed point, and the Bogoliubov excitation matrix
built around it gives the spectrum of collective modes. The largest
imaginary part of the eigenfrequencies is the growth rate of the leading
perturbation: negative means the steady state is attracting; the rate
climbs toward zero as the chain approaches the instability threshold, where
Newton itself starts failing.

Runtime: seconds.
"""

from photon_lattice import ChainParams, stability_scan


def main():
    base = ChainParams(n_sites=10, nonlinearity=0.5, drive_amplitude=10.0,
                       kappa_boundary=1.0)
    grid = [10, 20, 30, 40, 50, 60, 70]
    print("N    max Im E      Newton iters   |alpha_1|")
    entries = stability_scan(base, grid, stop_on_failure=True)
    for n, ss, spec in entries:
        print(f"{n:<4d} {spec.max_im:+.3e}   {ss.newton_iterations:<13d} "
              f"{abs(ss.alpha_s[0]):.4f}")
    if len(entries) < len(grid):
        n_fail = grid[len(entries)]
        print(f"\nNewton failed at N = {n_fail}: no steady state is "
              "reachable - the chain is at (or past) the instability "
              "threshold, where limit cycles and multistability take over.")


if __name__ == "__main__":
    main()
