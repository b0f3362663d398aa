"""Batch figure rendering for the photon-lattice CSV output schemas.

One script per figure family; every script takes ``--in <dir>`` (a run
output directory) and ``--out <file>`` (the image to write). Rendering is
read-only and deterministic: the same inputs produce byte-identical images.
All fitting lives upstream; overlays are drawn from stored fit parameters.
"""

__version__ = "0.1.0"
