"""Default numerical tolerances.

``MODFRAME_TOL`` (read by the CLI) overrides the frame decision threshold.
"""

import os

TAU_EIG = 1e-10
TAU_HERM = 1e-10
TAU_PSD = 1e-9
TAU_RANK = 1e-8
TAU_FRAME = 1e-8
TAU_DUAL = 1e-9
TAU_PRUNE = 1e-10


def frame_tolerance_from_env(default=TAU_FRAME):
    raw = os.environ.get("MODFRAME_TOL")
    if raw is None or raw.strip() == "":
        return default
    value = float(raw)
    if not value > 0.0:
        raise ValueError(f"MODFRAME_TOL must be positive, got {raw!r}")
    return value
