"""Worker-count policy shared by the parallel sweeps."""

import os


def worker_count(default: int | None = None) -> int:
    """Workers allowed by SMAXKIT_THREADS (default: 1)."""
    raw = os.environ.get("SMAXKIT_THREADS")
    if raw is None:
        return default or 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"SMAXKIT_THREADS must be an integer, got {raw!r}") from None
