"""Resource tables as CSV text and as matplotlib figures."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .restrictions import ResourceRow


def resource_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ResourceRow.FIELDS)
    for r in rows:
        writer.writerow(astuple(r))
    return buf.getvalue()


def plot_resources(rows, path, title: str = "") -> None:
    """Sizes on the left panel, behavior calls per step on the right."""
    t = [r.t for r in rows]
    fig, (sizes, calls) = plt.subplots(1, 2, figsize=(10, 4))
    sizes.plot(t, [r.g_bits for r in rows], label="g bits")
    sizes.plot(t, [r.max_particle_bits for r in rows], label="max particle bits")
    sizes.plot(t, [r.particles for r in rows], label="particles")
    sizes.set_xlabel("state t")
    sizes.legend()
    for name in ("u", "i", "e", "ge", "f"):
        calls.plot(t, [getattr(r, name) for r in rows], label=name)
    calls.set_xlabel("state t")
    calls.set_ylabel("calls in following step")
    calls.legend()
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
