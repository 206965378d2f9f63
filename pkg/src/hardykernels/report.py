"""CSV and SVG reports: boundary values of functions, singular values of symbols."""
import csv
from pathlib import Path

import numpy as np

from .boundary import to_grid, unit_grid


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["%.17g" % (x + 0.0) if isinstance(x, float) else x for x in r])


def boundary_rows(f, n_samples):
    s = to_grid(f, n_samples).samples
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    return [(float(t), float(v.real), float(v.imag), float(abs(v))) for t, v in zip(theta, s)]


def write_boundary_csv(path, f, n_samples):
    write_csv(path, ["theta", "re", "im", "abs"], boundary_rows(f, n_samples))


def write_singular_csv(path, s):
    write_csv(path, ["index", "sigma"], [(i, float(x)) for i, x in enumerate(s)])


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save_svg(fig, path, seed):
    import matplotlib

    with matplotlib.rc_context({"svg.hashsalt": f"hardykernels-{seed}"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def plot_modulus(path, f, n_samples, seed=0, label="f"):
    plt = _figure()
    s = np.abs(to_grid(f, n_samples).samples)
    theta = np.angle(unit_grid(n_samples))
    order = np.argsort(theta)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(theta[order], s[order], lw=1.2)
    ax.set_xlabel("angle")
    ax.set_ylabel(f"|{label}|")
    ax.set_title("boundary modulus")
    fig.tight_layout()
    _save_svg(fig, path, seed)
    plt.close(fig)


def plot_singular_values(path, s, tol=None, seed=0):
    plt = _figure()
    fig, ax = plt.subplots(figsize=(6, 3.5))
    s = np.asarray(s, dtype=float)
    ax.semilogy(np.arange(s.size), np.maximum(s, 1e-300), ".", ms=3)
    if tol is not None and s.size:
        ax.axhline(tol * s[0], color="C3", lw=0.8, ls="--", label="null threshold")
        ax.legend(loc="lower left")
    ax.set_xlabel("index")
    ax.set_ylabel("singular value")
    ax.set_title("truncated Toeplitz spectrum")
    fig.tight_layout()
    _save_svg(fig, path, seed)
    plt.close(fig)


def ensure_dir(path):
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
