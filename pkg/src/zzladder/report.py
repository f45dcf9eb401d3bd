"""Figure rendering for the CLI report paths."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_trajectories(trajectories, path, title=None):
    """One panel per trajectory, excited population of every qubit vs time."""
    n = len(trajectories)
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 3.2), squeeze=False)
    for ax, (label, traj) in zip(axes[0], trajectories.items()):
        for q in range(traj.populations.shape[1]):
            ax.plot(traj.times, traj.populations[:, q], label=f"q{q}")
        ax.set_xlabel("t  [1/Omega]")
        ax.set_ylabel("P_e")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(label)
        ax.legend(fontsize=7)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_population_bars(stages, path, title=None):
    """Grouped bars of per-qubit excited populations for named stages."""
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    names = list(stages)
    n_q = len(next(iter(stages.values())))
    width = 0.8 / len(names)
    for k, name in enumerate(names):
        xs = [q + (k - (len(names) - 1) / 2) * width for q in range(n_q)]
        ax.bar(xs, stages[name], width=width, label=name)
    ax.set_xticks(range(n_q))
    ax.set_xticklabels([f"q{q}" for q in range(n_q)])
    ax.set_ylabel("P_e")
    ax.set_ylim(0, 1.05)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(results, path, title=None):
    """Fidelity deficit versus blockade ratio on log-log axes."""
    etas = [r["eta"] for r in results]
    deficits = [max(1.0 - r["mean_fidelity"], 1e-16) for r in results]
    fig, ax = plt.subplots(figsize=(4.5, 3.4))
    ax.loglog(etas, deficits, "o-")
    ax.set_xlabel("blockade ratio")
    ax.set_ylabel("1 - mean fidelity")
    ax.grid(True, which="both", alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
