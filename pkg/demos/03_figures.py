# Curve families for the three noise scenarios, written as CSV.
#
# fig1: Ohmic noise at three temperatures
# fig2: 1/f noise at three amplitudes
# fig3: both sources at 30 mK
#
# If matplotlib is installed the curves are also plotted to figures.png.

import sys

from jcqdecoherence.scenario import run_figure, write_figure

out_dir = sys.argv[1] if len(sys.argv) > 1 else "figures_out"
figs = [run_figure(name) for name in ("fig1", "fig2", "fig3")]
for fig in figs:
    print(write_figure(fig, out_dir))
    for curve in fig.curves:
        print(f"  {curve.label:40s} D(t={curve.t[-1]:.3f}) = {curve.D[-1]:.3e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
for ax, result in zip(axes, figs):
    for curve in result.curves:
        ax.plot(curve.t, curve.D, label=curve.label)
    ax.axhline(1e-4, color="k", lw=0.5, ls="--")
    ax.set_xlabel("t")
    ax.set_title(result.name)
    ax.legend(fontsize=6)
axes[0].set_ylabel("D(t)")
fig.tight_layout()
fig.savefig(f"{out_dir}/figures.png", dpi=120)
