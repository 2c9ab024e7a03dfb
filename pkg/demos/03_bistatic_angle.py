"""Shrinking the aperture: the bistatic angle from 30 to 150 degrees.

Run:  python3 demos/03_bistatic_angle.py [output_dir]
"""
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from aperture_dsm import ImagingGrid, fresnel_2diel, image, index_sets, synthesize

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

grid = ImagingGrid()
angles = [30, 60, 90, 120, 150]
fig, axes = plt.subplots(2, len(angles), figsize=(3 * len(angles), 6))
for j, alpha in enumerate(angles):
    config, objects = fresnel_2diel(alpha)
    data = synthesize(config, objects)
    print(f"alpha = {alpha:3d}: {len(index_sets(config, 1).measured)} receivers measured")
    for i, mode in enumerate(("single", "multi")):
        imap = image(data, grid, mode=mode)
        ax = axes[i, j]
        ax.imshow(imap.values.T, origin="lower", extent=(-0.1, 0.1, -0.1, 0.1), cmap="jet")
        for s in objects:
            ax.add_patch(plt.Circle(s.center, s.radius, fill=False, color="w"))
        ax.set_title(f"{mode}, alpha = {alpha}")
plt.tight_layout()
plt.savefig(out / "03_alpha.png", dpi=110)
print("figure written to", out)
