"""What the constant in the unmeasurable entries does to the image.

Run:  python3 demos/02_converted_constant.py [output_dir]
"""
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from aperture_dsm import ImagingGrid, fresnel_2diel, image, synthesize

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

config, objects = fresnel_2diel()
data = synthesize(config, objects)
print(f"largest measured |u| = {abs(data.entries).max():.4f}")

# The object term scales with the data, the constant term with C times the
# number of converted entries. Once C beats the data the map turns into a
# blob around the origin, whatever the objects are.
grid = ImagingGrid()
constants = [0, 0.05, 0.5, 2, 10]
fig, axes = plt.subplots(2, len(constants), figsize=(3 * len(constants), 6))
for j, C in enumerate(constants):
    mm = data.with_constant(C)
    for i, mode in enumerate(("single", "multi")):
        imap = image(mm, grid, mode=mode)
        ax = axes[i, j]
        ax.imshow(imap.values.T, origin="lower", extent=(-0.1, 0.1, -0.1, 0.1), cmap="jet")
        for s in objects:
            ax.add_patch(plt.Circle(s.center, s.radius, fill=False, color="w"))
        ax.set_title(f"{mode}, C = {C}")
        x, y = imap.argmax_point()
        print(f"C = {C:>5}: {mode:6s} argmax ({x:+.3f}, {y:+.3f})")
plt.tight_layout()
plt.savefig(out / "02_constant.png", dpi=110)
print("figure written to", out)
