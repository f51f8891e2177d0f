# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2025- qscramble Developers and their Assignees

""" Renders the CSV output of a qscramble run to PNG files.

    python scripts/plot_csv.py OUT_DIR

Spreading matrices become heat maps over (j, t); all other CSV files are
drawn as curves against their `t` column.
"""

import glob
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def plot_file(path: str):
    frame = pd.read_csv(path)
    if "t" not in frame.columns:
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    name = os.path.basename(path)
    if name.startswith("spreading_"):
        columns = [c for c in frame.columns if c != "t"]
        image = ax.imshow(
            frame[columns].to_numpy(), aspect="auto", origin="lower",
            extent=(0.5, len(columns) + 0.5, frame["t"].iloc[0], frame["t"].iloc[-1]),
        )
        ax.set_xticks(range(1, len(columns) + 1))
        ax.set_xticklabels([c[1:] for c in columns])
        ax.set_xlabel("j")
        ax.set_ylabel("t")
        fig.colorbar(image, ax=ax, label="C")
    else:
        for column in frame.columns:
            if column != "t":
                ax.plot(frame["t"], frame[column], label=column)
        ax.set_xlabel("t")
        ax.legend()
    fig.tight_layout()
    fig.savefig(path[:-len(".csv")] + ".png")
    plt.close(fig)


def main():
    if len(sys.argv) != 2:
        print(__doc__)
        sys.exit(2)
    for path in sorted(glob.glob(os.path.join(sys.argv[1], "*.csv"))):
        plot_file(path)


if __name__ == "__main__":
    main()
