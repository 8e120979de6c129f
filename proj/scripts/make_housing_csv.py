# Copyright 2026 The skipring Authors
# SPDX-License-Identifier: Apache-2.0
"""Generates data/housing.csv, the synthetic benchmark table.

506 rows, 13 numeric features with housing-flavored names, and a continuous
"price" label. The label carries a linear signal in the standardized
features plus noise, tuned so that a logistic model fit on the standardized,
row-normalized features reaches roughly 5% held-out error: hard enough that
training curves are informative, easy enough that short runs converge.

The file is committed; rerunning this script reproduces it byte for byte.
"""

import csv
import pathlib

import numpy as np

ROWS = 506
SEED = 160413

FEATURES = [
    ("crime_rate", "lognormal"),
    ("residential_zoned_pct", "uniform100"),
    ("industrial_pct", "uniform30"),
    ("river_adjacent", "bernoulli"),
    ("nox_ppm", "normal_pos"),
    ("avg_rooms", "rooms"),
    ("built_before_1940_pct", "uniform100"),
    ("employment_distance", "lognormal"),
    ("highway_access_index", "index24"),
    ("property_tax_rate", "tax"),
    ("pupil_teacher_ratio", "ratio"),
    ("demographic_index", "uniform400"),
    ("lower_status_pct", "uniform40"),
]

# Standardized-space weights for the price signal; a couple of near-zero
# entries keep some columns almost irrelevant, as in real tables.
WEIGHTS = np.array(
    [-0.9, 0.3, -0.4, 0.25, -0.7, 1.2, -0.1, 0.5, -0.05, -0.6, -0.8, 0.2,
     -1.4]
)
NOISE_STD = 0.55


def draw_column(rng, kind):
    if kind == "lognormal":
        return np.round(rng.lognormal(mean=0.0, sigma=1.0, size=ROWS), 5)
    if kind == "uniform100":
        return np.round(rng.uniform(0.0, 100.0, size=ROWS), 2)
    if kind == "uniform30":
        return np.round(rng.uniform(0.0, 30.0, size=ROWS), 2)
    if kind == "bernoulli":
        return (rng.uniform(size=ROWS) < 0.07).astype(float)
    if kind == "normal_pos":
        return np.round(np.abs(rng.normal(0.55, 0.12, size=ROWS)), 4)
    if kind == "rooms":
        return np.round(rng.normal(6.3, 0.7, size=ROWS), 3)
    if kind == "index24":
        return rng.integers(1, 25, size=ROWS).astype(float)
    if kind == "tax":
        return np.round(rng.uniform(180.0, 720.0, size=ROWS), 0)
    if kind == "ratio":
        return np.round(rng.uniform(12.0, 22.0, size=ROWS), 1)
    if kind == "uniform400":
        return np.round(rng.uniform(0.0, 400.0, size=ROWS), 2)
    if kind == "uniform40":
        return np.round(rng.uniform(1.0, 40.0, size=ROWS), 2)
    raise ValueError(kind)


def standardize(x):
    mu = x.mean(axis=0)
    sd = x.std(axis=0)
    sd[sd == 0.0] = 1.0
    return (x - mu) / sd


def pipeline_error(x, y, train_idx, test_idx, steps=3000, lr=0.5):
    """Logistic regression by full-batch gradient descent on the exact
    feature pipeline (standardize, then row-normalize)."""
    z = standardize(x)
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    theta = np.zeros(z.shape[1])
    zt, yt = z[train_idx], y[train_idx]
    for _ in range(steps):
        margins = yt * (zt @ theta)
        grad = -(yt / (1.0 + np.exp(margins))) @ zt / len(yt)
        theta -= lr * grad
    pred = np.where(z[test_idx] @ theta >= 0.0, 1.0, -1.0)
    return float(np.mean(pred != y[test_idx]))


def main():
    rng = np.random.default_rng(SEED)
    cols = [draw_column(rng, kind) for _, kind in FEATURES]
    x = np.column_stack(cols)

    signal = standardize(x) @ WEIGHTS
    price = 50.0 + 6.0 * signal + rng.normal(0.0, 6.0 * NOISE_STD, size=ROWS)
    price = np.round(price, 2)

    y = np.where(price > np.median(price), 1.0, -1.0)
    perm = rng.permutation(ROWS)
    err = pipeline_error(x, y, perm[:405], perm[405:])
    print(f"held-out error of the reference fit: {err:.4f}")
    assert err <= 0.10, "dataset drifted: regenerate with different tuning"

    out = pathlib.Path(__file__).resolve().parent.parent / "data/housing.csv"
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([name for name, _ in FEATURES] + ["price"])
        for i in range(ROWS):
            row = [f"{v:.6g}" for v in x[i]] + [f"{price[i]:.2f}"]
            writer.writerow(row)
    print(f"wrote {out} ({ROWS} rows, {len(FEATURES)} features)")


if __name__ == "__main__":
    main()
