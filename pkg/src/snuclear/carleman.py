"""Truncated Carleman-type symbols on the circle.

The coefficients have moduli ``(n+2)^(-1/2) log(n+2)^(-beta)``, which are
square summable but not p-summable for any p < 2. Each dyadic block
``[2^k, 2^(k+1))`` carries quadratic Gauss-sum phases, so the block's
trigonometric sum is O(sqrt(2^k)) uniformly on the circle and the symbol
stays bounded when beta > 1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT
from .linalg import dft


@dataclass(frozen=True)
class CarlemanSymbol:
    N: int
    beta: float
    coefficients: np.ndarray
    grid_samples: np.ndarray

    @property
    def oversample(self) -> int:
        return self.grid_samples.size // self.N

    @property
    def sup_norm(self) -> float:
        return sup_norm_estimate(self.grid_samples)


def _check_power_of_two(n: int, minimum: int = 1) -> None:
    if n < minimum or n & (n - 1):
        raise ValueError(f"N must be a power of two >= {minimum}, got {n}")


def carleman_coefficients(N: int, beta: float = DEFAULT.beta) -> np.ndarray:
    """First ``N`` Fourier coefficients of the Carleman-type symbol."""
    _check_power_of_two(N, 8)
    if not beta > 1:
        raise ValueError(f"beta must exceed 1 for a bounded symbol, got {beta}")
    n = np.arange(N)
    moduli = (n + 2.0) ** -0.5 * np.log(n + 2.0) ** -beta
    phase = np.zeros(N)
    for k in range(int(math.log2(N))):
        block = 2**k
        j = np.arange(block)
        phase[block:2 * block] = np.pi * j**2 / block
    return moduli * np.exp(1j * phase)


def synthesize(c, oversample: int = DEFAULT.oversample) -> np.ndarray:
    """Samples ``f(t_j) = sum_n c_n exp(2 pi i n j / M)`` on ``M = oversample * len(c)`` points."""
    c = np.asarray(c, dtype=complex).ravel()
    if oversample < 1:
        raise ValueError("oversample must be a positive integer")
    padded = np.zeros(oversample * c.size, dtype=complex)
    padded[:c.size] = c
    return dft(padded, inverse=True)


def sup_norm_estimate(samples) -> float:
    """Largest modulus over the sampled grid."""
    samples = np.asarray(samples)
    if samples.size == 0:
        raise ValueError("no samples")
    return float(np.abs(samples).max())


def carleman_symbol(N: int, beta: float = DEFAULT.beta,
                    oversample: int = DEFAULT.oversample) -> CarlemanSymbol:
    c = carleman_coefficients(N, beta)
    return CarlemanSymbol(N, beta, c, synthesize(c, oversample))


def write_coefficients(path, c) -> None:
    """Write a coefficient file: CSV rows of (index, modulus, phase)."""
    c = np.asarray(c, dtype=complex)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "modulus", "phase"])
        for i, z in enumerate(c):
            writer.writerow([i, repr(float(abs(z))), repr(float(np.angle(z)))])


def read_coefficients(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path}: empty coefficient file")
    out = np.zeros(len(rows), dtype=complex)
    for row in rows:
        i = int(row["index"])
        if not 0 <= i < len(rows):
            raise ValueError(f"{path}: index {i} out of range")
        out[i] = float(row["modulus"]) * np.exp(1j * float(row["phase"]))
    return out
