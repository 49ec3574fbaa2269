"""Symbolic statistics of winners words: subword census, Shannon block
entropies, least-squares entropy-rate estimation, and eventual-period
detection.

Natural logarithms throughout, so a fair binary word has entropy rate
log 2 and an alphabet of size N caps the rate at log N.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class WinnersWord:
    """Sequence of election winners along an orbit, one letter per step."""

    letters: str
    source: str = ""

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters


def winners_word(source, start, n: int, label: str = "") -> WinnersWord:
    """First ``n`` winners along the orbit of ``start`` under ``source``
    (anything with ``step`` and ``winner``)."""
    if n < 1:
        raise ValueError("need at least one letter")
    out = []
    s = start
    for _ in range(n):
        letter = source.winner(s)
        if len(letter) != 1:
            raise ValueError("winners words need single-character candidate names")
        out.append(letter)
        s = source.step(s)
    return WinnersWord("".join(out), label)


def _letters(word) -> str:
    return word.letters if isinstance(word, WinnersWord) else word


def _encode(text: str):
    data = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    alphabet, inv = np.unique(data, return_inverse=True)
    return [chr(b) for b in alphabet], inv.astype(np.int64)


def _window_counts(codes: np.ndarray, base: int, block: int):
    """Counts of the exact integer codes of all length-``block`` windows.
    Codes are injective (base**block fits in 64 bits for every supported
    alphabet/block combination), so no collision handling is needed."""
    cur = codes
    for k in range(1, block):
        cur = cur[:-1] * base + codes[k:]
    return np.unique(cur, return_counts=True)


@dataclass(frozen=True)
class Census:
    counts: dict
    distinct: int
    windows: int

    def proportions(self) -> dict:
        return {w: c / self.windows for w, c in self.counts.items()}


def subword_census(word, block: int, n: int | None = None) -> Census:
    """Occurrence counts of every length-``block`` factor of the first
    ``n`` letters."""
    text = _letters(word)
    n = len(text) if n is None else n
    if not 1 <= block <= n:
        raise ValueError("need 1 <= block <= n")
    text = text[:n]
    alphabet, codes = _encode(text)
    base = max(2, len(alphabet))
    if base**block > 2**62:
        raise ValueError("block too long for exact window codes")
    values, counts = _window_counts(codes, base, block)
    decoded: dict[str, int] = {}
    for v, c in zip(values.tolist(), counts.tolist()):
        digits = []
        for _ in range(block):
            v, d = divmod(v, base)
            digits.append(alphabet[d])
        decoded["".join(reversed(digits))] = c
    return Census(decoded, len(values), n - block + 1)


def shannon_entropy(probs: Sequence[float]) -> float:
    """Entropy (nats) of a probability vector, with 0 log 0 = 0."""
    total = 0.0
    acc = 0.0
    for p in probs:
        if p < 0:
            raise ValueError("negative probability")
        total += p
        if p > 0:
            acc -= p * math.log(p)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total}, not 1")
    return acc


def _entropy_from_counts(counts: np.ndarray) -> float:
    w = counts.sum()
    p = counts / w
    return float(-(p * np.log(p)).sum())


@dataclass(frozen=True)
class EntropyProfile:
    """Block entropies H(block) and distinct-factor counts S(block) of a
    word prefix, for block lengths 1..max_block."""

    blocks: tuple[int, ...]
    entropy: tuple[float, ...]
    distinct: tuple[int, ...]
    n: int

    @property
    def log_distinct(self) -> tuple[float, ...]:
        return tuple(math.log(s) for s in self.distinct)


def ks_profile(word, n: int | None = None, max_block: int = 16) -> EntropyProfile:
    text = _letters(word)
    n = len(text) if n is None else n
    if not 1 <= max_block <= n:
        raise ValueError("need 1 <= max_block <= n")
    text = text[:n]
    alphabet, codes = _encode(text)
    base = max(2, len(alphabet))
    if base**max_block > 2**62:
        raise ValueError("max_block too long for exact window codes")
    entropy, distinct = [], []
    cur = codes
    for block in range(1, max_block + 1):
        if block > 1:
            cur = cur[:-1] * base + codes[block - 1:]
        values, counts = np.unique(cur, return_counts=True)
        entropy.append(_entropy_from_counts(counts))
        distinct.append(len(values))
    windows = n - max_block + 1
    if distinct[-1] > windows / 10:
        warnings.warn(
            f"S({max_block}) = {distinct[-1]} leaves fewer than 10 windows per factor; "
            "block entropies at the top lengths will be biased low",
            stacklevel=2,
        )
    return EntropyProfile(tuple(range(1, max_block + 1)), tuple(entropy), tuple(distinct), n)


@dataclass(frozen=True)
class EntropyFit:
    slope: float
    intercept: float
    residual_rms: float
    plateau_suspected: bool
    low_confidence: bool


def ks_entropy_estimate(profile: EntropyProfile, fit_range: tuple[int, int] = (4, 14)) -> EntropyFit:
    """Least-squares line through (block, H(block)) over ``fit_range``;
    the slope estimates the entropy rate.  A flat fit with a constant
    distinct-factor count flags an eventually periodic word; a residual
    RMS of 0.02 or more flags a poorly aligned profile."""
    lo, hi = fit_range
    if lo < profile.blocks[0] or hi > profile.blocks[-1] or hi - lo + 1 < 3:
        raise ValueError("degenerate fit range")
    xs = np.arange(lo, hi + 1, dtype=float)
    ys = np.array(profile.entropy[lo - 1: hi])
    design = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, ys, rcond=None)
    resid = ys - design @ np.array([slope, intercept])
    rms = float(np.sqrt(np.mean(resid**2)))
    s_values = profile.distinct[lo - 1: hi]
    plateau = abs(float(slope)) < 0.01 and len(set(s_values)) == 1
    return EntropyFit(
        slope=float(slope),
        intercept=float(intercept),
        residual_rms=rms,
        plateau_suspected=plateau,
        low_confidence=rms >= 0.02,
    )


def _z_array(text: str) -> list[int]:
    n = len(text)
    z = [0] * n
    z[0] = n
    l = r = 0
    for i in range(1, n):
        if i < r:
            z[i] = min(r - i, z[i - l])
        while i + z[i] < n and text[z[i]] == text[i + z[i]]:
            z[i] += 1
        if i + z[i] > r:
            l, r = i, i + z[i]
    return z


def detect_eventual_period(word) -> tuple[int, int] | None:
    """Smallest period p (then smallest preperiod q) such that the word
    repeats with period p from position q on, requiring both p and q to
    fit in the first third of the word; None when nothing qualifies."""
    text = _letters(word)
    n = len(text)
    if n < 3:
        return None
    limit = n // 3
    rev = text[::-1]
    z = _z_array(rev)
    for p in range(1, limit + 1):
        # the longest p-periodic suffix of the word has length p + z[p]
        length = p + z[p]
        pre = n - length
        if pre <= limit:
            return max(0, pre), p
    return None
