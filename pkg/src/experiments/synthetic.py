"""
Seeded synthetic series for experiments and tests.

Every generator draws from a caller-supplied ``numpy.random.Generator`` so a
single seed reproduces a whole experiment.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np


TEMPLATE_NAMES = ("sine", "ramp", "v_shape", "crown")

Region = Tuple[int, int]


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """The one generator an experiment draws from."""
    return np.random.default_rng(seed)


def white_noise(n: int, rng: np.random.Generator) -> np.ndarray:
    """I.i.d. standard normal samples."""
    return rng.standard_normal(n)


def random_walk(n: int, rng: np.random.Generator) -> np.ndarray:
    """Cumulative sum of unit-variance Gaussian steps."""
    return np.cumsum(rng.standard_normal(n))


def templates(m: int) -> Dict[str, np.ndarray]:
    """
    Four shapes of length m with zero or negative pairwise correlation.

    The sine is odd about the window center; the V and crown are even.
    """
    t = np.linspace(0.0, 1.0, m, endpoint=False)
    return {
        "sine": np.sin(2.0 * np.pi * t),
        "ramp": np.clip(3.0 * t - 0.5, 0.0, 1.0),
        "v_shape": np.abs(2.0 * t - 1.0),
        "crown": np.abs(np.sin(3.0 * np.pi * t))
    }


def _gaussian(t: np.ndarray, center: float, width: float, amplitude: float) -> np.ndarray:
    return amplitude * np.exp(-0.5 * ((t - center) / width) ** 2)


def ecg_beat(period: int, anomalous_kind: Optional[str] = None) -> np.ndarray:
    """
    One heartbeat-like cycle of ``period`` samples.

    ``anomalous_kind`` replaces the morphology: "wide_qrs" widens and lowers
    the main spike, "inverted_t" flips the late wave, "missing_p" drops the
    early wave and adds a premature spike.
    """
    t = np.linspace(0.0, 1.0, period, endpoint=False)
    p_wave, qrs_width, t_wave, extra = 0.15, 0.012, 0.3, 0.0

    if anomalous_kind == "wide_qrs":
        qrs_width = 0.05
    elif anomalous_kind == "inverted_t":
        t_wave = -0.45
    elif anomalous_kind == "missing_p":
        p_wave, extra = 0.0, 0.6
    elif anomalous_kind is not None:
        raise ValueError(f"Unknown anomalous beat kind: {anomalous_kind}")

    beat = (
        _gaussian(t, 0.2, 0.025, p_wave)
        + _gaussian(t, 0.37, 0.01, -0.1)
        + _gaussian(t, 0.4, qrs_width, 1.0 if anomalous_kind != "wide_qrs" else 0.6)
        + _gaussian(t, 0.43, 0.01, -0.25)
        + _gaussian(t, 0.65, 0.04, t_wave)
    )
    if extra:
        beat += _gaussian(t, 0.15, 0.012, extra)
    return beat


def ecg_like(n: int, rng: np.random.Generator, period: int = 100, noise: float = 0.01) -> np.ndarray:
    """Periodic heartbeat-like series with small amplitude jitter and additive noise."""
    beats = -(-n // period)
    beat = ecg_beat(period)
    gains = 1.0 + 0.02 * rng.standard_normal(beats)
    series = (gains[:, None] * beat[None, :]).ravel()[:n]
    return series + noise * rng.standard_normal(n)


@dataclass
class LabeledSeries:
    """A synthetic series plus where each class (or anomaly) was placed."""

    values: np.ndarray
    instances: Dict[str, List[int]] = field(default_factory=dict)
    regions: List[Region] = field(default_factory=list)
    instance_length: int = 0


def regime_series(
    rng: np.random.Generator,
    m: int,
    instances_per_regime: int = 30,
    noise: float = 0.01,
    gap_noise: float = 1.0
) -> LabeledSeries:
    """
    Four consecutive regimes, each repeating one template.

    Instances are separated by random-length noise gaps, so only aligned
    windows repeat.
    """
    shapes = templates(m)
    chunks: List[np.ndarray] = []
    instances: Dict[str, List[int]] = {name: [] for name in TEMPLATE_NAMES}
    position = 0
    for name in TEMPLATE_NAMES:
        for _ in range(instances_per_regime):
            instances[name].append(position)
            chunk = shapes[name] + noise * rng.standard_normal(m)
            gap = gap_noise * rng.standard_normal(int(rng.integers(m // 4, m // 2 + 1)))
            chunks.extend([chunk, gap])
            position += m + gap.shape[0]
    return LabeledSeries(values=np.concatenate(chunks), instances=instances, instance_length=m)


def class_insertion_series(
    rng: np.random.Generator,
    m: int,
    background_instances: int = 120,
    min_inserted: int = 2,
    max_inserted: int = 16,
    noise: float = 0.05
) -> LabeledSeries:
    """
    A dominant background class with a few instances of each other class inserted.

    Background instances are sine cycles; every foreground template gets
    between ``min_inserted`` and ``max_inserted`` instances at random slots.
    """
    shapes = templates(m)
    background, *foreground = TEMPLATE_NAMES
    labels = [background] * background_instances
    for name in foreground:
        labels.extend([name] * int(rng.integers(min_inserted, max_inserted + 1)))
    # keep the series starting and ending on background
    middle = labels[1:-1]
    rng.shuffle(middle)
    labels = [labels[0]] + middle + [labels[-1]]

    chunks = []
    instances: Dict[str, List[int]] = {name: [] for name in TEMPLATE_NAMES}
    for slot, name in enumerate(labels):
        instances[name].append(slot * m)
        gain = 1.0 + 0.1 * rng.standard_normal()
        chunks.append(gain * shapes[name] + noise * rng.standard_normal(m))
    return LabeledSeries(values=np.concatenate(chunks), instances=instances, instance_length=m)


def planted_anomaly_ecg(
    rng: np.random.Generator,
    beats: int,
    period: int = 100,
    anomalies: int = 1,
    noise: float = 0.01
) -> LabeledSeries:
    """
    Heartbeat-like series with ``anomalies`` beats replaced by abnormal morphology.

    Anomalous beats avoid the first and last beat; ``regions`` holds each
    replaced beat as [start, start + period).
    """
    if anomalies > max(beats - 2, 0):
        raise ValueError("Too many anomalies for the number of beats")

    values = ecg_like(beats * period, rng, period=period, noise=noise)
    slots = np.sort(rng.choice(np.arange(1, beats - 1), size=anomalies, replace=False))
    kinds = ("wide_qrs", "inverted_t", "missing_p")
    regions = []
    for slot in slots:
        start = int(slot) * period
        kind = kinds[int(rng.integers(len(kinds)))]
        values[start:start + period] = ecg_beat(period, kind) + noise * rng.standard_normal(period)
        regions.append((start, start + period))
    return LabeledSeries(
        values=values,
        instances={"anomaly": [start for start, _ in regions]},
        regions=regions,
        instance_length=period
    )


GENERATORS = ("noise", "random-walk", "ecg", "regimes", "anomaly-ecg", "class-insertion")


def generate(kind: str, n: int, rng: np.random.Generator, m: int = 100) -> LabeledSeries:
    """
    Build an n-sample series of the named kind.

    Structured kinds are generated at the smallest size covering n and then
    truncated; regions and instances past n are dropped.
    """
    if kind == "noise":
        return LabeledSeries(values=white_noise(n, rng))
    if kind == "random-walk":
        return LabeledSeries(values=random_walk(n, rng))
    if kind == "ecg":
        return LabeledSeries(values=ecg_like(n, rng, period=m))
    if kind == "regimes":
        per_regime = max(1, -(-n // (4 * m)))
        labeled = regime_series(rng, m, instances_per_regime=per_regime)
    elif kind == "anomaly-ecg":
        beats = max(3, -(-n // m))
        labeled = planted_anomaly_ecg(rng, beats, period=m, anomalies=max(1, beats // 50))
    elif kind == "class-insertion":
        labeled = class_insertion_series(rng, m, background_instances=max(2, n // m))
    else:
        raise ValueError(f"Unknown generator kind: {kind}")

    return LabeledSeries(
        values=labeled.values[:n],
        instances={
            name: [s for s in starts if s + labeled.instance_length <= n]
            for name, starts in labeled.instances.items()
        },
        regions=[(s, e) for s, e in labeled.regions if e <= n],
        instance_length=labeled.instance_length
    )
