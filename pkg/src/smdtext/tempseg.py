"""Smoothing, peak-valley segmentation, and cycle detection.

The segmentation rule is frozen as follows. Local extrema of the smoothed
series are scanned left to right with an alternating hysteresis: a peak
candidate is retained once the signal has dropped at least ``threshold``
below it, a valley candidate once the signal has risen at least
``threshold`` above it; candidates keep the earliest frame among equal
values. At the end of the scan the trailing candidate is also retained if
it sits strictly inside the series and differs from the last retained
extremum (or the first sample when none was retained) by at least the
threshold; this is what turns a movement that settles into a plateau into
"... decreases ..., holds at ...". Breakpoints are the retained extrema
plus the first and last frames; each interval is classified from its
boundary values and consecutive intervals of the same kind are merged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadWindow

INCREASES = "increases"
DECREASES = "decreases"
HOLDS = "holds"
REPEATS = "repeats"


@dataclass(frozen=True)
class Segment:
    kind: str
    t_start: float
    t_end: float
    v_start: float
    v_end: float
    n: int | None = None  # cycle count, repeats only

    def __post_init__(self):
        assert self.t_start < self.t_end
        if self.kind == REPEATS:
            assert self.n is not None and self.n >= 2


def smooth(values, w: int):
    """Centered moving average; the window shrinks near the boundaries."""
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    if w < 1 or w % 2 == 0:
        raise BadWindow(f"window must be odd and >= 1, got {w}")
    if w > n:
        raise BadWindow(f"window {w} exceeds series length {n}")
    if w == 1:
        return values.copy()
    half = w // 2
    csum = np.concatenate(([0.0], np.cumsum(values)))
    lo = np.maximum(np.arange(n) - half, 0)
    hi = np.minimum(np.arange(n) + half + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def _compress_plateaus(values):
    """Indices of the first sample of each run of equal consecutive values."""
    keep = np.concatenate(([True], np.diff(values) != 0))
    return np.nonzero(keep)[0]


def _local_extrema(values):
    """Indices of strict local extrema, ties broken toward earlier frames."""
    idx = _compress_plateaus(values)
    if len(idx) < 3:
        return []
    v = values[idx]
    d = np.sign(np.diff(v))
    turn = np.nonzero(d[1:] != d[:-1])[0] + 1
    return list(idx[turn])


def retained_extrema(values, threshold: float):
    """Frame indices of extrema retained by the hysteresis rule."""
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    runs = _compress_plateaus(values)
    # the start of a terminal plateau must be visible so that ties break
    # toward the earlier frame there, like everywhere else
    tail = [int(runs[-1])] if runs[-1] != n - 1 else []
    candidates = sorted(set([0] + _local_extrema(values) + tail + [n - 1]))

    retained = []
    direction = 0
    min_idx = max_idx = 0
    min_v = max_v = values[0]
    for i in candidates:
        x = values[i]
        if direction > 0:
            if x > max_v:
                max_v, max_idx = x, i
            elif max_v - x >= threshold:
                retained.append(max_idx)
                direction = -1
                min_v, min_idx = x, i
        elif direction < 0:
            if x < min_v:
                min_v, min_idx = x, i
            elif x - min_v >= threshold:
                retained.append(min_idx)
                direction = 1
                max_v, max_idx = x, i
        else:
            if x > max_v:
                max_v, max_idx = x, i
            if x < min_v:
                min_v, min_idx = x, i
            if max_v - x >= threshold:
                retained.append(max_idx)
                direction = -1
                min_v, min_idx = x, i
            elif x - min_v >= threshold:
                retained.append(min_idx)
                direction = 1
                max_v, max_idx = x, i

    # trailing candidate: splits a move that settles into a plateau
    if direction != 0:
        cand_idx, cand_v = (max_idx, max_v) if direction > 0 else (min_idx, min_v)
        anchor = values[retained[-1]] if retained else values[0]
        if 0 < cand_idx < n - 1 and abs(cand_v - anchor) >= threshold:
            retained.append(cand_idx)
    return retained


def breakpoints(values, threshold: float):
    """Sorted unique breakpoint frames: retained extrema plus both ends."""
    n = len(values)
    return sorted(set([0, n - 1] + retained_extrema(values, threshold)))


def segment_extrema(values, fps: float, threshold: float):
    """Partition a smoothed series into increases/decreases/holds segments."""
    values = np.asarray(values, dtype=np.float64)
    bps = breakpoints(values, threshold)

    raw = []
    for a, b in zip(bps[:-1], bps[1:]):
        va, vb = values[a], values[b]
        if vb - va >= threshold:
            kind = INCREASES
        elif va - vb >= threshold:
            kind = DECREASES
        else:
            kind = HOLDS
        raw.append((kind, a, b))

    merged = []
    for kind, a, b in raw:
        if merged and merged[-1][0] == kind:
            merged[-1] = (kind, merged[-1][1], b)
        else:
            merged.append((kind, a, b))

    segments = []
    for kind, a, b in merged:
        if kind == HOLDS:
            rep = float(np.mean(values[a:b + 1]))
            seg = Segment(HOLDS, a / fps, b / fps, rep, rep)
        else:
            seg = Segment(kind, a / fps, b / fps, float(values[a]), float(values[b]))
        segments.append(seg)
    return segments


def _autocorrelation(x, lag: int) -> float:
    """Normalized autocorrelation at one lag (unbiased, mean removed)."""
    x = np.asarray(x, dtype=np.float64)
    x = x - x.mean()
    var = float(np.mean(x * x))
    if var <= 0 or not 1 <= lag < len(x):
        return 0.0
    r = float(np.mean(x[:-lag] * x[lag:])) / var
    return r


def detect_cycles(segments, raw, fps: float, consistency: float):
    """Merge alternating up-down trains into repeats segments.

    A run of >= 4 alternating increases/decreases segments is merged when
    the magnitude of the normalized autocorrelation of the mean-removed
    series over the run's span, at the run's mean half-period lag, reaches
    the consistency threshold, and the segment amplitudes have a
    coefficient of variation at most (1 - consistency). The amplitude
    check skips the run's first and last segment: a periodic signal that
    starts or ends mid-swing produces partial boundary segments that say
    nothing about the consistency of the oscillation itself.
    """
    raw = np.asarray(raw, dtype=np.float64)
    out = []
    i = 0
    while i < len(segments):
        if segments[i].kind not in (INCREASES, DECREASES):
            out.append(segments[i])
            i += 1
            continue
        j = i + 1
        while (j < len(segments)
               and segments[j].kind in (INCREASES, DECREASES)
               and segments[j].kind != segments[j - 1].kind):
            j += 1
        run = segments[i:j]
        if len(run) >= 4 and _is_cycle_train(run, raw, fps, consistency):
            a = int(round(run[0].t_start * fps))
            b = int(round(run[-1].t_end * fps))
            span = raw[a:b + 1]
            out.append(Segment(
                REPEATS,
                run[0].t_start,
                run[-1].t_end,
                float(span.min()),
                float(span.max()),
                n=len(run) // 2,
            ))
        else:
            out.extend(run)
        i = j
    return out


def _is_cycle_train(run, raw, fps, consistency) -> bool:
    amplitudes = np.array([abs(s.v_end - s.v_start) for s in run[1:-1]])
    mean_amp = amplitudes.mean()
    if mean_amp <= 0:
        return False
    cv = amplitudes.std() / mean_amp
    if cv > 1.0 - consistency:
        return False
    a = int(round(run[0].t_start * fps))
    b = int(round(run[-1].t_end * fps))
    half_period = np.mean([(s.t_end - s.t_start) * fps for s in run])
    lag = max(1, int(round(half_period)))
    r = _autocorrelation(raw[a:b + 1], lag)
    # a periodic signal anti-correlates at half its period, so use |r|
    return abs(r) >= consistency
