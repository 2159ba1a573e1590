"""Deterministic stream generators for the test suite."""
import math
import random


def walk(n, seed, step=0.3):
    """Random walk with uniform headings and uniform step in (0, step]."""
    rng = random.Random(seed)
    x = y = 0.0
    out = []
    for _ in range(n):
        out.append((x, y))
        a = rng.uniform(0.0, 2.0 * math.pi)
        r = step * rng.random()
        x += r * math.cos(a)
        y += r * math.sin(a)
    return out


def zigzag(n, dx=1.0, amp=1.0, y0=0.0):
    """Alternating-height sawtooth marching right."""
    return [(i * dx, y0 + amp * (i % 2)) for i in range(n)]


def noisy_zigzag(n, seed, dx=1.0, amp=1.0, jitter=0.1):
    rng = random.Random(seed)
    out = []
    for i in range(n):
        out.append((i * dx + jitter * dx * (rng.random() - 0.5),
                    amp * (i % 2) + jitter * amp * (rng.random() - 0.5)))
    return out


def smoothed_walk(n, seed, step=0.5, window=4):
    """Moving-average of a random walk; generically no collinear triples."""
    raw = walk(n + window - 1, seed, step)
    out = []
    for i in range(n):
        xs = sum(p[0] for p in raw[i:i + window]) / window
        ys = sum(p[1] for p in raw[i:i + window]) / window
        out.append((xs, ys))
    return out


def curve_scale(pts):
    """Magnitude floor used for tolerance slack in oracle comparisons."""
    m = 0.0
    for x, y in pts:
        ax, ay = abs(x), abs(y)
        if ax > m:
            m = ax
        if ay > m:
            m = ay
    return max(1.0, m)
