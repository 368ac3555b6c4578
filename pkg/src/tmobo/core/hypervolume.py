"""Exact hypervolume and hypervolume-improvement computation.

All routines assume minimization with a reference point `r` bounding the
region of interest from above.  Points with any coordinate >= r contribute
nothing and are clipped out before computation.

Dispatch: sort-sweep for k=2, dimension-sweep for k=3, recursive slicing
for k>=4.  `hv_recursive` is also exported so the cheap implementations
can be cross-checked against the generic one.
"""

from __future__ import annotations

import bisect

import numpy as np


def _clip_points(points, r) -> tuple[np.ndarray, np.ndarray]:
    r = np.asarray(r, dtype=float)
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return np.empty((0, r.shape[0])), r
    points = np.atleast_2d(points)
    if points.shape[1] != r.shape[0]:
        raise ValueError("point/reference dimension mismatch")
    keep = np.all(points < r, axis=1)
    return points[keep], r


def hypervolume(points, r) -> float:
    """Lebesgue measure of the union of boxes [y, r] over y in `points`."""
    pts, r = _clip_points(points, r)
    if pts.shape[0] == 0:
        return 0.0
    k = r.shape[0]
    if k == 1:
        return float(r[0] - pts[:, 0].min())
    if k == 2:
        return _hv2d(pts, r)
    if k == 3:
        return _hv3d(pts, r)
    return hv_recursive(pts, r)


def hvi_set(points, front, r) -> float:
    """HV(front u points | r) - HV(front | r); zero for dominated points."""
    r = np.asarray(r, dtype=float)
    if r.shape[0] == 2:
        return Staircase2D(front, r).hvi_points_union(points)
    pts, _ = _clip_points(points, r)
    front_arr = np.atleast_2d(np.asarray(front, dtype=float))
    if front_arr.size == 0:
        return hypervolume(pts, r)
    combined = np.concatenate([front_arr, pts], axis=0) if pts.size else front_arr
    return hypervolume(combined, r) - hypervolume(front_arr, r)


def _hv2d(pts: np.ndarray, r: np.ndarray) -> float:
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    x = pts[order, 0]
    y = pts[order, 1]
    ymin = np.minimum.accumulate(y)
    x_next = np.append(x[1:], r[0])
    return float(np.sum((x_next - x) * (r[1] - ymin)))


def _hv3d(pts: np.ndarray, r: np.ndarray) -> float:
    # Sweep along the third coordinate, maintaining the 2-D staircase of
    # processed points and accumulating slab volumes.
    order = np.argsort(pts[:, 2], kind="stable")
    xs: list[float] = []  # staircase x ascending, y strictly descending
    ys: list[float] = []
    volume = 0.0
    area = 0.0
    z_prev: float | None = None
    for px, py, pz in pts[order]:
        if z_prev is not None:
            volume += area * (pz - z_prev)
        z_prev = pz
        i = bisect.bisect_right(xs, px)
        if i > 0 and ys[i - 1] <= py:
            continue  # dominated in the (x, y) plane
        j = i
        while j < len(xs) and ys[j] >= py:
            j += 1
        xs[i:j] = [px]
        ys[i:j] = [py]
        area = 0.0
        for idx, (sx, sy) in enumerate(zip(xs, ys)):
            nx = xs[idx + 1] if idx + 1 < len(xs) else r[0]
            area += (nx - sx) * (r[1] - sy)
    volume += area * (r[2] - z_prev)
    return float(volume)


def hv_recursive(points, r) -> float:
    """Recursive-slicing hypervolume, valid for any k >= 1."""
    pts, r = _clip_points(points, r)
    if pts.shape[0] == 0:
        return 0.0
    from tmobo.core.dominance import non_dominated_mask

    pts = pts[non_dominated_mask(pts)]
    pts = pts[np.argsort(pts[:, 0])[::-1]]
    return _wfg(pts, r)


def _wfg(pts: np.ndarray, r: np.ndarray) -> float:
    n = pts.shape[0]
    if n == 0:
        return 0.0
    if n == 1:
        return float(np.prod(r - pts[0]))
    total = 0.0
    for i in range(n):
        p = pts[i]
        incl = float(np.prod(r - p))
        rest = pts[i + 1 :]
        if rest.shape[0]:
            limited = np.maximum(rest, p)
            keep = np.all(limited < r, axis=1)
            limited = limited[keep]
            if limited.shape[0]:
                from tmobo.core.dominance import non_dominated_mask

                limited = limited[non_dominated_mask(limited)]
                incl -= _wfg(limited, r)
        total += incl
    return total


def hv_inclusion_exclusion(points, r) -> float:
    """Reference implementation via inclusion-exclusion over all subsets.

    Exponential in the number of points; intended as an independent
    cross-check for small fronts.
    """
    pts, r = _clip_points(points, r)
    n = pts.shape[0]
    if n == 0:
        return 0.0
    if n > 20:
        raise ValueError("inclusion-exclusion oracle limited to 20 points")
    total = 0.0
    for mask in range(1, 1 << n):
        subset = pts[[i for i in range(n) if mask >> i & 1]]
        corner = subset.max(axis=0)
        vol = float(np.prod(np.maximum(r - corner, 0.0)))
        total += vol if bin(mask).count("1") % 2 == 1 else -vol
    return total


class Staircase2D:
    """Precomputed 2-D attainment staircase for fast batched HVI queries.

    Built once from a front and reference point; answers hypervolume
    improvement for batches of point sets (e.g. sampled trajectories)
    without re-sorting the front.
    """

    def __init__(self, front, r) -> None:
        r = np.asarray(r, dtype=float)
        if r.shape != (2,):
            raise ValueError("Staircase2D requires k=2")
        self.r = r
        pts, _ = _clip_points(front, r)
        if pts.shape[0] == 0:
            self.xs = np.empty(0)
            self.ys = np.empty(0)
            self._cum = np.zeros(1)
            self.hv = 0.0
            return
        from tmobo.core.dominance import non_dominated_mask

        pts = pts[non_dominated_mask(pts)]
        order = np.argsort(pts[:, 0])
        self.xs = pts[order, 0]
        self.ys = pts[order, 1]  # strictly decreasing
        widths = np.append(self.xs[1:], r[0]) - self.xs
        # cumulative integral of the staircase height G from xs[0]
        self._cum = np.concatenate([[0.0], np.cumsum(self.ys * widths)])
        # fused affine table: integral up to u in cell i is _c0[i] + ys[i]*u
        self._c0 = self._cum[:-1] - self.ys * self.xs
        self.hv = float(np.sum(widths * (r[1] - self.ys)))

    def _integral_g(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Integral of the staircase height G over [a, b], a <= b <= r0.

        G equals r1 left of the first step and the step heights after.
        """
        r0, r1 = self.r
        if self.xs.size == 0:
            return r1 * (b - a)
        x0 = self.xs[0]
        left = np.clip(np.minimum(b, x0) - a, 0.0, None) * r1
        aa = np.clip(a, x0, r0)
        bb = np.clip(b, x0, r0)
        ia = np.searchsorted(self.xs, aa, side="right") - 1
        ib = np.searchsorted(self.xs, bb, side="right") - 1
        ca = self._c0[ia] + self.ys[ia] * aa
        cb = self._c0[ib] + self.ys[ib] * bb
        return left + (cb - ca)

    def _drop_threshold(self, h: np.ndarray) -> np.ndarray:
        """Largest x below which the staircase height exceeds h."""
        r0 = self.r[0]
        if self.xs.size == 0:
            return np.full(h.shape, r0)
        idx = np.searchsorted(-self.ys, -h, side="left")
        return np.where(idx < self.xs.size, self.xs[np.minimum(idx, self.xs.size - 1)], r0)

    def hvi_batch(self, trajs: np.ndarray) -> np.ndarray:
        """HVI of each row of point sets against the staircase.

        trajs: (B, T, 2).  Returns (B,) non-negative improvements.
        """
        trajs = np.asarray(trajs, dtype=float)
        if trajs.ndim == 2:
            trajs = trajs[:, None, :]
        B, T, _ = trajs.shape
        r0, r1 = self.r
        px = trajs[..., 0].copy()
        py = trajs[..., 1].copy()
        # Neutralize points outside the reference box: y >= r1 flattens to
        # height r1; x >= r0 collapses to a zero-width segment at r0.
        py = np.minimum(py, r1)
        bad_x = px >= r0
        px = np.where(bad_x, r0, px)
        py = np.where(bad_x, r1, py)

        order = np.argsort(px, axis=1, kind="stable")
        px = np.take_along_axis(px, order, axis=1)
        py = np.take_along_axis(py, order, axis=1)
        heights = np.minimum.accumulate(py, axis=1)
        seg_end = np.concatenate([px[:, 1:], np.full((B, 1), r0)], axis=1)
        cut = self._drop_threshold(heights.ravel()).reshape(B, T)
        end = np.minimum(seg_end, cut)
        start = np.minimum(px, end)
        gain = self._integral_g(start.ravel(), end.ravel()).reshape(B, T)
        gain -= heights * (end - start)
        return np.maximum(gain.sum(axis=1), 0.0)

    def hvi_points_union(self, points) -> float:
        """HVI of one point set (scalar convenience wrapper)."""
        points = np.asarray(points, dtype=float)
        if points.size == 0:
            return 0.0
        points = np.atleast_2d(points)
        return float(self.hvi_batch(points[None, :, :])[0])
