"""Deterministic ODE kernel: adaptive embedded Runge-Kutta with dense output,
scalar-event detection, and bracketing root refinement.

The stepper is a Dormand-Prince 5(4) pair with the standard quartic
interpolant. Everything is plain float arithmetic: identical inputs produce
bit-identical trajectories.
"""

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NoSignChangeError, StepUnderflowError

# Dormand-Prince 5(4) tableau. The fifth-order solution is propagated; the
# last stage is FSAL.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# Difference between the 5th- and 4th-order weights (local error estimate).
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# Quartic dense-output coefficients: y(s0 + x h) = y0 + h * (K^T P) @ [x, x^2, x^3, x^4].
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_ORDER_EXP = -0.2  # 1 / (error estimator order)

REACHED_END = "reached_end"
EVENT_STOP = "event"
GUARD_STOP = "guard"
UNDERFLOW = "step_underflow"  # only on partial trajectories carried by StepUnderflowError


@dataclass(frozen=True)
class Event:
    """Scalar crossing monitor g(s, y) = 0.

    direction: +1 counts only -/+ crossings, -1 only +/-, 0 both.
    terminal: stop the integration at the crossing.
    """

    fn: Callable[[float, np.ndarray], float]
    direction: int = 0
    terminal: bool = False
    name: str = ""


@dataclass(frozen=True)
class IvpSpec:
    """Initial value problem: y' = rhs(s, y), y(s0) = y0."""

    rhs: Callable[[float, np.ndarray], np.ndarray]
    s0: float
    y0: Sequence[float]
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = np.inf
    events: tuple[Event, ...] = ()

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_step <= 0:
            raise ValueError("max_step must be positive")

    @property
    def dim(self) -> int:
        return len(self.y0)


@dataclass(frozen=True)
class EventHit:
    index: int
    name: str
    s: float
    state: np.ndarray


@dataclass
class Trajectory:
    """Integration result with a piecewise-quartic dense output.

    The grid ``s`` is strictly monotone in the direction of integration, and
    the interpolant reproduces the grid samples exactly at the knots.
    """

    s: np.ndarray
    states: np.ndarray
    reason: str
    events: list[EventHit] = field(default_factory=list)
    _seg_s0: np.ndarray = None
    _seg_h: np.ndarray = None
    _seg_y0: np.ndarray = None
    _seg_q: np.ndarray = None  # (n_seg, dim, 4)

    @property
    def direction(self) -> float:
        return 1.0 if self.s[-1] >= self.s[0] else -1.0

    @property
    def s_end(self) -> float:
        return float(self.s[-1])

    def _segment_index(self, s: float) -> int:
        d = self.direction
        knots = self._seg_s0 * d
        i = int(np.searchsorted(knots, s * d, side="right")) - 1
        return min(max(i, 0), len(self._seg_s0) - 1)

    def eval_segment(self, i: int, s: float) -> np.ndarray:
        x = (s - self._seg_s0[i]) / self._seg_h[i]
        p = np.array([x, x * x, x * x * x, x * x * x * x])
        return self._seg_y0[i] + self._seg_h[i] * (self._seg_q[i] @ p)

    def __call__(self, s):
        if np.ndim(s) == 0:
            return self.eval_segment(self._segment_index(float(s)), float(s))
        return np.array([self.eval_segment(self._segment_index(float(si)), float(si)) for si in np.asarray(s)])

    def component(self, s, k: int):
        """Dense evaluation of one state component."""
        if np.ndim(s) == 0:
            return float(self(s)[k])
        return self(s)[:, k]


def _rms_norm(v: np.ndarray) -> float:
    return float(np.sqrt(np.mean(v * v)))


def _initial_step(rhs, s0, y0, f0, direction, rtol, atol, max_step):
    # Hairer-Norsett-Wanner starting-step heuristic (deterministic).
    scale = atol + rtol * np.abs(y0)
    d0 = _rms_norm(y0 / scale)
    d1 = _rms_norm(f0 / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + h0 * direction * f0
    f1 = rhs(s0 + h0 * direction, y1)
    d2 = _rms_norm((f1 - f0) / scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, max_step)


def integrate(spec: IvpSpec, s_end: float, guard: Callable[[float, np.ndarray], bool] = None) -> Trajectory:
    """Integrate ``spec`` until s_end, a terminal event, or a guard stop.

    The guard predicate is checked at every stage state before the right-hand
    side is evaluated there; a step that would leave the admissible region is
    retried with half the step, and if no admissible step remains the
    trajectory ends at the last accepted point with reason ``guard``.

    Raises StepUnderflowError if the error controller alone (no guard
    involvement) demands a step below the minimum.
    """
    rhs = spec.rhs
    s = float(spec.s0)
    y = np.asarray(spec.y0, dtype=float)
    if guard is not None and not guard(s, y):
        raise ValueError("initial state does not satisfy the guard")

    direction = 1.0 if s_end >= s else -1.0
    f0 = np.asarray(rhs(s, y), dtype=float)
    h = _initial_step(rhs, s, y, f0, direction, spec.rtol, spec.atol, spec.max_step)
    h = min(h, abs(s_end - s))

    grid = [s]
    samples = [y.copy()]
    seg_s0, seg_h, seg_y0, seg_q = [], [], [], []
    hits: list[EventHit] = []
    ev_vals = [ev.fn(s, y) for ev in spec.events]
    reason = REACHED_END

    K = np.empty((7, spec.dim))
    K[0] = f0
    step_rejected = False

    def finish(why):
        traj = Trajectory(
            s=np.array(grid),
            states=np.array(samples),
            reason=why,
            events=hits,
            _seg_s0=np.array(seg_s0) if seg_s0 else np.array([s]),
            _seg_h=np.array(seg_h) if seg_h else np.array([1.0]),
            _seg_y0=np.array(seg_y0) if seg_y0 else np.array([y]),
            _seg_q=np.array(seg_q) if seg_q else np.zeros((1, spec.dim, 4)),
        )
        return traj

    while direction * (s_end - s) > 0:
        h_min = max(1e-14, 16 * np.finfo(float).eps * abs(s))
        remaining = abs(s_end - s)
        if remaining < h_min:
            break  # at s_end within resolution
        h = min(h, spec.max_step, remaining)
        last_step = h >= remaining
        if h < h_min:
            raise StepUnderflowError(
                f"step size underflow at s={s!r}", trajectory=finish(UNDERFLOW)
            )

        guard_blocked = False
        while True:
            # Build the six new stages; check the guard before each RHS call.
            ok = True
            for i in range(1, 7):
                yi = y + h * direction * (K[:i].T @ _A[i])
                si = s + _C[i] * h * direction
                if guard is not None and not guard(si, yi):
                    ok = False
                    break
                K[i] = rhs(si, yi)
            if ok:
                break
            h *= 0.5
            guard_blocked = True
            if h < h_min:
                reason = GUARD_STOP
                return finish(reason)

        y_new = y + h * direction * (K.T @ _B)
        if not (np.all(np.isfinite(K)) and np.all(np.isfinite(y_new))):
            err = np.inf
        else:
            err_vec = h * (K.T @ _E)
            scale = spec.atol + spec.rtol * np.maximum(np.abs(y), np.abs(y_new))
            err = _rms_norm(err_vec / scale)

        if err > 1.0:
            factor = max(_MIN_FACTOR, _SAFETY * err**_ORDER_EXP)
            h *= factor
            step_rejected = True
            if h < h_min:
                if guard_blocked:
                    return finish(GUARD_STOP)
                raise StepUnderflowError(
                    f"step size underflow at s={s!r}", trajectory=finish(UNDERFLOW)
                )
            continue

        # Accepted step: record the dense segment. (Guard retries may have
        # shrunk h below the remaining span, so re-check before snapping.)
        s_new = s_end if last_step and h >= remaining else s + h * direction
        q = K.T @ _P
        seg_s0.append(s)
        seg_h.append(h * direction)
        seg_y0.append(y.copy())
        seg_q.append(q)

        stop_s = None
        # Event localization on the fresh dense segment.
        if spec.events:
            def seg_eval(ss, _q=q, _s=s, _h=h * direction, _y=y):
                x = (ss - _s) / _h
                return _y + _h * (_q @ np.array([x, x**2, x**3, x**4]))

            terminal_hits = []
            for j, ev in enumerate(spec.events):
                g_old = ev_vals[j]
                g_new = ev.fn(s_new, y_new)
                ev_vals[j] = g_new
                crossed = (g_old < 0 <= g_new) or (g_old > 0 >= g_new)
                if not crossed or g_old == 0.0:
                    continue
                rising = g_old < 0
                if ev.direction > 0 and not rising:
                    continue
                if ev.direction < 0 and rising:
                    continue
                s_hit = find_root(lambda ss: ev.fn(ss, seg_eval(ss)), (s, s_new), tol=1e-12)
                hit = EventHit(index=j, name=ev.name, s=s_hit, state=seg_eval(s_hit))
                if ev.terminal:
                    terminal_hits.append(hit)
                else:
                    hits.append(hit)
            if terminal_hits:
                first = min(terminal_hits, key=lambda hh: direction * hh.s)
                hits.append(first)
                stop_s = first.s
                grid.append(stop_s)
                samples.append(first.state)
                reason = EVENT_STOP
                s, y = stop_s, first.state
                return finish(reason)

        grid.append(s_new)
        samples.append(y_new.copy())
        s, y = s_new, y_new
        K[0] = K[6]  # FSAL

        if err == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err**_ORDER_EXP))
        if step_rejected:
            factor = min(1.0, factor)
            step_rejected = False
        h *= factor

    return finish(reason)


def find_root(f: Callable[[float], float], bracket, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Brent-style bracketing root refinement; deterministic.

    Requires f to change sign over ``bracket``; returns the root within
    ``tol`` (plus a machine-precision term proportional to the root).
    """
    a, b = float(bracket[0]), float(bracket[1])
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoSignChangeError(f"no sign change on [{a}, {b}]: f={fa}, {fb}")

    c, fc = a, fa
    d = e = b - a
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol_here = 2 * eps * abs(b) + 0.5 * tol
        m = 0.5 * (c - b)
        if abs(m) <= tol_here or fb == 0.0:
            return b
        if abs(e) < tol_here or abs(fa) <= abs(fb):
            d = e = m
        else:
            s_ratio = fb / fa
            if a == c:
                p = 2 * m * s_ratio
                q = 1 - s_ratio
            else:
                q = fa / fc
                r = fb / fc
                p = s_ratio * (2 * m * q * (q - r) - (b - a) * (r - 1))
                q = (q - 1) * (r - 1) * (s_ratio - 1)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2 * p < min(3 * m * q - abs(tol_here * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol_here else (tol_here if m > 0 else -tol_here)
        fb = f(b)
    return b
