"""Sweep configuration: ``key = value`` text files and the built-in figure presets."""
from __future__ import annotations

from dataclasses import dataclass, field, fields

from .. import fock
from ..errors import UsageError

STATE_ERROR = "state_error"
UNIFORM_ERROR = "uniform_error"
MODES = (STATE_ERROR, UNIFORM_ERROR)


@dataclass(frozen=True)
class SweepConfig:
    h1_expr: str
    h2_expr: str
    t: float
    trotter_steps: int
    d_max: int
    states: tuple[int, ...] = ()
    d_min: int = 1
    d_step: int = 1
    mode: str = STATE_ERROR
    bound_overlay: bool = False
    output_path: str = "sweep.csv"
    window: int = 20
    rtol: float = 0.05
    h1: fock.LadderPolynomial = field(init=False, repr=False, compare=False)
    h2: fock.LadderPolynomial = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "h1", fock.resolve_polynomial(self.h1_expr))
        object.__setattr__(self, "h2", fock.resolve_polynomial(self.h2_expr))
        if self.trotter_steps < 1:
            raise UsageError(f"trotter_steps must be >= 1, got {self.trotter_steps}")
        if self.d_min < 1 or self.d_step < 1 or self.d_max < self.d_min:
            raise UsageError(f"bad dimension grid d_min={self.d_min}, d_max={self.d_max}, d_step={self.d_step}")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.window < 1 or self.rtol <= 0:
            raise UsageError(f"window must be >= 1 and rtol > 0, got {self.window}, {self.rtol}")
        if self.mode == STATE_ERROR:
            if not self.states:
                raise UsageError("state_error mode needs at least one Fock state")
            if len(set(self.states)) != len(self.states):
                raise UsageError(f"duplicate states in {self.states}")
            top = self.dims[-1]
            for m in self.states:
                # a state is tracked from the first grid dimension that contains it
                if m < 0 or m >= top:
                    raise UsageError(f"state |{m}> lies outside every truncation (largest d={top})")
        elif self.states:
            raise UsageError("uniform_error mode does not take states")
        if self.bound_overlay and not self.is_half_q2_p2:
            raise UsageError("bound_overlay is only defined for the half_q2 / half_p2 state_error problem")

    @property
    def dims(self) -> list[int]:
        return list(range(self.d_min, self.d_max + 1, self.d_step))

    @property
    def is_half_q2_p2(self) -> bool:
        return (self.mode == STATE_ERROR
                and self.h1.terms == fock.get_builtin("half_q2").terms
                and self.h2.terms == fock.get_builtin("half_p2").terms)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            if not f.init:
                continue
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(str(v) for v in value)
            elif isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"


def _parse_states(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "h1_expr": str,
    "h2_expr": str,
    "t": float,
    "trotter_steps": int,
    "d_min": int,
    "d_max": int,
    "d_step": int,
    "states": _parse_states,
    "mode": str,
    "bound_overlay": _parse_bool,
    "output_path": str,
    "window": int,
    "rtol": float,
}
_REQUIRED = ("h1_expr", "h2_expr", "t", "trotter_steps", "d_max")


def parse_config(text: str) -> SweepConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONVERTERS:
            raise UsageError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise UsageError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise UsageError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise UsageError(f"missing required keys: {', '.join(missing)}")
    return SweepConfig(**values)


def load_config(path) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


PRESETS = {
    "fig2": """\
# harmonic oscillator vs squeezing: state-dependent error saturates in d
h1_expr = harmonic_oscillator
h2_expr = squeezing
states = 0,1,2,3,4
t = 2
trotter_steps = 1000
d_min = 1
d_max = 300
mode = state_error
window = 20
rtol = 0.05
output_path = fig2.csv
""",
    "fig3": """\
# Q^3 vs P^2: state-dependent error does not saturate
h1_expr = q3
h2_expr = p2
states = 0,1,2,3,4
t = 1
trotter_steps = 1000
d_min = 1
d_max = 300
mode = state_error
window = 20
rtol = 0.05
output_path = fig3.csv
""",
    "fig4": """\
# Q^2/2 vs P^2/2 with the closed-form Fock-state bounds
h1_expr = half_q2
h2_expr = half_p2
states = 0,1,2,3,4
t = 1
trotter_steps = 1000
d_min = 1
d_max = 50
mode = state_error
bound_overlay = true
window = 10
rtol = 0.05
output_path = fig4.csv
""",
    "figS1": """\
# uniform (operator-norm) error of the fig2 pair climbs to 2
h1_expr = harmonic_oscillator
h2_expr = squeezing
t = 2
trotter_steps = 10
d_min = 1
d_max = 300
mode = uniform_error
window = 20
rtol = 0.05
output_path = figS1.csv
""",
}


def preset(name: str) -> SweepConfig:
    if name not in PRESETS:
        raise UsageError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return parse_config(PRESETS[name])
