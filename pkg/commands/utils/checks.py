"""Run configuration: JSON file -> RunConfig, with line-level diagnostics."""

import dataclasses
import json
import math
import re

from quartic import potential as potentials
from quartic.errors import ConfigError, InvalidPotentialError
from quartic.traces import BACKENDS

COMMANDS = ('trace', 'spectrum', 'asymptotics', 'small-gamma', 'delta-comb')


@dataclasses.dataclass(frozen=True)
class RunConfig:
    potential: dict = dataclasses.field(default_factory=lambda: {'kind': 'trig', 'coeffs': []})
    command: str = None
    lam_range: tuple = (-50.0, 500.0)
    grid: int = 400
    tol: float = 1e-10
    n_max: int = 10
    n_range: tuple = (1, 6)
    gammas: tuple = (0.4, 0.2, 0.1, 0.05)
    n: tuple = (1, 2, 3)
    steps: int = 21
    backend: str = 'auto'
    out: str = 'out'
    threads: int = 1

    def build_potential(self):
        return potentials.from_spec(self.potential)

    def with_overrides(self, **flags):
        given = {k: v for k, v in flags.items() if v is not None}
        return check(dataclasses.replace(self, **given)) if given else self


"""-------------------------------------------------------------------------"""


def line_of(text, key):
    """1-based line where ``"key":`` first appears in ``text`` (None if absent)."""
    if text is None:
        return None
    found = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count('\n', 0, found.start()) + 1 if found else None


def fail(message, key, text=None):
    line = line_of(text, key.split('.')[-1])
    where = f"{key} (line {line})" if line else key
    raise ConfigError(f"config {where}: {message}", key=key, line=line)


def is_range(value):
    return (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(v, (int, float)) and math.isfinite(v) for v in value)
            and value[0] < value[1])


def is_positive(value):
    return isinstance(value, (int, float)) and math.isfinite(value) and value > 0


def is_count(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def check(config, text=None):
    """Validate every field of ``config``; ``text`` is the JSON source for line numbers."""
    if config.command is not None and config.command not in COMMANDS:
        fail(f"unknown command {config.command!r}", 'command', text)
    if not is_range(config.lam_range):
        fail("must be [lo, hi] with lo < hi", 'lam_range', text)
    if not is_range(config.n_range) or not all(is_count(n) for n in config.n_range):
        fail("must be [lo, hi] of positive integers with lo < hi", 'n_range', text)
    for key in ('grid', 'n_max', 'steps', 'threads'):
        if not is_count(getattr(config, key)):
            fail("must be a positive integer", key, text)
    if not is_positive(config.tol):
        fail("must be > 0", 'tol', text)
    if not config.gammas or not all(isinstance(g, (int, float)) and math.isfinite(g) for g in config.gammas):
        fail("must be a nonempty list of finite numbers", 'gammas', text)
    if not config.n or not all(is_count(n) for n in config.n):
        fail("must be a nonempty list of positive integers", 'n', text)
    if config.backend not in BACKENDS:
        fail(f"must be one of {', '.join(BACKENDS)}", 'backend', text)
    try:
        pot = config.build_potential()
    except InvalidPotentialError as e:
        raise ConfigError(f"config potential (line {line_of(text, 'potential')}): {e}",
                          key='potential', line=line_of(text, 'potential'), **e.details) from e
    if pot.kind == 'delta_comb' and config.backend not in ('auto', 'delta_comb'):
        fail("a delta_comb potential needs backend 'auto' or 'delta_comb'", 'backend', text)
    if pot.kind != 'delta_comb' and config.backend == 'delta_comb':
        fail("backend 'delta_comb' needs a delta_comb potential", 'backend', text)
    return config


def load_config(path=None):
    """RunConfig from the JSON file at ``path`` (defaults when None)."""
    if path is None:
        return check(RunConfig())
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}", path=str(path)) from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config line {e.lineno}: {e.msg}", line=e.lineno) from e
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object", line=1)
    known = {f.name for f in dataclasses.fields(RunConfig)}
    for key in raw:
        if key not in known:
            fail("unknown key", key, text)
    values = {k: tuple(v) if isinstance(v, list) and k != 'potential' else v for k, v in raw.items()}
    return check(RunConfig(**values), text)
