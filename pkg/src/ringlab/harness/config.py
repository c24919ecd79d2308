"""Suite configuration: an INI file with a ``[suite]`` section and one
section of instance parameters per theorem id.

    [suite]
    format = ringlab-suite/1
    seed = 0
    cap = 65536            # optional, element cap for constructions
    checks = prop-2.2; thm-3.12
    workers = 1

    [thm-3.12]
    max_order = 2:16; 3:27
    m = 2..10
    cap = 262144           # optional per-check cap

Lists are separated by ';'.  The run cap resolves as: command-line flag,
then the config file, then the RINGLAB_CAP environment variable, then the
built-in default.  A per-check ``cap`` replaces the run cap for that check
unless a command-line cap was given.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from ..ring import RingError
from ..structure import CONSTRUCTION_CAP

FORMAT = "ringlab-suite/1"
ENV_CAP = "RINGLAB_CAP"


class ConfigError(RingError):
    pass


@dataclass
class SuiteConfig:
    checks: tuple[str, ...]
    params: dict[str, dict[str, str]] = field(default_factory=dict)
    seed: int = 0
    cap: Optional[int] = None
    workers: int = 1

    def params_for(self, id: str) -> dict[str, str]:
        return dict(self.params.get(id, {}))


def _int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {value!r}") from None


def parse_config(text: str, source: str = "<config>") -> SuiteConfig:
    # ';' separates list items, so only whole-line comments are honoured
    cp = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                   interpolation=None, delimiters=("=",))
    cp.optionxform = str
    try:
        cp.read_string(text, source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    if not cp.has_section("suite"):
        raise ConfigError(f"{source}: missing [suite] section")
    suite = cp["suite"]
    fmt = suite.get("format", FORMAT)
    if fmt != FORMAT:
        raise ConfigError(f"{source}: unsupported format {fmt!r} (expected {FORMAT})")
    from .registry import REGISTRY, IDS
    if "checks" in suite:
        checks = tuple(c.strip() for c in suite["checks"].split(";") if c.strip())
    else:
        checks = IDS
    unknown = [c for c in checks if c not in REGISTRY]
    unknown += [s for s in cp.sections() if s != "suite" and s not in REGISTRY]
    if unknown:
        raise ConfigError(f"{source}: unknown theorem id {unknown[0]!r}")
    params = {s: dict(cp[s]) for s in cp.sections() if s != "suite"}
    for s, p in params.items():
        if "cap" in p:
            _int(p["cap"], f"[{s}] cap")
    return SuiteConfig(
        checks=checks,
        params=params,
        seed=_int(suite.get("seed", "0"), "seed"),
        cap=_int(suite["cap"], "cap") if "cap" in suite else None,
        workers=_int(suite.get("workers", "1"), "workers"),
    )


def default_config_text() -> str:
    return resources.files("ringlab").joinpath("data/default_suite.cfg").read_text(encoding="utf-8")


def load_config(path: Optional[str] = None) -> SuiteConfig:
    """The packaged default suite, or the file at ``path``.  A user file
    inherits the default instance parameters for ids it does not configure."""
    base = parse_config(default_config_text(), "default_suite.cfg")
    if path is None:
        return base
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    cfg = parse_config(text, path)
    for id, p in base.params.items():
        cfg.params[id] = {**p, **cfg.params.get(id, {})}
    return cfg


def resolve_cap(flag: Optional[int], config: Optional[int] = None) -> int:
    if flag is not None:
        return flag
    if config is not None:
        return config
    env = os.environ.get(ENV_CAP)
    if env:
        return _int(env, ENV_CAP)
    return CONSTRUCTION_CAP
