import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from ..base.utils import as_fraction
from ..spectral.fd import DEFAULT_LENGTH, DEFAULT_POINTS, MIN_POINTS
from .grammar import SuperpotentialExpr, parse_superpotential

COMMANDS = ("verify clifford", "verify ss4", "verify closure", "spectrum", "zero-modes", "report figures")
SYSTEMS = ("example1", "example2", "custom")
FORMATS = ("text", "csv", "json", "svg")


@dataclass
class RunConfig:
    command: str
    system: str = "example2"
    k: float = 1.0
    omega: float = 1.0
    w: Optional[str] = None
    c: Optional[float] = None
    p: Optional[float] = None
    k1: float = 0.0
    k2: float = 0.0
    k3: float = 1.0
    domain: str = "half_line"
    dim: int = 1
    gauge: str = "zero"
    algebra: Optional[str] = None
    grid_L: float = DEFAULT_LENGTH
    grid_n: int = DEFAULT_POINTS
    tol: float = 1e-10
    fd_tol: float = 5e-3
    cluster_tol: float = 2e-2
    levels: int = 4
    format: str = "text"
    out: Optional[str] = None
    seed: int = 42

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Command {self.command} is not supported.")
        if self.system not in SYSTEMS:
            raise ValueError(f"System {self.system} is not supported.")
        if self.format not in FORMATS:
            raise ValueError(f"Format {self.format} is not supported.")
        if self.domain not in ("half_line", "full_line"):
            raise ValueError(f"Domain {self.domain} is not supported.")
        if self.dim not in (1, 3):
            raise ValueError(f"Dimension {self.dim} is not supported.")
        for name in ("tol", "fd_tol", "cluster_tol", "grid_L"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.grid_n < MIN_POINTS:
            raise ValueError(f"grid_n must be at least {MIN_POINTS}, got {self.grid_n}")
        if self.levels < 1:
            raise ValueError(f"levels must be at least 1, got {self.levels}")
        has_monomial = self.c is not None or self.p is not None
        if self.system == "custom":
            if has_monomial == (self.w is not None):
                raise ValueError("custom system needs either --w or both --c and --p")
            if has_monomial and (self.c is None or self.p is None):
                raise ValueError("custom system needs both --c and --p")
        elif has_monomial or self.w is not None:
            raise ValueError(f"{self.system} fixes its own superpotential; drop --w/--c/--p")
        if self.command == "verify closure" and not self.algebra:
            raise ValueError("verify closure needs --algebra")

    def superpotential(self) -> SuperpotentialExpr:
        if self.w is not None:
            return parse_superpotential(self.w)
        return SuperpotentialExpr(as_fraction(self.c), as_fraction(self.p))

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown configuration keys {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "RunConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return asdict(self)
