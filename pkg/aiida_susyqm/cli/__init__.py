from .config import RunConfig
from .grammar import SuperpotentialExpr, parse_superpotential
from .main import build_parser, main, run

__all__ = ["RunConfig", "SuperpotentialExpr", "build_parser", "main", "parse_superpotential", "run"]
