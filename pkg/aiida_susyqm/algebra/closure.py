"""Declarative graded-bracket tables and their verification on bound operators."""

from dataclasses import dataclass, field
from typing import Literal, Optional, Union

from ..base.utils import get_logger
from ..exceptions import UnboundParameter, UnboundSlot
from ..operators import RESIDUAL_THRESHOLD, ResidualReport, SpinorOperator, identity_residual

logger = get_logger("closure")

Bracket = Literal["comm", "anticomm"]


@dataclass(frozen=True)
class RhsTerm:
    """``coeff * [param] * slot``; ``slot=None`` is the identity, ``param`` a bound scalar."""

    coeff: complex
    slot: Optional[str] = None
    param: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "coeff": [self.coeff.real, self.coeff.imag] if isinstance(self.coeff, complex) else self.coeff,
            "slot": self.slot,
            "param": self.param,
        }


@dataclass(frozen=True)
class Relation:
    group: str
    left: str
    right: str
    bracket: Bracket
    rhs: tuple = ()

    @property
    def label(self) -> str:
        if self.bracket == "anticomm":
            return f"{{{self.left},{self.right}}}"
        return f"[{self.left},{self.right}]"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "left": self.left,
            "right": self.right,
            "bracket": self.bracket,
            "rhs": [t.to_json() for t in self.rhs],
        }


@dataclass(frozen=True)
class AlgebraTable:
    name: str
    slots: tuple
    relations: tuple
    scalars: tuple = ()

    def __post_init__(self):
        known = set(self.slots)
        for rel in self.relations:
            for slot in (rel.left, rel.right, *(t.slot for t in rel.rhs if t.slot is not None)):
                if slot not in known:
                    raise UnboundSlot(slot, self.name)
            for term in rel.rhs:
                if term.param is not None and term.param not in self.scalars:
                    raise UnboundParameter(f"table {self.name} uses undeclared scalar {term.param}")

    def relation_name(self, rel: Relation) -> str:
        return f"{self.name}.{rel.group}.{rel.label}"

    def groups(self) -> list:
        return list(dict.fromkeys(rel.group for rel in self.relations))

    def subtable(self, *groups: str, name: Optional[str] = None) -> "AlgebraTable":
        relations = tuple(rel for rel in self.relations if rel.group in groups)
        return AlgebraTable(name or self.name, self.slots, relations, self.scalars)

    def __len__(self):
        return len(self.relations)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "slots": list(self.slots),
            "scalars": list(self.scalars),
            "relations": [rel.to_json() for rel in self.relations],
        }


@dataclass
class ClosureReport:
    table: str
    reports: list = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max((r.max_residual for r in self.reports), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def failures(self) -> list:
        return [r.identity_name for r in self.reports if not r.passed]

    def __getitem__(self, name: str) -> ResidualReport:
        for report in self.reports:
            if report.identity_name == name or report.identity_name.endswith(f".{name}"):
                return report
        raise KeyError(name)

    def __len__(self):
        return len(self.reports)

    def checks(self) -> list:
        return [r.as_check() for r in self.reports]

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "max_residual": self.max_residual,
            "relations": [r.to_json() for r in self.reports],
            "pass": self.passed,
        }


def _bind(slot: str, bindings: dict, table: str) -> SpinorOperator:
    try:
        return bindings[slot]
    except KeyError:
        raise UnboundSlot(slot, table) from None


def assemble_rhs(rel: Relation, bindings: dict, params: dict, table: str, like: SpinorOperator) -> SpinorOperator:
    result = SpinorOperator.zero(like.dim, like.domain)
    for term in rel.rhs:
        coeff = complex(term.coeff)
        if term.param is not None:
            if term.param not in params:
                raise UnboundParameter(f"scalar {term.param} of {table} is not bound")
            coeff *= params[term.param]
        if term.slot is None:
            result = result + SpinorOperator.identity(like.dim, like.domain) * coeff
        else:
            result = result + _bind(term.slot, bindings, table) * coeff
    return result


def verify_closure(
    table: AlgebraTable,
    bindings: dict,
    tests: list,
    params: Optional[dict] = None,
    threshold: float = RESIDUAL_THRESHOLD,
) -> ClosureReport:
    """Check every relation of ``table`` as an operator identity on ``tests``."""
    params = params or {}
    for slot in table.slots:
        _bind(slot, bindings, table.name)
    report = ClosureReport(table.name)
    for rel in table.relations:
        a = bindings[rel.left]
        b = bindings[rel.right]
        lhs = a.anticommutator(b) if rel.bracket == "anticomm" else a.commutator(b)
        rhs = assemble_rhs(rel, bindings, params, table.name, a)
        report.reports.append(identity_residual(lhs, rhs, tests, table.relation_name(rel), threshold))
    if report.passed:
        logger.info(f"{table.name}: {len(report)} relations closed, max residual {report.max_residual:.3e}")
    else:
        logger.warning(f"{table.name}: failing relations {report.failures()}")
    return report


Number = Union[int, float, complex]


def term(coeff: Number, slot: Optional[str] = None, param: Optional[str] = None) -> RhsTerm:
    return RhsTerm(complex(coeff), slot, param)
