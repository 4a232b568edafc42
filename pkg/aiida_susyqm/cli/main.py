"""``susyqm`` command line entry point."""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..algebra import SS4, get_table
from ..base.utils import get_logger
from ..clifford import build_generators, check_relations, check_xi_structure, derive_matrices, format_matrix
from ..exceptions import GrammarError, SusyQMError
from ..operators import standard_test_family
from ..realizations import compute_B, parse_gauge, realize_1d, realize_3d, verify_ss4
from ..spectral import Grid, degeneracy_cluster, fd_eigen, level_diagram
from ..superconformal import (
    Y3_LABELS,
    build_system,
    expected_energies,
    ladder_spectrum,
    realization_zero_modes,
    verify_closure,
)
from .config import RunConfig
from .render import checks_csv, hamiltonian_display, render_json, render_text, write_svg

logger = get_logger("cli")

# sector tables that only exist for one of the two systems
SYSTEM_OF_TABLE = {"sc4-1": "example1", "sc4-2": "example2", "tlr": "example2", "so3-y": "example2"}


@dataclass
class Outcome:
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    sections: list = field(default_factory=list)
    csv: Optional[str] = None
    panels: Optional[dict] = None


def _check(name: str, residual: float, threshold: float) -> dict:
    return {"name": name, "residual": float(residual), "threshold": threshold, "pass": bool(residual < threshold)}


def _system(cfg: RunConfig):
    if cfg.system == "example1":
        return build_system("example1", k=cfg.k)
    if cfg.system == "example2":
        return build_system("example2", omega=cfg.omega)
    raise ValueError("superconformal systems are example1 and example2")


def _realization(cfg: RunConfig):
    if cfg.system == "custom":
        w = cfg.superpotential().to_quasipoly()
        return realize_1d(w, cfg.k1, cfg.k2, cfg.k3, domain=cfg.domain)
    return _system(cfg).realization


def _y3_labels() -> dict:
    return {i: f"Y3={y:+d}" if y else "Y3=0" for i, y in enumerate(Y3_LABELS, start=1)}


def verify_clifford(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    families = {name: build_generators(name) for name in ("dirac_c40", "xi_c03", "wp", "pauli_tau")}
    for gens in families.values():
        outcome.checks += check_relations(gens).checks()
    outcome.checks += check_xi_structure(families["xi_c03"], families["wp"]).checks()
    outcome.checks += derive_matrices(families["dirac_c40"]).report.checks()
    c40 = families["dirac_c40"]
    body = "\n".join(f"C{j} =\n{format_matrix(c40[j])}" for j in range(1, 5))
    outcome.sections.append(("C(4,0) generators", body))
    outcome.result = {name: gens.to_json() for name, gens in families.items()}
    return outcome


def _verify_ss4_3d(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    c, p = (1.0, 2)
    if cfg.system == "custom":
        expr = cfg.superpotential()
        c, p = float(expr.coefficient), expr.power
    realization = realize_3d(c, p, cfg.gauge, k=(cfg.k1, cfg.k2, cfg.k3))
    outcome.checks += realization.verify_ss4(seed=cfg.seed).checks()
    outcome.checks.append(realization.hamiltonian_consistency(seed=cfg.seed).as_check())
    outcome.checks.append(_check("H3D.constraint", realization.constraint_residual(), 1e-12))
    kind, b0 = parse_gauge(cfg.gauge)
    if kind == "uniform_B":
        outcome.checks.append(_check("H3D.field_strength", abs(float(realization.field_strength[0, 1] - b0)), 1e-12))
    outcome.result = {"W": str(realization.w), "gauge": cfg.gauge, "k": [cfg.k1, cfg.k2, cfg.k3]}
    return outcome


def verify_ss4_command(cfg: RunConfig) -> Outcome:
    if cfg.dim == 3:
        return _verify_ss4_3d(cfg)
    outcome = Outcome()
    r = _realization(cfg)
    tests = standard_test_family(4, r.domain)
    outcome.checks += verify_ss4(r.supercharges, r.h, tests, cfg.tol).checks()
    outcome.checks.append(compute_B(r.table, tests)[3].as_check())
    outcome.checks += [report.as_check() for report in r.consistency(tests)]
    if r.is_diagonal:
        outcome.checks += [report.as_check() for report in r.intertwining()]
    outcome.sections.append(("Hamiltonian", hamiltonian_display(r.h)))
    outcome.result = r.to_json()
    return outcome


def verify_closure_command(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    name = cfg.algebra
    if name == "ss4" and cfg.system == "custom":
        return verify_ss4_command(cfg)
    table = get_table(name)
    required = SYSTEM_OF_TABLE.get(name)
    if required and cfg.system != required:
        raise ValueError(f"algebra {name} is realized by {required}, not {cfg.system}")
    system = _system(cfg)
    if name == "so3":
        table = system.so3_table()
    elif name == "ss4":
        table = SS4
    report = verify_closure(table, system, threshold=cfg.tol)
    outcome.checks = report.checks()
    outcome.result = report.to_json()
    return outcome


def spectrum_command(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    if cfg.system == "example1":
        raise ValueError("example1 has a purely continuous spectrum; use zero-modes or verify instead")
    r = _realization(cfg)
    grid = Grid(r.domain, cfg.grid_L, cfg.grid_n)
    if not r.is_diagonal:
        kappa = r.coupling_norm
        note = f"sectors 3 and 4 coupled by k+ = {r.k_plus:g}; solved in the basis where they see ±{kappa:g} W'"
        logger.info(note)
        outcome.sections.append(("Coupled 3-4 block", f"  {note}"))
        block = r.block_rotation()[2:, 2:]
        outcome.result["rotation"] = {
            "coupling_norm": kappa,
            "block": [[[z.real, z.imag] for z in row] for row in block],
        }
    levels = {i: list(fd_eigen(r.decoupled_sector(i), grid, cfg.levels)) for i in range(1, 5)}
    closed, labels = {}, {}
    if cfg.system == "example2":
        n_max = cfg.levels - 1
        closed = {i: expected_energies(n_max, cfg.omega, i) for i in range(1, 5)}
        labels = _y3_labels()
        table = ladder_spectrum(_system(cfg), n_max)
        outcome.checks.append(_check("ladder.eigen_residual", max(s.eigen_residual for s in table.states), cfg.tol))
        outcome.checks.append(_check("ladder.t3_residual", max(s.t3_residual for s in table.states), cfg.tol))
        outcome.checks.append(
            _check("ladder.closed_form", max(s.closed_form_residual for s in table.states), cfg.tol)
        )
        outcome.sections.append(("Ladder spectrum of H (columns by Y3)", table.ascii_diagram()))
        outcome.result["ladder"] = [s.to_row() for s in table.states]
    report = degeneracy_cluster(levels, cfg.cluster_tol, labels, closed)
    if closed:
        for i in range(1, 5):
            errors = [abs(a - b) for a, b in zip(levels[i], closed[i])]
            outcome.checks.append(_check(f"spectrum.fd.sector{i}", max(errors), cfg.fd_tol))
        expected = [1] + [4] * (cfg.levels - 1) + [3]
        degeneracy = _check("spectrum.degeneracy", float(report.pattern != expected), 0.5)
        outcome.checks.append({**degeneracy, "pattern": report.pattern, "expected": expected})
    outcome.sections.append(("Finite-difference levels", report.ascii_diagram()))
    outcome.csv = report.to_csv()
    outcome.result["fd"] = report.to_json()
    outcome.panels = {"finite differences": report.columns()}
    return outcome


def zero_modes_command(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    r = _realization(cfg)
    label = cfg.system if cfg.system != "custom" else f"custom({cfg.superpotential().format()})"
    report = realization_zero_modes(r, label)
    for mode in report.modes:
        outcome.checks.append(
            _check(f"zero_modes.sector{mode.sector}.annihilation", mode.annihilation_residual, cfg.tol)
        )
    lines = [
        f"  sector {m.sector}: psi = {m.psi!r}  norm^2 = {m.norm.to_dict()}" for m in report.modes
    ]
    lines.append(f"  {len(report)} modes, {len(report.normalizable)} normalizable, verdict: {report.verdict}")
    outcome.sections.append(("Zero modes", "\n".join(lines)))
    outcome.result = report.to_json()
    return outcome


def report_figures(cfg: RunConfig) -> Outcome:
    outcome = Outcome()
    if cfg.system != "example2":
        raise ValueError("level figures are drawn for the example2 oscillator")
    table = ladder_spectrum(_system(cfg), cfg.levels - 1)
    outcome.checks.append(_check("ladder.eigen_residual", max(s.eigen_residual for s in table.states), cfg.tol))
    panels = {
        "H by sector": {f"sector {i}": table.energies(i) for i in range(1, 5)},
        "H by Y3": table.columns("E"),
        "T3 by Y3": table.columns("e"),
    }
    for title, columns in panels.items():
        outcome.sections.append((title, level_diagram(columns, label="e" if title.startswith("T3") else "E")))
    outcome.panels = panels
    outcome.csv = table.to_csv()
    outcome.result = {"rows": [s.to_row() for s in table.states]}
    return outcome


HANDLERS = {
    "verify clifford": verify_clifford,
    "verify ss4": verify_ss4_command,
    "verify closure": verify_closure_command,
    "spectrum": spectrum_command,
    "zero-modes": zero_modes_command,
    "report figures": report_figures,
}


def run(cfg: RunConfig) -> tuple:
    """(exit status, JSON payload, outcome) of one configured run."""
    logger.info(f"Running {cfg.command} for {cfg.system}")
    try:
        outcome = HANDLERS[cfg.command](cfg)
    except GrammarError as error:
        outcome = Outcome([{"name": cfg.command.replace(" ", "."), "error": error.diagnostic(), "pass": False}])
    except (SusyQMError, ValueError, KeyError) as error:
        logger.warning(f"{cfg.command} failed: {error}")
        outcome = Outcome([{"name": cfg.command.replace(" ", "."), "error": str(error), "pass": False}])
    passed = all(check["pass"] for check in outcome.checks)
    payload = {
        "command": cfg.command,
        "config": cfg.to_json(),
        "checks": outcome.checks,
        "pass": passed,
        "result": outcome.result,
    }
    return (0 if passed else 1), payload, outcome


def emit(cfg: RunConfig, payload: dict, outcome: Outcome) -> Optional[str]:
    """Render in the configured format; write to ``cfg.out`` when given, else return the text."""
    if cfg.format == "svg":
        panels = outcome.panels or {}
        if not panels:
            raise ValueError(f"{cfg.command} has no level diagram to draw")
        path = write_svg(panels, cfg.out or "spectrum.svg")
        return f"wrote {path}"
    if cfg.format == "json":
        text = render_json(payload)
    elif cfg.format == "csv":
        text = outcome.csv if outcome.csv is not None else checks_csv(payload["checks"])
    else:
        text = render_text(payload, tuple(outcome.sections))
    if cfg.out:
        Path(cfg.out).write_text(text)
        return f"wrote {cfg.out}"
    return text


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--system", choices=["example1", "example2", "custom"], help="System to build")
    common.add_argument("--k", type=float, help="Coupling of W = k/x")
    common.add_argument("--omega", type=float, help="Frequency of W = omega x")
    common.add_argument("--w", help="Custom superpotential, e.g. '2.5*x^-1'")
    common.add_argument("--c", type=float, help="Custom monomial coefficient")
    common.add_argument("--p", type=float, help="Custom monomial power")
    common.add_argument("--k1", type=float, help="Coupling k1 of the custom realization")
    common.add_argument("--k2", type=float, help="Coupling k2 of the custom realization")
    common.add_argument("--k3", type=float, help="Coupling k3 of the custom realization")
    common.add_argument("--domain", choices=["half_line", "full_line"], help="Domain of the custom realization")
    common.add_argument("--dim", type=int, choices=[1, 3], help="Realization dimension for verify ss4")
    common.add_argument("--gauge", help="3D gauge: 'zero' or 'uniform_B(B0)'")
    common.add_argument("--grid-L", dest="grid_L", type=float, help="Grid length")
    common.add_argument("--grid-n", dest="grid_n", type=int, help="Number of grid points")
    common.add_argument("--tol", type=float, help="Residual threshold")
    common.add_argument("--fd-tol", dest="fd_tol", type=float, help="Finite-difference level tolerance")
    common.add_argument("--cluster-tol", dest="cluster_tol", type=float, help="Degeneracy clustering tolerance")
    common.add_argument("--levels", type=int, help="Number of levels per sector")
    common.add_argument("--format", choices=["text", "csv", "json", "svg"], help="Output format")
    common.add_argument("--out", help="Output path")
    common.add_argument("--seed", type=int, help="Seed of the 3D sample points")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="susyqm", description="N=4 supersymmetric quantum mechanics verifier")
    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser("verify", parents=[common], help="Run an identity suite")
    verify.add_argument("target", choices=["clifford", "ss4", "closure"])
    verify.add_argument("--algebra", choices=["ss4", "so21", "so3", "so3-y", "sc4-1", "sc4-2", "tlr"])
    spectrum = commands.add_parser("spectrum", parents=[common], help="Ladder and finite-difference spectra")
    spectrum.set_defaults(target=None)
    zero = commands.add_parser("zero-modes", parents=[common], help="Zero-energy states of every sector")
    zero.set_defaults(target=None)
    report = commands.add_parser("report", parents=[common], help="Level diagrams")
    report.add_argument("target", choices=["figures"])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data = json.loads(Path(args.config).read_text()) if args.config else {}
    command = args.command if args.target is None else f"{args.command} {args.target}"
    data["command"] = command
    for key, value in vars(args).items():
        if key in ("config", "command", "target") or value is None:
            continue
        data[key] = value
    return RunConfig.from_dict(data)


def render_failure(fmt: Optional[str], payload: dict) -> str:
    """Failure report in the requested format; SVG runs fall back to text."""
    if fmt == "json":
        return render_json(payload)
    if fmt == "csv":
        return checks_csv(payload["checks"])
    return render_text(payload)


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValueError, TypeError, OSError) as error:
        check = {"name": "config", "error": str(error), "pass": False}
        failure = {"command": args.command, "config": {}, "checks": [check], "pass": False}
        print(render_failure(args.format, failure))
        return 2
    status, payload, outcome = run(cfg)
    try:
        text = emit(cfg, payload, outcome)
    except (ValueError, OSError) as error:
        payload["checks"].append({"name": "output", "error": str(error), "pass": False})
        payload["pass"] = False
        print(render_failure(cfg.format, payload))
        return 1
    if text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
