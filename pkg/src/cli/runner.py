"""
Command dispatch: run(command, document, options) -> (Report, exit code).

Exit 0 is a positive answer (decomposable, laws pass, measure computed),
exit 1 a negative one, exit 2 a usage or input error (raised as McatError
and mapped by main).
"""

import logging
import time
from typing import Tuple

import numpy as np

from src.cli.document import Workspace, build_workspace
from src.cli.dot import diagram
from src.cli.queries import Options, decompose_par, decompose_seq, require_morphism, split_dims
from src.cli.report import law_summary, outcome_fields, real, vector_payload
from src.enums import EXIT_NEGATIVE, EXIT_OK, CategoryId, Command, ProductKind, Verdict
from src.errors import DocumentError, InstanceError
from src.lawcheck import SampleSpec, check_all
from src.linvec import coupling_measure, is_entangled, kernel, operator_schmidt, state_schmidt
from src.schemas import Document, Report

logger = logging.getLogger(__name__)


def _verdict_exit(verdict: str) -> int:
    return EXIT_OK if verdict == Verdict.DECOMPOSABLE.value else EXIT_NEGATIVE


def _check_laws(ws: Workspace, options: Options) -> dict:
    hi = 2 if options.exhaustive else 3
    spec = SampleSpec(seed=options.seed, trial_count=options.trials,
                      object_size_range=(0, hi), exhaustive=options.exhaustive)
    reports = check_all(ws.instance, spec)
    passed = all(r.passed for r in reports)
    return {
        "seed": options.seed,
        "passed": passed,
        "laws": [law_summary(r) for r in reports],
        "values": {"exhaustive": options.exhaustive},
        "exit_code": EXIT_OK if passed else EXIT_NEGATIVE,
    }


def _decompose(ws: Workspace, options: Options, sequential: bool) -> dict:
    f, outcome = decompose_seq(ws, options) if sequential else decompose_par(ws, options)
    fields = outcome_fields(f, outcome)
    mode = None
    if not sequential:
        mode = (options.mode.value if options.mode else "fixed").replace("_", "-")
    return {**fields, "morphism": f.name, "policy": options.policy.cli_name, "mode": mode,
            "exit_code": _verdict_exit(fields["verdict"])}


def _state(ws: Workspace, options: Options) -> np.ndarray:
    if options.vector:
        return ws.vector(options.vector)
    if options.morphism:
        return np.asarray(ws.instance.state_extract(require_morphism(ws, options)))
    raise DocumentError("entangled needs --vector NAME or --morphism NAME (a state)")


def _entangled(ws: Workspace, options: Options) -> dict:
    if ws.instance.category is not CategoryId.VEC:
        raise InstanceError("entangled applies to vec instances")
    v = _state(ws, options)
    split = split_dims(ws, options, 2)
    entangled = is_entangled(v, split)
    sd = state_schmidt(v, split)
    return {
        "morphism": options.morphism,
        "verdict": (Verdict.NOT_DECOMPOSABLE if entangled else Verdict.DECOMPOSABLE).value,
        "values": {
            "entangled": entangled,
            "schmidt_rank": sd.rank,
            "schmidt_coefficients": [real(x) for x in sd.coefficients],
            "split": list(split),
        },
        "exit_code": EXIT_NEGATIVE if entangled else EXIT_OK,
    }


def _coupling(ws: Workspace, options: Options) -> dict:
    f = require_morphism(ws, options)
    if ws.instance.product is not ProductKind.TENSOR:
        raise InstanceError("coupling applies to (vec, tensor)")
    split = split_dims(ws, options, 4)
    value = coupling_measure(f, split)
    sd = operator_schmidt(f, split)
    return {
        "morphism": f.name,
        "values": {
            "coupling": real(value),
            "schmidt_rank": sd.rank,
            "schmidt_coefficients": [real(x) for x in sd.coefficients],
            "split": list(split),
        },
        "exit_code": EXIT_OK,
    }


def _solve(ws: Workspace, options: Options) -> dict:
    f = require_morphism(ws, options)
    if ws.instance.category is not CategoryId.VEC:
        raise InstanceError("solve applies to vec instances")
    if options.vector:
        values = {"solution": vector_payload(kernel.solve(f.matrix, ws.vector(options.vector)))}
    else:
        inverse = kernel.invert(f.matrix)
        values = {"inverse": [vector_payload(row) for row in inverse]}
    return {"morphism": f.name, "values": values, "exit_code": EXIT_OK}


def _diagram(ws: Workspace, options: Options) -> dict:
    dot, outcome = diagram(ws, options)
    fields = {"morphism": options.morphism, "dot": dot, "values": {"of": options.of.value},
              "exit_code": EXIT_OK}
    if outcome is not None:
        fields["verdict"] = outcome.verdict.value
        fields["policy"] = options.policy.cli_name
        fields["exit_code"] = _verdict_exit(outcome.verdict.value)
    return fields


HANDLERS = {
    Command.CHECK_LAWS: _check_laws,
    Command.DECOMPOSE_SEQ: lambda ws, o: _decompose(ws, o, sequential=True),
    Command.DECOMPOSE_PAR: lambda ws, o: _decompose(ws, o, sequential=False),
    Command.ENTANGLED: _entangled,
    Command.COUPLING: _coupling,
    Command.SOLVE: _solve,
    Command.DIAGRAM: _diagram,
}


def run(command: Command, doc: Document, options: Options) -> Tuple[Report, int]:
    """Run one command; McatError subclasses propagate for the caller to map to exit 2."""
    command = Command(command)
    started = time.perf_counter()
    ws = build_workspace(doc, options.tolerance)
    fields = HANDLERS[command](ws, options)
    if options.timing:
        fields["timing_ms"] = (time.perf_counter() - started) * 1000.0
    report = Report(command=command.value, instance=ws.instance.instance_id,
                    tolerance=ws.instance.tolerance, **fields)
    logger.info(f"{command.value} finished with exit {report.exit_code}")
    return report, report.exit_code
