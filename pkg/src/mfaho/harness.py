"""Class detection, solver dispatch, reports and independent verification.

Every solve path re-validates its certificate from scratch against the input
digraph before the report leaves this module; a mismatch is an internal
error, never a reportable result.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass

from .digraph import (
    Digraph,
    PartiteStructure,
    WalkKind,
    is_semicomplete,
    is_strong,
    recognize_lsd,
    recognize_smd,
    underlying_is_2connected,
    underlying_is_connected,
    validate_walk,
)
from .errors import InputError, InternalVerificationError, NotAWalkError
from .instance_io import serialize_instance
from .lsd import ham_path_lsd, mfahoc_lsd
from .smd import hc_majority, hp_majority, mfahoc_smd, mfahop_smd


class UnsupportedClassError(InputError):
    """The input digraph is in no class the requested solver supports."""


@dataclass
class ClassReport:
    n: int
    m: int
    is_smd: bool
    partite_sizes: tuple[int, ...] | None
    is_lsd: bool
    semicomplete: bool
    strong: bool
    connected: bool
    two_connected: bool | None
    hp_majority: bool | None
    hc_majority: bool | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "is_smd": self.is_smd,
            "partite_sizes": list(self.partite_sizes) if self.partite_sizes else None,
            "is_lsd": self.is_lsd,
            "semicomplete": self.semicomplete,
            "strong": self.strong,
            "connected": self.connected,
            "two_connected": self.two_connected,
            "hp_majority": self.hp_majority,
            "hc_majority": self.hc_majority,
        }


def classify(d: Digraph) -> ClassReport:
    parts = recognize_smd(d)
    lsd = recognize_lsd(d)
    return ClassReport(
        n=d.n,
        m=d.m,
        is_smd=parts is not None,
        partite_sizes=parts.sizes if parts else None,
        is_lsd=lsd,
        semicomplete=is_semicomplete(d),
        strong=is_strong(d),
        connected=underlying_is_connected(d),
        two_connected=underlying_is_2connected(d) if d.n >= 3 else None,
        hp_majority=hp_majority(parts.sizes) if parts else None,
        hc_majority=hc_majority(parts.sizes) if parts else None,
    )


def instance_digest(d: Digraph) -> str:
    return hashlib.sha256(serialize_instance(d).encode()).hexdigest()


@dataclass
class SolveReport:
    digest: str
    problem: str
    detected_class: str
    status: str  # "ok" or "none"
    sigma: int | None
    walk: list[int] | None
    forward_mask: list[bool] | None
    branch: str
    elapsed_ms: float

    def to_dict(self) -> dict:
        return {
            "digest": self.digest,
            "problem": self.problem,
            "detected_class": self.detected_class,
            "status": self.status,
            "sigma": self.sigma,
            "walk": self.walk,
            "forward_mask": self.forward_mask,
            "branch": self.branch,
            "elapsed_ms": self.elapsed_ms,
        }

    @staticmethod
    def from_dict(payload: dict) -> "SolveReport":
        try:
            return SolveReport(
                digest=payload["digest"],
                problem=payload["problem"],
                detected_class=payload["detected_class"],
                status=payload["status"],
                sigma=payload["sigma"],
                walk=payload["walk"],
                forward_mask=payload["forward_mask"],
                branch=payload["branch"],
                elapsed_ms=payload.get("elapsed_ms", 0.0),
            )
        except KeyError as exc:
            raise InputError(f"report is missing field {exc.args[0]!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"


def _detect(d: Digraph) -> tuple[str, PartiteStructure | None]:
    parts = recognize_smd(d)
    lsd = recognize_lsd(d)
    if parts is not None and lsd:
        return "both", parts
    if parts is not None:
        return "smd", parts
    if lsd:
        return "lsd", None
    return "neither", None


def solve(
    d: Digraph, problem: str, parts: PartiteStructure | None = None
) -> SolveReport:
    """Dispatch to the solver for the detected class and verify the result.

    problem is "mfahoc" or "mfahop".  A digraph that is both semicomplete
    multipartite and locally semicomplete runs both cycle solvers, which must
    agree on the optimum.
    """
    if problem not in ("mfahoc", "mfahop"):
        raise InputError(f"unknown problem {problem!r}")
    start = time.perf_counter()
    detected, found_parts = _detect(d)
    if parts is None:
        parts = found_parts
    outcome = None  # (sigma, walk, branch) or None
    none_sigma: int | None = None
    if detected == "neither":
        raise UnsupportedClassError(
            "input is neither semicomplete multipartite nor locally semicomplete"
        )
    if problem == "mfahop":
        if detected in ("smd", "both"):
            outcome = mfahop_smd(d, parts)
        else:
            if not underlying_is_connected(d):
                outcome = None
            else:
                seq = ham_path_lsd(d)
                walk = validate_walk(d, seq, WalkKind.PATH)
                outcome = (walk.sigma_plus, walk, "lsd-path")
    else:
        if d.n < 3:
            raise InputError("Hamilton oriented cycles need at least 3 vertices")
        if detected == "both":
            smd_res = mfahoc_smd(d, parts)
            lsd_res = mfahoc_lsd(d)
            s1 = None if smd_res is None else smd_res[0]
            s2 = None if lsd_res is None else lsd_res[0]
            if s1 != s2:
                raise InternalVerificationError(
                    f"solvers disagree on a semicomplete input: {s1} vs {s2}"
                )
            outcome = smd_res
            if outcome is not None:
                outcome = (outcome[0], outcome[1], "both:" + outcome[2])
            else:
                none_sigma = 0  # the input is an LSD, so the 0 convention applies
        elif detected == "smd":
            outcome = mfahoc_smd(d, parts)
        else:
            if not underlying_is_connected(d):
                raise InputError("disconnected locally semicomplete digraph")
            outcome = mfahoc_lsd(d)
            if outcome is None:
                none_sigma = 0  # the optimum is defined as 0 in this case
    elapsed = (time.perf_counter() - start) * 1000.0
    digest = instance_digest(d)
    if outcome is None:
        return SolveReport(
            digest=digest,
            problem=problem,
            detected_class=detected,
            status="none",
            sigma=none_sigma,
            walk=None,
            forward_mask=None,
            branch="no-hamilton-oriented-structure",
            elapsed_ms=elapsed,
        )
    sigma, walk, branch = outcome
    report = SolveReport(
        digest=digest,
        problem=problem,
        detected_class=detected,
        status="ok",
        sigma=sigma,
        walk=list(walk.seq),
        forward_mask=list(walk.forward_mask),
        branch=branch,
        elapsed_ms=elapsed,
    )
    problems = verify_report(d, report)
    if problems:
        raise InternalVerificationError(
            "solver emitted an invalid certificate: " + "; ".join(problems)
        )
    return report


def verify_report(d: Digraph, report: SolveReport) -> list[str]:
    """Recompute the certificate from scratch; returns failure descriptions.

    An empty list means the report verifies.  Nothing from the solvers is
    reused: the forward mask and sigma are rebuilt from the walk alone.
    """
    problems: list[str] = []
    if report.digest != instance_digest(d):
        problems.append("digest does not match the instance")
    if report.status == "none":
        if report.walk is not None or report.forward_mask is not None:
            problems.append("a 'none' report must not carry a walk")
        return problems
    if report.walk is None or report.sigma is None:
        return ["an 'ok' report needs a walk and a sigma"]
    kind = WalkKind.CYCLE if report.problem == "mfahoc" else WalkKind.PATH
    try:
        walk = validate_walk(d, tuple(report.walk), kind)
    except NotAWalkError as exc:
        return [f"walk is invalid: consecutive nonadjacent pair {exc.pair}"]
    except InputError as exc:
        return [f"walk is invalid: {exc}"]
    if walk.sigma_plus != report.sigma:
        problems.append(
            f"sigma mismatch: walk has {walk.sigma_plus} forward arcs, "
            f"report claims {report.sigma}"
        )
    if report.forward_mask is not None and list(walk.forward_mask) != list(
        report.forward_mask
    ):
        problems.append("forward mask does not match a fresh classification")
    return problems
