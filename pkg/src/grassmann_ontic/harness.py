"""Experiments behind the command-line interface.

Every command builds an :class:`ExperimentReport` from public operations
only; the CLI just parses arguments and prints the report.
"""
from __future__ import annotations

import re
import time
from fractions import Fraction
from pathlib import Path

from . import checks, clifford, models, ontic, weyl
from .dsl import parse_system
from .report import ExperimentReport
from .sampling import DEFAULT_SEED

BLOWTORCH_MODELS = ("eight-state", "grassmann", "grassmann-componentwise")
FAMILY_MODELS = ("three-state", "grassmann", "three-state-pairs", "grassmann-pairs")
EVOLVE_TOKENS = ("I", "X", "Y", "Z", "H", "T1", "T2")


class UsageError(ValueError):
    """Bad model name, state spec or gate token."""


# -- state specs --------------------------------------------------------------

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(text: str) -> Fraction:
    text = text.strip().replace("−", "-")
    if not _RATIONAL.match(text):
        raise UsageError(f"not an exact rational: {text!r}")
    return Fraction(text)


def parse_state(spec: str) -> weyl.WeylState:
    """``bloch a/b,c/d,e/f``, ``stab +x`` or ``mixed``."""
    kind, _, rest = spec.strip().partition(" ")
    rest = rest.strip()
    try:
        if kind == "bloch":
            parts = rest.split(",")
            if len(parts) != 3:
                raise UsageError(f"bloch needs three comma-separated rationals, got {rest!r}")
            return weyl.weyl_from_bloch(tuple(_parse_rational(p) for p in parts))
        if kind == "stab":
            return weyl.stabilizer_state(rest)
        if kind == "mixed" and not rest:
            return weyl.maximally_mixed()
    except (ValueError, TypeError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from None
    raise UsageError(f"malformed state spec {spec!r}; use 'bloch a,b,c', 'stab +x' or 'mixed'")


def parse_eight_state(spec: str):
    """Eight-state distribution: ``atom +-+``, ``stab +x`` or the mixed state.

    A stabilizer state is the uniform mixture of the four ontic states whose
    matching coordinate carries its sign.
    """
    kind, _, rest = spec.strip().partition(" ")
    rest = rest.strip()
    if kind == "atom":
        try:
            return models.point_mass(rest)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind == "stab":
        rest = rest.replace("−", "-")
        if len(rest) != 2 or rest[0] not in "+-" or rest[1] not in "xyz":
            raise UsageError(f"unknown stabilizer state {rest!r}")
        axis, sign = "xyz".index(rest[1]), 1 if rest[0] == "+" else -1
        parts = [(Fraction(1, 4), models.point_mass(s)) for s in models.EIGHT_STATES if s[axis] == sign]
        return ontic.mix(parts)
    if kind == "mixed" and not rest:
        return models.uniform_eight()
    if kind == "bloch":
        if parse_state(spec).bloch == weyl.BlochVector(0, 0, 0):
            return models.uniform_eight()
        raise UsageError("the eight-state model only takes point masses, stabilizer states or the mixed state")
    raise UsageError(f"malformed eight-state spec {spec!r}; use 'atom +++', 'stab +x' or 'mixed'")


def _tuple(t) -> list:
    return list(t.as_tuple() if isinstance(t, weyl.SixTuple) else t)


def _state_record(s: weyl.WeylState) -> dict:
    return {"symbol": str(s), "bloch": list(s.bloch), "tuple": _tuple(weyl.six_tuple(s))}


def _timed(fn):
    def run(*args, timing: bool = False, **kwargs):
        start = time.perf_counter()
        rep = fn(*args, **kwargs)
        if timing:
            rep.wall_time = time.perf_counter() - start
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# -- commands -----------------------------------------------------------------


@_timed
def cmd_blowtorch(model: str, state: str) -> ExperimentReport:
    """Run T1 and T2 on one input and compare the two outputs."""
    if model not in BLOWTORCH_MODELS:
        raise UsageError(f"unknown model {model!r}; expected one of {BLOWTORCH_MODELS}")
    if model == "eight-state":
        d = parse_eight_state(state)
        t1 = models.eight_state_blowtorch("T1", d)
        t2 = models.eight_state_blowtorch("T2", d)
        outputs = {
            "T1": t1.as_dict(),
            "T2": t2.as_dict(),
            "T1_support": sorted(models.support(t1)),
            "T2_support": sorted(models.support(t2)),
        }
        inputs = {"state": state, "distribution": d.as_dict()}
    else:
        s = parse_state(state)
        t = weyl.six_tuple(s)
        blow = models.tuple_blowtorch if model == "grassmann" else models.componentwise_blowtorch
        t1, t2 = blow("T1", t), blow("T2", t)
        outputs = {"T1": _tuple(t1), "T2": _tuple(t2)}
        if model == "grassmann":
            outputs["T1_symbol"] = str(clifford.blowtorch_T1(s))
            outputs["T2_symbol"] = str(clifford.blowtorch_T2(s))
        inputs = {"state": state, "tuple": _tuple(t)}
    same = t1 == t2
    return ExperimentReport(
        experiment="blowtorch",
        model=model,
        inputs=inputs,
        outputs=outputs,
        verdict="non-contextual" if same else "contextual",
        witness=None if same else state,
    )


def load_system(name: str | None = None, path: str | None = None):
    """Constraint system and its pair blocks (if any) by model name or file."""
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        return parse_system(text), ()
    if name in ("three-state", "three-state-pairs"):
        m = models.three_state_model()
    elif name in ("grassmann", "grassmann-pairs"):
        m = models.grassmann_model()
    else:
        raise UsageError(f"unknown model {name!r}; expected one of {FAMILY_MODELS}")
    if name.endswith("-pairs"):
        return m.nondisjoint, ()
    return m.disjoint, m.blocks


@_timed
def cmd_families(model: str | None = None, system_path: str | None = None) -> ExperimentReport:
    """Enumerate solution families and decide whether they form one convex set."""
    sys, blocks = load_system(model, system_path)
    fams = ontic.enumerate_families(sys)
    verdict = ontic.is_single_convex_set(fams, sys)
    outputs = {
        "atoms": list(sys.atoms),
        "count": len(fams),
        "families": [
            {"parameters": list(f.parameters), "form": f.render(), "ranges": {k: list(v) for k, v in f.ranges.items()}}
            for f in fams
        ],
        "single_convex_set": verdict.convex,
    }
    if len(fams) > 1:
        common = ontic.intersect_families(fams)
        outputs["common"] = [list(v) for v in common.vertices] if common else []
    witness = None
    if verdict.counterexample:
        d1, d2 = verdict.counterexample
        witness = {
            "first": list(d1.weights),
            "second": list(d2.weights),
            "midpoint": list(ontic.mix([(Fraction(1, 2), d1), (Fraction(1, 2), d2)]).weights),
        }
        if blocks:
            fixed = ontic.nondisjoint_convex_combine(blocks, [(Fraction(1, 2), d1), (Fraction(1, 2), d2)], sys)
            witness["constrained_midpoint"] = list(fixed.weights)
    return ExperimentReport(
        experiment="families",
        model=model or system_path,
        inputs={"system": sys.name or model or system_path},
        outputs=outputs,
        verdict="single convex set" if verdict.convex else "not convex",
        witness=witness,
    )


def parse_gates(gates: str) -> list:
    tokens = gates.replace(",", " ").split()
    for tok in tokens:
        if tok.upper() not in EVOLVE_TOKENS:
            raise UsageError(f"bad gate token {tok!r}; expected one of {EVOLVE_TOKENS}")
    return [t.upper() for t in tokens]


@_timed
def cmd_evolve(gates: str, state: str) -> ExperimentReport:
    """Apply a gate word left to right, recording the state after each step."""
    tokens = parse_gates(gates)
    s = parse_state(state)
    steps = []
    for tok in tokens:
        if tok == "T1":
            s = clifford.blowtorch_T1(s)
        elif tok == "T2":
            s = clifford.blowtorch_T2(s)
        else:
            s = clifford.apply_clifford(clifford.named_map(tok), s)
        steps.append({"gate": tok, **_state_record(s)})
    return ExperimentReport(
        experiment="evolve",
        model="grassmann",
        inputs={"state": state, "gates": tokens, "initial": _state_record(parse_state(state))},
        outputs={"steps": steps, "final": _state_record(s)},
    )


@_timed
def cmd_measure(state: str, pauli: str) -> ExperimentReport:
    """Pauli outcome probabilities through the eight-tuple decomposition."""
    if pauli.upper() not in models.PAULI_AXIS:
        raise UsageError(f"unknown Pauli measurement {pauli!r}; expected X, Y or Z")
    s = parse_state(state)
    t = weyl.six_tuple(s)
    plus, minus = models.measure_pauli(t, pauli)
    weights = models.decompose_on_lambda_prime(t)
    return ExperimentReport(
        experiment="measure",
        model="grassmann",
        inputs={"state": state, "pauli": pauli.upper(), "tuple": _tuple(t)},
        outputs={
            "plus": plus,
            "minus": minus,
            "decomposition": {models.lambda_label(k): v for k, v in weights.items()},
        },
    )


@_timed
def cmd_regions(state: str) -> ExperimentReport:
    """Weight of a state on every basis tuple and every disjoint atom."""
    s = parse_state(state)
    t = weyl.six_tuple(s)
    rows = models.region_occupancy(t)
    return ExperimentReport(
        experiment="regions",
        model="grassmann",
        inputs={"state": state, "tuple": _tuple(t)},
        outputs={"regions": {label: w for label, w in rows}},
    )


@_timed
def cmd_check(seed: int = DEFAULT_SEED, sweep: int = 50) -> ExperimentReport:
    """Run the invariant suites with a fixed seed."""
    results = checks.run_suites(seed=seed, sweep=sweep)
    outputs = {}
    failures = []
    for r in results:
        outputs[r.suite] = {"checks": len(r.outcomes), "passed": r.passed, "failed": r.failed, "cases": r.cases}
        failures += [f"{r.suite}.{o.name}: {o.message}" for o in r.outcomes if not o.passed]
    return ExperimentReport(
        experiment="check",
        inputs={"seed": seed, "sweep": sweep},
        outputs=outputs,
        verdict="fail" if failures else "pass",
        witness=failures or None,
    )
