"""Experiment reports: structured records with exact rationals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .serialize import decode, dumps, encode, loads


@dataclass
class ExperimentReport:
    experiment: str
    model: str | None = None
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    verdict: str | None = None
    witness: object = None
    wall_time: float | None = None

    def to_dict(self) -> dict:
        rec = {
            "experiment": self.experiment,
            "model": self.model,
            "inputs": encode(self.inputs),
            "outputs": encode(self.outputs),
            "verdict": self.verdict,
            "witness": encode(self.witness),
        }
        if self.wall_time is not None:
            rec["wall_time"] = self.wall_time
        return rec

    @classmethod
    def from_dict(cls, rec: dict) -> "ExperimentReport":
        return cls(
            experiment=rec["experiment"],
            model=rec.get("model"),
            inputs=decode(rec.get("inputs", {})),
            outputs=decode(rec.get("outputs", {})),
            verdict=rec.get("verdict"),
            witness=decode(rec.get("witness")),
            wall_time=rec.get("wall_time"),
        )

    def to_json(self) -> str:
        return dumps(self.to_dict()) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        # loads() decodes rationals; re-encode so from_dict sees one shape
        return cls.from_dict(encode(loads(text)))

    def to_table(self) -> str:
        lines = [f"experiment: {self.experiment}"]
        if self.model:
            lines.append(f"model:      {self.model}")
        for title, block in (("inputs", self.inputs), ("outputs", self.outputs)):
            if block:
                lines.append(f"{title}:")
                lines.extend(_table_rows(block, "  "))
        if self.verdict is not None:
            lines.append(f"verdict:    {self.verdict}")
        if self.witness is not None:
            lines.append(f"witness:    {_fmt(self.witness)}")
        if self.wall_time is not None:
            lines.append(f"wall time:  {self.wall_time:.4f} s")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _table_rows(block: dict, indent: str) -> list:
    rows = []
    width = max((len(str(k)) for k in block), default=0)
    for k, v in block.items():
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            rows.append(f"{indent}{k}:")
            for item in v:
                rows.append(f"{indent}  - " + ", ".join(f"{ik}={_fmt(iv)}" for ik, iv in item.items()))
        elif isinstance(v, dict) and v and (len(v) > 6 or all(isinstance(x, dict) for x in v.values())):
            rows.append(f"{indent}{k}:")
            rows.extend(_table_rows(v, indent + "  "))
        else:
            rows.append(f"{indent}{str(k).ljust(width)}  {_fmt(v)}")
    return rows
