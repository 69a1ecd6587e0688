# codim/report.py
import json
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

import mpmath
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from config import config

Status = Literal["pass", "fail", "info"]


class CheckRecord(BaseModel):
    """Outcome of one consistency check; failures carry a machine-readable witness"""
    name: str
    status: Status
    n: Optional[int] = None
    detail: str = ""
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def pass_record(name: str, n: Optional[int] = None, detail: str = "") -> CheckRecord:
    return CheckRecord(name=name, status="pass", n=n, detail=detail)


def fail_record(name: str, witness: object, n: Optional[int] = None, detail: str = "") -> CheckRecord:
    return CheckRecord(name=name, status="fail", n=n, detail=detail, witness=str(witness))


def info_record(name: str, n: Optional[int] = None, detail: str = "") -> CheckRecord:
    """Reported alongside the checks, never counted as a failure"""
    return CheckRecord(name=name, status="info", n=n, detail=detail)


class CocharacterTerm(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    q: Optional[int] = None
    lam: List[int] = Field(alias="lambda")
    mu: Optional[List[int]] = None
    m: int


class GradedPart(BaseModel):
    q: int
    m: int
    c: str


class CodimRow(BaseModel):
    n: int
    c_n: str
    l_n: str
    max_dimension: str
    root: str
    ratio: Optional[str] = None
    arithmetic: str
    graded_parts: Optional[List[GradedPart]] = None
    cocharacter: List[CocharacterTerm] = Field(default_factory=list)
    seconds: Optional[float] = None


class Provenance(BaseModel):
    arithmetic: str
    prime: Optional[str] = None
    seed: int
    spanning: str


class CodimReport(BaseModel):
    target: str
    mode: str
    rows: List[CodimRow] = Field(default_factory=list)
    checks: List[CheckRecord] = Field(default_factory=list)
    provenance: Provenance
    reference_exponent: Optional[int] = None
    centerless: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timings: bool = False) -> str:
        data = self.model_dump(by_alias=True, exclude_none=True)
        if not timings:
            for row in data["rows"]:
                row.pop("seconds", None)
        return json.dumps(data, indent=2, sort_keys=False) + "\n"

    def to_frame(self, top: Optional[int] = None) -> pd.DataFrame:
        records = []
        for row in self.rows:
            terms = row.cocharacter
            if top is not None:
                terms = sorted(terms, key=lambda t: -t.m)[:top]
            records.append({
                "n": row.n,
                "c_n": row.c_n,
                "l_n": row.l_n,
                "max d": row.max_dimension,
                "root": row.root,
                "ratio": row.ratio or "",
                "arith": row.arithmetic,
                "cocharacter": " + ".join(format_term(t) for t in terms),
            })
        return pd.DataFrame(records, columns=["n", "c_n", "l_n", "max d", "root", "ratio", "arith", "cocharacter"])

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False)

    def to_table(self) -> str:
        lines = [f"{self.target} ({self.mode})"]
        if self.reference_exponent is not None:
            lines.append(f"reference exponent: {self.reference_exponent}")
        lines.append(self.to_frame(top=config.TABLE_TOP_MULTIPLICITIES).to_string(index=False))
        return "\n".join(lines) + "\n"


def format_term(term: CocharacterTerm) -> str:
    shape = f"({','.join(map(str, term.lam))})"
    if term.mu is not None:
        shape = f"{shape}x({','.join(map(str, term.mu))})"
    return f"{term.m}*{shape}" if term.m != 1 else shape


def nth_root(value: int, n: int, digits: int = config.ROOT_DIGITS) -> str:
    """The n-th root of an exact integer, rendered with a fixed number of decimals"""
    if value <= 0:
        return format(0, f".{digits}f")
    with mpmath.workdps(digits + 20):
        return format(float(mpmath.root(mpmath.mpf(value), n)), f".{digits}f")


def ratio(value: int, previous: Optional[int], digits: int = config.ROOT_DIGITS) -> Optional[str]:
    if not previous:
        return None
    return format(float(Fraction(value, previous)), f".{digits}f")


class ExponentRow(BaseModel):
    n: int
    c_n: str
    root: str
    ratio: Optional[str] = None
    monotone: bool = True


def exponent_report(sequence: Sequence[Tuple[int, int]], centerless: bool = False) -> List[ExponentRow]:
    """n-th roots and consecutive ratios; a drop c_{n+1} < c_n is flagged only for centerless targets"""
    rows = []
    previous: Optional[Tuple[int, int]] = None
    for n, c in sorted(sequence):
        if c < 0:
            raise ValueError(f"codimension must be non-negative, got c_{n} = {c}")
        consecutive = previous is not None and previous[0] == n - 1
        rows.append(ExponentRow(
            n=n,
            c_n=str(c),
            root=nth_root(c, n),
            ratio=ratio(c, previous[1]) if consecutive else None,
            monotone=not (centerless and consecutive and c < previous[1]),
        ))
        previous = (n, c)
    return rows


def exponent_frame(rows: Sequence[ExponentRow], reference: Optional[int] = None) -> pd.DataFrame:
    frame = pd.DataFrame([r.model_dump() for r in rows], columns=["n", "c_n", "root", "ratio", "monotone"])
    frame["ratio"] = frame["ratio"].fillna("")
    if reference is not None:
        frame["reference"] = reference
    return frame
