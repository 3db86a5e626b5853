"""Admissible sets, quadratic obstructions and sporadic-integer reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .configs import modular_type, type_by_label
from .enumeration import CurvaturePresence, EnumOptions, enumerate_curvatures
from .invariants import PACKING_TYPES, Chi2Value, chi2_packing
from .kinds import Family, kind_of

JSON_LIST_LIMIT = 10 ** 5


def admissible_residues(kind, type_label) -> frozenset:
    """Residues mod the family modulus allowed by the modular type."""
    label = getattr(type_label, "label", type_label)
    return type_by_label(kind, label).residues


def admissible_mask(kind, type_label, N: int) -> np.ndarray:
    k = kind_of(kind)
    res = admissible_residues(k, type_label)
    n = np.arange(N + 1)
    mask = np.isin(n % k.modulus, sorted(res))
    mask[0] = False
    return mask


@dataclass(frozen=True)
class Obstruction:
    """Quadratic shapes c * n^2 excluded by a packing invariant of -1."""

    factors: tuple[int, ...]  # the c values

    @property
    def description(self) -> str:
        if not self.factors:
            return "none"
        return " or ".join("n^2" if c == 1 else f"{c}n^2" for c in self.factors)

    def mask(self, N: int) -> np.ndarray:
        m = np.zeros(N + 1, dtype=bool)
        for c in self.factors:
            r = np.arange(1, isqrt(N // c) + 1)
            m[c * r * r] = True
        return m

    def __contains__(self, n: int) -> bool:
        for c in self.factors:
            if n % c == 0 and isqrt(n // c) ** 2 == n // c:
                return True
        return False


def obstruction_for(kind, type_label: str, chi2) -> Obstruction:
    fam = kind_of(kind).family
    val = chi2.value if isinstance(chi2, Chi2Value) else chi2
    label = getattr(type_label, "label", type_label)
    if val != -1 or label not in PACKING_TYPES[fam]:
        return Obstruction(())
    if fam in (Family.OCT, Family.CUBE):
        return Obstruction((1, 2))
    if fam is Family.SQUARE:
        return Obstruction((1,))
    if label == "(1)":
        return Obstruction((1,))
    return Obstruction((3,))


def obstructed_values(kind, type_label, chi2, N: int) -> list[int]:
    """Admissible integers <= N of an obstructed shape (empty unless chi2 = -1)."""
    obs = obstruction_for(kind, type_label, chi2)
    m = obs.mask(N) & admissible_mask(kind, type_label, N)
    return [int(x) for x in np.flatnonzero(m)]


@dataclass
class SporadicReport:
    kind: str
    seed: tuple
    type: str
    chi2: Optional[int]
    obstruction: str
    N: int
    admissible_count: int
    present_count: int
    sporadic: list = field(repr=False)
    extra: dict = field(default_factory=dict, repr=False)

    @property
    def sporadic_count(self) -> int:
        return len(self.sporadic)

    @property
    def sporadic_max(self) -> Optional[int]:
        return self.sporadic[-1] if self.sporadic else None

    def to_dict(self, limit: int = JSON_LIST_LIMIT) -> dict:
        truncated = len(self.sporadic) > limit
        return {
            "kind": self.kind,
            "seed": list(self.seed),
            "type": self.type,
            "chi2": self.chi2,
            "obstruction": self.obstruction,
            "N": self.N,
            "admissible_count": self.admissible_count,
            "present_count": self.present_count,
            "sporadic_count": self.sporadic_count,
            "sporadic_max": self.sporadic_max,
            "sporadic": self.sporadic[:limit],
            "sporadic_truncated": truncated,
            "version": __version__,
            "config": dict(self.extra),
        }

    def to_json(self, limit: int = JSON_LIST_LIMIT) -> str:
        return json.dumps(self.to_dict(limit), indent=2, sort_keys=False) + "\n"

    CSV_FIELDS = ("kind", "seed", "type", "chi2", "obstruction", "N", "admissible_count",
                  "present_count", "sporadic_count", "sporadic_max")

    def csv_row(self) -> dict:
        d = self.to_dict(0)
        d["seed"] = " ".join(str(s) for s in self.seed)
        d["chi2"] = "n/a" if self.chi2 is None else f"{self.chi2:+d}"
        d["sporadic_max"] = "" if self.sporadic_max is None else self.sporadic_max
        return {k: d[k] for k in self.CSV_FIELDS}

    def restrict(self, N: int) -> "SporadicReport":
        """The report for a smaller bound, derived from this one (prefix consistency)."""
        if N > self.N:
            raise ValueError("can only restrict to a smaller bound")
        return SporadicReport(self.kind, self.seed, self.type, self.chi2, self.obstruction, N,
                              -1, -1, [n for n in self.sporadic if n <= N], dict(self.extra))


def sporadic_from_presence(kind, type_label: str, chi2, presence: CurvaturePresence) -> list[int]:
    N = presence.N
    mask = admissible_mask(kind, type_label, N) & ~presence.present
    mask &= ~obstruction_for(kind, type_label, chi2).mask(N)
    return [int(x) for x in np.flatnonzero(mask)]


def sporadic_report(config, N: int, options: EnumOptions | None = None, seed=None,
                    chi2: Chi2Value | None = None, presence: CurvaturePresence | None = None,
                    **kw) -> SporadicReport:
    """Type, invariant, enumeration, and the set of admissible unobstructed missing integers."""
    k = config.kind
    mt = modular_type(config)
    if chi2 is None:
        chi2 = chi2_packing(config)
    if presence is None:
        presence = enumerate_curvatures(config, N, options, **kw)
    elif presence.N != N:
        raise ValueError("presence bound differs from N")
    obs = obstruction_for(k, mt.label, chi2)
    adm = admissible_mask(k, mt.label, N)
    spor = sporadic_from_presence(k, mt.label, chi2, presence)
    seed = tuple(seed) if seed is not None else _seed_of(config)
    return SporadicReport(
        kind=k.name, seed=seed, type=mt.label, chi2=chi2.value, obstruction=obs.description,
        N=N, admissible_count=int(adm.sum()), present_count=int((presence.present & adm).sum()),
        sporadic=spor, extra={"states": presence.stats.get("states"),
                              "circles": presence.stats.get("circles")},
    )


def _seed_of(config) -> tuple:
    if hasattr(config, "values"):
        return tuple(config.values)
    return tuple(config.poly())


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SporadicReport.CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def write_json(report: SporadicReport, path) -> None:
    Path(path).write_text(report.to_json())


def write_csv(reports, path) -> None:
    if isinstance(reports, SporadicReport):
        reports = [reports]
    Path(path).write_text(reports_csv(reports))


def save_presence(presence: CurvaturePresence, path) -> None:
    presence.save(path)


def load_presence(path) -> CurvaturePresence:
    return CurvaturePresence.load(path)


# ---- figures -------------------------------------------------------------------------------

def sporadic_figure(report: SporadicReport, presence: CurvaturePresence, path, bins: int = 60) -> None:
    """Two panels: the sporadic integers, and the attained share of admissible integers by range."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    N = report.N
    adm = admissible_mask(report.kind, report.type, N)
    edges = np.unique(np.geomspace(1, N + 1, bins + 1).astype(np.int64))
    share, mids = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        a = adm[lo:hi].sum()
        if a:
            share.append((presence.present[lo:hi] & adm[lo:hi]).sum() / a)
            mids.append(np.sqrt(lo * hi))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.8))
    s = np.array(report.sporadic)
    if len(s):
        ax1.plot(s, np.arange(1, len(s) + 1), ".", ms=3)
        ax1.set_xscale("log")
    ax1.set_xlabel("sporadic integer")
    ax1.set_ylabel("cumulative count")
    chi = "n/a" if report.chi2 is None else f"{report.chi2:+d}"
    ax1.set_title(f"{report.kind} {tuple(report.seed)}  type {report.type}  chi2 {chi}", fontsize=9)
    ax2.plot(mids, share, "-o", ms=3)
    ax2.set_xscale("log")
    ax2.set_ylim(0, 1.02)
    ax2.set_xlabel("n")
    ax2.set_ylabel("attained share of admissible n")
    ax2.set_title(f"N = {N}: {report.sporadic_count} sporadic, max {report.sporadic_max}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
