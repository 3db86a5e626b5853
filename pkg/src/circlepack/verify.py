"""Self-checks run by `circlepack verify`: each suite returns a SuiteResult."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Callable, Optional

import numpy as np

from .arith import half_if_2mod4, kronecker
from .configs import (
    CubeConfig,
    OctConfig,
    apply_generator,
    generator_ids,
    modular_type,
    validate_config,
)
from .enumeration import EnumOptions, enumerate_curvatures, forbidden_sum_hits, oracle_enumerate
from .ford import check_ford
from .invariants import (
    CIRCLE_TYPES,
    PACKING_TYPES,
    _circles,
    chi2_circle,
    chi2_from_rho,
    chi2_packing,
    oct_partial_colors,
    partial_symbol,
    random_states,
    rho_witnesses,
    tangent_coprime_pairs,
)
from .kinds import Family
from .reporting import obstruction_for
from .tables import ROWS

SUITES = ("ford", "node", "edge", "oracle", "modular", "obstruction")
MAX_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, item) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(item)
        self.details["failure_count"] = self.details.get("failure_count", 0) + 1

    def summary(self) -> str:
        tail = "" if self.ok else f", {self.details.get('failure_count', len(self.failures))} failures"
        return f"{self.name}: {'ok' if self.ok else 'FAILED'} ({self.checked} checks{tail})"


def _config(row):
    return validate_config(row.family.value, row.seed)


def _note(progress: Optional[Callable], msg: str) -> None:
    if progress:
        progress(msg)


# ---- ford ------------------------------------------------------------------------------------

def suite_ford(bound: int = 20, progress=None) -> SuiteResult:
    res = SuiteResult("ford")
    for fam in Family:
        rep = check_ford(fam, bound)
        res.checked += rep.checked
        for f in rep.failures:
            res.fail((fam.value, *f))
        _note(progress, f"ford {fam.value}: {rep.checked} checks")
    return res


# ---- node ------------------------------------------------------------------------------------

def flip_expected(family: Family, a: int) -> Optional[bool]:
    """Whether the raw symbols (rho / a') of the two tangency forms are opposite at curvature a.

    None where no congruence rule applies (cubes have one form; triangular
    a = 4, 8, 16, 20 mod 24 depend on the factorization of a).
    """
    if family in (Family.OCT, Family.SQUARE):
        return a % 8 in (3, 5)
    if family is Family.TRI:
        r = a % 24
        if r in (4, 8, 16, 20):
            return None
        return r in (5, 7, 10, 14, 17, 19)
    return None


def suite_node(witnesses: int = 20, states: int = 12, rng: random.Random | None = None,
               progress=None) -> SuiteResult:
    """Per-circle symbol independent of the witness; raw symbol flips between the two forms."""
    rng = rng or random.Random(0)
    res = SuiteResult("node")
    flips = {"agree": 0, "flip": 0}
    for row in ROWS:
        cfg = _config(row)
        fam = row.family
        label = modular_type(cfg).label
        for st in random_states(cfg, states, rng, 8):
            for cid in _circles(st):
                a = st.curvature(cid)
                if a == 0:
                    continue
                ws = []
                for w in rho_witnesses(st, cid, 40):
                    ws.append(w)
                    if len(ws) >= witnesses:
                        break
                if len(ws) < witnesses:
                    res.fail((fam.value, row.seed, "few witnesses", a, len(ws)))
                    continue
                if label in CIRCLE_TYPES[fam]:
                    vals = {chi2_from_rho(fam, label, a, w.rho) for w in ws}
                    res.checked += 1
                    if len(vals) != 1:
                        res.fail((fam.value, row.seed, "witness dependence", a))
                want = flip_expected(fam, a)
                if want is None:
                    continue
                raw = {}
                for w in ws:
                    raw.setdefault(w.form, set()).add(kronecker(w.rho, half_if_2mod4(a)))
                res.checked += 1
                if any(len(v) != 1 for v in raw.values()):
                    res.fail((fam.value, row.seed, "raw symbol not constant on a form", a))
                    continue
                if len(raw) == 2:
                    va, vb = (next(iter(raw[k])) for k in ("alpha", "beta"))
                    flips["flip" if va != vb else "agree"] += 1
                    if (va != vb) != want:
                        res.fail((fam.value, row.seed, "sign flip", a))
        _note(progress, f"node {fam.value} {row.seed}")
    res.details["form_pairs"] = flips
    return res


# ---- edge ------------------------------------------------------------------------------------

def suite_edge(pairs: int = 10 ** 4, rng: random.Random | None = None, progress=None) -> SuiteResult:
    """Tangent coprime circles carry the same symbol (opposite for cube type (0,2,3))."""
    rng = rng or random.Random(0)
    res = SuiteResult("edge")
    per = {}
    for row in ROWS:
        fam = row.family
        cfg = _config(row)
        label = modular_type(cfg).label
        if label not in CIRCLE_TYPES[fam]:
            continue
        opposite = fam is Family.CUBE and label == "(0,2,3)"
        done = 0
        while done < pairs:
            for st in random_states(cfg, 1, rng, 10):
                for p, q in tangent_coprime_pairs(st, positive=False):
                    u, v = chi2_circle(st, p), chi2_circle(st, q)
                    done += 1
                    if (u == -v) != opposite:
                        res.fail((fam.value, row.seed, st.curvature(p), st.curvature(q)))
        res.checked += done
        per[f"{fam.value} {row.seed}"] = done
        _note(progress, f"edge {fam.value} {row.seed}: {done} pairs")
    # the octahedral pair symbol of the partial types is symmetric
    for row in ROWS:
        if row.family is not Family.OCT or row.type_label in CIRCLE_TYPES[Family.OCT]:
            continue
        cfg = _config(row)
        for st in random_states(cfg, 200, rng, 10):
            for p, q in tangent_coprime_pairs(st, positive=False):
                res.checked += 1
                if partial_symbol(st, (p, q)) != partial_symbol(st, (q, p)):
                    res.fail(("oct", row.seed, "pair symbol not symmetric", st.curvature(p), st.curvature(q)))
    res.details["pairs"] = per
    return res


# ---- oracle ----------------------------------------------------------------------------------

def suite_oracle(N: int = 2000, rows=None, threads: int = 1, progress=None) -> SuiteResult:
    """The pruned enumeration equals the unpruned oracle bit-for-bit."""
    res = SuiteResult("oracle")
    for row in rows or ROWS:
        cfg = _config(row)
        e = enumerate_curvatures(cfg, N, threads=threads)
        o = oracle_enumerate(cfg, N)
        res.checked += 1
        if e != o:
            diff = np.flatnonzero(e.present ^ o.present)
            res.fail((row.family.value, row.seed, [int(x) for x in diff[:10]]))
        _note(progress, f"oracle {row.family.value} {row.seed}: {'ok' if e == o else 'DIFF'}")
    return res


# ---- modular ---------------------------------------------------------------------------------

def _walk_ok(st, residues, modulus) -> bool:
    if isinstance(st, (OctConfig, CubeConfig)):
        vals = st.values
    else:
        vals = [st.curvature(c) for c in st.circle_ids(1)]
    return all(v % modulus in residues for v in vals)


def suite_modular(moves: int = 10 ** 5, N: int = 2000, restart: int = 40,
                  rng: random.Random | None = None, progress=None) -> SuiteResult:
    """Random generator moves keep the type; forbidden tangent sums never occur."""
    rng = rng or random.Random(0)
    res = SuiteResult("modular")
    seeds = {}
    for row in ROWS:
        seeds.setdefault(row.family, []).append(row)
    for fam, rows in seeds.items():
        cfgs = [_config(r) for r in rows]
        types = [modular_type(c) for c in cfgs]
        k = 0
        st, t = cfgs[0], types[0]
        while k < moves:
            if k % restart == 0:
                i = rng.randrange(len(cfgs))
                st, t = cfgs[i], types[i]
            st = apply_generator(st, rng.choice(generator_ids(st)))
            k += 1
            if not _walk_ok(st, t.residues, t.modulus):
                res.fail((fam.value, "residue outside type", k))
            if k % 997 == 0 and modular_type(st) != t:
                res.fail((fam.value, "type changed", k))
        res.checked += moves
        _note(progress, f"modular {fam.value}: {moves} moves")
        for r in rows:
            p = enumerate_curvatures(validate_config(fam.value, r.seed), N, track_pairs=True)
            hits = forbidden_sum_hits(p, fam)
            res.checked += int(p.pair_sums.sum())
            if any(hits.values()):
                res.fail((fam.value, r.seed, "forbidden tangent sums", hits))
    return res


# ---- obstruction -----------------------------------------------------------------------------

def _shape_hits(values, factors) -> list:
    out = []
    for n in values:
        n = int(n)
        for c in factors:
            if n % c == 0 and isqrt(n // c) ** 2 == n // c:
                out.append(n)
                break
    return out


def suite_obstruction(N_cap: int = 10 ** 6, threads: int = 1, progress=None) -> SuiteResult:
    """No curvature of an obstructed shape, and the octahedral partial obstructions by colour."""
    res = SuiteResult("obstruction")
    for row in ROWS:
        if row.chi2 != -1:
            continue
        cfg = _config(row)
        chi = chi2_packing(cfg)
        obs = obstruction_for(cfg.kind, row.type_label, chi)
        N = min(row.N, N_cap)
        p = enumerate_curvatures(cfg, N, threads=threads)
        hits = _shape_hits(p.values(), obs.factors)
        res.checked += p.count
        if not obs.factors or hits:
            res.fail((row.family.value, row.seed, obs.description, hits[:10]))
        _note(progress, f"obstruction {row.family.value} {row.seed} N={N}: {len(hits)} hits")
    for row in ROWS:
        if row.family is not Family.OCT or row.type_label in PACKING_TYPES[Family.OCT]:
            continue
        cfg = _config(row)
        names = _oct_color_names(cfg)
        N = min(row.N, N_cap)
        p = enumerate_curvatures(cfg, N, threads=threads, colors=True)
        for color, name in names.items():
            factors = {"blue": (1,), "red": (2,)}.get(name)
            if factors is None:
                continue
            vals = p.color_values(color)
            hits = _shape_hits(vals, factors)
            res.checked += len(vals)
            if hits:
                res.fail(("oct", row.seed, name, hits[:10]))
        _note(progress, f"partial obstruction oct {row.seed}")
    return res


def _oct_color_names(cfg) -> dict:
    from .configs import color_of

    rng = random.Random(0)
    for st in [cfg, *random_states(cfg, 50, rng, 6)]:
        names = oct_partial_colors(st)
        if "red" in names.values():
            return {color_of(st, i): n for i, n in names.items()}
    raise LookupError("no coprime yellow pair found")


RUNNERS = {
    "ford": suite_ford,
    "node": suite_node,
    "edge": suite_edge,
    "oracle": suite_oracle,
    "modular": suite_modular,
    "obstruction": suite_obstruction,
}


def run_suite(name: str, **kw) -> SuiteResult:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](**kw)
