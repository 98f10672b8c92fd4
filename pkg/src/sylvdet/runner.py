"""Command handlers shared by the FastAPI service and the CLI.

Each handler takes :class:`RunOptions`, resolves it into a canonical
:class:`RunConfig`, runs the requested sweep sequentially in a fixed order
(family declaration order, then dimension, then sample index) and returns a
:class:`Report`. Given the same options the report is byte-identical,
whichever transport invoked it.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Optional

from . import determinant, reduction
from .algebra import Polynomial, format_rational, poly_from_roots
from .errors import BadDimension, DegenerateParams, Unsupported
from .families import (
    REDUCIBLE_FAMILIES,
    FamilyId,
    FamilyParams,
    _mixed_rng,
    params_from_strings,
    params_to_strings,
    predicted_spectrum,
    sample_params,
    shifted_family,
    variable_note,
)
from .schemas import (
    AFamilyCase,
    BLeadingCase,
    Case,
    EvalCase,
    IdentityCase,
    InductionCase,
    ReduceCase,
    Report,
    RunConfig,
    RunOptions,
    Summary,
    TableRowCase,
    TraceMatrix,
    VerifyCase,
    WitnessModel,
)


class UsageError(ValueError):
    """Bad command usage or parameters; maps to exit code 2 / HTTP 400."""


def _family(name: str) -> FamilyId:
    try:
        return FamilyId(name)
    except ValueError:
        raise UsageError(f"unknown family: {name!r}") from None


def _resolve_dims(opts: RunOptions, default: tuple[int, int]) -> tuple[int, int]:
    given = [x for x in (opts.dim, opts.dims, opts.max_dim) if x is not None]
    if len(given) > 1:
        raise UsageError("give at most one of dim, dims, max_dim")
    if opts.dim is not None:
        lo, hi = opts.dim, opts.dim
    elif opts.dims is not None:
        lo, hi = opts.dims
    elif opts.max_dim is not None:
        lo, hi = 1, opts.max_dim
    else:
        lo, hi = default
    if lo < 1 or hi < lo:
        raise UsageError(f"bad dimension range {lo}..{hi}")
    return lo, hi


def _config(command: str, opts: RunOptions, dim_lo: int, dim_hi: int) -> RunConfig:
    return RunConfig(
        command=command,
        family=opts.family,
        dim_lo=dim_lo,
        dim_hi=dim_hi,
        params=dict(sorted(opts.params.items())),
        samples=opts.samples,
        seed=opts.seed,
        trials=opts.trials,
        max_n=opts.max_n,
        trace=opts.trace,
        paper_literal=opts.paper_literal,
        variant=opts.variant,
    )


def _report(config: RunConfig, cases: list[Case]) -> Report:
    passed = sum(1 for c in cases if c.passed)
    return Report(
        command=config.command,
        config=config,
        cases=cases,
        summary=Summary(total=len(cases), passed=passed, failed=len(cases) - passed),
    )


def _param_sets(
    family: FamilyId, dim: int, opts: RunOptions
) -> list[tuple[Optional[int], FamilyParams]]:
    """Explicit params give one case; parametric families otherwise get
    `samples` seeded draws (seed, seed+1, ...); paramless families one case."""
    if opts.params:
        try:
            return [(None, params_from_strings(family, opts.params))]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if family in (FamilyId.SYLVESTER_D, FamilyId.SYLVESTER_A):
        return [(None, None)]
    if opts.samples < 1:
        raise UsageError("samples must be >= 1")
    return [
        (opts.seed + i, sample_params(family, dim, opts.seed + i))
        for i in range(opts.samples)
    ]


def _poly_strings(p: Optional[Polynomial]) -> Optional[list[str]]:
    return None if p is None else p.to_strings()


def factored_form(roots: Iterable[Fraction]) -> str:
    """Render prod (t - r) with roots in the given order, grouping equal
    adjacent roots into an exponent: (t+2)t(t-2), (t-1)^2, ..."""
    parts = []
    for root, group in itertools.groupby(roots):
        count = len(list(group))
        if root == 0:
            base = "t"
        else:
            sign = "-" if root > 0 else "+"
            base = f"(t{sign}{format_rational(abs(root))})"
        parts.append(base + (f"^{count}" if count > 1 else ""))
    return "".join(parts)


# ---------------------------------------------------------------------------
# handlers

def run_eval(opts: RunOptions) -> Report:
    if opts.family == "all":
        raise UsageError("eval needs a single family")
    family = _family(opts.family)
    if opts.dim is None and opts.dims is None and opts.max_dim is None:
        raise UsageError("eval needs --dim (or --dims / --max-dim)")
    lo, hi = _resolve_dims(opts, (1, 1))
    config = _config("eval", opts, lo, hi)
    cases: list[Case] = []
    for dim in range(lo, hi + 1):
        for seed, params in _param_sets(family, dim, opts):
            try:
                r = determinant.verify_family(
                    family, dim, params, paper_literal=opts.paper_literal
                )
                spectrum = predicted_spectrum(
                    family, dim, params, paper_literal=opts.paper_literal
                )
            except (DegenerateParams, BadDimension) as exc:
                raise UsageError(str(exc)) from None
            cases.append(
                EvalCase(
                    family=family.value,
                    dim=dim,
                    params=params_to_strings(params),
                    seed=seed,
                    variable=variable_note(family, dim, params),
                    charpoly=r.charpoly.to_strings(),
                    pretty=str(r.charpoly),
                    factored=factored_form(spectrum),
                    closed_form=r.closed_form.to_strings(),
                    match=r.passed,
                    witness=r.witness,
                    passed=r.passed,
                )
            )
    return _report(config, cases)


def _verify_one(
    family: FamilyId,
    dim: int,
    params: FamilyParams,
    seed: Optional[int],
    paper_literal: bool,
) -> VerifyCase:
    try:
        r = determinant.verify_family(family, dim, params, paper_literal=paper_literal)
    except (DegenerateParams, BadDimension) as exc:
        raise UsageError(str(exc)) from None
    return VerifyCase(
        family=family.value,
        dim=dim,
        params=params_to_strings(params),
        seed=seed,
        charpoly=r.charpoly.to_strings(),
        closed_form=r.closed_form.to_strings(),
        oracle=r.oracle.to_strings(),
        closed_match=r.closed_match,
        oracle_match=r.oracle_match,
        x_charpoly=_poly_strings(r.x_charpoly),
        x_closed_form=_poly_strings(r.x_closed_form),
        x_match=r.x_match,
        paper_literal=paper_literal,
        witness=r.witness,
        passed=r.passed,
    )


def _induction_one(
    family: FamilyId,
    dim: int,
    params: FamilyParams,
    seed: Optional[int],
    paper_literal: bool,
) -> InductionCase:
    shift = shifted_family(family, dim, params, paper_literal=paper_literal)
    holds = determinant.induction_check(family, dim, params, paper_literal=paper_literal)
    return InductionCase(
        family=family.value,
        dim=dim,
        params=params_to_strings(params),
        seed=seed,
        pulled_roots=[format_rational(r) for r in shift.pulled_roots],
        scale=format_rational(shift.scale),
        offset=format_rational(shift.offset),
        child_dim=shift.child_dim,
        holds=holds,
        passed=holds,
    )


def run_verify(opts: RunOptions) -> Report:
    lo, hi = _resolve_dims(opts, (1, 8))
    config = _config("verify", opts, lo, hi)
    if opts.family == "all":
        families = list(FamilyId)
        if opts.params:
            raise UsageError("explicit params need a single family")
    else:
        families = [_family(opts.family)]
    cases: list[Case] = []
    for family in families:
        min_induction = 3 if family is FamilyId.SYLVESTER_D else 2
        for dim in range(lo, hi + 1):
            for seed, params in _param_sets(family, dim, opts):
                cases.append(_verify_one(family, dim, params, seed, opts.paper_literal))
                if family in REDUCIBLE_FAMILIES and dim >= min_induction:
                    cases.append(
                        _induction_one(family, dim, params, seed, opts.paper_literal)
                    )
        if family is FamilyId.SYLVESTER_B:
            rng = _mixed_rng("b-leading", opts.seed)
            for dim in range(lo, hi + 1):
                x0 = Fraction(rng.randint(-12, 12), rng.randint(1, 12))
                holds = determinant.b_leading_coefficient_check(dim, x0)
                cases.append(
                    BLeadingCase(dim=dim, x0=format_rational(x0), holds=holds, passed=holds)
                )
        if family is FamilyId.SYLVESTER_A:
            for dim in range(lo, hi + 1):
                holds = determinant.a_family_check(dim)
                cases.append(AFamilyCase(dim=dim, holds=holds, passed=holds))
    return _report(config, cases)


def run_reduce(opts: RunOptions) -> Report:
    if opts.family == "all":
        raise UsageError("reduce needs a single family")
    family = _family(opts.family)
    if family not in REDUCIBLE_FAMILIES:
        raise UsageError(
            f"{family.value} has no block-triangularization reduction"
        )
    if opts.dim is None and opts.dims is None and opts.max_dim is None:
        raise UsageError("reduce needs --dim (or --dims / --max-dim)")
    lo, hi = _resolve_dims(opts, (1, 1))
    config = _config("reduce", opts, lo, hi)
    cases: list[Case] = []
    for dim in range(lo, hi + 1):
        for seed, params in _param_sets(family, dim, opts):
            try:
                rep = reduction.reduce_step(
                    family, dim, params,
                    keep_trace=opts.trace,
                    paper_literal=opts.paper_literal,
                )
            except (DegenerateParams, BadDimension, Unsupported) as exc:
                raise UsageError(str(exc)) from None
            witness = None
            if rep.witness is not None:
                witness = WitnessModel(
                    stage=rep.witness.stage,
                    row=rep.witness.row,
                    col=rep.witness.col,
                    expected=format_rational(rep.witness.expected),
                    actual=format_rational(rep.witness.actual),
                )
            trace = None
            if rep.trace is not None:
                trace = [
                    TraceMatrix(
                        name=name,
                        rows=[[format_rational(x) for x in row] for row in m.rows],
                    )
                    for name, m in rep.trace
                ]
            cases.append(
                ReduceCase(
                    family=family.value,
                    dim=dim,
                    params=params_to_strings(params),
                    seed=seed,
                    zero_block_ok=rep.zero_block_ok,
                    leading_eigs=[format_rational(e) for e in rep.leading_eigs],
                    leading_eigs_ok=rep.leading_eigs_ok,
                    trailing_tridiagonal_ok=rep.trailing_tridiagonal_ok,
                    trailing_match_ok=rep.trailing_match_ok,
                    pulled_roots=[format_rational(r) for r in rep.shift.pulled_roots],
                    scale=format_rational(rep.shift.scale),
                    offset=format_rational(rep.shift.offset),
                    child_dim=rep.shift.child_dim,
                    witness=witness,
                    trace=trace,
                    passed=rep.passed,
                )
            )
    return _report(config, cases)


def run_identity(opts: RunOptions) -> Report:
    if opts.max_n < 1:
        raise UsageError("max-n must be >= 1")
    if opts.trials < 0:
        raise UsageError("trials must be >= 0")
    variant = opts.variant or "cn1"
    if variant not in ("cn1", "cN1"):
        raise UsageError(f"unknown identity variant: {variant!r}")
    dim = opts.max_n + 1
    config = _config("identity", opts, dim, dim)
    cases: list[Case] = []
    for n in range(opts.max_n):
        holds = reduction.qracah_scalar_identity(n, dim, opts.trials, opts.seed, variant)
        cases.append(
            IdentityCase(
                n=n,
                dim=dim,
                trials=opts.trials,
                variant=variant,
                vacuous=opts.trials == 0,
                holds=holds,
                passed=holds,
            )
        )
    return _report(config, cases)


def run_table(opts: RunOptions) -> Report:
    if opts.family == "all":
        raise UsageError("table needs a single family")
    family = _family(opts.family)
    if opts.dims is None and opts.max_dim is None and opts.dim is None:
        raise UsageError("table needs --dims (or --dim / --max-dim)")
    lo, hi = _resolve_dims(opts, (1, 6))
    config = _config("table", opts, lo, hi)
    cases: list[Case] = []
    for dim in range(lo, hi + 1):
        seed, params = _param_sets(family, dim, opts)[0]
        try:
            spectrum = predicted_spectrum(family, dim, params)
        except (DegenerateParams, BadDimension) as exc:
            raise UsageError(str(exc)) from None
        closed = poly_from_roots(spectrum)
        cases.append(
            TableRowCase(
                family=family.value,
                dim=dim,
                factored=factored_form(spectrum),
                coeffs=closed.to_strings(),
                passed=True,
            )
        )
    return _report(config, cases)


HANDLERS = {
    "eval": run_eval,
    "verify": run_verify,
    "reduce": run_reduce,
    "identity": run_identity,
    "table": run_table,
}


def run(command: str, opts: RunOptions) -> Report:
    try:
        handler = HANDLERS[command]
    except KeyError:
        raise UsageError(f"unknown command: {command!r}") from None
    return handler(opts)


# ---------------------------------------------------------------------------
# rendering

def render_json(report: Report) -> str:
    payload = report.model_dump(mode="json")
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_table_text(report: Report) -> str:
    lines = [
        f"{c.family}\t{c.dim}\t{c.factored}\t{' '.join(c.coeffs)}"
        for c in report.cases
    ]
    return "\n".join(lines) + "\n"


def _case_line(case) -> str:
    mark = "PASS" if case.passed else "FAIL"
    if case.kind == "verify":
        label = f"verify {case.family} dim {case.dim}"
        extra = "" if case.witness is None else f"  [{case.witness}]"
    elif case.kind == "induction":
        label = (
            f"induction {case.family} dim {case.dim} -> {case.child_dim} "
            f"(scale {case.scale}, offset {case.offset})"
        )
        extra = ""
    elif case.kind == "b-leading":
        label = f"b-leading-coefficient dim {case.dim} at x0 = {case.x0}"
        extra = ""
    elif case.kind == "a-family":
        label = f"a-family dim {case.dim}"
        extra = ""
    elif case.kind == "reduce":
        label = (
            f"reduce {case.family} dim {case.dim}: zero-block {case.zero_block_ok}, "
            f"leading eigs [{', '.join(case.leading_eigs)}] {case.leading_eigs_ok}, "
            f"tridiagonal {case.trailing_tridiagonal_ok}, trailing {case.trailing_match_ok}, "
            f"scale {case.scale}, offset {case.offset}"
        )
        extra = "" if case.witness is None else f"  [{case.witness.stage}: ({case.witness.row},{case.witness.col}) expected {case.witness.expected}, got {case.witness.actual}]"
    elif case.kind == "identity":
        vac = " (vacuous: 0 trials)" if case.vacuous else ""
        label = f"identity n = {case.n}, N = {case.dim - 1}, trials {case.trials}, variant {case.variant}{vac}"
        extra = ""
    elif case.kind == "eval":
        label = f"eval {case.family} dim {case.dim}"
        extra = ""
    else:
        label = f"{case.kind} {getattr(case, 'family', '')} dim {case.dim}"
        extra = ""
    if getattr(case, "seed", None) is not None:
        label += f" (seed {case.seed})"
    return f"{mark}  {label}{extra}"


def render_text(report: Report) -> str:
    if report.command == "table":
        return render_table_text(report)
    lines = []
    for case in report.cases:
        if case.kind == "eval":
            lines.append(_case_line(case))
            lines.append(f"  P(t) = {case.pretty}   [{case.variable}]")
            lines.append(f"  coefficients: [{', '.join(case.charpoly)}]")
            lines.append(f"  closed form:  {case.factored}")
            lines.append(f"  match: {str(case.match).lower()}")
        else:
            lines.append(_case_line(case))
            if case.kind == "reduce" and case.trace:
                for m in case.trace:
                    lines.append(f"  -- {m.name} --")
                    for row in m.rows:
                        lines.append("    [" + ", ".join(row) + "]")
    s = report.summary
    lines.append(f"summary: {s.passed}/{s.total} passed, {s.failed} failed")
    return "\n".join(lines) + "\n"
