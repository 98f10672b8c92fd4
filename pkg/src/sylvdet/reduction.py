"""Block-triangularization replay: transforms, exact conjugation, zero-block
and similarity assertions, and the q-racah scalar identity.

Conventions, fixed once here:

* sylvester-d and sylvester-b use row-eigenvector transforms T and the
  conjugation T G T^{-1}, producing a block LOWER triangular result whose
  top-right block must vanish;
* krawtchouk, dual-hahn and q-racah use the alternating-first-column
  transform and the conjugation T^{-1} G T, producing a block UPPER
  triangular result whose first column must vanish.

Transform inverses are always computed, never hardcoded. A TridiagonalSpec
stores the diagonal of G itself (the constant added to t in tI + G), so
:func:`to_dense` is a plain copy; that sign bookkeeping lives only here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Rational, RationalLike, format_rational
from .errors import BadDimension, DegenerateParams, SamplingExhausted, Singular, Unsupported
from .families import (
    FamilyId,
    FamilyParams,
    QRacahParams,
    ShiftSpec,
    TridiagonalSpec,
    ansatz_coefficients,
    build_matrix,
    shifted_family,
    _mixed_rng,
)


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable dense square matrix of exact rationals."""

    rows: tuple[tuple[Rational, ...], ...]

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        n = len(rows)
        frozen = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if any(len(row) != n for row in frozen):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", frozen)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        i, j = key
        return self.rows[i][j]

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        n = self.dim
        return DenseMatrix(
            [
                [sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)
            ]
        )

    def block(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> DenseMatrix:
        return DenseMatrix([row[col_lo:col_hi] for row in self.rows[row_lo:row_hi]])

    def add_scalar_diag(self, s: RationalLike) -> DenseMatrix:
        return DenseMatrix(
            [
                [x + (s if i == j else 0) for j, x in enumerate(row)]
                for i, row in enumerate(self.rows)
            ]
        )

    def scaled(self, s: RationalLike) -> DenseMatrix:
        return DenseMatrix([[x * s for x in row] for row in self.rows])


def identity_matrix(dim: int) -> DenseMatrix:
    return DenseMatrix([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])


def to_dense(spec: TridiagonalSpec) -> DenseMatrix:
    """Dense form of G (diagonal = spec.diag, offdiagonals = sup/sub)."""
    n = spec.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = spec.diag[i]
        if i + 1 < n:
            rows[i][i + 1] = spec.sup[i]
            rows[i + 1][i] = spec.sub[i]
    return DenseMatrix(rows)


def invert(m: DenseMatrix) -> DenseMatrix:
    """Exact inverse by rational Gauss-Jordan elimination."""
    n = m.dim
    work = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(m.rows)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            raise Singular(col)
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return DenseMatrix([row[n:] for row in work])


class TransformKind(Enum):
    """The transforms used by the reductions, as displayed in the source
    derivation (OnesRow is the B-family row transform)."""

    SYLVESTER_ROWS = "sylvester-rows"          # rows: all-ones, alternating, then identity
    ONES_ROW = "ones-row"                      # first row all-ones, identity below
    ALTERNATING_COLUMN = "alternating-column"  # first column (1,-1,1,...), identity elsewhere
    BIDIAG_SKIP_ONE = "bidiag-skip-one"        # identity with -1 on the second superdiagonal
    BIDIAG_ADJACENT_MINUS = "bidiag-adjacent-minus"  # identity with -1 on the first superdiagonal
    BIDIAG_ADJACENT_PLUS = "bidiag-adjacent-plus"    # identity with +1 on the first subdiagonal
    LAMBDA_DIAG = "lambda-diag"                # diag(q^{-k} (1 - a b q^{2k+2}))


def build_transform(
    kind: TransformKind, dim: int, params: FamilyParams = None
) -> DenseMatrix:
    """The exact transform matrix; params are needed only for LAMBDA_DIAG."""
    if dim < 1:
        raise BadDimension(f"transform dim must be >= 1, got {dim}")
    rows = [[Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
    if kind is TransformKind.SYLVESTER_ROWS:
        if dim < 2:
            raise BadDimension("sylvester row transform needs dim >= 2")
        rows[0] = [Fraction(1)] * dim
        rows[1] = [Fraction(-1) ** j for j in range(dim)]
    elif kind is TransformKind.ONES_ROW:
        rows[0] = [Fraction(1)] * dim
    elif kind is TransformKind.ALTERNATING_COLUMN:
        for i in range(dim):
            rows[i][0] = Fraction(-1) ** i
    elif kind is TransformKind.BIDIAG_SKIP_ONE:
        for i in range(dim - 2):
            rows[i][i + 2] = Fraction(-1)
    elif kind is TransformKind.BIDIAG_ADJACENT_MINUS:
        for i in range(dim - 1):
            rows[i][i + 1] = Fraction(-1)
    elif kind is TransformKind.BIDIAG_ADJACENT_PLUS:
        for i in range(dim - 1):
            rows[i + 1][i] = Fraction(1)
    elif kind is TransformKind.LAMBDA_DIAG:
        if not isinstance(params, QRacahParams):
            raise ValueError("lambda-diag transform requires q-racah parameters")
        q, ab = params.q, params.a * params.b
        for k in range(dim):
            entry = q ** (-k) * (1 - ab * q ** (2 * k + 2))
            if entry == 0:
                raise DegenerateParams([f"a*b*q^{2 * k + 2} = 1 makes the diagonal transform singular"])
            rows[k][k] = entry
    else:  # pragma: no cover - exhaustive
        raise ValueError(kind)
    return DenseMatrix(rows)


def ansatz_kernel_check(spec: TridiagonalSpec) -> bool:
    """True iff G v = 0 for the alternating vector v = (1, -1, 1, ...)."""
    g = to_dense(spec)
    v = [Fraction(-1) ** k for k in range(spec.dim)]
    return all(
        sum(g.rows[i][j] * v[j] for j in range(spec.dim)) == 0 for i in range(spec.dim)
    )


# ---------------------------------------------------------------------------
# the reduction pipeline

@dataclass(frozen=True)
class Witness:
    """First offending entry of a failed exact comparison."""

    stage: str
    row: int
    col: int
    expected: Rational
    actual: Rational

    def describe(self) -> str:
        return (
            f"{self.stage}: entry ({self.row}, {self.col}) expected "
            f"{format_rational(self.expected)}, got {format_rational(self.actual)}"
        )


@dataclass(frozen=True)
class ReductionReport:
    family: FamilyId
    dim: int
    params: FamilyParams
    zero_block_ok: bool
    leading_eigs: tuple[Rational, ...]
    leading_eigs_ok: bool
    trailing_tridiagonal_ok: bool
    trailing_match_ok: bool
    shift: ShiftSpec
    witness: Optional[Witness] = None
    trace: Optional[tuple[tuple[str, DenseMatrix], ...]] = None

    @property
    def passed(self) -> bool:
        return (
            self.zero_block_ok
            and self.leading_eigs_ok
            and self.trailing_tridiagonal_ok
            and self.trailing_match_ok
        )


def _first_mismatch(stage: str, expected: DenseMatrix, actual: DenseMatrix) -> Optional[Witness]:
    for i in range(expected.dim):
        for j in range(expected.dim):
            if expected.rows[i][j] != actual.rows[i][j]:
                return Witness(stage, i, j, expected.rows[i][j], actual.rows[i][j])
    return None


def reduce_step(
    family: FamilyId,
    dim: int,
    params: FamilyParams = None,
    keep_trace: bool = False,
    paper_literal: bool = False,
) -> ReductionReport:
    """Replay the family's block-triangularization exactly.

    Conjugates G by the family's row/column transform, asserts the zero
    block and the leading eigenvalues, extracts the trailing block, applies
    the family's bidiagonal (and, for q-racah, diagonal) similarity, and
    compares the result entrywise with (1/scale) * G_child + offset * I.

    paper_literal replays the printed (pre-correction) variants: the
    krawtchouk shift without its offset and the q-racah matrices with the
    misprinted coefficient factor; both fail with an entry witness.
    """
    if family not in (
        FamilyId.SYLVESTER_D,
        FamilyId.SYLVESTER_B,
        FamilyId.KRAWTCHOUK,
        FamilyId.DUAL_HAHN,
        FamilyId.Q_RACAH,
    ):
        raise Unsupported(f"no reduction is stated for {family.value}")
    shift = shifted_family(family, dim, params, paper_literal=paper_literal)
    g = to_dense(build_matrix(family, dim, params, paper_literal=paper_literal))
    lead = len(shift.pulled_roots)
    trace: list[tuple[str, DenseMatrix]] = [("G", g)]

    if family in (FamilyId.SYLVESTER_D, FamilyId.SYLVESTER_B):
        t_kind = (
            TransformKind.SYLVESTER_ROWS
            if family is FamilyId.SYLVESTER_D
            else TransformKind.ONES_ROW
        )
        t = build_transform(t_kind, dim)
        conjugated = t @ g @ invert(t)
        # block lower triangular: rows of the leading block vanish off-block
        zero_ok = all(
            conjugated.rows[i][j] == 0
            for i in range(lead)
            for j in range(dim)
            if i != j
        )
        # eigenvalues of G in transform-row order: the all-ones row carries
        # N (resp. Na - N), the alternating row carries -N. These are the
        # negated pulled roots of P(t).
        n_top = dim - 1
        if family is FamilyId.SYLVESTER_D:
            expected_eigs = (Fraction(n_top), Fraction(-n_top))
        else:
            expected_eigs = (params.a * n_top - n_top,)
    else:
        t = build_transform(TransformKind.ALTERNATING_COLUMN, dim)
        conjugated = invert(t) @ g @ t
        # block upper triangular: the first column vanishes entirely
        zero_ok = all(conjugated.rows[i][0] == 0 for i in range(1, dim))
        expected_eigs = (Fraction(0),)
    trace.append(("T-conjugated", conjugated))

    leading_eigs = tuple(conjugated.rows[k][k] for k in range(lead))
    eigs_ok = leading_eigs == expected_eigs
    witness: Optional[Witness] = None
    if not zero_ok or not eigs_ok:
        if family in (FamilyId.SYLVESTER_D, FamilyId.SYLVESTER_B):
            # leading rows must be exactly (eig_i e_i); the rest is free
            constrained = [
                ((i, j), expected_eigs[i] if i == j else Fraction(0))
                for i in range(lead)
                for j in range(dim)
            ]
        else:
            # the whole first column must vanish, eigenvalue 0 included
            constrained = [((i, 0), Fraction(0)) for i in range(dim)]
        for (i, j), want in constrained:
            if conjugated.rows[i][j] != want:
                witness = Witness("leading block", i, j, want, conjugated.rows[i][j])
                break

    trailing = conjugated.block(lead, dim, lead, dim)
    trace.append(("trailing", trailing))
    child_dim = shift.child_dim

    tridiagonal_ok = True
    if family is FamilyId.SYLVESTER_D:
        s = build_transform(TransformKind.BIDIAG_SKIP_ONE, child_dim)
        final = invert(s) @ trailing @ s
    elif family is FamilyId.SYLVESTER_B:
        s = build_transform(TransformKind.BIDIAG_ADJACENT_MINUS, child_dim)
        final = invert(s) @ trailing @ s
    else:
        s = build_transform(TransformKind.BIDIAG_ADJACENT_PLUS, child_dim)
        final = s @ trailing @ invert(s)
        if family is FamilyId.Q_RACAH:
            trace.append(("S-conjugated", final))
            a_n, c_n = ansatz_coefficients(family, dim, params, paper_literal)
            expected_tri = DenseMatrix(
                [
                    [
                        a_n(i) + c_n(i + 1)
                        if i == j
                        else a_n(j)
                        if j == i + 1
                        else c_n(i)
                        if j == i - 1
                        else Fraction(0)
                        for j in range(child_dim)
                    ]
                    for i in range(child_dim)
                ]
            )
            tri_witness = _first_mismatch("tridiagonal form", expected_tri, final)
            tridiagonal_ok = tri_witness is None
            if witness is None:
                witness = tri_witness
            lam = build_transform(TransformKind.LAMBDA_DIAG, child_dim, params)
            final = invert(lam) @ final @ lam
    trace.append(("final", final))

    g_child = to_dense(
        build_matrix(family, child_dim, shift.child_params, paper_literal=paper_literal)
    )
    expected_final = g_child.scaled(Fraction(1) / shift.scale).add_scalar_diag(shift.offset)
    match_witness = _first_mismatch("trailing similarity", expected_final, final)
    if witness is None:
        witness = match_witness

    return ReductionReport(
        family=family,
        dim=dim,
        params=params,
        zero_block_ok=zero_ok,
        leading_eigs=leading_eigs,
        leading_eigs_ok=eigs_ok,
        trailing_tridiagonal_ok=tridiagonal_ok,
        trailing_match_ok=match_witness is None,
        shift=shift,
        witness=witness,
        trace=tuple(trace) if keep_trace else None,
    )


# ---------------------------------------------------------------------------
# the q-racah scalar identity (randomized exact identity testing)

# Magnitude bound for identity sample points: the per-variable pool of
# distinct rationals then exceeds 10^6, so twenty exact-agreement trials
# leave a false pass probability far below any practical concern.
PIT_BOUND = 1000
_PIT_RETRY = 1000


def _identity_point(rng, n_top: int) -> QRacahParams:
    for _ in range(_PIT_RETRY):
        q = Fraction(rng.randint(-PIT_BOUND, PIT_BOUND), rng.randint(1, PIT_BOUND))
        a = Fraction(rng.randint(-PIT_BOUND, PIT_BOUND), rng.randint(1, PIT_BOUND))
        b = Fraction(rng.randint(-PIT_BOUND, PIT_BOUND), rng.randint(1, PIT_BOUND))
        c = Fraction(rng.randint(-PIT_BOUND, PIT_BOUND), rng.randint(1, PIT_BOUND))
        if q in (0, 1, -1) or b == 0 or c == 0:
            continue
        # cover every denominator either side of the identity can touch,
        # including the out-of-range c index of the printed variant
        if any(a * b * q**k == 1 for k in range(0, 2 * n_top + 6)):
            continue
        return QRacahParams(q, a, b, c)
    raise SamplingExhausted("no nondegenerate identity sample point found")


def _qracah_c_raw(params: QRacahParams, n_top: int, n: int) -> Rational:
    """The printed c_n formula without the n = 0 short circuit; needed to
    evaluate the out-of-range index used by the printed-variant left side."""
    q, a, b, c = params.q, params.a, params.b, params.c
    return (
        (c * q ** (-n_top) / b)
        * (1 - q**n)
        * (1 - b * q**n)
        * (1 - a * b / c * q**n)
        * (1 - a * b * q ** (n + n_top + 1))
    ) / ((1 - a * b * q ** (2 * n)) * (1 - a * b * q ** (2 * n + 1)))


def qracah_identity_holds_at(
    n: int, dim: int, point: QRacahParams, variant: str = "cn1"
) -> bool:
    """Evaluate both sides of the diagonal-entry identity at one exact point.

    variant "cn1" is the adopted reading (left side uses c_{n+1});
    variant "cN1" uses the printed out-of-range index c_{N+1}.
    """
    n_top = dim - 1
    if not 0 <= n <= n_top - 1:
        raise ValueError(f"need 0 <= n <= {n_top - 1}, got {n}")
    q, b, c = point.q, point.b, point.c
    ab = point.a * b
    a_fn, c_fn = ansatz_coefficients(FamilyId.Q_RACAH, dim, point)
    c_left = (
        _qracah_c_raw(point, n_top, n_top + 1) if variant == "cN1" else c_fn(n + 1)
    )
    kappa = 1 + c / (b * q**n_top) - 1 / q - c * q / (b * q**n_top)
    lhs = (a_fn(n) + c_left - kappa) * q
    rhs = a_fn(n + 1) * (1 - ab * q ** (2 * n + 4)) / (1 - ab * q ** (2 * n + 2)) + (
        q**2 * c_fn(n) * (1 - ab * q ** (2 * n)) / (1 - ab * q ** (2 * n + 2))
    )
    return lhs == rhs


def qracah_scalar_identity(
    n: int, dim: int, trials: int, seed: int, variant: str = "cn1"
) -> bool:
    """Randomized exact check of the identity at `trials` sampled points.

    trials = 0 is vacuously true (the caller is expected to flag it).
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    rng = _mixed_rng("identity", n, dim, seed, variant)
    return all(
        qracah_identity_holds_at(n, dim, _identity_point(rng, dim - 1), variant)
        for _ in range(trials)
    )
