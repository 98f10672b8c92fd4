"""The eight tridiagonal matrix families and their predicted spectra.

Each family is built as a :class:`TridiagonalSpec` describing the matrix G
whose characteristic object is P(t) = det(tI + G); the ``diag`` field holds
the constants added to t on the diagonal (i.e. the diagonal of G itself).
The dimension convention is dim = N + 1 throughout; N is always dim - 1.

Five families (krawtchouk, dual-hahn, hahn, racah, q-racah) share the
three-term "ansatz" shape: given coefficient sequences a_n and c_n with
a_N = c_0 = 0, the matrix has superdiagonal a_n, subdiagonal c_{n+1} and
diagonal a_n + c_n, which forces the alternating vector into the kernel
of G and hence a root t = 0 of P.

Typo policy: where the published coefficient or shift data is internally
inconsistent, the oracle-backed corrected reading is the default and the
printed one is available via ``paper_literal=True`` (it demonstrably fails;
see docs/CORRECTIONS.md for the counterexamples).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .algebra import Rational, format_rational, parse_rational
from .errors import BadDimension, DegenerateParams, SamplingExhausted, Unsupported

# Magnitude bound for sampled parameter numerators/denominators, and the
# rejection-sampling retry bound. Small components keep exact q-power
# arithmetic fast at the sweep dimensions used here.
PARAM_BOUND = 12
RETRY_BOUND = 1000


class FamilyId(str, Enum):
    """Closed enumeration of the matrix families; values are the CLI names."""

    SYLVESTER_D = "sylvester-d"
    SYLVESTER_B = "sylvester-b"
    SYLVESTER_A = "sylvester-a"
    KRAWTCHOUK = "krawtchouk"
    DUAL_HAHN = "dual-hahn"
    HAHN = "hahn"
    RACAH = "racah"
    Q_RACAH = "q-racah"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class SylvesterBParams:
    a: Rational


@dataclass(frozen=True)
class KrawtchoukParams:
    p: Rational


@dataclass(frozen=True)
class DualHahnParams:
    gamma: Rational
    delta: Rational


@dataclass(frozen=True)
class HahnParams:
    alpha: Rational
    beta: Rational


@dataclass(frozen=True)
class RacahParams:
    """Racah parameters; delta is derived, never stored."""

    alpha: Rational
    beta: Rational
    gamma: Rational

    def derived_delta(self, n_top: int) -> Rational:
        """delta from beta + delta + 1 = -N (the adopted resolution)."""
        return Fraction(-n_top - 1) - self.beta


@dataclass(frozen=True)
class QRacahParams:
    """q-Racah parameters; d is derived from b*d*q = q^{-N}, never stored."""

    q: Rational
    a: Rational
    b: Rational
    c: Rational

    def derived_d(self, n_top: int) -> Rational:
        return self.q ** (-n_top - 1) / self.b


FamilyParams = Optional[
    Union[
        SylvesterBParams,
        KrawtchoukParams,
        DualHahnParams,
        HahnParams,
        RacahParams,
        QRacahParams,
    ]
]

_PARAM_TYPES: dict[FamilyId, type | None] = {
    FamilyId.SYLVESTER_D: None,
    FamilyId.SYLVESTER_B: SylvesterBParams,
    FamilyId.SYLVESTER_A: None,
    FamilyId.KRAWTCHOUK: KrawtchoukParams,
    FamilyId.DUAL_HAHN: DualHahnParams,
    FamilyId.HAHN: HahnParams,
    FamilyId.RACAH: RacahParams,
    FamilyId.Q_RACAH: QRacahParams,
}

# Families following the ansatz shape (diagonal a_n + c_n, kernel vector
# (1,-1,1,...)); their predicted spectrum is anchored at 0.
ANSATZ_FAMILIES = frozenset(
    {FamilyId.KRAWTCHOUK, FamilyId.DUAL_HAHN, FamilyId.HAHN, FamilyId.RACAH, FamilyId.Q_RACAH}
)

# Families with a published induction step / block-triangularization.
REDUCIBLE_FAMILIES = frozenset(
    {
        FamilyId.SYLVESTER_D,
        FamilyId.SYLVESTER_B,
        FamilyId.KRAWTCHOUK,
        FamilyId.DUAL_HAHN,
        FamilyId.Q_RACAH,
    }
)


@dataclass(frozen=True)
class TridiagonalSpec:
    """Tridiagonal matrix G given by its dimension and entry lists.

    ``diag[k]`` is the constant added to t on the diagonal of tI + G,
    ``sup[k]`` the entry (k, k+1) of G, ``sub[k]`` the entry (k+1, k).
    """

    dim: int
    diag: tuple[Rational, ...]
    sup: tuple[Rational, ...]
    sub: tuple[Rational, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise BadDimension(f"dim must be >= 1, got {self.dim}")
        if len(self.diag) != self.dim or len(self.sup) != self.dim - 1 or len(self.sub) != self.dim - 1:
            raise ValueError("entry list lengths inconsistent with dim")


@dataclass(frozen=True)
class ShiftSpec:
    """One induction step: P_dim(t) = prod_{r in pulled}(t - r)
    * scale^{-child_dim} * P_child(scale * (t + offset))."""

    pulled_roots: tuple[Rational, ...]
    scale: Rational
    offset: Rational
    child_params: FamilyParams
    child_dim: int

    def __post_init__(self):
        if self.scale == 0:
            raise ValueError("shift scale must be nonzero")


def _expect_params(family: FamilyId, params: FamilyParams):
    want = _PARAM_TYPES[family]
    if want is None:
        if params is not None:
            raise ValueError(f"family {family.value} takes no parameters")
        return None
    if not isinstance(params, want):
        raise ValueError(f"family {family.value} requires {want.__name__}")
    return params


def params_from_strings(family: FamilyId, values: dict[str, str]) -> FamilyParams:
    """Build the family's parameter record from name=rational strings."""
    want = _PARAM_TYPES[family]
    if want is None:
        if values:
            raise ValueError(f"family {family.value} takes no parameters")
        return None
    names = [f.name for f in fields(want)]
    unknown = sorted(set(values) - set(names))
    if unknown:
        raise ValueError(f"unknown parameter(s) for {family.value}: {', '.join(unknown)}")
    missing = sorted(set(names) - set(values))
    if missing:
        raise ValueError(f"missing parameter(s) for {family.value}: {', '.join(missing)}")
    return want(**{n: parse_rational(values[n]) for n in names})


def params_to_strings(params: FamilyParams) -> dict[str, str]:
    if params is None:
        return {}
    return {f.name: format_rational(getattr(params, f.name)) for f in fields(params)}


# ---------------------------------------------------------------------------
# validation

def validate_params(family: FamilyId, dim: int, params: FamilyParams) -> list[str]:
    """Scan every coefficient-formula denominator for 0 <= n <= N plus the
    family-specific exclusions. Violations are returned as data, not raised.
    """
    params = _expect_params(family, params)
    if dim < 1:
        return [f"dim must be >= 1, got {dim}"]
    n_top = dim - 1
    out: list[str] = []
    if isinstance(params, (HahnParams, RacahParams)):
        s = params.alpha + params.beta
        for n in range(dim):
            for k in (0, 1, 2):
                if 2 * n + s + k == 0:
                    out.append(f"2n+alpha+beta+{k} = 0 at n = {n}")
    elif isinstance(params, QRacahParams):
        q, a, b, c = params.q, params.a, params.b, params.c
        if q in (0, 1, -1):
            out.append(f"q must avoid {{0, 1, -1}}, got {format_rational(q)}")
        if b == 0:
            out.append("b must be nonzero")
        if c == 0:
            out.append("c must be nonzero (the c_n formula divides by c)")
        power = q
        for k in range(1, 2 * n_top + 3):
            if a * b * power == 1:
                out.append(f"a*b*q^{k} = 1 (coefficient denominator vanishes)")
            power *= q
    return out


def _require_valid(family: FamilyId, dim: int, params: FamilyParams) -> FamilyParams:
    if dim < 1:
        raise BadDimension(f"dim must be >= 1, got {dim}")
    violations = validate_params(family, dim, params)
    if violations:
        raise DegenerateParams(violations)
    return _expect_params(family, params)


# ---------------------------------------------------------------------------
# coefficient sequences for the ansatz families

def ansatz_coefficients(
    family: FamilyId,
    dim: int,
    params: FamilyParams,
    paper_literal: bool = False,
) -> tuple[Callable[[int], Rational], Callable[[int], Rational]]:
    """Return the (a_n, c_n) coefficient functions, defined for 0 <= n <= N.

    a_N and c_0 vanish by construction for every family here; for q-racah
    they are short-circuited to 0 so their printed formulas' k=0 denominator
    factor (1 - ab) is never evaluated (it is deliberately unvalidated).
    """
    n_top = dim - 1
    if family is FamilyId.KRAWTCHOUK:
        p = params.p
        return (lambda n: p * (n_top - n), lambda n: n * (1 - p))
    if family is FamilyId.DUAL_HAHN:
        g, d = params.gamma, params.delta
        return (
            lambda n: (n_top - n) * (n + g + 1),
            lambda n: n * (n_top + d - n + 1),
        )
    if family is FamilyId.HAHN:
        al, be = params.alpha, params.beta

        def a_n(n: int) -> Rational:
            return Fraction((n + al + be + 1) * (n + al + 1) * (n_top - n)) / (
                (2 * n + al + be + 1) * (2 * n + al + be + 2)
            )

        def c_n(n: int) -> Rational:
            return Fraction(n * (n + al + be + n_top + 1) * (n + be)) / (
                (2 * n + al + be) * (2 * n + al + be + 1)
            )

        return a_n, c_n
    if family is FamilyId.RACAH:
        al, be, ga = params.alpha, params.beta, params.gamma

        def a_n(n: int) -> Rational:
            return Fraction((n + al + 1) * (n + al + be + 1) * (n + ga + 1) * (n_top - n)) / (
                (2 * n + al + be + 1) * (2 * n + al + be + 2)
            )

        def c_n(n: int) -> Rational:
            return Fraction(-n * (n + al + be + n_top + 1) * (n + al + be - ga) * (n + be)) / (
                (2 * n + al + be) * (2 * n + al + be + 1)
            )

        return a_n, c_n
    if family is FamilyId.Q_RACAH:
        q, a, b, c = params.q, params.a, params.b, params.c

        def a_n(n: int) -> Rational:
            if n == n_top:
                return Fraction(0)
            # Corrected second factor (1 - a q^{n+1}); the printed form has
            # (1 - q^{n+1}), which fails the determinant claims (see
            # docs/CORRECTIONS.md).
            second = (1 - q ** (n + 1)) if paper_literal else (1 - a * q ** (n + 1))
            return (
                (1 - a * b * q ** (n + 1))
                * second
                * (1 - q ** (n - n_top))
                * (1 - c * q ** (n + 1))
            ) / ((1 - a * b * q ** (2 * n + 1)) * (1 - a * b * q ** (2 * n + 2)))

        def c_n(n: int) -> Rational:
            if n == 0:
                return Fraction(0)
            return (
                (c * q ** (-n_top) / b)
                * (1 - q**n)
                * (1 - b * q**n)
                * (1 - a * b / c * q**n)
                * (1 - a * b * q ** (n + n_top + 1))
            ) / ((1 - a * b * q ** (2 * n)) * (1 - a * b * q ** (2 * n + 1)))

        return a_n, c_n
    raise Unsupported(f"{family.value} is not an ansatz family")


# ---------------------------------------------------------------------------
# construction

def build_matrix(
    family: FamilyId,
    dim: int,
    params: FamilyParams = None,
    paper_literal: bool = False,
) -> TridiagonalSpec:
    """Construct the family's matrix G as a TridiagonalSpec.

    For the ansatz families the diagonal entry is a_n + c_n, so P(t) has the
    guaranteed root t = 0.
    """
    params = _require_valid(family, dim, params)
    n_top = dim - 1
    if family is FamilyId.SYLVESTER_D:
        return TridiagonalSpec(
            dim,
            tuple(Fraction(0) for _ in range(dim)),
            tuple(Fraction(k + 1) for k in range(n_top)),
            tuple(Fraction(n_top - k) for k in range(n_top)),
        )
    if family is FamilyId.SYLVESTER_B:
        a = params.a
        return TridiagonalSpec(
            dim,
            tuple(Fraction(-k) for k in range(dim)),
            tuple((k + 1) * a for k in range(n_top)),
            tuple((n_top - k) * (a - 1) for k in range(n_top)),
        )
    if family is FamilyId.SYLVESTER_A:
        return TridiagonalSpec(
            dim,
            tuple(Fraction(-2 * k) for k in range(dim)),
            tuple(Fraction(k + 1) for k in range(n_top)),
            tuple(Fraction(-(n_top - k)) for k in range(n_top)),
        )
    a_n, c_n = ansatz_coefficients(family, dim, params, paper_literal)
    return TridiagonalSpec(
        dim,
        tuple(a_n(k) + c_n(k) for k in range(dim)),
        tuple(a_n(k) for k in range(n_top)),
        tuple(c_n(k + 1) for k in range(n_top)),
    )


def spectral_value(family: FamilyId, dim: int, params: FamilyParams, n: int,
                   paper_literal: bool = False) -> Rational:
    """lambda(n): the predicted root of P(t) carried by index n."""
    n_top = dim - 1
    if family is FamilyId.SYLVESTER_D:
        return Fraction(2 * n - n_top)
    if family is FamilyId.SYLVESTER_B:
        return (2 * n - n_top) * params.a + n_top - n
    if family is FamilyId.SYLVESTER_A:
        return Fraction(n_top)
    if family in (FamilyId.KRAWTCHOUK, FamilyId.HAHN):
        return Fraction(-n)
    if family is FamilyId.DUAL_HAHN:
        return -n * (n + params.gamma + params.delta + 1)
    if family is FamilyId.RACAH:
        delta = params.derived_delta(n_top)
        shift = 0 if paper_literal else 1
        return -n * (n + params.gamma + delta + shift)
    if family is FamilyId.Q_RACAH:
        q = params.q
        cd = params.c * params.derived_d(n_top)
        return -(1 - q ** (-n)) * (1 - cd * q ** (n + 1))
    raise Unsupported(family.value)


def predicted_spectrum(
    family: FamilyId,
    dim: int,
    params: FamilyParams = None,
    paper_literal: bool = False,
) -> tuple[Rational, ...]:
    """The dim predicted roots mu_0..mu_N with P(t) = prod (t - mu_n)."""
    params = _require_valid(family, dim, params)
    return tuple(spectral_value(family, dim, params, n, paper_literal) for n in range(dim))


def shifted_family(
    family: FamilyId,
    dim: int,
    params: FamilyParams = None,
    paper_literal: bool = False,
) -> ShiftSpec:
    """The family's induction step as a ShiftSpec.

    paper_literal only changes krawtchouk, whose printed scalar relation
    lacks the argument shift (offset 0 instead of 1); it demonstrably fails.
    """
    if family in (FamilyId.SYLVESTER_A, FamilyId.HAHN, FamilyId.RACAH):
        raise Unsupported(f"no induction step is stated for {family.value}")
    min_dim = 3 if family is FamilyId.SYLVESTER_D else 2
    if dim < min_dim:
        raise BadDimension(f"{family.value} induction needs dim >= {min_dim}, got {dim}")
    params = _require_valid(family, dim, params)
    n_top = dim - 1
    one = Fraction(1)
    if family is FamilyId.SYLVESTER_D:
        return ShiftSpec(
            (Fraction(n_top), Fraction(-n_top)), one, Fraction(0), None, dim - 2
        )
    if family is FamilyId.SYLVESTER_B:
        a = params.a
        return ShiftSpec((n_top - n_top * a,), one, -a, params, dim - 1)
    if family is FamilyId.KRAWTCHOUK:
        offset = Fraction(0) if paper_literal else Fraction(1)
        return ShiftSpec((Fraction(0),), one, offset, params, dim - 1)
    if family is FamilyId.DUAL_HAHN:
        child = DualHahnParams(params.gamma + 1, params.delta + 1)
        return ShiftSpec(
            (Fraction(0),), one, params.gamma + params.delta + 2, child, dim - 1
        )
    # q-racah: P_{N+1}(t) = t * q^{-N} * P_N(q (t + kappa)) with child
    # parameters (q, aq, b, cq).
    q, a, b, c = params.q, params.a, params.b, params.c
    kappa = 1 + c / (b * q**n_top) - 1 / q - c * q / (b * q**n_top)
    child = QRacahParams(q, a * q, b, c * q)
    return ShiftSpec((Fraction(0),), q, kappa, child, dim - 1)


# ---------------------------------------------------------------------------
# sampling

def _mixed_rng(*parts) -> random.Random:
    """Deterministic RNG independent of Python's salted hash()."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _draw(rng: random.Random, nonzero: bool = False, bound: int = PARAM_BOUND) -> Rational:
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if not nonzero or value != 0:
            return value


def sample_params(family: FamilyId, dim: int, seed: int) -> FamilyParams:
    """Deterministic valid parameter draw for (family, dim, seed).

    Components are rationals with numerator/denominator magnitude at most
    PARAM_BOUND; draws violating validate_params are rejected, up to
    RETRY_BOUND attempts.
    """
    kind = _PARAM_TYPES[family]
    if kind is None:
        return None
    rng = _mixed_rng("params", family.value, dim, seed)
    for _ in range(RETRY_BOUND):
        if kind is SylvesterBParams:
            candidate = SylvesterBParams(_draw(rng))
        elif kind is KrawtchoukParams:
            candidate = KrawtchoukParams(_draw(rng))
        elif kind is DualHahnParams:
            candidate = DualHahnParams(_draw(rng), _draw(rng))
        elif kind is HahnParams:
            candidate = HahnParams(_draw(rng), _draw(rng))
        elif kind is RacahParams:
            candidate = RacahParams(_draw(rng), _draw(rng), _draw(rng))
        else:
            candidate = QRacahParams(
                _draw(rng, nonzero=True),
                _draw(rng),
                _draw(rng, nonzero=True),
                _draw(rng, nonzero=True),
            )
        if not validate_params(family, dim, candidate):
            return candidate
    raise SamplingExhausted(
        f"no valid {family.value} parameters after {RETRY_BOUND} draws (dim {dim}, seed {seed})"
    )


# ---------------------------------------------------------------------------
# presentation

def variable_note(family: FamilyId, dim: int, params: FamilyParams) -> str:
    """How the formal variable t relates to x for this family."""
    if family in (FamilyId.SYLVESTER_D, FamilyId.SYLVESTER_B, FamilyId.SYLVESTER_A):
        return "t = x"
    if family in (FamilyId.KRAWTCHOUK, FamilyId.HAHN):
        return "t = -x"
    if family in (FamilyId.DUAL_HAHN, FamilyId.RACAH):
        if family is FamilyId.DUAL_HAHN:
            s = params.gamma + params.delta + 1
        else:
            s = params.gamma + params.derived_delta(dim - 1) + 1
        sign = "-" if s < 0 else "+"
        return f"t = -x*(x {sign} {format_rational(abs(s))})"
    cd = params.c * params.derived_d(dim - 1)
    return (
        f"t = -(1 - q^-x)*(1 - c*d*q^(x+1)) with q = {format_rational(params.q)}, "
        f"c*d = {format_rational(cd)}"
    )
