"""Exact algebra substrate: sparse polynomials, univariate
interpolation, rational matrix rank, and Smith normal form.

Everything here is exact; there is no floating point anywhere.
Polynomial coefficients are arbitrary precision integers or exact
rationals (``fractions.Fraction``), with integral rationals normalised
to plain ints.  Every counting polynomial of a whole graph has integer
coefficients; rationals appear only in single-orientation window
polynomials (lattice point counts of one rational polytope), whose
orientation sums are integral again.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

# Canonical variable order.  Variables outside this list sort after it,
# alphabetically.  Printing and JSON serialisation follow this order.
VARIABLE_ORDER = ("x", "y", "z", "w", "u", "v", "t")


class InterpolationError(ValueError):
    """Interpolation input was malformed or the fit failed verification."""


Coeff = Union[int, "Fraction"]


def _norm_coeff(value) -> Coeff:
    """Exact coefficient: int, or Fraction when not integral."""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, int):
        return int(value)
    raise TypeError(f"coefficient must be exact (int or Fraction), got {type(value).__name__}")


def _var_key(name: str) -> tuple[int, str]:
    try:
        return (VARIABLE_ORDER.index(name), name)
    except ValueError:
        return (len(VARIABLE_ORDER), name)


def _term_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # graded-lex, descending: higher total degree first, then lex on the
    # exponent vector (x^1 before y^1 under the canonical order)
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Sparse multivariate polynomial with exact coefficients.

    ``variables`` is an ordered tuple of names; ``terms`` maps exponent
    tuples (one entry per variable) to non-zero coefficients (ints, or
    Fractions for the rational window polynomials).  Equality is
    semantic: variables that occur in no term are ignored, so x + 1
    over (x, y) equals x + 1 over (x,).
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Coeff] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable in {variables!r}")
        clean: dict[tuple[int, ...], Coeff] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent vector {exps} does not match variables {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = _norm_coeff(coeff)
            if coeff != 0:
                merged = _norm_coeff(clean.get(exps, 0) + coeff)
                if merged == 0:
                    clean.pop(exps, None)
                else:
                    clean[exps] = merged
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # immutable after __init__
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, value: Coeff) -> "MultiPoly":
        return cls((), {(): _norm_coeff(value)} if value else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coeff: int = 1) -> "MultiPoly":
        return cls(variables, {tuple(exps): coeff})

    # -- canonical form ----------------------------------------------

    def pruned(self) -> "MultiPoly":
        """Drop variables that occur in no term."""
        if not self.terms:
            return MultiPoly((), {})
        used = [i for i in range(len(self.variables)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.variables):
            return self
        variables = tuple(self.variables[i] for i in used)
        terms = {tuple(e[i] for i in used): c for e, c in self.terms.items()}
        return MultiPoly(variables, terms)

    def canonical(self) -> tuple:
        p = self.pruned()
        order = sorted(range(len(p.variables)), key=lambda i: _var_key(p.variables[i]))
        variables = tuple(p.variables[i] for i in order)
        terms = {tuple(e[i] for i in order): c for e, c in p.terms.items()}
        return (variables, tuple(sorted(terms.items())))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(value: Union["MultiPoly", Coeff]) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.const(value)
        raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")

    def _aligned(self, other: "MultiPoly") -> tuple[tuple[str, ...], dict, dict]:
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        merged = tuple(sorted(set(self.variables) | set(other.variables), key=_var_key))
        return merged, _remap(self, merged), _remap(other, merged)

    def __add__(self, other):
        other = self._coerce(other)
        variables, a, b = self._aligned(other)
        terms = dict(a)
        for exps, coeff in b.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return MultiPoly(variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        variables, a, b = self._aligned(other)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # -- substitution and evaluation ----------------------------------

    def substitute(self, mapping: Mapping[str, Union["MultiPoly", int]]) -> "MultiPoly":
        """Replace each named variable by a polynomial or integer.

        Names that are not variables of this polynomial are ignored, so
        a family member that degenerated to fewer variables can still be
        fed the family-wide substitution.
        """
        factors: list[MultiPoly] = []
        for name in self.variables:
            if name in mapping:
                factors.append(self._coerce(mapping[name]))
            else:
                factors.append(MultiPoly.var(name))
        total = MultiPoly.zero()
        for exps, coeff in sorted(self.terms.items()):
            term = MultiPoly.const(coeff)
            for base, e in zip(factors, exps):
                if e:
                    term = term * base**e
            total = total + term
        return total

    def negate_vars(self, names: Iterable[str]) -> "MultiPoly":
        """Substitute v -> -v for each named variable."""
        return self.substitute({n: -MultiPoly.var(n) for n in names})

    def evaluate(self, **values: int) -> Coeff:
        """Evaluate at integer arguments; extra names are ignored, but a
        value is required for every variable that actually occurs.  The
        result is an int whenever the value is integral."""
        missing = [
            v
            for i, v in enumerate(self.variables)
            if v not in values and any(e[i] for e in self.terms)
        ]
        if missing:
            raise KeyError(f"missing value(s) for: {missing}")
        total = 0
        for exps, coeff in self.terms.items():
            prod = coeff
            for name, e in zip(self.variables, exps):
                if e:
                    prod *= int(values[name]) ** e
            total += prod
        return _norm_coeff(total)

    # -- inspection ----------------------------------------------------

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, **exps: int) -> int:
        """Coefficient of the monomial with the given exponents (others 0)."""
        key = tuple(exps.get(v, 0) for v in self.variables)
        extra = set(exps) - set(self.variables)
        if extra:
            raise KeyError(f"unknown variable(s): {sorted(extra)}")
        return self.terms.get(key, 0)

    # -- formatting ----------------------------------------------------

    def _display(self) -> tuple[tuple[str, ...], list[tuple[tuple[int, ...], int]]]:
        p = self.pruned()
        order = sorted(range(len(p.variables)), key=lambda i: _var_key(p.variables[i]))
        variables = tuple(p.variables[i] for i in order)
        terms = [(tuple(e[i] for i in order), c) for e, c in p.terms.items()]
        terms.sort(key=lambda item: _term_key(item[0]))
        return variables, terms

    def __str__(self) -> str:
        variables, terms = self._display()
        if not terms:
            return "0"
        chunks: list[str] = []
        for pos, (exps, coeff) in enumerate(terms):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(variables, exps) if e
            )
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if pos == 0:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    # -- JSON form -----------------------------------------------------

    def to_json(self) -> list[dict]:
        """Term list with coefficients as decimal strings (exact bigints)."""
        variables, terms = self._display()
        return [{"exps": list(e), "coeff": str(c)} for e, c in terms]

    def json_variables(self) -> list[str]:
        return list(self._display()[0])

    @classmethod
    def from_json(cls, variables: Sequence[str], items: Iterable[Mapping]) -> "MultiPoly":
        terms = {tuple(item["exps"]): Fraction(item["coeff"]) for item in items}
        return cls(tuple(variables), terms)


def _remap(poly: MultiPoly, variables: tuple[str, ...]) -> dict[tuple[int, ...], int]:
    index = {v: i for i, v in enumerate(variables)}
    out: dict[tuple[int, ...], int] = {}
    for exps, coeff in poly.terms.items():
        e = [0] * len(variables)
        for name, power in zip(poly.variables, exps):
            e[index[name]] = power
        out[tuple(e)] = coeff
    return out


# -- univariate interpolation -----------------------------------------


def interpolate_univariate(
    samples: Sequence[tuple[int, int]],
    degree_bound: int,
    var: str = "t",
    integral: bool = True,
) -> MultiPoly:
    """Fit the unique polynomial of degree <= degree_bound through the
    first degree_bound+1 samples and verify it on the rest.

    Samples beyond the fit window act as verification points; a non-zero
    residual there or a duplicated abscissa raises InterpolationError.
    With integral=True (the default) a non-integer coefficient is also an
    error; counting polynomials for a single orientation are the one place
    rational coefficients are legitimate, and they pass integral=False.
    """
    if degree_bound < 0:
        raise InterpolationError("degree bound must be non-negative")
    pts = [(int(a), int(b)) for a, b in samples]
    seen = set()
    for a, _ in pts:
        if a in seen:
            raise InterpolationError(f"duplicate sample point t={a}")
        seen.add(a)
    need = degree_bound + 1
    if len(pts) < need:
        raise InterpolationError(f"need {need} samples for degree {degree_bound}, got {len(pts)}")

    fit, check = pts[:need], pts[need:]
    # Newton's divided differences, exact rationals
    xs = [Fraction(a) for a, _ in fit]
    coeffs = [Fraction(b) for _, b in fit]
    for level in range(1, need):
        for i in range(need - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form to monomial coefficients
    mono = [Fraction(0)] * need
    acc = [Fraction(1)]  # product (t - x_0)...(t - x_{k-1})
    for k in range(need):
        for i, c in enumerate(acc):
            mono[i] += coeffs[k] * c
        nxt = [Fraction(0)] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i] -= c * xs[k]
            nxt[i + 1] += c
        acc = nxt

    def value_at(t: int) -> Fraction:
        total = Fraction(0)
        power = Fraction(1)
        for c in mono:
            total += c * power
            power *= t
        return total

    for a, b in check:
        got = value_at(a)
        if got != b:
            raise InterpolationError(
                f"verification failed at t={a}: fit gives {got}, sample says {b}"
            )
    out: dict[tuple[int, ...], Coeff] = {}
    for i, c in enumerate(mono):
        if integral and c.denominator != 1:
            raise InterpolationError(f"non-integer coefficient {c} of {var}^{i}")
        if c:
            out[(i,)] = _norm_coeff(c)
    return MultiPoly((var,), out)


# -- exact matrices ----------------------------------------------------

Entry = Union[int, Fraction]


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix over the rationals (entries int or Fraction)."""

    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> "RationalMatrix":
        rows = [tuple(Fraction(x) for x in row) for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return cls(tuple(rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix over the integers."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [tuple(int(x) for x in row) for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return cls(tuple(rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)


def _rows_of(matrix) -> list[list]:
    if isinstance(matrix, (RationalMatrix, IntMatrix)):
        return [list(r) for r in matrix.entries]
    return [list(r) for r in matrix]


def rational_rank(matrix) -> int:
    """Exact rank over Q by fraction-free integer elimination.

    Accepts a RationalMatrix, IntMatrix, or a plain sequence of rows.
    Rows are scaled to integers first (rank-preserving), then eliminated
    by cross-multiplication which stays in Z throughout.
    """
    rows = _rows_of(matrix)
    if not rows or not rows[0]:
        return 0
    work: list[list[int]] = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = 1
        for f in fracs:
            scale = scale * f.denominator // _gcd(scale, f.denominator)
        work.append([int(f * scale) for f in fracs])
    m, n = len(work), len(work[0])
    rank = 0
    col = 0
    while rank < m and col < n:
        pivot = next((i for i in range(rank, m) if work[i][col]), None)
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        a = work[rank][col]
        for i in range(rank + 1, m):
            b = work[i][col]
            if b:
                work[i] = [a * x - b * y for x, y in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def smith_normal_form(matrix) -> tuple[int, ...]:
    """Diagonal of the Smith normal form: non-negative d_1 | d_2 | ...

    Returns min(rows, cols) entries, trailing zeros for rank deficiency.
    For a square non-singular matrix the product of the entries is the
    index of the column lattice in Z^n (= |det|).
    """
    A = [[int(x) for x in row] for row in _rows_of(matrix)]
    m = len(A)
    n = len(A[0]) if A else 0
    size = min(m, n)
    diag: list[int] = []
    t = 0
    while t < size:
        # locate a pivot of least absolute value in the working block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t by row operations
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            if dirty:
                continue
            # clear row t by column operations
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # enforce divisibility: fold any non-multiple into the corner
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[offender])]
        diag.append(abs(A[t][t]))
        t += 1
    diag.extend([0] * (size - len(diag)))
    return tuple(diag)
