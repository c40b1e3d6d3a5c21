"""Monomial ideals given by exponent vectors, with exact rational helpers.

Exponent vectors are plain tuples of non-negative ints.  Rationals are
:class:`fractions.Fraction` throughout; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rat = Fraction
ExpVec = tuple[int, ...]

FORMAT_TAG = "lct-kit/1"


class IdealError(ValueError):
    """Malformed or unsuitable monomial ideal input."""


class InfiniteColengthError(IdealError):
    pass


def parse_rat(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"refusing inexact rational {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rat(q: Fraction | int) -> str:
    return str(Fraction(q))


def _check_vec(v: Sequence[int], n: int) -> ExpVec:
    if len(v) != n:
        raise IdealError(f"exponent vector {tuple(v)} has length {len(v)}, expected {n}")
    out = []
    for x in v:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise IdealError(f"exponent {x!r} is not an integer")
        if x < 0:
            raise IdealError(f"negative exponent in {tuple(v)}")
        out.append(int(x))
    return tuple(out)


def _leq(a: ExpVec, b: ExpVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal_elements(vectors: Iterable[ExpVec], n: int, chunk: int = 256) -> list[ExpVec]:
    arr = np.unique(np.asarray(list(vectors), dtype=np.int64).reshape(-1, n), axis=0)
    deg = arr.sum(axis=1)
    order = np.argsort(deg, kind="stable")
    arr, deg = arr[order], deg[order]
    keep = np.ones(len(arr), dtype=bool)
    for start in range(0, len(arr), chunk):
        block = arr[start:start + chunk]
        # distinct vectors can only be dominated from strictly lower degree
        stop = np.searchsorted(deg, deg[start + len(block) - 1], side="left")
        if stop:
            lower = arr[:stop]
            dominated = np.all(lower[None, :, :] <= block[:, None, :], axis=2)
            dominated &= deg[:stop][None, :] < deg[start:start + chunk][:, None]
            keep[start:start + chunk] = ~dominated.any(axis=1)
    return sorted((tuple(int(x) for x in v) for v in arr[keep]), reverse=True)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in ``n`` variables, stored by its minimal generators.

    Build instances with :func:`minimalize` (or :meth:`from_generators`);
    the constructor trusts its input.  Generators are kept in descending
    lexicographic order so that equal ideals compare and hash equal.
    """

    n: int
    generators: tuple[ExpVec, ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], n: int | None = None) -> "MonomialIdeal":
        return minimalize(gens, n)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.n,)

    def pure_power_exponents(self) -> list[int | None]:
        """Exponent ``A_i`` of the generator ``x_i^A_i``, or None if absent."""
        out: list[int | None] = [None] * self.n
        for g in self.generators:
            support = [i for i, e in enumerate(g) if e]
            if len(support) == 1:
                out[support[0]] = g[support[0]]
        return out

    @property
    def is_zero_dimensional(self) -> bool:
        return self.is_unit or all(a is not None for a in self.pure_power_exponents())

    def degrees(self) -> set[int]:
        return {sum(g) for g in self.generators}

    def as_array(self) -> np.ndarray:
        return np.asarray(self.generators, dtype=np.int64).reshape(len(self.generators), self.n)

    def to_json(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "n": self.n,
            "generators": [list(g) for g in self.generators],
        }

    def __str__(self) -> str:
        names = _var_names(self.n)
        terms = []
        for g in self.generators:
            factors = []
            for name, e in zip(names, g):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            terms.append("*".join(factors) or "1")
        return "(" + ", ".join(terms) + ")"


def _var_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def minimalize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    """Return the ideal generated by ``gens``, reduced to its minimal generators."""
    gens = list(gens)
    if not gens:
        raise IdealError("empty generator set")
    if n is None:
        n = len(gens[0])
    if n < 1:
        raise IdealError("need at least one variable")
    vecs = [_check_vec(g, n) for g in gens]
    return MonomialIdeal(n, tuple(_minimal_elements(vecs, n)))


def is_minimal(gens: Iterable[Sequence[int]]) -> bool:
    gens = [tuple(g) for g in gens]
    if len(set(gens)) != len(gens):
        return False
    return not any(a != b and _leq(a, b) for a in gens for b in gens)


def contains_monomial(ideal: MonomialIdeal, v: Sequence[int]) -> bool:
    v = _check_vec(v, ideal.n)
    return any(_leq(g, v) for g in ideal.generators)


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.n != b.n:
        raise IdealError("ideals live in different rings")
    sums = {tuple(x + y for x, y in zip(g, h)) for g in a.generators for h in b.generators}
    return MonomialIdeal(a.n, tuple(_minimal_elements(sums, a.n)))


def power(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    if t < 1:
        raise IdealError(f"power exponent must be positive, got {t}")
    result = ideal
    for _ in range(t - 1):
        result = product(result, ideal)
    return result


def maximal_ideal(n: int) -> MonomialIdeal:
    return minimalize([tuple(int(i == j) for j in range(n)) for i in range(n)], n)


def pure_power_ideal(exponents: Sequence[int]) -> MonomialIdeal:
    n = len(exponents)
    return minimalize([tuple(a if i == j else 0 for j in range(n)) for i, a in enumerate(exponents)], n)


def colength(ideal: MonomialIdeal) -> int:
    """Number of monomials outside ``ideal`` (the length of R/I).

    Over each prefix ``p = (v_1..v_{n-1})`` the standard monomials form an
    interval ``0 <= v_n < m(p)``, where ``m(p)`` is the least last exponent
    among generators whose prefix divides ``p``.  ``m`` is a running minimum
    along every prefix axis.
    """
    if not ideal.is_zero_dimensional:
        raise InfiniteColengthError(f"{ideal} is not zero-dimensional: infinite colength")
    if ideal.is_unit:
        return 0
    n = ideal.n
    A = ideal.pure_power_exponents()
    if n == 1:
        return A[0]
    shape = tuple(A[: n - 1])
    m = np.full(shape, A[n - 1], dtype=np.int64)
    for g in ideal.generators:
        head = g[: n - 1]
        if all(h < a for h, a in zip(head, shape)):
            m[head] = min(m[head], g[n - 1])
    for axis in range(n - 1):
        np.minimum.accumulate(m, axis=axis, out=m)
    return int(m.sum())


def standard_monomials(ideal: MonomialIdeal) -> list[ExpVec]:
    """Brute-force list of monomials outside a zero-dimensional ideal."""
    if not ideal.is_zero_dimensional:
        raise InfiniteColengthError(f"{ideal} is not zero-dimensional: infinite colength")
    import itertools

    if ideal.is_unit:
        return []
    box = [range(a) for a in ideal.pure_power_exponents()]
    return [v for v in itertools.product(*box) if not contains_monomial(ideal, v)]


def ideal_from_json(data: dict, strict: bool = False) -> tuple[MonomialIdeal, bool]:
    """Parse the ideal JSON format.

    Returns the ideal and whether the input generators were already minimal.
    With ``strict`` a non-minimal generating set raises instead.
    """
    if not isinstance(data, dict):
        raise IdealError("ideal JSON must be an object")
    tag = data.get("format", FORMAT_TAG)
    if tag != FORMAT_TAG:
        raise IdealError(f"unsupported format tag {tag!r}")
    try:
        n = data["n"]
        gens = data["generators"]
    except KeyError as exc:
        raise IdealError(f"missing key {exc.args[0]!r}") from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise IdealError(f"bad variable count {n!r}")
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise IdealError("generators must be a list of integer lists")
    ideal = minimalize(gens, n)
    was_minimal = is_minimal(gens)
    if strict and not was_minimal:
        raise IdealError("generators are not a minimal antichain (--strict)")
    return ideal, was_minimal
