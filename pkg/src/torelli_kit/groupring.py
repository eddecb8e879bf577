"""Integral group rings of free abelian groups (multivariate Laurent polynomials).

Seiberg-Witten invariants of the knot-surgered manifolds live here as
elements of ``Z[H^2]`` written in a fixed list of named generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import GeneratorMismatch, SchemaError, UnknownGenerator
from .presentation import SCHEMA

Exponent = tuple[int, ...]


class GroupRingElement:
    """Finitely supported map from exponent vectors to nonzero integers."""

    __slots__ = ("_gens", "_terms")

    def __init__(self, generators: Sequence[str], terms: Mapping[Sequence[int], int] | None = None):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise GeneratorMismatch(f"repeated generator names in {gens}")
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(gens):
                raise GeneratorMismatch(f"exponent {exp} has wrong length for generators {gens}")
            c = clean.get(exp, 0) + int(c)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._gens = gens
        self._terms = clean

    @classmethod
    def one(cls, generators: Sequence[str]) -> GroupRingElement:
        return cls(generators, {(0,) * len(generators): 1})

    @classmethod
    def zero(cls, generators: Sequence[str]) -> GroupRingElement:
        return cls(generators)

    @classmethod
    def monomial(cls, generators: Sequence[str], exp: Sequence[int], coeff: int = 1) -> GroupRingElement:
        return cls(generators, {tuple(exp): coeff})

    @classmethod
    def gen(cls, generators: Sequence[str], name: str, power: int = 1) -> GroupRingElement:
        i = _index(generators, name)
        exp = [0] * len(generators)
        exp[i] = power
        return cls(generators, {tuple(exp): 1})

    @property
    def generators(self) -> tuple[str, ...]:
        return self._gens

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def support(self) -> frozenset[Exponent]:
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: GroupRingElement) -> None:
        if self._gens != other._gens:
            raise GeneratorMismatch(f"{self._gens} vs {other._gens}")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return GroupRingElement(self._gens, out)

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement(self._gens, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self._gens, {e: other * c for e, c in self._terms.items()})
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return GroupRingElement(self._gens, out)

    def __rmul__(self, k: int) -> GroupRingElement:
        return self * k

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._gens == other._gens and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._gens, frozenset(self._terms.items())))

    def inverted(self) -> GroupRingElement:
        """Image under ``g -> g^-1``."""
        return GroupRingElement(self._gens, {tuple(-x for x in e): c for e, c in self._terms.items()})

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def __repr__(self) -> str:
        return f"GroupRingElement({self._gens!r}, {dict(self.sorted_terms())!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(self._gens, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "generators": list(self._gens),
            "terms": [{"exp": list(e), "coeff": c} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> GroupRingElement:
        try:
            gens = data["generators"]
            terms = data["terms"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"group ring element is missing {exc}") from None
        if data.get("schema", SCHEMA) != SCHEMA:
            raise SchemaError(f"unsupported schema {data.get('schema')!r}")
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise SchemaError("'generators' must be a list of names")
        out: dict[Exponent, int] = {}
        for t in terms if isinstance(terms, list) else [None]:
            if (not isinstance(t, dict) or not isinstance(t.get("exp"), list)
                    or not all(isinstance(x, int) for x in t["exp"])
                    or not isinstance(t.get("coeff"), int) or len(t["exp"]) != len(gens)):
                raise SchemaError(f"malformed term {t!r}")
            e = tuple(t["exp"])
            out[e] = out.get(e, 0) + t["coeff"]
        try:
            return cls(gens, out)
        except GeneratorMismatch as exc:
            raise SchemaError(str(exc)) from None


def _index(generators: Sequence[str], name: str) -> int:
    try:
        return list(generators).index(name)
    except ValueError:
        raise UnknownGenerator(name) from None


def multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


@dataclass(frozen=True)
class AlexanderPolynomial:
    """Symmetrised Alexander polynomial, stored as ``{power of t: coefficient}``."""

    coefficients: tuple[tuple[int, int], ...]

    def __init__(self, coefficients: Mapping[int, int]):
        clean = tuple(sorted((k, c) for k, c in coefficients.items() if c))
        object.__setattr__(self, "coefficients", clean)
        d = dict(clean)
        if any(d.get(-k, 0) != c for k, c in d.items()):
            raise ValueError(f"Alexander polynomial must be symmetric, got {d}")
        if abs(sum(d.values())) != 1:
            raise ValueError(f"Alexander polynomial must evaluate to +-1 at t = 1, got {sum(d.values())}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        return sum((c * t ** k for k, c in self.coefficients), Fraction(0))

    def __str__(self) -> str:
        return " + ".join(f"{c}*t^{k}" if k else str(c) for k, c in self.coefficients).replace("+ -", "- ")


UNKNOT = AlexanderPolynomial({0: 1})


def alexander_twist(n: int) -> AlexanderPolynomial:
    """``-(2n - 1) + n (t + t^-1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return AlexanderPolynomial({-1: n, 0: -(2 * n - 1), 1: n})


def knot_surgery(sw: GroupRingElement, delta: AlexanderPolynomial, torus_class: str) -> GroupRingElement:
    """Multiply by the Alexander polynomial evaluated at ``t = F^2``."""
    i = _index(sw.generators, torus_class)
    factor = {}
    for k, c in delta.coefficients:
        exp = [0] * len(sw.generators)
        exp[i] = 2 * k
        factor[tuple(exp)] = c
    return sw * GroupRingElement(sw.generators, factor)


def blowup(sw: GroupRingElement, e_class: str) -> GroupRingElement:
    """Multiply by ``E + E^-1`` for the exceptional class ``E``."""
    gens = sw.generators
    return sw * (GroupRingElement.gen(gens, e_class) + GroupRingElement.gen(gens, e_class, -1))


def basic_classes(sw: GroupRingElement) -> frozenset[Exponent]:
    return sw.support()


SW_GENERATORS = ("E1", "E2", "F")


def sw_knot_surgery_family(n: int) -> GroupRingElement:
    """SW of the twice blown-up K3 after knot surgery with the n-th twist knot."""
    base = GroupRingElement.one(SW_GENERATORS)
    return knot_surgery(blowup(blowup(base, "E1"), "E2"), alexander_twist(n), "F")


@dataclass(frozen=True)
class DistinctnessReport:
    size: int
    equal_pairs: tuple[tuple[int, int], ...]

    @property
    def all_distinct(self) -> bool:
        return not self.equal_pairs


def pairwise_distinct(family: Iterable[GroupRingElement]) -> DistinctnessReport:
    family = list(family)
    for a in family[1:]:
        family[0]._check(a)
    equal = tuple((i, j) for i, j in combinations(range(len(family)), 2) if family[i] == family[j])
    return DistinctnessReport(size=len(family), equal_pairs=equal)
