"""Bivariate Laurent polynomials in q, t with integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class BiLaurent:
    coefficients: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.coefficients.items():
            if c:
                clean[(int(a), int(b))] = c
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def monomial(cls, q_exp: int = 0, t_exp: int = 0, c: int = 1) -> BiLaurent:
        return cls({(q_exp, t_exp): c})

    @classmethod
    def constant(cls, c: int) -> BiLaurent:
        return cls({(0, 0): c})

    @classmethod
    def zero(cls) -> BiLaurent:
        return cls({})

    def __getitem__(self, exps: tuple[int, int]) -> int:
        return self.coefficients.get(exps, 0)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients.items()))

    def __add__(self, other) -> BiLaurent:
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = out.get(k, 0) + c
        return BiLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> BiLaurent:
        return BiLaurent({k: -c for k, c in self.coefficients.items()})

    def __sub__(self, other) -> BiLaurent:
        return self + (-other)

    def __rsub__(self, other) -> BiLaurent:
        return (-self) + other

    def __mul__(self, other) -> BiLaurent:
        if isinstance(other, int):
            return BiLaurent({k: c * other for k, c in self.coefficients.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.coefficients.items():
            for (a2, b2), c2 in other.coefficients.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiLaurent:
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result, base = BiLaurent.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, n: int) -> BiLaurent:
        """Divide every coefficient by ``n``; raises if any remainder is nonzero."""
        out = {}
        for k, c in self.coefficients.items():
            quo, rem = divmod(c, n)
            if rem:
                raise ArithmeticError(f"coefficient {c} of q^{k[0]} t^{k[1]} is not divisible by {n}")
            out[k] = quo
        return BiLaurent(out)

    def shift(self, q_exp: int, t_exp: int) -> BiLaurent:
        """Multiply by the monomial q^q_exp t^t_exp (exponents may be negative)."""
        return BiLaurent({(a + q_exp, b + t_exp): c for (a, b), c in self.coefficients.items()})

    def substitute(self, q_image: tuple[int, int], t_image: tuple[int, int]) -> BiLaurent:
        """Monomial substitution q -> q^a1 t^b1, t -> q^a2 t^b2."""
        (a1, b1), (a2, b2) = q_image, t_image
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.coefficients.items():
            k = (a * a1 + b * a2, a * b1 + b * b2)
            out[k] = out.get(k, 0) + c
        return BiLaurent(out)

    def evaluate(self, q, t):
        total = 0
        for (a, b), c in self.coefficients.items():
            total += c * Fraction(q) ** a * Fraction(t) ** b
        return total

    def terms(self) -> list[tuple[int, int, int]]:
        """(q exponent, t exponent, coefficient), sorted by t then q exponent."""
        return [(a, b, c) for (a, b), c in sorted(self.coefficients.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def to_json(self) -> list[dict]:
        return [{"q": a, "t": b, "c": c} for a, b, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> BiLaurent:
        return cls({(d["q"], d["t"]): d["c"] for d in data})

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for a, b, c in self.terms():
            mono = "".join(
                s for s in (_power("q", a), _power("t", b)) if s
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}{mono}" if mono else f"{mag}")
            pieces.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"BiLaurent({self})"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}" if e > 0 else f"{var}^({e})"
