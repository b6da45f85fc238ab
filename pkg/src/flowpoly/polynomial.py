"""Exact univariate polynomials (integer or rational coefficients)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _normalize(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Polynomial:
    """Coefficients lowest degree first; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Number, ...] = tuple(cs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _normalize(acc)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self), len(other))
        return Polynomial(self[k] + other[k] for k in range(n))

    def __sub__(self, other: Polynomial) -> Polynomial:
        n = max(len(self), len(other))
        return Polynomial(self[k] - other[k] for k in range(n))

    def __mul__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        out = [0] * max(len(self) + len(other) - 1, 0)
        for p, a in enumerate(self.coeffs):
            for q, b in enumerate(other.coeffs):
                out[p + q] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> Polynomial:
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        quot = [Fraction(0)] * max(len(rem) - len(other) + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            for p, c in enumerate(other.coeffs):
                rem[k + p] -= q * c
        return Polynomial(quot), Polynomial(rem[: max(other.degree, 0)])

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [c if isinstance(c, int) else str(c) for c in self.coeffs]}

    def render(self, var: str = "z") -> str:
        """Human form such as ``1 + 13z + 50z^2``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k) else str(mag)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(("-" if c < 0 else "+", f"{coef}{mono}"))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def __str__(self) -> str:
        return self.render()


def is_log_concave(coeffs: Sequence[Number]) -> bool:
    return all(coeffs[k] ** 2 >= coeffs[k - 1] * coeffs[k + 1] for k in range(1, len(coeffs) - 1))


def is_unimodal(coeffs: Sequence[Number]) -> bool:
    k = 0
    while k + 1 < len(coeffs) and coeffs[k] <= coeffs[k + 1]:
        k += 1
    while k + 1 < len(coeffs) and coeffs[k] >= coeffs[k + 1]:
        k += 1
    return k == len(coeffs) - 1


def _sign_changes(values: Iterable[Number]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def distinct_real_roots(p: Polynomial) -> int:
    """Number of distinct real roots, by a Sturm sequence."""
    if p.degree < 1:
        return 0
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if not r.coeffs:
            break
        seq.append(r * -1)
    # signs at -inf and +inf come from leading terms
    at_pos = [q.coeffs[-1] for q in seq]
    at_neg = [q.coeffs[-1] * (-1) ** q.degree for q in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def _gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    while q.coeffs:
        p, q = q, p.divmod(q)[1]
    return p


def is_real_rooted(p: Polynomial) -> bool:
    """All complex roots real (counted with multiplicity)."""
    if p.degree < 1:
        return True
    g = _gcd(p, p.derivative())
    squarefree_degree = p.degree - g.degree
    return distinct_real_roots(p) == squarefree_degree


def interpolate(points: Sequence[tuple[Number, Number]]) -> Polynomial:
    """Lagrange interpolation through ``points`` in exact arithmetic."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = Polynomial()
    for k, (xk, (_, yk)) in enumerate(zip(xs, points)):
        basis = Polynomial([1])
        denom = Fraction(1)
        for p, xp in enumerate(xs):
            if p != k:
                basis = basis * Polynomial([-xp, 1])
                denom *= xk - xp
        total = total + basis * (Fraction(yk) / denom)
    return total
