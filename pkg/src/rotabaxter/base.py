"""Base algebras B: the multiplication of letters.

Three kinds are supported: the zero product, the free (nonunitary) monoid
algebra on the generators (tensor algebra T(V) with basis M(Omega)), and a
finite multiplication table with exact rational structure constants.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .words import Letter

ZERO = "zero"
FREE_MONOID = "free_monoid"
TABLE = "table"

# a BaseElement: tuple of (coefficient, Letter) pairs, no zero coefficients
BaseElement = tuple[tuple[Fraction, Letter], ...]


class BaseAlgebraError(ValueError):
    pass


class AssociativityError(BaseAlgebraError):
    def __init__(self, triple, left, right):
        self.triple = triple
        self.left = left
        self.right = right
        a, b, c = (str(t) for t in triple)
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


@dataclass(frozen=True)
class BaseAlgebra:
    kind: str
    table: Mapping[tuple[str, str], tuple[tuple[Fraction, str], ...]] = field(default_factory=dict)
    generators: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in (ZERO, FREE_MONOID, TABLE):
            raise BaseAlgebraError(f"unknown base kind {self.kind!r}")
        if self.kind == TABLE:
            gens = self.generators
            if gens is None:
                seen: list[str] = []
                for (a, b), terms in self.table.items():
                    for g in (a, b, *(z for _, z in terms)):
                        if g not in seen:
                            seen.append(g)
                gens = tuple(seen)
                object.__setattr__(self, "generators", gens)
            for (a, b), terms in self.table.items():
                for g in (a, b, *(z for _, z in terms)):
                    if g not in gens:
                        raise BaseAlgebraError(f"table references undeclared generator {g!r}")

    @property
    def tag(self) -> str:
        return {ZERO: "zero", FREE_MONOID: "tensor", TABLE: "table"}[self.kind]

    def check_letter(self, a: Letter) -> None:
        if self.kind != FREE_MONOID and len(a.parts) != 1:
            raise BaseAlgebraError(f"letter {a} has {len(a.parts)} parts; only the free-monoid base allows tensor letters")
        if self.kind == TABLE and a.parts[0] not in self.generators:
            raise BaseAlgebraError(f"unknown generator {a.parts[0]!r}")

    def mult_letters(self, a: Letter, b: Letter) -> BaseElement:
        self.check_letter(a)
        self.check_letter(b)
        if self.kind == ZERO:
            return ()
        if self.kind == FREE_MONOID:
            return ((Fraction(1), Letter(a.parts + b.parts)),)
        terms = self.table.get((a.parts[0], b.parts[0]), ())
        return tuple((Fraction(c), Letter((z,))) for c, z in terms if c != 0)

    def mult(self, a: BaseElement, b: BaseElement) -> BaseElement:
        """Bilinear extension of :meth:`mult_letters`."""
        acc: dict[Letter, Fraction] = {}
        for ca, la in a:
            for cb, lb in b:
                for c, z in self.mult_letters(la, lb):
                    acc[z] = acc.get(z, 0) + ca * cb * c
        return normalize(acc)


def normalize(acc: Mapping[Letter, Fraction]) -> BaseElement:
    return tuple(sorted(((Fraction(c), z) for z, c in acc.items() if c != 0), key=lambda t: (len(t[1].parts), str(t[1]))))


def zero_product() -> BaseAlgebra:
    return BaseAlgebra(ZERO)


def free_monoid() -> BaseAlgebra:
    return BaseAlgebra(FREE_MONOID)


def finite_table(table: Mapping[tuple[str, str], Sequence[tuple]], generators: Sequence[str] | None = None) -> BaseAlgebra:
    tab = {k: tuple((Fraction(c), z) for c, z in v) for k, v in table.items()}
    base = BaseAlgebra(TABLE, tab, tuple(generators) if generators is not None else None)
    validate_base(base)
    return base


def validate_base(base: BaseAlgebra) -> dict:
    """Check associativity on every generator triple of a table base.

    Zero and free-monoid bases are associative by construction.  Returns a
    small report dict; raises :class:`AssociativityError` with the witness
    triple on failure.
    """
    if base.kind != TABLE:
        return {"kind": base.tag, "valid": True, "triples": 0}
    gens = [((Fraction(1), Letter((g,))),) for g in base.generators]
    n = 0
    for a, b, c in itertools.product(gens, repeat=3):
        left = base.mult(base.mult(a, b), c)
        right = base.mult(a, base.mult(b, c))
        n += 1
        if left != right:
            raise AssociativityError((a[0][1], b[0][1], c[0][1]), left, right)
    return {"kind": base.tag, "valid": True, "triples": n}


def parse_linear(text: str) -> list[tuple[Fraction, str]]:
    """Parse ``c1*z1 + c2*z2 - z3`` into coefficient/generator pairs.  ``0``
    denotes the empty sum."""
    text = text.strip()
    if text == "0":
        return []
    # split on +/- that start a new term (not the sign inside a coefficient)
    pieces = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    out = []
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        piece = piece.lstrip("+-")
        if "*" in piece:
            coeff, name = piece.split("*", 1)
            c = parse_scalar(coeff)
        else:
            c, name = Fraction(1), piece
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise BaseAlgebraError(f"bad term {piece!r}")
        out.append((sign * c, name))
    return out


def load_table(path: str | Path) -> BaseAlgebra:
    """Read a table file: optional ``generators: a b c`` line, then lines
    ``x y -> c1*z1 + c2*z2``.  Missing pairs multiply to zero."""
    gens = None
    table: dict[tuple[str, str], list] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generators:"):
            gens = line.split(":", 1)[1].split()
            continue
        if "->" not in line:
            raise BaseAlgebraError(f"{path}:{lineno}: expected 'x y -> ...'")
        lhs, rhs = line.split("->", 1)
        names = lhs.split()
        if len(names) != 2:
            raise BaseAlgebraError(f"{path}:{lineno}: expected two generators before '->'")
        table[(names[0], names[1])] = parse_linear(rhs)
    return finite_table(table, gens)
