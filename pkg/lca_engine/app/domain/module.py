# app/domain/module.py
"""Elements of finite-rank free QQ[D]-modules whose coefficients may carry formal parameters.

``p(D) e_i`` is stored as a coefficient vector; D is an ordinary commuting variable of the
coefficient ring, never an operator.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Sequence, Tuple

from app.domain import poly
from app.domain.errors import RankMismatchError, require_rank
from app.domain.poly import Poly, Var


@dataclass(frozen=True)
class ModElement:
    rank: int
    comps: Tuple[Poly, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise RankMismatchError(f"rank must be positive, got {self.rank}")
        if len(self.comps) != self.rank:
            raise RankMismatchError(f"{len(self.comps)} components given for rank {self.rank}")

    def __add__(self, other: "ModElement") -> "ModElement":
        return elem_add(self, other)

    def __sub__(self, other: "ModElement") -> "ModElement":
        return elem_sub(self, other)

    def __neg__(self) -> "ModElement":
        return elem_neg(self)

    def __getitem__(self, i: int) -> Poly:
        return self.comps[i]


def make(comps: Sequence[Poly]) -> ModElement:
    return ModElement(len(comps), tuple(comps))


def zero(rank: int) -> ModElement:
    return ModElement(rank, (poly.ZERO,) * rank)


def basis_vector(rank: int, i: int) -> ModElement:
    return ModElement(rank, tuple(poly.ONE if k == i else poly.ZERO for k in range(rank)))


def elem_add(u: ModElement, v: ModElement) -> ModElement:
    require_rank(u.rank, v.rank)
    return ModElement(u.rank, tuple(p + q for p, q in zip(u.comps, v.comps)))


def elem_sub(u: ModElement, v: ModElement) -> ModElement:
    require_rank(u.rank, v.rank)
    return ModElement(u.rank, tuple(p - q for p, q in zip(u.comps, v.comps)))


def elem_neg(v: ModElement) -> ModElement:
    return ModElement(v.rank, tuple(-p for p in v.comps))


def scal_mul(p: Poly, v: ModElement) -> ModElement:
    return ModElement(v.rank, tuple(p * q for q in v.comps))


def elem_substitute(v: ModElement, var: Var, repl: Poly) -> ModElement:
    return ModElement(v.rank, tuple(poly.substitute(p, var, repl) for p in v.comps))


def elem_sum(elements: Iterable[ModElement], rank: int) -> ModElement:
    comps = [poly.ZERO] * rank
    for v in elements:
        require_rank(rank, v.rank)
        for k, p in enumerate(v.comps):
            if p:
                comps[k] = comps[k] + p
    return ModElement(rank, tuple(comps))


def elem_is_zero(v: ModElement) -> bool:
    return not any(v.comps)


def elem_variables(v: ModElement) -> FrozenSet[Var]:
    out: FrozenSet[Var] = frozenset()
    for p in v.comps:
        out |= poly.variables(p)
    return out


def elem_uses_only(v: ModElement, allowed: Iterable[Var]) -> bool:
    return elem_variables(v) <= frozenset(allowed)


def elem_coefficients_in(v: ModElement, var: Var) -> dict:
    """Expand ``v`` in powers of ``var``: exponent -> element free of ``var``."""
    grouped = {}
    for k, p in enumerate(v.comps):
        for e, c in poly.coefficients_in(p, var).items():
            grouped.setdefault(e, [poly.ZERO] * v.rank)[k] = c
    return {e: ModElement(v.rank, tuple(comps)) for e, comps in sorted(grouped.items())}


def render_element(v: ModElement, names: Sequence[str]) -> str:
    if len(names) != v.rank:
        raise RankMismatchError(f"{len(names)} names for rank {v.rank}")
    parts = []
    for p, name in zip(v.comps, names):
        if not p:
            continue
        if p == poly.ONE:
            term = name
        elif p == -poly.ONE:
            term = f"-{name}"
        elif p.is_ground:
            term = f"{poly.render_poly(p)} {name}"
        else:
            term = f"({poly.render_poly(p)}) {name}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out
