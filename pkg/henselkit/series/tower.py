"""Truncated generalized Laurent series over the tower Q ⊂ Q((t0)) ⊂ Q((t0))((t1)) ⊂ ...

An element of stage ``k`` (a field of height ``k``) is a finite sum of terms
``c * t_{k-1}^e`` whose coefficients live in stage ``k - 1``; stage 0 is ``Fraction``.
Each element records ``prec``: coefficients at exponents ``>= prec`` are unknown.
``prec is None`` means the element is known exactly.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Union

from henselkit.lib.errors import (
    DivisionByIndistinguishableZero,
    IndistinguishableFromZero,
    LatticeError,
    LevelMismatch,
    NegativeValuation,
)
from henselkit.series.values import ValueVec

DEFAULT_PRECISION = 16
DEFAULT_RAMIFICATION = 1

Coefficient = Union[Fraction, "TowerElement"]


@dataclass(frozen=True)
class TowerDescriptor:
    """Shape of a tower stage: ramification d_i and window N_i for each level."""

    ramification: tuple[int, ...] = ()
    precision: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.ramification) != len(self.precision):
            raise ValueError("ramification and precision must have one entry per level")
        if any(d < 1 for d in self.ramification) or any(n < 1 for n in self.precision):
            raise ValueError("ramification and precision entries must be positive")

    @classmethod
    def build(
        cls,
        height: int,
        ramification: Sequence[int] = (DEFAULT_RAMIFICATION,),
        precision: Sequence[int] = (DEFAULT_PRECISION,),
    ) -> TowerDescriptor:
        """Tower of the given height; short lists repeat their last entry."""
        return cls(_stretch(ramification, height), _stretch(precision, height))

    @property
    def height(self) -> int:
        return len(self.ramification)

    @property
    def step(self) -> Fraction:
        """Lattice step 1/d of the outermost variable."""
        return Fraction(1, self.ramification[-1])

    @property
    def window(self) -> int:
        return self.precision[-1]

    def field(self, level: int) -> TowerDescriptor:
        if not 0 <= level <= self.height:
            raise LevelMismatch(f"stage {level} is not part of a tower of height {self.height}")
        return TowerDescriptor(self.ramification[:level], self.precision[:level])

    def below(self) -> TowerDescriptor:
        return self.field(self.height - 1)

    def extend(
        self, ramification: int = DEFAULT_RAMIFICATION, precision: int = DEFAULT_PRECISION
    ) -> TowerDescriptor:
        return TowerDescriptor(self.ramification + (ramification,), self.precision + (precision,))

    def contains(self, other: TowerDescriptor) -> bool:
        """True if ``other`` is this stage or one below it."""
        return other.height <= self.height and self.field(other.height) == other

    def in_lattice(self, exponent: Fraction) -> bool:
        return (exponent * self.ramification[-1]).denominator == 1

    def variable(self) -> str:
        return f"t{self.height - 1}"


def _stretch(values: Sequence[int], height: int) -> tuple[int, ...]:
    if height == 0:
        return ()
    items = list(values) or [DEFAULT_PRECISION]
    while len(items) < height:
        items.append(items[-1])
    return tuple(items[:height])


@dataclass(frozen=True)
class TowerElement:
    """A truncated series in the outermost variable of its stage."""

    field: TowerDescriptor
    terms: tuple[tuple[Fraction, Coefficient], ...] = ()
    prec: Fraction | None = dataclass_field(default=None)

    @property
    def level(self) -> int:
        return self.field.height

    @property
    def is_exact(self) -> bool:
        return is_exact(self)

    @property
    def lead_exponent(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    def coefficient(self, exponent: Fraction | int) -> Coefficient:
        exponent = Fraction(exponent)
        if self.prec is not None and exponent >= self.prec:
            raise IndistinguishableFromZero(
                f"coefficient of {self.field.variable()}^{exponent} lies beyond O(.^{self.prec})",
                lower_bound=self.prec,
            )
        for e, c in self.terms:
            if e == exponent:
                return c
        return zero(self.field.below())

    # --- coercion -------------------------------------------------------

    def _coerce(self, other: object) -> TowerElement | None:
        if isinstance(other, int | Fraction):
            return embed(Fraction(other), self.field)
        if isinstance(other, TowerElement):
            if other.field == self.field:
                return other
            if self.field.contains(other.field):
                return embed(other, self.field)
            if other.field.contains(self.field):
                return None
            raise LevelMismatch(f"elements of stages {self.field} and {other.field} do not mix")
        return None

    def _scalar(self, other: object) -> Coefficient | None:
        """Return ``other`` when it belongs to a strictly lower stage."""
        if isinstance(other, int | Fraction):
            return Fraction(other)
        if isinstance(other, TowerElement) and other.level < self.level:
            if not self.field.contains(other.field):
                raise LevelMismatch(f"elements of stages {self.field} and {other.field} do not mix")
            return other
        return None

    def _lift(self, other: object) -> TowerElement | None:
        """``self`` read in the stage of a strictly higher ``other``."""
        if isinstance(other, TowerElement) and other.level > self.level:
            lifted = embed(self, other.field)
            assert isinstance(lifted, TowerElement)
            return lifted
        return None

    # --- ring operations ------------------------------------------------

    def __add__(self, other: object) -> TowerElement:
        rhs = self._coerce(other)
        if rhs is None:
            lifted = self._lift(other)
            return NotImplemented if lifted is None else lifted + other
        acc = dict(self.terms)
        for e, c in rhs.terms:
            _accumulate(acc, e, c)
        return build_element(self.field, acc, _min_prec(self.prec, rhs.prec))

    __radd__ = __add__

    def __neg__(self) -> TowerElement:
        return TowerElement(self.field, tuple((e, -c) for e, c in self.terms), self.prec)

    def __sub__(self, other: object) -> TowerElement:
        rhs = self._coerce(other)
        if rhs is None:
            lifted = self._lift(other)
            return NotImplemented if lifted is None else lifted - other
        return self + (-rhs)

    def __rsub__(self, other: object) -> TowerElement:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> TowerElement:
        scalar = self._scalar(other)
        if scalar is not None:
            return self._scale(scalar)
        rhs = self._coerce(other)
        if rhs is None:
            lifted = self._lift(other)
            return NotImplemented if lifted is None else lifted * other
        return _multiply(self, rhs)

    __rmul__ = __mul__

    def _scale(self, scalar: Coefficient) -> TowerElement:
        if is_exact_zero(scalar):
            return TowerElement(self.field)
        acc = {e: c * scalar for e, c in self.terms}
        return build_element(self.field, acc, self.prec)

    def inverse(self) -> TowerElement:
        if not self.terms:
            raise DivisionByIndistinguishableZero(
                "divisor has no known nonzero coefficient"
                + ("" if self.prec is None else f" below {self.field.variable()}^{self.prec}")
            )
        v, b0 = self.terms[0]
        inv0 = invert(b0)
        if self.prec is None and len(self.terms) == 1:
            return TowerElement(self.field, ((-v, inv0),))
        step = self.field.step
        count = self.field.window
        if self.prec is not None:
            count = min(count, math.ceil((self.prec - v) / step))
        beta = [zero(self.field.below()) for _ in range(count)]
        for e, c in self.terms:
            k = (e - v) / step
            if k < count:
                beta[int(k)] = c
        gammas: list[Coefficient] = [inv0]
        for k in range(1, count):
            total: Coefficient = zero(self.field.below())
            for j in range(1, k + 1):
                if not vanishes(beta[j]):
                    total = total + beta[j] * gammas[k - j]
            gammas.append(-(inv0 * total))
        acc = {-v + k * step: g for k, g in enumerate(gammas)}
        return build_element(self.field, acc, -v + count * step)

    def __truediv__(self, other: object) -> TowerElement:
        scalar = self._scalar(other)
        if scalar is not None:
            return self._scale(invert(scalar))
        rhs = self._coerce(other)
        if rhs is None:
            lifted = self._lift(other)
            return NotImplemented if lifted is None else lifted / other
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> TowerElement:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, exponent: int) -> TowerElement:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = one(self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        assert isinstance(result, TowerElement)
        return result

    # --- valued-differential structure ------------------------------------

    def derive(self) -> TowerElement:
        """Coefficientwise derivation of the stage below plus d/dt."""
        acc: dict[Fraction, Coefficient] = {}
        for e, c in self.terms:
            dc = derive(c)
            if not is_exact_zero(dc):
                _accumulate(acc, e, dc)
            if e != 0:
                _accumulate(acc, e - 1, e * c)
        prec = None if self.prec is None else self.prec - 1
        return build_element(self.field, acc, prec)

    def valuation(self) -> ValueVec:
        if not self.terms:
            if self.prec is None:
                return ValueVec.infinity()
            raise IndistinguishableFromZero(
                f"all known coefficients vanish; valuation is at least {self.prec} "
                f"in {self.field.variable()}",
                lower_bound=self.prec,
            )
        e, c = self.terms[0]
        if not is_settled(c):
            raise IndistinguishableFromZero(
                f"coefficient of {self.field.variable()}^{e} is not known to be nonzero; "
                f"valuation is at least {e} in {self.field.variable()}",
                lower_bound=e,
            )
        inner = valuation(c)
        return ValueVec(inner.padded(self.level - 1) + (e,))

    def truncate(self, order: Fraction | int) -> TowerElement:
        order = Fraction(order)
        return build_element(self.field, dict(self.terms), _min_prec(self.prec, order))

    def approximant(self, order: Fraction | int) -> TowerElement:
        """The exact finite part of the element below ``order``."""
        order = Fraction(order)
        kept = {e: c for e, c in self.terms if e < order}
        return build_element(self.field, kept, None)

    def __str__(self) -> str:
        from henselkit.series.codec import format_series

        return format_series(self)


def _accumulate(acc: dict[Fraction, Coefficient], exponent: Fraction, value: Coefficient) -> None:
    if exponent in acc:
        acc[exponent] = acc[exponent] + value
    else:
        acc[exponent] = value


def build_element(
    tower_field: TowerDescriptor, acc: dict[Fraction, Coefficient], prec: Fraction | None
) -> TowerElement:
    terms = tuple(
        (e, c)
        for e, c in sorted(acc.items(), key=lambda item: item[0])
        if (prec is None or e < prec) and not is_exact_zero(c)
    )
    return TowerElement(tower_field, terms, prec)


def _min_prec(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _low(x: TowerElement) -> Fraction:
    """Lower bound on the top exponent of a nonzero-or-unknown element."""
    if x.terms:
        return x.terms[0][0]
    assert x.prec is not None
    return x.prec


def _multiply(a: TowerElement, b: TowerElement) -> TowerElement:
    if (not a.terms and a.prec is None) or (not b.terms and b.prec is None):
        return TowerElement(a.field)
    prec: Fraction | None = None
    if a.prec is not None:
        prec = _min_prec(prec, a.prec + _low(b))
    if b.prec is not None:
        prec = _min_prec(prec, b.prec + _low(a))
    acc: dict[Fraction, Coefficient] = {}
    for e1, c1 in a.terms:
        for e2, c2 in b.terms:
            e = e1 + e2
            if prec is not None and e >= prec:
                continue
            _accumulate(acc, e, c1 * c2)
    return build_element(a.field, acc, prec)


# --- uniform helpers over Fraction | TowerElement ------------------------


def zero(tower_field: TowerDescriptor) -> Coefficient:
    return Fraction(0) if tower_field.height == 0 else TowerElement(tower_field)


def one(tower_field: TowerDescriptor) -> Coefficient:
    return embed(Fraction(1), tower_field)


def field_of(x: Coefficient) -> TowerDescriptor:
    return x.field if isinstance(x, TowerElement) else TowerDescriptor()


def level_of(x: Coefficient) -> int:
    return x.level if isinstance(x, TowerElement) else 0


def vanishes(x: Coefficient) -> bool:
    """True if no known coefficient of ``x`` is nonzero (exact zero included)."""
    if isinstance(x, TowerElement):
        return all(vanishes(c) for _, c in x.terms)
    return x == 0


def is_exact(x: Coefficient) -> bool:
    """True if no coefficient of ``x`` at any level carries an unknown remainder."""
    if not isinstance(x, TowerElement):
        return True
    return x.prec is None and all(is_exact(c) for _, c in x.terms)


def is_settled(x: Coefficient) -> bool:
    """True if the leading coefficient of ``x`` is known to be nonzero at every level."""
    if isinstance(x, TowerElement):
        return bool(x.terms) and is_settled(x.terms[0][1])
    return x != 0


def is_exact_zero(x: Coefficient) -> bool:
    return vanishes(x) and is_exact(x)


def invert(x: Coefficient) -> Coefficient:
    if isinstance(x, TowerElement):
        return x.inverse()
    if x == 0:
        raise DivisionByIndistinguishableZero("division by the rational zero")
    return 1 / Fraction(x)


def derive(x: Coefficient) -> Coefficient:
    if isinstance(x, TowerElement):
        return x.derive()
    return Fraction(0)


def derive_n(x: Coefficient, n: int) -> Coefficient:
    for _ in range(n):
        x = derive(x)
    return x


def valuation(x: Coefficient) -> ValueVec:
    if isinstance(x, TowerElement):
        return x.valuation()
    return ValueVec.infinity() if x == 0 else ValueVec()


def embed(x: Coefficient | int, tower_field: TowerDescriptor) -> Coefficient:
    """Embed an element of a lower stage as a constant of ``tower_field``."""
    if isinstance(x, int):
        x = Fraction(x)
    source = field_of(x)
    if source == tower_field:
        return x
    if not tower_field.contains(source):
        raise LevelMismatch(f"cannot embed an element of {source} into {tower_field}")
    inner = embed(x, tower_field.below())
    if vanishes(inner) and is_exact(inner):
        return TowerElement(tower_field)
    return TowerElement(tower_field, ((Fraction(0), inner),))


def recast(x: Coefficient, tower_field: TowerDescriptor) -> Coefficient:
    """Read ``x`` inside a stage of the same height with a finer exponent lattice."""
    if not isinstance(x, TowerElement):
        return embed(x, tower_field)
    if x.level < tower_field.height:
        return embed(recast(x, tower_field.field(x.level)), tower_field)
    if x.level != tower_field.height:
        raise LevelMismatch(f"cannot recast an element of {x.field} into {tower_field}")
    below = tower_field.below()
    terms = []
    for e, c in x.terms:
        if not tower_field.in_lattice(e):
            raise LatticeError(f"exponent {e} is not a multiple of {tower_field.step}")
        terms.append((e, recast(c, below)))
    if x.prec is not None and not tower_field.in_lattice(x.prec):
        raise LatticeError(f"precision {x.prec} is not a multiple of {tower_field.step}")
    return TowerElement(tower_field, tuple(terms), x.prec)


def generator(
    tower_field: TowerDescriptor, index: int, exponent: Fraction | int = 1
) -> Coefficient:
    """The monomial t_index^exponent viewed inside ``tower_field``."""
    if not 0 <= index < tower_field.height:
        raise LevelMismatch(f"t{index} does not exist in a tower of height {tower_field.height}")
    exponent = Fraction(exponent)
    home = tower_field.field(index + 1)
    if not home.in_lattice(exponent):
        raise LatticeError(
            f"exponent {exponent} of t{index} is not a multiple of {home.step}"
        )
    return embed(TowerElement(home, ((exponent, Fraction(1)),)), tower_field)


def big_o(tower_field: TowerDescriptor, index: int, order: Fraction | int) -> Coefficient:
    """The unknown remainder O(t_index^order) viewed inside ``tower_field``."""
    generator(tower_field, index)
    home = tower_field.field(index + 1)
    return embed(TowerElement(home, (), Fraction(order)), tower_field)


def residue(x: TowerElement) -> Coefficient:
    """Coefficient of t^0 for an element of nonnegative top valuation."""
    if x.terms and x.terms[0][0] < 0:
        if not is_settled(x.terms[0][1]):
            raise IndistinguishableFromZero(
                f"sign of the valuation is not settled below {x.field.variable()}^0",
                lower_bound=x.terms[0][0],
            )
        raise NegativeValuation(
            f"residue needs nonnegative valuation, lead exponent is {x.terms[0][0]}"
        )
    if x.prec is not None and x.prec <= 0:
        raise IndistinguishableFromZero(
            f"constant term lies beyond O({x.field.variable()}^{x.prec})", lower_bound=x.prec
        )
    return x.coefficient(0)


def angular_component(x: Coefficient, full: bool = False) -> Coefficient:
    """Leading coefficient; ``full`` iterates down to the residue field Q."""
    if not isinstance(x, TowerElement):
        return x
    if not x.terms:
        if x.prec is None:
            return Fraction(0) if full else zero(x.field.below())
        raise IndistinguishableFromZero(
            "angular component of an element with no known coefficient", lower_bound=x.prec
        )
    e, lead = x.terms[0]
    if not is_settled(lead):
        raise IndistinguishableFromZero(
            f"leading coefficient at {x.field.variable()}^{e} is not known to be nonzero",
            lower_bound=e,
        )
    return angular_component(lead, full=True) if full else lead


def residue_section(c: Coefficient, tower_field: TowerDescriptor) -> Coefficient:
    """Constant-coefficient section of the residue map into ``tower_field``."""
    if level_of(c) != tower_field.height - 1:
        raise LevelMismatch("the residue section maps stage k-1 into stage k")
    return embed(c, tower_field)


def exceeds(x: Coefficient, gamma: ValueVec) -> bool:
    """Decide ``v(x) > gamma``; raise if the known coefficients do not settle it."""
    if is_settled(x) or is_exact_zero(x):
        return valuation(x) > gamma
    assert isinstance(x, TowerElement)
    lower = x.terms[0][0] if x.terms else x.prec
    assert lower is not None
    undecided = IndistinguishableFromZero(
        f"known coefficients do not settle v(x) below {x.field.variable()}^{lower}, "
        f"so the comparison with {gamma} is open",
        lower_bound=lower,
    )
    if gamma.infinite:
        raise undecided
    length = max(x.level, gamma.length)
    g = gamma.padded(length)
    for idx in range(length - 1, x.level - 1, -1):
        if g[idx] < 0:
            return True
        if g[idx] > 0:
            raise undecided
    top = g[x.level - 1]
    if lower > top:
        return True
    if x.terms and lower == top:
        # a zero lead pushes v(x) past gamma; otherwise the lead decides
        return exceeds(x.terms[0][1], ValueVec(g[: x.level - 1]))
    raise undecided


def valuation_bound(x: Coefficient) -> ValueVec:
    """v(x) when settled, else a lower bound read off the known terms.

    Coordinates below an unknown remainder are reported as 0.
    """
    if not isinstance(x, TowerElement) or is_settled(x) or is_exact_zero(x):
        return valuation(x)
    if not x.terms:
        assert x.prec is not None
        return ValueVec(tuple([Fraction(0)] * (x.level - 1)) + (x.prec,))
    e, c = x.terms[0]
    return ValueVec(valuation_bound(c).padded(x.level - 1) + (e,))


def in_open_ball(
    xs: Sequence[Coefficient], cs: Sequence[Coefficient], gamma: ValueVec
) -> bool:
    """True iff v(x_i - c_i) > gamma for every i."""
    if len(xs) != len(cs):
        raise LevelMismatch(f"ball centre has {len(cs)} entries, point has {len(xs)}")
    return all(exceeds(x - c, gamma) for x, c in zip(xs, cs))


def top_order_positive(x: Coefficient) -> bool:
    """True if x is certified to vanish at t^0 and below in its outermost variable."""
    if not isinstance(x, TowerElement):
        return x == 0
    if x.terms:
        return x.terms[0][0] > 0
    return x.prec is None or x.prec > 0


def common_field(values: Iterable[Coefficient]) -> TowerDescriptor:
    """The highest stage among ``values``; all others must lie below it."""
    return higher_field(*(field_of(value) for value in values))


def higher_field(*fields: TowerDescriptor) -> TowerDescriptor:
    """The highest of several stages of one tower."""
    best = TowerDescriptor()
    for current in fields:
        if current.height > best.height:
            if not current.contains(best):
                raise LevelMismatch(f"stages {best} and {current} do not mix")
            best = current
        elif not best.contains(current):
            raise LevelMismatch(f"stages {best} and {current} do not mix")
    return best
