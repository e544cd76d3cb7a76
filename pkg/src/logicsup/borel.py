import math
import re
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Tuple

from logicsup.errors import BorelSyntaxError, InputError


class Interval(NamedTuple):
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x: float) -> bool:
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def __str__(self) -> str:
        left = "[" if self.lo_closed and math.isfinite(self.lo) else "("
        right = "]" if self.hi_closed and math.isfinite(self.hi) else ")"
        return f"{left}{_fmt(self.lo)},{_fmt(self.hi)}{right}"


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


@dataclass(frozen=True)
class BorelSet:
    """
    Finite union of intervals plus isolated points, minus excluded points.

    Membership is exact comparison; no tolerance is applied here.
    """

    intervals: Tuple[Interval, ...] = ()
    extra_points: Tuple[float, ...] = ()
    excluded_points: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(Interval(*i) for i in self.intervals))
        object.__setattr__(self, "extra_points", tuple(float(x) for x in self.extra_points))
        object.__setattr__(self, "excluded_points", tuple(float(x) for x in self.excluded_points))
        clash = set(self.extra_points) & set(self.excluded_points)
        if clash:
            raise InputError(f"Points {sorted(clash)} are both included and excluded")

    @classmethod
    def empty(cls) -> "BorelSet":
        return cls()

    @classmethod
    def real_line(cls) -> "BorelSet":
        return cls((Interval(-math.inf, math.inf),))

    @classmethod
    def interval(cls, lo: float, hi: float, lo_closed: bool = False, hi_closed: bool = False) -> "BorelSet":
        return cls((Interval(lo, hi, lo_closed, hi_closed),))

    @classmethod
    def points(cls, *xs: float) -> "BorelSet":
        return cls(extra_points=tuple(xs))

    @classmethod
    def half_line(cls, upper: float) -> "BorelSet":
        """(-inf, upper]."""
        return cls.interval(-math.inf, upper, False, True)

    def contains(self, x: float) -> bool:
        if x in self.excluded_points:
            return False
        return x in self.extra_points or any(i.contains(x) for i in self.intervals)

    __contains__ = contains

    def select(self, xs: Iterable[float]) -> List[float]:
        return [x for x in xs if self.contains(x)]

    def without(self, *xs: float) -> "BorelSet":
        """The set minus the given points, e.g. ``delta.without(0)``."""
        drop = {float(x) for x in xs}
        extras = tuple(x for x in self.extra_points if x not in drop)
        excluded = tuple(sorted(set(self.excluded_points) | drop))
        return BorelSet(self.intervals, extras, excluded)

    def union(self, other: "BorelSet") -> "BorelSet":
        candidates = set(self.excluded_points) | set(other.excluded_points)
        rescued = {x for x in candidates if self.contains(x) or other.contains(x)}
        extras = set(self.extra_points) | set(other.extra_points) | rescued
        return BorelSet(
            self.intervals + other.intervals,
            tuple(sorted(extras)),
            tuple(sorted(candidates - rescued)),
        )

    def is_zero_singleton(self) -> bool:
        """True when the set is exactly {0}."""
        if not self.contains(0.0):
            return False
        if any(x != 0.0 for x in self.extra_points):
            return False
        for interval in self.intervals:
            if interval.is_empty():
                continue
            if not (interval.lo == interval.hi == 0.0):
                return False
        return True

    def __str__(self) -> str:
        terms = [str(i) for i in self.intervals]
        if self.extra_points:
            terms.append("{" + ",".join(_fmt(x) for x in self.extra_points) + "}")
        text = " U ".join(terms) if terms else "{}"
        if self.excluded_points:
            text += " \\ {" + ",".join(_fmt(x) for x in self.excluded_points) + "}"
        return text


class BorelSetParser:
    """
    Parser for the textual form ``(0.5,1.5] U {3} \\ {0}``.

    A union of interval terms and point sets joined by ``U``, optionally
    followed by ``\\ {points}``.
    """

    NUMBER_PATTERN = r"[+-]?(?:inf(?:inity)?|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    TOKEN_PATTERN = re.compile(
        rf"\s*(?:(?P<number>{NUMBER_PATTERN})|(?P<symbol>[\[\]\(\)\{{\}},\\])|(?P<union>[Uu∪]))",
        re.IGNORECASE,
    )

    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.index = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = self.TOKEN_PATTERN.match(text, position)
            if not match:
                offset = len(text[position:]) - len(text[position:].lstrip())
                raise BorelSyntaxError("Unexpected character", text, position + offset)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            position = match.end()
        return tokens

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _take(self, expected: str = None):
        token = self._peek()
        if token is None:
            raise BorelSyntaxError(f"Expected {expected or 'more input'} but input ended", self.text, len(self.text))
        if expected is not None and token[1] != expected:
            raise BorelSyntaxError(f"Expected '{expected}', found '{token[1]}'", self.text, token[2])
        self.index += 1
        return token

    def _number(self) -> float:
        token = self._take()
        if token[0] != "number":
            raise BorelSyntaxError(f"Expected a number, found '{token[1]}'", self.text, token[2])
        return float(token[1])

    def _point_list(self) -> List[float]:
        self._take("{")
        points = []
        token = self._peek()
        if token is not None and token[1] == "}":
            self._take("}")
            return points
        points.append(self._number())
        while self._peek() is not None and self._peek()[1] == ",":
            self._take(",")
            points.append(self._number())
        self._take("}")
        return points

    def _interval(self) -> Interval:
        opening = self._take()
        lo = self._number()
        self._take(",")
        hi = self._number()
        closing = self._take()
        if closing[1] not in (")", "]"):
            raise BorelSyntaxError(f"Expected ')' or ']', found '{closing[1]}'", self.text, closing[2])
        return Interval(lo, hi, opening[1] == "[", closing[1] == "]")

    def parse(self) -> BorelSet:
        intervals: List[Interval] = []
        extras: List[float] = []
        excluded: List[float] = []
        while True:
            token = self._peek()
            if token is None:
                raise BorelSyntaxError("Expected an interval or a point set", self.text, len(self.text))
            if token[1] in ("(", "["):
                intervals.append(self._interval())
            elif token[1] == "{":
                extras.extend(self._point_list())
            else:
                raise BorelSyntaxError(f"Unexpected '{token[1]}'", self.text, token[2])
            token = self._peek()
            if token is None:
                break
            if token[0] == "union":
                self._take()
                continue
            if token[1] == "\\":
                self._take()
                excluded = self._point_list()
                token = self._peek()
                if token is not None:
                    raise BorelSyntaxError(f"Trailing input '{token[1]}'", self.text, token[2])
                break
            raise BorelSyntaxError(f"Expected 'U' or '\\', found '{token[1]}'", self.text, token[2])
        extras = [x for x in extras if x not in excluded]
        return BorelSet(tuple(intervals), tuple(extras), tuple(excluded))


def parse_borel_set(text: str) -> BorelSet:
    return BorelSetParser(text).parse()
