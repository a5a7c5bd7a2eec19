"""Keywords, keyword sets and their mapping onto r-bit node identifiers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from hyperkube import _kernels
from hyperkube.errors import (
    DimensionMismatch,
    EmptyKeywordSet,
    InvalidDimension,
    InvalidKeyword,
)

MAX_DIMENSION = 32


class Keyword(str):
    """A non-empty keyword with surrounding whitespace trimmed.

    Case is preserved: ``"Bologna"`` and ``"bologna"`` are different keywords.
    """

    __slots__ = ()

    def __new__(cls, text: str) -> "Keyword":
        if isinstance(text, Keyword):
            return text
        if not isinstance(text, str):
            raise InvalidKeyword(f"keyword must be a string, got {type(text).__name__}")
        text = text.strip()
        if not text:
            raise InvalidKeyword("keyword is empty")
        return super().__new__(cls, text)


class KeywordSet(frozenset):
    """Immutable, duplicate-free set of :class:`Keyword`.

    An empty set can be constructed (it is a legal intermediate value) but is
    rejected wherever a node id is derived from it.
    """

    __slots__ = ()

    def __new__(cls, keywords: Iterable[str] = ()) -> "KeywordSet":
        if isinstance(keywords, KeywordSet):
            return keywords
        if isinstance(keywords, str):
            keywords = [keywords]
        return super().__new__(cls, (Keyword(k) for k in keywords))

    def canonical(self) -> tuple[str, ...]:
        """Sorted tuple of the keywords; used for ordering and serialization."""
        return tuple(sorted(self))

    def __repr__(self) -> str:
        return f"KeywordSet({list(self.canonical())!r})"


def check_dimension(r: int) -> int:
    if isinstance(r, bool) or not isinstance(r, int) or not 1 <= r <= MAX_DIMENSION:
        raise InvalidDimension(f"dimension must be an integer in [1, {MAX_DIMENSION}], got {r!r}")
    return r


@dataclass(frozen=True, slots=True)
class NodeId:
    """An r-bit vertex of the hypercube. Renders MSB first: ``NodeId(0b1010, 4)`` is ``"1010"``."""

    bits: int
    r: int

    def __post_init__(self):
        check_dimension(self.r)
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits >> self.r:
            raise ValueError(f"bits {self.bits!r} do not fit in {self.r} bits")

    @classmethod
    def parse(cls, text: str) -> "NodeId":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    def ones(self) -> frozenset[int]:
        """Bit positions set to 1."""
        return frozenset(i for i in range(self.r) if (self.bits >> i) & 1)

    def popcount(self) -> int:
        return _kernels.popcount(self.bits)

    def same_dimension(self, other: "NodeId") -> None:
        if self.r != other.r:
            raise DimensionMismatch(f"dimensions differ: {self.r} vs {other.r}")

    def __str__(self) -> str:
        return format(self.bits, f"0{self.r}b")


def hash_keyword(keyword: str, r: int) -> int:
    """Bit position of ``keyword``: FNV-1a 64 over its UTF-8 bytes, mod r."""
    check_dimension(r)
    return _position(Keyword(keyword), r)


@lru_cache(maxsize=1 << 16)
def _position(keyword: str, r: int) -> int:
    return _kernels.fnv1a64(keyword.encode("utf-8")) % r


def keyword_bits(keywords: Iterable[str], r: int) -> int:
    """Integer form of :func:`one`; skips validation of emptiness."""
    bits = 0
    for k in keywords:
        bits |= 1 << hash_keyword(k, r)
    return bits


def one(keywords: Iterable[str], r: int) -> NodeId:
    """Node id whose set bits are exactly the hash positions of ``keywords``."""
    ks = KeywordSet(keywords)
    if not ks:
        raise EmptyKeywordSet("an empty keyword set has no responsible node")
    return NodeId(keyword_bits(ks, r), check_dimension(r))
