"""Alphabet symbols for aligned genomes.

Symbols built by the reduction carry a kind and up to three small integer
indices, so that two symbols are equal exactly when their kind and indices
agree. ``plain`` symbols hold a free-form string and exist for small
hand-written instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    VERTEX_SEP = "s:v"
    EDGE_SEP = "s:e"
    X = "x"
    E = "e"
    Z = "z"
    W = "w"
    U = "u"
    PLAIN = "p"


# number of integer indices each structured kind carries
_ARITY = {
    TokenKind.VERTEX_SEP: 1,
    TokenKind.EDGE_SEP: 2,
    TokenKind.X: 2,
    TokenKind.E: 3,
    TokenKind.Z: 2,
    TokenKind.W: 2,
    TokenKind.U: 2,
}

GAP_TEXT = "-"


class TokenError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SymbolToken:
    kind: TokenKind
    indices: tuple[int, ...] = ()
    text: str = ""

    def __post_init__(self) -> None:
        if self.kind is TokenKind.PLAIN:
            if not self.text or self.indices:
                raise TokenError("plain token needs a non-empty text and no indices")
            return
        if self.text:
            raise TokenError(f"{self.kind.value} token cannot carry text")
        if len(self.indices) != _ARITY[self.kind]:
            raise TokenError(
                f"{self.kind.value} token takes {_ARITY[self.kind]} indices, got {self.indices}"
            )
        if any(not isinstance(i, int) or i < 0 for i in self.indices):
            raise TokenError(f"indices must be nonnegative integers: {self.indices}")

    def render(self) -> str:
        if self.kind is TokenKind.PLAIN:
            return f"p:{self.text}"
        return ":".join([self.kind.value, *map(str, self.indices)])

    def __str__(self) -> str:
        return self.render()


def parse_token(text: str) -> SymbolToken:
    """Inverse of :meth:`SymbolToken.render`."""
    if text.startswith("p:"):
        return SymbolToken(TokenKind.PLAIN, text=text[2:])
    parts = text.split(":")
    if parts[0] == "s" and len(parts) > 1:
        head, rest = f"s:{parts[1]}", parts[2:]
    else:
        head, rest = parts[0], parts[1:]
    try:
        kind = TokenKind(head)
    except ValueError:
        raise TokenError(f"unknown token kind in {text!r}") from None
    if kind is TokenKind.PLAIN:
        raise TokenError(f"malformed plain token {text!r}")
    try:
        indices = tuple(int(p) for p in rest)
    except ValueError:
        raise TokenError(f"non-integer index in {text!r}") from None
    if any(str(i) != p for i, p in zip(indices, rest)):
        raise TokenError(f"non-canonical index in {text!r}")
    return SymbolToken(kind, indices)


def plain(text: str) -> SymbolToken:
    return SymbolToken(TokenKind.PLAIN, text=text)


def vsep(i: int) -> SymbolToken:
    return SymbolToken(TokenKind.VERTEX_SEP, (i,))


def esep(i: int, j: int) -> SymbolToken:
    return SymbolToken(TokenKind.EDGE_SEP, (i, j))


def xsym(i: int, p: int) -> SymbolToken:
    return SymbolToken(TokenKind.X, (i, p))


def esym(i: int, j: int, c: int) -> SymbolToken:
    return SymbolToken(TokenKind.E, (i, j, c))


def zsym(i: int, k: int) -> SymbolToken:
    return SymbolToken(TokenKind.Z, (i, k))


def wsym(i: int, k: int) -> SymbolToken:
    return SymbolToken(TokenKind.W, (i, k))


def usym(i: int, k: int) -> SymbolToken:
    return SymbolToken(TokenKind.U, (i, k))
