"""
Starlike trees, linear trees and caterpillars.

A linear tree ``[T_1, ..., T_k]`` is written as a list of stars, each star as the list of the
vertex counts of its attached paths, with ``[0]`` for a star without paths::

    [[1,1,1],[1],[0],[1,1],[1,1]]

Runs of equal stars may be compressed as ``[0]^3``.
"""

from collections import Counter
from typing import Iterable, List, Sequence

from .errors import DomainError, TreeSyntaxError
from .models import EMPTY_STAR, LinearTree, MatrixKind, RootedTree, Starlike

_MAX_ENTRY = 10**6


class _Scanner:
    """Cursor over literal text; positions in errors are offsets into the full literal."""

    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = offset

    def fail(self, message: str) -> TreeSyntaxError:
        return TreeSyntaxError(message, self.offset + self.pos)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.fail(f"expected {char!r}, found {found}")
        self.pos += 1

    def uint(self) -> int:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.fail("expected a non-negative integer")
        value = int(self.text[start : self.pos])
        if value > _MAX_ENTRY:
            self.pos = start
            raise self.fail(f"integer {value} exceeds {_MAX_ENTRY}")
        return value

    def finish(self) -> None:
        if self.peek():
            raise self.fail(f"unexpected trailing text {self.text[self.pos:]!r}")


def _read_star(scanner: _Scanner) -> Starlike:
    scanner.expect("[")
    start = scanner.pos
    entries = [scanner.uint()]
    while scanner.peek() == ",":
        scanner.pos += 1
        entries.append(scanner.uint())
    scanner.expect("]")
    if 0 in entries:
        if len(entries) > 1:
            scanner.pos = start
            raise scanner.fail("0 may only appear alone, as the empty star [0]")
        return EMPTY_STAR
    return Starlike(path_lengths=tuple(entries))


def _read_repeat(scanner: _Scanner) -> int:
    if scanner.peek() != "^":
        return 1
    scanner.pos += 1
    count = scanner.uint()
    if count < 1:
        raise scanner.fail("repeat count must be positive")
    return count


def _read_linear_tree(scanner: _Scanner, caterpillar: bool = False) -> LinearTree:
    scanner.expect("[")
    stars: List[Starlike] = []
    while True:
        if caterpillar:
            star = Starlike(path_lengths=(1,) * scanner.uint())
        else:
            star = _read_star(scanner)
        stars.extend([star] * _read_repeat(scanner))
        if scanner.peek() != ",":
            break
        scanner.pos += 1
    scanner.expect("]")
    return LinearTree(stars=tuple(stars))


def parse_linear_tree(text: str, caterpillar: bool = False, offset: int = 0) -> LinearTree:
    """
    Parse a linear-tree literal.

    Args:
        text: Literal such as ``[[1,1,1],[1],[0]]``
        caterpillar: Read the flat shorthand ``[r_1,...,r_k]`` of leaf counts instead
        offset: Added to error positions when text is a slice of a larger literal

    Returns:
        The canonical LinearTree
    """
    scanner = _Scanner(text, offset)
    tree = _read_linear_tree(scanner, caterpillar)
    scanner.finish()
    return tree


def parse_star(text: str, offset: int = 0) -> Starlike:
    """Parse a single star literal such as ``[1,2]`` or ``[0]``."""
    scanner = _Scanner(text, offset)
    star = _read_star(scanner)
    scanner.finish()
    return star


def format_linear_tree(g: LinearTree, compress: bool = False) -> str:
    """
    Canonical literal of a linear tree; ``compress`` writes runs of equal stars as ``star^count``.
    """
    if not compress:
        return str(g)
    parts = []
    index = 0
    while index < g.length:
        run = 1
        while index + run < g.length and g.stars[index + run] == g.stars[index]:
            run += 1
        parts.append(str(g.stars[index]) + (f"^{run}" if run > 1 else ""))
        index += run
    return "[" + ",".join(parts) + "]"


def from_caterpillar(r: Sequence[int]) -> LinearTree:
    """
    Caterpillar ``[r_1, ..., r_k]``: back node j carries r_j leaves.
    """
    if not r:
        raise DomainError("a caterpillar needs at least one back node")
    if any(count < 0 for count in r):
        raise DomainError("leaf counts must be non-negative")
    return LinearTree(stars=tuple(Starlike(path_lengths=(1,) * count) for count in r))


def replace_star(g: LinearTree, j: int, star: Starlike) -> LinearTree:
    """Copy of g with T_j (1-based) replaced by star."""
    if not 1 <= j <= g.length:
        raise DomainError(f"star index {j} outside 1..{g.length}")
    stars = list(g.stars)
    stars[j - 1] = star
    return LinearTree(stars=tuple(stars))


def realize(g: LinearTree, kind: MatrixKind = MatrixKind.LAPLACIAN) -> RootedTree:
    """
    Explicit rooted tree of g, numbered bottom-up with the back node v_k as the root.

    Each star's paths come before its back node, leaf first; v_j's parent is v_{j+1}.
    """
    parents: List[int] = []
    degrees: List[int] = []
    back_nodes: List[int] = []
    pending: List[int] = []  # last vertex of each path of the current star
    for j, star in enumerate(g.stars, start=1):
        pending.clear()
        for length in star.path_lengths:
            for step in range(length):
                vertex = len(parents)
                parents.append(vertex + 1)
                degrees.append(1 if step == 0 else 2)
            pending.append(len(parents) - 1)
        back = len(parents)
        for tail in pending:
            parents[tail] = back
        parents.append(-1)
        degrees.append(star.width + (j > 1) + (j < g.length))
        if back_nodes:
            parents[back_nodes[-1]] = back
        back_nodes.append(back)
    diagonal = degrees if kind.uses_degrees else [0] * len(degrees)
    weights = [0 if parent < 0 else kind.edge_weight for parent in parents]
    return RootedTree(
        parents=tuple(parents),
        diagonal=tuple(diagonal),
        weights=tuple(weights),
        kind=kind,
        back_nodes=tuple(back_nodes),
    )


def _dominates(small: Iterable[int], large: Iterable[int]) -> bool:
    """Whether every path of small fits into a distinct path of large at least as long."""
    small_sorted = sorted(small, reverse=True)
    large_sorted = sorted(large, reverse=True)
    if len(small_sorted) > len(large_sorted):
        return False
    return all(s <= l for s, l in zip(small_sorted, large_sorted))


def _last_star_embeds(last: Starlike, here: Starlike, beyond: Starlike) -> bool:
    if _dominates(last.path_lengths, here.path_lengths):
        return True
    # one path may continue through v_{k+1} into a path of T_{k+1}
    for length in Counter(last.path_lengths):
        rest = list(last.path_lengths)
        rest.remove(length)
        if not _dominates(rest, here.path_lengths):
            continue
        if length == 1 or any(q >= length - 1 for q in beyond.path_lengths):
            return True
    return False


def is_subtree_step(g: LinearTree, h: LinearTree) -> bool:
    """
    Sufficient test that g is a subgraph of h with the main paths aligned at v_1.

    Args:
        g: Tree of length k
        h: Tree of length k + 1

    Returns:
        True when the embedding exists
    """
    if h.length != g.length + 1:
        raise DomainError(f"expected a tree of length {g.length + 1}, got {h.length}")
    for mine, theirs in zip(g.stars[:-1], h.stars):
        if not _dominates(mine.path_lengths, theirs.path_lengths):
            return False
    k = g.length
    return _last_star_embeds(g.stars[-1], h.stars[k - 1], h.stars[k])
