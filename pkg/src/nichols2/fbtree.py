"""Full binary trees with godfather maps and Stern-Brocot labels.

Trees are immutable after construction; every derived map (godfathers,
branch lengths, labels, node orderings) is computed once up front because
all downstream modules query them heavily.  Real nodes are integer ids in
preorder; the two virtual nodes LGH and RGH extend the node set and carry
the boundary labels (0,1) and (1,0).
"""

from __future__ import annotations

import functools
from fractions import Fraction
from random import Random


class TreeParseError(ValueError):
    """Malformed tree text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Virtual:
    """One of the two virtual boundary nodes."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name.upper()


LGH = Virtual("lgh")
RGH = Virtual("rgh")

# An extended node is either a real node id (int) or one of the two
# virtual boundary nodes above.


class FullBinaryTree:
    """A finite tree in which every node has exactly zero or two children."""

    __slots__ = ("left", "right", "parent", "_stbr", "_lgf", "_rgf",
                 "_lgfl", "_rgfl", "_lchl", "_rchl", "_n0", "_n2", "_nbar2")

    def __init__(self, shape):
        # shape: None for a leaf, (left_shape, right_shape) for an inner node.
        left: list[int | None] = []
        right: list[int | None] = []
        parent: list[int | None] = []

        def build(s, par):
            idx = len(left)
            left.append(None)
            right.append(None)
            parent.append(par)
            if s is not None:
                l, r = s
                left[idx] = build(l, idx)
                right[idx] = build(r, idx)
            return idx

        build(shape, None)
        self.left = tuple(left)
        self.right = tuple(right)
        self.parent = tuple(parent)
        self._precompute()

    # -- structure queries ---------------------------------------------------

    @property
    def root(self) -> int:
        return 0

    def size(self) -> int:
        return len(self.left)

    def nodes(self) -> range:
        return range(len(self.left))

    def is_leaf(self, a: int) -> bool:
        return self.left[a] is None

    def lch(self, a: int) -> int:
        if self.left[a] is None:
            raise ValueError(f"node {a} is a leaf")
        return self.left[a]

    def rch(self, a: int) -> int:
        if self.right[a] is None:
            raise ValueError(f"node {a} is a leaf")
        return self.right[a]

    def _precompute(self):
        n = len(self.left)
        lgf: list = [None] * n
        rgf: list = [None] * n
        for a in range(n):
            p = self.parent[a]
            if p is None:
                lgf[a] = LGH
                rgf[a] = RGH
        # Parents precede children in preorder, so one forward pass settles
        # the three-case godfather recursion.
        for a in range(n):
            p = self.parent[a]
            if p is None:
                continue
            if self.right[p] == a:
                lgf[a] = p
                rgf[a] = rgf[p]
            else:
                lgf[a] = lgf[p]
                rgf[a] = p
        self._lgf = tuple(lgf)
        self._rgf = tuple(rgf)

        lgfl = [0] * n
        rgfl = [0] * n
        for a in range(n):
            b = lgf[a]
            lgfl[a] = lgfl[b] + 1 if isinstance(b, int) and self.right[b] == a else 1
            b = rgf[a]
            rgfl[a] = rgfl[b] + 1 if isinstance(b, int) and self.left[b] == a else 1
        self._lgfl = tuple(lgfl)
        self._rgfl = tuple(rgfl)

        lchl = [0] * n
        rchl = [0] * n
        for a in reversed(range(n)):
            if self.is_leaf(a):
                lchl[a] = rchl[a] = 1
            else:
                lchl[a] = lchl[self.left[a]] + 1
                rchl[a] = rchl[self.right[a]] + 1
        self._lchl = tuple(lchl)
        self._rchl = tuple(rchl)

        stbr = {LGH: (0, 1), RGH: (1, 0)}
        for a in range(n):
            r1, s1 = stbr[lgf[a]]
            r2, s2 = stbr[rgf[a]]
            stbr[a] = (r1 + r2, s1 + s2)
        self._stbr = stbr

        self._n0 = tuple(a for a in range(n) if self.is_leaf(a))
        self._n2 = tuple(a for a in range(n) if not self.is_leaf(a))
        ordered = sorted(self._n2, key=functools.cmp_to_key(lambda x, y: self.cmp_q(x, y)))
        self._nbar2 = (LGH, *ordered, RGH)

    # -- the derived maps ------------------------------------------------------

    def lgf(self, a: int):
        return self._lgf[a]

    def rgf(self, a: int):
        return self._rgf[a]

    def branch_lengths(self, a: int) -> tuple[int, int, int, int]:
        return self._lgfl[a], self._rgfl[a], self._lchl[a], self._rchl[a]

    def lgfl(self, a: int) -> int:
        return self._lgfl[a]

    def rgfl(self, a: int) -> int:
        return self._rgfl[a]

    def lchl(self, a: int) -> int:
        return self._lchl[a]

    def rchl(self, a: int) -> int:
        return self._rchl[a]

    def stern_brocot(self, a) -> tuple[int, int]:
        return self._stbr[a]

    def weight(self, a) -> int:
        r, s = self._stbr[a]
        return r + s

    def cmp_q(self, a, b) -> int:
        """Sign of Q(a) - Q(b), comparing labels by cross multiplication."""
        r1, s1 = self._stbr[a]
        r2, s2 = self._stbr[b]
        d = r1 * s2 - r2 * s1
        return (d > 0) - (d < 0)

    def q_value(self, a) -> Fraction | None:
        """Q(a) as a rational, or None for the infinite value at RGH."""
        r, s = self._stbr[a]
        return None if s == 0 else Fraction(r, s)

    def leaves(self) -> tuple[int, ...]:
        return self._n0

    def internal(self) -> tuple[int, ...]:
        return self._n2

    def nbar2(self) -> tuple:
        """N_2 extended by the virtual nodes, ascending in the Q order."""
        return self._nbar2

    def nbar(self) -> tuple:
        return (LGH, RGH, *self.nodes())

    # -- shape identity ---------------------------------------------------------

    def shape(self):
        def rec(a):
            if self.is_leaf(a):
                return None
            return (rec(self.left[a]), rec(self.right[a]))

        return rec(0)

    def __eq__(self, other):
        if not isinstance(other, FullBinaryTree):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"FullBinaryTree({serialize_tree(self)!r})"


def parse_tree(text: str) -> FullBinaryTree:
    """Parse the grammar  tree := "L" | "(" tree " " tree ")" ."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def node():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise TreeParseError("unexpected end of input", pos)
        ch = text[pos]
        if ch == "L":
            pos += 1
            return None
        if ch == "(":
            pos += 1
            l = node()
            r = node()
            skip_ws()
            if pos >= n or text[pos] != ")":
                raise TreeParseError("expected ')'", pos)
            pos += 1
            return (l, r)
        raise TreeParseError(f"unexpected character {ch!r}", pos)

    shape = node()
    skip_ws()
    if pos != n:
        raise TreeParseError("trailing input after tree", pos)
    return FullBinaryTree(shape)


def serialize_tree(t: FullBinaryTree) -> str:
    def rec(a):
        if t.is_leaf(a):
            return "L"
        return f"({rec(t.left[a])} {rec(t.right[a])})"

    return rec(0)


def lgf(t: FullBinaryTree, a: int):
    return t.lgf(a)


def rgf(t: FullBinaryTree, a: int):
    return t.rgf(a)


def branch_lengths(t: FullBinaryTree, a: int):
    return t.branch_lengths(a)


def stern_brocot(t: FullBinaryTree, a):
    return t.stern_brocot(a)


def cmp_q(t: FullBinaryTree, a, b) -> int:
    return t.cmp_q(a, b)


def node_sets(t: FullBinaryTree):
    """(leaves, inner nodes, inner nodes with virtuals sorted by the Q order)."""
    return t.leaves(), t.internal(), t.nbar2()


@functools.lru_cache(maxsize=None)
def _catalan(n: int) -> int:
    if n == 0:
        return 1
    return sum(_catalan(i) * _catalan(n - 1 - i) for i in range(n))


def random_full_tree(rng: Random, internal: int) -> FullBinaryTree:
    """Uniformly random full binary tree with the given number of inner nodes."""

    def sample(n):
        if n == 0:
            return None
        total = _catalan(n)
        pick = rng.randrange(total)
        for i in range(n):
            block = _catalan(i) * _catalan(n - 1 - i)
            if pick < block:
                return (sample(i), sample(n - 1 - i))
            pick -= block
        raise AssertionError("catalan split out of range")

    return FullBinaryTree(sample(internal))


# The 22 family tree constants.  Each is cross-validated independently:
# reconstructing the tree from the family's sample braiding must reproduce
# it (see the admissibility and classify modules and their tests).
_TREE_TEXT = {
    1: "L",
    2: "(L L)",
    3: "(L (L L))",
    4: "((L L) (L L))",
    5: "(L ((L L) L))",
    6: "((L L) ((L L) L))",
    7: "(L (L (L L)))",
    8: "(L ((L L) (L L)))",
    9: "(L (((L L) L) L))",
    10: "((L L) (((L L) L) (L L)))",
    11: "(L (((L L) (L L)) (L L)))",
    12: "((L L) ((L L) ((L L) L)))",
    13: "(L ((L (L L)) ((L L) L)))",
    14: "(L (L (L (L L))))",
    15: "(L (((L L) L) (L (L L))))",
    16: "(L ((L L) ((L L) (L L))))",
    17: "(L ((((L L) L) (L L)) L))",
    18: "(L (((L L) ((L L) L)) L))",
    19: "(L ((((L L) (L L)) ((L L) (L L))) (L L)))",
    20: "(L (L ((L (L L)) (L L))))",
    21: "(L (L ((L L) (L (L L)))))",
    22: "(L ((L L) (((L L) (L L)) ((L L) (L L)))))",
}

TREES: dict[int, FullBinaryTree] = {k: parse_tree(v) for k, v in _TREE_TEXT.items()}
