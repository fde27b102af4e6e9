"""Ordered rooted forests, operator words and their digraphs."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .errors import MalformedForest, NoSuchEdge, ParseError

Word = tuple  # tuple of (i, j) pairs, printed left to right, applied right to left

CLASSES = ("all", "ninc", "inc", "aug-ninc", "aug-inc")


# -- words -----------------------------------------------------------------

_WORD_RE = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_word(text: str) -> Word:
    s = text.strip()
    if s in ("", "id", "1", "[]"):
        return ()
    pairs = []
    pos = 0
    for m in _WORD_RE.finditer(s):
        if s[pos : m.start()].strip(" *"):
            raise ParseError(f"unexpected text {s[pos:m.start()]!r} in word {text!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    if s[pos:].strip() or not pairs:
        raise ParseError(f"cannot parse word {text!r}")
    return tuple(pairs)


def format_word(word: Sequence) -> str:
    if not word:
        return "id"
    return "".join(f"[{i},{j}]" for i, j in word)


# -- trees -----------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    root: int
    children: tuple = ()

    def vertices(self) -> list[int]:
        out = [self.root]
        for c in self.children:
            out.extend(c.vertices())
        return out

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for c in self.children:
            out.append((c.root, self.root))
            out.extend(c.edges())
        return out

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_text(self) -> str:
        if not self.children:
            return f"({self.root})"
        return f"({self.root} " + " ".join(c.to_text() for c in self.children) + ")"

    def to_json(self) -> dict:
        return {"root": self.root, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, obj) -> "Tree":
        try:
            return cls(int(obj["root"]), tuple(cls.from_json(c) for c in obj.get("children", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad tree JSON: {exc}") from exc

    def level_word(self) -> Word:
        out = []
        level = [self]
        while level:
            nxt = []
            for t in level:
                for c in t.children:
                    out.append((c.root, t.root))
                    nxt.append(c)
            level = nxt
        return tuple(out)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Forest:
    trees: tuple

    def __post_init__(self):
        seen = set()
        for t in self.trees:
            for v in t.vertices():
                if v in seen:
                    raise MalformedForest(f"vertex {v} occurs twice")
                if v < 1:
                    raise MalformedForest(f"vertex labels must be positive, got {v}")
                seen.add(v)
        object.__setattr__(self, "trees", tuple(sorted(self.trees, key=lambda t: t.root)))

    @classmethod
    def of(cls, *trees: Tree) -> "Forest":
        return cls(tuple(trees))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Forest":
        """Build from ``(child, parent)`` pairs; sibling order follows the edge list."""
        kids: dict[int, list[int]] = {}
        parent: dict[int, int] = {}
        verts = set(vertices)
        for c, p in edges:
            if c in parent:
                raise MalformedForest(f"vertex {c} has two parents")
            if c == p:
                raise MalformedForest(f"loop at {c}")
            parent[c] = p
            kids.setdefault(p, []).append(c)
            verts.update((c, p))
        roots = sorted(v for v in verts if v not in parent)
        seen: set[int] = set()

        def build(v):
            if v in seen:
                raise MalformedForest("cycle")
            seen.add(v)
            return Tree(v, tuple(build(c) for c in kids.get(v, ())))

        f = cls(tuple(build(r) for r in roots))
        if len(seen) != len(verts):
            raise MalformedForest("cycle")
        return f

    def vertices(self) -> list[int]:
        return sorted(v for t in self.trees for v in t.vertices())

    def roots(self) -> list[int]:
        return [t.root for t in self.trees]

    def edges(self) -> list[tuple[int, int]]:
        return [e for t in self.trees for e in t.edges()]

    def num_edges(self) -> int:
        return sum(t.size() - 1 for t in self.trees)

    def parent_map(self) -> dict[int, int]:
        return {c: p for c, p in self.edges()}

    def children_of(self, v: int) -> tuple:
        def find(t):
            if t.root == v:
                return t
            for c in t.children:
                r = find(c)
                if r is not None:
                    return r
            return None

        for t in self.trees:
            r = find(t)
            if r is not None:
                return tuple(c.root for c in r.children)
        raise KeyError(v)

    def blocks(self) -> list[frozenset]:
        """Vertex sets of the trees, ordered by their minima."""
        return sorted((frozenset(t.vertices()) for t in self.trees), key=min)

    def roots_by_block(self) -> list[int]:
        return [t.root for t in sorted(self.trees, key=lambda t: min(t.vertices()))]

    def to_text(self) -> str:
        return " ".join(t.to_text() for t in self.trees)

    def to_json(self) -> list:
        return [t.to_json() for t in self.trees]

    def __str__(self):
        return self.to_text()

    def with_vertices(self, verts: Iterable[int]) -> "Forest":
        have = set(self.vertices())
        extra = [Tree(v) for v in verts if v not in have]
        return Forest(self.trees + tuple(extra))


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|-?\d+)")


def parse_forest(text: str) -> Forest:
    s = text.strip()
    if s.startswith("[") or s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad forest JSON: {exc}") from exc
        if isinstance(obj, dict):
            obj = [obj]
        return Forest(tuple(Tree.from_json(o) for o in obj))
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    idx = 0

    def tree():
        nonlocal idx
        if idx >= len(tokens) or tokens[idx] != "(":
            raise ParseError(f"expected '(' in {text!r}")
        idx += 1
        if idx >= len(tokens) or tokens[idx] in "()":
            raise ParseError(f"expected a vertex label in {text!r}")
        root = int(tokens[idx])
        idx += 1
        kids = []
        while idx < len(tokens) and tokens[idx] == "(":
            kids.append(tree())
        if idx >= len(tokens) or tokens[idx] != ")":
            raise ParseError(f"unbalanced parentheses in {text!r}")
        idx += 1
        return Tree(root, tuple(kids))

    trees = []
    while idx < len(tokens):
        trees.append(tree())
    return Forest(tuple(trees))


# -- words <-> forests -------------------------------------------------------


def forest_of_word(word: Sequence, n: int | None = None) -> Forest | None:
    """The ordered digraph of ``word``, or None when the word acts as zero.

    Commutators are applied right to left.  A word is zero when some
    ``[i, j]`` has ``i == j``, or ``x_i`` or ``x_j`` was already eliminated.
    Siblings are drawn left to right in the order they appear in the word.
    """
    kids: dict[int, list[int]] = {}
    gone: set[int] = set()
    verts: set[int] = set()
    for i, j in reversed(tuple(word)):
        if i == j or i in gone or j in gone:
            return None
        gone.add(i)
        kids.setdefault(j, []).insert(0, i)
        verts.update((i, j))
    if n is not None:
        verts.update(range(1, n + 1))
    roots = sorted(v for v in verts if v not in gone)

    def build(v):
        return Tree(v, tuple(build(c) for c in kids.get(v, ())))

    return Forest(tuple(build(r) for r in roots))


def forest_realization(D: Forest) -> Word:
    out: list = []
    for t in D.trees:
        out.extend(t.level_word())
    return tuple(out)


def forest_contract(D: Forest, edge: tuple[int, int]) -> Forest:
    i, j = edge
    if D.parent_map().get(i) != j:
        raise NoSuchEdge(f"{i}->{j} is not an edge")

    def walk(t: Tree) -> Tree:
        kids = []
        for c in t.children:
            if t.root == j and c.root == i:
                kids.extend(walk(g) for g in c.children)
            else:
                kids.append(walk(c))
        return Tree(t.root, tuple(kids))

    return Forest(tuple(walk(t) for t in D.trees))


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class ForestClass:
    increasing: bool
    nearly_increasing: bool
    augmented: bool

    @property
    def augmented_increasing(self) -> bool:
        return self.augmented and self.increasing

    @property
    def augmented_nearly_increasing(self) -> bool:
        return self.augmented and self.nearly_increasing

    def flags(self) -> list[str]:
        out = ["ordered-rooted"]
        if self.increasing:
            out.append("increasing")
        if self.nearly_increasing:
            out.append("nearly-increasing")
        if self.augmented_increasing:
            out.append("augmented-increasing")
        if self.augmented_nearly_increasing:
            out.append("augmented-nearly-increasing")
        return out

    def matches(self, cls: str) -> bool:
        return {
            "all": True,
            "inc": self.increasing,
            "ninc": self.nearly_increasing,
            "aug-inc": self.augmented_increasing,
            "aug-ninc": self.augmented_nearly_increasing,
        }[cls]


def forest_classify(D: Forest) -> ForestClass:
    roots = set(D.roots())
    inc = all(c > p for c, p in D.edges())
    ninc = all(c > p for c, p in D.edges() if p not in roots)
    aug = True
    stack = list(D.trees)
    while stack:
        t = stack.pop()
        labels = [c.root for c in t.children]
        if labels != sorted(labels):
            aug = False
            break
        stack.extend(t.children)
    return ForestClass(inc, ninc, aug)


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])


def inv_at_root(T: Tree) -> int:
    """Inversions of the root's children read left to right."""
    return inversions([c.root for c in T.children])


# -- enumeration ---------------------------------------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1 :]


def partitions_with_roots(n: int, blocks: int) -> Iterator[tuple[list[frozenset], list[int]]]:
    for part in set_partitions(range(1, n + 1)):
        if len(part) != blocks:
            continue
        bl = sorted((frozenset(b) for b in part), key=min)
        for roots in product(*[sorted(b) for b in bl]):
            yield bl, list(roots)


@lru_cache(maxsize=None)
def _trees(verts: frozenset, root: int, at_root: bool, cls: str) -> tuple:
    rest = sorted(verts - {root})
    if not rest:
        return (Tree(root),)
    aug = cls.startswith("aug")
    base = cls[4:] if aug else cls
    free = base == "all" or (base == "ninc" and at_root)
    out = []
    for part in set_partitions(rest):
        choices = []
        for block in part:
            ok = [c for c in sorted(block) if free or c > root]
            if not ok:
                break
            choices.append([(c, frozenset(block)) for c in ok])
        else:
            for pick in product(*choices):
                subs = [_trees(b, c, False, cls) for c, b in pick]
                for combo in product(*subs):
                    if aug:
                        out.append(Tree(root, tuple(sorted(combo, key=lambda t: t.root))))
                    else:
                        for perm in permutations(combo):
                            out.append(Tree(root, perm))
    return tuple(out)


def trees_on(verts: Iterable[int], root: int, cls: str = "aug-inc") -> list[Tree]:
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    return sorted(_trees(frozenset(verts), root, True, cls), key=Tree.to_text)


def enumerate_forests(n: int, s: int | None = None, cls: str = "aug-ninc", *,
                      blocks: Sequence | None = None, roots: Sequence[int] | None = None) -> list[Forest]:
    """All forests of the class on {1..n} with ``s`` edges, sorted by text.

    Passing ``blocks`` and ``roots`` restricts to one partition with roots.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if blocks is not None:
        if roots is None or len(roots) != len(blocks):
            raise ValueError("need one root per block")
        specs = [([frozenset(b) for b in blocks], list(roots))]
    else:
        if s is None or s < 0 or s > n - 1:
            return []
        specs = partitions_with_roots(n, n - s)
    out = []
    for bl, rts in specs:
        for r, b in zip(rts, bl):
            if r not in b:
                raise ValueError(f"root {r} not in block {sorted(b)}")
        per = [_trees(b, r, True, cls) for b, r in zip(bl, rts)]
        for combo in product(*per):
            out.append(Forest(tuple(combo)))
    out.sort(key=Forest.to_text)
    return out


def basis_forests(n: int, s: int) -> list[Forest]:
    """Forests indexing the basis of the degree-``s`` part."""
    if s < 0 or s > n - 1:
        return []
    if s == n - 1:
        return enumerate_forests(n, s, "aug-inc")
    return enumerate_forests(n, s, "aug-ninc")
