"""Operator words, their action, rewriting to the forest basis and dual functionals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ctops import ct_pole
from .errors import MixedDegrees, NotAForest, OutOfRange
from .forest import (
    Forest,
    Tree,
    basis_forests,
    forest_classify,
    forest_of_word,
    forest_realization,
    format_word,
    parse_word,
)
from .laurent import LaurentPoly
from .typea import ZERO, TypeARational, from_epsilon, normalize, ta_full_ct

_MAX_STEPS = 100_000


# -- combinations ------------------------------------------------------------


class OperatorCombo:
    """Finite rational combination of operator words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for w, c in items:
            if isinstance(w, str):
                w = parse_word(w)
            w = tuple(tuple(p) for p in w)
            for i, j in w:
                if i == j:
                    raise ValueError(f"commutator [{i},{j}] needs distinct indices")
            acc[w] = acc.get(w, 0) + Fraction(c)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w, c=1) -> "OperatorCombo":
        return cls({w if not isinstance(w, str) else parse_word(w): c})

    @classmethod
    def identity(cls) -> "OperatorCombo":
        return cls({(): 1})

    def __add__(self, other: "OperatorCombo") -> "OperatorCombo":
        return OperatorCombo(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return OperatorCombo({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OperatorCombo):
            # composition: self after other
            out = []
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out.append((w1 + w2, c1 * c2))
            return OperatorCombo(out)
        return OperatorCombo({w: c * Fraction(other) for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OperatorCombo) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def by_degree(self) -> dict[int, "OperatorCombo"]:
        out: dict[int, dict] = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), {})[w] = c
        return {s: OperatorCombo(t) for s, t in sorted(out.items())}

    def max_index(self) -> int:
        return max((max(p) for w in self.terms for p in w), default=1)

    def to_json(self) -> list:
        return [{"coeff": _frac_text(c), "word": format_word(w)} for w, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj) -> "OperatorCombo":
        return cls([(item["word"], Fraction(str(item.get("coeff", "1")))) for item in obj])

    def __repr__(self):
        return f"OperatorCombo({self.to_json()!r})"


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- action ------------------------------------------------------------------


def word_apply(word: Sequence, F: TypeARational) -> TypeARational:
    """Apply commutators right to left; a word that repeats a head acts as 0."""
    word = tuple(word)
    for i, j in word:
        if i == j:
            raise ValueError(f"commutator [{i},{j}] needs distinct indices")
    if forest_of_word(word) is None:
        return ZERO
    for i, j in reversed(word):
        F = ct_pole(F, i, j)
        if F.is_zero():
            return ZERO
    return F


def combo_apply(combo: OperatorCombo, F: TypeARational) -> TypeARational:
    total = ZERO
    for w, c in combo.terms.items():
        total = total + word_apply(w, F) * c
    return total


def epsilon_action(word: Sequence, P: LaurentPoly, edges: Iterable[tuple[int, int]]):
    """``word (P eps(D))`` for a Laurent monomial ``P`` via edge contraction.

    Returns ``(sign, P', edges')`` describing ``sign * P' * eps(D')``, or None
    for zero.  An edge ``i->j`` gives ``P|_{x_i=x_j}``; an edge ``j->i`` gives
    the same with a minus sign and ``j`` taking over the place of ``i``.
    """
    parent = {c: p for c, p in edges}
    sign = 1
    for i, j in reversed(tuple(word)):
        if parent.get(i) == j:
            del parent[i]
        elif parent.get(j) == i:
            sign = -sign
            del parent[j]
            if i in parent:
                parent[j] = parent.pop(i)
        else:
            return None
        for c, p in list(parent.items()):
            if p == i:
                parent[c] = j
        P = P.substitute(i, 1, j)
    return sign, P, list(parent.items())


# -- rewriting ---------------------------------------------------------------


def _canonical(word) -> Word:
    F = forest_of_word(word)
    if F is None:
        raise NotAForest(f"{format_word(word)} acts as zero")
    return forest_realization(F)


Word = tuple


def _exchange(word: list, pos_jk: int, pos_ij: int) -> list:
    """``[j,k] L [i,j] -> [i,k] L|_{j=i} [j,i]`` (the caller tracks the sign)."""
    j, k = word[pos_jk]
    i, j2 = word[pos_ij]
    assert j == j2 and pos_jk < pos_ij
    mid = [(i if a == j else a, i if b == j else b) for a, b in word[pos_jk + 1 : pos_ij]]
    return word[:pos_jk] + [(i, k)] + mid + [(j, i)] + word[pos_ij + 1 :]


def rewrite_to_nearly_increasing(word: Sequence) -> tuple[int, Word]:
    """Signed nearly increasing word acting like ``word``.

    Repeatedly takes the rightmost edge ``a -> b`` with ``a < b`` whose head
    ``b`` is not a root, and applies the general exchange with ``b``'s own
    out-edge.
    """
    cur = list(_canonical(word))
    sign = 1
    for _ in range(_MAX_STEPS):
        F = forest_of_word(cur)
        roots = set(F.roots())
        bad = None
        for pos in range(len(cur) - 1, -1, -1):
            a, b = cur[pos]
            if a < b and b not in roots:
                bad = pos
                break
        if bad is None:
            return sign, tuple(cur)
        b = cur[bad][1]
        up = next(p for p in range(bad) if cur[p][0] == b)
        cur = list(_canonical(_exchange(cur, up, bad)))
        sign = -sign
    raise RuntimeError("rewrite did not terminate")


def rewrite_to_increasing(word: Sequence, n: int | None = None) -> tuple[int, Word]:
    """Signed increasing tree word for a word of top degree ``n - 1``.

    First moves vertex 1 to the root, using the general exchange and the
    two-variable antisymmetry ``[i,j] = -[j,i]`` on the last commutator.
    """
    F = forest_of_word(word, n)
    if F is None:
        raise NotAForest(f"{format_word(word)} acts as zero")
    n = n or max(F.vertices())
    if len(F.trees) != 1 or len(word) != n - 1:
        raise ValueError("increasing normal form needs a spanning tree")
    cur = list(forest_realization(F))
    sign = 1
    for _ in range(_MAX_STEPS):
        F = forest_of_word(cur)
        root = F.roots()[0]
        if root == 1:
            break
        parent = F.parent_map()
        p = parent[1]
        pos1 = cur.index((1, p))
        if p != root:
            up = cur.index((p, parent[p]))
            cur = _exchange(cur, up, pos1)
        elif pos1 == 0:
            cur[0] = (p, 1)
        else:
            u = cur[0][0]
            cur[0] = (p, u)
            cur = _exchange(cur, 0, cur.index((1, p)))
            cur[0] = (u, 1)
        # each branch is net one sign change
        sign = -sign
        cur = list(_canonical(cur))
    s2, out = rewrite_to_nearly_increasing(cur)
    return sign * s2, out


# -- expansion into the basis ------------------------------------------------


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def linearize(T: Tree) -> tuple:
    """Expand a nearly increasing tree into augmented ones: ``((tree, coeff), ...)``.

    Children subtrees are expanded first.  At the root the rightmost adjacent
    descent ``b > a`` is removed with ``[b,r][a,r] = [a,r][b,r] + [a,r][b,a]``.
    """
    kid_exp = [linearize(c) for c in T.children]
    combos: dict = {(): Fraction(1)}
    for exp in kid_exp:
        nxt: dict = {}
        for kids, c in combos.items():
            for t, c2 in exp:
                _add_into(nxt, kids + (t,), c * c2)
        combos = nxt
    out: dict = {}
    for kids, c in combos.items():
        for t, c2 in _sort_root(T.root, kids):
            _add_into(out, t, c * c2)
    return tuple(sorted(out.items(), key=lambda kv: kv[0].to_text()))


@lru_cache(maxsize=None)
def _sort_root(root: int, kids: tuple) -> tuple:
    labels = [k.root for k in kids]
    pos = None
    for p in range(len(labels) - 2, -1, -1):
        if labels[p] > labels[p + 1]:
            pos = p
            break
    if pos is None:
        return ((Tree(root, kids), Fraction(1)),)
    b, a = kids[pos], kids[pos + 1]
    out: dict = {}
    swapped = kids[:pos] + (a, b) + kids[pos + 2 :]
    for t, c in _sort_root(root, swapped):
        _add_into(out, t, c)
    merged = Tree(a.root, (b,) + a.children)
    for sub, c in linearize(merged):
        for t, c2 in _sort_root(root, kids[:pos] + (sub,) + kids[pos + 2 :]):
            _add_into(out, t, c * c2)
    return tuple(out.items())


@dataclass(frozen=True)
class BasisExpansion:
    n: int
    degree: int
    coefficients: dict  # Forest -> Fraction

    def to_combo(self) -> OperatorCombo:
        return OperatorCombo([(forest_realization(D), c) for D, c in self.coefficients.items()])

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].to_text())

    def to_json(self) -> list:
        return [
            {"coeff": _frac_text(c), "forest": D.to_text(), "word": format_word(forest_realization(D))}
            for D, c in self.items()
        ]

    def __eq__(self, other):
        return (
            isinstance(other, BasisExpansion)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )


def _word_n(word, n):
    if n is None:
        n = max((max(p) for p in word), default=1)
    return n


def expand_in_basis(word: Sequence, n: int | None = None) -> BasisExpansion:
    word = tuple(word)
    n = _word_n(word, n)
    s = len(word)
    F = forest_of_word(word, n)
    if F is None:
        return BasisExpansion(n, s, {})
    if s == n - 1:
        sign, w = rewrite_to_increasing(word, n)
    else:
        sign, w = rewrite_to_nearly_increasing(word)
    D = forest_of_word(w, n)
    combos: dict = {(): Fraction(sign)}
    for T in D.trees:
        nxt: dict = {}
        for trees, c in combos.items():
            for t, c2 in linearize(T):
                _add_into(nxt, trees + (t,), c * c2)
        combos = nxt
    out = {Forest(trees): c for trees, c in combos.items()}
    return BasisExpansion(n, s, out)


def expand_combo(combo: OperatorCombo, n: int | None = None) -> dict[int, BasisExpansion]:
    n = n or combo.max_index()
    out: dict[int, dict] = {}
    for w, c in combo.terms.items():
        exp = expand_in_basis(w, n)
        acc = out.setdefault(len(w), {})
        for D, c2 in exp.coefficients.items():
            _add_into(acc, D, c * c2)
    return {s: BasisExpansion(n, s, d) for s, d in sorted(out.items())}


# -- functionals ----------------------------------------------------------------


def root_monomial(D: Forest) -> LaurentPoly:
    """``x_{r_1}^{1-k} x_{r_2} ... x_{r_k}`` with roots ordered by block minima."""
    roots = D.roots_by_block()
    k = len(roots)
    exps = {r: 1 for r in roots[1:]}
    exps[roots[0]] = exps.get(roots[0], 0) + 1 - k
    return LaurentPoly.monomial(exps)


def functional(D: Forest) -> TypeARational:
    return from_epsilon(D) * root_monomial(D)


def _inverse_monomial(m: LaurentPoly) -> LaurentPoly:
    (mm, c), = m.items()
    return LaurentPoly.monomial({v: -e for v, e in mm}, 1 / c)


def extract(value: TypeARational, m: LaurentPoly) -> Fraction:
    """Coefficient of the monomial ``m`` in the iterated expansion of ``value``."""
    return ta_full_ct(value * _inverse_monomial(m))


def orthogonality_eval(Di: Forest, Dj: Forest) -> Fraction:
    """``L(D_i) eps(D_j)`` as a number (its full constant term if not constant)."""
    val = word_apply(forest_realization(Di), from_epsilon(Dj))
    if val.is_constant():
        return val.constant_value()
    return ta_full_ct(val)


def fast_entry(word: Sequence, D: Forest) -> Fraction:
    """Coefficient of ``m_D`` in ``word (m_D eps(D))`` by contraction."""
    m = root_monomial(D)
    res = epsilon_action(word, m, D.edges())
    if res is None:
        return Fraction(0)
    sign, P, edges = res
    val = normalize(P, [(p, c, 1) for c, p in edges]) * sign
    return extract(val, m)


def _homogeneous(combo: OperatorCombo, s: int) -> None:
    degs = combo.degrees()
    if degs and degs != {s}:
        raise MixedDegrees(f"combination has degrees {sorted(degs)}, expected {s}")


def basis_coefficients(combo: OperatorCombo, s: int, n: int | None = None, fast: bool = True) -> BasisExpansion:
    """Coordinates of a degree-``s`` combination from the dual functionals."""
    if isinstance(combo, (tuple, list, str)):
        combo = OperatorCombo.word(combo)
    _homogeneous(combo, s)
    n = n or combo.max_index()
    out: dict = {}
    if not combo:
        return BasisExpansion(n, s, out)
    for D in basis_forests(n, s):
        c = Fraction(0)
        if fast:
            for w, cw in combo.terms.items():
                c += cw * fast_entry(w, D)
        else:
            m = root_monomial(D)
            c = extract(combo_apply(combo, functional(D)), m)
        if c:
            out[D] = c
    return BasisExpansion(n, s, out)


def is_zero_operator(combo: OperatorCombo, n: int | None = None) -> bool:
    n = n or combo.max_index()
    for s, part in combo.by_degree().items():
        live = OperatorCombo({w: c for w, c in part.terms.items() if forest_of_word(w) is not None})
        if not live or s >= n:
            continue
        if basis_coefficients(live, s, n).coefficients:
            return False
    return True


def xi_dimension(n: int, s: int, verify: bool = False) -> int:
    if s < 0:
        raise OutOfRange(f"degree {s} is negative")
    if n < 1:
        raise OutOfRange(f"n = {n} must be positive")
    if s >= n:
        return 0
    B = basis_forests(n, s)
    if verify:
        M = [[fast_entry(forest_realization(D), E) for E in B] for D in B]
        r = rank(M)
        if r != len(B):
            raise AssertionError(f"evaluation matrix has rank {r} < {len(B)}")
    return len(B)


def evaluation_matrix(n: int, degrees: Iterable[int] | None = None, fast: bool = True):
    """Rows: basis words; columns: root-separated functionals; over the given degrees."""
    degs = list(range(n)) if degrees is None else list(degrees)
    B = [D for s in degs for D in basis_forests(n, s)]
    rows = []
    for D in B:
        w = forest_realization(D)
        if fast:
            rows.append([fast_entry(w, E) for E in B])
        else:
            rows.append([extract(word_apply(w, functional(E)), root_monomial(E)) for E in B])
    return B, rows


def rank(M: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    rows = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in r] for r in M]
    if not rows or not rows[0]:
        return 0
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ).rank()


def is_basis_forest(D: Forest, n: int) -> bool:
    cls = forest_classify(D)
    s = D.num_edges()
    if s == n - 1:
        return cls.augmented_increasing
    return cls.augmented_nearly_increasing
