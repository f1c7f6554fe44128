"""Associahedra: bracketings, stable trees, operad composition, boundaries.

A closed face of the (r-2)-dimensional associahedron on r inputs is a set
of nested consecutive intervals of {1..r}, each of size 2..r-1 (reverse
inclusion: fewer brackets = higher dimension).  The equivalent model is a
stable planted planar tree with r ordered leaves; the top cell is the
corolla and each bracket adds one internal vertex.

Faces are canonically keyed by the sorted bracket tuple; trees are the
derived view used for grafting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .poset import FacePoset


class AssociahedronError(ValueError):
    pass


@dataclass(frozen=True)
class Bracketing:
    """A face of K_r: nested consecutive proper intervals of {1..r}."""

    r: int
    brackets: tuple  # sorted tuple of (lo, hi), 1-based inclusive

    def __post_init__(self):
        object.__setattr__(self, "brackets", tuple(sorted(self.brackets)))
        validate_brackets(self.r, self.brackets)

    @property
    def dim(self) -> int:
        return self.r - 2 - len(self.brackets)

    def __str__(self) -> str:
        inner = ",".join(f"[{lo},{hi}]" for lo, hi in self.brackets)
        return f"K{self.r}({inner})"


def validate_brackets(r, brackets):
    if r < 1:
        raise AssociahedronError("r must be >= 1")
    if r == 1:
        if brackets:
            raise AssociahedronError("K_1 has no brackets")
        return
    seen = set()
    for lo, hi in brackets:
        if not (1 <= lo < hi <= r):
            raise AssociahedronError(f"bracket [{lo},{hi}] out of range")
        if hi - lo + 1 > r - 1:
            raise AssociahedronError(f"bracket [{lo},{hi}] is not proper")
        if (lo, hi) in seen:
            raise AssociahedronError(f"duplicate bracket [{lo},{hi}]")
        seen.add((lo, hi))
    for a, b in itertools.combinations(brackets, 2):
        if _crossing(a, b):
            raise AssociahedronError(f"brackets {a} and {b} cross")


def _crossing(a, b):
    (a1, a2), (b1, b2) = a, b
    disjoint = a2 < b1 or b2 < a1
    nested = (a1 <= b1 and b2 <= a2) or (b1 <= a1 and a2 <= b2)
    return not (disjoint or nested)


# The formal unit face of K_1; usable only in operad composition.
UNIT = Bracketing(1, ())


# ---------- tree model ----------
# A stable tree is a nested tuple: a leaf is an int (its 1-based position),
# an internal vertex is a tuple of >= 2 children.


def tree_leaves(tree):
    if isinstance(tree, int):
        return [tree]
    out = []
    for c in tree:
        out.extend(tree_leaves(c))
    return out


def tree_from_bracketing(b: Bracketing):
    """Stable tree with b.r leaves; one internal vertex per bracket + root."""
    if b.r == 1:
        return 1

    def build(lo, hi, available):
        # children partition [lo,hi]: maximal brackets inside, else leaves
        children = []
        i = lo
        while i <= hi:
            best = None
            for blo, bhi in available:
                if blo == i and bhi <= hi and (blo, bhi) != (lo, hi):
                    if best is None or bhi > best:
                        best = bhi
            if best is None:
                children.append(i)
                i += 1
            else:
                sub = [x for x in available if x != (i, best)]
                children.append(build(i, best, sub))
                i = best + 1
        return tuple(children)

    return build(1, b.r, list(b.brackets))


def bracketing_from_tree(tree) -> Bracketing:
    leaves = tree_leaves(tree)
    r = len(leaves)
    if leaves != list(range(1, r + 1)):
        raise AssociahedronError("tree leaves must read 1..r in planar order")
    if r == 1:
        return UNIT
    brackets = []

    def walk(t, is_root):
        if isinstance(t, int):
            return t, t
        if len(t) < 2:
            raise AssociahedronError("unstable tree: vertex with < 2 children")
        lo, hi = None, None
        for c in t:
            clo, chi = walk(c, False)
            lo = clo if lo is None else min(lo, clo)
            hi = chi if hi is None else max(hi, chi)
        if not is_root:
            brackets.append((lo, hi))
        return lo, hi

    walk(tree, True)
    return Bracketing(r, tuple(brackets))


def tree_bracketing_convert(x):
    """Mutually inverse bijections between the two K_r face models."""
    if isinstance(x, Bracketing):
        return tree_from_bracketing(x)
    return bracketing_from_tree(x)


def tree_to_str(tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return "(" + " ".join(tree_to_str(c) for c in tree) + ")"


# ---------- enumeration ----------

def all_bracketings(r: int):
    """All faces of K_r, i.e. all nested families of proper intervals."""
    if r < 2:
        raise AssociahedronError("enumerate_associahedron needs r >= 2")
    intervals = [
        (lo, hi)
        for lo in range(1, r + 1)
        for hi in range(lo + 1, r + 1)
        if hi - lo + 1 <= r - 1
    ]
    out = []

    def backtrack(start, chosen):
        out.append(Bracketing(r, tuple(chosen)))
        for i in range(start, len(intervals)):
            iv = intervals[i]
            if all(not _crossing(iv, c) for c in chosen):
                chosen.append(iv)
                backtrack(i + 1, chosen)
                chosen.pop()

    backtrack(0, [])
    return out


def enumerate_associahedron(r: int) -> FacePoset:
    """Face poset of K_r; dimension of the top cell is r - 2."""
    faces = all_bracketings(r)
    faces.sort(key=lambda b: (b.dim, b.brackets))
    index = {b.brackets: i for i, b in enumerate(faces)}
    covers = []
    for b in faces:
        # faces covering b: remove one bracket
        for br in b.brackets:
            upper = tuple(x for x in b.brackets if x != br)
            covers.append((index[b.brackets], index[upper]))
    elements = [(i, b.dim, b) for i, b in enumerate(faces)]
    return FacePoset(elements, covers)


def catalan(n: int) -> int:
    """Catalan number by the convolution recursion (used as a test oracle)."""
    if n <= 1:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


# ---------- operad structure ----------

def operad_compose(outer: Bracketing, inner) -> Bracketing:
    """Graft the inner faces onto the leaves of the outer face.

    inner is a list of length outer.r of Bracketing values (K_1 units act
    as the identity).  Grafting never creates a vertex of valence 2 since
    every non-unit input is stable.
    """
    inner = list(inner)
    if len(inner) != outer.r:
        raise AssociahedronError(
            f"arity mismatch: outer has {outer.r} inputs, got {len(inner)} faces"
        )
    if outer.r == 1:
        return inner[0]
    otree = tree_from_bracketing(outer)
    itrees = [tree_from_bracketing(b) for b in inner]
    offsets = [0]
    for b in inner:
        offsets.append(offsets[-1] + b.r)

    def relabel(t, off):
        if isinstance(t, int):
            return t + off
        return tuple(relabel(c, off) for c in t)

    def graft(t):
        if isinstance(t, int):
            i = t - 1
            return relabel(itrees[i], offsets[i])
        return tuple(graft(c) for c in t)

    return bracketing_from_tree(graft(otree))


def cellular_boundary(face: Bracketing):
    """F2 cellular boundary: the set of faces covered by the input.

    Returned as a frozenset of Bracketing (a formal F2 sum of the
    codimension one faces of the closed cell).
    """
    if face.r == 1:
        return frozenset()
    intervals = [
        (lo, hi)
        for lo in range(1, face.r + 1)
        for hi in range(lo + 1, face.r + 1)
        if hi - lo + 1 <= face.r - 1
    ]
    out = set()
    for iv in intervals:
        if iv in face.brackets:
            continue
        if all(not _crossing(iv, c) for c in face.brackets):
            out.add(Bracketing(face.r, face.brackets + (iv,)))
    return frozenset(out)


def boundary_of_sum(faces):
    """F2 boundary of a formal sum of faces (symmetric difference)."""
    acc = set()
    for f in faces:
        acc ^= cellular_boundary(f)
    return frozenset(acc)


def compose_sums(outer_sum, inner_sums):
    """Multilinear extension of operad_compose to F2 sums of faces."""
    acc = set()
    for o in outer_sum:
        for combo in itertools.product(*inner_sums):
            acc ^= {operad_compose(o, list(combo))}
    return frozenset(acc)
