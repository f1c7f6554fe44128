"""Graded face posets and the abstract-polytope test battery.

A FacePoset stores closed faces with their dimensions and the covering
relation (dimension difference exactly one).  It is the shared carrier for
the three polytope families in this package.  The empty face of dimension
-1 is adjoined only while checking polytope axioms, never stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    id: int
    dim: int
    payload: object


class FacePoset:
    """Immutable graded poset of closed faces.

    elements: list of (id, dimension, payload); ids must be 0..n-1.
    covers: pairs (lower id, upper id) with dim(upper) = dim(lower) + 1.
    There must be a unique maximal element (the top cell).
    """

    def __init__(self, elements, covers):
        faces = [Face(i, d, p) for (i, d, p) in elements]
        ids = [f.id for f in faces]
        if ids != list(range(len(faces))):
            raise PosetError("face ids must be 0..n-1 in order")
        self.faces = tuple(faces)
        self._dim_of = {f.id: f.dim for f in faces}
        cov = []
        for lo, hi in covers:
            if lo not in self._dim_of or hi not in self._dim_of:
                raise PosetError(f"cover ({lo},{hi}) references unknown face")
            if self._dim_of[hi] - self._dim_of[lo] != 1:
                raise PosetError(
                    f"cover ({lo},{hi}) has dimension step "
                    f"{self._dim_of[hi] - self._dim_of[lo]}, expected 1"
                )
            cov.append((lo, hi))
        self.covers = tuple(sorted(set(cov)))
        self.up = {f.id: [] for f in faces}
        self.down = {f.id: [] for f in faces}
        for lo, hi in self.covers:
            self.up[lo].append(hi)
            self.down[hi].append(lo)
        for k in self.up:
            self.up[k] = sorted(self.up[k])
            self.down[k] = sorted(self.down[k])
        maxima = [f.id for f in faces if not self.up[f.id]]
        if len(maxima) != 1:
            raise PosetError(f"expected a unique maximal face, found {len(maxima)}")
        self.top = maxima[0]
        self.dimension = self._dim_of[self.top]
        self._leq = None

    # ---------- order ----------

    def dim(self, i: int) -> int:
        return self._dim_of[i]

    def _closure(self):
        """leq[i] = frozenset of ids j with j <= i (downward closure)."""
        if self._leq is not None:
            return self._leq
        order = sorted(self.faces, key=lambda f: f.dim)
        leq = {}
        for f in order:
            s = {f.id}
            for lo in self.down[f.id]:
                s |= leq[lo]
            leq[f.id] = frozenset(s)
        self._leq = leq
        return leq

    def leq(self, a: int, b: int) -> bool:
        """True when face a lies in the closure of face b."""
        return a in self._closure()[b]

    def below(self, b: int):
        return sorted(self._closure()[b])

    # ---------- counting ----------

    def f_vector(self):
        counts = [0] * (self.dimension + 1)
        for f in self.faces:
            counts[f.dim] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    # ---------- abstract polytope battery ----------

    def check_graded(self) -> bool:
        # covers already have dimension step one; gradedness then reduces to
        # every minimal face being a vertex
        return all(self.down[f.id] or f.dim == 0 for f in self.faces)

    def _aug_down(self):
        """Covers of the augmented poset: adjoin bottom -1 below vertices."""
        down = {i: list(self.down[i]) for i in self._dim_of}
        bot = -1
        down[bot] = []
        for f in self.faces:
            if f.dim == 0:
                down[f.id] = [bot]
        return down

    def _aug_up(self):
        up = {i: list(self.up[i]) for i in self._dim_of}
        up[-1] = sorted(f.id for f in self.faces if f.dim == 0)
        return up

    def check_diamond(self) -> bool:
        """Every rank-2 interval of the augmented poset has exactly 2 middles."""
        down = self._aug_down()
        up = self._aug_up()
        nodes = [-1] + [f.id for f in self.faces]
        for x in nodes:
            for m1 in up[x]:
                for z in up[m1]:
                    middles = [m for m in down[z] if x in down[m]]
                    if len(middles) != 2:
                        return False
        return True

    def flags(self, cap=None):
        """Maximal chains of the augmented poset, bottom element excluded.

        Returns None when more than ``cap`` flags exist.
        """
        return self._chains_of(set(self._dim_of), cap)

    def _chains_of(self, members, cap=None):
        """Maximal chains of the cover graph restricted to ``members``."""
        members = set(members)
        up = {m: sorted(h for h in self.up[m] if h in members) for m in members}
        starts = sorted(
            m for m in members if not any(l in members for l in self.down[m])
        )
        out = []
        chain = []
        overflow = []

        def walk(m):
            if overflow:
                return
            chain.append(m)
            nxt = up[m]
            if not nxt:
                out.append(tuple(chain))
                if cap is not None and len(out) > cap:
                    overflow.append(True)
            else:
                for y in nxt:
                    walk(y)
            chain.pop()

        for s in starts:
            walk(s)
            if overflow:
                return None
        return out

    def check_flag_connected(self, strong_cap: int = 10**4) -> bool:
        """Connectivity of the flag-adjacency graph.

        With at most ``strong_cap`` flags the strong version is checked
        (every section of rank >= 3 of the augmented poset is itself
        flag-connected); beyond the cap, plain flag-connectivity only.
        """
        fl = self.flags(cap=strong_cap)
        if fl is None:
            return self._component_count(self.flags()) == 1
        if self._component_count(fl) != 1:
            return False
        closure = self._closure()
        all_ids = [f.id for f in self.faces]
        # sections [x, z]: open intervals of the augmented poset; x = -1 means
        # the adjoined bottom.  Rank <= 2 sections are trivially connected.
        for z in all_ids:
            zdim = self._dim_of[z]
            for x in [-1] + sorted(closure[z] - {z}):
                xdim = -1 if x == -1 else self._dim_of[x]
                if zdim - xdim < 3:
                    continue
                members = {
                    m
                    for m in closure[z]
                    if m != z and (x == -1 or (m != x and x in closure[m]))
                }
                section = self._chains_of(members, cap=strong_cap)
                if section is None:
                    continue  # cap policy: skip oversized sections
                if self._component_count(section) != 1:
                    return False
        return True

    @staticmethod
    def _component_count(flag_list) -> int:
        if not flag_list:
            return 1
        index = {f: i for i, f in enumerate(flag_list)}
        parent = list(range(len(flag_list)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        by_key = {}
        for f in flag_list:
            for i in range(len(f)):
                key = (i, f[:i] + f[i + 1 :])
                by_key.setdefault(key, []).append(index[f])
        for group in by_key.values():
            for other in group[1:]:
                union(group[0], other)
        return len({find(i) for i in range(len(flag_list))})

    def check_abstract_polytope(self, strong_cap: int = 10**4) -> dict:
        return {
            "graded": self.check_graded(),
            "diamond": self.check_diamond(),
            "flag_connected": self.check_flag_connected(strong_cap=strong_cap),
        }

    # ---------- export ----------

    def _sorted_ids(self):
        return [f.id for f in sorted(self.faces, key=lambda f: (f.dim, f.id))]

    def to_json_dict(self, payload_render=str) -> dict:
        return {
            "dimension": self.dimension,
            "faces": [
                {"id": f.id, "dim": f.dim, "payload": payload_render(f.payload)}
                for f in sorted(self.faces, key=lambda f: (f.dim, f.id))
            ],
            "covers": [list(c) for c in self.covers],
        }

    def export_hasse(self, format: str = "json", payload_render=str) -> bytes:
        if format == "json":
            return (
                json.dumps(self.to_json_dict(payload_render), sort_keys=True) + "\n"
            ).encode()
        if format == "dot":
            lines = ["digraph facelattice {"]
            for fid in self._sorted_ids():
                f = self.faces[fid]
                label = payload_render(f.payload).replace('"', "'")
                lines.append(f'  n{f.id} [label="{label}"];')
            for lo, hi in self.covers:
                lines.append(f"  n{lo} -> n{hi};")
            lines.append("}")
            return ("\n".join(lines) + "\n").encode()
        raise PosetError(f"unknown export format {format!r}")


def face_poset_from_json(d: dict) -> FacePoset:
    elements = [(f["id"], f["dim"], f["payload"]) for f in d["faces"]]
    elements.sort(key=lambda t: t[0])
    return FacePoset(elements, [tuple(c) for c in d["covers"]])
