"""Planar embeddings assembled from SPQR skeleton embeddings.

Rotations here are edge-id based (``vertex -> [edge id, ...]`` clockwise)
so that bonds and virtual edges are handled uniformly.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Set, Tuple

from .embedding import NonPlanar, planar_embed
from .spqr import SpqrNode, SpqrTree

V = Hashable
E = Tuple[V, V]
Rotation = Dict[V, List[int]]


def other(ends: Tuple[V, V], v: V) -> V:
    return ends[1] if ends[0] == v else ends[0]


def dart_faces(rotation: Mapping[V, Sequence[int]], ends: Mapping[int, E]) -> List[List[Tuple[int, V]]]:
    """Faces of an edge-id rotation system; a dart is (edge id, tail)."""
    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rotation.items()}
    seen: Set[Tuple[int, V]] = set()
    faces = []
    for v, r in rotation.items():
        for e in r:
            if (e, v) in seen:
                continue
            face = []
            eid, tail = e, v
            while (eid, tail) not in seen:
                seen.add((eid, tail))
                face.append((eid, tail))
                head = other(ends[eid], tail)
                rh = rotation[head]
                eid, tail = rh[(pos[head][eid] - 1) % len(rh)], head
            faces.append(face)
    return faces


def is_planar_dart_rotation(rotation: Mapping[V, Sequence[int]], ends: Mapping[int, E]) -> bool:
    """Euler check per connected component (loops are not supported)."""
    faces = dart_faces(rotation, ends)
    face_of = {}
    for i, f in enumerate(faces):
        for d in f:
            face_of[d] = i
    seen: Set[V] = set()
    for s in rotation:
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for e in rotation[x]:
                y = other(ends[e], x)
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        m = sum(len(rotation[x]) for x in comp) // 2
        if m == 0:
            continue
        f = {face_of[(e, x)] for x in comp for e in rotation[x]}
        if len(comp) - m + len(f) != 2:
            return False
    return True


def skeleton_rotation(
    node: SpqrNode,
    flip: bool = False,
    bond_order: Optional[Sequence[int]] = None,
    pole: Optional[V] = None,
) -> Rotation:
    """Planar rotation of one skeleton.

    Rigid skeletons use the planarity tester's embedding; bonds list their
    edges in ``bond_order`` (default: sorted ids) around ``pole`` (default:
    the first end of the first edge).
    """
    edges = node.edges
    if node.kind == "P":
        order = list(bond_order) if bond_order is not None else sorted(edges)
        u, v = edges[order[0]]
        if pole is not None and pole == v:
            u, v = v, u
        rot = {u: order, v: list(reversed(order))}
    elif node.kind == "S" or len(edges) <= 2:
        rot: Rotation = {}
        for i, (u, v) in edges.items():
            rot.setdefault(u, []).append(i)
            rot.setdefault(v, []).append(i)
    else:
        by_pair = {frozenset(e): i for i, e in edges.items()}
        emb = planar_embed(node.vertices, list(edges.values()))
        rot = {x: [by_pair[frozenset((x, y))] for y in r] for x, r in emb.rotation.items()}
    if flip:
        rot = {x: list(reversed(r)) for x, r in rot.items()}
    return rot


def _substitute(host: Rotation, guest: Rotation, vid: int, poles: E) -> None:
    for x, r in guest.items():
        if x in poles:
            i = r.index(vid)
            seq = r[i + 1:] + r[:i]
            h = host[x]
            j = h.index(vid)
            host[x] = h[:j] + seq + h[j + 1:]
        else:
            host[x] = list(r)


def compose(
    tree: SpqrTree,
    skeleton_rot: Callable[[int], Rotation],
) -> Rotation:
    """Glue per-node skeleton rotations along virtual edges into a rotation of
    the whole block (real edge ids only)."""
    order, parent = tree.rooted()
    composed: Dict[int, Rotation] = {}
    for i in reversed(order):
        rot = {x: list(r) for x, r in skeleton_rot(i).items()}
        for vid, j in tree.neighbours(i):
            if parent.get(j, (None,))[0] == i:
                _substitute(rot, composed.pop(j), vid, tree.nodes[i].edges[vid])
        composed[i] = rot
    return composed[order[0]]


def embed_block(tree: SpqrTree, flips: Optional[Mapping[int, bool]] = None) -> Rotation:
    """Reference embedding of a block: every rigid skeleton as returned by the
    planarity tester, optionally mirrored per node."""
    flips = flips or {}
    return compose(tree, lambda i: skeleton_rotation(tree.nodes[i], flips.get(i, False)))


__all__ = [
    "NonPlanar",
    "Rotation",
    "compose",
    "dart_faces",
    "embed_block",
    "is_planar_dart_rotation",
    "skeleton_rotation",
]
