"""Tree isomorphism via canonical codes.

The canonical code of a rooted tree is built bottom-up: a leaf is "()"; an
internal vertex's code is "(" + the lexicographically sorted concatenation of
its children's codes + ")".  The alphabet is exactly the two characters "("
and ")" and the ordering is plain string comparison; codes are stable across
versions and may be persisted for deduplication.  Free trees are canonicalized
by rooting at their centre (taking the lexicographically smaller code when the
centre has two vertices).
"""

from __future__ import annotations

from typing import Union

from .properties import centre
from .trees import FreeTree, RootedTree

Tree = Union[FreeTree, RootedTree]


def canonical_code(t: RootedTree) -> str:
    n = t.n
    code = [""] * (n + 1)
    topo = [t.root]
    for v in topo:
        topo.extend(t.children[v])
    for v in reversed(topo):
        kids = t.children[v]
        if kids:
            code[v] = "(" + "".join(sorted(code[c] for c in kids)) + ")"
        else:
            code[v] = "()"
    return code[t.root]


def free_canonical_code(t: Tree) -> str:
    free = t.to_free() if isinstance(t, RootedTree) else t
    return min(canonical_code(RootedTree.root_at(free, c)) for c in centre(free))


def are_isomorphic(a: Tree, b: Tree, mode: str = "free") -> bool:
    if a.n != b.n:
        return False
    if mode == "rooted":
        if not (isinstance(a, RootedTree) and isinstance(b, RootedTree)):
            raise TypeError("rooted mode requires two RootedTrees")
        return canonical_code(a) == canonical_code(b)
    if mode == "free":
        return free_canonical_code(a) == free_canonical_code(b)
    raise ValueError(f"unknown isomorphism mode: {mode!r}")
