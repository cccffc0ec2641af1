"""Registry of named metrics shared by treebank processing and baselines.

Each feature is identified by a stable string key used both in CSV headers
and on the command line.  Features evaluate against a (tree, arrangement)
context that caches shared intermediate results, so requesting many features
for the same sentence does not recompute crossings or flux repeatedly.
Features that are undefined for a sentence (e.g. hubiness below n = 4)
evaluate to None.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from . import linarr, properties
from .errors import UnknownMetricError
from .trees import Arrangement, FreeTree, RootedTree

Tree = Union[FreeTree, RootedTree]


class FeatureContext:
    """Lazy cache of per-sentence intermediates."""

    def __init__(self, tree: Tree, arrangement: Optional[Arrangement] = None):
        self.tree = tree
        self.arrangement = arrangement
        self._cache: dict[str, object] = {}

    @property
    def rooted(self) -> RootedTree:
        if not isinstance(self.tree, RootedTree):
            raise TypeError("feature requires a rooted tree")
        return self.tree

    @property
    def flags(self) -> linarr.ArrangementFlags:
        if "flags" not in self._cache:
            self._cache["flags"] = linarr.classify_arrangement(self.rooted, self.arrangement)
        return self._cache["flags"]

    @property
    def flux(self) -> Optional[linarr.FluxProfile]:
        if "flux" not in self._cache:
            self._cache["flux"] = (
                linarr.flux(self.tree, self.arrangement) if self.tree.n >= 2 else None)
        return self._cache["flux"]

    @property
    def shape(self) -> properties.TreeShapeFlags:
        if "shape" not in self._cache:
            self._cache["shape"] = properties.tree_shape(self.tree)
        return self._cache["shape"]


@dataclass(frozen=True)
class Feature:
    name: str
    func: Callable[[FeatureContext], object]
    order_dependent: bool = False
    requires_rooted: bool = False
    expensive: bool = False


REGISTRY: dict[str, Feature] = {}


def _register(name, func, **kw):
    REGISTRY[name] = Feature(name, func, **kw)


def _guard_edges(f):
    return lambda ctx: f(ctx) if ctx.tree.n >= 2 else None


_register("n", lambda ctx: ctx.tree.n)
_register("D", lambda ctx: linarr.sum_edge_lengths(ctx.tree, ctx.arrangement),
          order_dependent=True)
_register("C", lambda ctx: linarr.num_crossings(ctx.tree, ctx.arrangement),
          order_dependent=True)
_register("projective", lambda ctx: int(ctx.flags.projective),
          order_dependent=True, requires_rooted=True)
_register("planar", lambda ctx: int(ctx.flags.planar),
          order_dependent=True, requires_rooted=True)
_register("one_ec", lambda ctx: int(ctx.flags.one_endpoint_crossing),
          order_dependent=True, requires_rooted=True)
_register("head_initial_ratio",
          _guard_edges(lambda ctx: linarr.head_initial_ratio(ctx.rooted, ctx.arrangement)),
          order_dependent=True, requires_rooted=True)
_register("flux_max_size",
          _guard_edges(lambda ctx: ctx.flux.max_size), order_dependent=True)
_register("flux_max_weight",
          _guard_edges(lambda ctx: ctx.flux.max_weight), order_dependent=True)
_register("flux_mean_size",
          _guard_edges(lambda ctx: Fraction(ctx.flux.total_size, ctx.tree.n - 1)),
          order_dependent=True)
_register("MHD",
          _guard_edges(lambda ctx: properties.mean_hierarchical_distance(ctx.rooted)),
          requires_rooted=True)
_register("hubiness",
          lambda ctx: properties.hubiness(ctx.tree) if ctx.tree.n >= 4 else None)
_register("Q", lambda ctx: properties.num_independent_edge_pairs(ctx.tree))
_register("k2", lambda ctx: properties.degree_moment(ctx.tree, 2))
_register("expected_D",
          _guard_edges(lambda ctx: properties.expected_D_unconstrained(ctx.tree)))
_register("expected_C",
          _guard_edges(lambda ctx: properties.expected_C_unconstrained(ctx.tree)))
for _flag in ("linear", "star", "quasistar", "bistar", "caterpillar", "spider"):
    _register(_flag,
              (lambda fl: lambda ctx: int(getattr(ctx.shape, fl)))(_flag))
_register("D_min_projective",
          lambda ctx: linarr.min_D_projective(ctx.rooted).value, requires_rooted=True)
_register("D_min_planar", lambda ctx: linarr.min_D_planar(ctx.tree).value,
          expensive=True)
_register("D_min_unconstrained",
          lambda ctx: linarr.min_D_unconstrained(ctx.tree).value, expensive=True)


def default_features() -> list[str]:
    """All registered features except the expensive opt-in ones."""
    return [name for name, f in REGISTRY.items() if not f.expensive]


def resolve(names) -> list[Feature]:
    out = []
    for name in names:
        if name not in REGISTRY:
            raise UnknownMetricError(
                f"unknown feature {name!r}; registered: {', '.join(sorted(REGISTRY))}")
        out.append(REGISTRY[name])
    return out


def evaluate(name: str, tree: Tree, arrangement: Optional[Arrangement] = None):
    (feature,) = resolve([name])
    return feature.func(FeatureContext(tree, arrangement))
