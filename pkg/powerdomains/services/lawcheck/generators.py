"""Seeded instance generators: spaces, weights, functions, maps, closed sets."""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

import networkx as nx
import numpy as np

from powerdomains.core.exceptions import AxiomViolation, Anomaly
from powerdomains.models.extended import INFINITY, ZERO, ExtNonneg
from powerdomains.models.space import ContinuousMap, FiniteSpace, mask_of
from powerdomains.services import hyperspace as hs
from powerdomains.services import probability as pr
from powerdomains.services import valuation as va
from powerdomains.services.lawcheck.config import GenConfig

FUNCTION_VALUES = (ZERO, ExtNonneg(Fraction(1, 2)), ExtNonneg(1), ExtNonneg(2), ExtNonneg(3))


def w_lattice() -> FiniteSpace:
    """The four-element lattice ``0 < x, y < t``."""
    points = ["0", "x", "y", "t"]
    relation = [(p, p) for p in points]
    relation += [("0", "x"), ("0", "y"), ("0", "t"), ("x", "t"), ("y", "t")]
    return FiniteSpace.from_preorder(points, relation, name="W")


def sierpinski() -> FiniteSpace:
    return FiniteSpace.from_preorder(["0", "1"], [("0", "0"), ("1", "1"), ("0", "1")], name="S")


@lru_cache(maxsize=1)
def canned_corpus() -> tuple[FiniteSpace, ...]:
    return (
        FiniteSpace((), (), "empty"),
        FiniteSpace.discrete(["*"], "one"),
        sierpinski(),
        FiniteSpace.discrete(["a", "b"], "discrete2"),
        FiniteSpace.indiscrete(["a", "b"], "indiscrete2"),
        w_lattice(),
        FiniteSpace.chain(3, "chain3"),
        FiniteSpace.chain(4, "chain4"),
    )


@lru_cache(maxsize=8)
def enumerate_topologies(n: int) -> tuple[FiniteSpace, ...]:
    """Every labelled topology on ``n`` points (1, 1, 4, 29, 355, ...)."""
    points = [str(i) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = []
    for chosen in cartesian((False, True), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), keep in zip(pairs, chosen, strict=True):
            if keep:
                up[i] |= 1 << j
        if all(up[j] & ~up[i] == 0 for i in range(n) for j in range(n) if (up[i] >> j) & 1):
            found.append(FiniteSpace(tuple(points), tuple(up)))
    return tuple(found)


def random_space(rng: np.random.Generator, size: int, t0: bool = False) -> FiniteSpace:
    """Random preorder: points fall into classes, classes get random DAG reachability."""
    if size == 0:
        return FiniteSpace((), ())
    classes = size if t0 else int(rng.integers(1, size + 1))
    labels = rng.permutation(size) % classes if t0 else rng.integers(0, classes, size=size)
    present = sorted(set(int(c) for c in labels))
    rank = {c: k for k, c in enumerate(present)}
    owner = [rank[int(c)] for c in labels]
    order = [int(c) for c in rng.permutation(len(present))]
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(present)))
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if rng.random() < 0.5:
                dag.add_edge(order[a], order[b])
    reach = nx.transitive_closure_dag(dag)
    up = []
    for i in range(size):
        above = {owner[i]} | set(reach.successors(owner[i]))
        up.append(mask_of(j for j in range(size) if owner[j] in above))
    return FiniteSpace(tuple(str(i) for i in range(size)), tuple(up))


def generate_space(cfg: GenConfig) -> Iterator[FiniteSpace]:
    """The corpus entries that fit ``max_points``, then random spaces forever."""
    for space in canned_corpus():
        if space.size <= cfg.max_points:
            yield space
    rng = np.random.default_rng(cfg.seed)
    while True:
        yield random_space(rng, int(rng.integers(0, cfg.max_points + 1)))


class InstanceGenerator:
    """Random data for one stream index; the same (config, index) gives the same data."""

    def __init__(self, cfg: GenConfig, index: int):
        self.cfg = cfg
        self.index = index
        self.rng = np.random.default_rng([cfg.seed, index])

    def seed(self) -> int:
        return int(self.rng.integers(0, 2**31))

    def space(self, max_points: int | None = None, min_points: int = 0, t0: bool = False) -> FiniteSpace:
        limit = self.cfg.max_points if max_points is None else max_points
        limit = max(limit, min_points)
        if self.rng.random() < 0.25:
            fitting = [
                s
                for s in canned_corpus()
                if min_points <= s.size <= limit and (not t0 or len(set(s.up)) == s.size)
            ]
            if fitting:
                return fitting[int(self.rng.integers(0, len(fitting)))]
        return random_space(self.rng, int(self.rng.integers(min_points, limit + 1)), t0=t0)

    def weight(self, zero_chance: float = 1 / 3, infinite: bool | None = None) -> ExtNonneg:
        allow = self.cfg.allow_infinity if infinite is None else infinite
        if self.rng.random() < zero_chance:
            return ZERO
        if allow and self.rng.random() < 0.1:
            return INFINITY
        den = int(self.rng.integers(1, self.cfg.weight_denominator_bound + 1))
        num = int(self.rng.integers(1, 2 * den + 1))
        return ExtNonneg(Fraction(num, den))

    def weights(self, space: FiniteSpace, infinite: bool | None = None) -> tuple[ExtNonneg, ...]:
        out = tuple(self.weight(infinite=infinite) for _ in range(space.size))
        if self.cfg.adversarial and space.size:
            out = self._perturbed(space, out)
        return out

    def probability_weights(self, space: FiniteSpace) -> tuple[ExtNonneg, ...]:
        raw = [int(self.rng.integers(0, self.cfg.weight_denominator_bound + 1)) for _ in range(space.size)]
        if space.size and not any(raw):
            raw[int(self.rng.integers(0, space.size))] = 1
        total = sum(raw)
        return tuple(ExtNonneg(Fraction(r, total)) for r in raw)

    def _perturbed(self, space: FiniteSpace, weights: tuple[ExtNonneg, ...]) -> tuple[ExtNonneg, ...]:
        """Bump the table on every open containing a random open and keep valid survivors.

        Survivors are turned back into point weights by Möbius inversion.
        """
        base = va.valuation_from_weights(space, weights)
        if base.total.is_infinite:
            return weights
        opens = space.opens
        u = opens[int(self.rng.integers(0, len(opens)))]
        bump = ExtNonneg(Fraction(int(self.rng.integers(1, 3)), 2))
        table = [v + bump if u and u & ~w == 0 else v for w, v in zip(opens, base.values, strict=True)]
        try:
            nu = va.validate_valuation(space, table)
        except AxiomViolation:
            return weights
        measure = pr.extend_to_measure(nu)
        if measure.quotient is None:
            return tuple(ExtNonneg(w) for w in measure.weights)
        out = [ZERO] * space.size
        seen: set[int] = set()
        for i in range(space.size):
            cls = measure.quotient(i)
            if cls not in seen:
                seen.add(cls)
                out[i] = ExtNonneg(measure.weights[cls])
        if va.valuation_from_weights(space, out) != nu:
            raise Anomaly("perturbed valuation is not represented by its weights")
        return tuple(out)

    def function_values(self, space: FiniteSpace) -> tuple[ExtNonneg, ...]:
        """A monotone function: random raw values, then the maximum over the down-set."""
        palette = list(FUNCTION_VALUES)
        if self.cfg.allow_infinity:
            palette.append(INFINITY)
        raw = [palette[int(self.rng.integers(0, len(palette)))] for _ in range(space.size)]
        return tuple(
            max((raw[j] for j in range(space.size) if (space.down[i] >> j) & 1), default=ZERO)
            for i in range(space.size)
        )

    def assignment(self, source: FiniteSpace, target: FiniteSpace) -> tuple[int, ...]:
        """A random monotone map, built along a linear extension of the source."""
        if source.size == 0:
            return ()
        if target.size == 0:
            raise ValueError("no map from a nonempty space into the empty space")
        order = sorted(range(source.size), key=lambda i: bin(source.down[i]).count("1"))
        for _ in range(20):
            chosen: dict[int, int] = {}
            for x in order:
                candidates = [
                    y
                    for y in range(target.size)
                    if all(
                        (not source.le(j, x) or target.le(fj, y)) and (not source.le(x, j) or target.le(y, fj))
                        for j, fj in chosen.items()
                    )
                ]
                if not candidates:
                    break
                chosen[x] = candidates[int(self.rng.integers(0, len(candidates)))]
            else:
                return tuple(chosen[i] for i in range(source.size))
        y = int(self.rng.integers(0, target.size))
        return tuple(y for _ in range(source.size))

    def map(self, source: FiniteSpace, target: FiniteSpace) -> ContinuousMap:
        return ContinuousMap(source, target, self.assignment(source, target))

    def point(self, space: FiniteSpace) -> int:
        return int(self.rng.integers(0, space.size))

    def closed(self, space: FiniteSpace) -> int:
        return hs.sample_downset(space, self.rng).members

    def scalar(self, low: int = 0, high: int = 3) -> Fraction:
        den = int(self.rng.integers(1, self.cfg.weight_denominator_bound + 1))
        return Fraction(int(self.rng.integers(low * den, high * den + 1)), den)

    def positive_scalar(self, high: int = 2) -> Fraction:
        den = int(self.rng.integers(1, self.cfg.weight_denominator_bound + 1))
        return Fraction(int(self.rng.integers(1, high * den + 1)), den)
