"""Evolving scale-free graph generator.

Grows a graph from a small clique by repeatedly applying one of three
events: add links between existing nodes, rewire existing links, or add a
new node with fresh links. Targets are drawn preferentially with weight
max(0, k_i + eps * kbar), where kbar is the current mean degree; negative
weights clamp to zero. The offset eps shifts selection pressure relative
to plain degree-proportional attachment, which is what lets the degree
exponent drop below 2. Classic degree-proportional growth ("ba") and the
rewiring model with offset fixed at one unit of mean degree ("eba") are
special cases.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, NoAttachableNodeError
from .graph import Graph, complete_graph

__all__ = [
    "MODES",
    "ModelParams",
    "EvolutionTrace",
    "attachment_weights",
    "sample_preferential",
    "step_add_links",
    "step_rewire",
    "step_add_node",
    "evolve",
]

MODES = ("ours", "ba", "eba")

# Clamped-weight fraction above which eps is considered too negative for
# the generated distribution to track the predicted exponent.
CLAMP_WARNING_FRACTION = 0.15

_MAX_REJECTS = 64


@dataclass(frozen=True)
class ModelParams:
    """Event probabilities and attachment parameters for one model run.

    p: probability of a link-addition event; q: probability of a rewiring
    event; node addition happens with probability 1 - p - q. Each event
    handles m links. eps is the attachment offset in units of the current
    mean degree (ignored in "eba" mode, which recomputes it as 1/kbar, and
    forced to 0 in "ba" mode).
    """

    p: float = 0.0
    q: float = 0.0
    m: int = 1
    m0: int = 5
    eps: float = 0.0
    mode: str = "ours"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InvalidParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (self.p >= 0.0 and self.q >= 0.0):
            raise InvalidParameterError("p and q must be non-negative")
        if not self.p + self.q < 1.0:
            raise InvalidParameterError(f"p + q must be < 1, got {self.p + self.q}")
        if self.m < 1:
            raise InvalidParameterError(f"m must be a positive integer, got {self.m}")
        if self.m >= self.m0:
            raise InvalidParameterError(f"m must be smaller than m0 ({self.m} >= {self.m0})")
        if not math.isfinite(self.eps):
            raise InvalidParameterError("eps must be finite")
        if self.mode == "ba" and (self.p != 0.0 or self.q != 0.0 or self.eps != 0.0):
            raise InvalidParameterError("ba mode requires p = q = eps = 0")

    def in_scale_free_regime(self) -> bool:
        """True when the predicted degree distribution is a decaying power law."""
        if self.mode == "eba":
            # equivalent to a predicted exponent above 2
            return self.q < (self.m + 1 - self.p) / (2 * self.m + 1)
        return self.q < 1.0 and self.eps > -1.0


@dataclass
class EvolutionTrace:
    """Bookkeeping emitted alongside an evolved graph.

    birth_event[i] is the event index at which node i was created (0 for
    the seed clique); birth_degree[i] is how many links it received at
    creation. Event counters split by operation type and record skipped
    sub-operations, so edge accounting can be audited exactly.
    """

    link_events: int = 0
    rewire_events: int = 0
    node_events: int = 0
    links_added: int = 0
    links_skipped: int = 0
    rewires_applied: int = 0
    rewires_skipped: int = 0
    attachments_made: int = 0
    attachments_short: int = 0
    isolated_repairs: int = 0
    max_clamped_fraction: float = 0.0
    clamp_warning: bool = False
    birth_event: list[int] = field(default_factory=list)
    birth_degree: list[int] = field(default_factory=list)

    @property
    def total_events(self) -> int:
        return self.link_events + self.rewire_events + self.node_events


def attachment_weights(g: Graph, eps: float) -> np.ndarray:
    """Unnormalized attachment weights max(0, k_i + eps * kbar) for every node.

    Raises NoAttachableNodeError when every weight clamps to zero.
    """
    if g.n < 1:
        raise InvalidParameterError("attachment weights need at least one node")
    offset = eps * (g.degree_sum / g.n)
    weights = np.asarray(g.degrees(), dtype=float) + offset
    np.maximum(weights, 0.0, out=weights)
    if not weights.any():
        raise NoAttachableNodeError("all attachment weights are zero")
    return weights


def sample_preferential(g: Graph, eps: float, forbidden, rng: random.Random) -> int:
    """Draw a node outside `forbidden` with probability proportional to
    max(0, k + eps * kbar).

    Exact conditional distribution: a bounded rejection pass over the
    unconditional law (cheap on large graphs) falls back to an explicit
    weighted draw over the eligible set, so the call always terminates.
    """
    if g.n < 1:
        raise NoAttachableNodeError("cannot sample from an empty graph")
    offset = eps * (g.degree_sum / g.n) if g.n else 0.0
    return _sample_with_offset(g, offset, forbidden, rng)


def _sample_with_offset(g: Graph, offset: float, forbidden, rng: random.Random) -> int:
    degree_sum = g.degree_sum
    n = g.n
    if degree_sum > 0 and offset >= 0.0:
        # weight k + offset >= 0: mixture of a degree-proportional part
        # (uniform edge endpoint) and a uniform part carrying the offset
        total = degree_sum + n * offset
        for _ in range(_MAX_REJECTS):
            if offset > 0.0 and rng.random() * total >= degree_sum:
                j = rng.randrange(n)
            else:
                a, b = g.random_edge(rng)
                j = a if rng.random() < 0.5 else b
            if j not in forbidden:
                return j
    elif degree_sum > 0:
        # negative offset: degree-proportional proposal thinned by
        # max(0, k + offset) / k, which realizes the clamp exactly
        for _ in range(_MAX_REJECTS):
            a, b = g.random_edge(rng)
            j = a if rng.random() < 0.5 else b
            k = len(g.adj[j])
            w = k + offset
            if w <= 0.0 or rng.random() * k >= w:
                continue
            if j not in forbidden:
                return j
    # exact weighted draw over the eligible set
    weights = np.asarray(g.degrees(), dtype=float) + offset
    np.maximum(weights, 0.0, out=weights)
    if forbidden:
        weights[list(forbidden)] = 0.0
    total = float(weights.sum())
    if total <= 0.0:
        raise NoAttachableNodeError("no eligible node with positive attachment weight")
    cumulative = np.cumsum(weights)
    j = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
    return min(j, g.n - 1)


def step_add_links(g: Graph, params: ModelParams, rng: random.Random,
                   trace: EvolutionTrace | None = None, offset: float | None = None) -> int:
    """Attempt m link additions from uniform starting nodes to preferential
    targets; returns how many were applied (saturated picks are skipped)."""
    if offset is None:
        offset = params.eps * (g.degree_sum / g.n) if g.n else 0.0
    applied = 0
    for _ in range(params.m):
        start = rng.randrange(g.n)
        forbidden = g.adj[start] | {start}
        try:
            target = _sample_with_offset(g, offset, forbidden, rng)
        except NoAttachableNodeError:
            if trace is not None:
                trace.links_skipped += 1
            continue
        g.add_edge(start, target)
        applied += 1
    if trace is not None:
        trace.links_added += applied
    return applied


def step_rewire(g: Graph, params: ModelParams, rng: random.Random,
                trace: EvolutionTrace | None = None, offset: float | None = None) -> int:
    """Attempt m rewires: detach a uniform incident edge {i, j} at a uniform
    degree>=1 node i and re-target its far end preferentially.

    A rewire that would isolate j, or whose eligible target pool is empty,
    is skipped with the original edge intact. Edge count never changes.
    """
    if offset is None:
        offset = params.eps * (g.degree_sum / g.n) if g.n else 0.0
    applied = 0
    for _ in range(params.m):
        if g.edge_count == 0:
            if trace is not None:
                trace.rewires_skipped += 1
            continue
        i = _random_active_node(g, rng)
        j = g.random_incident_edge(i, rng)
        if len(g.adj[j]) == 1:
            # removal would isolate j; keep every node at degree >= 1
            if trace is not None:
                trace.rewires_skipped += 1
            continue
        g.remove_edge(i, j)
        forbidden = g.adj[i] | {i, j}
        try:
            target = _sample_with_offset(g, offset, forbidden, rng)
        except NoAttachableNodeError:
            g.add_edge(i, j)
            if trace is not None:
                trace.rewires_skipped += 1
            continue
        g.add_edge(i, target)
        applied += 1
    if trace is not None:
        trace.rewires_applied += applied
    return applied


def step_add_node(g: Graph, params: ModelParams, rng: random.Random,
                  trace: EvolutionTrace | None = None, offset: float | None = None,
                  event_index: int = 0) -> int:
    """Add one node and connect it to up to m distinct preferential targets
    (drawn without replacement); returns the new node id."""
    new = g.add_node()
    if offset is None:
        offset = params.eps * (g.degree_sum / g.n) if g.n else 0.0
    forbidden = {new}
    targets = []
    for _ in range(params.m):
        try:
            t = _sample_with_offset(g, offset, forbidden, rng)
        except NoAttachableNodeError:
            break
        targets.append(t)
        forbidden.add(t)
    for t in targets:
        g.add_edge(new, t)
    if trace is not None:
        trace.attachments_made += len(targets)
        if len(targets) < params.m:
            trace.attachments_short += params.m - len(targets)
        trace.birth_event.append(event_index)
        trace.birth_degree.append(len(targets))
    return new


def evolve(params: ModelParams, target_n: int,
           rng: random.Random | int | None = None) -> tuple[Graph, EvolutionTrace]:
    """Grow a graph from a complete m0-clique until it has target_n nodes.

    Each event is link addition with probability p, rewiring with
    probability q, node addition otherwise. In "eba" mode the attachment
    offset is one unit of mean degree (eps = 1/kbar recomputed per event,
    so weights are k + 1 exactly). Any node still isolated at termination
    is re-attached to a preferential target and counted in the trace.

    Identical params and seed give a bit-identical edge set.
    """
    if target_n < params.m0:
        raise InvalidParameterError(
            f"target_n must be at least m0 ({target_n} < {params.m0})")
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng)

    g = complete_graph(params.m0)
    trace = EvolutionTrace()
    trace.birth_event = [0] * params.m0
    trace.birth_degree = [params.m0 - 1] * params.m0

    p, q = params.p, params.q
    eba = params.mode == "eba"
    event = 0
    while g.n < target_n:
        event += 1
        offset = 1.0 if eba else params.eps * (g.degree_sum / g.n)
        u = rng.random()
        if u < p:
            trace.link_events += 1
            step_add_links(g, params, rng, trace, offset)
        elif u < p + q:
            trace.rewire_events += 1
            step_rewire(g, params, rng, trace, offset)
        else:
            trace.node_events += 1
            step_add_node(g, params, rng, trace, offset, event_index=event)
        if offset < 0.0:
            frac = _clamped_fraction(g, offset)
            if frac > trace.max_clamped_fraction:
                trace.max_clamped_fraction = frac
                if frac > CLAMP_WARNING_FRACTION:
                    trace.clamp_warning = True

    if g.degree_counts.get(0, 0) > 0:
        _repair_isolated(g, params, rng, trace, eba)
    return g, trace


def _random_active_node(g: Graph, rng: random.Random) -> int:
    """Uniform draw over nodes of degree >= 1."""
    n = g.n
    if g.degree_counts.get(0, 0) == 0:
        return rng.randrange(n)
    for _ in range(_MAX_REJECTS):
        i = rng.randrange(n)
        if g.adj[i]:
            return i
    active = [i for i in range(n) if g.adj[i]]
    if not active:
        raise NoAttachableNodeError("graph has no node with an incident edge")
    return active[rng.randrange(len(active))]


def _clamped_fraction(g: Graph, offset: float) -> float:
    """Fraction of nodes whose raw attachment weight k + offset is negative."""
    if offset >= 0.0 or g.n == 0:
        return 0.0
    clamped = 0
    k = 0
    while k + offset < 0.0:
        clamped += g.degree_counts.get(k, 0)
        k += 1
    return clamped / g.n


def _repair_isolated(g: Graph, params: ModelParams, rng: random.Random,
                     trace: EvolutionTrace, eba: bool) -> None:
    for node in range(g.n):
        if g.adj[node]:
            continue
        offset = 1.0 if eba else params.eps * (g.degree_sum / g.n)
        target = _sample_with_offset(g, offset, {node}, rng)
        g.add_edge(node, target)
        trace.isolated_repairs += 1
