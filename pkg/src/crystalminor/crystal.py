"""Crystal structure on Laurent monomials, Demazure subsets, tau aliases.

Fix a rank ``r``.  Monomials in the generators ``Y[s,i]`` (shift s, color
``1 <= i <= r``) carry a type-A crystal structure: every color has a raising
operator and a lowering operator that act by multiplying with a distinguished
monomial ``A[s,i]`` or its inverse, where the shift ``s`` is picked by an
argmax scan over partial sums of the color-i exponents.  The sign convention
is fixed so that the cyclic color pattern reads 1, 2, ..., r repeating as the
shift grows.

Connected components of this action are finite crystal graphs; closing a
suitable extremal monomial under one operator along a reduced word, letter by
letter from the right, carves out the Demazure subset used elsewhere in the
package.

Monomials whose variables sit in the window covered by a length-n reduced
word double as the coordinates tau_1, ..., tau_n of a factorization cell;
``tau_render`` prints them that way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CapExceeded, ColorOutOfRange, NotTauRenderable
from .laurent import LaurentPoly, Monomial, VarId

DEFAULT_CAP = 100_000


def ell(r: int, s: int) -> int:
    """Number of word positions in the first s cycles: sum of r, r-1, ...

    >>> [ell(4, s) for s in range(5)]
    [0, 4, 7, 9, 10]
    """
    if s < 0 or s > r:
        raise ValueError(f"cycle count {s} out of range [0, {r}]")
    return s * r - s * (s - 1) // 2


@dataclass(frozen=True)
class CrystalConfig:
    """Rank of the crystal; the color convention is fixed (see module doc)."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"rank must be >= 1, got {self.r}")

    def colors(self) -> range:
        return range(1, self.r + 1)


def _check_color(cfg: CrystalConfig, i: int) -> None:
    if not 1 <= i <= cfg.r:
        raise ColorOutOfRange(i, cfg.r)


def a_monomial(cfg: CrystalConfig, s: int, i: int) -> Monomial:
    """The multiplier monomial A[s,i] of color i at shift s.

    >>> str(a_monomial(CrystalConfig(2), 0, 1))
    'Y[0,1]Y[0,2]^-1Y[1,1]'
    """
    _check_color(cfg, i)
    pairs = [(VarId(s, i), 1), (VarId(s + 1, i), 1)]
    if i > 1:
        pairs.append((VarId(s + 1, i - 1), -1))
    if i < cfg.r:
        pairs.append((VarId(s, i + 1), -1))
    return Monomial.of(*pairs)


def _color_profile(m: Monomial, i: int) -> list[tuple[int, int]]:
    """Sorted (shift, exponent) pairs of the color-i part of m."""
    return [(v.s, e) for v, e in m.factors if v.i == i]


def _phi_data(m: Monomial, i: int) -> tuple[int, int, list[tuple[int, int]]]:
    """(phi, total, prefix) for color i.

    ``prefix`` lists (shift, partial sum up to that shift); phi is the max
    of those partial sums and the empty sum 0; total is the full sum.
    """
    prof = _color_profile(m, i)
    prefix = []
    run = 0
    for s, e in prof:
        run += e
        prefix.append((s, run))
    phi = max([0] + [v for _, v in prefix])
    return phi, run, prefix


@dataclass(frozen=True)
class CrystalNode:
    """A monomial with its cached weight and string data."""

    monomial: Monomial
    weight: tuple[int, ...]
    phi: tuple[int, ...]
    epsilon: tuple[int, ...]


def node_stats(cfg: CrystalConfig, m: Monomial) -> CrystalNode:
    """Weight, phi and epsilon of m in all colors.

    phi[i-1] is the max over shifts n of the partial exponent sum of color i
    up to n (at least 0); epsilon[i-1] = phi[i-1] - weight[i-1].
    """
    weight, phi, eps = [], [], []
    for i in cfg.colors():
        p, total, _ = _phi_data(m, i)
        weight.append(total)
        phi.append(p)
        eps.append(p - total)
    return CrystalNode(m, tuple(weight), tuple(phi), tuple(eps))


def kashiwara_rows(cfg: CrystalConfig, m: Monomial, i: int) -> tuple[int | None, int | None]:
    """Shifts at which the color-i operators act on m: (raise, lower).

    The raising shift is the largest n whose partial sum still attains
    phi_i (defined only when epsilon_i > 0); the lowering shift is the
    smallest such n (defined only when phi_i > 0).
    """
    _check_color(cfg, i)
    phi, total, prefix = _phi_data(m, i)
    lower = None
    if phi > 0:
        lower = next(s for s, v in prefix if v == phi)
    raise_ = None
    if phi > total:
        if phi == 0:
            # partial sums start at 0; find where they leave 0 for good
            last_zero = None
            for idx, (s, v) in enumerate(prefix):
                if v == 0:
                    last_zero = idx
            if last_zero is None:
                raise_ = prefix[0][0] - 1
            else:
                raise_ = prefix[last_zero + 1][0] - 1
        else:
            last = max(idx for idx, (_, v) in enumerate(prefix) if v == phi)
            raise_ = prefix[last + 1][0] - 1
    return raise_, lower


def apply_e(cfg: CrystalConfig, m: Monomial, i: int) -> Monomial | None:
    """Raising operator of color i; None when epsilon_i(m) = 0."""
    row, _ = kashiwara_rows(cfg, m, i)
    if row is None:
        return None
    return m * a_monomial(cfg, row, i)


def apply_f(cfg: CrystalConfig, m: Monomial, i: int) -> Monomial | None:
    """Lowering operator of color i; None when phi_i(m) = 0."""
    _, row = kashiwara_rows(cfg, m, i)
    if row is None:
        return None
    return m * a_monomial(cfg, row, i).inverse()


class CrystalGraph:
    """A connected component: nodes in discovery order, colored edges.

    Edges run in the lowering direction: (src, color, dst) means the color-i
    lowering operator maps node src to node dst.
    """

    def __init__(self, r: int, nodes: tuple[CrystalNode, ...],
                 edges: tuple[tuple[int, int, int], ...]):
        self.r = r
        self.nodes = nodes
        self.edges = edges
        self._index = {node.monomial: k for k, node in enumerate(nodes)}

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)

    def index_of(self, m: Monomial) -> int:
        return self._index[m]

    def __contains__(self, m: Monomial) -> bool:
        return m in self._index

    def sources(self) -> list[CrystalNode]:
        """Nodes with no raising operator in any color."""
        return [n for n in self.nodes if not any(n.epsilon)]

    def sinks(self) -> list[CrystalNode]:
        """Nodes with no lowering operator in any color."""
        return [n for n in self.nodes if not any(n.phi)]


def component(cfg: CrystalConfig, seed: Monomial, cap: int = DEFAULT_CAP) -> CrystalGraph:
    """Connected component of seed under all raising and lowering operators.

    Breadth-first from the seed; discovery order (and hence node ids) is
    deterministic.  Raises CapExceeded as soon as more than cap nodes exist.
    """
    nodes = [node_stats(cfg, seed)]
    index = {seed: 0}
    edges: list[tuple[int, int, int]] = []
    edge_seen: set[tuple[int, int, int]] = set()
    queue = [0]
    while queue:
        at = queue.pop(0)
        m = nodes[at].monomial
        for i in cfg.colors():
            for step, forward in ((apply_f, True), (apply_e, False)):
                other = step(cfg, m, i)
                if other is None:
                    continue
                if other not in index:
                    index[other] = len(nodes)
                    nodes.append(node_stats(cfg, other))
                    if len(nodes) > cap:
                        raise CapExceeded(cap)
                    queue.append(index[other])
                k = index[other]
                edge = (at, i, k) if forward else (k, i, at)
                if edge not in edge_seen:
                    edge_seen.add(edge)
                    edges.append(edge)
    return CrystalGraph(cfg.r, tuple(nodes), tuple(edges))


@dataclass(frozen=True)
class DemazureSpec:
    """Word, direction sign and extremal seed for a Demazure subset.

    Sign "minus" grows the seed upward with raising operators and requires
    phi(seed) = 0 in every color; sign "plus" grows downward with lowering
    operators and requires epsilon(seed) = 0.
    """

    word: tuple[int, ...]
    sign: str
    seed: Monomial

    def __post_init__(self):
        if self.sign not in ("minus", "plus"):
            raise ValueError(f"sign must be 'minus' or 'plus', got {self.sign!r}")


def demazure(cfg: CrystalConfig, spec: DemazureSpec, cap: int = DEFAULT_CAP) -> tuple[Monomial, ...]:
    """Demazure subset of the component of spec.seed, in discovery order.

    The word is consumed from its last letter to its first; each letter
    closes the current set under every power of the one-color operator.
    The result therefore only grows as letters are consumed, and a suffix
    of the word yields a subset of the full word's result.
    """
    for i in spec.word:
        _check_color(cfg, i)
    stats = node_stats(cfg, spec.seed)
    if spec.sign == "minus":
        if any(stats.phi):
            raise ValueError("minus-sign seed must have phi = 0 in every color")
        step = apply_e
    else:
        if any(stats.epsilon):
            raise ValueError("plus-sign seed must have epsilon = 0 in every color")
        step = apply_f
    out = [spec.seed]
    seen = {spec.seed}
    for i in reversed(spec.word):
        for m in list(out):
            cur = m
            while True:
                nxt = step(cfg, cur, i)
                if nxt is None:
                    break
                if nxt not in seen:
                    seen.add(nxt)
                    out.append(nxt)
                    if len(out) > cap:
                        raise CapExceeded(cap)
                cur = nxt
    return tuple(out)


def demazure_polynomial(cfg: CrystalConfig, spec: DemazureSpec, cap: int = DEFAULT_CAP) -> LaurentPoly:
    """Sum of the Demazure subset, each monomial with coefficient one."""
    return LaurentPoly.from_terms((m, 1) for m in demazure(cfg, spec, cap))


# ---------------------------------------------------------------------------
# tau aliases


def tau_index(r: int, v: VarId) -> int:
    """Single-index alias of Y[s,i] at rank r.

    Shifts 0 <= s < r map into positions of the staircase word
    (cycle s holds indices ell(r,s)+1 ... ell(r,s+1)); shift -1 maps to the
    negative aliases -r, ..., -1.  Everything else has no alias.
    """
    if v.s >= 0 and v.s < r and 1 <= v.i <= r - v.s:
        return ell(r, v.s) + v.i
    if v.s == -1 and 1 <= v.i <= r:
        return -(r + 1 - v.i)
    raise NotTauRenderable(v)


def tau_var(r: int, k: int) -> VarId:
    """Inverse of tau_index.

    >>> tau_var(4, 9)
    VarId(s=2, i=2)
    >>> tau_var(4, -2)
    VarId(s=-1, i=3)
    """
    if k < 0:
        if k < -r:
            raise ValueError(f"no alias tau_{k} at rank {r}")
        return VarId(-1, r + 1 + k)
    s = 0
    while s < r and ell(r, s + 1) < k:
        s += 1
    i = k - ell(r, s)
    if s >= r or not 1 <= i <= r - s:
        raise ValueError(f"no alias tau_{k} at rank {r}")
    return VarId(s, i)


def _tau_str(k: int, e: int) -> str:
    base = f"τ_{{{k}}}" if k < 0 else f"τ_{k}"
    return base if e == 1 else f"{base}^{e}"


def tau_render(cfg: CrystalConfig, m: Monomial) -> str:
    """Fraction form of m in tau aliases, e.g. 'τ_3τ_5/(τ_4τ_6)'.

    Numerator and denominator factors are sorted by alias index; a lone
    denominator factor is printed without parentheses; an empty numerator
    prints as 1.  Raises NotTauRenderable if any variable has no alias.
    """
    num = sorted((tau_index(cfg.r, v), e) for v, e in m.factors if e > 0)
    den = sorted((tau_index(cfg.r, v), -e) for v, e in m.factors if e < 0)
    top = "".join(_tau_str(k, e) for k, e in num) or "1"
    if not den:
        return top
    bottom = "".join(_tau_str(k, e) for k, e in den)
    if len(den) > 1:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


def tau_render_poly(cfg: CrystalConfig, p: LaurentPoly) -> str:
    """Terms of p in canonical order, tau-rendered, joined with ' + '."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.terms:
        body = tau_render(cfg, m)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}{body}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# export


def _node_label(g: CrystalGraph, node: CrystalNode, form: str) -> str:
    if form == "tau":
        return tau_render(CrystalConfig(g.r), node.monomial)
    return str(node.monomial)


def graph_to_dot(g: CrystalGraph, form: str = "tau") -> str:
    """DOT text: nodes by discovery id, arrows in the lowering direction."""
    lines = ["digraph crystal {", "  rankdir=TB;", '  node [shape=plaintext];']
    for k, node in enumerate(g.nodes):
        label = _node_label(g, node, form)
        lines.append(f'  n{k} [label="{label}"];')
    for src, color, dst in g.edges:
        lines.append(f'  n{src} -> n{dst} [label="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: CrystalGraph) -> str:
    """JSON text with both spellings of every node and the edge list.

    The tau field is null for nodes outside the alias window.
    """
    cfg = CrystalConfig(g.r)
    nodes = []
    for k, node in enumerate(g.nodes):
        try:
            tau = tau_render(cfg, node.monomial)
        except NotTauRenderable:
            tau = None
        nodes.append(
            {
                "id": k,
                "y": str(node.monomial),
                "tau": tau,
                "weight": list(node.weight),
                "phi": list(node.phi),
                "epsilon": list(node.epsilon),
            }
        )
    edges = [{"from": a, "color": i, "to": b} for a, i, b in g.edges]
    return json.dumps({"r": g.r, "nodes": nodes, "edges": edges}, separators=(",", ":"))
