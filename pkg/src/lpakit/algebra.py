"""Exact arithmetic in the Leavitt path algebra ``L_K(E)`` of a finite graph.

Elements are finite linear combinations of monomials ``alpha beta*`` where
``alpha`` and ``beta`` are paths ending at a common vertex. Products of two
monomials are again a monomial or zero, so multiplication never needs the
Cuntz-Krieger relations. Equality does: two elements are equal iff their
difference has an empty :func:`normal_form`, which eliminates every monomial
whose paths both end in the chosen *special* edge of some vertex.

For acyclic graphs the algebra is finite dimensional and this module also
counts bases, corners, ideals and quotients.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    FieldMismatch,
    GraphMismatch,
    IncompleteChoice,
    InternalLimit,
    NotAcyclic,
    NotHereditary,
    UnknownVertex,
)
from .fields import QQ, FieldSpec
from .graph import Graph, Path, is_acyclic, is_hereditary, reachable_from, sinks

DEFAULT_STEP_BUDGET = 5_000_000


class Monomial(NamedTuple):
    """``alpha beta*`` stored as two edge tuples plus their common range."""

    alpha: tuple
    beta: tuple
    vertex: str

    def alpha_start(self, g: Graph) -> str:
        return g.s(self.alpha[0]) if self.alpha else self.vertex

    def beta_start(self, g: Graph) -> str:
        return g.s(self.beta[0]) if self.beta else self.vertex

    def alpha_path(self, g: Graph) -> Path:
        return Path(self.alpha_start(g), self.alpha)

    def beta_path(self, g: Graph) -> Path:
        return Path(self.beta_start(g), self.beta)

    def is_vertex(self) -> bool:
        return not self.alpha and not self.beta

    def sort_key(self):
        return (len(self.alpha) + len(self.beta), self.alpha, self.beta, self.vertex)

    def star(self) -> "Monomial":
        return Monomial(self.beta, self.alpha, self.vertex)


def make_monomial(g: Graph, alpha: Path, beta: Path) -> Monomial:
    if not alpha.is_valid(g) or not beta.is_valid(g):
        raise ValueError("invalid path")
    v = alpha.end(g)
    if beta.end(g) != v:
        raise ValueError("alpha and beta must end at the same vertex")
    return Monomial(tuple(alpha.edges), tuple(beta.edges), v)


def monomial_multiply(g: Graph, m1: Monomial, m2: Monomial) -> Monomial | None:
    """Product of two monomials; ``None`` stands for zero.

    ``(a b*)(c d*)`` is ``a c' d*`` when ``c = b c'``, ``a (d b')*`` when
    ``b = c b'``, and zero otherwise.
    """
    _, beta, _ = m1
    gamma = m2.alpha
    if m1.beta_start(g) != m2.alpha_start(g):
        return None
    lb, lc = len(beta), len(gamma)
    if lb <= lc:
        if gamma[:lb] != beta:
            return None
        return Monomial(m1.alpha + gamma[lb:], m2.beta, m2.vertex)
    if beta[:lc] != gamma:
        return None
    return Monomial(m1.alpha, m2.beta + beta[lc:], m1.vertex)


# special edges


def default_choice(g: Graph) -> dict:
    """Lexicographically smallest outgoing edge id at every non-sink vertex."""
    return {v: min(e.id for e in out) for v, out in g.out_edges.items() if out}


def check_choice(g: Graph, choice: Mapping[str, str]) -> dict:
    choice = dict(choice)
    for v, out in g.out_edges.items():
        if not out:
            continue
        eid = choice.get(v)
        if eid is None:
            raise IncompleteChoice(f"no special edge chosen at vertex {v}")
        if eid not in g.edge_map or g.s(eid) != v:
            raise IncompleteChoice(f"special edge {eid} does not start at {v}")
    return choice


# elements


class AlgebraElement:
    """A finite ``K``-linear combination of monomials of one graph.

    ``==`` compares stored terms literally; use :meth:`equals` or
    :meth:`is_zero` for equality in the algebra.
    """

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Graph, field: FieldSpec = QQ, terms: Mapping | Iterable = ()):
        self.graph = graph
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            c = field(c)
            acc[m] = field.add(acc.get(m, field.zero), c)
        self.terms = {m: c for m, c in acc.items() if c}

    # constructors
    @classmethod
    def zero(cls, g, k=QQ):
        return cls(g, k)

    @classmethod
    def vertex(cls, g, k, v):
        if v not in g.vertex_set:
            raise UnknownVertex(v)
        return cls(g, k, {Monomial((), (), v): 1})

    @classmethod
    def edge(cls, g, k, e):
        return cls(g, k, {Monomial((e,), (), g.r(e)): 1})

    @classmethod
    def ghost(cls, g, k, e):
        return cls(g, k, {Monomial((), (e,), g.r(e)): 1})

    @classmethod
    def unit(cls, g, k=QQ):
        """``sum of all vertices``, the identity of ``L(E)`` for finite ``E``."""
        return cls.idempotent(g, k, g.vertices)

    @classmethod
    def idempotent(cls, g, k, h):
        """``p_H``, the sum of the vertices in ``h``."""
        h = g.check_subset(h)
        return cls(g, k, {Monomial((), (), v): 1 for v in g.vertices if v in h})

    # arithmetic
    def _compatible(self, other):
        if not isinstance(other, AlgebraElement):
            return AlgebraElement.unit(self.graph, self.field).scale(other)
        if other.graph != self.graph:
            raise GraphMismatch("elements belong to different graphs")
        if other.field != self.field:
            raise FieldMismatch("elements are over different fields")
        return other

    def __add__(self, other):
        other = self._compatible(other)
        k = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = k.add(out.get(m, k.zero), c)
        return AlgebraElement(self.graph, k, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._compatible(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        k = self.field
        c = k(c)
        return AlgebraElement(self.graph, k, {m: k.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        other = self._compatible(other)
        g, k = self.graph, self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_multiply(g, m1, m2)
                if m is not None:
                    out[m] = k.add(out.get(m, k.zero), k.mul(c1, c2))
        return AlgebraElement(g, k, out)

    def __rmul__(self, other):
        return self.scale(other)

    def star(self):
        """The involution on monomials, with scalars left unchanged."""
        return AlgebraElement(self.graph, self.field, {m.star(): c for m, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.graph == other.graph
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self, choice=None) -> bool:
        return not normal_form(self, choice).terms

    def equals(self, other, choice=None) -> bool:
        return (self - other).is_zero(choice)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"AlgebraElement({format_element(self)!r}, {self.field})"


# normal form


def _reduce_recursive(g, k, choice, terms, budget):
    memo: dict = {}
    steps = [0]

    def reduce(m):
        if m in memo:
            return memo[m]
        out: dict = {}
        coef = k.one
        cur = m
        # peel matching special last edges; each peel emits the non-special siblings
        while cur.alpha and cur.beta and cur.alpha[-1] == cur.beta[-1]:
            gamma = cur.alpha[-1]
            v = g.s(gamma)
            if choice.get(v) != gamma:
                break
            steps[0] += 1
            if steps[0] > budget:
                raise InternalLimit("normal form exceeded its step budget")
            a1, b1 = cur.alpha[:-1], cur.beta[:-1]
            neg = k.neg(coef)
            for f in g.out_edges[v]:
                if f.id != gamma:
                    t = Monomial(a1 + (f.id,), b1 + (f.id,), f.range)
                    out[t] = k.add(out.get(t, k.zero), neg)
            cur = Monomial(a1, b1, v)
        out[cur] = k.add(out.get(cur, k.zero), coef)
        memo[m] = out
        return out

    acc: dict = {}
    for m, c in terms.items():
        for t, d in reduce(m).items():
            acc[t] = k.add(acc.get(t, k.zero), k.mul(c, d))
    return acc


def _reduce_worklist(g, k, choice, terms, budget, rng):
    """One rewrite step at a time, taking pending terms in a shuffled order."""
    pending = list(terms.items())
    rng.shuffle(pending)
    acc: dict = {}
    steps = 0
    while pending:
        m, c = pending.pop(rng.randrange(len(pending)))
        a, b = m.alpha, m.beta
        if a and b and a[-1] == b[-1] and choice.get(g.s(a[-1])) == a[-1]:
            steps += 1
            if steps > budget:
                raise InternalLimit("normal form exceeded its step budget")
            gamma = a[-1]
            v = g.s(gamma)
            a1, b1 = a[:-1], b[:-1]
            pending.append((Monomial(a1, b1, v), c))
            for f in g.out_edges[v]:
                if f.id != gamma:
                    pending.append((Monomial(a1 + (f.id,), b1 + (f.id,), f.range), k.neg(c)))
        else:
            acc[m] = k.add(acc.get(m, k.zero), c)
    return acc


def normal_form(
    a: AlgebraElement,
    choice: Mapping[str, str] | None = None,
    strategy: str = "recursive",
    seed: int = 0,
    budget: int = DEFAULT_STEP_BUDGET,
) -> AlgebraElement:
    """Reduced representative of ``a`` with respect to a special-edge choice.

    Every monomial ``a1 g (b1 g)*`` with ``g`` the special edge at ``s(g)`` is
    rewritten to ``a1 b1* - sum_{f != g, s(f) = s(g)} a1 f (b1 f)*`` until no
    such monomial remains. ``strategy`` selects between a memoised recursive
    reducer and a step-at-a-time worklist; both give the same result.
    """
    g, k = a.graph, a.field
    choice = check_choice(g, default_choice(g) if choice is None else choice)
    if strategy == "recursive":
        acc = _reduce_recursive(g, k, choice, a.terms, budget)
    elif strategy == "worklist":
        acc = _reduce_worklist(g, k, choice, a.terms, budget, random.Random(seed))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return AlgebraElement(g, k, acc)


def sink_normal_form(a: AlgebraElement) -> AlgebraElement:
    """Expand every monomial until its paths end at a sink (acyclic graphs only).

    Uses ``a b* = sum_{s(e) = r(a)} a e (b e)*`` at non-sink ranges, so the
    result lies in the span of :func:`acyclic_basis`.
    """
    g, k = a.graph, a.field
    _require_acyclic(g)
    acc: dict = {}
    pending = list(a.terms.items())
    while pending:
        m, c = pending.pop()
        out = g.out_edges[m.vertex]
        if not out:
            acc[m] = k.add(acc.get(m, k.zero), c)
            continue
        for e in out:
            pending.append((Monomial(m.alpha + (e.id,), m.beta + (e.id,), e.range), c))
    return AlgebraElement(g, k, acc)


def is_reduced(m: Monomial, g: Graph, choice: Mapping[str, str]) -> bool:
    a, b = m.alpha, m.beta
    return not (a and b and a[-1] == b[-1] and choice.get(g.s(a[-1])) == a[-1])


# text form

_ID = r"[A-Za-z_][A-Za-z0-9_']*"


def format_monomial(m: Monomial) -> str:
    if m.is_vertex():
        return m.vertex
    parts = list(m.alpha) + [e + "*" for e in reversed(m.beta)]
    return ".".join(parts)


def format_element(a: AlgebraElement) -> str:
    """Render as e.g. ``2*e.f* + u``; paths dot-separated, ghost edges starred."""
    if not a.terms:
        return "0"
    out = []
    for m, c in a.sorted_terms():
        neg = a.field.p is None and c < 0
        mag = -c if neg else c
        body = format_monomial(m) if mag == 1 else f"{mag}*{format_monomial(m)}"
        out.append(("-" if neg else "+", body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def parse_monomial(text: str, g: Graph) -> Monomial:
    tokens = text.split(".")
    if len(tokens) == 1 and tokens[0] in g.vertex_set:
        return Monomial((), (), tokens[0])
    real, ghosts = [], []
    for tok in tokens:
        if tok.endswith("*"):
            ghosts.append(tok[:-1])
        elif ghosts:
            raise ValueError(f"real edge after ghost edge in {text!r}")
        else:
            real.append(tok)
    for eid in real + ghosts:
        if eid not in g.edge_map:
            raise ValueError(f"unknown edge {eid!r}")
    alpha, beta = tuple(real), tuple(reversed(ghosts))
    if alpha:
        start = g.s(alpha[0])
    else:
        start = g.r(beta[-1])
    apath = Path(start, alpha)
    if not apath.is_valid(g):
        raise ValueError(f"edges {'.'.join(alpha)} do not compose")
    bpath = Path(g.s(beta[0]) if beta else apath.end(g), beta)
    if not bpath.is_valid(g) or bpath.end(g) != apath.end(g):
        raise ValueError(f"{text!r} is not a monomial alpha beta*")
    return Monomial(alpha, beta, apath.end(g))


def parse_element(text: str, g: Graph, k: FieldSpec = QQ) -> AlgebraElement:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return AlgebraElement(g, k)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in pieces) != s:
        raise ValueError(f"cannot parse element {text!r}")
    acc = AlgebraElement(g, k)
    for sign, body in pieces:
        m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*)?(.+)", body)
        coef, rest = m.group(1), m.group(2)
        if coef is None and re.fullmatch(r"\d+(?:/\d+)?", rest):
            term = AlgebraElement.unit(g, k).scale(k(rest))
        else:
            c = k(coef) if coef else k.one
            term = AlgebraElement(g, k, {parse_monomial(rest, g): c})
        acc = acc + term if sign == "+" else acc - term
    return acc


# sampling


def random_path_to(g: Graph, v: str, rng: random.Random, max_len: int) -> tuple:
    """Random backward walk of length at most ``max_len`` ending at ``v``."""
    edges: list = []
    here = v
    for _ in range(rng.randint(0, max_len)):
        inc = g.in_edges[here]
        if not inc:
            break
        e = rng.choice(inc)
        edges.append(e.id)
        here = e.source
    return tuple(reversed(edges))


def random_monomial(g: Graph, rng: random.Random, max_len: int = 3) -> Monomial:
    v = rng.choice(g.vertices)
    return Monomial(random_path_to(g, v, rng, max_len), random_path_to(g, v, rng, max_len), v)


def random_element(g: Graph, k: FieldSpec, rng: random.Random, max_terms: int = 4, max_len: int = 3):
    if g.is_empty():
        return AlgebraElement(g, k)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        c = rng.randint(-5, 5) if k.p is None else rng.randrange(k.p)
        terms.append((random_monomial(g, rng, max_len), c))
    return AlgebraElement(g, k, terms)


# linear algebra on normal forms


def rank(elements: Iterable[AlgebraElement], choice=None) -> int:
    """Dimension of the span of ``elements`` (Gaussian elimination on normal forms)."""
    pivots: dict = {}
    k = None
    for a in elements:
        k = a.field
        vec = dict(normal_form(a, choice).terms)
        while vec:
            lead = min(vec, key=Monomial.sort_key)
            if lead not in pivots:
                inv = k.inv(vec[lead])
                pivots[lead] = {m: k.mul(c, inv) for m, c in vec.items()}
                break
            row, c = pivots[lead], vec[lead]
            for m, d in row.items():
                val = k.sub(vec.get(m, k.zero), k.mul(c, d))
                if val:
                    vec[m] = val
                else:
                    vec.pop(m, None)
    return len(pivots)


# finite-dimensional structure of acyclic graphs


def _require_acyclic(g: Graph):
    if not is_acyclic(g):
        raise NotAcyclic("the graph must be acyclic for its algebra to be finite dimensional")


def paths_ending_at(g: Graph, v: str) -> list[Path]:
    """Every path ending at ``v`` (the trivial one first). Acyclic graphs only."""
    _require_acyclic(g)
    out = []

    def walk(here, suffix):
        out.append(Path(here, suffix))
        for e in g.in_edges[here]:
            walk(e.source, (e.id,) + suffix)

    walk(v, ())
    return out


def path_counts(g: Graph, starts=None) -> dict:
    """Number of paths ending at each vertex, optionally only those starting in ``starts``."""
    _require_acyclic(g)
    allowed = g.vertex_set if starts is None else frozenset(starts)
    indeg = {v: len(g.in_edges[v]) for v in g.vertices}
    order, ready = [], [v for v in g.vertices if indeg[v] == 0]
    while ready:
        v = ready.pop()
        order.append(v)
        for e in g.out_edges[v]:
            indeg[e.range] -= 1
            if indeg[e.range] == 0:
                ready.append(e.range)
    n = {v: (1 if v in allowed else 0) for v in g.vertices}
    for v in order:
        for e in g.out_edges[v]:
            n[e.range] += n[v]
    return n


def acyclic_basis(g: Graph) -> list[Monomial]:
    """All ``alpha beta*`` with ``alpha``, ``beta`` ending at a common sink."""
    _require_acyclic(g)
    basis = []
    for v in sorted(sinks(g)):
        ps = paths_ending_at(g, v)
        basis.extend(Monomial(a.edges, b.edges, v) for a in ps for b in ps)
    basis.sort(key=Monomial.sort_key)
    return basis


def acyclic_dimension(g: Graph) -> int:
    n = path_counts(g)
    return sum(n[v] ** 2 for v in sinks(g))


def _check_hereditary(g, h):
    h = g.check_subset(h)
    if not is_hereditary(g, h):
        raise NotHereditary("H must be hereditary")
    return h


def corner_dimension(g: Graph, h) -> int:
    """``dim p_H L(E) p_H``: basis monomials whose two paths both start in ``h``."""
    _require_acyclic(g)
    h = _check_hereditary(g, h)
    n = path_counts(g, starts=h)
    return sum(n[v] ** 2 for v in sinks(g))


def ideal_dimension(g: Graph, h) -> int:
    """``dim`` of the two-sided ideal generated by the vertices of ``h``.

    The algebra is a product of matrix blocks, one per sink; the ideal is the
    sum of the blocks of the sinks reachable from ``h``.
    """
    _require_acyclic(g)
    h = _check_hereditary(g, h)
    n = path_counts(g)
    reach = reachable_from(g, h)
    return sum(n[v] ** 2 for v in sinks(g) if v in reach)


def quotient_dimension(g: Graph, h) -> int:
    return acyclic_dimension(g) - ideal_dimension(g, h)


# relation harness


@dataclass
class RelationReport:
    graph_size: tuple
    field: str
    choice: dict
    families: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.families.values())

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "special_edges": dict(sorted(self.choice.items())),
            "families": dict(self.families),
            "failures": {k: v[:5] for k, v in self.failures.items() if v},
            "passed": self.passed,
        }


def verify_relations(g: Graph, k: FieldSpec = QQ, samples: int = 1000, seed: int = 0, max_len: int = 3) -> RelationReport:
    """Check the defining relations of ``L_K(E)`` through :func:`normal_form`.

    Families: vertex orthogonality, edge/vertex compatibility, CK1, CK2, and
    associativity on ``samples`` pseudorandom monomial triples. Failures are
    collected, never raised.
    """
    choice = default_choice(g)
    rep = RelationReport((len(g.vertices), len(g.edges)), k.name, choice)
    el = AlgebraElement

    def run(name, checks):
        bad = [label for label, x in checks if not x.is_zero(choice)]
        rep.families[name] = not bad
        rep.failures[name] = bad

    def vv(v, w):
        lhs = el.vertex(g, k, v) * el.vertex(g, k, w)
        return lhs - el.vertex(g, k, v) if v == w else lhs

    run("orthogonality", ((f"{v}{w}", vv(v, w)) for v in g.vertices for w in g.vertices))

    def edge_checks():
        for e in g.edges:
            x = el.edge(g, k, e.id)
            y = el.ghost(g, k, e.id)
            yield f"s({e.id}){e.id}", el.vertex(g, k, e.source) * x - x
            yield f"{e.id}r({e.id})", x * el.vertex(g, k, e.range) - x
            yield f"r({e.id}){e.id}*", el.vertex(g, k, e.range) * y - y
            yield f"{e.id}*s({e.id})", y * el.vertex(g, k, e.source) - y

    run("edges", edge_checks())

    def ck1():
        for e in g.edges:
            for f in g.edges:
                prod = el.ghost(g, k, e.id) * el.edge(g, k, f.id)
                if e.id == f.id:
                    prod = prod - el.vertex(g, k, e.range)
                yield f"{e.id}*{f.id}", prod

    run("CK1", ck1())

    def ck2():
        for v, out in g.out_edges.items():
            if out:
                total = el.vertex(g, k, v)
                for e in out:
                    total = total - el.edge(g, k, e.id) * el.ghost(g, k, e.id)
                yield v, total

    run("CK2", ck2())

    rng = random.Random(seed)

    def assoc():
        if g.is_empty():
            return
        for i in range(samples):
            a, b, c = (el(g, k, {random_monomial(g, rng, max_len): 1}) for _ in range(3))
            yield i, (a * b) * c - a * (b * c)

    run("associativity", assoc())
    return rep
